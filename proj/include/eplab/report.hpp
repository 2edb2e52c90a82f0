#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace eplab {

// Fixed 9-significant-digit float formatting so emitted CSV/JSON is
// byte-identical across runs.
std::string fmt9(double v);

std::string csv_row(const std::vector<std::string>& fields);

// Minimal deterministic JSON emitter: insertion-ordered keys, fmt9 floats,
// two-space indentation.
class JsonWriter {
public:
    JsonWriter& begin_object();
    JsonWriter& end_object();
    JsonWriter& begin_array();
    JsonWriter& end_array();
    JsonWriter& key(const std::string& k);
    JsonWriter& value(const std::string& s);
    JsonWriter& value(const char* s);
    JsonWriter& value(double v);
    JsonWriter& value(uint64_t v);
    JsonWriter& value(int v);
    JsonWriter& value(bool v);

    std::string str() const { return out_; }

private:
    void pre_value();
    void newline_indent();

    std::string out_;
    std::vector<bool> first_;  // per nesting level
    bool pending_key_ = false;
};

void write_text_file(const std::string& path, const std::string& contents);
std::string read_text_file(const std::string& path);

}  // namespace eplab
