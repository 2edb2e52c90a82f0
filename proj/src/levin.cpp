#include "eplab/levin.hpp"

#include <algorithm>
#include <bit>
#include <cassert>
#include <cmath>
#include <stdexcept>
#include <unordered_set>

namespace eplab::levin {

std::string machine_name(MachineId m) {
    switch (m) {
        case MachineId::U0: return "u0";
        case MachineId::U1: return "u1";
        case MachineId::U2: return "u2";
    }
    return "?";
}

// -- Elias codes --------------------------------------------------------------

void append_gamma(std::string& bits, uint64_t m) {
    assert(m >= 1);
    int w = std::bit_width(m);
    bits.append(w - 1, '0');
    for (int i = w - 1; i >= 0; --i) bits.push_back(((m >> i) & 1) ? '1' : '0');
}

void append_delta(std::string& bits, uint64_t m) {
    assert(m >= 1);
    int w = std::bit_width(m);
    append_gamma(bits, static_cast<uint64_t>(w));
    for (int i = w - 2; i >= 0; --i) bits.push_back(((m >> i) & 1) ? '1' : '0');
}

std::string elias_gamma(uint64_t m) {
    std::string s;
    append_gamma(s, m);
    return s;
}

std::string elias_delta(uint64_t m) {
    std::string s;
    append_delta(s, m);
    return s;
}

int gamma_length(uint64_t m) { return 2 * std::bit_width(m) - 1; }

int delta_length(uint64_t m) {
    int w = std::bit_width(m);
    return gamma_length(static_cast<uint64_t>(w)) + w - 1;
}

// -- Dyadic -------------------------------------------------------------------

Dyadic Dyadic::normalized() const {
    Dyadic d = *this;
    if (d.num == 0) {
        d.log2_den = 0;
        return d;
    }
    while ((d.num & 1) == 0 && d.log2_den > 0) {
        d.num >>= 1;
        d.log2_den--;
    }
    return d;
}

double Dyadic::to_double() const { return std::ldexp(static_cast<double>(num), -log2_den); }

std::string Dyadic::to_string() const {
    Dyadic d = normalized();
    return std::to_string(d.num) + "/2^" + std::to_string(d.log2_den);
}

Dyadic operator+(const Dyadic& a, const Dyadic& b) {
    Dyadic out;
    out.log2_den = std::max(a.log2_den, b.log2_den);
    uint64_t an = a.num << (out.log2_den - a.log2_den);
    uint64_t bn = b.num << (out.log2_den - b.log2_den);
    assert(a.num == 0 || (an >> (out.log2_den - a.log2_den)) == a.num);
    out.num = an + bn;
    assert(out.num >= an);
    return out;
}

bool operator==(const Dyadic& a, const Dyadic& b) {
    Dyadic x = a.normalized(), y = b.normalized();
    return x.num == y.num && x.log2_den == y.log2_den;
}

bool operator<(const Dyadic& a, const Dyadic& b) {
    int den = std::max(a.log2_den, b.log2_den);
    return (a.num << (den - a.log2_den)) < (b.num << (den - b.log2_den));
}

// -- Decoder ------------------------------------------------------------------

namespace {

struct BitReader {
    std::string_view bits;
    size_t pos = 0;

    // -1 on end of input
    int next() {
        if (pos >= bits.size()) return -1;
        char c = bits[pos++];
        if (c != '0' && c != '1') throw std::invalid_argument("decode: bits must be '0'/'1'");
        return c == '1';
    }
};

// 0 on dangling input; overflow guarded (unreachable at desk cutoffs)
uint64_t read_gamma(BitReader& r, bool& dangling) {
    int zeros = 0;
    int b;
    while ((b = r.next()) == 0) {
        if (++zeros >= 63) throw std::length_error("decode: gamma field too wide");
    }
    if (b < 0) {
        dangling = true;
        return 0;
    }
    uint64_t m = 1;
    for (int i = 0; i < zeros; ++i) {
        b = r.next();
        if (b < 0) {
            dangling = true;
            return 0;
        }
        m = (m << 1) | static_cast<uint64_t>(b);
    }
    return m;
}

uint64_t read_delta(BitReader& r, bool& dangling) {
    uint64_t w = read_gamma(r, dangling);
    if (dangling) return 0;
    uint64_t m = 1;
    for (uint64_t i = 1; i < w; ++i) {
        int b = r.next();
        if (b < 0) {
            dangling = true;
            return 0;
        }
        // running out of input wins over the capacity guard
        if (i >= 40) throw std::length_error("decode: delta field too wide");
        m = (m << 1) | static_cast<uint64_t>(b);
    }
    return m;
}

constexpr uint64_t kMaxOutputBits = uint64_t(1) << 22;

Decoded fail(DecodeError e) {
    Decoded d;
    d.error = e;
    return d;
}

}  // namespace

Decoded decode(MachineId machine, std::string_view bits) {
    const bool is_u2 = machine == MachineId::U2;
    const bool allow_trailing = machine == MachineId::U0;
    const int literal_mode = is_u2 ? 1 : 0;

    BitReader r{bits};
    int mode = r.next();
    if (mode < 0) return fail(DecodeError::incomplete);

    auto read_code = [&](bool& dangling) {
        return is_u2 ? read_delta(r, dangling) : read_gamma(r, dangling);
    };

    bool dangling = false;
    std::string output;
    if (mode == literal_mode) {
        uint64_t m = read_code(dangling);
        if (dangling) return fail(DecodeError::incomplete);
        uint64_t len = m - 1;
        if (len > kMaxOutputBits) throw std::length_error("decode: output too long");
        output.reserve(len);
        for (uint64_t i = 0; i < len; ++i) {
            int b = r.next();
            if (b < 0) return fail(DecodeError::incomplete);
            output.push_back(b ? '1' : '0');
        }
    } else {
        uint64_t k = read_code(dangling);
        if (dangling) return fail(DecodeError::incomplete);
        uint64_t m = read_code(dangling);
        if (dangling) return fail(DecodeError::incomplete);
        uint64_t len = m - 1;
        if (len == 0) return fail(DecodeError::malformed);  // repeat needs a block
        if (k > kMaxOutputBits || k * len > kMaxOutputBits)
            throw std::length_error("decode: output too long");
        std::string block;
        block.reserve(len);
        for (uint64_t i = 0; i < len; ++i) {
            int b = r.next();
            if (b < 0) return fail(DecodeError::incomplete);
            block.push_back(b ? '1' : '0');
        }
        output.reserve(k * len);
        for (uint64_t i = 0; i < k; ++i) output += block;
    }
    if (!allow_trailing && r.pos != bits.size()) return fail(DecodeError::trailing);

    Decoded d;
    d.ok = true;
    d.output = std::move(output);
    d.consumed = r.pos;
    return d;
}

// -- Complexity ---------------------------------------------------------------

namespace {

int code_length(MachineId machine, uint64_t m) {
    return machine == MachineId::U2 ? delta_length(m) : gamma_length(m);
}

bool is_periodic_with(std::string_view x, size_t period) {
    for (size_t i = period; i < x.size(); ++i)
        if (x[i] != x[i - period]) return false;
    return true;
}

// Lengths of every program producing x, via the program grammar: one LITERAL
// plus one REPEAT per decomposition x = block^k.
std::vector<int> program_lengths_for(MachineId machine, std::string_view x) {
    std::vector<int> lengths;
    size_t n = x.size();
    lengths.push_back(1 + code_length(machine, n + 1) + static_cast<int>(n));
    for (size_t len = 1; len <= n; ++len) {
        if (n % len != 0 || !is_periodic_with(x, len)) continue;
        uint64_t k = n / len;
        lengths.push_back(1 + code_length(machine, k) + code_length(machine, len + 1) +
                          static_cast<int>(len));
    }
    return lengths;
}

}  // namespace

int toy_complexity(MachineId machine, std::string_view x) {
    if (machine == MachineId::U0)
        throw std::invalid_argument("toy_complexity: not meaningful on the non-prefix-free machine");
    auto lengths = program_lengths_for(machine, x);
    return *std::min_element(lengths.begin(), lengths.end());
}

// -- Raw enumeration ----------------------------------------------------------

namespace {

// Visit every '0'/'1' string of exactly `len` bits in lexicographic order.
template <typename Fn>
void for_each_bitstring(int len, Fn&& fn) {
    std::string s(len, '0');
    while (true) {
        fn(const_cast<const std::string&>(s));
        int i = len - 1;
        while (i >= 0 && s[i] == '1') s[i--] = '0';
        if (i < 0) break;
        s[i] = '1';
    }
}

void check_cutoff(int cutoff) {
    if (cutoff < 0 || cutoff > kEnumerationCutoff)
        throw std::length_error("cutoff beyond the 26-bit enumeration bound");
}

}  // namespace

std::optional<int> toy_complexity_bruteforce(MachineId machine, std::string_view x, int cutoff) {
    check_cutoff(cutoff);
    for (int len = 0; len <= cutoff; ++len) {
        bool found = false;
        for_each_bitstring(len, [&](const std::string& s) {
            if (found) return;
            Decoded d = decode(machine, s);
            if (d.ok && d.output == x) found = true;
        });
        if (found) return len;
    }
    return std::nullopt;
}

std::map<std::string, int> bruteforce_min_lengths(MachineId machine, int cutoff) {
    check_cutoff(cutoff);
    std::map<std::string, int> out;
    for (int len = 0; len <= cutoff; ++len) {
        for_each_bitstring(len, [&](const std::string& s) {
            Decoded d = decode(machine, s);
            if (d.ok) out.try_emplace(d.output, len);
        });
    }
    return out;
}

// -- Mass ---------------------------------------------------------------------

Dyadic UniversalMassEstimate::mass_of(const std::string& output) const {
    auto it = numerators.find(output);
    Dyadic d;
    d.log2_den = cutoff;
    d.num = it == numerators.end() ? 0 : it->second;
    return d;
}

uint64_t UniversalMassEstimate::total_numerator() const {
    uint64_t t = 0;
    for (const auto& [_, num] : numerators) t += num;
    return t;
}

bool UniversalMassEstimate::kraft_holds() const {
    return total_numerator() <= (uint64_t(1) << cutoff);
}

namespace {

// Weight (as a numerator over 2^cutoff) of one valid base program of length
// `len`. On U0 the program and each of its 2^(m-len) extensions of length
// m <= cutoff count, totalling (cutoff - len + 1) * 2^(cutoff - len).
uint64_t program_weight(MachineId machine, int cutoff, int len) {
    uint64_t base = uint64_t(1) << (cutoff - len);
    return machine == MachineId::U0 ? base * static_cast<uint64_t>(cutoff - len + 1) : base;
}

template <typename Fn>
void for_each_valid_program(MachineId machine, int cutoff, Fn&& visit) {
    MachineId code_machine = machine == MachineId::U0 ? MachineId::U1 : machine;
    // LITERAL: 1 + |code(len+1)| + len bits, any payload
    for (uint64_t len = 0;; ++len) {
        int plen = 1 + code_length(code_machine, len + 1) + static_cast<int>(len);
        if (plen > cutoff) break;
        for_each_bitstring(static_cast<int>(len),
                           [&](const std::string& payload) { visit(plen, payload, 1); });
    }
    // REPEAT: 1 + |code(k)| + |code(len+1)| + len bits, block repeated k times
    for (uint64_t k = 1;; ++k) {
        int base = 1 + code_length(code_machine, k);
        if (base + code_length(code_machine, 2) + 1 > cutoff) break;
        for (uint64_t len = 1;; ++len) {
            int plen = base + code_length(code_machine, len + 1) + static_cast<int>(len);
            if (plen > cutoff) break;
            for_each_bitstring(static_cast<int>(len),
                               [&](const std::string& block) { visit(plen, block, k); });
        }
    }
}

}  // namespace

UniversalMassEstimate enumerate_mass(MachineId machine, int cutoff) {
    check_cutoff(cutoff);
    UniversalMassEstimate est;
    est.machine = machine;
    est.cutoff = cutoff;
    for_each_valid_program(machine, cutoff, [&](int plen, const std::string& block, uint64_t k) {
        std::string output;
        output.reserve(block.size() * k);
        for (uint64_t i = 0; i < k; ++i) output += block;
        est.numerators[output] += program_weight(machine, cutoff, plen);
    });
    return est;
}

UniversalMassEstimate enumerate_mass_bruteforce(MachineId machine, int cutoff) {
    check_cutoff(cutoff);
    UniversalMassEstimate est;
    est.machine = machine;
    est.cutoff = cutoff;
    for (int len = 0; len <= cutoff; ++len) {
        for_each_bitstring(len, [&](const std::string& s) {
            Decoded d = decode(machine, s);
            if (d.ok) est.numerators[d.output] += uint64_t(1) << (cutoff - len);
        });
    }
    return est;
}

// -- Invariance ---------------------------------------------------------------

InvarianceReport invariance_gap(int n_max) {
    if (n_max < 0 || n_max > 14) throw std::length_error("invariance_gap: n_max above 14");
    InvarianceReport report;
    report.n_max = n_max;
    report.gap_by_length.assign(n_max + 1, 0);
    for (int n = 0; n <= n_max; ++n) {
        for_each_bitstring(n, [&](const std::string& x) {
            int gap = std::abs(toy_complexity(MachineId::U1, x) - toy_complexity(MachineId::U2, x));
            report.per_x_gap.emplace(x, gap);
            report.gap_by_length[n] = std::max(report.gap_by_length[n], gap);
        });
        report.c_measured = std::max(report.c_measured, report.gap_by_length[n]);
    }
    return report;
}

// -- Divergence ---------------------------------------------------------------

DivergenceSum divergence_partial_sum(std::string_view x, int cutoff) {
    check_cutoff(cutoff);
    DivergenceSum out;
    out.value.log2_den = cutoff;
    for (int plen : program_lengths_for(MachineId::U1, x)) {
        if (plen > cutoff) continue;
        out.any_program = true;
        out.value.num += program_weight(MachineId::U0, cutoff, plen);
    }
    return out;
}

// -- Prefix-freeness ----------------------------------------------------------

bool verify_prefix_free(MachineId machine, int max_len) {
    if (machine == MachineId::U0) return false;
    std::unordered_set<std::string> valid;
    for (int len = 0; len <= max_len; ++len) {
        for_each_bitstring(len, [&](const std::string& s) {
            if (decode(machine, s).ok) valid.insert(s);
        });
    }
    for (const auto& p : valid) {
        for (size_t cut = 1; cut < p.size(); ++cut)
            if (valid.count(p.substr(0, cut))) return false;
    }
    return true;
}

}  // namespace eplab::levin
