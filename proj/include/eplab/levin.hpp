#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace eplab::levin {

// Toy decoders standing in for universal machines. U1 and U2 are prefix-free
// (no valid program is a proper prefix of another); U0 runs U1's decoder but
// accepts trailing bits, which destroys prefix-freeness by construction.
//
// Program format, bit-exact. First a mode bit, then length-prefixed fields:
//   U1  mode 0 LITERAL: elias_gamma(len+1), then len payload bits; output = payload.
//       mode 1 REPEAT:  elias_gamma(k), elias_gamma(len+1) with len >= 1,
//                       then len block bits; output = block repeated k times.
//   U2  same structure with mode meanings swapped and elias_delta codes.
//   U0  U1's decoder with trailing bits permitted.
enum class MachineId { U0, U1, U2 };

std::string machine_name(MachineId m);

inline constexpr int kEnumerationCutoff = 26;

// -- Elias integer codes (m >= 1) --------------------------------------------

void append_gamma(std::string& bits, uint64_t m);
void append_delta(std::string& bits, uint64_t m);
std::string elias_gamma(uint64_t m);
std::string elias_delta(uint64_t m);
int gamma_length(uint64_t m);
int delta_length(uint64_t m);

// -- Exact dyadic rationals ---------------------------------------------------

// num / 2^log2_den with exact integer arithmetic. Desk-scale magnitudes only;
// addition asserts against overflow.
struct Dyadic {
    uint64_t num = 0;
    int log2_den = 0;

    Dyadic normalized() const;
    double to_double() const;
    std::string to_string() const;  // "num/2^k", normalized

    friend Dyadic operator+(const Dyadic& a, const Dyadic& b);
    friend bool operator==(const Dyadic& a, const Dyadic& b);
    friend bool operator<(const Dyadic& a, const Dyadic& b);
};

// -- Decoding -----------------------------------------------------------------

enum class DecodeError { none, incomplete, trailing, malformed, unsupported };

struct Decoded {
    bool ok = false;
    DecodeError error = DecodeError::none;
    std::string output;
    size_t consumed = 0;
};

// Exact decode of a '0'/'1' string. For U1/U2 the outcome is `incomplete`
// when bits end mid-field, `trailing` when bits remain after a full decode,
// `malformed` for a REPEAT with an empty block. U0 permits trailing bits.
// Throws std::invalid_argument on characters outside '0'/'1'.
Decoded decode(MachineId machine, std::string_view bits);

// -- Complexity ---------------------------------------------------------------

// Exact minimal program length for x on U1 or U2, in closed form over the
// LITERAL program and every REPEAT decomposition x = block^k.
// Throws std::invalid_argument for U0.
int toy_complexity(MachineId machine, std::string_view x);

// Independent oracle: minimum |p| <= cutoff with decode(p) = x, by raw
// enumeration of every bitstring. nullopt when nothing within the cutoff.
std::optional<int> toy_complexity_bruteforce(MachineId machine, std::string_view x, int cutoff);

// Bulk form of the oracle: shortest program length for every output reachable
// within the cutoff, from one raw enumeration pass.
std::map<std::string, int> bruteforce_min_lengths(MachineId machine, int cutoff);

// -- Universal mass -----------------------------------------------------------

// Exact algorithmic-probability lower bounds at a program-length cutoff:
// numerators over the common denominator 2^cutoff. For U1/U2 each valid
// program p contributes 2^-|p|; for U0 every extension of a valid program is
// itself a program, so p contributes (cutoff - |p| + 1) * 2^-|p|.
struct UniversalMassEstimate {
    MachineId machine = MachineId::U1;
    int cutoff = 0;
    std::map<std::string, uint64_t> numerators;

    Dyadic mass_of(const std::string& output) const;
    uint64_t total_numerator() const;
    // Kraft inequality, exact: total mass <= 1.
    bool kraft_holds() const;
};

UniversalMassEstimate enumerate_mass(MachineId machine, int cutoff);

// Same map from a raw scan over all bitstrings; independent oracle for
// enumerate_mass (slow, cutoff <= ~20 advisable).
UniversalMassEstimate enumerate_mass_bruteforce(MachineId machine, int cutoff);

// -- Invariance ---------------------------------------------------------------

struct InvarianceReport {
    int n_max = 0;
    std::map<std::string, int> per_x_gap;  // |K_U1(x) - K_U2(x)|
    std::vector<int> gap_by_length;        // max gap over |x| = n
    int c_measured = 0;                    // max over all enumerated x
};

// Gaps over every x with |x| <= n_max (n_max <= 14).
InvarianceReport invariance_gap(int n_max);

// -- Divergence on the non-prefix-free machine --------------------------------

struct DivergenceSum {
    Dyadic value;            // sum of 2^-|p| over U0 programs of length <= cutoff outputting x
    bool any_program = false;
};

DivergenceSum divergence_partial_sum(std::string_view x, int cutoff);

// Exhaustive prefix-freeness check over all bitstrings of length <= max_len.
bool verify_prefix_free(MachineId machine, int max_len);

}  // namespace eplab::levin
