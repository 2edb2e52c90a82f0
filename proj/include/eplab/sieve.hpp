#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace eplab {

// Prime membership over [0, limit], bit-packed, immutable after construction.
class PrimeSet {
public:
    // Sieve of Eratosthenes up to `limit` inclusive.
    // Throws std::invalid_argument for limit < 2, std::length_error above the cap.
    explicit PrimeSet(uint64_t limit);

    uint64_t limit() const { return limit_; }

    bool contains(uint64_t n) const {
        if (n > limit_) return false;
        return (words_[n >> 6] >> (n & 63)) & 1u;
    }

    // pi(upto). Throws std::out_of_range when upto > limit.
    uint64_t count_upto(uint64_t upto) const;

    // All primes p <= upto, ascending.
    std::vector<uint64_t> primes_upto(uint64_t upto) const;

private:
    uint64_t limit_;
    std::vector<uint64_t> words_;
};

inline constexpr uint64_t kSieveLimitCap = uint64_t(1) << 32;
inline constexpr uint64_t kDefaultSegmentWidth = uint64_t(1) << 20;

PrimeSet sieve_primes(uint64_t limit);
uint64_t prime_count(const PrimeSet& ps, uint64_t upto);

// Distinct (omega) and with-multiplicity (big_omega) prime factor counts
// for the contiguous range [lo, hi); entry i describes n = lo + i.
struct OmegaSegment {
    uint64_t lo = 0;
    uint64_t hi = 0;
    std::vector<uint8_t> omega;
    std::optional<std::vector<uint8_t>> big_omega;
};

// Segmented sieve for omega over [lo, hi). Requires 2 <= lo < hi and
// base_primes.limit()^2 >= hi - 1.
OmegaSegment sieve_omega_segment(uint64_t lo, uint64_t hi, const PrimeSet& base_primes,
                                 bool with_big_omega = false);

struct FactorCounts {
    uint32_t omega = 0;
    uint32_t big_omega = 0;
};

// Exact (omega(n), Omega(n)) by trial division. Independent of the sieve path.
FactorCounts trial_division_omega(uint64_t n);

uint64_t isqrt(uint64_t n);

// Segment cache file, bit-exact: magic "EPR1", lo and hi as unsigned
// 64-bit little-endian, then (hi - lo) bytes of omega counts.
void write_segment_cache(const OmegaSegment& seg, const std::string& path);
OmegaSegment read_segment_cache(const std::string& path);
bool segment_cache_matches(const std::string& path, uint64_t lo, uint64_t hi);

}  // namespace eplab
