#include "eplab/sieve.hpp"

#include <bit>
#include <cassert>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <stdexcept>

namespace eplab {

uint64_t isqrt(uint64_t n) {
    if (n == 0) return 0;
    uint64_t r = static_cast<uint64_t>(std::sqrt(static_cast<double>(n)));
    while (r > 0 && r * r > n) --r;
    while ((r + 1) * (r + 1) <= n) ++r;
    return r;
}

PrimeSet::PrimeSet(uint64_t limit) : limit_(limit) {
    if (limit < 2) throw std::invalid_argument("PrimeSet: limit must be >= 2");
    if (limit > kSieveLimitCap) throw std::length_error("PrimeSet: limit above 2^32 cap");

    words_.assign(limit / 64 + 1, ~uint64_t(0));
    auto clear = [&](uint64_t n) { words_[n >> 6] &= ~(uint64_t(1) << (n & 63)); };
    clear(0);
    clear(1);
    for (uint64_t i = 2; i * i <= limit; ++i) {
        if (!contains(i)) continue;
        for (uint64_t j = i * i; j <= limit; j += i) clear(j);
    }
    // mask bits above limit so popcounts stay exact
    uint64_t top = limit & 63;
    if (top != 63) words_.back() &= (uint64_t(1) << (top + 1)) - 1;
}

uint64_t PrimeSet::count_upto(uint64_t upto) const {
    if (upto > limit_) throw std::out_of_range("prime_count: upto exceeds sieve limit");
    uint64_t words = upto >> 6;
    uint64_t total = 0;
    for (uint64_t w = 0; w < words; ++w) total += std::popcount(words_[w]);
    uint64_t top = upto & 63;
    uint64_t mask = (top == 63) ? ~uint64_t(0) : ((uint64_t(1) << (top + 1)) - 1);
    total += std::popcount(words_[words] & mask);
    return total;
}

std::vector<uint64_t> PrimeSet::primes_upto(uint64_t upto) const {
    if (upto > limit_) throw std::out_of_range("primes_upto: upto exceeds sieve limit");
    std::vector<uint64_t> out;
    for (uint64_t n = 2; n <= upto; ++n)
        if (contains(n)) out.push_back(n);
    return out;
}

PrimeSet sieve_primes(uint64_t limit) { return PrimeSet(limit); }

uint64_t prime_count(const PrimeSet& ps, uint64_t upto) { return ps.count_upto(upto); }

OmegaSegment sieve_omega_segment(uint64_t lo, uint64_t hi, const PrimeSet& base_primes,
                                 bool with_big_omega) {
    if (lo < 2) throw std::invalid_argument("sieve_omega_segment: lo must be >= 2");
    if (hi <= lo) throw std::invalid_argument("sieve_omega_segment: hi must exceed lo");
    uint64_t top = hi - 1;
    if (base_primes.limit() < isqrt(top))
        throw std::invalid_argument("sieve_omega_segment: base primes cover less than sqrt(hi-1)");

    uint64_t len = hi - lo;
    OmegaSegment seg;
    seg.lo = lo;
    seg.hi = hi;
    seg.omega.assign(len, 0);
    if (with_big_omega) seg.big_omega.emplace(len, 0);

    std::vector<uint64_t> residual(len);
    for (uint64_t i = 0; i < len; ++i) residual[i] = lo + i;

    for (uint64_t p : base_primes.primes_upto(isqrt(top))) {
        uint64_t start = ((lo + p - 1) / p) * p;
        for (uint64_t m = start; m < hi; m += p) {
            uint64_t i = m - lo;
            seg.omega[i]++;
            while (residual[i] % p == 0) {
                residual[i] /= p;
                if (with_big_omega) (*seg.big_omega)[i]++;
            }
        }
    }
    for (uint64_t i = 0; i < len; ++i) {
        if (residual[i] > 1) {
            seg.omega[i]++;
            if (with_big_omega) (*seg.big_omega)[i]++;
        }
        assert(seg.omega[i] >= 1 && seg.omega[i] <= 15);
    }
    return seg;
}

FactorCounts trial_division_omega(uint64_t n) {
    if (n == 0) throw std::invalid_argument("trial_division_omega: n must be >= 1");
    FactorCounts c;
    auto strip = [&](uint64_t p) {
        if (n % p != 0) return;
        c.omega++;
        while (n % p == 0) {
            n /= p;
            c.big_omega++;
        }
    };
    strip(2);
    for (uint64_t d = 3; d * d <= n; d += 2) strip(d);
    if (n > 1) {
        c.omega++;
        c.big_omega++;
    }
    return c;
}

namespace {

constexpr char kCacheMagic[4] = {'E', 'P', 'R', '1'};

void put_u64le(FILE* f, uint64_t v) {
    unsigned char b[8];
    for (int i = 0; i < 8; ++i) b[i] = static_cast<unsigned char>(v >> (8 * i));
    if (std::fwrite(b, 1, 8, f) != 8) throw std::runtime_error("segment cache: short write");
}

uint64_t get_u64le(FILE* f) {
    unsigned char b[8];
    if (std::fread(b, 1, 8, f) != 8) throw std::runtime_error("segment cache: short read");
    uint64_t v = 0;
    for (int i = 0; i < 8; ++i) v |= uint64_t(b[i]) << (8 * i);
    return v;
}

struct FileCloser {
    FILE* f;
    ~FileCloser() {
        if (f) std::fclose(f);
    }
};

}  // namespace

void write_segment_cache(const OmegaSegment& seg, const std::string& path) {
    FILE* f = std::fopen(path.c_str(), "wb");
    if (!f) throw std::runtime_error("segment cache: cannot open for write: " + path);
    FileCloser closer{f};
    if (std::fwrite(kCacheMagic, 1, 4, f) != 4) throw std::runtime_error("segment cache: short write");
    put_u64le(f, seg.lo);
    put_u64le(f, seg.hi);
    if (!seg.omega.empty() &&
        std::fwrite(seg.omega.data(), 1, seg.omega.size(), f) != seg.omega.size())
        throw std::runtime_error("segment cache: short write");
}

OmegaSegment read_segment_cache(const std::string& path) {
    FILE* f = std::fopen(path.c_str(), "rb");
    if (!f) throw std::runtime_error("segment cache: cannot open: " + path);
    FileCloser closer{f};
    char magic[4];
    if (std::fread(magic, 1, 4, f) != 4 || std::memcmp(magic, kCacheMagic, 4) != 0)
        throw std::runtime_error("segment cache: bad magic in " + path);
    OmegaSegment seg;
    seg.lo = get_u64le(f);
    seg.hi = get_u64le(f);
    if (seg.hi <= seg.lo) throw std::runtime_error("segment cache: corrupt header in " + path);
    seg.omega.resize(seg.hi - seg.lo);
    if (std::fread(seg.omega.data(), 1, seg.omega.size(), f) != seg.omega.size())
        throw std::runtime_error("segment cache: truncated payload in " + path);
    return seg;
}

bool segment_cache_matches(const std::string& path, uint64_t lo, uint64_t hi) {
    FILE* f = std::fopen(path.c_str(), "rb");
    if (!f) return false;
    FileCloser closer{f};
    char magic[4];
    if (std::fread(magic, 1, 4, f) != 4 || std::memcmp(magic, kCacheMagic, 4) != 0) return false;
    try {
        return get_u64le(f) == lo && get_u64le(f) == hi;
    } catch (const std::runtime_error&) {
        return false;
    }
}

}  // namespace eplab
