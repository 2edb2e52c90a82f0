#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "eplab/sieve.hpp"

namespace eplab {

// Constant M in sum_{p<=N} 1/p = ln ln N + M + o(1).
inline constexpr double kMertensConstant = 0.2614972128;

inline constexpr int kOmegaHistSize = 32;

// Exact streaming moments of omega(n). All arithmetic is integer; merge is
// exact, associative and commutative over ledgers with disjoint ranges.
class MomentLedger {
public:
    uint64_t count() const { return count_; }
    unsigned __int128 sum_omega() const { return sum_; }
    unsigned __int128 sum_omega_sq() const { return sum_sq_; }
    const std::array<uint64_t, kOmegaHistSize>& hist() const { return hist_; }
    bool empty() const { return count_ == 0; }

    // Smallest / largest n covered. Undefined on an empty ledger.
    uint64_t n_min() const;
    uint64_t n_max() const;

    // Half-open [lo, hi) intervals covered, sorted, disjoint, coalesced.
    const std::vector<std::pair<uint64_t, uint64_t>>& covered() const { return covered_; }

    // Folds a segment in. Throws std::invalid_argument if the segment range
    // overlaps anything already covered, std::length_error on omega >= 32.
    void accumulate(const OmegaSegment& seg);

    friend MomentLedger merge(const MomentLedger& a, const MomentLedger& b);
    friend bool operator==(const MomentLedger& a, const MomentLedger& b);

private:
    void add_interval(uint64_t lo, uint64_t hi);

    uint64_t count_ = 0;
    unsigned __int128 sum_ = 0;
    unsigned __int128 sum_sq_ = 0;
    std::array<uint64_t, kOmegaHistSize> hist_{};
    std::vector<std::pair<uint64_t, uint64_t>> covered_;
};

MomentLedger merge(const MomentLedger& a, const MomentLedger& b);
bool operator==(const MomentLedger& a, const MomentLedger& b);

// Spec-level wrapper around MomentLedger::accumulate.
MomentLedger accumulate(const OmegaSegment& seg, MomentLedger ledger);

// Phi(x) via the Abramowitz-Stegun 7.1.26-class rational approximation of
// erf; absolute error <= 1.5e-7. Hand-rolled so report bytes do not depend
// on the platform libm. Throws std::invalid_argument on non-finite input.
double normal_cdf(double x);

// (omega_value - ln ln N) / sqrt(ln ln N). Throws std::domain_error for N < 16.
double ek_standardize(double omega_value, uint64_t n_limit);

// KS statistic of an atomic empirical CDF against Phi: atoms are
// (standardized value, count) sorted by value; both one-sided limits are
// checked at each atom.
double ks_statistic(std::span<const std::pair<double, uint64_t>> atoms, uint64_t total);

// KS distance of the ledger's standardized omega law to the standard normal,
// centered at ln ln n_max. Throws std::invalid_argument on an empty ledger.
double ks_distance_to_normal(const MomentLedger& ledger);

struct EKHistPoint {
    double t = 0;
    double emp_cdf = 0;
    double normal_cdf = 0;
};

struct EKReport {
    uint64_t n_max = 0;
    uint64_t count = 0;
    double mean = 0;
    double variance = 0;
    double loglog_n = 0;
    double mertens = kMertensConstant;
    double mean_dev = 0;   // mean - (ln ln N + M)
    double var_dev = 0;    // variance - ln ln N
    double ks = 0;
    std::array<double, 3> chebyshev{};  // tail fractions for lambda = 1, 2, 3
    std::vector<EKHistPoint> histogram;
};

// Mean/variance/Chebyshev part of the report (ks left at 0, histogram empty).
// Throws std::invalid_argument for count < 2, std::domain_error for n_max <= 2.
EKReport hardy_ramanujan_report(const MomentLedger& ledger);

// Full report: hardy_ramanujan_report plus KS distance and the standardized
// CDF table sampled on `bins` uniform points over [-4, 4.2].
EKReport ek_report(const MomentLedger& ledger, int bins = 41);

}  // namespace eplab
