#include "eplab/omega_stats.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace eplab {

uint64_t MomentLedger::n_min() const { return covered_.front().first; }
uint64_t MomentLedger::n_max() const { return covered_.back().second - 1; }

void MomentLedger::add_interval(uint64_t lo, uint64_t hi) {
    auto it = std::lower_bound(covered_.begin(), covered_.end(), std::make_pair(lo, uint64_t(0)));
    if (it != covered_.end() && it->first < hi)
        throw std::invalid_argument("MomentLedger: range overlaps covered range");
    if (it != covered_.begin() && std::prev(it)->second > lo)
        throw std::invalid_argument("MomentLedger: range overlaps covered range");
    it = covered_.insert(it, {lo, hi});
    // coalesce with neighbours so adjacent segments stay one interval
    if (it != covered_.begin() && std::prev(it)->second == it->first) {
        std::prev(it)->second = it->second;
        it = covered_.erase(it);
        it = std::prev(it);
    }
    if (std::next(it) != covered_.end() && it->second == std::next(it)->first) {
        it->second = std::next(it)->second;
        covered_.erase(std::next(it));
    }
}

void MomentLedger::accumulate(const OmegaSegment& seg) {
    if (seg.omega.size() != seg.hi - seg.lo)
        throw std::invalid_argument("MomentLedger: segment length mismatch");
    for (uint8_t k : seg.omega)
        if (k >= kOmegaHistSize) throw std::length_error("MomentLedger: omega value >= 32");
    add_interval(seg.lo, seg.hi);
    for (uint8_t k : seg.omega) {
        hist_[k]++;
        count_++;
        sum_ += k;
        sum_sq_ += uint64_t(k) * uint64_t(k);
    }
}

MomentLedger accumulate(const OmegaSegment& seg, MomentLedger ledger) {
    ledger.accumulate(seg);
    return ledger;
}

MomentLedger merge(const MomentLedger& a, const MomentLedger& b) {
    MomentLedger out = a;
    for (const auto& [lo, hi] : b.covered_) out.add_interval(lo, hi);
    out.count_ += b.count_;
    out.sum_ += b.sum_;
    out.sum_sq_ += b.sum_sq_;
    for (int k = 0; k < kOmegaHistSize; ++k) out.hist_[k] += b.hist_[k];
    return out;
}

bool operator==(const MomentLedger& a, const MomentLedger& b) {
    return a.count_ == b.count_ && a.sum_ == b.sum_ && a.sum_sq_ == b.sum_sq_ &&
           a.hist_ == b.hist_ && a.covered_ == b.covered_;
}

double normal_cdf(double x) {
    if (!std::isfinite(x)) throw std::invalid_argument("normal_cdf: non-finite input");
    // erf via A&S 7.1.26; |error| <= 1.5e-7
    double z = std::abs(x) / std::sqrt(2.0);
    double t = 1.0 / (1.0 + 0.3275911 * z);
    double poly = t * (0.254829592 +
                  t * (-0.284496736 +
                  t * (1.421413741 +
                  t * (-1.453152027 +
                  t * 1.061405429))));
    double erf = 1.0 - poly * std::exp(-z * z);
    double phi = 0.5 * (1.0 + erf);
    return x >= 0 ? phi : 1.0 - phi;
}

double ek_standardize(double omega_value, uint64_t n_limit) {
    if (n_limit < 16) throw std::domain_error("ek_standardize: N must be >= 16");
    double loglog = std::log(std::log(static_cast<double>(n_limit)));
    return (omega_value - loglog) / std::sqrt(loglog);
}

double ks_statistic(std::span<const std::pair<double, uint64_t>> atoms, uint64_t total) {
    if (total == 0) throw std::invalid_argument("ks_statistic: empty distribution");
    double d = 0;
    uint64_t cum = 0;
    for (const auto& [t, cnt] : atoms) {
        double f_left = static_cast<double>(cum) / static_cast<double>(total);
        cum += cnt;
        double f_right = static_cast<double>(cum) / static_cast<double>(total);
        double phi = normal_cdf(t);
        d = std::max({d, std::abs(f_right - phi), std::abs(f_left - phi)});
    }
    return d;
}

namespace {

std::vector<std::pair<double, uint64_t>> standardized_atoms(const MomentLedger& ledger) {
    std::vector<std::pair<double, uint64_t>> atoms;
    atoms.reserve(kOmegaHistSize);
    uint64_t n = ledger.n_max();
    for (int k = 0; k < kOmegaHistSize; ++k)
        atoms.emplace_back(ek_standardize(k, n), ledger.hist()[k]);
    return atoms;
}

}  // namespace

double ks_distance_to_normal(const MomentLedger& ledger) {
    if (ledger.empty()) throw std::invalid_argument("ks_distance_to_normal: empty ledger");
    return ks_statistic(standardized_atoms(ledger), ledger.count());
}

EKReport hardy_ramanujan_report(const MomentLedger& ledger) {
    if (ledger.count() < 2) throw std::invalid_argument("hardy_ramanujan_report: count < 2");
    uint64_t n = ledger.n_max();
    if (n <= 2) throw std::domain_error("hardy_ramanujan_report: ln ln N nonpositive");

    EKReport r;
    r.n_max = n;
    r.count = ledger.count();
    double cnt = static_cast<double>(ledger.count());
    r.mean = static_cast<double>(ledger.sum_omega()) / cnt;
    r.variance = static_cast<double>(ledger.sum_omega_sq()) / cnt - r.mean * r.mean;
    r.loglog_n = std::log(std::log(static_cast<double>(n)));
    r.mean_dev = r.mean - (r.loglog_n + kMertensConstant);
    r.var_dev = r.variance - r.loglog_n;

    double spread = std::sqrt(r.loglog_n);
    for (int li = 0; li < 3; ++li) {
        double lambda = li + 1;
        uint64_t tail = 0;
        for (int k = 0; k < kOmegaHistSize; ++k)
            if (std::abs(k - r.loglog_n) >= lambda * spread) tail += ledger.hist()[k];
        r.chebyshev[li] = static_cast<double>(tail) / cnt;
    }
    return r;
}

EKReport ek_report(const MomentLedger& ledger, int bins) {
    EKReport r = hardy_ramanujan_report(ledger);
    r.ks = ks_distance_to_normal(ledger);

    if (bins < 2) throw std::invalid_argument("ek_report: bins must be >= 2");
    auto atoms = standardized_atoms(ledger);
    double total = static_cast<double>(ledger.count());
    r.histogram.reserve(bins);
    // uniform bins over [-4, 4.2], sampled at bin left edges (width 0.2 at 41 bins)
    const double t_lo = -4.0, t_hi = 4.2;
    for (int b = 0; b < bins; ++b) {
        double t = t_lo + (t_hi - t_lo) * b / bins;
        uint64_t cum = 0;
        for (const auto& [at, cnt] : atoms)
            if (at <= t) cum += cnt;
        r.histogram.push_back({t, static_cast<double>(cum) / total, normal_cdf(t)});
    }
    return r;
}

}  // namespace eplab
