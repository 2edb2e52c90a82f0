#include "eplab/maxent.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace eplab {

double DiscretePMF::total() const {
    double s = 0;
    for (double v : p) s += v;
    return s;
}

double DiscretePMF::mean() const {
    double s = 0;
    for (size_t k = 0; k < p.size(); ++k) s += (support_min + static_cast<double>(k)) * p[k];
    return s;
}

double DiscretePMF::entropy_bits() const {
    double s = 0;
    for (double v : p)
        if (v > 0) s -= v * std::log2(v);
    return s;
}

double bernoulli_entropy(double p) {
    if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("bernoulli_entropy: p outside [0,1]");
    double h = 0;
    if (p > 0) h -= p * std::log2(p);
    if (p < 1) h -= (1 - p) * std::log2(1 - p);
    return h;
}

DiscretePMF maxent_geometric(double mean, double tail_cut) {
    if (mean < 0) throw std::invalid_argument("maxent_geometric: mean must be >= 0");
    if (!(tail_cut > 0 && tail_cut <= 1e-6))
        throw std::invalid_argument("maxent_geometric: tail_cut outside (0, 1e-6]");

    DiscretePMF pmf;
    pmf.family = DiscretePMF::Family::geometric;
    pmf.param = mean;
    if (mean == 0) {
        pmf.p = {1.0};
        return pmf;
    }
    double q = mean / (1.0 + mean);
    double head = 1.0 - q;  // p(0)
    double term = head;
    double tail = 1.0;
    while (tail >= tail_cut) {
        pmf.p.push_back(term);
        tail *= q;  // remaining mass after k+1 terms is q^(k+1)
        term *= q;
    }
    return pmf;
}

DiscretePMF poisson_pmf(double lambda, int k_max) {
    if (lambda < 0) throw std::invalid_argument("poisson_pmf: lambda must be >= 0");
    if (k_max < 0) throw std::invalid_argument("poisson_pmf: k_max must be >= 0");

    DiscretePMF pmf;
    pmf.family = DiscretePMF::Family::poisson;
    pmf.param = lambda;
    pmf.p.resize(k_max + 1);
    pmf.p[0] = std::exp(-lambda);
    for (int k = 1; k <= k_max; ++k) pmf.p[k] = pmf.p[k - 1] * lambda / k;

    if (k_max < static_cast<int>(std::ceil(lambda)) + 40 && 1.0 - pmf.total() >= 1e-9)
        throw std::invalid_argument("poisson_pmf: k_max leaves tail >= 1e-9");
    return pmf;
}

DiscretePMF empirical_omega_pmf(const MomentLedger& ledger) {
    if (ledger.empty()) throw std::invalid_argument("empirical_omega_pmf: empty ledger");
    DiscretePMF pmf;
    pmf.family = DiscretePMF::Family::empirical;
    int top = kOmegaHistSize - 1;
    while (top > 0 && ledger.hist()[top] == 0) --top;
    pmf.p.resize(top + 1);
    double total = static_cast<double>(ledger.count());
    for (int k = 0; k <= top; ++k) pmf.p[k] = static_cast<double>(ledger.hist()[k]) / total;
    return pmf;
}

double total_variation(const DiscretePMF& a, const DiscretePMF& b) {
    if (a.p.empty() || b.p.empty()) throw std::invalid_argument("total_variation: empty pmf");
    int lo = std::min(a.support_min, b.support_min);
    int hi = std::max(a.support_min + static_cast<int>(a.p.size()),
                      b.support_min + static_cast<int>(b.p.size()));
    auto at = [](const DiscretePMF& pmf, int k) -> double {
        int i = k - pmf.support_min;
        return (i >= 0 && i < static_cast<int>(pmf.p.size())) ? pmf.p[i] : 0.0;
    };
    double s = 0;
    for (int k = lo; k < hi; ++k) s += std::abs(at(a, k) - at(b, k));
    return 0.5 * s;
}

DensityEntropyRecord prime_density_entropy_report(uint64_t n, const PrimeSet& ps) {
    if (n < 3) throw std::invalid_argument("prime_density_entropy_report: N must be >= 3");
    if (n > ps.limit()) throw std::out_of_range("prime_density_entropy_report: N exceeds sieve limit");

    DensityEntropyRecord rec;
    rec.n = n;
    rec.pi_n = ps.count_upto(n);
    rec.density = static_cast<double>(rec.pi_n) / static_cast<double>(n);
    rec.entropy_bits = bernoulli_entropy(rec.density);
    rec.total_bits = static_cast<double>(n) * rec.entropy_bits;
    rec.naive_list_bits = static_cast<double>(rec.pi_n) * std::log2(static_cast<double>(n));
    return rec;
}

}  // namespace eplab
