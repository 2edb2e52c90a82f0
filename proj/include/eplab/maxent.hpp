#pragma once

#include <cstdint>
#include <vector>

#include "eplab/omega_stats.hpp"
#include "eplab/sieve.hpp"

namespace eplab {

inline constexpr double kDefaultTailCut = 1e-9;

// Probability mass function on consecutive integers starting at support_min.
struct DiscretePMF {
    enum class Family { geometric, poisson, empirical };

    Family family = Family::empirical;
    double param = 0;  // mean for geometric, lambda for poisson, 0 otherwise
    int support_min = 0;
    std::vector<double> p;

    double total() const;
    double mean() const;
    double entropy_bits() const;
};

// Binary entropy in bits, with 0*log 0 = 0. Throws std::invalid_argument
// outside [0, 1].
double bernoulli_entropy(double p);

// Max-entropy law on {0,1,...} with the given mean: p(k) =
// (1/(1+mu)) (mu/(1+mu))^k, truncated once the remaining tail drops
// below tail_cut.
DiscretePMF maxent_geometric(double mean, double tail_cut = kDefaultTailCut);

// Poisson(lambda) on {0..k_max} via the stable recurrence
// p(k) = p(k-1) * lambda / k. Requires k_max >= ceil(lambda) + 40 or a
// truncated tail below 1e-9.
DiscretePMF poisson_pmf(double lambda, int k_max);

// Normalized omega histogram of a ledger. Throws std::invalid_argument on
// an empty ledger.
DiscretePMF empirical_omega_pmf(const MomentLedger& ledger);

// (1/2) sum_k |a(k) - b(k)| over the union of supports; in [0, 1].
double total_variation(const DiscretePMF& a, const DiscretePMF& b);

struct DensityEntropyRecord {
    uint64_t n = 0;
    uint64_t pi_n = 0;
    double density = 0;        // pi(N) / N
    double entropy_bits = 0;   // binary entropy of density; also the
                               // per-symbol log-loss of the constant-rate predictor
    double total_bits = 0;     // N * entropy_bits
    double naive_list_bits = 0;  // pi(N) * log2 N
};

// Entropy budget of the prime indicator sequence up to N.
// Requires 3 <= N <= ps.limit().
DensityEntropyRecord prime_density_entropy_report(uint64_t n, const PrimeSet& ps);

}  // namespace eplab
