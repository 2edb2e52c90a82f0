#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "eplab/omega_stats.hpp"
#include "eplab/sieve.hpp"

namespace eplab {

struct PipelineOptions {
    uint64_t segment_size = kDefaultSegmentWidth;
    unsigned workers = 1;
    std::string cache_path;    // when set, load a matching cache instead of sieving
    bool write_cache = false;  // write cache_path after sieving
    bool keep_omegas = false;  // materialize omega[n-2] for n in [2, N]
};

struct OmegaScan {
    MomentLedger ledger;                    // over [2, N]
    std::vector<MomentLedger> checkpoints;  // cumulative ledger at each requested checkpoint
    std::vector<uint8_t> omega;             // filled when keep_omegas or cache involved
};

// Sieve omega over [2, N] and fold it into a ledger. Segments are sieved
// independently (workers > 1 splits them across threads) and merged in
// ascending order, so results are identical for any worker count.
// `checkpoints` must be ascending values <= N.
OmegaScan scan_omega(uint64_t n_limit, const PipelineOptions& opt = {},
                     std::span<const uint64_t> checkpoints = {});

// Default report checkpoints: powers of ten from 10^4 up to limit, plus the
// limit itself.
std::vector<uint64_t> default_checkpoints(uint64_t limit);

// Comparison variant of the standardized CDF table using per-n centering
// (omega(n) - ln ln n)/sqrt(ln ln n) instead of the constant ln ln N.
// n = 2 is skipped (ln ln 2 < 0). Binned over [-4, 4.2].
std::vector<EKHistPoint> per_n_standardized_histogram(uint64_t n_limit, int bins = 41,
                                                      const PipelineOptions& opt = {});

}  // namespace eplab
