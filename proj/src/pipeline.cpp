#include "eplab/pipeline.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <stdexcept>
#include <thread>

namespace eplab {

namespace {

// Segment boundaries over [2, N+1): segment_size steps, additionally cut at
// c+1 for every checkpoint c so cumulative snapshots land on segment edges.
std::vector<std::pair<uint64_t, uint64_t>> plan_segments(uint64_t n_limit, uint64_t segment_size,
                                                         std::span<const uint64_t> checkpoints) {
    std::vector<std::pair<uint64_t, uint64_t>> segments;
    size_t ci = 0;
    uint64_t lo = 2;
    const uint64_t end = n_limit + 1;
    while (lo < end) {
        uint64_t hi = std::min(lo + segment_size, end);
        while (ci < checkpoints.size() && checkpoints[ci] + 1 <= lo) ++ci;
        if (ci < checkpoints.size() && checkpoints[ci] + 1 < hi) hi = checkpoints[ci] + 1;
        segments.emplace_back(lo, hi);
        lo = hi;
    }
    return segments;
}

}  // namespace

std::vector<uint64_t> default_checkpoints(uint64_t limit) {
    std::vector<uint64_t> cps;
    for (uint64_t c = 10000; c < limit; c *= 10) cps.push_back(c);
    cps.push_back(limit);
    return cps;
}

std::vector<EKHistPoint> per_n_standardized_histogram(uint64_t n_limit, int bins,
                                                      const PipelineOptions& opt) {
    if (n_limit < 3) throw std::invalid_argument("per_n_standardized_histogram: N must be >= 3");
    if (bins < 2) throw std::invalid_argument("per_n_standardized_histogram: bins must be >= 2");

    const double t_lo = -4.0, t_hi = 4.2;
    std::vector<uint64_t> bin_counts(bins, 0);
    uint64_t below = 0, total = 0;

    PrimeSet base(std::max<uint64_t>(2, isqrt(n_limit)));
    uint64_t lo = 3;  // ln ln 2 < 0, so n = 2 has no standardization
    while (lo <= n_limit) {
        uint64_t hi = std::min(lo + opt.segment_size, n_limit + 1);
        OmegaSegment seg = sieve_omega_segment(lo, hi, base);
        for (uint64_t i = 0; i < seg.omega.size(); ++i) {
            double center = std::log(std::log(static_cast<double>(lo + i)));
            double s = (seg.omega[i] - center) / std::sqrt(center);
            ++total;
            if (s < t_lo) {
                ++below;
                continue;
            }
            int b = static_cast<int>((s - t_lo) / (t_hi - t_lo) * bins);
            if (b >= bins) continue;  // above the table; enters no CDF edge
            ++bin_counts[b];
        }
        lo = hi;
    }

    std::vector<EKHistPoint> table(bins);
    uint64_t cum = below;
    for (int b = 0; b < bins; ++b) {
        double t = t_lo + (t_hi - t_lo) * b / bins;
        table[b] = {t, static_cast<double>(cum) / static_cast<double>(total), normal_cdf(t)};
        cum += bin_counts[b];
    }
    return table;
}

OmegaScan scan_omega(uint64_t n_limit, const PipelineOptions& opt,
                     std::span<const uint64_t> checkpoints) {
    if (n_limit < 2) throw std::invalid_argument("scan_omega: N must be >= 2");
    if (opt.segment_size == 0) throw std::invalid_argument("scan_omega: segment_size must be > 0");
    for (size_t i = 0; i < checkpoints.size(); ++i) {
        if (checkpoints[i] > n_limit || (i > 0 && checkpoints[i] <= checkpoints[i - 1]))
            throw std::invalid_argument("scan_omega: checkpoints must be ascending and <= N");
    }

    OmegaScan scan;
    const uint64_t rows = n_limit - 1;
    const bool keep = opt.keep_omegas || opt.write_cache;

    auto segments = plan_segments(n_limit, opt.segment_size, checkpoints);

    // cache hit: one pass over the stored counts
    if (!opt.cache_path.empty() && segment_cache_matches(opt.cache_path, 2, n_limit + 1)) {
        OmegaSegment whole = read_segment_cache(opt.cache_path);
        size_t ci = 0;
        for (const auto& [lo, hi] : segments) {
            OmegaSegment piece;
            piece.lo = lo;
            piece.hi = hi;
            piece.omega.assign(whole.omega.begin() + (lo - 2), whole.omega.begin() + (hi - 2));
            scan.ledger.accumulate(piece);
            while (ci < checkpoints.size() && checkpoints[ci] + 1 == hi) {
                scan.checkpoints.push_back(scan.ledger);
                ++ci;
            }
        }
        if (opt.keep_omegas) scan.omega = std::move(whole.omega);
        return scan;
    }

    PrimeSet base(std::max<uint64_t>(2, isqrt(n_limit)));
    if (keep) scan.omega.resize(rows);

    std::vector<MomentLedger> partials(segments.size());
    unsigned workers = std::max(1u, opt.workers);
    auto work = [&](size_t idx) {
        const auto& [lo, hi] = segments[idx];
        OmegaSegment seg = sieve_omega_segment(lo, hi, base);
        MomentLedger led;
        led.accumulate(seg);
        partials[idx] = std::move(led);
        if (keep) std::copy(seg.omega.begin(), seg.omega.end(), scan.omega.begin() + (lo - 2));
    };
    if (workers == 1) {
        for (size_t i = 0; i < segments.size(); ++i) work(i);
    } else {
        std::atomic<size_t> next{0};
        std::vector<std::thread> pool;
        for (unsigned w = 0; w < workers; ++w)
            pool.emplace_back([&] {
                for (size_t i = next.fetch_add(1); i < segments.size(); i = next.fetch_add(1))
                    work(i);
            });
        for (auto& t : pool) t.join();
    }

    // deterministic merge in ascending segment order
    size_t ci = 0;
    for (size_t i = 0; i < segments.size(); ++i) {
        scan.ledger = merge(scan.ledger, partials[i]);
        while (ci < checkpoints.size() && checkpoints[ci] + 1 == segments[i].second) {
            scan.checkpoints.push_back(scan.ledger);
            ++ci;
        }
    }

    if (opt.write_cache && !opt.cache_path.empty()) {
        OmegaSegment whole;
        whole.lo = 2;
        whole.hi = n_limit + 1;
        whole.omega = scan.omega;
        write_segment_cache(whole, opt.cache_path);
    }
    if (!opt.keep_omegas) scan.omega.clear();
    return scan;
}

}  // namespace eplab
