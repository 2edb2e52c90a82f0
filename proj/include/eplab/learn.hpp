#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "eplab/sieve.hpp"

namespace eplab::learn {

enum class Task { prime, ek_sign };
enum class SplitKind { range, shuffle };
enum class Subset { train, test };

std::string task_name(Task t);
std::string split_name(SplitKind k);

// splitmix64 mixer; the shuffle split ranks n by
// splitmix64(seed + n * 0x9E3779B97F4A7C15). Normative for reproducibility.
uint64_t splitmix64(uint64_t x);

struct SplitSpec {
    SplitKind kind = SplitKind::range;
    double train_frac = 0.8;
    uint64_t seed = 1;
};

struct FeatureSpec {
    bool use_bit0 = true;      // parity bit; disabled for the ablation runs
    bool modular_pack = false; // appends one-hot n mod 3 and n mod 5
};

// Little-endian binary digits of n; feature j = bit j.
// Throws std::out_of_range when n >= 2^width.
std::vector<uint8_t> featurize(uint64_t n, int width);

// Labeled integers [2, N] with deterministic split. Feature vectors are the
// binary digits of n and are materialized lazily from n itself.
struct Dataset {
    Task task = Task::prime;
    uint64_t n_limit = 0;
    int width = 0;  // raw binary feature count, bit_width(N)
    FeatureSpec features;
    SplitSpec split;
    std::vector<uint8_t> labels;  // labels[n - 2], n in [2, N]
    std::vector<uint32_t> train_ns;
    std::vector<uint32_t> test_ns;

    int feature_count() const;
    double feature(uint32_t n, int j) const;
    uint8_t label_of(uint32_t n) const { return labels[n - 2]; }
    const std::vector<uint32_t>& subset(Subset s) const {
        return s == Subset::train ? train_ns : test_ns;
    }
};

// Builds the dataset. For prime the label is PrimeSet membership; for
// ek_sign it is [omega(n) > ln ln N] with omega[n - 2] supplied by the
// caller for all n in [2, N]. Throws std::domain_error for N < 16.
Dataset make_dataset(Task task, uint64_t n_limit, SplitSpec split, const PrimeSet& ps,
                     std::span<const uint8_t> omega = {}, FeatureSpec features = {});

struct TrainConfig {
    double lr = 1.0;
    uint32_t epochs = 60;
    double l2 = 1e-6;
    uint32_t batch = 1024;  // 0 = full batch
    uint64_t seed = 1;
};

struct LinearModel {
    std::vector<double> weights;
    double bias = 0;
    TrainConfig config;
};

struct TrainResult {
    LinearModel model;
    std::vector<double> epoch_loss_bits;  // regularized train objective after each epoch
};

// L2-regularized logistic loss minimized by (mini-)batch gradient descent in
// fixed iteration order; zero initialization. Deterministic given identical
// dataset and config. Throws std::runtime_error if the objective becomes
// non-finite (learning rate too large).
TrainResult train_logistic(const Dataset& ds, const TrainConfig& cfg);

struct Metrics {
    double accuracy = 0;
    double balanced_accuracy = 0;
    double log_loss_bits = 0;
    double mcc = 0;
    double baseline_accuracy = 0;     // majority-class share of the evaluated split
    double mean_predicted_rate = 0;
};

Metrics evaluate(const LinearModel& model, const Dataset& ds, Subset which);

// Constant-rate predictor at p = train-split positive rate.
Metrics baseline_metrics(const Dataset& ds, Subset which);

// Mean regularized logistic loss (nats) and its gradient over `rows`;
// grad has feature_count() + 1 entries, bias last.
void loss_and_gradient(const Dataset& ds, std::span<const uint32_t> rows,
                       const LinearModel& model, double l2, double* loss_nats,
                       std::span<double> grad);

// Max relative error between the analytic gradient and central finite
// differences on a <= 64-row train batch. epsilon in [1e-7, 1e-3].
double gradient_check(const Dataset& ds, const LinearModel& model, double epsilon);

}  // namespace eplab::learn
