#include <stdexcept>
#include <algorithm>
#include <cmath>
#include <set>
#include <vector>

#include "doctest.h"
#include "eplab/learn.hpp"
#include "eplab/pipeline.hpp"
#include "eplab/sieve.hpp"

using namespace eplab;
using namespace eplab::learn;

namespace {

Dataset prime_dataset(uint64_t n_limit, SplitSpec split = {}, FeatureSpec features = {}) {
    PrimeSet ps(n_limit);
    return make_dataset(Task::prime, n_limit, split, ps, {}, features);
}

Dataset ek_dataset(uint64_t n_limit, SplitSpec split = {}) {
    PrimeSet ps(n_limit);
    PipelineOptions opt;
    opt.keep_omegas = true;
    OmegaScan scan = scan_omega(n_limit, opt);
    return make_dataset(Task::ek_sign, n_limit, split, ps, scan.omega);
}

// tiny handmade dataset: labels equal a chosen feature bit
Dataset toy_dataset(int label_bit, uint64_t n_limit = 64) {
    PrimeSet ps(n_limit);
    Dataset ds = make_dataset(Task::prime, n_limit, {}, ps);
    for (uint64_t n = 2; n <= n_limit; ++n) ds.labels[n - 2] = (n >> label_bit) & 1;
    return ds;
}

}  // namespace

TEST_CASE("featurize little-endian digits") {
    CHECK(featurize(5, 4) == std::vector<uint8_t>{1, 0, 1, 0});
    CHECK(featurize(0, 3) == std::vector<uint8_t>{0, 0, 0});
    CHECK(featurize(10, 4) == std::vector<uint8_t>{0, 1, 0, 1});
    CHECK_THROWS_AS(featurize(16, 4), std::out_of_range);
}

TEST_CASE("make_dataset prime labels and width") {
    Dataset ds = prime_dataset(100);
    CHECK(ds.width == 7);
    CHECK(ds.label_of(97) == 1);
    CHECK(ds.label_of(96) == 0);
    CHECK(ds.label_of(2) == 1);
    CHECK_THROWS_AS(prime_dataset(15), std::domain_error);
}

TEST_CASE("range split covers [2, N] disjointly in extrapolation order") {
    Dataset ds = prime_dataset(100);
    CHECK(ds.train_ns.front() == 2);
    CHECK(ds.train_ns.back() == 79);  // [2, 80)
    CHECK(ds.test_ns.front() == 80);
    CHECK(ds.test_ns.back() == 100);
    CHECK(ds.train_ns.size() + ds.test_ns.size() == 99);
}

TEST_CASE("shuffle split is a seeded disjoint 80/20 cover") {
    SplitSpec shuffle{SplitKind::shuffle, 0.8, 42};
    Dataset ds = prime_dataset(1000, shuffle);
    std::set<uint32_t> all(ds.train_ns.begin(), ds.train_ns.end());
    all.insert(ds.test_ns.begin(), ds.test_ns.end());
    CHECK(all.size() == 999);
    CHECK(*all.begin() == 2);
    CHECK(*all.rbegin() == 1000);
    CHECK(ds.train_ns.size() == 799);  // floor(0.8 * 999)

    Dataset same = prime_dataset(1000, shuffle);
    CHECK(same.train_ns == ds.train_ns);
    SplitSpec other{SplitKind::shuffle, 0.8, 43};
    Dataset different = prime_dataset(1000, other);
    CHECK(different.train_ns != ds.train_ns);
}

TEST_CASE("ek_sign labels use the strict ln ln N threshold") {
    Dataset ds = ek_dataset(100000);  // ln ln 10^5 = 2.4446 -> label = [omega >= 3]
    PrimeSet base = sieve_primes(400);
    OmegaSegment seg = sieve_omega_segment(2, 100001, base);
    for (uint64_t n : {30ull, 210ull, 64ull, 97ull, 99990ull})
        CHECK(ds.label_of(n) == (seg.omega[n - 2] > std::log(std::log(1e5)) ? 1 : 0));
    CHECK(ds.label_of(30) == 1);   // omega = 3
    CHECK(ds.label_of(64) == 0);   // omega = 1
    CHECK(ds.label_of(210) == 1);  // omega = 4
}

TEST_CASE("train_logistic epochs=0 keeps zero initialization") {
    Dataset ds = prime_dataset(100);
    TrainConfig cfg;
    cfg.epochs = 0;
    TrainResult r = train_logistic(ds, cfg);
    CHECK(r.model.bias == 0.0);
    for (double w : r.model.weights) CHECK(w == 0.0);
    CHECK(r.epoch_loss_bits.empty());
}

TEST_CASE("training loss strictly decreases on a separable toy task") {
    Dataset ds = toy_dataset(0);
    TrainConfig cfg;
    cfg.lr = 0.1;
    cfg.epochs = 100;
    cfg.batch = 0;  // full batch
    cfg.l2 = 0;
    TrainResult r = train_logistic(ds, cfg);
    REQUIRE(r.epoch_loss_bits.size() == 100);
    for (size_t e = 1; e < r.epoch_loss_bits.size(); ++e)
        REQUIRE(r.epoch_loss_bits[e] < r.epoch_loss_bits[e - 1]);
}

TEST_CASE("all-positive labels push the mean prediction toward 1") {
    Dataset ds = prime_dataset(64);
    std::fill(ds.labels.begin(), ds.labels.end(), 1);
    TrainConfig cfg;
    cfg.lr = 0.5;
    cfg.epochs = 500;
    cfg.batch = 0;
    cfg.l2 = 0;
    TrainResult r = train_logistic(ds, cfg);
    Metrics m = evaluate(r.model, ds, Subset::train);
    CHECK(m.mean_predicted_rate >= 0.9);
}

TEST_CASE("train_logistic flags a diverged objective") {
    Dataset ds = toy_dataset(0);
    TrainConfig cfg;
    cfg.lr = 1.0;
    cfg.epochs = 3;
    cfg.l2 = 1e308;
    CHECK_THROWS_AS(train_logistic(ds, cfg), std::runtime_error);
    cfg.lr = 0;
    CHECK_THROWS_AS(train_logistic(ds, cfg), std::invalid_argument);
}

TEST_CASE("evaluate on a perfect and a constant predictor") {
    Dataset ds = toy_dataset(2);
    LinearModel perfect;
    perfect.weights.assign(ds.feature_count(), 0.0);
    perfect.weights[2] = 50.0;
    perfect.bias = -25.0;
    Metrics m = evaluate(perfect, ds, Subset::train);
    CHECK(m.accuracy == 1.0);
    CHECK(m.balanced_accuracy == 1.0);
    CHECK(m.mcc == doctest::Approx(1.0).epsilon(1e-12));

    LinearModel zeros;
    zeros.weights.assign(ds.feature_count(), 0.0);
    Metrics z = evaluate(zeros, ds, Subset::train);
    CHECK(z.log_loss_bits == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(z.mean_predicted_rate == doctest::Approx(0.5).epsilon(1e-12));

    LinearModel narrow;
    narrow.weights.assign(ds.feature_count() + 1, 0.0);
    CHECK_THROWS_AS(evaluate(narrow, ds, Subset::train), std::invalid_argument);
}

TEST_CASE("baseline metrics reflect class shares") {
    Dataset ds = prime_dataset(64);
    // 90% negatives on the train rows
    size_t train_rows = ds.train_ns.size();
    for (size_t i = 0; i < train_rows; ++i)
        ds.labels[ds.train_ns[i] - 2] = (i % 10 == 0) ? 1 : 0;
    Metrics b = baseline_metrics(ds, Subset::train);
    double rate = std::ceil(train_rows / 10.0) / train_rows;
    CHECK(b.accuracy == doctest::Approx(1.0 - rate).epsilon(1e-12));
    CHECK(b.baseline_accuracy == b.accuracy);
    CHECK(b.mcc == 0.0);

    // balanced labels -> baseline accuracy 0.5
    for (size_t i = 0; i < train_rows; ++i) ds.labels[ds.train_ns[i] - 2] = i % 2;
    Metrics half = baseline_metrics(ds, Subset::train);
    CHECK(half.accuracy == doctest::Approx(0.5).epsilon(0.02));
    CHECK(half.log_loss_bits == doctest::Approx(1.0).epsilon(0.01));
}

TEST_CASE("analytic bias gradient at zero weights is 0.5 - mean(y)") {
    Dataset ds = toy_dataset(1);
    LinearModel zeros;
    zeros.weights.assign(ds.feature_count(), 0.0);
    size_t rows_n = std::min<size_t>(64, ds.train_ns.size());
    std::span<const uint32_t> rows(ds.train_ns.data(), rows_n);
    double mean_y = 0;
    for (uint32_t n : rows) mean_y += ds.label_of(n);
    mean_y /= static_cast<double>(rows_n);

    std::vector<double> grad(ds.feature_count() + 1);
    double loss = 0;
    loss_and_gradient(ds, rows, zeros, 0.0, &loss, grad);
    CHECK(grad.back() == doctest::Approx(0.5 - mean_y).epsilon(1e-12));
}

TEST_CASE("gradient_check stays under 1e-4 across seeds and with l2") {
    Dataset ds = prime_dataset(2000);
    for (uint64_t seed = 1; seed <= 10; ++seed) {
        LinearModel model;
        model.weights.resize(ds.feature_count());
        for (size_t j = 0; j < model.weights.size(); ++j) {
            uint64_t h = splitmix64(seed * 1000 + j);
            model.weights[j] = (static_cast<double>(h % 2000) - 1000.0) / 1000.0;
        }
        model.bias = (static_cast<double>(splitmix64(seed) % 2000) - 1000.0) / 1000.0;
        model.config.l2 = (seed % 2) ? 0.0 : 0.01;
        CHECK(gradient_check(ds, model, 1e-5) < 1e-4);
    }
    LinearModel model;
    model.weights.assign(prime_dataset(100).feature_count(), 0.0);
    CHECK_THROWS_AS(gradient_check(prime_dataset(100), model, 1e-2), std::invalid_argument);
}

TEST_CASE("training is deterministic") {
    Dataset ds = prime_dataset(10000);
    TrainConfig cfg;
    cfg.epochs = 10;
    TrainResult a = train_logistic(ds, cfg);
    TrainResult b = train_logistic(ds, cfg);
    CHECK(a.model.weights == b.model.weights);
    CHECK(a.model.bias == b.model.bias);
    CHECK(a.epoch_loss_bits == b.epoch_loss_bits);
}

TEST_CASE("prime probe at 10^4 calibrates to the base rate") {
    Dataset ds = prime_dataset(10000);
    TrainConfig cfg;  // defaults
    TrainResult r = train_logistic(ds, cfg);
    Metrics train = evaluate(r.model, ds, Subset::train);
    double rate = 0;
    for (uint32_t n : ds.train_ns) rate += ds.label_of(n);
    rate /= static_cast<double>(ds.train_ns.size());
    CHECK(std::abs(train.mean_predicted_rate - rate) <= 0.01);
}

TEST_CASE("modular feature pack adds real signal on both tasks") {
    const uint64_t n_limit = 100000;
    PrimeSet ps(n_limit);
    PipelineOptions opt;
    opt.keep_omegas = true;
    OmegaScan scan = scan_omega(n_limit, opt);

    auto test_llb = [&](Task task, bool mods) {
        FeatureSpec f;
        f.modular_pack = mods;
        Dataset ds = make_dataset(task, n_limit, {}, ps, scan.omega, f);
        auto r = train_logistic(ds, {});
        return evaluate(r.model, ds, Subset::test).log_loss_bits;
    };
    // divisibility by 3 and 5 is exactly what the one-hot pack encodes, so it
    // must cut the test log loss on both tasks
    CHECK(test_llb(Task::prime, true) < test_llb(Task::prime, false) - 0.05);
    CHECK(test_llb(Task::ek_sign, true) < test_llb(Task::ek_sign, false) - 0.05);
}

TEST_CASE("feature ablation drops the parity bit") {
    FeatureSpec drop;
    drop.use_bit0 = false;
    Dataset ds = prime_dataset(100, {}, drop);
    CHECK(ds.feature_count() == 6);
    // feature 0 is now bit 1 of n
    CHECK(ds.feature(2, 0) == 1.0);
    CHECK(ds.feature(5, 0) == 0.0);

    FeatureSpec mods;
    mods.modular_pack = true;
    Dataset with_mods = prime_dataset(100, {}, mods);
    CHECK(with_mods.feature_count() == 7 + 8);
    CHECK(with_mods.feature(7, 7 + 1) == 1.0);  // 7 mod 3 == 1
    CHECK(with_mods.feature(7, 7 + 3 + 2) == 1.0);  // 7 mod 5 == 2
}
