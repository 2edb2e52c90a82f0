#include "eplab/learn.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <functional>
#include <numbers>
#include <numeric>
#include <stdexcept>

namespace eplab::learn {

namespace {

constexpr uint64_t kGolden = 0x9E3779B97F4A7C15ull;
constexpr double kProbClamp = 1e-15;

double sigmoid(double z) {
    if (z >= 0) return 1.0 / (1.0 + std::exp(-z));
    double e = std::exp(z);
    return e / (1.0 + e);
}

// ln(1 + e^z) without overflow
double softplus(double z) { return std::max(z, 0.0) + std::log1p(std::exp(-std::abs(z))); }

}  // namespace

std::string task_name(Task t) { return t == Task::prime ? "prime" : "ek_sign"; }
std::string split_name(SplitKind k) { return k == SplitKind::range ? "range" : "shuffle"; }

uint64_t splitmix64(uint64_t x) {
    x += kGolden;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
    return x ^ (x >> 31);
}

std::vector<uint8_t> featurize(uint64_t n, int width) {
    if (width < 1 || (width < 64 && n >= (uint64_t(1) << width)))
        throw std::out_of_range("featurize: n does not fit in width bits");
    std::vector<uint8_t> bits(width);
    for (int j = 0; j < width; ++j) bits[j] = (n >> j) & 1;
    return bits;
}

int Dataset::feature_count() const {
    int d = width - (features.use_bit0 ? 0 : 1);
    if (features.modular_pack) d += 8;
    return d;
}

double Dataset::feature(uint32_t n, int j) const {
    int bit0 = features.use_bit0 ? 0 : 1;
    int raw = width - bit0;
    if (j < raw) return (n >> (j + bit0)) & 1;
    j -= raw;
    if (j < 3) return n % 3 == static_cast<uint32_t>(j) ? 1.0 : 0.0;
    j -= 3;
    return n % 5 == static_cast<uint32_t>(j) ? 1.0 : 0.0;
}

Dataset make_dataset(Task task, uint64_t n_limit, SplitSpec split, const PrimeSet& ps,
                     std::span<const uint8_t> omega, FeatureSpec features) {
    if (n_limit < 16) throw std::domain_error("make_dataset: N must be >= 16");
    if (!(split.train_frac > 0.0 && split.train_frac < 1.0))
        throw std::invalid_argument("make_dataset: train_frac outside (0,1)");

    Dataset ds;
    ds.task = task;
    ds.n_limit = n_limit;
    ds.width = std::bit_width(n_limit);
    ds.features = features;
    ds.split = split;

    uint64_t rows = n_limit - 1;  // n in [2, N]
    ds.labels.resize(rows);
    if (task == Task::prime) {
        if (ps.limit() < n_limit) throw std::out_of_range("make_dataset: sieve limit below N");
        for (uint64_t n = 2; n <= n_limit; ++n) ds.labels[n - 2] = ps.contains(n);
    } else {
        if (omega.size() < rows)
            throw std::invalid_argument("make_dataset: omega values missing for [2, N]");
        double threshold = std::log(std::log(static_cast<double>(n_limit)));
        for (uint64_t n = 2; n <= n_limit; ++n)
            ds.labels[n - 2] = omega[n - 2] > threshold ? 1 : 0;
    }

    if (split.kind == SplitKind::range) {
        uint64_t cut = static_cast<uint64_t>(split.train_frac * static_cast<double>(n_limit));
        for (uint64_t n = 2; n <= n_limit; ++n)
            (n < cut ? ds.train_ns : ds.test_ns).push_back(static_cast<uint32_t>(n));
    } else {
        std::vector<uint32_t> order(rows);
        std::iota(order.begin(), order.end(), 2u);
        std::sort(order.begin(), order.end(), [&](uint32_t a, uint32_t b) {
            uint64_t ha = splitmix64(split.seed + a * kGolden);
            uint64_t hb = splitmix64(split.seed + b * kGolden);
            return ha != hb ? ha < hb : a < b;
        });
        uint64_t n_train = static_cast<uint64_t>(split.train_frac * static_cast<double>(rows));
        ds.train_ns.assign(order.begin(), order.begin() + n_train);
        ds.test_ns.assign(order.begin() + n_train, order.end());
        std::sort(ds.train_ns.begin(), ds.train_ns.end());
        std::sort(ds.test_ns.begin(), ds.test_ns.end());
    }
    if (ds.train_ns.empty() || ds.test_ns.empty())
        throw std::invalid_argument("make_dataset: degenerate split");
    return ds;
}

namespace {

// z = w.x + b with features read straight off the bits of n
double logit(const Dataset& ds, const LinearModel& model, uint32_t n) {
    int bit0 = ds.features.use_bit0 ? 0 : 1;
    int raw = ds.width - bit0;
    double z = model.bias;
    uint32_t b = n >> bit0;
    while (b != 0) {
        int j = std::countr_zero(b);
        if (j >= raw) break;
        z += model.weights[j];
        b &= b - 1;
    }
    if (ds.features.modular_pack) {
        z += model.weights[raw + n % 3];
        z += model.weights[raw + 3 + n % 5];
    }
    return z;
}

void scatter_gradient(const Dataset& ds, uint32_t n, double r, std::span<double> grad) {
    int bit0 = ds.features.use_bit0 ? 0 : 1;
    int raw = ds.width - bit0;
    uint32_t b = n >> bit0;
    while (b != 0) {
        int j = std::countr_zero(b);
        if (j >= raw) break;
        grad[j] += r;
        b &= b - 1;
    }
    if (ds.features.modular_pack) {
        grad[raw + n % 3] += r;
        grad[raw + 3 + n % 5] += r;
    }
    grad[grad.size() - 1] += r;  // bias
}

double data_loss(const Dataset& ds, const LinearModel& model, std::span<const uint32_t> rows) {
    double loss = 0;
    for (uint32_t n : rows) {
        double z = logit(ds, model, n);
        loss += softplus(z) - (ds.label_of(n) ? z : 0.0);
    }
    return loss / static_cast<double>(rows.size());
}

double l2_penalty(const LinearModel& model, double l2) {
    double w2 = 0;
    for (double w : model.weights) w2 += w * w;
    return 0.5 * l2 * w2;
}

}  // namespace

void loss_and_gradient(const Dataset& ds, std::span<const uint32_t> rows,
                       const LinearModel& model, double l2, double* loss_nats,
                       std::span<double> grad) {
    if (rows.empty()) throw std::invalid_argument("loss_and_gradient: empty row set");
    size_t d = static_cast<size_t>(ds.feature_count());
    if (model.weights.size() != d || grad.size() != d + 1)
        throw std::invalid_argument("loss_and_gradient: size mismatch");

    std::fill(grad.begin(), grad.end(), 0.0);
    double loss = 0;
    for (uint32_t n : rows) {
        double z = logit(ds, model, n);
        double y = ds.label_of(n);
        loss += softplus(z) - y * z;
        scatter_gradient(ds, n, sigmoid(z) - y, grad);
    }
    double inv = 1.0 / static_cast<double>(rows.size());
    loss *= inv;
    for (double& g : grad) g *= inv;
    for (size_t j = 0; j < d; ++j) grad[j] += l2 * model.weights[j];
    loss += l2_penalty(model, l2);
    if (loss_nats) *loss_nats = loss;
}

TrainResult train_logistic(const Dataset& ds, const TrainConfig& cfg) {
    if (ds.train_ns.empty()) throw std::invalid_argument("train_logistic: empty train set");
    if (!(cfg.lr > 0)) throw std::invalid_argument("train_logistic: lr must be positive");

    size_t d = static_cast<size_t>(ds.feature_count());
    TrainResult result;
    result.model.weights.assign(d, 0.0);
    result.model.bias = 0.0;
    result.model.config = cfg;
    LinearModel& model = result.model;

    const auto& rows = ds.train_ns;
    size_t m = rows.size();
    size_t batch = cfg.batch == 0 ? m : std::min<size_t>(cfg.batch, m);
    std::vector<double> grad(d + 1);

    for (uint32_t epoch = 0; epoch < cfg.epochs; ++epoch) {
        for (size_t start = 0; start < m; start += batch) {
            size_t len = std::min(batch, m - start);
            loss_and_gradient(ds, std::span(rows).subspan(start, len), model, cfg.l2, nullptr,
                              grad);
            for (size_t j = 0; j < d; ++j) model.weights[j] -= cfg.lr * grad[j];
            model.bias -= cfg.lr * grad[d];
        }
        double loss = data_loss(ds, model, rows) + l2_penalty(model, cfg.l2);
        if (!std::isfinite(loss))
            throw std::runtime_error("train_logistic: objective diverged; reduce lr");
        result.epoch_loss_bits.push_back(loss / std::numbers::ln2);
    }
    return result;
}

namespace {

struct Counts {
    uint64_t tp = 0, tn = 0, fp = 0, fn = 0;
    uint64_t total() const { return tp + tn + fp + fn; }
    uint64_t pos() const { return tp + fn; }
};

Metrics metrics_from(const Dataset& ds, std::span<const uint32_t> rows,
                     const std::function<double(uint32_t)>& prob) {
    Counts c;
    double loss_bits = 0, mean_p = 0;
    for (uint32_t n : rows) {
        double p = prob(n);
        bool y = ds.label_of(n);
        bool pred = p > 0.5;
        if (y)
            pred ? ++c.tp : ++c.fn;
        else
            pred ? ++c.fp : ++c.tn;
        double pc = std::clamp(p, kProbClamp, 1.0 - kProbClamp);
        loss_bits -= y ? std::log2(pc) : std::log2(1.0 - pc);
        mean_p += p;
    }
    double total = static_cast<double>(c.total());

    Metrics out;
    out.accuracy = static_cast<double>(c.tp + c.tn) / total;
    double recalls = 0;
    int classes = 0;
    if (c.tp + c.fn > 0) {
        recalls += static_cast<double>(c.tp) / static_cast<double>(c.tp + c.fn);
        classes++;
    }
    if (c.tn + c.fp > 0) {
        recalls += static_cast<double>(c.tn) / static_cast<double>(c.tn + c.fp);
        classes++;
    }
    out.balanced_accuracy = recalls / classes;
    out.log_loss_bits = loss_bits / total;
    double denom = std::sqrt(static_cast<double>(c.tp + c.fp)) *
                   std::sqrt(static_cast<double>(c.tp + c.fn)) *
                   std::sqrt(static_cast<double>(c.tn + c.fp)) *
                   std::sqrt(static_cast<double>(c.tn + c.fn));
    out.mcc = denom == 0 ? 0.0
                         : (static_cast<double>(c.tp) * static_cast<double>(c.tn) -
                            static_cast<double>(c.fp) * static_cast<double>(c.fn)) /
                               denom;
    double pos_rate = static_cast<double>(c.pos()) / total;
    out.baseline_accuracy = std::max(pos_rate, 1.0 - pos_rate);
    out.mean_predicted_rate = mean_p / total;
    return out;
}

double positive_rate(const Dataset& ds, std::span<const uint32_t> rows) {
    uint64_t pos = 0;
    for (uint32_t n : rows) pos += ds.label_of(n);
    return static_cast<double>(pos) / static_cast<double>(rows.size());
}

}  // namespace

Metrics evaluate(const LinearModel& model, const Dataset& ds, Subset which) {
    if (model.weights.size() != static_cast<size_t>(ds.feature_count()))
        throw std::invalid_argument("evaluate: model width does not match dataset");
    const auto& rows = ds.subset(which);
    if (rows.empty()) throw std::invalid_argument("evaluate: empty split");
    return metrics_from(ds, rows, [&](uint32_t n) { return sigmoid(logit(ds, model, n)); });
}

Metrics baseline_metrics(const Dataset& ds, Subset which) {
    const auto& rows = ds.subset(which);
    if (rows.empty() || ds.train_ns.empty())
        throw std::invalid_argument("baseline_metrics: empty split");
    double rate = positive_rate(ds, ds.train_ns);
    double p = std::clamp(rate, kProbClamp, 1.0 - kProbClamp);
    return metrics_from(ds, rows, [&](uint32_t) { return p; });
}

double gradient_check(const Dataset& ds, const LinearModel& model, double epsilon) {
    if (!(epsilon >= 1e-7 && epsilon <= 1e-3))
        throw std::invalid_argument("gradient_check: epsilon outside [1e-7, 1e-3]");
    size_t rows_n = std::min<size_t>(64, ds.train_ns.size());
    std::span<const uint32_t> rows(ds.train_ns.data(), rows_n);

    size_t d = static_cast<size_t>(ds.feature_count());
    std::vector<double> analytic(d + 1);
    double loss = 0;
    double l2 = model.config.l2;
    loss_and_gradient(ds, rows, model, l2, &loss, analytic);

    LinearModel probe = model;
    auto loss_at = [&](size_t j, double delta) {
        double* param = j < d ? &probe.weights[j] : &probe.bias;
        double saved = *param;
        *param = saved + delta;
        double out = data_loss(ds, probe, rows) + l2_penalty(probe, l2);
        *param = saved;
        return out;
    };

    double worst = 0;
    for (size_t j = 0; j <= d; ++j) {
        double numeric = (loss_at(j, epsilon) - loss_at(j, -epsilon)) / (2 * epsilon);
        double denom = std::max({std::abs(analytic[j]), std::abs(numeric), 1e-6});
        worst = std::max(worst, std::abs(analytic[j] - numeric) / denom);
    }
    return worst;
}

}  // namespace eplab::learn
