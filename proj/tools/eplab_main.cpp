// eplab: desk-scale experiments in probabilistic number theory and
// algorithmic information: omega(n) statistics from a segmented sieve,
// Erdos-Kac normal approximation, max-entropy reference laws, exact toy
// Kolmogorov complexity / universal mass, and logistic probes of prime
// learnability.
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "eplab/learn.hpp"
#include "eplab/levin.hpp"
#include "eplab/maxent.hpp"
#include "eplab/omega_stats.hpp"
#include "eplab/pipeline.hpp"
#include "eplab/report.hpp"
#include "eplab/sieve.hpp"

namespace fs = std::filesystem;
using namespace eplab;

namespace {

struct Options {
    uint64_t limit = 1000000;
    uint64_t segment_size = kDefaultSegmentWidth;
    unsigned workers = 1;
    uint64_t seed = 1;
    std::string out = ".";
    std::string format = "both";
    unsigned bins = 41;
    std::string machine = "u1";
    unsigned max_len = 14;
    std::string target;
    bool target_given = false;
    std::string task = "prime";
    std::string split = "range";
    uint32_t epochs = 60;
    double lr = 1.0;
    double l2 = 1e-6;
    bool ablate_bit0 = false;
};

void add_common(CLI::App* cmd, Options& o) {
    cmd->add_option("--limit", o.limit, "upper bound N of the integer range");
    cmd->add_option("--segment-size", o.segment_size, "sieve segment width");
    cmd->add_option("--workers", o.workers, "worker threads for segment sieving");
    cmd->add_option("--seed", o.seed, "seed for randomized splits");
    cmd->add_option("--out", o.out, "output directory");
    cmd->add_option("--format", o.format, "report format: csv|json|both")
        ->check(CLI::IsMember({"csv", "json", "both"}));
}

fs::path ensure_outdir(const std::string& out) {
    fs::path dir(out);
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec || !fs::is_directory(dir))
        throw std::runtime_error("output directory is not writable: " + out);
    return dir;
}

std::string cache_name(uint64_t limit) {
    return "omega_2_" + std::to_string(limit + 1) + ".seg";
}

PipelineOptions pipeline_options(const Options& o, const fs::path& dir, bool write_cache,
                                 bool keep_omegas) {
    PipelineOptions p;
    p.segment_size = o.segment_size;
    p.workers = o.workers;
    p.cache_path = (dir / cache_name(o.limit)).string();
    p.write_cache = write_cache;
    p.keep_omegas = keep_omegas;
    return p;
}

void common_config(JsonWriter& j, const std::string& subcommand, const Options& o) {
    j.key("subcommand").value(subcommand);
    j.key("limit").value(o.limit);
    j.key("segment_size").value(o.segment_size);
    j.key("workers").value(uint64_t(o.workers));
    j.key("seed").value(o.seed);
    j.key("format").value(o.format);
}

levin::MachineId parse_machine(const std::string& name) {
    if (name == "u0") return levin::MachineId::U0;
    if (name == "u1") return levin::MachineId::U1;
    if (name == "u2") return levin::MachineId::U2;
    throw CLI::ValidationError("--machine", "expected u0|u1|u2");
}

// ---- ek ---------------------------------------------------------------------

std::string ek_csv(const std::vector<EKReport>& reports) {
    std::string csv = "n_max,count,mean,loglogN,mertens,mean_dev,variance,var_dev,ks,cheb1,cheb2,cheb3\n";
    for (const auto& r : reports) {
        csv += csv_row({std::to_string(r.n_max), std::to_string(r.count), fmt9(r.mean),
                        fmt9(r.loglog_n), fmt9(r.mertens), fmt9(r.mean_dev), fmt9(r.variance),
                        fmt9(r.var_dev), fmt9(r.ks), fmt9(r.chebyshev[0]), fmt9(r.chebyshev[1]),
                        fmt9(r.chebyshev[2])});
    }
    return csv;
}

std::string ek_json(const std::vector<EKReport>& reports, const Options& o) {
    JsonWriter j;
    j.begin_object();
    j.key("config").begin_object();
    common_config(j, "ek", o);
    j.key("bins").value(uint64_t(o.bins));
    j.end_object();
    j.key("checkpoints").begin_array();
    for (const auto& r : reports) {
        j.begin_object();
        j.key("n_max").value(r.n_max);
        j.key("count").value(r.count);
        j.key("mean").value(r.mean);
        j.key("loglogN").value(r.loglog_n);
        j.key("mertens").value(r.mertens);
        j.key("mean_dev").value(r.mean_dev);
        j.key("variance").value(r.variance);
        j.key("var_dev").value(r.var_dev);
        j.key("ks").value(r.ks);
        j.key("cheb1").value(r.chebyshev[0]);
        j.key("cheb2").value(r.chebyshev[1]);
        j.key("cheb3").value(r.chebyshev[2]);
        j.key("histogram").begin_array();
        for (const auto& h : r.histogram) {
            j.begin_object();
            j.key("t").value(h.t);
            j.key("emp_cdf").value(h.emp_cdf);
            j.key("normal_cdf").value(h.normal_cdf);
            j.end_object();
        }
        j.end_array();
        j.end_object();
    }
    j.end_array();
    j.end_object();
    return j.str();
}

int run_ek(const Options& o) {
    fs::path dir = ensure_outdir(o.out);
    auto cps = default_checkpoints(o.limit);
    OmegaScan scan = scan_omega(o.limit, pipeline_options(o, dir, false, false), cps);

    std::vector<EKReport> reports;
    for (const auto& ledger : scan.checkpoints) reports.push_back(ek_report(ledger, o.bins));

    std::string base = "ek_" + std::to_string(o.limit);
    if (o.format != "json") write_text_file((dir / (base + ".csv")).string(), ek_csv(reports));
    if (o.format != "csv") write_text_file((dir / (base + ".json")).string(), ek_json(reports, o));
    const EKReport& last = reports.back();
    std::cout << "ek: N=" << last.n_max << " mean=" << fmt9(last.mean)
              << " variance=" << fmt9(last.variance) << " ks=" << fmt9(last.ks) << "\n";
    return 0;
}

// ---- maxent -----------------------------------------------------------------

int run_maxent(const Options& o) {
    fs::path dir = ensure_outdir(o.out);
    OmegaScan scan = scan_omega(o.limit, pipeline_options(o, dir, false, false));
    PrimeSet ps(o.limit);

    DensityEntropyRecord rec = prime_density_entropy_report(o.limit, ps);
    DiscretePMF empirical = empirical_omega_pmf(scan.ledger);
    double lambda = std::log(std::log(static_cast<double>(o.limit))) + kMertensConstant;
    DiscretePMF geom = maxent_geometric(lambda);
    DiscretePMF pois = poisson_pmf(lambda, static_cast<int>(std::ceil(lambda)) + 40);
    double tv_geom = total_variation(empirical, geom);
    double tv_pois = total_variation(empirical, pois);

    JsonWriter j;
    j.begin_object();
    j.key("config").begin_object();
    common_config(j, "maxent", o);
    j.end_object();
    j.key("N").value(rec.n);
    j.key("pi_N").value(rec.pi_n);
    j.key("density").value(rec.density);
    j.key("entropy_bits").value(rec.entropy_bits);
    j.key("total_bits").value(rec.total_bits);
    j.key("naive_list_bits").value(rec.naive_list_bits);
    j.key("tv_geometric").value(tv_geom);
    j.key("tv_poisson").value(tv_pois);
    j.key("lambda_used").value(lambda);
    j.end_object();
    write_text_file((dir / "maxent.json").string(), j.str());
    std::cout << "maxent: N=" << rec.n << " density=" << fmt9(rec.density)
              << " tv_poisson=" << fmt9(tv_pois) << "\n";
    return 0;
}

// ---- levin ------------------------------------------------------------------

int run_levin(const Options& o) {
    fs::path dir = ensure_outdir(o.out);
    levin::MachineId machine = parse_machine(o.machine);
    if (o.max_len > static_cast<unsigned>(levin::kEnumerationCutoff))
        throw std::runtime_error("--max-len beyond the 26-bit enumeration bound");

    auto mass = levin::enumerate_mass(machine, static_cast<int>(o.max_len));
    std::string csv = "output,numerator,log2_denominator,mass_float\n";
    for (const auto& [output, num] : mass.numerators) {
        levin::Dyadic d{num, mass.cutoff};
        csv += csv_row({output, std::to_string(num), std::to_string(mass.cutoff),
                        fmt9(d.to_double())});
    }
    write_text_file((dir / "levin_mass.csv").string(), csv);

    auto inv = levin::invariance_gap(12);
    std::string inv_csv = "n,max_gap\n";
    for (int n = 0; n <= inv.n_max; ++n)
        inv_csv += csv_row({std::to_string(n), std::to_string(inv.gap_by_length[n])});
    write_text_file((dir / "invariance.csv").string(), inv_csv);

    std::cout << "levin: machine=" << o.machine << " cutoff=" << o.max_len
              << " outputs=" << mass.numerators.size()
              << " total_mass=" << levin::Dyadic{mass.total_numerator(), mass.cutoff}.to_string()
              << " c_measured(12)=" << inv.c_measured << "\n";

    if (o.target_given) {
        for (char c : o.target)
            if (c != '0' && c != '1') throw std::runtime_error("--target must be a '0'/'1' string");
        if (machine == levin::MachineId::U0) {
            std::cout << "U0 divergence partial sums for target \"" << o.target << "\":\n";
            for (unsigned L = 2; L <= o.max_len; ++L) {
                auto part = levin::divergence_partial_sum(o.target, static_cast<int>(L));
                std::cout << "  cutoff " << L << ": " << part.value.to_string()
                          << (part.any_program ? "" : " (no program yet)") << "\n";
            }
        } else {
            int k = levin::toy_complexity(machine, o.target);
            std::cout << "K_" << o.machine << "(\"" << o.target << "\") = " << k << "\n";
            std::cout << "mass at cutoff " << o.max_len << ": "
                      << mass.mass_of(o.target).to_string() << "\n";
        }
    }
    return 0;
}

// ---- learn ------------------------------------------------------------------

void metrics_json(JsonWriter& j, const learn::Metrics& m) {
    j.begin_object();
    j.key("accuracy").value(m.accuracy);
    j.key("balanced_accuracy").value(m.balanced_accuracy);
    j.key("log_loss_bits").value(m.log_loss_bits);
    j.key("mcc").value(m.mcc);
    j.key("baseline_accuracy").value(m.baseline_accuracy);
    j.key("mean_predicted_rate").value(m.mean_predicted_rate);
    j.end_object();
}

struct LearnRun {
    learn::Metrics train, test, baseline;
    std::vector<double> curve;
};

LearnRun learn_once(learn::Task task, const Options& o, const PrimeSet& ps,
                    std::span<const uint8_t> omega, learn::FeatureSpec features) {
    learn::SplitSpec split;
    split.kind = o.split == "range" ? learn::SplitKind::range : learn::SplitKind::shuffle;
    split.seed = o.seed;
    learn::Dataset ds = learn::make_dataset(task, o.limit, split, ps, omega, features);

    learn::TrainConfig cfg;
    cfg.lr = o.lr;
    cfg.epochs = o.epochs;
    cfg.l2 = o.l2;
    cfg.seed = o.seed;
    auto trained = learn::train_logistic(ds, cfg);

    LearnRun run;
    run.train = learn::evaluate(trained.model, ds, learn::Subset::train);
    run.test = learn::evaluate(trained.model, ds, learn::Subset::test);
    run.baseline = learn::baseline_metrics(ds, learn::Subset::test);
    run.curve = std::move(trained.epoch_loss_bits);
    return run;
}

int run_learn(const Options& o) {
    fs::path dir = ensure_outdir(o.out);
    learn::Task task = o.task == "prime" ? learn::Task::prime : learn::Task::ek_sign;

    PrimeSet ps(o.limit);
    std::vector<uint8_t> omega;
    if (task == learn::Task::ek_sign)
        omega = scan_omega(o.limit, pipeline_options(o, dir, false, true)).omega;

    LearnRun main_run = learn_once(task, o, ps, omega, {});
    std::vector<std::pair<std::string, LearnRun>> ablations;
    if (o.ablate_bit0) {
        learn::FeatureSpec drop;
        drop.use_bit0 = false;
        ablations.emplace_back("drop_bit0", learn_once(task, o, ps, omega, drop));
    }

    JsonWriter j;
    j.begin_object();
    j.key("config").begin_object();
    common_config(j, "learn", o);
    j.key("task").value(o.task);
    j.key("split").value(o.split);
    j.key("epochs").value(uint64_t(o.epochs));
    j.key("lr").value(o.lr);
    j.key("l2").value(o.l2);
    j.key("batch").value(uint64_t(learn::TrainConfig{}.batch));
    j.key("ablate_bit0").value(o.ablate_bit0);
    j.end_object();
    j.key("task").value(o.task);
    j.key("N").value(o.limit);
    j.key("split").value(o.split);
    j.key("seed").value(o.seed);
    j.key("train");
    metrics_json(j, main_run.train);
    j.key("test");
    metrics_json(j, main_run.test);
    j.key("baseline");
    metrics_json(j, main_run.baseline);
    j.key("ablations").begin_array();
    for (const auto& [name, run] : ablations) {
        j.begin_object();
        j.key("name").value(name);
        j.key("train");
        metrics_json(j, run.train);
        j.key("test");
        metrics_json(j, run.test);
        j.key("baseline");
        metrics_json(j, run.baseline);
        j.end_object();
    }
    j.end_array();
    j.end_object();

    std::string base = "learn_" + o.task + "_" + std::to_string(o.limit);
    write_text_file((dir / (base + ".json")).string(), j.str());

    std::string curve = "epoch,train_loss_bits\n";
    for (size_t e = 0; e < main_run.curve.size(); ++e)
        curve += csv_row({std::to_string(e + 1), fmt9(main_run.curve[e])});
    write_text_file((dir / (base + "_curve.csv")).string(), curve);

    std::cout << "learn: task=" << o.task << " N=" << o.limit
              << " test_acc=" << fmt9(main_run.test.accuracy)
              << " baseline=" << fmt9(main_run.baseline.accuracy)
              << " test_log_loss_bits=" << fmt9(main_run.test.log_loss_bits) << "\n";
    return 0;
}

// ---- sieve ------------------------------------------------------------------

int run_sieve(const Options& o) {
    fs::path dir = ensure_outdir(o.out);
    OmegaScan scan = scan_omega(o.limit, pipeline_options(o, dir, true, true));
    PrimeSet ps(o.limit);
    uint64_t pi = ps.count_upto(o.limit);

    JsonWriter j;
    j.begin_object();
    j.key("config").begin_object();
    common_config(j, "sieve", o);
    j.end_object();
    j.key("limit").value(o.limit);
    j.key("pi").value(pi);
    j.key("density").value(static_cast<double>(pi) / static_cast<double>(o.limit));
    j.key("sum_omega").value(static_cast<uint64_t>(scan.ledger.sum_omega()));
    j.key("cache").value(cache_name(o.limit));
    j.end_object();
    write_text_file((dir / ("sieve_" + std::to_string(o.limit) + ".json")).string(), j.str());
    std::cout << "sieve: N=" << o.limit << " pi=" << pi << " cache=" << cache_name(o.limit)
              << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"desk-scale prime statistics, toy Kolmogorov complexity and learnability probes"};
    app.require_subcommand(1);

    Options o;
    CLI::App* sieve_cmd = app.add_subcommand("sieve", "sieve omega over [2, N] and cache it");
    add_common(sieve_cmd, o);
    CLI::App* ek_cmd = app.add_subcommand("ek", "Hardy-Ramanujan / Erdos-Kac statistics of omega");
    add_common(ek_cmd, o);
    ek_cmd->add_option("--bins", o.bins, "standardized histogram bins");
    CLI::App* maxent_cmd = app.add_subcommand("maxent", "max-entropy reference laws and entropy budget");
    add_common(maxent_cmd, o);
    CLI::App* levin_cmd = app.add_subcommand("levin", "toy complexity, universal mass, invariance");
    add_common(levin_cmd, o);
    levin_cmd->add_option("--machine", o.machine, "u0|u1|u2")
        ->check(CLI::IsMember({"u0", "u1", "u2"}));
    levin_cmd->add_option("--max-len", o.max_len, "program length cutoff (<= 26)")
        ->check(CLI::Range(1u, 26u));
    levin_cmd->add_option("--target", o.target, "report K and mass for this '0'/'1' string");
    CLI::App* learn_cmd = app.add_subcommand("learn", "logistic probes for prime / ek_sign tasks");
    add_common(learn_cmd, o);
    learn_cmd->add_option("--task", o.task, "prime|ek")->check(CLI::IsMember({"prime", "ek"}));
    learn_cmd->add_option("--split", o.split, "range|shuffle")
        ->check(CLI::IsMember({"range", "shuffle"}));
    learn_cmd->add_option("--epochs", o.epochs, "training epochs");
    learn_cmd->add_option("--lr", o.lr, "learning rate");
    learn_cmd->add_option("--l2", o.l2, "l2 regularization strength");
    learn_cmd->add_flag("--ablate-bit0", o.ablate_bit0, "additionally train without the parity bit");
    CLI::App* all_cmd = app.add_subcommand("all", "run every experiment with a shared sieve cache");
    add_common(all_cmd, o);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (o.task == "ek") o.task = "ek_sign";
        o.target_given = levin_cmd->count("--target") > 0;
        if (sieve_cmd->parsed()) return run_sieve(o);
        if (ek_cmd->parsed()) return run_ek(o);
        if (maxent_cmd->parsed()) return run_maxent(o);
        if (levin_cmd->parsed()) return run_levin(o);
        if (learn_cmd->parsed()) return run_learn(o);
        if (all_cmd->parsed()) {
            run_sieve(o);
            run_ek(o);
            run_maxent(o);
            run_levin(o);
            o.task = "prime";
            run_learn(o);
            o.task = "ek_sign";
            run_learn(o);
            return 0;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
