// covertlab: command-line front end for stream generation, covert insertion
// and extraction, detection, and the experiment sweeps. All behaviour is
// driven by a key=value config file; --seed and --out override the config.

#include <CLI11.hpp>

#include <cstdio>
#include <iostream>

#include "covert/config.hpp"
#include "covert/experiments.hpp"
#include "covert/extraction.hpp"
#include "covert/generate.hpp"
#include "covert/insertion.hpp"
#include "covert/stream_io.hpp"

namespace {

// Exit codes: 0 success, 1 usage, 2 invalid config or input, 3 violated
// analytic bound, 4 I/O failure.
constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitBound = 3;
constexpr int kExitIo = 4;

struct BoundViolation : std::logic_error {
    using std::logic_error::logic_error;
};

struct Options {
    std::string config_path;
    std::string out_override;
    std::optional<uint64_t> seed_override;
};

covert::Config load_config(const Options& opt) {
    covert::Config config = covert::Config::parse_file(opt.config_path);
    if (opt.seed_override)
        config.set("seed", std::to_string(*opt.seed_override));
    return config;
}

std::string out_path(const Options& opt, const covert::Config& config,
                     const std::string& key) {
    if (!opt.out_override.empty()) return opt.out_override;
    return config.get(key);
}

covert::EtaMode eta_mode_from(const covert::Config& config) {
    std::string mode = config.get_or("eta_mode", "conservative");
    if (mode == "conservative") return covert::EtaMode::kConservative;
    if (mode == "literal") return covert::EtaMode::kLiteral;
    throw std::invalid_argument(
        "config: eta_mode must be literal or conservative, got '" + mode + "'");
}

covert::ExperimentSpec spec_from(const covert::Config& config) {
    covert::ExperimentSpec spec;
    covert::LoadedModel loaded = covert::load_model(config);
    spec.pmf = std::move(loaded.pmf);
    spec.model = std::move(loaded.model);
    if (config.has("epsilon")) spec.epsilons = config.get_double_list("epsilon");
    spec.lengths = config.get_u64_list("n");
    if (config.has("gamma")) spec.gammas = config.get_double_list("gamma");
    spec.trials = config.get_u64_or("trials", 1000);
    spec.alpha = config.get_double_or("alpha", 0.05);
    spec.eta_mode = eta_mode_from(config);
    spec.seed = config.get_u64_or("seed", 1);
    return spec;
}

int cmd_generate(const Options& opt) {
    covert::Config config = load_config(opt);
    covert::LoadedModel loaded = covert::load_model(config);
    uint64_t n = config.get_u64("n");
    uint64_t seed = config.get_u64_or("seed", 1);
    covert::PacketStream stream =
        loaded.pmf ? covert::generate_iid(*loaded.pmf, n, seed)
                   : covert::generate_dependent(*loaded.model, n, seed);
    covert::write_stream_file(out_path(opt, config, "io.stream"), stream);
    if (loaded.pmf)
        std::printf("generated n=%llu mu=%.6g sigma2=%.6g\n",
                    static_cast<unsigned long long>(n), loaded.pmf->mean(),
                    loaded.pmf->variance());
    else
        std::printf("generated n=%llu (dependent model, order %zu)\n",
                    static_cast<unsigned long long>(n),
                    loaded.model->order());
    return kExitOk;
}

int cmd_insert(const Options& opt) {
    covert::Config config = load_config(opt);
    covert::LoadedModel loaded = covert::load_model(config);
    covert::PacketStream stream =
        covert::read_stream_file(config.get("io.stream"));
    covert::BitString message =
        covert::read_message_file(config.get("io.message"));
    double epsilon = config.get_double("epsilon");
    uint64_t seed = config.get_u64_or("seed", 1);
    uint64_t n = stream.length();
    std::string scheme = config.get_or("scheme", "unit");

    covert::CovertnessBudget budget =
        loaded.pmf
            ? covert::derive_budget(*loaded.pmf, n, epsilon)
            : covert::derive_budget(*loaded.model, n, epsilon,
                                    eta_mode_from(config));
    covert::CovertKey key = covert::generate_key(n, budget.p, seed);

    covert::InsertionOutcome outcome;
    if (scheme == "unit")
        outcome = covert::alice_insert_unit(stream, key, *loaded.pmf, message);
    else if (scheme == "general")
        outcome =
            covert::alice_insert_general(stream, key, *loaded.pmf, message);
    else if (scheme == "dependent")
        outcome = covert::alice_insert_dependent(stream, key, *loaded.model,
                                                 message);
    else
        throw std::invalid_argument(
            "config: scheme must be unit, general, or dependent, got '" +
            scheme + "'");

    // The covertness contract this run promises: n D(f_mod || f) <= 2 eps^2.
    if (loaded.pmf) {
        double total_kl =
            n * covert::kl_divergence(
                    covert::insertion_modified_pmf(*loaded.pmf, budget.p),
                    *loaded.pmf);
        if (total_kl > 2.0 * epsilon * epsilon)
            throw BoundViolation("KL covertness bound violated: n*D = " +
                                 covert::Table::format_double(total_kl));
    }

    covert::write_stream_file(out_path(opt, config, "io.out_stream"),
                              outcome.stream);
    covert::write_key_file(config.get("io.key"), key);
    std::printf("inserted n_c=%llu consumed=%llu selected=%zu p=%.6g\n",
                static_cast<unsigned long long>(outcome.inserted_bits),
                static_cast<unsigned long long>(outcome.message_consumed),
                key.selected.size(), budget.p);
    return kExitOk;
}

int cmd_extract(const Options& opt) {
    covert::Config config = load_config(opt);
    covert::LoadedModel loaded = covert::load_model(config);
    covert::PacketStream stream =
        covert::read_stream_file(config.get("io.stream"));
    covert::CovertKey key = covert::read_key_file(config.get("io.key"));
    if (key.n != stream.length())
        throw std::invalid_argument(
            "key was generated for n=" + std::to_string(key.n) +
            " but the stream has " + std::to_string(stream.length()) +
            " packets");
    covert::ExtractionResult result =
        loaded.pmf ? covert::bob_extract(stream, key, *loaded.pmf)
                   : covert::bob_extract(stream, key, *loaded.model);
    covert::write_message_file(out_path(opt, config, "io.message_out"),
                               result.bits);
    if (config.has("io.restored"))
        covert::write_stream_file(config.get("io.restored"), result.restored);
    std::printf("extracted bits=%zu\n", result.bits.size());
    return kExitOk;
}

int cmd_detect(const Options& opt) {
    covert::Config config = load_config(opt);
    covert::LoadedModel loaded = covert::load_model(config);
    if (!loaded.pmf)
        throw std::invalid_argument("detect: requires an iid model");
    covert::PacketStream stream =
        covert::read_stream_file(config.get("io.stream"));
    std::vector<uint32_t> sizes = covert::sizes_of(stream);
    std::string detector = config.get_or("detector", "mean");
    covert::DetectorVerdict verdict;
    if (detector == "mean") {
        verdict = covert::mean_threshold_detector(
            sizes, loaded.pmf->mean(), loaded.pmf->variance(),
            config.get_double_or("alpha", 0.05));
    } else if (detector == "lrt") {
        covert::CovertnessBudget budget = covert::derive_budget(
            *loaded.pmf, sizes.size(), config.get_double("epsilon"));
        verdict = covert::likelihood_ratio_detector(
            sizes, *loaded.pmf,
            covert::insertion_modified_pmf(*loaded.pmf, budget.p));
    } else {
        throw std::invalid_argument("config: detector must be mean or lrt");
    }
    std::printf("decision=%s statistic=%.9g threshold=%.9g\n",
                verdict.decision == covert::Hypothesis::kH1 ? "H1" : "H0",
                verdict.statistic, verdict.threshold);
    return kExitOk;
}

int run_sweep(const Options& opt,
              covert::Table (*sweep)(const covert::ExperimentSpec&)) {
    covert::Config config = load_config(opt);
    covert::Table table = sweep(spec_from(config));
    table.write_csv_file(out_path(opt, config, "io.csv"));
    table.write_csv(std::cout);
    return kExitOk;
}

int cmd_flag_report(const Options& opt) {
    covert::Config config = load_config(opt);
    covert::LoadedModel loaded = covert::load_model(config);
    if (!loaded.pmf)
        throw std::invalid_argument("flag-report: requires an iid model");
    covert::Table table = covert::flag_covertness_report(
        *loaded.pmf, config.get_double("epsilon"),
        config.get_u64_list("n"));
    table.write_csv_file(out_path(opt, config, "io.csv"));
    table.write_csv(std::cout);
    for (size_t i = 0; i < table.rows().size(); ++i) {
        if (table.cell(i, "scalar_ok") != "1")
            throw BoundViolation("flag-bit scalar inequality failed");
        if (table.cell_as_double(i, "total_kl") >
            table.cell_as_double(i, "budget"))
            throw BoundViolation("joint (size, flag) KL exceeds its budget");
    }
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"covertlab: covert bit insertion laboratory"};
    app.require_subcommand(1);

    Options opt;
    app.add_option("--config", opt.config_path, "config file path")
        ->required();
    app.add_option("--seed", opt.seed_override, "override the config seed");
    app.add_option("--out", opt.out_override, "override the output path");

    auto* generate = app.add_subcommand("generate", "generate a CVL1 stream");
    auto* insert = app.add_subcommand("insert", "run Alice on a stream");
    auto* extract = app.add_subcommand("extract", "run Bob on a stream");
    auto* detect = app.add_subcommand("detect", "run a detector on a stream");
    auto* sw_cov = app.add_subcommand(
        "sweep-covertness",
        "empirical P_e vs the analytic floor; CSV columns: detector,n,"
        "epsilon,p,trials,p_fa,p_md,p_e,ci,analytic_floor");
    auto* sw_sqrt = app.add_subcommand(
        "sweep-sqrtlaw",
        "mean-detector P_e with forced n^gamma insertion; CSV columns: "
        "detector,n,gamma,target_bits,p,trials,p_fa,p_md,p_e,ci");
    auto* sw_thr = app.add_subcommand(
        "sweep-throughput",
        "n_c distribution vs L*m*p*n; CSV columns: epsilon,n,p,trials,"
        "mean_nc,expected_nc,threshold,frac_above_threshold,se_mean");
    auto* sw_dep = app.add_subcommand(
        "sweep-dependent",
        "dependent-model throughput and per-row KL; CSV columns: epsilon,n,"
        "eta,p_prime,c_n,bound_bits,mean_nc,se_mean,max_row_kl,"
        "row_kl_budget,kl_ok");
    auto* flag_rep = app.add_subcommand(
        "flag-report",
        "analytic joint (size, flag) KL report; CSV columns: epsilon,n,p,"
        "size_kl,flag_kl,total_kl,budget,scalar_ok");

    // Let global options (--config/--seed/--out) appear after the subcommand.
    for (CLI::App* sub : app.get_subcommands(nullptr)) sub->fallthrough();

    CLI11_PARSE(app, argc, argv);

    try {
        if (generate->parsed()) return cmd_generate(opt);
        if (insert->parsed()) return cmd_insert(opt);
        if (extract->parsed()) return cmd_extract(opt);
        if (detect->parsed()) return cmd_detect(opt);
        if (sw_cov->parsed()) return run_sweep(opt, covert::covertness_sweep);
        if (sw_sqrt->parsed()) return run_sweep(opt, covert::sqrt_law_sweep);
        if (sw_thr->parsed())
            return run_sweep(opt, covert::throughput_experiment);
        if (sw_dep->parsed())
            return run_sweep(opt, covert::dependent_experiment);
        if (flag_rep->parsed()) return cmd_flag_report(opt);
    } catch (const BoundViolation& e) {
        std::cerr << "bound violation: " << e.what() << "\n";
        return kExitBound;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const std::out_of_range& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitIo;
    }
    return kExitOk;
}
