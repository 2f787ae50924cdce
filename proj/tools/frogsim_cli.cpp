#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "frogsim/aux_chain.hpp"
#include "frogsim/experiments.hpp"
#include "frogsim/frog_sync.hpp"
#include "frogsim/oracle.hpp"

using namespace frogsim;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitValidationFailed = 1;
constexpr int kExitConfigError = 2;
constexpr int kExitRuntimeError = 3;

int default_threads() {
    if (const char* env = std::getenv("FROGSIM_THREADS")) {
        int v = std::atoi(env);
        if (v >= 1) return v;
    }
    unsigned hw = std::thread::hardware_concurrency();
    return hw ? int(hw) : 1;
}

long long elapsed_ms(std::chrono::steady_clock::time_point start) {
    return std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() -
                                                                 start)
        .count();
}

ResultFormat parse_format(const std::string& name) {
    if (name == "csv") return ResultFormat::csv;
    if (name == "json") return ResultFormat::json;
    throw ConfigError("format must be csv or json");
}

SweepConfig sweep_from_json(const nlohmann::json& j) {
    static const std::vector<std::string> known = {"n_values", "alpha_values", "eta",   "trials",
                                                   "seed",     "event",        "conditional_root"};
    for (auto& [key, _] : j.items()) {
        if (std::find(known.begin(), known.end(), key) == known.end())
            throw ConfigError("sweep config: unknown key '" + key + "'");
    }
    SweepConfig cfg;
    if (!j.contains("n_values")) throw ConfigError("sweep config: missing n_values");
    cfg.n_values = j.at("n_values").get<std::vector<long long>>();
    if (!j.contains("alpha_values")) throw ConfigError("sweep config: missing alpha_values");
    cfg.alpha_values = j.at("alpha_values").get<std::vector<double>>();
    if (!j.contains("eta")) throw ConfigError("sweep config: missing eta");
    cfg.eta = EtaSpec::from_json(j.at("eta"));
    cfg.trials = j.value("trials", (long long)1000);
    cfg.seed = j.value("seed", (uint64_t)0);
    cfg.event = EventSpec::parse(j.value("event", std::string("full")));
    cfg.conditional_root = j.value("conditional_root", false);
    cfg.validate();
    return cfg;
}

int cmd_run(long long m, double p, const std::string& eta_flag, const std::string& event_flag,
            long long trials, uint64_t seed, bool conditional_root, int threads,
            const std::string& out_path, const std::string& format_name) {
    SimParams params;
    params.m = m;
    params.p = p;
    params.eta = EtaSpec::parse(eta_flag);
    params.conditional_root = conditional_root;
    params.validate();
    EventSpec event = EventSpec::parse(event_flag);
    if (trials < 1) throw ConfigError("trials must be >= 1");

    auto start = std::chrono::steady_clock::now();
    ResultRow row = estimate_event(params, event, trials, seed, threads);
    long long ms = elapsed_ms(start);

    std::cerr << "run m=" << m << " p=" << p << " eta=" << params.eta.describe()
              << " event=" << row.event << " trials=" << trials << " took " << ms << " ms\n";
    std::cout << "p_hat=" << row.p_hat << " ci=[" << row.ci_low << "," << row.ci_high << "]"
              << " successes=" << row.successes << "/" << row.trials << "\n";
    if (!out_path.empty()) write_results({&row, 1}, out_path, parse_format(format_name));
    if (!row.valid) {
        std::cerr << "error: " << row.capped_trials << " trial(s) hit the round cap\n";
        return kExitRuntimeError;
    }
    return kExitOk;
}

int cmd_sweep(const std::string& config_path, const std::string& out_path,
              const std::string& format_name, int threads) {
    std::ifstream in(config_path);
    if (!in) throw ConfigError("cannot open config file: " + config_path);
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
        throw ConfigError(std::string("malformed JSON config: ") + e.what());
    }
    SweepConfig cfg = sweep_from_json(j);
    cfg.threads = threads;

    auto start = std::chrono::steady_clock::now();
    bool any_invalid = false;
    auto rows = phase_sweep(cfg, [&](const ResultRow& row) {
        std::cerr << "point n=" << row.n << " alpha=" << row.alpha << " p_n=" << row.p_n
                  << " p_hat=" << row.p_hat << "\n";
        if (!row.valid) any_invalid = true;
    });
    long long ms = elapsed_ms(start);

    write_results(rows, out_path, parse_format(format_name));

    nlohmann::ordered_json meta;
    meta["config"] = j;
    meta["seed"] = cfg.seed;
    meta["version"] = "frogsim 0.1.0";
    meta["wall_time_ms"] = ms;
    meta["rows"] = (long long)rows.size();
    std::ofstream meta_out(out_path + ".meta.json", std::ios::binary);
    meta_out << meta.dump(2) << '\n';

    std::cerr << "sweep wrote " << rows.size() << " rows to " << out_path << " in " << ms
              << " ms\n";
    return any_invalid ? kExitRuntimeError : kExitOk;
}

int cmd_oracle_vinf(long long m, double p, const std::string& eta_flag, bool conditional_root,
                    const std::string& out_path) {
    auto dist = exact_vinf_distribution(m, p, EtaSpec::parse(eta_flag), conditional_root);
    for (long long v = 1; v <= dist.m; ++v) {
        char buf[48];
        std::snprintf(buf, sizeof(buf), "%.9g", dist.mass(v));
        std::cout << "P(V=" << v << ") = " << buf << "\n";
    }
    if (!out_path.empty()) {
        nlohmann::ordered_json j;
        j["m"] = m;
        j["p"] = p;
        nlohmann::json eta_j;
        EtaSpec::parse(eta_flag).to_json(eta_j);
        j["eta"] = eta_j;
        j["masses"] = dist.masses;
        std::ofstream out(out_path, std::ios::binary);
        out << j.dump(2) << '\n';
    }
    return kExitOk;
}

int cmd_oracle_coupon(long long n) {
    auto [mean, var] = coupon_tau_moments(n);
    std::cout << "E(tau) = " << mean << "\nVar(tau) = " << var << "\n";
    return kExitOk;
}

int cmd_oracle_extinct(const std::string& pmf_flag) {
    OffspringPmf pmf;
    std::stringstream ss(pmf_flag);
    std::string item;
    while (std::getline(ss, item, ',')) pmf.masses.push_back(std::stod(item));
    double q = branching_extinction(pmf);
    char buf[48];
    std::snprintf(buf, sizeof(buf), "%.9g", q);
    std::cout << "extinction = " << buf << "\n";
    return kExitOk;
}

int cmd_validate(bool quick, int threads, const std::string& report_path) {
    LemmaSuiteConfig cfg;
    cfg.quick = quick;
    cfg.threads = threads;
    auto checks = lemma_suite(cfg);

    // Oracle-equivalence grid: aux chain vs exact DP in total variation.
    const long long grid_m[] = {3, 5, 8};
    const double grid_p[] = {0.3, 0.6};
    const EtaSpec grid_eta[] = {EtaSpec::constant(1), EtaSpec::bernoulli(0.5)};
    const long long trials = quick ? 20000 : 100000;
    int point = 0;
    for (long long m : grid_m) {
        for (double p : grid_p) {
            for (const auto& eta : grid_eta) {
                auto exact = exact_vinf_distribution(m, p, eta);
                std::vector<long long> counts(size_t(m), 0);
                SimParams params;
                params.m = m;
                params.p = p;
                params.eta = eta;
                params.seed_master = RngStream::derive_seed(9000, uint64_t(point));
                for (long long t = 0; t < trials; ++t) {
                    params.seed_stream = uint64_t(t);
                    ++counts[size_t(simulate_aux(params).v_infty - 1)];
                }
                double tv = 0.0;
                for (long long v = 1; v <= m; ++v)
                    tv += std::abs(double(counts[size_t(v - 1)]) / double(trials) - exact.mass(v));
                tv /= 2.0;
                CheckResult c;
                c.name = "oracle_equivalence_m" + std::to_string(m) + "_p" + std::to_string(p) +
                         "_" + eta.describe();
                c.statistic = tv;
                c.threshold = 0.02;
                c.pass = tv <= 0.02;
                checks.push_back(std::move(c));
                ++point;
            }
        }
    }

    bool all_pass = true;
    nlohmann::ordered_json report = nlohmann::ordered_json::array();
    for (const auto& c : checks) {
        const char* status = !c.applicable ? "N/A " : (c.pass ? "PASS" : "FAIL");
        std::cout << status << "  " << c.name << "  stat=" << c.statistic
                  << " thr=" << c.threshold << "\n";
        if (c.applicable && !c.pass) all_pass = false;
        nlohmann::ordered_json j;
        j["name"] = c.name;
        j["statistic"] = c.statistic;
        j["threshold"] = c.threshold;
        j["pass"] = c.pass;
        j["applicable"] = c.applicable;
        report.push_back(std::move(j));
    }
    if (!report_path.empty()) {
        std::ofstream out(report_path, std::ios::binary);
        out << report.dump(2) << '\n';
    }
    if (!all_pass) {
        std::cerr << "validation failed\n";
        return kExitValidationFailed;
    }
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"frogsim: frog-model coverage laboratory on complete graphs"};
    app.require_subcommand(1);
    app.fallthrough();  // accept global options (e.g. --threads) after the subcommand
    int threads = default_threads();
    app.add_option("--threads", threads, "max worker threads (results are thread-count invariant)");

    // run
    auto* run = app.add_subcommand("run", "estimate one coverage event");
    long long run_m = 0;
    double run_p = 0.0;
    std::string run_eta = "constant:1", run_event = "full", run_out, run_format = "csv";
    long long run_trials = 1000;
    uint64_t run_seed = 0;
    bool run_cond = false;
    run->add_option("--m", run_m, "vertex count")->required();
    run->add_option("--p", run_p, "survival probability")->required();
    run->add_option("--eta", run_eta, "eta law, kind:param[,param...]");
    run->add_option("--event", run_event, "full or proportion:<eps>");
    run->add_option("--trials", run_trials, "number of trials");
    run->add_option("--seed", run_seed, "master seed");
    run->add_flag("--conditional-root", run_cond, "condition on eta_o >= 1, no extra particle");
    run->add_option("--out", run_out, "result file path");
    run->add_option("--format", run_format, "csv or json");

    // sweep
    auto* sweep = app.add_subcommand("sweep", "phase-transition sweep from a JSON config");
    std::string sweep_config, sweep_out = "sweep.csv", sweep_format = "csv";
    sweep->add_option("config", sweep_config, "JSON config path")->required();
    sweep->add_option("--out", sweep_out, "output file path");
    sweep->add_option("--format", sweep_format, "csv or json");

    // oracle
    auto* oracle = app.add_subcommand("oracle", "exact computations");
    oracle->require_subcommand(1);
    auto* vinf = oracle->add_subcommand("vinf", "exact V_infty distribution (small m)");
    long long vinf_m = 0;
    double vinf_p = 0.0;
    std::string vinf_eta = "constant:1", vinf_out;
    bool vinf_cond = false;
    vinf->add_option("--m", vinf_m, "vertex count (<= 16)")->required();
    vinf->add_option("--p", vinf_p, "survival probability")->required();
    vinf->add_option("--eta", vinf_eta, "eta law (bounded support <= 4)");
    vinf->add_flag("--conditional-root", vinf_cond, "condition on eta_o >= 1");
    vinf->add_option("--out", vinf_out, "JSON output path");
    auto* coupon = oracle->add_subcommand("coupon", "coupon collector moments");
    long long coupon_n = 0;
    coupon->add_option("--n", coupon_n, "coupon count")->required();
    auto* extinct = oracle->add_subcommand("extinct", "branching extinction probability");
    std::string extinct_pmf;
    extinct->add_option("--pmf", extinct_pmf, "offspring pmf, comma separated")->required();

    // validate
    auto* validate = app.add_subcommand("validate", "run the lemma/equivalence battery");
    bool validate_quick = false;
    std::string validate_report;
    validate->add_flag("--quick", validate_quick, "sub-minute subset");
    validate->add_option("--report", validate_report, "machine-readable report path");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);  // --help
        app.exit(e);
        return kExitConfigError;
    }

    try {
        if (run->parsed())
            return cmd_run(run_m, run_p, run_eta, run_event, run_trials, run_seed, run_cond,
                           threads, run_out, run_format);
        if (sweep->parsed()) return cmd_sweep(sweep_config, sweep_out, sweep_format, threads);
        if (oracle->parsed()) {
            if (vinf->parsed()) return cmd_oracle_vinf(vinf_m, vinf_p, vinf_eta, vinf_cond, vinf_out);
            if (coupon->parsed()) return cmd_oracle_coupon(coupon_n);
            if (extinct->parsed()) return cmd_oracle_extinct(extinct_pmf);
        }
        if (validate->parsed()) return cmd_validate(validate_quick, threads, validate_report);
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitConfigError;
    } catch (const DomainError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitConfigError;
    } catch (const SizeError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitConfigError;
    } catch (const std::exception& e) {
        std::cerr << "runtime error: " << e.what() << "\n";
        return kExitRuntimeError;
    }
    return kExitConfigError;
}
