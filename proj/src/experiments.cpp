#include "frogsim/experiments.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <future>
#include <ostream>

#include <nlohmann/json.hpp>

#include "frogsim/aux_chain.hpp"
#include "frogsim/oracle.hpp"

namespace frogsim {

void EventSpec::validate() const {
    if (kind == EventKind::proportion && !(epsilon > 0.0 && epsilon < 1.0))
        throw ConfigError("event proportion: epsilon must lie in (0,1)");
}

long long EventSpec::threshold(long long m) const {
    if (kind == EventKind::full_coverage) return m;
    return (long long)std::ceil((1.0 - epsilon) * double(m) - 1e-9);
}

std::string EventSpec::describe() const {
    if (kind == EventKind::full_coverage) return "full";
    char buf[48];
    std::snprintf(buf, sizeof(buf), "proportion:%.9g", epsilon);
    return buf;
}

EventSpec EventSpec::parse(const std::string& text) {
    EventSpec ev;
    if (text == "full" || text == "full_coverage") return ev;
    const std::string prefix = "proportion:";
    if (text.rfind(prefix, 0) == 0) {
        ev.kind = EventKind::proportion;
        try {
            ev.epsilon = std::stod(text.substr(prefix.size()));
        } catch (const std::exception&) {
            throw ConfigError("event: cannot parse epsilon in '" + text + "'");
        }
        ev.validate();
        return ev;
    }
    throw ConfigError("event: expected 'full' or 'proportion:<eps>', got '" + text + "'");
}

WilsonInterval wilson95(long long successes, long long trials) {
    if (trials < 1) throw ConfigError("wilson95: trials must be >= 1");
    if (successes < 0 || successes > trials) throw ConfigError("wilson95: successes out of range");
    constexpr double z = 1.959963984540054;
    const double n = double(trials);
    const double s = double(successes);
    const double z2 = z * z;
    const double denom = n + z2;
    const double center = (s + z2 / 2.0) / denom;
    const double half = z / denom * std::sqrt(s * (n - s) / n + z2 / 4.0);
    return {std::max(0.0, center - half), std::min(1.0, center + half)};
}

ResultRow estimate_event(const SimParams& params, const EventSpec& event, long long trials,
                         uint64_t seed, int threads) {
    params.validate();
    event.validate();
    if (trials < 1) throw ConfigError("estimate_event: trials must be >= 1");
    if (threads < 1) threads = 1;

    const long long need = event.threshold(params.m);
    auto run_block = [&](long long lo, long long hi) {
        std::pair<long long, long long> acc{0, 0};  // successes, capped
        SimParams local = params;
        local.seed_master = seed;
        for (long long t = lo; t < hi; ++t) {
            local.seed_stream = uint64_t(t);
            TrialOutcome out = simulate_aux(local);
            if (out.capped) ++acc.second;
            if (out.v_infty >= need) ++acc.first;
        }
        return acc;
    };

    long long successes = 0, capped = 0;
    if (threads == 1 || trials < 64) {
        auto [s, c] = run_block(0, trials);
        successes = s;
        capped = c;
    } else {
        std::vector<std::future<std::pair<long long, long long>>> futures;
        const long long block = (trials + threads - 1) / threads;
        for (long long lo = 0; lo < trials; lo += block) {
            long long hi = std::min(trials, lo + block);
            futures.push_back(std::async(std::launch::async, run_block, lo, hi));
        }
        for (auto& f : futures) {
            auto [s, c] = f.get();
            successes += s;
            capped += c;
        }
    }

    ResultRow row;
    row.n = params.m;
    row.alpha = std::nan("");
    row.p_n = params.p;
    row.event = event.describe();
    row.trials = trials;
    row.successes = successes;
    row.p_hat = double(successes) / double(trials);
    auto ci = wilson95(successes, trials);
    row.ci_low = ci.low;
    row.ci_high = ci.high;
    row.seed = seed;
    row.capped_trials = capped;
    row.valid = (capped == 0);
    return row;
}

void SweepConfig::validate() const {
    if (n_values.empty()) throw ConfigError("sweep: n_values must be non-empty");
    if (alpha_values.empty()) throw ConfigError("sweep: alpha_values must be non-empty");
    for (double a : alpha_values)
        if (!(a > 0.0)) throw ConfigError("sweep: alpha must be > 0");
    if (trials < 1) throw ConfigError("sweep: trials must be >= 1");
    eta.validate();
    event.validate();
    for (long long n : n_values) {
        if (event.kind == EventKind::full_coverage && n < 2)
            throw ConfigError("sweep: full coverage needs n >= 2");
        if (n < 1) throw ConfigError("sweep: n must be >= 1");
    }
}

std::vector<ResultRow> phase_sweep(const SweepConfig& config, const ProgressFn& progress) {
    config.validate();
    std::vector<ResultRow> rows;
    rows.reserve(config.n_values.size() * config.alpha_values.size());
    uint64_t point = 0;
    for (long long n : config.n_values) {
        for (double alpha : config.alpha_values) {
            const double p_n = std::max(0.0, 1.0 - alpha / std::log(double(n)));
            SimParams params;
            params.m = n;
            params.p = p_n;
            params.eta = config.eta;
            params.conditional_root = config.conditional_root;
            const uint64_t point_seed = RngStream::derive_seed(config.seed, point++);
            ResultRow row =
                estimate_event(params, config.event, config.trials, point_seed, config.threads);
            row.alpha = alpha;
            if (progress) progress(row);
            rows.push_back(std::move(row));
        }
    }
    return rows;
}

MonotonicityReport monotonicity_check(long long m, std::span<const double> p_grid,
                                      const EtaSpec& eta, long long trials, uint64_t seed,
                                      int threads) {
    for (size_t i = 1; i < p_grid.size(); ++i)
        if (!(p_grid[i] > p_grid[i - 1]))
            throw ConfigError("monotonicity_check: p grid must be strictly increasing");

    MonotonicityReport rep;
    EventSpec full;
    for (size_t i = 0; i < p_grid.size(); ++i) {
        SimParams params;
        params.m = m;
        params.p = p_grid[i];
        params.eta = eta;
        rep.rows.push_back(estimate_event(params, full, trials,
                                          RngStream::derive_seed(seed, uint64_t(i)), threads));
    }
    for (size_t i = 1; i < rep.rows.size(); ++i) {
        const auto& a = rep.rows[i - 1];
        const auto& b = rep.rows[i];
        const double slack =
            (a.ci_high - a.ci_low) / 2.0 + (b.ci_high - b.ci_low) / 2.0;
        if (a.p_hat > b.p_hat + slack) rep.pass = false;
    }
    return rep;
}

namespace {

CheckResult coupon_concentration_check(long long n, double eps, long long trials,
                                       double threshold, RngStream& rng) {
    const double lo = (1.0 - eps) * double(n) * std::log(double(n));
    const double hi = (1.0 + eps) * double(n) * std::log(double(n));
    long long inside = 0;
    for (long long t = 0; t < trials; ++t) {
        auto res = simulate_coupon(n, {}, rng);
        if (double(res.tau) >= lo && double(res.tau) <= hi) ++inside;
    }
    CheckResult c;
    c.name = "coupon_concentration";
    c.statistic = double(inside) / double(trials);
    c.threshold = threshold;
    c.pass = c.statistic >= threshold;
    return c;
}

CheckResult coupon_partial_check(long long n, double eps, long long trials, double threshold,
                                 RngStream& rng) {
    const long long target = (long long)std::ceil((1.0 - eps) * double(n));
    const double bound = 2.0 * (1.0 - eps) / eps * double(n);
    long long ok = 0;
    const long long targets[1] = {target};
    for (long long t = 0; t < trials; ++t) {
        auto res = simulate_coupon(n, targets, rng);
        if (double(res.tau_at[0]) <= bound) ++ok;
    }
    CheckResult c;
    c.name = "coupon_partial";
    c.statistic = double(ok) / double(trials);
    c.threshold = threshold;
    c.pass = c.statistic >= threshold;
    return c;
}

CheckResult lifetime_check(long long count, double p, long long trials, double delta,
                           double threshold, RngStream& rng) {
    auto rep = aggregate_lifetime_check(count, p, trials, delta, rng);
    CheckResult c;
    c.name = "aggregate_lifetime";
    c.statistic = rep.inside_fraction;
    c.threshold = threshold;
    c.pass = c.statistic >= threshold;
    return c;
}

CheckResult early_survival_check(long long n, long long trials, double threshold, uint64_t seed) {
    // m = n + 1, p = 1 - 1/ln n, eta == 1, k1 = floor(0.2 n) - 1.
    const long long m = n + 1;
    const double p = 1.0 - 1.0 / std::log(double(n));
    const long long k1 = (long long)(0.2 * double(n)) - 1;
    const EtaSpec eta = EtaSpec::constant(1);
    CheckResult c;
    c.name = "early_survival";
    c.threshold = threshold;
    if (p <= 0.0) {
        c.applicable = false;
        c.detail = "p = 0: R < k1 almost surely, check not applicable";
        c.pass = true;
        return c;
    }
    long long died_early = 0;
    for (long long t = 0; t < trials; ++t) {
        RngStream rng(seed, uint64_t(t));
        AuxState state = initial_aux_state(eta, false, rng);
        while (!state.absorbed && state.k < k1) step_aux(state, m, p, eta, rng);
        if (state.absorbed) ++died_early;
    }
    c.statistic = double(died_early) / double(trials);
    c.pass = c.statistic <= threshold;
    return c;
}

CheckResult cohort_actives_check(long long n, double p, long long trials, double threshold,
                                 uint64_t seed) {
    // Cohort-priority trace: particles awakened in (k1, k2] must still be
    // active at k2, so A_{k2} >= sum of eta over the newly visited window.
    const long long m = n + 1;
    const double c_frac = 0.2, eps = 0.3;
    const long long k1 = (long long)(c_frac * double(n)) - 1;
    const long long ceil_part = (long long)std::ceil((1.0 - eps) * double(n));
    const long long target = ceil_part + 1;
    const long long x_n = ceil_part - k1;  // = sum_{i=k1+1}^{ceil((1-eps)n)} eta_i for eta == 1
    const EtaSpec eta = EtaSpec::constant(1);
    CheckResult c;
    c.name = "cohort_actives";
    c.threshold = threshold;
    if (p <= 0.0) {
        c.applicable = false;
        c.detail = "p = 0: cohort dies immediately, check not applicable";
        c.pass = true;
        return c;
    }
    long long ok = 0;
    SimParams params;
    params.m = m;
    params.p = p;
    params.eta = eta;
    params.seed_master = seed;
    for (long long t = 0; t < trials; ++t) {
        params.seed_stream = uint64_t(t);
        CohortTrace trace = simulate_cohort(params, k1, target);
        if (trace.k2_finite && trace.a_k2 >= x_n) ++ok;
    }
    c.statistic = double(ok) / double(trials);
    c.pass = c.statistic >= threshold;
    return c;
}

}  // namespace

std::vector<CheckResult> lemma_suite(const LemmaSuiteConfig& config) {
    std::vector<CheckResult> results;
    const bool q = config.quick;
    RngStream rng(config.seed, 0);

    results.push_back(
        coupon_concentration_check(q ? 10000 : 100000, 0.2, q ? 200 : 1000, 0.99, rng));
    results.push_back(coupon_partial_check(q ? 10000 : 100000, 0.1, q ? 200 : 1000, 0.99, rng));
    results.push_back(lifetime_check(q ? 2000 : 10000, 0.99, q ? 200 : 1000, 0.1, 0.99, rng));
    results.push_back(
        early_survival_check(q ? 2000 : 10000, q ? 100 : 200, 0.05, config.seed + 1));
    results.push_back(
        cohort_actives_check(q ? 500 : 2000, 0.99, q ? 100 : 200, 0.9, config.seed + 2));
    return results;
}

namespace {

std::string fmt_real(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.9g", v);
    return buf;
}

}  // namespace

void write_results(std::span<const ResultRow> rows, std::ostream& out, ResultFormat format) {
    if (format == ResultFormat::csv) {
        out << "n,alpha,p_n,event,trials,successes,p_hat,ci_low,ci_high,seed,wall_time_ms\n";
        for (const auto& r : rows) {
            out << r.n << ',';
            if (!std::isnan(r.alpha)) out << fmt_real(r.alpha);
            out << ',' << fmt_real(r.p_n) << ',' << r.event << ',' << r.trials << ','
                << r.successes << ',' << fmt_real(r.p_hat) << ',' << fmt_real(r.ci_low) << ','
                << fmt_real(r.ci_high) << ',' << r.seed << ',' << r.wall_time_ms << '\n';
        }
        return;
    }
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    for (const auto& r : rows) {
        nlohmann::ordered_json j;
        j["n"] = r.n;
        if (std::isnan(r.alpha))
            j["alpha"] = nullptr;
        else
            j["alpha"] = r.alpha;
        j["p_n"] = r.p_n;
        j["event"] = r.event;
        j["trials"] = r.trials;
        j["successes"] = r.successes;
        j["p_hat"] = r.p_hat;
        j["ci_low"] = r.ci_low;
        j["ci_high"] = r.ci_high;
        j["seed"] = r.seed;
        j["wall_time_ms"] = r.wall_time_ms;
        arr.push_back(std::move(j));
    }
    out << arr.dump(2) << '\n';
}

void write_results(std::span<const ResultRow> rows, const std::string& path, ResultFormat format) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open output file: " + path);
    write_results(rows, out, format);
    if (!out.good()) throw std::runtime_error("write failed: " + path);
}

}  // namespace frogsim
