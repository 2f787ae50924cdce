#pragma once

#include <functional>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "frogsim/sim_params.hpp"

namespace frogsim {

enum class EventKind { full_coverage, proportion };

// Coverage event to estimate: V_infty = m, or V_infty >= (1-epsilon)*m.
struct EventSpec {
    EventKind kind = EventKind::full_coverage;
    double epsilon = 0.0;

    void validate() const;
    long long threshold(long long m) const;  // minimal v_infty counting as success
    std::string describe() const;            // "full" or "proportion:0.1"
    static EventSpec parse(const std::string& text);
};

struct WilsonInterval {
    double low = 0.0;
    double high = 1.0;
};

// 95% Wilson score interval; well behaved at p_hat near 0 and 1.
WilsonInterval wilson95(long long successes, long long trials);

struct ResultRow {
    long long n = 0;       // vertex count
    double alpha = 0.0;    // sweep alpha; NaN for raw-p runs
    double p_n = 0.0;
    std::string event;
    long long trials = 0;
    long long successes = 0;
    double p_hat = 0.0;
    double ci_low = 0.0;
    double ci_high = 1.0;
    uint64_t seed = 0;
    long long wall_time_ms = 0;  // kept at 0 in persisted rows (determinism)
    bool valid = true;           // false when any trial hit the round cap
    long long capped_trials = 0;
};

// Monte Carlo estimate over independent aux-chain trials on streams
// (seed, trial index). The successes count is an order-independent integer
// sum, so the result is identical for any thread count.
ResultRow estimate_event(const SimParams& params, const EventSpec& event, long long trials,
                         uint64_t seed, int threads = 1);

struct SweepConfig {
    std::vector<long long> n_values;
    std::vector<double> alpha_values;
    EtaSpec eta;
    long long trials = 1000;
    uint64_t seed = 0;
    EventSpec event;
    bool conditional_root = false;
    int threads = 1;

    void validate() const;
};

using ProgressFn = std::function<void(const ResultRow&)>;

// p_n = max(0, 1 - alpha/ln n) per point; rows in (n outer, alpha inner)
// order, one per point. Each point runs on a seed derived from
// (config.seed, point index).
std::vector<ResultRow> phase_sweep(const SweepConfig& config, const ProgressFn& progress = {});

struct MonotonicityReport {
    std::vector<ResultRow> rows;
    bool pass = true;
};

// Statistical check that the full-coverage estimate is nondecreasing in p
// up to the summed CI half-widths of each adjacent pair.
MonotonicityReport monotonicity_check(long long m, std::span<const double> p_grid,
                                      const EtaSpec& eta, long long trials, uint64_t seed,
                                      int threads = 1);

struct CheckResult {
    std::string name;
    double statistic = 0.0;
    double threshold = 0.0;
    bool pass = false;
    bool applicable = true;
    std::string detail;
};

struct LemmaSuiteConfig {
    uint64_t seed = 20240801;
    int threads = 1;
    bool quick = false;  // sub-minute subset with smaller sizes
};

// Finite-size checks of the coupon-collector, aggregate-lifetime,
// early-survival and cohort-actives bounds, with pinned thresholds.
std::vector<CheckResult> lemma_suite(const LemmaSuiteConfig& config);

enum class ResultFormat { csv, json };

// Bit-stable given identical rows: fixed header, reals at 9 significant
// digits. The alpha field is left empty for raw-p rows.
void write_results(std::span<const ResultRow> rows, std::ostream& out, ResultFormat format);
void write_results(std::span<const ResultRow> rows, const std::string& path, ResultFormat format);

}  // namespace frogsim
