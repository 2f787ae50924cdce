#pragma once

#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "frogsim/sim_params.hpp"

namespace frogsim {

// Exact and semi-analytic ground truths used to validate the simulators.

struct SizeError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct VinfDistribution {
    long long m = 1;
    std::vector<double> masses;  // masses[v-1] = P(V_infty = v), v in {1..m}

    double mass(long long v) const { return masses.at(size_t(v - 1)); }
};

// Absorption probabilities of the (v, a) chain by a single-pass DP
// (decreasing v, increasing a; the (v,a)->(v,a) revisit self-loop is
// eliminated by renormalizing the remaining masses). Requires bounded
// eta support; enforces m <= 16, K <= 4. Root occupancy mixes over the
// law of 1 + eta_o (or the conditional-root law).
VinfDistribution exact_vinf_distribution(long long m, double p, const EtaSpec& eta,
                                         bool conditional_root = false);

// Variant with a fixed initial active count, for hand-check reproduction.
VinfDistribution exact_vinf_distribution_fixed_root(long long m, double p, const EtaSpec& eta,
                                                    long long a0);

// Coupon collector: E(tau) = n * H_n, Var(tau) = sum (1-q_j)/q_j^2 with
// q_j = (n-j)/n, by independence of the Geo_1 increments.
std::pair<double, double> coupon_tau_moments(long long n);

struct CouponResult {
    long long tau = 0;                // draws to complete the collection
    std::vector<long long> tau_at;    // tau_i for each requested target i
};

CouponResult simulate_coupon(long long n, std::span<const long long> targets, RngStream& rng);

struct OffspringPmf {
    std::vector<double> masses;  // masses[j] = P(Z = j)

    void validate() const;
    double mean() const;
};

// Smallest fixed point of the offspring generating function in [0,1],
// by monotone iteration s <- E(s^Z) from s = 0.
double branching_extinction(const OffspringPmf& offspring);

// The 3-point comparison law on {0,1,2}:
// (1-p, p*c + p*(1-c)*P(eta=0), p*(1-c)*P(eta>=1)).
OffspringPmf make_z_pmf(double p, double c, const EtaSpec& eta);

// Star configuration: all 1 + sum_v eta_v particles start active at the
// root, no sleepers elsewhere. Its coverage stochastically dominates the
// ordinary process.
TrialOutcome simulate_star(const SimParams& params);

struct LifetimeSumReport {
    long long count = 0;
    double p = 0.0;
    double expected_mean = 0.0;   // count * p / (1-p)
    double empirical_mean = 0.0;
    double inside_fraction = 0.0; // trials with sum in (1 +- delta) * expected
    long long trials = 0;
};

// Sums of `count` independent Geo_0(1-p) lifetimes, against the exact
// mean and a (1 +- delta) concentration band.
LifetimeSumReport aggregate_lifetime_check(long long count, double p, long long trials,
                                           double delta, RngStream& rng);

}  // namespace frogsim
