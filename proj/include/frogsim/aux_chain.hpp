#pragma once

#include <vector>

#include "frogsim/sim_params.hpp"

namespace frogsim {

// One-particle-per-round process collapsed to the exact Markov chain on
// (round k, visited count v, potential actives a'). Particle identities
// are erased by exchangeability on K_m; each round is O(1).

struct AuxState {
    long long k = 0;
    long long v = 1;        // V'_k
    long long a_prime = 0;  // A'_k
    bool absorbed = false;  // k >= R
};

// Exact descendant-count masses given the current visited count.
// P(X=0) = death_mass; P(X=1) = revisit_mass + new_mass * P(eta=0);
// P(X=j) = new_mass * P(eta=j-1) for j >= 2.
struct XPmf {
    long long m = 1;
    double p = 0.0;
    long long v = 1;
    EtaSpec eta;
    double death_mass = 0.0;
    double revisit_mass = 0.0;
    double new_mass = 0.0;

    double prob(long long j) const;
};

XPmf x_pmf(long long m, double p, long long v, const EtaSpec& eta);

AuxState initial_aux_state(const EtaSpec& eta, bool conditional_root, RngStream& rng);

// One round: structural sampling (survive? -> new vertex? -> eta draw),
// so unbounded eta needs no truncation. Precondition: not absorbed.
// Returns the sampled descendant count X.
long long step_aux(AuxState& state, long long m, double p, const EtaSpec& eta, RngStream& rng);

struct AuxTraceRow {
    long long k;
    long long x;        // X_k
    long long a_prime;  // A'_k
    long long v_prime;  // V'_k
};

// Runs rounds until absorption (A'_k = 0); v_infty = V_R. p = 1
// short-circuits to v_infty = m. Optional per-round trace.
TrialOutcome simulate_aux(const SimParams& params, std::vector<AuxTraceRow>* trace = nullptr);

struct InjectedRow {
    long long k;
    long long actives;      // actual active particles, extras included
    long long running_sum;  // A'_k = 1 + eta_o + sum (X_j - 1)
    long long v_prime;      // V'_k
};

// Continues past R with extra particles injected at the root whenever the
// active count would hit zero, reporting both the actual active count and
// the running-sum bookkeeping so the two can be compared per definition.
std::vector<InjectedRow> simulate_aux_injected(const SimParams& params, long long k_max);

struct CohortTrace {
    long long k1 = 0;
    long long a_k1 = 0;    // A_{k1} (0 when R < k1)
    long long t_k1 = 0;    // summed remaining lifetimes of the k1-cohort
    long long k2 = -1;     // first round with V_k >= target, -1 when never
    bool k2_finite = false;
    long long a_k2 = 0;    // actives at the end of round k2
    long long target = 0;
    long long r = -1;      // absorption round when observed, else -1
    long long v_final = 1; // visited count when the run stopped
    bool capped = false;
};

// Cohort-priority selection: particles active at the end of round k1 move
// first; particles activated later wait until the whole cohort has died.
// Cohort lifetimes are drawn as whole geometric residuals at k1
// (memorylessness) and consumed step by step, making T(k1) observable.
// The run stops once V reaches `target` or the process dies.
CohortTrace simulate_cohort(const SimParams& params, long long k1, long long target);

}  // namespace frogsim
