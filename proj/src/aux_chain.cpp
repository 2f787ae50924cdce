#include "frogsim/aux_chain.hpp"

namespace frogsim {

double XPmf::prob(long long j) const {
    if (j < 0) return 0.0;
    if (j == 0) return death_mass;
    if (j == 1) return revisit_mass + new_mass * eta.pmf(0);
    return new_mass * eta.pmf(j - 1);
}

XPmf x_pmf(long long m, double p, long long v, const EtaSpec& eta) {
    if (v < 1 || v > m) throw DomainError("x_pmf: visited count out of [1,m]");
    if (!(p >= 0.0 && p <= 1.0)) throw DomainError("x_pmf: p out of [0,1]");
    XPmf pmf;
    pmf.m = m;
    pmf.p = p;
    pmf.v = v;
    pmf.eta = eta;
    pmf.death_mass = 1.0 - p;
    if (m > 1) {
        pmf.revisit_mass = p * double(v - 1) / double(m - 1);
        pmf.new_mass = p * double(m - v) / double(m - 1);
    } else {
        pmf.revisit_mass = p;  // K_1: a survivor has nowhere new to go
        pmf.new_mass = 0.0;
    }
    return pmf;
}

AuxState initial_aux_state(const EtaSpec& eta, bool conditional_root, RngStream& rng) {
    AuxState s;
    s.a_prime = initial_actives(eta, conditional_root, rng);
    s.absorbed = (s.a_prime == 0);
    return s;
}

long long step_aux(AuxState& state, long long m, double p, const EtaSpec& eta, RngStream& rng) {
    ++state.k;
    if (!rng.bernoulli(p)) {
        --state.a_prime;
        if (state.a_prime == 0) state.absorbed = true;
        return 0;
    }
    const double new_prob = m > 1 ? double(m - state.v) / double(m - 1) : 0.0;
    if (new_prob > 0.0 && rng.bernoulli(new_prob)) {
        ++state.v;
        long long sleepers = eta.sample(rng);
        state.a_prime += sleepers;
        return 1 + sleepers;
    }
    return 1;  // revisit, or a new vertex with no sleepers folded in by eta
}

TrialOutcome simulate_aux(const SimParams& params, std::vector<AuxTraceRow>* trace) {
    params.validate();
    TrialOutcome out;
    if (params.p >= 1.0) {
        out.v_infty = params.m;
        return out;
    }
    RngStream rng = params.make_stream();
    if (params.m == 1) return out;

    AuxState state = initial_aux_state(params.eta, params.conditional_root, rng);
    const long long cap = round_cap(params.m, params.p);
    while (!state.absorbed) {
        if (state.k >= cap) {
            out.capped = true;
            break;
        }
        long long x = step_aux(state, params.m, params.p, params.eta, rng);
        if (x > 0) ++out.total_steps;
        if (trace) trace->push_back({state.k, x, state.a_prime, state.v});
    }
    out.v_infty = state.v;
    out.rounds_elapsed = state.k;
    return out;
}

std::vector<InjectedRow> simulate_aux_injected(const SimParams& params, long long k_max) {
    params.validate();
    if (params.p >= 1.0) throw ConfigError("simulate_aux_injected: p must be < 1");
    RngStream rng = params.make_stream();
    std::vector<InjectedRow> rows;
    rows.reserve(size_t(k_max));

    long long actives = initial_actives(params.eta, params.conditional_root, rng);
    long long run_sum = actives;  // A'_0 = 1 + eta_o
    long long v = 1;
    const long long m = params.m;

    for (long long k = 1; k <= k_max; ++k) {
        if (!rng.bernoulli(params.p)) {
            --actives;
            --run_sum;
            if (actives == 0) actives = 1;  // extra injected at the root
        } else {
            const double new_prob = m > 1 ? double(m - v) / double(m - 1) : 0.0;
            if (new_prob > 0.0 && rng.bernoulli(new_prob)) {
                ++v;
                long long sleepers = params.eta.sample(rng);
                actives += sleepers;
                run_sum += sleepers;
            }
        }
        rows.push_back({k, actives, run_sum, v});
    }
    return rows;
}

CohortTrace simulate_cohort(const SimParams& params, long long k1, long long target) {
    params.validate();
    if (k1 < 1) throw ConfigError("simulate_cohort: k1 must be >= 1");
    if (target > params.m) throw ConfigError("simulate_cohort: target exceeds m");
    if (params.p >= 1.0) throw ConfigError("simulate_cohort: p must be < 1");
    RngStream rng = params.make_stream();

    CohortTrace trace;
    trace.k1 = k1;
    trace.target = target;
    const long long m = params.m;
    const double p = params.p;
    const long long cap = round_cap(m, p) + k1;

    AuxState state = initial_aux_state(params.eta, params.conditional_root, rng);
    if (state.v >= target) {
        trace.k2 = 0;
        trace.k2_finite = true;
        trace.a_k2 = state.a_prime;
    }

    // Rounds 1..k1: any-selection rule (collapsed chain, rule-invariant).
    while (state.k < k1 && !state.absorbed) {
        step_aux(state, m, p, params.eta, rng);
        if (!trace.k2_finite && state.v >= target) {
            trace.k2 = state.k;
            trace.k2_finite = true;
            trace.a_k2 = state.a_prime;
        }
    }
    trace.v_final = state.v;
    if (state.absorbed) {
        trace.r = state.k;
        return trace;  // R < k1: A_{k1} = 0, T = 0
    }
    trace.a_k1 = state.a_prime;
    if (trace.k2_finite) return trace;

    // Cohort lifetimes drawn whole at k1 by memorylessness.
    std::vector<long long> lifetimes(size_t(trace.a_k1));
    for (auto& life : lifetimes) {
        life = sample_lifetime(p, rng);
        trace.t_k1 += life;
    }

    long long k = k1;
    long long v = state.v;
    long long cohort_alive = trace.a_k1;
    long long waiting = 0;  // activated after k1, barred from moving
    const double inv_deg = m > 1 ? 1.0 / double(m - 1) : 0.0;

    for (long long i = 0; i < trace.a_k1; ++i) {
        for (long long step = 0; step < lifetimes[size_t(i)]; ++step) {
            ++k;
            if (k > cap) {
                trace.capped = true;
                trace.v_final = v;
                return trace;
            }
            if (rng.bernoulli(double(m - v) * inv_deg)) {
                ++v;
                trace.v_final = v;
                waiting += params.eta.sample(rng);
                if (v >= target) {
                    trace.k2 = k;
                    trace.k2_finite = true;
                    trace.a_k2 = cohort_alive + waiting;
                    return trace;
                }
            }
        }
        ++k;  // death round of cohort particle i
        --cohort_alive;
    }

    if (waiting == 0) {
        trace.r = k;
        trace.v_final = v;
        return trace;
    }

    // Cohort exhausted before the target: the waiting pool takes over
    // under the ordinary per-round survival mechanic.
    long long actives = waiting;
    while (actives > 0) {
        ++k;
        if (k > cap) {
            trace.capped = true;
            trace.v_final = v;
            return trace;
        }
        if (!rng.bernoulli(p)) {
            --actives;
        } else if (rng.bernoulli(double(m - v) * inv_deg)) {
            ++v;
            trace.v_final = v;
            actives += params.eta.sample(rng);
            if (v >= target) {
                trace.k2 = k;
                trace.k2_finite = true;
                trace.a_k2 = actives;
                return trace;
            }
        }
    }
    trace.r = k;
    trace.v_final = v;
    return trace;
}

}  // namespace frogsim
