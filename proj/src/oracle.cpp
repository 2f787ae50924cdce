#include "frogsim/oracle.hpp"

#include <algorithm>
#include <cmath>

namespace frogsim {

namespace {

constexpr long long kMaxDpVertices = 16;
constexpr long long kMaxDpSupport = 4;

}  // namespace

VinfDistribution exact_vinf_distribution_fixed_root(long long m, double p, const EtaSpec& eta,
                                                    long long a0) {
    eta.validate();
    if (m < 1) throw ConfigError("exact_vinf_distribution: m must be >= 1");
    if (!(p >= 0.0 && p < 1.0)) throw ConfigError("exact_vinf_distribution: p must lie in [0,1)");
    if (a0 < 0) throw ConfigError("exact_vinf_distribution: a0 must be >= 0");
    auto support = eta.bounded_support();
    if (!support) throw SizeError("exact_vinf_distribution: eta must have bounded support");
    const long long K = *support;
    if (m > kMaxDpVertices) throw SizeError("exact_vinf_distribution: m > 16");
    if (K > kMaxDpSupport) throw SizeError("exact_vinf_distribution: eta support > 4");

    VinfDistribution dist;
    dist.m = m;
    dist.masses.assign(size_t(m), 0.0);
    if (m == 1 || a0 == 0) {
        dist.masses[0] = 1.0;
        return dist;
    }

    // Reachable actives never exceed a0 + (m-1)*K; allot one uniform bound.
    const long long a_max = a0 + std::max<long long>(1, K) * m + 1;
    // dp[v][a] = distribution of V_infty started from (v, a), v in 1..m.
    std::vector<std::vector<std::vector<double>>> dp(
        size_t(m + 2), std::vector<std::vector<double>>(size_t(a_max + 1)));

    for (long long v = m; v >= 1; --v) {
        const double death = 1.0 - p;
        const double revisit = p * double(v - 1) / double(m - 1);
        const double fresh = p * double(m - v) / double(m - 1);
        const double norm = 1.0 - revisit;  // self-loop eliminated
        for (long long a = 0; a <= a_max; ++a) {
            auto& out = dp[size_t(v)][size_t(a)];
            out.assign(size_t(m), 0.0);
            if (a == 0) {
                out[size_t(v - 1)] = 1.0;
                continue;
            }
            // death: (v, a-1)
            const auto& down = dp[size_t(v)][size_t(a - 1)];
            for (long long i = 0; i < m; ++i) out[size_t(i)] = death * down[size_t(i)];
            // new vertex with eta = j sleepers: (v+1, a+j)
            if (fresh > 0.0) {
                for (long long j = 0; j <= K; ++j) {
                    double w = fresh * eta.pmf(j);
                    if (w == 0.0) continue;
                    long long a2 = std::min(a + j, a_max);
                    const auto& up = dp[size_t(v + 1)][size_t(a2)];
                    for (long long i = 0; i < m; ++i) out[size_t(i)] += w * up[size_t(i)];
                }
            }
            for (long long i = 0; i < m; ++i) out[size_t(i)] /= norm;
        }
    }

    dist.masses = dp[1][size_t(std::min(a0, a_max))];
    return dist;
}

VinfDistribution exact_vinf_distribution(long long m, double p, const EtaSpec& eta,
                                         bool conditional_root) {
    eta.validate();
    auto support = eta.bounded_support();
    if (!support) throw SizeError("exact_vinf_distribution: eta must have bounded support");
    const long long K = *support;

    VinfDistribution mixed;
    mixed.m = m;
    mixed.masses.assign(size_t(std::max<long long>(m, 1)), 0.0);
    if (conditional_root) {
        const double p_pos = 1.0 - eta.pmf(0);
        if (p_pos <= 0.0) throw ConfigError("conditional_root requires P(eta >= 1) > 0");
        for (long long k = 1; k <= K; ++k) {
            double w = eta.pmf(k) / p_pos;
            if (w == 0.0) continue;
            auto part = exact_vinf_distribution_fixed_root(m, p, eta, k);
            for (size_t i = 0; i < mixed.masses.size(); ++i) mixed.masses[i] += w * part.masses[i];
        }
    } else {
        for (long long k = 0; k <= K; ++k) {
            double w = eta.pmf(k);
            if (w == 0.0) continue;
            auto part = exact_vinf_distribution_fixed_root(m, p, eta, 1 + k);
            for (size_t i = 0; i < mixed.masses.size(); ++i) mixed.masses[i] += w * part.masses[i];
        }
    }
    return mixed;
}

std::pair<double, double> coupon_tau_moments(long long n) {
    if (n < 1) throw ConfigError("coupon_tau_moments: n must be >= 1");
    double mean = 0.0, var = 0.0;
    for (long long j = 0; j < n; ++j) {
        double q = double(n - j) / double(n);
        mean += 1.0 / q;
        var += (1.0 - q) / (q * q);
    }
    return {mean, var};
}

CouponResult simulate_coupon(long long n, std::span<const long long> targets, RngStream& rng) {
    if (n < 1) throw ConfigError("simulate_coupon: n must be >= 1");
    for (long long t : targets)
        if (t < 1 || t > n) throw ConfigError("simulate_coupon: target out of [1,n]");

    std::vector<long long> sorted(targets.begin(), targets.end());
    std::sort(sorted.begin(), sorted.end());

    CouponResult res;
    res.tau_at.assign(targets.size(), 0);
    std::vector<uint8_t> seen(size_t(n), 0);
    long long distinct = 0, draws = 0;
    size_t next = 0;
    while (distinct < n) {
        ++draws;
        auto c = rng.uniform_below(uint64_t(n));
        if (!seen[size_t(c)]) {
            seen[size_t(c)] = 1;
            ++distinct;
            while (next < sorted.size() && sorted[next] == distinct) {
                // map back to the caller's order
                for (size_t i = 0; i < targets.size(); ++i)
                    if (targets[i] == distinct) res.tau_at[i] = draws;
                ++next;
            }
        }
    }
    res.tau = draws;
    return res;
}

void OffspringPmf::validate() const {
    if (masses.empty()) throw ConfigError("offspring pmf: empty");
    double sum = 0.0;
    for (double q : masses) {
        if (q < 0.0) throw ConfigError("offspring pmf: negative mass");
        sum += q;
    }
    if (std::abs(sum - 1.0) > 1e-12) throw ConfigError("offspring pmf: must sum to 1 within 1e-12");
}

double OffspringPmf::mean() const {
    double m = 0.0;
    for (size_t j = 0; j < masses.size(); ++j) m += double(j) * masses[j];
    return m;
}

double branching_extinction(const OffspringPmf& offspring) {
    offspring.validate();
    auto gen = [&](double s) {
        double acc = 0.0, pow_s = 1.0;
        for (double q : offspring.masses) {
            acc += q * pow_s;
            pow_s *= s;
        }
        return acc;
    };
    auto gen_prime = [&](double s) {
        double acc = 0.0, pow_s = 1.0;
        for (size_t j = 1; j < offspring.masses.size(); ++j) {
            acc += double(j) * offspring.masses[j] * pow_s;
            pow_s *= s;
        }
        return acc;
    };
    double mean = 0.0;
    for (size_t j = 0; j < offspring.masses.size(); ++j) mean += double(j) * offspring.masses[j];
    // Z == 1 a.s. makes every s a fixed point; the smallest is 0. Any other
    // (sub)critical law has 1 as its smallest fixed point.
    if (offspring.masses.size() > 1 && offspring.masses[1] == 1.0) return 0.0;
    if (mean <= 1.0) return 1.0;

    double s = 0.0;
    for (long long it = 0; it < 1000000; ++it) {
        double next = gen(s);
        if (std::abs(next - s) < 1e-12) {
            s = next;
            break;
        }
        s = next;
    }
    // Newton polish on g(s) - s; the monotone iteration slows down near
    // criticality (contraction rate g'(q) -> 1) but lands inside Newton's
    // quadratic basin.
    for (int it = 0; it < 50; ++it) {
        double denom = gen_prime(s) - 1.0;
        if (denom >= -1e-14) break;  // critical: derivative at the fixed point is 1
        double step = (gen(s) - s) / denom;
        s -= step;
        if (std::abs(step) < 1e-15) break;
    }
    return std::min(1.0, std::max(0.0, s));
}

OffspringPmf make_z_pmf(double p, double c, const EtaSpec& eta) {
    if (!(c > 0.0 && c < 1.0)) throw ConfigError("make_z_pmf: c must lie in (0,1)");
    if (!(p >= 0.0 && p <= 1.0)) throw ConfigError("make_z_pmf: p must lie in [0,1]");
    eta.validate();
    const double p0 = eta.pmf(0);
    OffspringPmf z;
    z.masses = {1.0 - p, p * c + p * (1.0 - c) * p0, p * (1.0 - c) * (1.0 - p0)};
    return z;
}

TrialOutcome simulate_star(const SimParams& params) {
    params.validate();
    TrialOutcome out;
    if (params.p >= 1.0) {
        out.v_infty = params.m;
        return out;
    }
    RngStream rng = params.make_stream();
    const long long m = params.m;
    if (m == 1) return out;

    // eta* root: the whole population starts active at the root.
    long long actives = initial_actives(params.eta, params.conditional_root, rng);
    for (long long v = 1; v < m; ++v) actives += params.eta.sample(rng);

    long long v = 1, k = 0;
    const long long cap = round_cap(m, params.p) + actives;
    while (actives > 0) {
        ++k;
        if (k > cap) {
            out.capped = true;
            break;
        }
        if (!rng.bernoulli(params.p)) {
            --actives;
        } else {
            ++out.total_steps;
            if (rng.bernoulli(double(m - v) / double(m - 1))) ++v;  // eta* = 0 off-root
        }
    }
    out.v_infty = v;
    out.rounds_elapsed = k;
    return out;
}

LifetimeSumReport aggregate_lifetime_check(long long count, double p, long long trials,
                                           double delta, RngStream& rng) {
    if (count < 1) throw ConfigError("aggregate_lifetime_check: count must be >= 1");
    if (trials < 1) throw ConfigError("aggregate_lifetime_check: trials must be >= 1");
    if (!(p >= 0.0 && p < 1.0)) throw ConfigError("aggregate_lifetime_check: p must lie in [0,1)");

    LifetimeSumReport rep;
    rep.count = count;
    rep.p = p;
    rep.trials = trials;
    rep.expected_mean = double(count) * p / (1.0 - p);
    const double lo = (1.0 - delta) * rep.expected_mean;
    const double hi = (1.0 + delta) * rep.expected_mean;

    double total = 0.0;
    long long inside = 0;
    for (long long t = 0; t < trials; ++t) {
        long long sum = 0;
        for (long long i = 0; i < count; ++i) sum += sample_lifetime(p, rng);
        total += double(sum);
        if (double(sum) >= lo && double(sum) <= hi) ++inside;
    }
    rep.empirical_mean = total / double(trials);
    rep.inside_fraction = double(inside) / double(trials);
    return rep;
}

}  // namespace frogsim
