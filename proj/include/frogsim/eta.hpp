#pragma once

#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "frogsim/rng.hpp"

namespace frogsim {

enum class EtaKind { constant, bernoulli, poisson, geometric, table };

// The i.i.d. initial-occupancy law eta: number of sleeping particles per
// non-root vertex. Supports exact pmf queries (needed by the descendant
// pmf and the absorption DP) next to sampling.
struct EtaSpec {
    EtaKind kind = EtaKind::constant;
    // constant value / Bernoulli q / Poisson lambda / geometric success prob.
    double param = 0.0;
    // Finite pmf over {0..K}, table kind only.
    std::vector<double> table;

    static EtaSpec constant(long long k);
    static EtaSpec bernoulli(double q);
    static EtaSpec poisson(double lambda);
    static EtaSpec geometric(double q);
    static EtaSpec from_table(std::vector<double> pmf);

    // Flag syntax "kind:param[,param...]", e.g. "bernoulli:0.5",
    // "table:0.2,0.3,0.5". Mirrors the JSON schema one-to-one.
    static EtaSpec parse(const std::string& text);
    static EtaSpec from_json(const nlohmann::json& j);
    void to_json(nlohmann::json& j) const;

    // Throws ConfigError on invalid parameters.
    void validate() const;

    double mean() const;
    double pmf(long long k) const;
    double p_zero() const { return pmf(0); }
    long long sample(RngStream& rng) const;

    // Largest support point for finitely supported kinds, nullopt otherwise.
    std::optional<long long> bounded_support() const;

    std::string describe() const;
};

// 1 + eta_o root occupancy, or eta_o conditioned on {eta_o >= 1} when
// conditional_root is set (sampled by rejection).
long long initial_actives(const EtaSpec& eta, bool conditional_root, RngStream& rng);

}  // namespace frogsim
