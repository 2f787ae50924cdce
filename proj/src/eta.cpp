#include "frogsim/eta.hpp"

#include <cmath>
#include <sstream>

#include <nlohmann/json.hpp>

namespace frogsim {

namespace {

// Inversion-by-sequential-search cap; exact and portable at desk scale.
constexpr double kPoissonLambdaMax = 30.0;

double parse_real(const std::string& s, const char* what) {
    try {
        size_t pos = 0;
        double v = std::stod(s, &pos);
        if (pos != s.size()) throw ConfigError(std::string("trailing characters in ") + what);
        return v;
    } catch (const ConfigError&) {
        throw;
    } catch (const std::exception&) {
        throw ConfigError(std::string("cannot parse ") + what + ": '" + s + "'");
    }
}

}  // namespace

EtaSpec EtaSpec::constant(long long k) {
    EtaSpec s;
    s.kind = EtaKind::constant;
    s.param = double(k);
    return s;
}

EtaSpec EtaSpec::bernoulli(double q) {
    EtaSpec s;
    s.kind = EtaKind::bernoulli;
    s.param = q;
    return s;
}

EtaSpec EtaSpec::poisson(double lambda) {
    EtaSpec s;
    s.kind = EtaKind::poisson;
    s.param = lambda;
    return s;
}

EtaSpec EtaSpec::geometric(double q) {
    EtaSpec s;
    s.kind = EtaKind::geometric;
    s.param = q;
    return s;
}

EtaSpec EtaSpec::from_table(std::vector<double> pmf) {
    EtaSpec s;
    s.kind = EtaKind::table;
    s.table = std::move(pmf);
    return s;
}

void EtaSpec::validate() const {
    switch (kind) {
        case EtaKind::constant:
            if (param < 0 || param != std::floor(param))
                throw ConfigError("eta constant: value must be a nonnegative integer");
            return;
        case EtaKind::bernoulli:
            if (!(param >= 0.0 && param <= 1.0))
                throw ConfigError("eta bernoulli: q must lie in [0,1]");
            return;
        case EtaKind::poisson:
            if (!(param > 0.0)) throw ConfigError("eta poisson: lambda must be > 0");
            if (param > kPoissonLambdaMax)
                throw ConfigError("eta poisson: lambda above supported cap 30");
            return;
        case EtaKind::geometric:
            if (!(param > 0.0 && param <= 1.0))
                throw ConfigError("eta geometric: success prob must lie in (0,1]");
            return;
        case EtaKind::table: {
            if (table.empty()) throw ConfigError("eta table: empty pmf");
            double sum = 0.0;
            for (double q : table) {
                if (q < 0.0) throw ConfigError("eta table: negative mass");
                sum += q;
            }
            if (std::abs(sum - 1.0) > 1e-12)
                throw ConfigError("eta table: pmf must sum to 1 within 1e-12");
            return;
        }
    }
    throw ConfigError("eta: unknown kind");
}

double EtaSpec::mean() const {
    switch (kind) {
        case EtaKind::constant: return param;
        case EtaKind::bernoulli: return param;
        case EtaKind::poisson: return param;
        case EtaKind::geometric: return (1.0 - param) / param;
        case EtaKind::table: {
            double m = 0.0;
            for (size_t k = 0; k < table.size(); ++k) m += double(k) * table[k];
            return m;
        }
    }
    return 0.0;
}

double EtaSpec::pmf(long long k) const {
    if (k < 0) return 0.0;
    switch (kind) {
        case EtaKind::constant: return double(k) == param ? 1.0 : 0.0;
        case EtaKind::bernoulli:
            if (k == 0) return 1.0 - param;
            return k == 1 ? param : 0.0;
        case EtaKind::poisson:
            return std::exp(double(k) * std::log(param) - param - std::lgamma(double(k) + 1.0));
        case EtaKind::geometric:
            return param * std::pow(1.0 - param, double(k));
        case EtaKind::table:
            return k < (long long)table.size() ? table[size_t(k)] : 0.0;
    }
    return 0.0;
}

long long EtaSpec::sample(RngStream& rng) const {
    switch (kind) {
        case EtaKind::constant: return (long long)std::llround(param);
        case EtaKind::bernoulli: return rng.bernoulli(param) ? 1 : 0;
        case EtaKind::poisson: {
            // Inversion by sequential search.
            double u = rng.next_double();
            double q = std::exp(-param);
            double cdf = q;
            long long k = 0;
            while (u >= cdf) {
                ++k;
                q *= param / double(k);
                cdf += q;
                if (q == 0.0) break;  // fp underflow far in the tail
            }
            return k;
        }
        case EtaKind::geometric: {
            if (param >= 1.0) return 0;
            double u = rng.next_double();
            if (u <= 0.0) return 0;
            return (long long)std::floor(std::log1p(-u) / std::log1p(-param));
        }
        case EtaKind::table: {
            double u = rng.next_double();
            double cdf = 0.0;
            for (size_t k = 0; k < table.size(); ++k) {
                cdf += table[k];
                if (u < cdf) return (long long)k;
            }
            return (long long)table.size() - 1;
        }
    }
    return 0;
}

std::optional<long long> EtaSpec::bounded_support() const {
    switch (kind) {
        case EtaKind::constant: return (long long)std::llround(param);
        case EtaKind::bernoulli: return param > 0.0 ? 1 : 0;
        case EtaKind::table: {
            long long top = 0;
            for (size_t k = 0; k < table.size(); ++k)
                if (table[k] > 0.0) top = (long long)k;
            return top;
        }
        case EtaKind::poisson:
        case EtaKind::geometric: return std::nullopt;
    }
    return std::nullopt;
}

namespace {

const char* kind_name(EtaKind k) {
    switch (k) {
        case EtaKind::constant: return "constant";
        case EtaKind::bernoulli: return "bernoulli";
        case EtaKind::poisson: return "poisson";
        case EtaKind::geometric: return "geometric";
        case EtaKind::table: return "table";
    }
    return "?";
}

}  // namespace

std::string EtaSpec::describe() const {
    std::ostringstream os;
    os << kind_name(kind) << ':';
    if (kind == EtaKind::table) {
        for (size_t k = 0; k < table.size(); ++k) {
            if (k) os << ',';
            os << table[k];
        }
    } else {
        os << param;
    }
    return os.str();
}

EtaSpec EtaSpec::parse(const std::string& text) {
    auto colon = text.find(':');
    if (colon == std::string::npos)
        throw ConfigError("eta: expected kind:param[,param...], got '" + text + "'");
    std::string kind = text.substr(0, colon);
    std::string rest = text.substr(colon + 1);
    EtaSpec s;
    if (kind == "constant") {
        s = constant((long long)std::llround(parse_real(rest, "eta constant value")));
        s.param = parse_real(rest, "eta constant value");
    } else if (kind == "bernoulli") {
        s = bernoulli(parse_real(rest, "eta bernoulli q"));
    } else if (kind == "poisson") {
        s = poisson(parse_real(rest, "eta poisson lambda"));
    } else if (kind == "geometric") {
        s = geometric(parse_real(rest, "eta geometric q"));
    } else if (kind == "table") {
        std::vector<double> pmf;
        std::stringstream ss(rest);
        std::string item;
        while (std::getline(ss, item, ',')) pmf.push_back(parse_real(item, "eta table mass"));
        s = from_table(std::move(pmf));
    } else {
        throw ConfigError("eta: unknown kind '" + kind + "'");
    }
    s.validate();
    return s;
}

EtaSpec EtaSpec::from_json(const nlohmann::json& j) {
    if (!j.is_object() || !j.contains("kind") || !j.contains("params"))
        throw ConfigError("eta: expected {\"kind\":..., \"params\":{...}}");
    for (auto& [key, _] : j.items())
        if (key != "kind" && key != "params") throw ConfigError("eta: unknown key '" + key + "'");
    const std::string kind = j.at("kind").get<std::string>();
    const auto& params = j.at("params");
    auto only = [&](const char* name) {
        for (auto& [key, _] : params.items())
            if (key != name) throw ConfigError("eta params: unknown key '" + key + "'");
        if (!params.contains(name))
            throw ConfigError(std::string("eta params: missing '") + name + "'");
        return params.at(name);
    };
    EtaSpec s;
    if (kind == "constant") {
        s = constant(only("value").get<long long>());
    } else if (kind == "bernoulli") {
        s = bernoulli(only("q").get<double>());
    } else if (kind == "poisson") {
        s = poisson(only("lambda").get<double>());
    } else if (kind == "geometric") {
        s = geometric(only("q").get<double>());
    } else if (kind == "table") {
        s = from_table(only("pmf").get<std::vector<double>>());
    } else {
        throw ConfigError("eta: unknown kind '" + kind + "'");
    }
    s.validate();
    return s;
}

void EtaSpec::to_json(nlohmann::json& j) const {
    j = nlohmann::json::object();
    j["kind"] = kind_name(kind);
    nlohmann::json params = nlohmann::json::object();
    switch (kind) {
        case EtaKind::constant: params["value"] = (long long)std::llround(param); break;
        case EtaKind::bernoulli: params["q"] = param; break;
        case EtaKind::poisson: params["lambda"] = param; break;
        case EtaKind::geometric: params["q"] = param; break;
        case EtaKind::table: params["pmf"] = table; break;
    }
    j["params"] = std::move(params);
}

long long initial_actives(const EtaSpec& eta, bool conditional_root, RngStream& rng) {
    if (!conditional_root) return 1 + eta.sample(rng);
    if (eta.p_zero() >= 1.0)
        throw ConfigError("conditional_root requires P(eta >= 1) > 0");
    for (;;) {
        long long draw = eta.sample(rng);
        if (draw >= 1) return draw;
    }
}

}  // namespace frogsim
