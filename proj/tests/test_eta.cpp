#include <doctest.h>

#include <cmath>

#include <nlohmann/json.hpp>

#include "frogsim/eta.hpp"

using namespace frogsim;

TEST_CASE("degenerate laws sample deterministically") {
    RngStream rng(11, 0);
    auto one = EtaSpec::constant(1);
    for (int i = 0; i < 50; ++i) CHECK(one.sample(rng) == 1);
    auto never = EtaSpec::bernoulli(0.0);
    for (int i = 0; i < 50; ++i) CHECK(never.sample(rng) == 0);
}

TEST_CASE("pmf closed forms") {
    CHECK(EtaSpec::constant(2).pmf(2) == 1.0);
    CHECK(EtaSpec::constant(2).pmf(1) == 0.0);
    CHECK(EtaSpec::bernoulli(0.3).pmf(0) == doctest::Approx(0.7).epsilon(1e-14));
    CHECK(EtaSpec::poisson(1.0).pmf(1) == doctest::Approx(std::exp(-1.0)).epsilon(1e-12));
    CHECK(EtaSpec::geometric(0.25).pmf(2) == doctest::Approx(0.25 * 0.75 * 0.75).epsilon(1e-14));
    auto tab = EtaSpec::from_table({0.2, 0.3, 0.5});
    CHECK(tab.pmf(2) == 0.5);
    CHECK(tab.pmf(3) == 0.0);
}

TEST_CASE("pmf mass accounted for up to a finite cutoff") {
    struct Case {
        EtaSpec spec;
        long long k_max;
    };
    const Case cases[] = {
        {EtaSpec::constant(3), 3},
        {EtaSpec::bernoulli(0.4), 1},
        {EtaSpec::from_table({0.1, 0.2, 0.7}), 2},
        {EtaSpec::poisson(2.0), 60},
        {EtaSpec::geometric(0.3), 200},
    };
    for (const auto& c : cases) {
        double sum = 0.0;
        for (long long k = 0; k <= c.k_max; ++k) sum += c.spec.pmf(k);
        CHECK(sum >= 1.0 - 1e-9);
        CHECK(sum <= 1.0 + 1e-9);
    }
}

TEST_CASE("sample means follow the law") {
    const long long trials = 100000;
    struct Case {
        EtaSpec spec;
        double mean, var;
    };
    const Case cases[] = {
        {EtaSpec::poisson(2.0), 2.0, 2.0},
        {EtaSpec::bernoulli(0.5), 0.5, 0.25},
        {EtaSpec::geometric(0.5), 1.0, 2.0},
    };
    int idx = 0;
    for (const auto& c : cases) {
        RngStream rng(21, uint64_t(idx++));
        double sum = 0.0;
        for (long long i = 0; i < trials; ++i) sum += double(c.spec.sample(rng));
        CHECK(c.spec.mean() == doctest::Approx(c.mean).epsilon(1e-12));
        double se = std::sqrt(c.var / double(trials));
        CHECK(std::abs(sum / double(trials) - c.mean) < 3.0 * se);
    }
}

TEST_CASE("invalid parameters are rejected") {
    CHECK_THROWS_AS(EtaSpec::poisson(-1.0).validate(), ConfigError);
    CHECK_THROWS_AS(EtaSpec::poisson(0.0).validate(), ConfigError);
    CHECK_THROWS_AS(EtaSpec::geometric(0.0).validate(), ConfigError);
    CHECK_THROWS_AS(EtaSpec::bernoulli(1.5).validate(), ConfigError);
    CHECK_THROWS_AS(EtaSpec::from_table({0.5, -0.1, 0.6}).validate(), ConfigError);
    CHECK_THROWS_AS(EtaSpec::from_table({0.5, 0.4}).validate(), ConfigError);  // sums to 0.9
    CHECK_THROWS_AS(EtaSpec::from_table({}).validate(), ConfigError);
}

TEST_CASE("flag parsing mirrors the JSON schema") {
    auto b = EtaSpec::parse("bernoulli:0.5");
    CHECK(b.kind == EtaKind::bernoulli);
    CHECK(b.param == 0.5);
    auto t = EtaSpec::parse("table:0.2,0.3,0.5");
    CHECK(t.table.size() == 3);
    CHECK_THROWS_AS(EtaSpec::parse("bogus:1"), ConfigError);
    CHECK_THROWS_AS(EtaSpec::parse("poisson"), ConfigError);
    CHECK_THROWS_AS(EtaSpec::parse("bernoulli:2"), ConfigError);

    nlohmann::json j;
    t.to_json(j);
    auto t2 = EtaSpec::from_json(j);
    CHECK(t2.table == t.table);
    nlohmann::json bad = {{"kind", "bernoulli"}, {"params", {{"q", 0.5}}}, {"extra", 1}};
    CHECK_THROWS_AS(EtaSpec::from_json(bad), ConfigError);
}

TEST_CASE("initial_actives") {
    RngStream rng(31, 0);
    auto one = EtaSpec::constant(1);
    for (int i = 0; i < 50; ++i) CHECK(initial_actives(one, false, rng) == 2);

    // conditioned Bernoulli is a point mass at 1
    auto b = EtaSpec::bernoulli(0.5);
    for (int i = 0; i < 50; ++i) CHECK(initial_actives(b, true, rng) == 1);

    CHECK_THROWS_AS(initial_actives(EtaSpec::constant(0), true, rng), ConfigError);

    auto pois = EtaSpec::poisson(2.0);
    const long long trials = 100000;
    double sum = 0.0;
    for (long long i = 0; i < trials; ++i) sum += double(initial_actives(pois, false, rng));
    double se = std::sqrt(2.0 / double(trials));
    CHECK(std::abs(sum / double(trials) - 3.0) < 3.0 * se);  // 1 + E(eta)
}
