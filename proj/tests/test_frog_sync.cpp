#include <doctest.h>

#include <cmath>
#include <vector>

#include "frogsim/frog_sync.hpp"
#include "frogsim/oracle.hpp"

using namespace frogsim;

TEST_CASE("degenerate instances") {
    SimParams params;
    params.eta = EtaSpec::constant(1);

    params.m = 5;
    params.p = 0.0;
    CHECK(simulate_frog_sync(params).v_infty == 1);  // everyone dies before moving

    params.m = 1;
    params.p = 0.8;
    CHECK(simulate_frog_sync(params).v_infty == 1);  // no neighbors

    params.m = 7;
    params.p = 1.0;
    CHECK(simulate_frog_sync(params).v_infty == 7);  // convention short-circuit
}

TEST_CASE("per-trial invariants") {
    SimParams params;
    params.m = 12;
    params.p = 0.6;
    params.eta = EtaSpec::bernoulli(0.5);
    params.seed_master = 71;
    for (uint64_t t = 0; t < 500; ++t) {
        params.seed_stream = t;
        auto out = simulate_frog_sync(params);
        REQUIRE(!out.capped);
        CHECK(out.v_infty >= 1);
        CHECK(out.v_infty <= 12);
        if (out.v_infty > 1) CHECK(out.total_steps >= out.v_infty - 1);
    }
}

TEST_CASE("m=3 law matches the hand DP within TV 0.02") {
    SimParams params;
    params.m = 3;
    params.p = 0.5;
    params.eta = EtaSpec::constant(1);
    params.seed_master = 73;
    const long long trials = 100000;
    std::vector<double> emp(4, 0.0);
    for (long long t = 0; t < trials; ++t) {
        params.seed_stream = uint64_t(t);
        emp[size_t(simulate_frog_sync(params).v_infty)] += 1.0 / double(trials);
    }
    const double exact[] = {1.0 / 4.0, 7.0 / 27.0, 53.0 / 108.0};
    double tv = 0.0;
    for (int v = 1; v <= 3; ++v) tv += std::abs(emp[size_t(v)] - exact[v - 1]);
    CHECK(tv / 2.0 <= 0.02);
}

TEST_CASE("synchronous law agrees with the exact oracle at m=5") {
    SimParams params;
    params.m = 5;
    params.p = 0.6;
    params.eta = EtaSpec::bernoulli(0.5);
    params.seed_master = 79;
    auto exact = exact_vinf_distribution(5, 0.6, params.eta);
    const long long trials = 100000;
    std::vector<double> emp(6, 0.0);
    for (long long t = 0; t < trials; ++t) {
        params.seed_stream = uint64_t(t);
        emp[size_t(simulate_frog_sync(params).v_infty)] += 1.0 / double(trials);
    }
    double tv = 0.0;
    for (long long v = 1; v <= 5; ++v) tv += std::abs(emp[size_t(v)] - exact.mass(v));
    CHECK(tv / 2.0 <= 0.02);
}
