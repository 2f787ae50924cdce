#include <doctest.h>

#include <cmath>
#include <vector>

#include "frogsim/rng.hpp"

using namespace frogsim;

TEST_CASE("identical (seed, index) replays bit-identically") {
    RngStream a(42, 7), b(42, 7);
    for (int i = 0; i < 1000; ++i) CHECK(a.next_u64() == b.next_u64());
}

TEST_CASE("distinct stream indices give different sequences") {
    RngStream a(42, 0), b(42, 1);
    int equal = 0;
    for (int i = 0; i < 1000; ++i)
        if (a.next_u64() == b.next_u64()) ++equal;
    CHECK(equal == 0);
}

TEST_CASE("uniform_below stays in range and covers small supports") {
    RngStream rng(1, 0);
    std::vector<int> counts(5, 0);
    for (int i = 0; i < 50000; ++i) {
        auto v = rng.uniform_below(5);
        REQUIRE(v < 5);
        ++counts[size_t(v)];
    }
    for (int c : counts) CHECK(std::abs(c - 10000) < 500);  // ~5 sigma
}

TEST_CASE("lifetime inversion formula") {
    CHECK(lifetime_from_uniform(0.9, 0.5) == 6);  // floor(ln 0.5 / ln 0.9)
    CHECK(lifetime_from_uniform(0.5, 0.0) == 0);
    CHECK(lifetime_from_uniform(0.0, 0.3) == 0);
}

TEST_CASE("sample_lifetime degenerate and invalid p") {
    RngStream rng(3, 0);
    for (int i = 0; i < 100; ++i) CHECK(sample_lifetime(0.0, rng) == 0);
    CHECK_THROWS_AS(sample_lifetime(1.0, rng), ConfigError);
    CHECK_THROWS_AS(sample_lifetime(-0.1, rng), ConfigError);
}

TEST_CASE("sample_lifetime mean at p = 0.5") {
    RngStream rng(5, 0);
    const long long trials = 100000;
    double sum = 0.0;
    for (long long i = 0; i < trials; ++i) sum += double(sample_lifetime(0.5, rng));
    // Geo_0 mean p/(1-p) = 1, sd = sqrt(2)
    const double se = std::sqrt(2.0 / double(trials));
    CHECK(std::abs(sum / double(trials) - 1.0) < 3.0 * se);
}

TEST_CASE("sample_lifetime survival function P(L >= k) = p^k") {
    const double p = 0.7;
    RngStream rng(6, 0);
    const long long trials = 100000;
    long long at_least[6] = {0};
    for (long long i = 0; i < trials; ++i) {
        long long L = sample_lifetime(p, rng);
        for (int k = 1; k <= 5; ++k)
            if (L >= k) ++at_least[k];
    }
    for (int k : {1, 2, 5}) {
        double expect = std::pow(p, k);
        double se = std::sqrt(expect * (1 - expect) / double(trials));
        CHECK(std::abs(double(at_least[k]) / double(trials) - expect) < 4.0 * se);
    }
}
