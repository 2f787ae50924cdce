#pragma once

#include <cmath>
#include <cstdint>

#include "frogsim/eta.hpp"

namespace frogsim {

// One experiment point. m is the total vertex count of the complete graph;
// statements written on K_{n+1} map to m = n + 1 (jump denominator m - 1).
struct SimParams {
    long long m = 1;
    double p = 0.0;
    EtaSpec eta;
    uint64_t seed_master = 0;
    uint64_t seed_stream = 0;
    bool conditional_root = false;

    void validate() const {
        if (m < 1) throw ConfigError("m must be >= 1");
        if (!(p >= 0.0 && p <= 1.0)) throw ConfigError("p must lie in [0,1]");
        eta.validate();
    }

    RngStream make_stream() const { return RngStream(seed_master, seed_stream); }
};

struct TrialOutcome {
    long long v_infty = 1;
    long long total_steps = 0;     // moves actually taken by particles
    long long rounds_elapsed = 0;  // frog_sync: synchronous steps; aux: rounds (= R)
    bool capped = false;
};

// Safety cap against misconfigured runs; never reached at sane settings.
inline long long round_cap(long long m, double p) {
    double cap = 64.0 * double(m) * (std::log(double(m) + 1.0) + 10.0) / (1.0 - p);
    return cap > 9e18 ? (long long)9e18 : (long long)cap;
}

}  // namespace frogsim
