#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>

namespace frogsim {

// Error raised for invalid user-supplied parameters (bad pmf, p out of
// range, malformed config). The CLI maps it to exit code 2.
struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Error raised when an operation is asked for a state outside its domain
// (e.g. visited count larger than the graph).
struct DomainError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Counter-free splittable random stream.
//
// The state is derived from (master_seed, stream_index) by the splitmix64
// finalizer and advanced with the splitmix64 increment, so distinct
// (seed, index) pairs give independent streams and identical pairs replay
// bit-identically on every platform. A stream is a value: create one per
// trial, never share a single stream between threads.
class RngStream {
public:
    RngStream(uint64_t master_seed, uint64_t stream_index)
        : state_(mix64(master_seed ^ mix64(stream_index + kGolden))) {}

    // Derives a fresh 64-bit master seed for a sub-experiment (e.g. one
    // sweep point) so that its trial streams do not collide with another's.
    static uint64_t derive_seed(uint64_t master_seed, uint64_t index) {
        return mix64(master_seed ^ mix64(index + kGolden));
    }

    uint64_t next_u64() {
        state_ += kGolden;
        return mix64(state_);
    }

    // Uniform on [0,1) with 53 random bits.
    double next_double() { return double(next_u64() >> 11) * 0x1.0p-53; }

    bool bernoulli(double p) { return next_double() < p; }

    // Uniform on {0,...,n-1}, unbiased (Lemire's multiply-with-rejection).
    uint64_t uniform_below(uint64_t n) {
        __uint128_t m = __uint128_t(next_u64()) * n;
        auto lo = uint64_t(m);
        if (lo < n) {
            const uint64_t t = (0 - n) % n;
            while (lo < t) {
                m = __uint128_t(next_u64()) * n;
                lo = uint64_t(m);
            }
        }
        return uint64_t(m >> 64);
    }

private:
    static constexpr uint64_t kGolden = 0x9E3779B97F4A7C15ULL;

    static uint64_t mix64(uint64_t z) {
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    uint64_t state_;
};

// Geo_0(1-p) lifetime from a fixed uniform: L = floor(ln(1-u)/ln p).
// Split out so the inversion formula is testable without a stream.
inline long long lifetime_from_uniform(double p, double u) {
    if (p <= 0.0) return 0;
    if (u <= 0.0) return 0;
    return static_cast<long long>(std::floor(std::log1p(-u) / std::log(p)));
}

// Whole remaining lifetime of one particle, Geo_0(1-p): P(L >= k) = p^k.
// Used where an aggregate lifetime is needed in one draw; simulators use
// per-round Bernoulli survival checks instead.
inline long long sample_lifetime(double p, RngStream& rng) {
    if (p >= 1.0) throw ConfigError("sample_lifetime: p must be < 1");
    if (p < 0.0) throw ConfigError("sample_lifetime: p must be >= 0");
    if (p == 0.0) return 0;
    return lifetime_from_uniform(p, rng.next_double());
}

}  // namespace frogsim
