#include "frogsim/frog_sync.hpp"

#include <vector>

namespace frogsim {

TrialOutcome simulate_frog_sync(const SimParams& params) {
    params.validate();
    TrialOutcome out;
    const long long m = params.m;
    if (params.p >= 1.0) {
        // Full-coverage convention: the process never ends, every vertex
        // is eventually visited.
        out.v_infty = m;
        return out;
    }
    RngStream rng = params.make_stream();
    if (m == 1) return out;  // no neighbors to jump to

    std::vector<long long> active(size_t(m), 0);
    std::vector<uint8_t> seen(size_t(m), 0);
    seen[0] = 1;
    active[0] = initial_actives(params.eta, params.conditional_root, rng);
    long long alive = active[0];
    long long visited = 1;

    const long long cap = round_cap(m, params.p);
    std::vector<long long> arrivals(size_t(m), 0);
    std::vector<long long> touched;  // vertices with arrivals this step

    while (alive > 0) {
        if (out.rounds_elapsed >= cap) {
            out.capped = true;
            break;
        }
        ++out.rounds_elapsed;
        touched.clear();
        long long next_alive = 0;
        for (long long v = 0; v < m; ++v) {
            long long c = active[size_t(v)];
            if (c == 0) continue;
            active[size_t(v)] = 0;
            // Deaths first, then all survivors jump.
            long long survivors = 0;
            for (long long i = 0; i < c; ++i)
                if (rng.bernoulli(params.p)) ++survivors;
            out.total_steps += survivors;
            for (long long i = 0; i < survivors; ++i) {
                long long u = (long long)rng.uniform_below(uint64_t(m - 1));
                long long dest = u < v ? u : u + 1;
                if (arrivals[size_t(dest)]++ == 0) touched.push_back(dest);
            }
        }
        // Activations: all sleepers at a first-visited vertex wake together.
        for (long long dest : touched) {
            long long c = arrivals[size_t(dest)];
            arrivals[size_t(dest)] = 0;
            if (!seen[size_t(dest)]) {
                seen[size_t(dest)] = 1;
                ++visited;
                c += params.eta.sample(rng);
            }
            active[size_t(dest)] = c;
            next_alive += c;
        }
        alive = next_alive;
    }
    out.v_infty = visited;
    return out;
}

}  // namespace frogsim
