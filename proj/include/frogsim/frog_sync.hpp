#pragma once

#include "frogsim/sim_params.hpp"

namespace frogsim {

// Reference per-particle synchronous simulator on the complete graph.
//
// Each synchronous step: every living active particle survives w.p. p
// (deaths resolved first), survivors each jump to a uniform other vertex,
// then first-visited vertices release their eta sleepers. Terminates when
// no active particle lives. p = 1 short-circuits to v_infty = m by the
// full-coverage convention.
//
// Particles at a vertex are exchangeable; only per-vertex active counts
// are stored. eta_v is sampled lazily on first visit.
TrialOutcome simulate_frog_sync(const SimParams& params);

}  // namespace frogsim
