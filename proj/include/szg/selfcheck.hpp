#pragma once

#include <random>
#include <string>

#include "szg/surface.hpp"

namespace szg {

// Randomized and fixed property suites behind `check`. Each function throws
// szg::error on the first failing property; randomized suites include a
// minimal reproduction (the surface spec JSON or the generator inputs) in the
// message. samples = 0 makes the randomized parts vacuous.
struct CheckStats {
    int cases = 0;
};

CheckStats check_scalars(unsigned seed, int samples);
CheckStats check_jets(unsigned seed, int samples);
CheckStats check_exterior(unsigned seed, int samples);
CheckStats check_geometry(unsigned seed, int samples);
CheckStats check_phase(unsigned seed, int samples);
CheckStats check_szego(unsigned seed, int samples);
CheckStats check_oracle();            // both oracle suites
CheckStats check_oracle_integrals();  // gamma_pv and the reduction lemma
CheckStats check_oracle_sp();         // stationary-phase decay and moments

// Random jets for the algebra suites.
Jet random_jet(const ContextPtr& ctx, int cap, std::mt19937_64& rng, int terms = 6,
               bool nonzero_constant = false);

// Three-route agreement plus equality with R_scal/4 for one surface; returns
// the report so callers can inspect it.
SzegoReport verify_main_identity(const SurfaceSpec& spec);

}  // namespace szg
