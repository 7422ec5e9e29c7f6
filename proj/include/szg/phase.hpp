#pragma once

#include "szg/geometry.hpp"

namespace szg {

// phi = f * (-s + g) with g free of the distinguished variable s and
// f(0) = 1; Phi = -s + g is the prepared phase the composition step uses.
struct Factorization {
    Jet f;
    Jet g;
    Jet Phi;
};

// The almost-analytic polarization of r in the doubled ambient variables:
//   phi0(z, wb) = (1/i) sum_{|a|+|b| <= N} d^{a+b} r(0) / (a! b!) z^a wb^b.
// Holomorphic in z, antiholomorphic in w by construction.
Jet ambient_phase(const ModelSurface& s);

// Restriction of the ambient phase to the surface chart on both points.
// Asserts the diagonal identities, Hermitian symmetry, the quadratic model
// up to degree 4, the quartic transfer to R, and T^2 phi(0,0) = 0.
Jet restrict_phase(const ModelSurface& s, const Jet& phase_ambient, const GeometryReport& geom);

// Malgrange preparation of the restricted phase. Asserts f(x,x) = 1,
// g(x',x) = s, f = 1 + O(degree 3), reconstruction, and T^2 Phi(0,0) = 0.
Factorization malgrange_factor(const ModelSurface& s, const Jet& phi, const GeometryReport& geom);

struct PhaseResult {
    Jet phi_ambient;
    Jet phi;
    Factorization fact;
};
PhaseResult build_phase(const ModelSurface& s, const GeometryReport& geom);

// Samples Im phi on random real points of the doubled chart inside a ball;
// returns the minimum sampled value (the truncated-jet positivity oracle).
double min_im_phi_on_samples(const Jet& phi, double radius, int count, unsigned seed);

// The Reeb field acting on the first point of the doubled context.
VectorFieldJet reeb_on_first_point(const VectorFieldJet& T, const SurfaceContexts& ctxs);

}  // namespace szg
