#pragma once

#include "szg/phase.hpp"

namespace szg {

// A1(0,0) computed three independent ways, plus the certificates the
// composition step produces on the way.
struct SzegoReport {
    int n = 0;
    PiScaled A0;  // always 1/(2 pi^{n+1})
    PiScaled A1_route_sp;
    PiScaled A1_route_closed;
    PiScaled A1_route_curv;
    GaussianRational r_scal0;
    GaussianRational lambda_lap0;
    GaussianRational r_quartic_trace0;
    GaussianRational hessian_det;
    PiScaled prefactor;
    bool agree_sp_closed = false;
    bool agree_closed_curv = false;
    bool agree_sp_curv = false;

    bool agreement() const { return agree_sp_closed && agree_closed_curv && agree_sp_curv; }
};

// F(w, sigma) = Phi(0, w) + sigma Phi(w, 0) expanded at (w, sigma) = (0, 1)
// in the composed context (w, wb, sw, tau), sigma = 1 + tau. Asserts
// F(0) = 0 and dF(0) = 0.
Jet compose_phase(const Factorization& fact, const SurfaceContexts& ctxs);

// Hessian certificates of the composed phase: the matrix is exactly
// 2i I_{2n} (+) [[0,-1],[-1,0]], det = (-1)^{n+1} 2^{2n}, prefactor exactly
// 2 pi^{n+1}. Any mismatch is a hard failure.
CriticalPointData verify_critical_data(const Jet& F, int n);

// Stationary-phase route: S = 2 pi^{n+1} kappa^2 P1 with
//   P1 = sum_{mu<=2} (1/i) L^{mu+1}(G^mu lambda (1+tau)^n)(0,1) / (mu! (mu+1)!),
//   L  = i sum d^2/dw_j dwb_j + d^2/dsw dtau,  kappa = 1/(2 pi^{n+1}),
// then A1 = -S (the A1 = S + 2 A1 self-consistency solved for A1).
// Cross-checks the generic enumeration, the halved Hessian-inverse operator,
// and B0 = A0.
PiScaled route_stationary(const Jet& F, const Jet& lambda, const SurfaceContexts& ctxs,
                          const CriticalPointData& data);

// A1 = -(1/(2 pi^{n+1})) [ sum d^2 lambda / dz dzb (0) + sum d^4 R (0) ]
PiScaled route_closed_form(const GeometryReport& geom, int n);

// A1 = R_scal(0) / (4 pi^{n+1})
PiScaled route_curvature(const GeometryReport& geom, int n);

// Everything one pipeline run produces, for reporting and debugging.
struct PipelineArtifacts {
    GeometryReport geom;
    PhaseResult phase;
    Jet composed;  // F(w, sigma) at (0, 1)
    SzegoReport report;
};
PipelineArtifacts run_pipeline(const ModelSurface& s);

// geometry -> phase -> factorization -> three routes, with stage labels on
// failures. Agreement flags are exact comparisons.
SzegoReport full_report(const ModelSurface& s);

// Convenience: the constant A0 = 1/(2 pi^{n+1}).
PiScaled leading_coefficient(int n);

}  // namespace szg
