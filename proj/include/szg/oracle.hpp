#pragma once

#include <complex>
#include <functional>
#include <vector>

#include "szg/stationary.hpp"

namespace szg {

using Cplx = std::complex<double>;
using RealFn1 = std::function<Cplx(double)>;
using RealFn2 = std::function<Cplx(double, double)>;

struct QuadratureResult {
    Cplx value;
    double error_estimate = 0.0;
    long evaluations = 0;
};

// Adaptive Gauss-Kronrod 15(7) on [a, b]; subdivides until the summed cell
// error estimate is below tol or the evaluation budget runs out.
QuadratureResult quad_adaptive(const RealFn1& f, double a, double b, double tol,
                               long budget = 2'000'000);

// Same, with the initial subdivision seeded at the given breakpoints (used
// when the integrand has known narrow features an unseeded rule could miss).
QuadratureResult quad_adaptive_seeded(const RealFn1& f, const std::vector<double>& breakpoints,
                                      double tol, long budget = 2'000'000);

// Iterated 2D adaptive quadrature on a box.
QuadratureResult quad_adaptive_2d(const RealFn2& f, double ax, double bx, double ay, double by,
                                  double tol, long budget = 20'000'000);

// Oscillatory integral of e^{ikF} u; Im F >= 0 is the caller's contract.
QuadratureResult quad_oscillatory(const RealFn1& F, const RealFn1& u, double k, double a, double b,
                                  double tol);
QuadratureResult quad_oscillatory_2d(const RealFn2& F, const RealFn2& u, double k, double ax,
                                     double bx, double ay, double by, double tol);

// Regularized parameter integral P.V. int_0^infty e^{-tx} t^m dt for
// Re x >= 0, x != 0:
//   m >= 0:  m! x^{-m-1}
//   m <  0:  ((-1)^m / (-m-1)!) x^{-m-1} (log x + gamma - sum_{j=1}^{-m-1} 1/j)
// with the principal log (the finite-part value; the sum is empty at m = -1).
Cplx gamma_pv(int m, Cplx x);

constexpr double kEulerGamma = 0.57721566490153286060651209008240243;

// Distributional reduction check: pairs
//   int_0^infty e^{it G F} t^m dt   against   int_0^infty e^{it F} t^m / G^{m+1} dt
// through their epsilon-regularizations against a test function and
// Richardson-extrapolates the difference to epsilon -> 0.
struct ReductionReport {
    std::vector<double> epsilons;
    std::vector<Cplx> differences;
    double extrapolated_abs = 0.0;
};
ReductionReport osc_reduction_check(const RealFn1& F, const RealFn1& G, int m,
                                    const RealFn1& test_fn, std::vector<double> epsilons,
                                    double a, double b, double tol = 1e-9);

// |quadrature(k) - prefactor(k) sum_{j<N} k^{-j} P_j| over the given k,
// with a log-log least squares slope. The numeric phase and amplitude may be
// supplied; by default they are the jets themselves under a smooth cutoff
// (plateau radius 2, support radius 4). Real-variable contexts only, <= 2 dims.
struct DecayReport {
    std::vector<double> ks;
    std::vector<double> errors;
    double slope = 0.0;
};
DecayReport sp_numeric_check(const Jet& F, const Jet& u, const std::vector<double>& ks, int N,
                             double tol = 1e-11);

// C-infinity cutoff: 1 on [0, plateau], 0 beyond support.
double smooth_cutoff(double r, double plateau = 2.0, double support = 4.0);

}  // namespace szg
