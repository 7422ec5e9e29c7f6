#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"
#include "szg/selfcheck.hpp"

#include <cmath>
#include <numbers>

#include "szg/oracle.hpp"

using namespace szg;

TEST_CASE("adaptive quadrature on Gaussians") {
    const double pi = std::numbers::pi;
    double k = 10.0;
    QuadratureResult g =
        quad_adaptive([&](double x) { return Cplx(std::exp(-k * x * x / 2)); }, -8, 8, 1e-12);
    CHECK(std::abs(g.value - std::sqrt(2 * pi / k)) < 1e-10);
    CHECK(g.evaluations > 0);

    QuadratureResult m = quad_adaptive(
        [&](double x) { return Cplx(x * x * std::exp(-k * x * x / 2)); }, -8, 8, 1e-12);
    CHECK(std::abs(m.value - std::sqrt(2 * pi / k) / k) < 1e-10);

    QuadratureResult g2 = quad_adaptive_2d(
        [&](double x, double y) { return Cplx(std::exp(-k * (x * x + y * y) / 2)); }, -8, 8, -8, 8,
        1e-11);
    CHECK(std::abs(g2.value - g.value * g.value) < 1e-9);

    // oscillatory wrapper: int e^{ikF} u with F = i x^2 / 2
    QuadratureResult osc = quad_oscillatory([](double x) { return Cplx(0.0, x * x / 2); },
                                            [](double) { return Cplx(1.0); }, k, -8, 8, 1e-12);
    CHECK(std::abs(osc.value - std::sqrt(2 * pi / k)) < 1e-10);

    // an impossible tolerance exhausts the budget and reports oracle failure
    CHECK_THROWS_AS(quad_adaptive([](double x) { return Cplx(std::cos(100.0 * x)); }, -8, 8, 1e-300,
                                  2000),
                    oracle_failure);
}

TEST_CASE("regularized gamma integrals") {
    CHECK(std::abs(gamma_pv(0, Cplx(1, 0)) - 1.0) < 1e-15);
    CHECK(std::abs(gamma_pv(2, Cplx(2, 0)) - 0.25) < 1e-15);  // 2!/2^3
    CHECK(std::abs(gamma_pv(-1, Cplx(1, 0)) - (-kEulerGamma)) < 1e-15);
    CHECK(std::abs(gamma_pv(-1, Cplx(2, 0)) - (-std::log(2.0) - kEulerGamma)) < 1e-15);
    CHECK_THROWS_AS(gamma_pv(0, Cplx(0, 0)), usage_error);

    // principal log on the imaginary axis boundary
    Cplx v = gamma_pv(-1, Cplx(0, 1));
    CHECK(std::abs(v - (-(std::log(1.0) + Cplx(0, std::numbers::pi / 2)) - kEulerGamma)) < 1e-14);
}

TEST_CASE("reduction lemma trivial case") {
    RealFn1 gaussian = [](double x) { return Cplx(std::exp(-x * x)); };
    RealFn1 Fx = [](double x) { return Cplx(x); };
    RealFn1 Gone = [](double) { return Cplx(1.0); };
    ReductionReport r =
        osc_reduction_check(Fx, Gone, 0, gaussian, {1e-1, 1e-2, 1e-3, 1e-4}, -8, 8);
    for (Cplx d : r.differences) CHECK(std::abs(d) < 1e-12);
    CHECK(r.extrapolated_abs < 1e-12);
}

TEST_CASE("oracle suites") {
    CHECK(check_oracle_integrals().cases > 0);
    CHECK(check_oracle_sp().cases > 0);
}
