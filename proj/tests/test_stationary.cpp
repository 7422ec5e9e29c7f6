#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"
#include "szg/selfcheck.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

using namespace szg;

namespace {
const GaussianRational kOne{make_rat(1)};
const GaussianRational kI = GaussianRational::i();

// the composed-phase Hessian block 2i I_{2n} (+) antidiagonal(-1)
GMatrix szego_block(int n) {
    size_t d = 2 * n + 2;
    GMatrix h(d, std::vector<GaussianRational>(d));
    for (size_t j = 0; j + 2 < d; ++j) h[j][j] = kI + kI;
    h[d - 2][d - 1] = GaussianRational(make_rat(-1));
    h[d - 1][d - 2] = GaussianRational(make_rat(-1));
    return h;
}
}  // namespace

TEST_CASE("hessian of a jet at a critical point") {
    // F = i (x^2 + y^2) / 2 has Hessian i I_2 and determinant -1
    ContextPtr ctx = ContextBuilder().real("x").real("y").build();
    Jet x = Jet::variable(ctx, 6, "x");
    Jet y = Jet::variable(ctx, 6, "y");
    Jet F = (x * x + y * y).scaled(kI * GaussianRational(make_rat(1, 2)));
    CriticalPointData data = hessian_at(F);
    CHECK(data.hessian[0][0] == kI);
    CHECK(data.hessian[1][1] == kI);
    CHECK(data.hessian[0][1].is_zero());
    CHECK(data.det == GaussianRational(make_rat(-1)));

    // x^3 passes the criticality gate but the Hessian is singular
    ContextPtr c1 = ContextBuilder().real("x").build();
    Jet t = Jet::variable(c1, 6, "x");
    CHECK_THROWS_AS(hessian_at(t * t * t), singular_hessian);
    // nonzero gradient is not a critical point
    CHECK_THROWS_AS(hessian_at(t + t * t), not_critical_point);
    CHECK_THROWS_AS(hessian_at(Jet::constant(c1, 6, kOne)), not_critical_point);
}

TEST_CASE("exact symmetric inversion") {
    // 2i I -> -(i/2) I
    GMatrix m{{kI + kI, GaussianRational()}, {GaussianRational(), kI + kI}};
    GMatrix inv = invert_symmetric(m);
    GaussianRational minus_half_i = -(kI * GaussianRational(make_rat(1, 2)));
    CHECK(inv[0][0] == minus_half_i);
    CHECK(inv[1][1] == minus_half_i);
    CHECK(inv[0][1].is_zero());

    // the antidiagonal pair is an involution
    GMatrix a{{GaussianRational(), GaussianRational(make_rat(-1))},
              {GaussianRational(make_rat(-1)), GaussianRational()}};
    CHECK(invert_symmetric(a) == a);

    // the Szego block inverts to (1/2i) I_{2n} (+) the same antidiagonal
    for (int n : {1, 2}) {
        GMatrix h = szego_block(n);
        GMatrix hinv = invert_symmetric(h);
        GaussianRational want = kOne / (kI + kI);
        for (size_t j = 0; j + 2 < h.size(); ++j) CHECK(hinv[j][j] == want);
        CHECK(hinv[h.size() - 2][h.size() - 1] == GaussianRational(make_rat(-1)));
        // inverse times matrix is the identity
        for (size_t i = 0; i < h.size(); ++i)
            for (size_t j = 0; j < h.size(); ++j) {
                GaussianRational acc;
                for (size_t k = 0; k < h.size(); ++k) acc += h[i][k] * hinv[k][j];
                CHECK(acc == (i == j ? kOne : GaussianRational()));
            }
    }

    GMatrix singular{{kOne, kOne}, {kOne, kOne}};
    CHECK_THROWS_AS(invert_symmetric(singular), singular_hessian);
}

TEST_CASE("prefactor branch") {
    // the structured Szego Hessian has the exact prefactor 2 pi^{n+1}
    for (int n : {1, 2, 3}) {
        CriticalPointData data;
        data.hessian = szego_block(n);
        data.det = exact_det(data.hessian);
        data.axes = {};
        complete_critical_data(data);
        CHECK(data.prefactor.exact);
        CHECK(data.prefactor.exact_value == PiScaled(GaussianRational(make_rat(2)), n + 1));
        // numeric and exact paths agree
        CHECK(std::abs(data.prefactor.numeric_value - data.prefactor.exact_value.to_complex()) <
              1e-9);
        // branch certificate: all eigenvalues of F''/i in the closed right half plane
        for (double arg : data.prefactor.eigenvalue_args)
            CHECK(std::abs(arg) <= std::numbers::pi / 2 + 1e-12);
    }

    // n = 1 block: eigenvalues of F''/i are {2, 2, i, -i}; their principal
    // roots multiply to a real value, so the numeric prefactor is real
    {
        PrefactorResult p = sp_prefactor(szego_block(1));
        std::vector<double> args = p.eigenvalue_args;
        std::sort(args.begin(), args.end());
        REQUIRE(args.size() == 4);
        CHECK(std::abs(args[0] + std::numbers::pi / 2) < 1e-12);
        CHECK(std::abs(args[1]) < 1e-12);
        CHECK(std::abs(args[2]) < 1e-12);
        CHECK(std::abs(args[3] - std::numbers::pi / 2) < 1e-12);
        CHECK(std::abs(p.numeric_value.imag()) < 1e-12);
    }

    // 1D Gaussian phase: numeric path, sqrt(2 pi) at k = 1
    ContextPtr c1 = ContextBuilder().real("x").build();
    Jet t = Jet::variable(c1, 6, "x");
    CriticalPointData d1 = hessian_at((t * t).scaled(kI * GaussianRational(make_rat(1, 2))));
    complete_critical_data(d1);
    CHECK(!d1.prefactor.exact);
    CHECK(std::abs(d1.prefactor.numeric_value - std::sqrt(2 * std::numbers::pi)) < 1e-12);
    CHECK(std::abs(d1.prefactor.at_k(10.0) - std::sqrt(2 * std::numbers::pi / 10.0)) < 1e-12);
}

TEST_CASE("stationary phase terms") {
    ContextPtr c1 = ContextBuilder().real("x").build();
    Jet x = Jet::variable(c1, 6, "x");
    Jet F = (x * x).scaled(kI * GaussianRational(make_rat(1, 2)));

    // P_0 u = u(0) regardless of the phase
    Jet u0 = Jet::constant(c1, 6, GaussianRational(make_rat(7, 3))) + x;
    CHECK(sp_terms(F, u0, 0)[0] == GaussianRational(make_rat(7, 3)));

    // u = x^2 gives P_1 = 1 (the Gaussian moment)
    std::vector<GaussianRational> p = sp_terms(F, x * x, 1);
    CHECK(p[0].is_zero());
    CHECK(p[1] == kOne);

    // third-order remainder is empty for a quadratic phase
    CHECK((F - F.degree_at_most(2)).is_zero());

    // insufficient caps are rejected
    Jet Flow = F.truncated(5);
    CHECK_THROWS_AS(sp_terms(Flow, x * x, 1), truncation_unsound);
}
