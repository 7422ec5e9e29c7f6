#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"
#include "szg/selfcheck.hpp"

using namespace szg;

TEST_CASE("gaussian rational field operations") {
    GaussianRational one_plus_i(make_rat(1), make_rat(1));
    GaussianRational one_minus_i(make_rat(1), make_rat(-1));
    CHECK(one_plus_i * one_minus_i == GaussianRational(make_rat(2)));  // |1+i|^2

    GaussianRational two_i(make_rat(0), make_rat(2));
    CHECK(two_i * two_i == GaussianRational(make_rat(-4)));  // i^2 = -1

    GaussianRational inv = GaussianRational(make_rat(1)) / two_i;
    CHECK(inv == GaussianRational(make_rat(0), make_rat(-1, 2)));  // 1/(2i) = -i/2

    CHECK(one_plus_i.conj() == one_minus_i);
    CHECK_THROWS_AS(one_plus_i / GaussianRational(), arithmetic_error);
}

TEST_CASE("pi-graded scalars") {
    PiScaled half_pi_m2(GaussianRational(make_rat(1, 2)), -2);
    PiScaled two_pi_2(GaussianRational(make_rat(2)), 2);
    CHECK(half_pi_m2 * two_pi_2 == PiScaled(GaussianRational(make_rat(1)), 0));

    // det(Hess/2 pi i) for n = 1 equals (1/4) pi^-4: the inverse square of the
    // 2 pi^2 prefactor
    PiScaled det_over(GaussianRational(make_rat(1, 4)), -4);
    PiScaled pref(GaussianRational(make_rat(2)), 2);
    CHECK(det_over * pref * pref == PiScaled(GaussianRational(make_rat(1)), 0));

    CHECK_THROWS_AS(half_pi_m2 + PiScaled(GaussianRational(make_rat(1)), 0), grading_error);
    // zero is addable across grades
    CHECK(half_pi_m2 + PiScaled() == half_pi_m2);
}

TEST_CASE("exact square roots take the principal branch") {
    CHECK(exact_sqrt(PiScaled(GaussianRational(make_rat(1, 4)), -4)) ==
          PiScaled(GaussianRational(make_rat(1, 2)), -2));
    CHECK(exact_sqrt(GaussianRational(make_rat(-4))) == GaussianRational(make_rat(0), make_rat(2)));
    CHECK_THROWS_AS(exact_sqrt(GaussianRational(make_rat(2))), inexact_root);
    CHECK_THROWS_AS(exact_sqrt(PiScaled(GaussianRational(make_rat(1)), 3)), inexact_root);

    // (3+4i) = (2+i)^2, principal root has positive real part
    GaussianRational target(make_rat(3), make_rat(4));
    CHECK(exact_sqrt(target) == GaussianRational(make_rat(2), make_rat(1)));
    CHECK(exact_sqrt(target * target.conj()) == GaussianRational(make_rat(5)));
}

TEST_CASE("randomized field and grading axioms") {
    CHECK(check_scalars(20260811u, 40).cases > 0);
}
