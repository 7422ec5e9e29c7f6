#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"
#include "szg/selfcheck.hpp"

using namespace szg;

namespace {
const GaussianRational kOne{make_rat(1)};
const GaussianRational kI = GaussianRational::i();

ContextPtr zctx() { return ContextBuilder().pair("z", "zb").build(); }
}  // namespace

TEST_CASE("ring operations truncate at the cap") {
    ContextPtr ctx = zctx();
    Jet one = Jet::constant(ctx, 3, kOne);
    Jet z = Jet::variable(ctx, 3, "z");
    Jet prod = (one + z) * (one - z);
    CHECK(prod == one - z * z);  // 1 - z^2

    // (z + zb)^3 at cap 2 vanishes entirely
    Jet sum2 = Jet::variable(ctx, 2, "z") + Jet::variable(ctx, 2, "zb");
    CHECK((sum2 * sum2 * sum2).is_zero());

    Jet zb = Jet::variable(ctx, 3, "zb");
    Jet real_a = z * zb + one;
    Jet real_b = z * zb.scaled(GaussianRational(make_rat(2)));
    CHECK(real_a.is_real());
    CHECK((real_a * (real_b + real_b.conjugated())).is_real());

    ContextPtr other = ContextBuilder().pair("w", "wb").build();
    CHECK_THROWS_AS(z + Jet::variable(other, 3, "w"), usage_error);
}

TEST_CASE("formal derivatives") {
    ContextPtr ctx = zctx();
    Jet z = Jet::variable(ctx, 4, "z");
    Jet zb = Jet::variable(ctx, 4, "zb");
    Jet f = z * z * zb;
    CHECK(f.derive(ctx->index_of("z")) == (z * zb).scaled(GaussianRational(make_rat(2))));

    Jet g = z * z * zb * zb;
    GaussianRational d4 = g.derive(0).derive(0).derive(1).derive(1).constant_term();
    CHECK(d4 == GaussianRational(make_rat(4)));  // d^2_z d^2_zb (z^2 zb^2) = 4

    // cap accounting: each derivative costs one degree
    CHECK(f.derive(0).cap() == 3);
}

TEST_CASE("substitution composes exactly modulo the cap") {
    ContextPtr ctx = zctx();
    ContextPtr wctx = ContextBuilder().pair("w", "wb").build();
    Jet one = Jet::constant(ctx, 3, kOne);
    Jet geom = (one - Jet::variable(ctx, 3, "z")).reciprocal();  // 1 + z + z^2 + z^3

    Jet w = Jet::variable(wctx, 3, "w");
    std::vector<Jet> images{w + w * w, Jet(wctx, 3)};
    Jet composed = geom.substituted(images, wctx);

    Jet expected = Jet::constant(wctx, 3, kOne) + w +
                   (w * w).scaled(GaussianRational(make_rat(2))) +
                   (w * w * w).scaled(GaussianRational(make_rat(3)));
    CHECK(composed == expected);  // 1 + w + 2w^2 + 3w^3

    // identity substitution
    std::vector<Jet> id{Jet::variable(ctx, 3, "z"), Jet::variable(ctx, 3, "zb")};
    CHECK(geom.substituted(id, ctx) == geom);

    // declared base-point shift: sigma^2 at sigma = 1 + tau
    ContextPtr sctx = ContextBuilder().real("sigma").build();
    ContextPtr tctx = ContextBuilder().real("tau").build();
    Jet sigma = Jet::variable(sctx, 3, "sigma");
    Jet tau = Jet::variable(tctx, 3, "tau");
    std::vector<Jet> shift{Jet::constant(tctx, 3, kOne) + tau};
    Jet sq = (sigma * sigma).substituted(shift, tctx, {kOne});
    CHECK(sq == Jet::constant(tctx, 3, kOne) + tau.scaled(GaussianRational(make_rat(2))) + tau * tau);

    // the same substitution without declaring the offset is an error
    CHECK_THROWS_AS((sigma * sigma).substituted(shift, tctx), base_point_error);
}

TEST_CASE("reciprocal") {
    ContextPtr ctx = zctx();
    Jet one = Jet::constant(ctx, 5, kOne);
    Jet z = Jet::variable(ctx, 5, "z");
    Jet r = (one - z).reciprocal();
    Jet geometric(ctx, 5);
    Jet power = one;
    for (int k = 0; k <= 5; ++k) {
        geometric += power;
        power = power * z;
    }
    CHECK(r == geometric);
    CHECK(Jet::constant(ctx, 5, GaussianRational(make_rat(2))).reciprocal() ==
          Jet::constant(ctx, 5, GaussianRational(make_rat(1, 2))));
    CHECK_THROWS_AS(z.reciprocal(), non_invertible);
}

TEST_CASE("jet linear solve") {
    ContextPtr ctx = zctx();
    Jet one = Jet::constant(ctx, 4, kOne);
    Jet z = Jet::variable(ctx, 4, "z");

    // identity matrix returns the right-hand side
    std::vector<std::vector<Jet>> id{{one, Jet(ctx, 4)}, {Jet(ctx, 4), one}};
    std::vector<Jet> rhs{z, one + z};
    std::vector<Jet> sol = linear_solve(id, rhs);
    CHECK(sol[0] == z);
    CHECK(sol[1] == one + z);

    // (1 - z) u = 1
    std::vector<std::vector<Jet>> m{{one - z}};
    std::vector<Jet> s = linear_solve(m, {one});
    CHECK(s[0] == (one - z).reciprocal());

    std::vector<std::vector<Jet>> bad{{z}};
    CHECK_THROWS_AS(linear_solve(bad, {one}), degenerate_frame);
}

TEST_CASE("implicit solve") {
    // r = 2x + |z|^2 in the mixed context solves to R = -|z|^2 / 2
    ContextPtr ctx = ContextBuilder().pair("z", "zb").real("x").build();
    Jet z = Jet::variable(ctx, 6, "z");
    Jet zb = Jet::variable(ctx, 6, "zb");
    Jet x = Jet::variable(ctx, 6, "x");
    Jet r = x.scaled(GaussianRational(make_rat(2))) + z * zb;
    Jet R = implicit_solve(r, ctx->index_of("x"));
    CHECK(R == (z * zb).scaled(GaussianRational(make_rat(-1, 2))));

    // with a quartic: r = 2x + |z|^2 + c |z|^4, exact solve
    GaussianRational c(make_rat(5, 7));
    Jet rq = r + (z * zb * z * zb).scaled(c);
    Jet Rq = implicit_solve(rq, ctx->index_of("x"));
    CHECK(Rq == (z * zb + (z * zb * z * zb).scaled(c)).scaled(GaussianRational(make_rat(-1, 2))));

    CHECK_THROWS_AS(implicit_solve(x * x, ctx->index_of("x")), non_graph_surface);
}

TEST_CASE("weierstrass division") {
    ContextPtr ctx = ContextBuilder().real("s").real("st").build();
    Jet s = Jet::variable(ctx, 6, "s");
    Jet st = Jet::variable(ctx, 6, "st");
    size_t s_idx = ctx->index_of("s");

    // phi = -s + st: already prepared
    WeierstrassFactors w1 = weierstrass_divide(st - s, s_idx);
    CHECK(w1.f == Jet::constant(ctx, 5, kOne));
    CHECK(w1.g == st);

    // phi = -s + st + s st: f = 1 - st, g = st / (1 - st)
    WeierstrassFactors w2 = weierstrass_divide(st - s + s * st, s_idx);
    CHECK(w2.f == Jet::constant(ctx, 6, kOne) - st);
    Jet geo = st * (Jet::constant(ctx, 6, kOne) - st).reciprocal();
    CHECK(w2.g == geo);
    CHECK(w2.f * (w2.g - s) == st - s + s * st);

    CHECK_THROWS_AS(weierstrass_divide(s * s, s_idx), preparation_failure);
}

TEST_CASE("randomized jet properties") {
    CHECK(check_jets(20260811u, 30).cases > 0);
}
