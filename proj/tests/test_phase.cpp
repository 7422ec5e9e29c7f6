#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"
#include "szg/selfcheck.hpp"

using namespace szg;

namespace {
const GaussianRational kOne{make_rat(1)};
const GaussianRational kI = GaussianRational::i();
const GaussianRational kHalfI = kI * GaussianRational(make_rat(1, 2));
}  // namespace

TEST_CASE("ambient phase of the Heisenberg surface") {
    ModelSurface s = ModelSurface::heisenberg(1, 6);
    Jet phase = ambient_phase(s);
    const ContextPtr& ctx = phase.context();

    // phi0 = -z2 + wb2 - i z1 wb1
    Jet expected(ctx, 6);
    expected -= Jet::variable(ctx, 6, "z2");
    expected += Jet::variable(ctx, 6, "wb2");
    expected += (Jet::variable(ctx, 6, "z1") * Jet::variable(ctx, 6, "wb1")).scaled(-kI);
    CHECK(phase == expected);

    // support: holomorphic in z, antiholomorphic in w
    for (const auto& [mi, c] : phase.terms())
        for (size_t v = 0; v < ctx->size(); ++v)
            if (mi[v]) {
                const std::string& name = ctx->name(v);
                CHECK((name[0] == 'z' ? ctx->kind(v) == VarKind::Holomorphic
                                      : ctx->kind(v) == VarKind::Antiholomorphic));
            }
}

TEST_CASE("restricted phase of the Heisenberg surface") {
    ModelSurface s = ModelSurface::heisenberg(1, 6);
    GeometryReport geom = geometry_report(s);
    Jet phi = restrict_phase(s, ambient_phase(s), geom);
    const ContextPtr& d = phi.context();

    // phi = -s + st + (i/2)(|z1|^2 - 2 z1 wb1 + |w1|^2) exactly
    Jet expected(d, 6);
    expected -= Jet::variable(d, 6, "s");
    expected += Jet::variable(d, 6, "st");
    Jet z1 = Jet::variable(d, 6, "z1"), zb1 = Jet::variable(d, 6, "zb1");
    Jet w1 = Jet::variable(d, 6, "w1"), wb1 = Jet::variable(d, 6, "wb1");
    expected += (z1 * zb1 - (z1 * wb1).scaled(GaussianRational(make_rat(2))) + w1 * wb1)
                    .scaled(kHalfI);
    CHECK(phi == expected);

    // numeric positivity of Im phi near the base point
    CHECK(min_im_phi_on_samples(phi, 0.1, 1000, 20260811u) >= -1e-12);
}

TEST_CASE("malgrange factorization of the Heisenberg phase") {
    ModelSurface s = ModelSurface::heisenberg(1, 6);
    GeometryReport geom = geometry_report(s);
    PhaseResult ph = build_phase(s, geom);
    const ContextPtr& d = ph.phi.context();

    // f = 1 and g = st + (i/2)(|z|^2 - 2 z wb + |w|^2): the phase is already affine in s
    CHECK(ph.fact.f == Jet::constant(d, ph.fact.f.cap(), kOne));
    Jet z1 = Jet::variable(d, 6, "z1"), w1 = Jet::variable(d, 6, "w1");
    Jet zb1 = Jet::variable(d, 6, "zb1"), wb1 = Jet::variable(d, 6, "wb1");
    Jet g_expected = Jet::variable(d, 6, "st") +
                     (z1 * zb1 - (z1 * wb1).scaled(GaussianRational(make_rat(2))) + w1 * wb1)
                         .scaled(kHalfI);
    CHECK(ph.fact.g == g_expected);

    // reconstruction
    CHECK(ph.fact.f * ph.fact.Phi == ph.phi);
}

TEST_CASE("phase identity suite on perturbed surfaces") {
    // the heavy lifting (diagonal identities, Hermitian symmetry, quartic
    // transfer, f - 1 = O(3), T^2 Phi = 0) is asserted inside build_phase
    SurfaceSpec spec;
    spec.n = 1;
    spec.perturbation.push_back({{2, 0}, {2, 0}, GaussianRational(make_rat(1, 3))});
    spec.perturbation.push_back({{3, 0}, {1, 0}, GaussianRational(make_rat(1, 5), make_rat(1, 2))});
    ModelSurface s = build_surface(spec);
    GeometryReport geom = geometry_report(s);
    PhaseResult ph = build_phase(s, geom);

    // the quartic transfer in explicit form for this surface:
    // d4 phi / dz1^2 dzb1^2 (0,0) = -i d4 R(0)
    const ContextPtr& d = ph.phi.context();
    GaussianRational lhs = ph.phi.derive(d->index_of("z1"))
                               .derive(d->index_of("z1"))
                               .derive(d->index_of("zb1"))
                               .derive(d->index_of("zb1"))
                               .constant_term();
    GaussianRational rhs = -kI * quartic_r(geom.R, s.ctxs(), 1, 1, 1, 1);
    CHECK(lhs == rhs);
    CHECK(min_im_phi_on_samples(ph.phi, 0.1, 1000, 7u) >= -1e-12);
}

TEST_CASE("randomized phase suite") {
    CHECK(check_phase(20260811u, 10).cases == 10);
}
