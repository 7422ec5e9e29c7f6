#include "szg/szego.hpp"

namespace szg {

namespace {
const GaussianRational kOne{make_rat(1)};
const GaussianRational kI = GaussianRational::i();
const GaussianRational kHalf{make_rat(1, 2)};
const GaussianRational kQuarter{make_rat(1, 4)};

Rat factorial(int k) {
    Rat f = make_rat(1);
    for (int i = 2; i <= k; ++i) f *= i;
    return f;
}
}  // namespace

PiScaled leading_coefficient(int n) { return PiScaled(GaussianRational(make_rat(1, 2)), -(n + 1)); }

Jet compose_phase(const Factorization& fact, const SurfaceContexts& ctxs) {
    const ContextPtr& cctx = ctxs.composed;
    const int cap = ctxs.cap;

    // g(0', w): first point at the origin, second point = integration point
    std::vector<Jet> first_at_zero;
    // g(w', 0): first point = integration point, second point at the origin
    std::vector<Jet> second_at_zero;
    for (size_t v = 0; v < ctxs.doubled->size(); ++v) {
        const std::string& name = ctxs.doubled->name(v);
        if (name == "s") {
            first_at_zero.push_back(Jet(cctx, cap));
            second_at_zero.push_back(Jet(cctx, cap));
        } else if (name == "st") {
            first_at_zero.push_back(Jet::variable(cctx, cap, "sw"));
            second_at_zero.push_back(Jet(cctx, cap));
        } else if (name[0] == 'w') {
            first_at_zero.push_back(Jet::variable(cctx, cap, name));
            second_at_zero.push_back(Jet(cctx, cap));
        } else {
            // z_j (zb_j) -> w_j (wb_j) on the second map, 0 on the first
            std::string wname = name;
            wname[0] = 'w';
            first_at_zero.push_back(Jet(cctx, cap));
            second_at_zero.push_back(Jet::variable(cctx, cap, wname));
        }
    }

    Jet g0w = fact.g.substituted(first_at_zero, cctx);
    Jet gw0 = fact.g.substituted(second_at_zero, cctx);
    Jet sigma = Jet::constant(cctx, cap, kOne) + Jet::variable(cctx, cap, "tau");
    Jet F = g0w + sigma * (gw0 - Jet::variable(cctx, cap, "sw"));

    if (!F.constant_term().is_zero())
        throw identity_violation("compose_phase: F(0,1) != 0");
    for (size_t v = 0; v < cctx->size(); ++v) {
        GaussianRational lin = F.derive(v).constant_term();
        if (!lin.is_zero())
            throw identity_violation("compose_phase: dF(0,1) != 0 along " + cctx->name(v) +
                                     " (coefficient " + lin.str() + ")");
    }
    return F;
}

CriticalPointData verify_critical_data(const Jet& F, int n) {
    CriticalPointData data = hessian_at(F);
    const size_t d = data.hessian.size();
    if (d != static_cast<size_t>(2 * n + 2))
        throw identity_violation("verify_critical_data: unexpected Hessian dimension");

    GaussianRational two_i = kI + kI;
    GaussianRational minus_one{make_rat(-1)};
    for (size_t i = 0; i < d; ++i)
        for (size_t j = 0; j < d; ++j) {
            GaussianRational want;
            if (i < d - 2 && i == j) want = two_i;
            if (i >= d - 2 && j >= d - 2 && i != j) want = minus_one;
            if (data.hessian[i][j] != want)
                throw identity_violation("verify_critical_data: Hessian entry (" + std::to_string(i) +
                                         "," + std::to_string(j) + ") is " +
                                         data.hessian[i][j].str() + ", expected " + want.str());
        }

    GaussianRational expected_det{make_rat(1)};
    for (int k = 0; k < 2 * n; ++k) expected_det *= GaussianRational(make_rat(2));
    if (n % 2 == 0) expected_det = -expected_det;  // (-1)^{n+1}
    if (data.det != expected_det)
        throw identity_violation("verify_critical_data: det = " + data.det.str() + ", expected " +
                                 expected_det.str());

    complete_critical_data(data);
    if (!data.prefactor.exact ||
        data.prefactor.exact_value != PiScaled(GaussianRational(make_rat(2)), n + 1))
        throw identity_violation("verify_critical_data: prefactor is not exactly 2 pi^{n+1}");
    return data;
}

namespace {

// L = i sum_j d^2/dw_j dwb_j + d^2/dsw dtau on the composed context
Jet specialized_operator(const Jet& f, const SurfaceContexts& ctxs) {
    const ContextPtr& cctx = ctxs.composed;
    Jet r(cctx, std::max(f.cap() - 2, 0));
    for (int j = 1; j <= ctxs.n; ++j)
        r += f.derive(cctx->index_of(SurfaceContexts::w(j)))
                 .derive(cctx->index_of(SurfaceContexts::wb(j)))
                 .scaled(kI);
    r += f.derive(cctx->index_of("sw")).derive(cctx->index_of("tau"));
    return r;
}

}  // namespace

PiScaled route_stationary(const Jet& F, const Jet& lambda, const SurfaceContexts& ctxs,
                          const CriticalPointData& data) {
    const ContextPtr& cctx = ctxs.composed;
    const int n = ctxs.n;
    const int cap = ctxs.cap;
    if (cap < 6) throw truncation_unsound("route_stationary: cap must be at least 6");

    // G = F minus its quadratic model at the critical point
    Jet G = F - F.degree_at_most(2);
    if (!G.is_zero() && G.min_degree() < 3)
        throw identity_violation("route_stationary: G does not vanish to second order");
    size_t tau_idx = cctx->index_of("tau");
    for (const auto& [mi, c] : G.terms()) {
        if (mi.degree() == 3 && mi[tau_idx] == 0)
            throw identity_violation("route_stationary: pure-x cubic of G survives at " +
                                     mi.str(*cctx));
        if (mi.degree() == static_cast<int>(mi[tau_idx]) && mi[tau_idx] >= 2)
            throw identity_violation("route_stationary: pure-sigma term of G survives at " +
                                     mi.str(*cctx));
    }

    // amplitude without its kappa^2 prefactor: lambda(w) sigma^n
    std::map<std::string, std::string> to_w;
    for (int j = 1; j <= n; ++j) {
        to_w[SurfaceContexts::z(j)] = SurfaceContexts::w(j);
        to_w[SurfaceContexts::zb(j)] = SurfaceContexts::wb(j);
    }
    to_w["s"] = "sw";
    Jet sigma_n = (Jet::constant(cctx, cap, kOne) + Jet::variable(cctx, cap, "tau")).pow(n);
    Jet u = lambda.renamed(cctx, to_w) * sigma_n;

    // specialized mu-sum for P1
    GaussianRational p1;
    Jet g_pow = Jet::constant(cctx, cap, kOne);
    for (int mu = 0; mu <= 2; ++mu) {
        if (mu > 0) g_pow = g_pow * G;
        Jet cur = g_pow * u;
        for (int k = 0; k <= mu; ++k) cur = specialized_operator(cur, ctxs);
        GaussianRational term = cur.constant_term();
        if (term.is_zero()) continue;
        p1 += (-kI) * term / GaussianRational(factorial(mu) * factorial(mu + 1));
    }

    // the halved generic operator must be the specialized one, entrywise
    {
        GMatrix expect(data.axes.size(), std::vector<GaussianRational>(data.axes.size()));
        for (size_t a = 0; a < data.axes.size(); ++a) {
            if (data.axes[a].type != RealAxis::Type::Real) expect[a][a] = kI * kQuarter;
        }
        size_t sw_axis = data.axes.size() - 2, tau_axis = data.axes.size() - 1;
        expect[sw_axis][tau_axis] = kHalf;
        expect[tau_axis][sw_axis] = kHalf;
        for (size_t a = 0; a < data.axes.size(); ++a)
            for (size_t b = 0; b < data.axes.size(); ++b)
                if (-(data.inverse[a][b] * kHalf) != expect[a][b])
                    throw identity_violation(
                        "route_stationary: <F''^{-1} D, D>/2 differs from the displayed operator");
    }

    // generic enumeration must reproduce the specialized sum
    std::vector<GaussianRational> generic = sp_terms(F, u, 1);
    if (generic[0] != u.constant_term() || generic[0] != kOne)
        throw identity_violation("route_stationary: P0 != lambda(0)");
    if (generic[1] != p1)
        throw identity_violation("route_stationary: generic P1 (" + generic[1].str() +
                                 ") != specialized P1 (" + p1.str() + ")");

    // B0 = prefactor * A0^2 * lambda(0) must equal A0
    PiScaled kappa = leading_coefficient(n);
    if (!data.prefactor.exact) throw identity_violation("route_stationary: prefactor not exact");
    PiScaled B0 = data.prefactor.exact_value * kappa * kappa;
    if (B0 != kappa) throw identity_violation("route_stationary: B0 != A0");

    // A1 = -S where S = 2 pi^{n+1} kappa^2 P1; the cross terms contribute
    // 2 A1, and A1 = S + 2 A1 is solved symbolically.
    PiScaled S = (data.prefactor.exact_value * kappa * kappa).scaled(p1);
    return -S;
}

PiScaled route_closed_form(const GeometryReport& geom, int n) {
    GaussianRational bracket = geom.lambda_lap0 + geom.r_quartic_trace0;
    if (!bracket.is_real())
        throw identity_violation("route_closed_form: bracket is not real");
    return PiScaled(-(bracket * kHalf), -(n + 1));
}

PiScaled route_curvature(const GeometryReport& geom, int n) {
    return PiScaled(geom.r_scal0 * kQuarter, -(n + 1));
}

PipelineArtifacts run_pipeline(const ModelSurface& s) {
    PipelineArtifacts art;
    SzegoReport& rep = art.report;
    rep.n = s.n();
    rep.A0 = leading_coefficient(s.n());

    try {
        art.geom = geometry_report(s);
    } catch (const pipeline_error&) {
        throw;
    } catch (const error& e) {
        throw pipeline_error("geometry", e.what());
    }
    rep.r_scal0 = art.geom.r_scal0;
    rep.lambda_lap0 = art.geom.lambda_lap0;
    rep.r_quartic_trace0 = art.geom.r_quartic_trace0;

    try {
        art.phase = build_phase(s, art.geom);
    } catch (const pipeline_error&) {
        throw;
    } catch (const error& e) {
        throw pipeline_error("phase", e.what());
    }

    try {
        art.composed = compose_phase(art.phase.fact, s.ctxs());
        CriticalPointData data = verify_critical_data(art.composed, s.n());
        rep.hessian_det = data.det;
        rep.prefactor = data.prefactor.exact_value;
        rep.A1_route_sp = route_stationary(art.composed, art.geom.lambda, s.ctxs(), data);
        rep.A1_route_closed = route_closed_form(art.geom, s.n());
        rep.A1_route_curv = route_curvature(art.geom, s.n());
    } catch (const pipeline_error&) {
        throw;
    } catch (const error& e) {
        throw pipeline_error("szego", e.what());
    }

    rep.agree_sp_closed = rep.A1_route_sp == rep.A1_route_closed;
    rep.agree_closed_curv = rep.A1_route_closed == rep.A1_route_curv;
    rep.agree_sp_curv = rep.A1_route_sp == rep.A1_route_curv;
    return art;
}

SzegoReport full_report(const ModelSurface& s) { return run_pipeline(s).report; }

}  // namespace szg
