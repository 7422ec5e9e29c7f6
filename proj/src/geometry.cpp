#include "szg/geometry.hpp"

#include <sstream>

namespace szg {

namespace {
const GaussianRational kOne{make_rat(1)};
const GaussianRational kI = GaussianRational::i();
const GaussianRational kHalf{make_rat(1, 2)};
}  // namespace

SurfaceContexts SurfaceContexts::make(int n, int cap) {
    if (n < 1) throw usage_error("CR dimension must be >= 1");
    SurfaceContexts c;
    c.n = n;
    c.cap = cap;
    {
        ContextBuilder b;
        for (int j = 1; j <= n + 1; ++j) b.pair(z(j), zb(j));
        c.ambient = b.build();
    }
    {
        ContextBuilder b;
        for (int j = 1; j <= n; ++j) b.pair(z(j), zb(j));
        b.real("s").real("x");
        c.graph = b.build();
    }
    {
        ContextBuilder b;
        for (int j = 1; j <= n; ++j) b.pair(z(j), zb(j));
        b.real("s");
        c.surface = b.build();
    }
    {
        ContextBuilder b;
        for (int j = 1; j <= n; ++j) b.pair(z(j), zb(j));
        b.real("s");
        for (int j = 1; j <= n; ++j) b.pair(w(j), wb(j));
        b.real("st");
        c.doubled = b.build();
    }
    {
        ContextBuilder b;
        for (int j = 1; j <= n; ++j) b.pair(w(j), wb(j));
        b.real("sw").real("tau");
        c.composed = b.build();
    }
    {
        ContextBuilder b;
        for (int j = 1; j <= n + 1; ++j) b.pair(z(j), zb(j));
        for (int j = 1; j <= n + 1; ++j) b.pair(w(j), wb(j));
        c.doubled_ambient = b.build();
    }
    return c;
}

ModelSurface ModelSurface::validate(int n, int cap, Jet r) {
    if (cap < 6) throw validation_error("degree cap must be at least 6");
    SurfaceContexts ctxs = SurfaceContexts::make(n, cap);
    if (r.context() != ctxs.ambient) r = r.renamed(ctxs.ambient);

    std::vector<std::string> violations;
    if (!r.is_real()) violations.push_back("defining function is not real (Hermitian symmetry fails)");

    Jet expected(ctxs.ambient, cap);
    expected.add_coeff(MultiIndex(ctxs.ambient->size()).raised(ctxs.ambient->index_of(SurfaceContexts::z(n + 1))), -kI);
    expected.add_coeff(MultiIndex(ctxs.ambient->size()).raised(ctxs.ambient->index_of(SurfaceContexts::zb(n + 1))), kI);
    for (int j = 1; j <= n; ++j) {
        MultiIndex mi(ctxs.ambient->size());
        mi = mi.raised(ctxs.ambient->index_of(SurfaceContexts::z(j)));
        mi = mi.raised(ctxs.ambient->index_of(SurfaceContexts::zb(j)));
        expected.add_coeff(mi, kOne);
    }

    Jet diff = r.degree_at_most(3) - expected;
    bool bad_quadratic = false, cubic = false;
    std::string detail;
    for (const auto& [mi, c] : diff.terms()) {
        if (mi.degree() <= 2 && !bad_quadratic) {
            bad_quadratic = true;
            detail = mi.str(*ctxs.ambient) + " has coefficient " + r.coeff(mi).str();
        }
        if (mi.degree() == 3) cubic = true;
    }
    if (bad_quadratic)
        violations.push_back("quadratic part is not the normal form (" + detail + ")");
    if (cubic) violations.push_back("perturbation has terms below total degree 4");

    if (!violations.empty()) {
        std::ostringstream os;
        os << "normal form rejected:";
        for (const auto& v : violations) os << " [" << v << "]";
        throw validation_error(os.str());
    }

    bool tangential = true;
    size_t zn1 = ctxs.ambient->index_of(SurfaceContexts::z(n + 1));
    size_t zbn1 = ctxs.ambient->index_of(SurfaceContexts::zb(n + 1));
    for (const auto& [mi, c] : r.terms())
        if (mi.degree() >= 4 && (mi[zn1] || mi[zbn1])) tangential = false;
    return ModelSurface(std::move(ctxs), std::move(r), tangential);
}

ModelSurface ModelSurface::heisenberg(int n, int cap) {
    SurfaceContexts ctxs = SurfaceContexts::make(n, cap);
    Jet r(ctxs.ambient, cap);
    r.add_coeff(MultiIndex(ctxs.ambient->size()).raised(ctxs.ambient->index_of(SurfaceContexts::z(n + 1))), -kI);
    r.add_coeff(MultiIndex(ctxs.ambient->size()).raised(ctxs.ambient->index_of(SurfaceContexts::zb(n + 1))), kI);
    for (int j = 1; j <= n; ++j) {
        MultiIndex mi(ctxs.ambient->size());
        mi = mi.raised(ctxs.ambient->index_of(SurfaceContexts::z(j)));
        mi = mi.raised(ctxs.ambient->index_of(SurfaceContexts::zb(j)));
        r.add_coeff(mi, kOne);
    }
    return validate(n, cap, std::move(r));
}

namespace {

// images of the ambient variables under the graph chart into `target`
// (either the surface context or, for the second point, the w-side of the
// doubled context via name_map applied to R first).
std::vector<Jet> graph_images(const SurfaceContexts& ctxs, const Jet& R, const ContextPtr& target) {
    const int cap = ctxs.cap;
    Jet Rt = R.context() == target ? R : R.renamed(target);
    Jet s = Jet::variable(target, cap, "s");
    std::vector<Jet> images;
    images.reserve(ctxs.ambient->size());
    for (size_t v = 0; v < ctxs.ambient->size(); ++v) {
        const std::string& name = ctxs.ambient->name(v);
        if (auto idx = target->find(name)) {
            images.push_back(Jet::variable(target, cap, *idx));
        } else if (name == SurfaceContexts::z(ctxs.n + 1)) {
            images.push_back(s + Rt.scaled(kI));
        } else if (name == SurfaceContexts::zb(ctxs.n + 1)) {
            images.push_back(s - Rt.scaled(kI));
        } else {
            throw usage_error("graph_images: unmapped ambient variable " + name);
        }
    }
    return images;
}

}  // namespace

Jet solve_graph(const ModelSurface& s) {
    const SurfaceContexts& ctxs = s.ctxs();
    const int cap = ctxs.cap;

    std::vector<Jet> images;
    images.reserve(ctxs.ambient->size());
    Jet sv = Jet::variable(ctxs.graph, cap, "s");
    Jet xv = Jet::variable(ctxs.graph, cap, "x");
    for (size_t v = 0; v < ctxs.ambient->size(); ++v) {
        const std::string& name = ctxs.ambient->name(v);
        if (auto idx = ctxs.graph->find(name))
            images.push_back(Jet::variable(ctxs.graph, cap, *idx));
        else if (name == SurfaceContexts::z(ctxs.n + 1))
            images.push_back(sv + xv.scaled(kI));
        else
            images.push_back(sv - xv.scaled(kI));
    }
    Jet rg = s.r().substituted(images, ctxs.graph);
    size_t x_idx = ctxs.graph->index_of("x");
    Jet Rg = implicit_solve(rg, x_idx);

    // back-substitution residual must vanish identically
    std::vector<Jet> back;
    for (size_t v = 0; v < ctxs.graph->size(); ++v) back.push_back(Jet::variable(ctxs.graph, cap, v));
    back[x_idx] = Rg;
    if (!rg.substituted(back, ctxs.graph).is_zero())
        throw identity_violation("solve_graph: residual r(., R) != 0");

    Jet R = Rg.renamed(ctxs.surface);
    if (!R.is_real()) throw identity_violation("solve_graph: graph function is not real");
    if (R.min_degree() < 2) throw identity_violation("solve_graph: R has low-degree terms");
    for (int j = 1; j <= ctxs.n; ++j)
        for (int k = 1; k <= ctxs.n; ++k) {
            GaussianRational d2 = R.derive(ctxs.surface->index_of(SurfaceContexts::z(j)))
                                      .derive(ctxs.surface->index_of(SurfaceContexts::zb(k)))
                                      .constant_term();
            GaussianRational want = j == k ? -kHalf : GaussianRational();
            if (d2 != want)
                throw identity_violation("solve_graph: d2R/dz_j dzb_k (0) != -delta/2");
        }
    return R;
}

std::vector<VectorFieldJet> cr_frame(const ModelSurface& s, const Jet& R) {
    const SurfaceContexts& ctxs = s.ctxs();
    const int cap = ctxs.cap;
    const Jet& r = s.r();

    size_t zn1 = ctxs.ambient->index_of(SurfaceContexts::z(ctxs.n + 1));
    Jet r_zn1 = r.derive(zn1);
    Jet inv = r_zn1.reciprocal();  // throws non_invertible if dr/dz_{n+1}(0) = 0

    std::vector<Jet> to_surface = graph_images(ctxs, R, ctxs.surface);
    size_t s_idx = ctxs.surface->index_of("s");

    Jet dRs = R.derive(s_idx);
    Jet unit = (Jet::constant(ctxs.surface, dRs.cap(), kOne) - dRs.scaled(kI)).reciprocal();

    std::vector<VectorFieldJet> frame;
    for (int j = 1; j <= ctxs.n; ++j) {
        size_t zj_amb = ctxs.ambient->index_of(SurfaceContexts::z(j));
        Jet q_j = r.derive(zj_amb) * inv;
        // ambient tangency: (d_{z_j} - q_j d_{z_{n+1}}) r = 0 identically
        if (!(r.derive(zj_amb) - q_j * r_zn1).is_zero())
            throw identity_violation("cr_frame: ambient frame does not annihilate r");

        size_t zj = ctxs.surface->index_of(SurfaceContexts::z(j));
        Jet dRj = R.derive(zj);
        Jet e_j = dRj.scaled(kI) * unit;

        // the z_{n+1} component of the pushed-forward field must match -q_j
        Jet lhs = dRj.scaled(kI) + e_j * (Jet::constant(ctxs.surface, dRs.cap(), kOne) + dRs.scaled(kI));
        Jet rhs = -(q_j.substituted(to_surface, ctxs.surface));
        if (!(lhs == rhs))
            throw identity_violation("cr_frame: graph expression inconsistent with ambient field");

        // agreement with the displayed frame modulo degree 4
        Jet dev = e_j - dRj.scaled(kI);
        if (!dev.is_zero() && dev.min_degree() < 4)
            throw identity_violation("cr_frame: frame deviates from d_z + i dR/dz d_s below degree 4");

        VectorFieldJet L(ctxs.surface, cap);
        L.component(zj) = Jet::constant(ctxs.surface, cap, kOne);
        L.component(s_idx) = e_j;
        frame.push_back(std::move(L));
    }

    // involutivity: for this graph frame the brackets vanish outright
    for (size_t i = 0; i < frame.size(); ++i)
        for (size_t j = i + 1; j < frame.size(); ++j) {
            VectorFieldJet br = lie_bracket(frame[i], frame[j]);
            for (size_t v = 0; v < ctxs.surface->size(); ++v)
                if (!br.component(v).is_zero())
                    throw identity_violation("cr_frame: [L_i, L_j] != 0");
        }
    return frame;
}

FormJet contact_form(const ModelSurface& s, const Jet& R,
                     const std::vector<VectorFieldJet>& frame) {
    const SurfaceContexts& ctxs = s.ctxs();
    const Jet& r = s.r();

    FormJet alpha(ctxs.ambient, 1, ctxs.cap - 1);
    for (int j = 1; j <= ctxs.n + 1; ++j) {
        size_t zj = ctxs.ambient->index_of(SurfaceContexts::z(j));
        size_t zbj = ctxs.ambient->index_of(SurfaceContexts::zb(j));
        alpha.add_term({static_cast<uint8_t>(zj)}, r.derive(zj).scaled(kI * kHalf));
        alpha.add_term({static_cast<uint8_t>(zbj)}, r.derive(zbj).scaled(-(kI * kHalf)));
    }
    FormJet omega0 = alpha.pullback(graph_images(ctxs, R, ctxs.surface), ctxs.surface);

    if (!omega0.is_real()) throw identity_violation("contact_form: omega0 is not real");

    // Displayed formula: omega0 = ds - i sum (dR/dz_j dz_j - dR/dzb_j dzb_j)
    // modulo degree 4 on the complex components. The ds component of this
    // pullback normalization is 1 + O(degree 3); the cubic term is present
    // exactly when the quartic part of r contains z_{n+1} linearly, and it is
    // what the phase pairs with (d_x phi on the diagonal is minus this form).
    FormJet displayed(ctxs.surface, 1, omega0.cap());
    displayed.add_term({static_cast<uint8_t>(ctxs.surface->index_of("s"))},
                       Jet::constant(ctxs.surface, omega0.cap(), kOne));
    for (int j = 1; j <= ctxs.n; ++j) {
        size_t zj = ctxs.surface->index_of(SurfaceContexts::z(j));
        size_t zbj = ctxs.surface->index_of(SurfaceContexts::zb(j));
        displayed.add_term({static_cast<uint8_t>(zj)}, R.derive(zj).scaled(-kI));
        displayed.add_term({static_cast<uint8_t>(zbj)}, R.derive(zbj).scaled(kI));
    }
    size_t s_cov1 = ctxs.surface->index_of("s");
    FormJet dev = omega0 - displayed;
    for (const auto& [t, jjet] : dev.components()) {
        if (jjet.is_zero()) continue;
        bool is_s = t[0] == s_cov1;
        if (is_s && s.tangential_perturbation())
            throw identity_violation("contact_form: ds-component of omega0 is not identically 1");
        int min_required = is_s ? 3 : 4;
        if (jjet.min_degree() < min_required)
            throw identity_violation("contact_form: omega0 deviates from the displayed formula (d" +
                                     ctxs.surface->name(t[0]) + " component below degree " +
                                     std::to_string(min_required) + ")");
    }

    // d omega0 = 2i sum d2R/dz_j dzb_k dz_j ^ dzb_k + O(3) on the complex
    // block. When the quartic part of r involves z_{n+1}, R depends on s and
    // d omega0 picks up genuine degree-2 ds ^ dz components, so the displayed
    // formula is asserted blockwise and through the frame pairing (the form
    // the curvature computation consumes).
    FormJet domega = omega0.exterior_d();
    FormJet d_displayed(ctxs.surface, 2, domega.cap());
    for (int j = 1; j <= ctxs.n; ++j)
        for (int k = 1; k <= ctxs.n; ++k) {
            size_t zj = ctxs.surface->index_of(SurfaceContexts::z(j));
            size_t zbk = ctxs.surface->index_of(SurfaceContexts::zb(k));
            d_displayed.add_term({static_cast<uint8_t>(zj), static_cast<uint8_t>(zbk)},
                                 R.derive(zj).derive(zbk).scaled(kI + kI));
        }
    size_t s_cov = ctxs.surface->index_of("s");
    FormJet ddev = domega - d_displayed;
    for (const auto& [t, jjet] : ddev.components()) {
        if (jjet.is_zero()) continue;
        bool touches_s = t[0] == s_cov || t[1] == s_cov;
        if (touches_s && s.tangential_perturbation())
            throw identity_violation("contact_form: d omega0 has ds-components on a tangential surface");
        if (!touches_s && jjet.min_degree() < 3)
            throw identity_violation(
                "contact_form: complex block of d omega0 deviates from the displayed formula below degree 3");
        if (touches_s && jjet.min_degree() < 2)
            throw identity_violation("contact_form: ds-components of d omega0 below degree 2");
    }
    for (int j = 1; j <= ctxs.n; ++j)
        for (int k = 1; k <= ctxs.n; ++k) {
            Jet paired = domega.pair({frame[j - 1], frame[k - 1].conjugated()});
            Jet disp = R.derive(ctxs.surface->index_of(SurfaceContexts::z(j)))
                           .derive(ctxs.surface->index_of(SurfaceContexts::zb(k)))
                           .scaled(kI + kI);
            Jet pdev = paired - disp;
            if (!pdev.is_zero() && pdev.min_degree() < 3)
                throw identity_violation(
                    "contact_form: d omega0(L_j, Lb_k) deviates from 2i d2R/dz dzb below degree 3");
        }

    // annihilation of T^{1,0} and T^{0,1}
    for (const VectorFieldJet& L : frame) {
        if (!omega0.pair({L}).is_zero())
            throw identity_violation("contact_form: omega0(L_j) != 0");
        if (!omega0.pair({L.conjugated()}).is_zero())
            throw identity_violation("contact_form: omega0(Lb_j) != 0");
    }
    return omega0;
}

VectorFieldJet reeb_field(const FormJet& omega0) {
    const ContextPtr& ctx = omega0.context();
    const size_t dim = ctx->size();
    FormJet domega = omega0.exterior_d();
    int cap = domega.cap();

    std::vector<VectorFieldJet> basis;
    for (size_t v = 0; v < dim; ++v) {
        VectorFieldJet e(ctx, cap);
        e.component(v) = Jet::constant(ctx, cap, kOne);
        basis.push_back(std::move(e));
    }

    // unknowns: T^v. Equations: omega0(T) = -1 plus d omega0(T, d/dz_k),
    // d omega0(T, d/dzb_k) = 0; the omitted pairing with d/ds is asserted
    // afterwards (it is dependent at 0).
    std::vector<std::vector<Jet>> M;
    std::vector<Jet> rhs;
    {
        std::vector<Jet> row;
        for (size_t v = 0; v < dim; ++v) row.push_back(omega0.component({static_cast<uint8_t>(v)}));
        M.push_back(std::move(row));
        rhs.push_back(Jet::constant(ctx, cap, -kOne));
    }
    for (size_t h : ctx->holomorphic()) {
        for (size_t u : {h, ctx->conj(h)}) {
            std::vector<Jet> row;
            for (size_t v = 0; v < dim; ++v) row.push_back(domega.pair({basis[v], basis[u]}));
            M.push_back(std::move(row));
            rhs.push_back(Jet(ctx, cap));
        }
    }
    std::vector<Jet> sol;
    try {
        sol = linear_solve(std::move(M), std::move(rhs));
    } catch (const degenerate_frame&) {
        throw degenerate_frame("reeb_field: contact structure degenerate at 0");
    }
    VectorFieldJet T(std::move(sol));

    // defining equations hold modulo the cap
    Jet pairing = omega0.pair({T});
    if (!(pairing + Jet::constant(ctx, pairing.cap(), kOne)).is_zero())
        throw identity_violation("reeb_field: omega0(T) != -1");
    for (size_t v = 0; v < dim; ++v)
        if (!domega.pair({T, basis[v]}).is_zero())
            throw identity_violation("reeb_field: d omega0(T, .) != 0");
    if (!T.is_real()) throw identity_violation("reeb_field: T is not real");

    // T = -d/ds + O(|x|^2)
    for (size_t v = 0; v < dim; ++v) {
        Jet c = T.component(v);
        if (ctx->kind(v) == VarKind::Real) c += Jet::constant(ctx, c.cap(), kOne);
        if (!c.is_zero() && c.min_degree() < 2)
            throw identity_violation("reeb_field: T != -d/ds + O(|x|^2)");
    }
    return T;
}

Jet volume_density(const FormJet& omega0, int n) {
    FormJet half_minus_d = (-omega0.exterior_d()).scaled(kHalf);
    FormJet power = half_minus_d;
    Rat nfact = make_rat(1);
    for (int k = 2; k <= n; ++k) {
        power = power.wedge(half_minus_d);
        nfact *= k;
    }
    FormJet vol = power.wedge(omega0).scaled(GaussianRational(make_rat(1) / nfact));
    Jet lambda = top_density(vol);
    if (!lambda.constant_term().is_one())
        throw identity_violation("volume_density: lambda(0) != 1");
    Jet dev = lambda - Jet::constant(lambda.context(), lambda.cap(), kOne);
    if (!dev.is_zero() && dev.min_degree() < 2)
        throw identity_violation("volume_density: d lambda(0) != 0");
    if (!lambda.is_real()) throw identity_violation("volume_density: lambda is not real");
    return lambda;
}

std::vector<std::vector<std::vector<Jet>>> tw_connection(
    const FormJet& domega0, const std::vector<VectorFieldJet>& frame,
    const VectorFieldJet& reeb) {
    const ContextPtr& ctx = domega0.context();
    const int n = static_cast<int>(frame.size());

    std::vector<VectorFieldJet> fbar;
    for (const auto& L : frame) fbar.push_back(L.conjugated());

    // M[l][k] = d omega0(L_l, Lb_k); invertible at 0 (Levi nondegeneracy)
    std::vector<std::vector<Jet>> M(n);
    for (int l = 0; l < n; ++l)
        for (int k = 0; k < n; ++k) M[l].push_back(domega0.pair({frame[l], fbar[k]}));

    // frame matrix for decomposing brackets over {L, Lb, T}
    const size_t dim = ctx->size();
    std::vector<std::vector<Jet>> Fr(dim);
    for (size_t v = 0; v < dim; ++v) {
        for (int m = 0; m < n; ++m) Fr[v].push_back(frame[m].component(v));
        for (int m = 0; m < n; ++m) Fr[v].push_back(fbar[m].component(v));
        Fr[v].push_back(reeb.component(v));
    }

    // T^{0,1} projections of [L_i, Lb_k]
    std::vector<std::vector<VectorFieldJet>> proj(n);
    for (int i = 0; i < n; ++i) {
        proj[i].reserve(n);
        for (int k = 0; k < n; ++k) {
            VectorFieldJet br = lie_bracket(frame[i], fbar[k]);
            std::vector<Jet> comps;
            comps.reserve(dim);
            for (size_t v = 0; v < dim; ++v) comps.push_back(br.component(v));
            std::vector<Jet> coeff;
            try {
                coeff = linear_solve(Fr, comps);
            } catch (const degenerate_frame&) {
                throw degenerate_frame("tw_connection: frame degenerate at 0");
            }
            VectorFieldJet p(ctx, domega0.cap());
            for (int m = 0; m < n; ++m) p += fbar[m].scaled_by(coeff[n + m]);
            proj[i].push_back(std::move(p));
        }
    }

    std::vector<std::vector<std::vector<Jet>>> gamma(n);
    for (int i = 0; i < n; ++i) {
        gamma[i].resize(n);
        for (int j = 0; j < n; ++j) {
            std::vector<std::vector<Jet>> A(n);
            std::vector<Jet> rhs;
            for (int k = 0; k < n; ++k) {
                for (int l = 0; l < n; ++l) A[k].push_back(M[l][k]);
                rhs.push_back(frame[i].apply(M[j][k]) - domega0.pair({frame[j], proj[i][k]}));
            }
            std::vector<Jet> sol;
            try {
                sol = linear_solve(std::move(A), std::move(rhs));
            } catch (const degenerate_frame&) {
                throw degenerate_frame("tw_connection: Levi matrix degenerate at 0");
            }
            for (int k = 0; k < n; ++k) {
                if (!sol[k].constant_term().is_zero())
                    throw identity_violation("tw_connection: Gamma(0) != 0");
            }
            gamma[i][j] = std::move(sol);
        }
    }
    return gamma;
}

GaussianRational quartic_r(const Jet& R, const SurfaceContexts& ctxs, int i, int j, int k, int l) {
    return R.derive(ctxs.surface->index_of(SurfaceContexts::z(i)))
        .derive(ctxs.surface->index_of(SurfaceContexts::z(j)))
        .derive(ctxs.surface->index_of(SurfaceContexts::zb(k)))
        .derive(ctxs.surface->index_of(SurfaceContexts::zb(l)))
        .constant_term();
}

CurvatureAtOrigin tw_curvature(const std::vector<std::vector<std::vector<Jet>>>& christoffel,
                               const std::vector<std::vector<Jet>>& levi_g, const Jet& R,
                               const SurfaceContexts& ctxs) {
    const int n = ctxs.n;
    CurvatureAtOrigin out;
    out.ricci0.assign(n, std::vector<GaussianRational>(n));
    for (int a = 0; a < n; ++a)
        for (int l = 0; l < n; ++l) {
            GaussianRational sum;
            size_t zbl = ctxs.surface->index_of(SurfaceContexts::zb(l + 1));
            for (int k = 0; k < n; ++k)
                sum += christoffel[k][a][k].derive(zbl).constant_term();
            out.ricci0[a][l] = -sum;

            GaussianRational closed;
            for (int k = 0; k < n; ++k)
                closed += quartic_r(R, ctxs, k + 1, a + 1, k + 1, l + 1);
            closed += closed;  // factor 2
            if (out.ricci0[a][l] != closed)
                throw identity_violation("tw_curvature: bracket route != closed-form Ricci at (" +
                                         std::to_string(a) + "," + std::to_string(l) + ")");
        }
    for (int a = 0; a < n; ++a)
        for (int l = 0; l < n; ++l)
            if (out.ricci0[a][l] != out.ricci0[l][a].conj())
                throw identity_violation("tw_curvature: Ricci(0) is not Hermitian");

    // g_{a b-bar}(0) = delta, so the contraction with the inverse is a trace
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) {
            GaussianRational want = a == b ? kOne : GaussianRational();
            if (levi_g[a][b].constant_term() != want)
                throw identity_violation("tw_curvature: g(0) != identity");
        }
    for (int a = 0; a < n; ++a) out.r_scal0 += out.ricci0[a][a];
    if (!out.r_scal0.is_real())
        throw identity_violation("tw_curvature: scalar curvature at 0 is not real");
    return out;
}

GeometryReport geometry_report(const ModelSurface& s) {
    const SurfaceContexts& ctxs = s.ctxs();
    GeometryReport rep;
    rep.R = solve_graph(s);
    rep.frame = cr_frame(s, rep.R);
    rep.omega0 = contact_form(s, rep.R, rep.frame);
    rep.domega0 = rep.omega0.exterior_d();
    rep.reeb = reeb_field(rep.omega0);
    rep.lambda = volume_density(rep.omega0, ctxs.n);

    rep.levi_g.resize(ctxs.n);
    for (int a = 0; a < ctxs.n; ++a)
        for (int b = 0; b < ctxs.n; ++b)
            rep.levi_g[a].push_back(
                rep.domega0.pair({rep.frame[a], rep.frame[b].conjugated()}).scaled(kI));

    rep.christoffel = tw_connection(rep.domega0, rep.frame, rep.reeb);

    // first z-bar derivative of Gamma against the quartic data of R
    for (int i = 0; i < ctxs.n; ++i)
        for (int j = 0; j < ctxs.n; ++j)
            for (int k = 0; k < ctxs.n; ++k)
                for (int h = 0; h < ctxs.n; ++h) {
                    GaussianRational lhs =
                        rep.christoffel[i][j][k]
                            .derive(ctxs.surface->index_of(SurfaceContexts::zb(h + 1)))
                            .constant_term();
                    GaussianRational rhs =
                        -(quartic_r(rep.R, ctxs, i + 1, j + 1, k + 1, h + 1) +
                          quartic_r(rep.R, ctxs, i + 1, j + 1, k + 1, h + 1));
                    if (lhs != rhs)
                        throw identity_violation(
                            "geometry: d Gamma / dzb (0) != -2 d^4 R (0) at (" + std::to_string(i) +
                            "," + std::to_string(j) + "," + std::to_string(k) + "," +
                            std::to_string(h) + ")");
                }

    CurvatureAtOrigin curv = tw_curvature(rep.christoffel, rep.levi_g, rep.R, ctxs);
    rep.ricci0 = std::move(curv.ricci0);
    rep.r_scal0 = std::move(curv.r_scal0);

    for (int l = 1; l <= ctxs.n; ++l)
        rep.lambda_lap0 += rep.lambda.derive(ctxs.surface->index_of(SurfaceContexts::z(l)))
                               .derive(ctxs.surface->index_of(SurfaceContexts::zb(l)))
                               .constant_term();
    for (int j = 1; j <= ctxs.n; ++j)
        for (int k = 1; k <= ctxs.n; ++k)
            rep.r_quartic_trace0 += quartic_r(rep.R, ctxs, j, k, j, k);
    return rep;
}

}  // namespace szg
