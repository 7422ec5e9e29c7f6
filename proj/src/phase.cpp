#include "szg/phase.hpp"

#include <random>

namespace szg {

namespace {
const GaussianRational kOne{make_rat(1)};
const GaussianRational kI = GaussianRational::i();
const GaussianRational kHalf{make_rat(1, 2)};

// doubled -> surface, folding the second point onto the first
std::vector<Jet> diagonal_images(const SurfaceContexts& ctxs) {
    std::vector<Jet> images;
    for (size_t v = 0; v < ctxs.doubled->size(); ++v) {
        std::string name = ctxs.doubled->name(v);
        if (name == "st")
            name = "s";
        else if (name[0] == 'w')
            name[0] = 'z';  // w_j -> z_j, wb_j -> zb_j
        images.push_back(Jet::variable(ctxs.surface, ctxs.cap, name));
    }
    return images;
}

// the involution swapping the two points of the doubled context
std::map<std::string, std::string> swap_points_map(const SurfaceContexts& ctxs) {
    std::map<std::string, std::string> m;
    for (int j = 1; j <= ctxs.n; ++j) {
        m[SurfaceContexts::z(j)] = SurfaceContexts::w(j);
        m[SurfaceContexts::w(j)] = SurfaceContexts::z(j);
        m[SurfaceContexts::zb(j)] = SurfaceContexts::wb(j);
        m[SurfaceContexts::wb(j)] = SurfaceContexts::zb(j);
    }
    m["s"] = "st";
    m["st"] = "s";
    return m;
}

}  // namespace

Jet ambient_phase(const ModelSurface& s) {
    const SurfaceContexts& ctxs = s.ctxs();
    const ContextPtr& dctx = ctxs.doubled_ambient;
    Jet phase(dctx, ctxs.cap);
    // coefficient of z^a zb^b in r is d^{a+b} r(0) / (a! b!) already
    for (const auto& [mi, c] : s.r().terms()) {
        MultiIndex target(dctx->size());
        for (size_t v = 0; v < ctxs.ambient->size(); ++v) {
            if (mi[v] == 0) continue;
            std::string name = ctxs.ambient->name(v);
            if (ctxs.ambient->kind(v) == VarKind::Antiholomorphic) name = "wb" + name.substr(2);
            target = target.raised(dctx->index_of(name), mi[v]);
        }
        phase.add_coeff(target, c * (-kI));  // 1/i = -i
    }

    // support: holomorphic in z, antiholomorphic in w
    for (const auto& [mi, c] : phase.terms())
        for (size_t v = 0; v < dctx->size(); ++v)
            if (mi[v] && (dctx->name(v)[0] == 'z' ? dctx->kind(v) != VarKind::Holomorphic
                                                  : dctx->kind(v) != VarKind::Antiholomorphic))
                throw identity_violation("ambient_phase: unexpected monomial " + mi.str(*dctx));

    // diagonal substitution wb -> zb recovers r / i
    std::vector<Jet> diag;
    for (size_t v = 0; v < dctx->size(); ++v) {
        std::string name = dctx->name(v);
        if (name[0] == 'w') name = (name[1] == 'b') ? "zb" + name.substr(2) : "z" + name.substr(1);
        diag.push_back(Jet::variable(ctxs.ambient, ctxs.cap, name));
    }
    if (!(phase.substituted(diag, ctxs.ambient) == s.r().scaled(-kI)))
        throw identity_violation("ambient_phase: diagonal substitution does not reproduce r / i");
    return phase;
}

Jet restrict_phase(const ModelSurface& s, const Jet& phase_ambient, const GeometryReport& geom) {
    const SurfaceContexts& ctxs = s.ctxs();
    const ContextPtr& dctx = ctxs.doubled;
    const int cap = ctxs.cap;

    std::map<std::string, std::string> to_w;
    for (int j = 1; j <= ctxs.n; ++j) {
        to_w[SurfaceContexts::z(j)] = SurfaceContexts::w(j);
        to_w[SurfaceContexts::zb(j)] = SurfaceContexts::wb(j);
    }
    to_w["s"] = "st";
    Jet R_z = geom.R.renamed(dctx);
    Jet R_w = geom.R.renamed(dctx, to_w);
    Jet sv = Jet::variable(dctx, cap, "s");
    Jet stv = Jet::variable(dctx, cap, "st");

    std::vector<Jet> images;
    for (size_t v = 0; v < ctxs.doubled_ambient->size(); ++v) {
        const std::string& name = ctxs.doubled_ambient->name(v);
        if (auto idx = dctx->find(name))
            images.push_back(Jet::variable(dctx, cap, *idx));
        else if (name == SurfaceContexts::z(ctxs.n + 1))
            images.push_back(sv + R_z.scaled(kI));
        else if (name == SurfaceContexts::zb(ctxs.n + 1))
            images.push_back(sv - R_z.scaled(kI));
        else if (name == SurfaceContexts::w(ctxs.n + 1))
            images.push_back(stv + R_w.scaled(kI));
        else
            images.push_back(stv - R_w.scaled(kI));
    }
    Jet phi = phase_ambient.substituted(images, dctx);

    // phi(x, x) = 0
    if (!phi.substituted(diagonal_images(ctxs), ctxs.surface).is_zero())
        throw identity_violation("restrict_phase: phi(x,x) != 0");

    // Hermitian symmetry phi(x,y) = -conj(phi(y,x)), coefficientwise
    if (!(phi.renamed(dctx, swap_points_map(ctxs)).conjugated() == -phi))
        throw identity_violation("restrict_phase: Hermitian phase symmetry fails");

    // quadratic model: phi = -s + st + (i/2) sum (|z|^2 - 2 z wb + |w|^2) + O(4)
    Jet model(dctx, cap);
    model -= sv;
    model += stv;
    for (int j = 1; j <= ctxs.n; ++j) {
        Jet zj = Jet::variable(dctx, cap, SurfaceContexts::z(j));
        Jet zbj = Jet::variable(dctx, cap, SurfaceContexts::zb(j));
        Jet wj = Jet::variable(dctx, cap, SurfaceContexts::w(j));
        Jet wbj = Jet::variable(dctx, cap, SurfaceContexts::wb(j));
        model += (zj * zbj - (zj * wbj).scaled(GaussianRational(make_rat(2))) + wj * wbj)
                     .scaled(kI * kHalf);
    }
    Jet dev = phi - model;
    if (!dev.is_zero() && dev.min_degree() < 4) {
        throw identity_violation("restrict_phase: quadratic model violated at " +
                                 dev.terms().begin()->first.str(*dctx) + " -> " +
                                 dev.terms().begin()->second.str());
    }

    // quartic transfer to R on both points
    for (int j = 1; j <= ctxs.n; ++j)
        for (int k = 1; k <= ctxs.n; ++k)
            for (int l = 1; l <= ctxs.n; ++l)
                for (int m = 1; m <= ctxs.n; ++m) {
                    GaussianRational want = -kI * quartic_r(geom.R, ctxs, j, k, l, m);
                    GaussianRational z_side = phi.derive(dctx->index_of(SurfaceContexts::z(j)))
                                                  .derive(dctx->index_of(SurfaceContexts::z(k)))
                                                  .derive(dctx->index_of(SurfaceContexts::zb(l)))
                                                  .derive(dctx->index_of(SurfaceContexts::zb(m)))
                                                  .constant_term();
                    GaussianRational w_side = phi.derive(dctx->index_of(SurfaceContexts::w(j)))
                                                  .derive(dctx->index_of(SurfaceContexts::w(k)))
                                                  .derive(dctx->index_of(SurfaceContexts::wb(l)))
                                                  .derive(dctx->index_of(SurfaceContexts::wb(m)))
                                                  .constant_term();
                    if (z_side != want || w_side != want)
                        throw identity_violation("restrict_phase: quartic transfer to R fails at (" +
                                                 std::to_string(j) + "," + std::to_string(k) + "," +
                                                 std::to_string(l) + "," + std::to_string(m) + ")");
                }

    // d_x phi on the diagonal is -omega0
    std::vector<Jet> diag = diagonal_images(ctxs);
    for (size_t v = 0; v < ctxs.surface->size(); ++v) {
        Jet dphi = phi.derive(dctx->index_of(ctxs.surface->name(v))).substituted(diag, ctxs.surface);
        if (!(dphi + geom.omega0.component({static_cast<uint8_t>(v)})).is_zero())
            throw identity_violation("restrict_phase: d_x phi (x,x) != -omega0 at d" +
                                     ctxs.surface->name(v));
    }

    // T^2 phi (0,0) = 0
    VectorFieldJet Tx = reeb_on_first_point(geom.reeb, ctxs);
    if (!Tx.apply(Tx.apply(phi)).constant_term().is_zero())
        throw identity_violation("restrict_phase: T^2 phi (0,0) != 0");

    return phi;
}

VectorFieldJet reeb_on_first_point(const VectorFieldJet& T, const SurfaceContexts& ctxs) {
    VectorFieldJet Tx(ctxs.doubled, ctxs.cap);
    for (size_t v = 0; v < ctxs.surface->size(); ++v) {
        const Jet& comp = T.component(v);
        if (comp.is_zero()) continue;
        Tx.component(ctxs.doubled->index_of(ctxs.surface->name(v))) = comp.renamed(ctxs.doubled);
    }
    return Tx;
}

Factorization malgrange_factor(const ModelSurface& s, const Jet& phi, const GeometryReport& geom) {
    const SurfaceContexts& ctxs = s.ctxs();
    const ContextPtr& dctx = ctxs.doubled;
    size_t s_idx = dctx->index_of("s");

    WeierstrassFactors wf = weierstrass_divide(phi, s_idx);
    for (const auto& [mi, c] : wf.g.terms())
        if (mi[s_idx]) throw identity_violation("malgrange_factor: g depends on s");

    Jet Phi = wf.g - Jet::variable(dctx, ctxs.cap, s_idx);

    // division contract
    if (!(wf.f * Phi == phi)) throw identity_violation("malgrange_factor: f * (-s + g) != phi");

    // f(x,x) equals the ds-coefficient of omega0 along the diagonal
    // (differentiate phi = f (-s + g) by s on the diagonal): exactly 1 for
    // tangential perturbations, 1 + O(degree 3) otherwise.
    std::vector<Jet> diag = diagonal_images(ctxs);
    Jet f_diag = wf.f.substituted(diag, ctxs.surface) -
                 Jet::constant(ctxs.surface, ctxs.cap, kOne);
    if (s.tangential_perturbation()) {
        if (!f_diag.is_zero()) throw identity_violation("malgrange_factor: f(x,x) != 1");
    } else if (!f_diag.is_zero() && f_diag.min_degree() < 3) {
        throw identity_violation("malgrange_factor: f(x,x) != 1 + O(degree 3)");
    }
    Jet g_diag = wf.g.substituted(diag, ctxs.surface);
    if (!(g_diag == Jet::variable(ctxs.surface, g_diag.cap(), "s")))
        throw identity_violation("malgrange_factor: g(x',x) != s");

    Jet f_dev = wf.f - Jet::constant(dctx, wf.f.cap(), kOne);
    if (!f_dev.is_zero() && f_dev.min_degree() < 3)
        throw identity_violation("malgrange_factor: f - 1 has terms below degree 3");

    VectorFieldJet Tx = reeb_on_first_point(geom.reeb, ctxs);
    if (!Tx.apply(Tx.apply(Phi)).constant_term().is_zero())
        throw identity_violation("malgrange_factor: T^2 Phi (0,0) != 0");

    return {std::move(wf.f), std::move(wf.g), std::move(Phi)};
}

PhaseResult build_phase(const ModelSurface& s, const GeometryReport& geom) {
    PhaseResult out;
    out.phi_ambient = ambient_phase(s);
    out.phi = restrict_phase(s, out.phi_ambient, geom);
    out.fact = malgrange_factor(s, out.phi, geom);
    return out;
}

double min_im_phi_on_samples(const Jet& phi, double radius, int count, unsigned seed) {
    const ContextPtr& ctx = phi.context();
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unif(-1.0, 1.0);
    double min_im = std::numeric_limits<double>::infinity();
    const auto& holo = ctx->holomorphic();
    const auto& reals = ctx->reals();
    const size_t dim_real = 2 * holo.size() + reals.size();
    for (int it = 0; it < count; ++it) {
        // a real point of the chart drawn uniformly from a ball
        std::vector<double> coords(dim_real);
        double norm2 = 0.0;
        for (double& c : coords) {
            c = unif(rng);
            norm2 += c * c;
        }
        double scale = radius * std::pow(std::abs(unif(rng)), 1.0 / dim_real) /
                       std::max(std::sqrt(norm2), 1e-12);
        std::vector<std::complex<double>> point(ctx->size());
        size_t k = 0;
        for (size_t h : holo) {
            point[h] = {scale * coords[k], scale * coords[k + 1]};
            point[ctx->conj(h)] = std::conj(point[h]);
            k += 2;
        }
        for (size_t r : reals) point[r] = scale * coords[k++];
        min_im = std::min(min_im, phi.eval(point).imag());
    }
    return min_im;
}

}  // namespace szg
