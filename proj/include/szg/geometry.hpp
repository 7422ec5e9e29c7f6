#pragma once

#include <vector>

#include "szg/exterior.hpp"
#include "szg/stationary.hpp"

namespace szg {

// Variable contexts shared by one surface's pipeline. Naming:
//   ambient   z1..z{n+1}, zb1..zb{n+1}
//   graph     z1..zn, zb1..zbn, s, x      (s = Re z_{n+1}, x = Im z_{n+1})
//   surface   z1..zn, zb1..zbn, s
//   doubled   z.., zb.., s, w.., wb.., st (second point w, st = y_{2n+1})
//   composed  w.., wb.., sw, tau          (integration point and sigma = 1 + tau)
struct SurfaceContexts {
    int n = 0;
    int cap = 0;
    ContextPtr ambient, graph, surface, doubled, composed;
    ContextPtr doubled_ambient;  // z1..z{n+1}, zb.., w1..w{n+1}, wb..

    static SurfaceContexts make(int n, int cap);

    static std::string z(int j) { return "z" + std::to_string(j); }
    static std::string zb(int j) { return "zb" + std::to_string(j); }
    static std::string w(int j) { return "w" + std::to_string(j); }
    static std::string wb(int j) { return "wb" + std::to_string(j); }
};

// A defining function in normal form:
//   r = -i z_{n+1} + i zb_{n+1} + sum_j z_j zb_j + (real terms of degree >= 4)
class ModelSurface {
public:
    // Validates reality, the exact quadratic normal form, and that the
    // perturbation starts at total degree 4. Each violation is reported as a
    // distinct validation_error.
    static ModelSurface validate(int n, int cap, Jet r);
    static ModelSurface heisenberg(int n, int cap);

    int n() const { return ctxs_.n; }
    int cap() const { return ctxs_.cap; }
    const Jet& r() const { return r_; }
    const SurfaceContexts& ctxs() const { return ctxs_; }

    // True when the perturbation is free of z_{n+1}. On this class the graph
    // function has no s dependence and the diagonal normalizations
    // (ds-coefficient of omega0, f(x,x)) are exactly 1; otherwise they hold
    // modulo degree 3.
    bool tangential_perturbation() const { return tangential_; }

private:
    ModelSurface(SurfaceContexts ctxs, Jet r, bool tangential)
        : ctxs_(std::move(ctxs)), r_(std::move(r)), tangential_(tangential) {}
    SurfaceContexts ctxs_;
    Jet r_;
    bool tangential_ = true;
};

struct GeometryReport {
    Jet R;                                // graph function, surface context
    FormJet omega0;                       // contact form
    FormJet domega0;
    VectorFieldJet reeb;                  // T: omega0(T) = -1, d omega0(T, .) = 0
    std::vector<VectorFieldJet> frame;    // L_1..L_n spanning T^{1,0}
    Jet lambda;                           // volume density
    std::vector<std::vector<Jet>> levi_g;  // g_{a b-bar} = i d omega0(L_a, Lb_b)
    // christoffel[i][j][k] = Gamma^k_{ij} (nabla_{L_i} L_j = Gamma^k_{ij} L_k)
    std::vector<std::vector<std::vector<Jet>>> christoffel;
    GMatrix ricci0;                       // R_{a l-bar}(0)
    GaussianRational r_scal0;
    GaussianRational lambda_lap0;         // sum_l d^2 lambda / dz_l dzb_l (0)
    GaussianRational r_quartic_trace0;    // sum_{j,k} d^4 R / dz_j dzb_j dz_k dzb_k (0)
};

// Individual pipeline stages (each asserts its own exact identities).
Jet solve_graph(const ModelSurface& s);
std::vector<VectorFieldJet> cr_frame(const ModelSurface& s, const Jet& R);
FormJet contact_form(const ModelSurface& s, const Jet& R,
                     const std::vector<VectorFieldJet>& frame);
VectorFieldJet reeb_field(const FormJet& omega0);
Jet volume_density(const FormJet& omega0, int n);
std::vector<std::vector<std::vector<Jet>>> tw_connection(
    const FormJet& domega0, const std::vector<VectorFieldJet>& frame,
    const VectorFieldJet& reeb);
// ricci0 and the scalar curvature at 0; asserts the bracket route equals the
// closed form 2 sum_k d^4 R / dz_k dzb_k dz_a dzb_l (0) and g(0) = id.
struct CurvatureAtOrigin {
    GMatrix ricci0;
    GaussianRational r_scal0;
};
CurvatureAtOrigin tw_curvature(const std::vector<std::vector<std::vector<Jet>>>& christoffel,
                               const std::vector<std::vector<Jet>>& levi_g, const Jet& R,
                               const SurfaceContexts& ctxs);

GeometryReport geometry_report(const ModelSurface& s);

// d^4 R / dz_j dzb_j dz_k dzb_k style mixed fourth derivative at 0.
GaussianRational quartic_r(const Jet& R, const SurfaceContexts& ctxs, int i, int j, int k, int l);

}  // namespace szg
