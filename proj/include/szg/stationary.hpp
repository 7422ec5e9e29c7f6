#pragma once

#include <complex>
#include <vector>

#include "szg/jets.hpp"

namespace szg {

// One real coordinate axis of a context: a conjugate pair (z, zb) contributes
// the two axes x = Re z and y = Im z, a real variable contributes itself.
// Derivatives along axes are the derived operators
//   d/dx = d/dz + d/dzb,   d/dy = i (d/dz - d/dzb).
struct RealAxis {
    enum class Type { PairRe, PairIm, Real };
    Type type;
    size_t var;  // holomorphic index for pair axes, variable index otherwise
};

// Canonical axis order: pair axes (x_1, y_1, x_2, y_2, ...) in holomorphic
// variable order, then real variables in context order.
std::vector<RealAxis> real_axes(const VariableContext& ctx);

Jet axis_derive(const Jet& f, const RealAxis& axis);

using GMatrix = std::vector<std::vector<GaussianRational>>;

GaussianRational exact_det(GMatrix m);
// Exact inverse by elimination over Q(i); input must be symmetric.
GMatrix invert_symmetric(const GMatrix& m);

// det(F''(0) / 2 pi i)^(-1/2) with the principal branch taken eigenvalue-wise
// on F''(0)/i (legitimate when Im F >= 0, which forces those eigenvalues into
// the closed right half plane). Values are at k = 1; the k dependence is the
// fixed power k^(-dim/2).
struct PrefactorResult {
    bool exact = false;
    PiScaled exact_value;                 // set iff exact
    std::complex<double> numeric_value;   // always set
    std::vector<double> eigenvalue_args;  // branch certificate: args of eig(F''/i)
    int dim = 0;

    std::complex<double> at_k(double k) const;
};

struct CriticalPointData {
    std::vector<RealAxis> axes;
    GMatrix hessian;
    GaussianRational det;
    GMatrix inverse;            // empty until completed
    PrefactorResult prefactor;  // default until completed

    bool completed = false;
};

// Branch-correct prefactor for a Hessian: the exact path fires for the
// structured composed-phase block 2i I_m (+) [[0,-1],[-1,0]], everything else
// is a numeric eigenvalue solve with the certificate filled in.
PrefactorResult sp_prefactor(const GMatrix& hessian);

// Checks F(0) = 0 and dF(0) = 0, assembles the real-coordinate Hessian and
// its determinant. Throws not_critical_point / singular_hessian.
CriticalPointData hessian_at(const Jet& F);

// Fills in the exact inverse and the branch-correct prefactor.
void complete_critical_data(CriticalPointData& data);

// The constant-coefficient operator <F''(0)^{-1} D, D> with D = -i d, i.e.
// -sum_{u,v} (F''(0)^{-1})_{uv} d_u d_v over real axes.
class SPOperator {
public:
    SPOperator(ContextPtr ctx, std::vector<RealAxis> axes, GMatrix coefficient);

    static SPOperator from_critical_data(const ContextPtr& ctx, const CriticalPointData& data);

    // the symmetric coefficient matrix (equals -F''(0)^{-1})
    const GMatrix& matrix() const { return a_; }

    Jet apply(const Jet& f) const;

private:
    ContextPtr ctx_;
    std::vector<RealAxis> axes_;
    GMatrix a_;
};

// P_0 u, ..., P_J u of the stationary phase expansion at the critical point 0:
//   P_j u = sum_{v - mu = j, 2v >= 3mu} i^{-j} 2^{-v} <F''(0)^{-1}D,D>^v (h^mu u)(0) / (v! mu!)
// with h = F - F(0) - (1/2)<F''(0)x, x>. Exact. Requires F.cap >= 6J and
// u.cap >= 2J, otherwise truncation_unsound.
std::vector<GaussianRational> sp_terms(const Jet& F, const Jet& u, int J);

}  // namespace szg
