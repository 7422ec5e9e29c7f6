#include "szg/stationary.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>
#include <numbers>

namespace szg {

std::vector<RealAxis> real_axes(const VariableContext& ctx) {
    std::vector<RealAxis> axes;
    for (size_t z : ctx.holomorphic()) {
        axes.push_back({RealAxis::Type::PairRe, z});
        axes.push_back({RealAxis::Type::PairIm, z});
    }
    for (size_t s : ctx.reals()) axes.push_back({RealAxis::Type::Real, s});
    return axes;
}

Jet axis_derive(const Jet& f, const RealAxis& axis) {
    const VariableContext& ctx = *f.context();
    switch (axis.type) {
        case RealAxis::Type::Real:
            return f.derive(axis.var);
        case RealAxis::Type::PairRe:
            return f.derive(axis.var) + f.derive(ctx.conj(axis.var));
        case RealAxis::Type::PairIm:
        default:
            return (f.derive(axis.var) - f.derive(ctx.conj(axis.var)))
                .scaled(GaussianRational::i());
    }
}

GaussianRational exact_det(GMatrix m) {
    const size_t n = m.size();
    for (const auto& row : m)
        if (row.size() != n) throw usage_error("exact_det: matrix must be square");
    GaussianRational det(make_rat(1));
    for (size_t col = 0; col < n; ++col) {
        size_t piv = col;
        while (piv < n && m[piv][col].is_zero()) ++piv;
        if (piv == n) return GaussianRational();
        if (piv != col) {
            std::swap(m[piv], m[col]);
            det = -det;
        }
        det *= m[col][col];
        GaussianRational inv = m[col][col].inverse();
        for (size_t row = col + 1; row < n; ++row) {
            if (m[row][col].is_zero()) continue;
            GaussianRational factor = m[row][col] * inv;
            for (size_t j = col; j < n; ++j) m[row][j] -= factor * m[col][j];
        }
    }
    return det;
}

GMatrix invert_symmetric(const GMatrix& m) {
    const size_t n = m.size();
    for (size_t i = 0; i < n; ++i) {
        if (m[i].size() != n) throw usage_error("invert_symmetric: matrix must be square");
        for (size_t j = i + 1; j < n; ++j)
            if (m[i][j] != m[j][i]) throw usage_error("invert_symmetric: matrix is not symmetric");
    }
    GMatrix a = m;
    GMatrix inv(n, std::vector<GaussianRational>(n));
    for (size_t i = 0; i < n; ++i) inv[i][i] = GaussianRational(make_rat(1));
    for (size_t col = 0; col < n; ++col) {
        size_t piv = col;
        while (piv < n && a[piv][col].is_zero()) ++piv;
        if (piv == n) throw singular_hessian("invert_symmetric: singular matrix");
        if (piv != col) {
            std::swap(a[piv], a[col]);
            std::swap(inv[piv], inv[col]);
        }
        GaussianRational s = a[col][col].inverse();
        for (size_t j = 0; j < n; ++j) {
            a[col][j] *= s;
            inv[col][j] *= s;
        }
        for (size_t row = 0; row < n; ++row) {
            if (row == col || a[row][col].is_zero()) continue;
            GaussianRational factor = a[row][col];
            for (size_t j = 0; j < n; ++j) {
                a[row][j] -= factor * a[col][j];
                inv[row][j] -= factor * inv[col][j];
            }
        }
    }
    return inv;
}

std::complex<double> PrefactorResult::at_k(double k) const {
    return numeric_value * std::pow(k, -0.5 * dim);
}

CriticalPointData hessian_at(const Jet& F) {
    if (!F.constant_term().is_zero())
        throw not_critical_point("hessian_at: F(0) != 0");
    CriticalPointData data;
    data.axes = real_axes(*F.context());
    const size_t d = data.axes.size();

    std::vector<Jet> first;
    first.reserve(d);
    for (const RealAxis& ax : data.axes) {
        Jet df = axis_derive(F, ax);
        if (!df.constant_term().is_zero())
            throw not_critical_point("hessian_at: dF(0) != 0 along an axis");
        first.push_back(std::move(df));
    }
    data.hessian.assign(d, std::vector<GaussianRational>(d));
    for (size_t u = 0; u < d; ++u)
        for (size_t v = u; v < d; ++v) {
            GaussianRational h = axis_derive(first[u], data.axes[v]).constant_term();
            data.hessian[u][v] = h;
            data.hessian[v][u] = h;
        }
    data.det = exact_det(data.hessian);
    if (data.det.is_zero()) throw singular_hessian("hessian_at: det F''(0) = 0");
    return data;
}

namespace {

// The block shape of the composed Szego phase: 2i I_m + an antidiagonal
// (-1) pair on the two trailing real axes. Exactly this shape has an exact
// prefactor; everything else goes through the numeric eigenvalue path.
bool is_szego_block(const GMatrix& h) {
    const size_t d = h.size();
    if (d < 2 || (d - 2) % 2 != 0) return false;
    GaussianRational two_i(make_rat(0), make_rat(2));
    GaussianRational minus_one(make_rat(-1));
    for (size_t i = 0; i < d; ++i)
        for (size_t j = 0; j < d; ++j) {
            const GaussianRational& x = h[i][j];
            if (i < d - 2 && j < d - 2) {
                if (i == j ? x != two_i : !x.is_zero()) return false;
            } else if (i >= d - 2 && j >= d - 2) {
                if (i != j ? x != minus_one : !x.is_zero()) return false;
            } else if (!x.is_zero()) {
                return false;
            }
        }
    return true;
}

}  // namespace

PrefactorResult sp_prefactor(const GMatrix& h) {
    PrefactorResult r;
    const size_t d = h.size();
    r.dim = static_cast<int>(d);

    // eigenvalues of F''(0)/i
    Eigen::MatrixXcd m(d, d);
    for (size_t i = 0; i < d; ++i)
        for (size_t j = 0; j < d; ++j)
            m(i, j) = h[i][j].to_complex() / std::complex<double>(0.0, 1.0);
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(m, /*computeEigenvectors=*/false);
    if (solver.info() != Eigen::Success)
        throw oracle_failure("prefactor: eigenvalue solve failed");
    std::complex<double> prod = 1.0;
    for (Eigen::Index k = 0; k < solver.eigenvalues().size(); ++k) {
        std::complex<double> mu = solver.eigenvalues()[k];
        r.eigenvalue_args.push_back(std::arg(mu));
        if (mu.real() < -1e-9)
            throw error("prefactor: eigenvalue of F''/i in the left half plane; branch undefined");
        prod *= std::sqrt(mu);  // principal root
    }
    r.numeric_value = std::pow(2.0 * std::numbers::pi, 0.5 * d) / prod;

    if (is_szego_block(h)) {
        // eigenvalues of F''/i are {2 (d-2 times), i, -i}; principal roots
        // multiply to 2^{(d-2)/2}, so the prefactor is exactly 2 pi^{d/2}.
        r.exact = true;
        r.exact_value = PiScaled(GaussianRational(make_rat(2)), static_cast<int>(d) / 2);
    }
    return r;
}

void complete_critical_data(CriticalPointData& data) {
    if (data.completed) return;
    data.inverse = invert_symmetric(data.hessian);
    data.prefactor = sp_prefactor(data.hessian);
    data.completed = true;
}

SPOperator::SPOperator(ContextPtr ctx, std::vector<RealAxis> axes, GMatrix coefficient)
    : ctx_(std::move(ctx)), axes_(std::move(axes)), a_(std::move(coefficient)) {
    if (a_.size() != axes_.size()) throw usage_error("SPOperator: shape mismatch");
    for (size_t i = 0; i < a_.size(); ++i)
        for (size_t j = 0; j < a_.size(); ++j)
            if (a_[i][j] != a_[j][i]) throw usage_error("SPOperator: matrix must be symmetric");
}

SPOperator SPOperator::from_critical_data(const ContextPtr& ctx, const CriticalPointData& data) {
    if (!data.completed) throw usage_error("SPOperator: critical data not completed");
    GMatrix a = data.inverse;
    for (auto& row : a)
        for (auto& x : row) x = -x;  // D = -i d turns the pairing into -F''^{-1}
    return SPOperator(ctx, data.axes, std::move(a));
}

Jet SPOperator::apply(const Jet& f) const {
    Jet r(ctx_, std::max(f.cap() - 2, 0));
    for (size_t u = 0; u < axes_.size(); ++u) {
        Jet du = axis_derive(f, axes_[u]);
        for (size_t v = 0; v < axes_.size(); ++v) {
            if (a_[u][v].is_zero()) continue;
            r += axis_derive(du, axes_[v]).scaled(a_[u][v]);
        }
    }
    return r;
}

std::vector<GaussianRational> sp_terms(const Jet& F, const Jet& u, int J) {
    if (F.context() != u.context()) throw usage_error("sp_terms: context mismatch");
    if (J < 0) throw usage_error("sp_terms: negative order");
    if (F.cap() < 6 * J)
        throw truncation_unsound("sp_terms: phase cap " + std::to_string(F.cap()) +
                                 " too small for J = " + std::to_string(J));
    if (u.cap() < 2 * J)
        throw truncation_unsound("sp_terms: amplitude cap " + std::to_string(u.cap()) +
                                 " too small for J = " + std::to_string(J));

    CriticalPointData data = hessian_at(F);
    complete_critical_data(data);
    SPOperator op = SPOperator::from_critical_data(F.context(), data);

    Jet h = F - F.degree_at_most(2);
    if (!h.is_zero() && h.min_degree() < 3)
        throw identity_violation("sp_terms: third-order remainder has low-degree terms");

    auto factorial = [](int k) {
        Rat f = make_rat(1);
        for (int i = 2; i <= k; ++i) f *= i;
        return f;
    };

    std::vector<GaussianRational> result;
    result.reserve(J + 1);
    for (int j = 0; j <= J; ++j) {
        GaussianRational pj;
        Jet hmu = Jet::constant(F.context(), F.cap(), GaussianRational(make_rat(1)));
        for (int mu = 0; mu <= 2 * j; ++mu) {
            // 2v >= 3mu holds exactly for mu <= 2j when v = mu + j
            if (mu > 0) hmu = hmu * h;
            int v = mu + j;
            Jet cur = hmu * u;
            for (int k = 0; k < v; ++k) cur = op.apply(cur);
            GaussianRational val = cur.constant_term();
            if (val.is_zero()) continue;
            Rat denom = factorial(v) * factorial(mu);
            GaussianRational two_pow_v(make_rat(1));
            for (int k = 0; k < v; ++k) two_pow_v *= GaussianRational(make_rat(1, 2));
            pj += GaussianRational::i_power(-j) * two_pow_v * val / GaussianRational(denom);
        }
        result.push_back(std::move(pj));
    }
    return result;
}

}  // namespace szg
