#include "szg/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <set>

namespace szg {

namespace {

// QUADPACK 15-point Kronrod rule on [-1, 1] with the embedded 7-point Gauss.
constexpr double kXgk[8] = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144838258730, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr double kWgk[8] = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr double kWg[4] = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Cell {
    double a, b;
    Cplx value;
    double err;
};

Cell evaluate_cell(const RealFn1& f, double a, double b, long& evaluations) {
    const double c = 0.5 * (a + b), h = 0.5 * (b - a);
    Cplx k15 = 0.0, g7 = 0.0;
    for (int i = 0; i < 8; ++i) {
        if (kXgk[i] == 0.0) {
            Cplx fc = f(c);
            ++evaluations;
            k15 += kWgk[i] * fc;
            g7 += kWg[3] * fc;
            continue;
        }
        Cplx f1 = f(c - h * kXgk[i]);
        Cplx f2 = f(c + h * kXgk[i]);
        evaluations += 2;
        k15 += kWgk[i] * (f1 + f2);
        if (i % 2 == 1) g7 += kWg[i / 2] * (f1 + f2);
    }
    k15 *= h;
    g7 *= h;
    return {a, b, k15, std::abs(k15 - g7)};
}

// Compensated (Kahan) sum in a fixed left-to-right interval order, so the
// result does not depend on the subdivision history.
Cplx kahan_sum(std::vector<Cell>& cells, double& err_total) {
    std::sort(cells.begin(), cells.end(), [](const Cell& x, const Cell& y) { return x.a < y.a; });
    Cplx sum = 0.0, comp = 0.0;
    err_total = 0.0;
    for (const Cell& c : cells) {
        Cplx y = c.value - comp;
        Cplx t = sum + y;
        comp = (t - sum) - y;
        sum = t;
        err_total += c.err;
    }
    return sum;
}

}  // namespace

QuadratureResult quad_adaptive_seeded(const RealFn1& f, const std::vector<double>& breakpoints,
                                      double tol, long budget) {
    if (breakpoints.size() < 2) throw usage_error("quad_adaptive: need an interval");
    QuadratureResult out;
    std::vector<Cell> cells;
    double err_total = 0.0;
    for (size_t i = 0; i + 1 < breakpoints.size(); ++i) {
        cells.push_back(evaluate_cell(f, breakpoints[i], breakpoints[i + 1], out.evaluations));
        err_total += cells.back().err;
    }
    while (err_total > tol) {
        if (out.evaluations > budget)
            {
            char buf[64];
            std::snprintf(buf, sizeof buf, "%.3e", err_total);
            throw oracle_failure(std::string("quad_adaptive: budget exhausted at error ") + buf);
        }
        size_t w = 0;
        for (size_t i = 1; i < cells.size(); ++i)
            if (cells[i].err > cells[w].err) w = i;
        Cell cell = cells[w];
        double mid = 0.5 * (cell.a + cell.b);
        Cell left = evaluate_cell(f, cell.a, mid, out.evaluations);
        Cell right = evaluate_cell(f, mid, cell.b, out.evaluations);
        err_total += left.err + right.err - cell.err;
        cells[w] = left;
        cells.push_back(right);
    }
    out.value = kahan_sum(cells, out.error_estimate);
    return out;
}

QuadratureResult quad_adaptive(const RealFn1& f, double a, double b, double tol, long budget) {
    return quad_adaptive_seeded(f, {a, b}, tol, budget);
}

QuadratureResult quad_adaptive_2d(const RealFn2& f, double ax, double bx, double ay, double by,
                                  double tol, long budget) {
    QuadratureResult out;
    long evals = 0;
    double inner_tol = tol / (10.0 * (bx - ax));
    RealFn1 outer = [&](double x) {
        QuadratureResult inner = quad_adaptive([&](double y) { return f(x, y); }, ay, by, inner_tol,
                                               budget);
        evals += inner.evaluations;
        return inner.value;
    };
    QuadratureResult res = quad_adaptive(outer, ax, bx, tol, budget);
    if (evals > budget) throw oracle_failure("quad_adaptive_2d: budget exhausted");
    res.evaluations = evals;
    return res;
}

QuadratureResult quad_oscillatory(const RealFn1& F, const RealFn1& u, double k, double a, double b,
                                  double tol) {
    return quad_adaptive(
        [&](double x) { return std::exp(Cplx(0.0, k) * F(x)) * u(x); }, a, b, tol);
}

QuadratureResult quad_oscillatory_2d(const RealFn2& F, const RealFn2& u, double k, double ax,
                                     double bx, double ay, double by, double tol) {
    return quad_adaptive_2d(
        [&](double x, double y) { return std::exp(Cplx(0.0, k) * F(x, y)) * u(x, y); }, ax, bx, ay,
        by, tol);
}

Cplx gamma_pv(int m, Cplx x) {
    if (x == Cplx(0.0)) throw usage_error("gamma_pv: x = 0");
    if (x.real() < 0.0) throw usage_error("gamma_pv: Re x must be >= 0");
    auto int_pow = [](Cplx base, int e) {
        Cplx r = 1.0;
        for (int i = 0; i < e; ++i) r *= base;
        return r;
    };
    if (m >= 0) {
        double fact = 1.0;
        for (int i = 2; i <= m; ++i) fact *= i;
        return fact * int_pow(1.0 / x, m + 1);
    }
    int p = -m - 1;  // x^{-m-1} = x^p with p >= 0
    double fact = 1.0;
    for (int i = 2; i <= p; ++i) fact *= i;
    double harmonic = 0.0;
    for (int j = 1; j <= p; ++j) harmonic += 1.0 / j;  // empty when m = -1
    double sign = (m % 2 == 0) ? 1.0 : -1.0;
    return (sign / fact) * int_pow(x, p) * (std::log(x) + kEulerGamma - harmonic);
}

ReductionReport osc_reduction_check(const RealFn1& F, const RealFn1& G, int m,
                                    const RealFn1& test_fn, std::vector<double> epsilons,
                                    double a, double b, double tol) {
    if (epsilons.size() < 2) throw usage_error("osc_reduction_check: need at least two epsilons");
    std::sort(epsilons.rbegin(), epsilons.rend());

    double fact = 1.0;
    for (int i = 2; i <= m; ++i) fact *= i;
    auto int_pow = [](Cplx base, int e) {
        Cplx r = 1.0;
        for (int i = 0; i < e; ++i) r *= base;
        return r;
    };

    ReductionReport rep;
    rep.epsilons = epsilons;
    for (double eps : epsilons) {
        // int_0^inf e^{i t z} t^m dt = m! / (-i z)^{m+1} for Im z > 0.
        // The two sides are integrated as one difference; separately each
        // carries an O(1/eps) peak that cancels, which quadrature cannot
        // resolve to tight absolute tolerances.
        RealFn1 diff = [&](double x) {
            Cplx zl = Cplx(0.0, -1.0) * (G(x) * F(x) + Cplx(0.0, eps));
            Cplx zr = Cplx(0.0, -1.0) * (F(x) + Cplx(0.0, eps));
            return test_fn(x) * fact *
                   (1.0 / int_pow(zl, m + 1) - 1.0 / (int_pow(zr, m + 1) * int_pow(G(x), m + 1)));
        };
        // geometric breakpoints toward 0 so the eps-scale feature at the zero
        // set of F cannot be stepped over
        std::vector<double> bps{a};
        for (double t = -1.0; t < -0.9 * eps; t *= 0.25) bps.push_back(t);
        bps.push_back(0.0);
        std::vector<double> right;
        for (double t = 1.0; t > 0.9 * eps; t *= 0.25) right.push_back(t);
        for (auto it = right.rbegin(); it != right.rend(); ++it) bps.push_back(*it);
        bps.push_back(b);
        rep.differences.push_back(quad_adaptive_seeded(diff, bps, tol).value);
    }

    // Neville extrapolation of the differences to eps = 0
    std::vector<Cplx> t = rep.differences;
    const size_t n = t.size();
    for (size_t j = 1; j < n; ++j)
        for (size_t i = n - 1; i >= j; --i) {
            double e_i = epsilons[i], e_ij = epsilons[i - j];
            t[i] = t[i] + (t[i] - t[i - 1]) * (e_i / (e_ij - e_i));
            if (i == j) break;
        }
    double extr = std::abs(t[n - 1]);
    if (!std::isfinite(extr)) throw oracle_failure("osc_reduction_check: extrapolation diverged");
    rep.extrapolated_abs = extr;
    return rep;
}

double smooth_cutoff(double r, double plateau, double support) {
    if (r <= plateau) return 1.0;
    if (r >= support) return 0.0;
    auto p = [](double u) { return u > 0.0 ? std::exp(-1.0 / u) : 0.0; };
    double t = (r - plateau) / (support - plateau);
    return p(1.0 - t) / (p(1.0 - t) + p(t));
}

DecayReport sp_numeric_check(const Jet& F, const Jet& u, const std::vector<double>& ks, int N,
                             double tol) {
    const ContextPtr& ctx = F.context();
    if (!ctx->holomorphic().empty())
        throw usage_error("sp_numeric_check: real-variable contexts only");
    const size_t dims = ctx->reals().size();
    if (dims < 1 || dims > 2) throw usage_error("sp_numeric_check: dims must be 1 or 2");
    if (N < 1) throw usage_error("sp_numeric_check: N >= 1 required");

    CriticalPointData data = hessian_at(F);
    complete_critical_data(data);
    std::vector<GaussianRational> P = sp_terms(F, u, N - 1);

    const double lo = -4.0, hi = 4.0;
    DecayReport rep;
    rep.ks = ks;
    for (double k : ks) {
        Cplx quad;
        if (dims == 1) {
            RealFn1 integrand = [&](double x) {
                return std::exp(Cplx(0.0, k) * F.eval({x})) * u.eval({x}) * smooth_cutoff(std::abs(x));
            };
            quad = quad_adaptive(integrand, lo, hi, tol).value;
        } else {
            RealFn2 integrand = [&](double x, double y) {
                return std::exp(Cplx(0.0, k) * F.eval({x, y})) * u.eval({x, y}) *
                       smooth_cutoff(std::hypot(x, y));
            };
            quad = quad_adaptive_2d(integrand, lo, hi, lo, hi, tol * 10).value;
        }
        Cplx series = 0.0;
        for (int j = 0; j < N; ++j) series += P[j].to_complex() * std::pow(k, -j);
        Cplx approx = data.prefactor.at_k(k) * series;
        rep.errors.push_back(std::abs(quad - approx));
    }

    // least-squares slope of log err against log k
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    size_t n = ks.size();
    for (size_t i = 0; i < n; ++i) {
        double X = std::log(ks[i]);
        double Y = std::log(std::max(rep.errors[i], 1e-300));
        sx += X;
        sy += Y;
        sxx += X * X;
        sxy += X * Y;
    }
    rep.slope = -(n * sxy - sx * sy) / (n * sxx - sx * sx);
    return rep;
}

}  // namespace szg
