// Acceptance suite: one criterion per block, one pass/fail line each.
// Everything exact is compared with zero tolerance; numeric oracles use the
// stated tolerances. Exits nonzero if any criterion fails.

#include <chrono>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "szg/oracle.hpp"
#include "szg/selfcheck.hpp"

using namespace szg;

namespace {

const GaussianRational kOne{make_rat(1)};

struct Criterion {
    std::string label;
    std::function<void()> run;
};

void require(bool ok, const std::string& what) {
    if (!ok) throw error(what);
}

SurfaceSpec quartic_spec(int n, const GaussianRational& c) {
    SurfaceSpec spec;
    spec.n = n;
    std::vector<int> alpha(n + 1, 0), beta(n + 1, 0);
    alpha[0] = 2;
    beta[0] = 2;
    spec.perturbation.push_back({alpha, beta, c});
    return spec;
}

}  // namespace

int main() {
    const unsigned seed = 42;
    std::vector<Criterion> criteria;

    criteria.push_back({"main theorem: three exact routes equal R_scal/4 (n in {1,2}, 24 seeded quartics)", [] {
        std::mt19937_64 rng(seed);
        for (int i = 0; i < 24; ++i) {
            SurfaceSpec spec = random_surface_spec(1 + (i % 2), rng, 4);
            SzegoReport rep = verify_main_identity(spec);  // throws on any mismatch
            require(rep.agreement(), "agreement flags not set");
        }
    }});

    criteria.push_back({"Heisenberg baseline: A1 = 0, R_scal(0) = 0, lambda == 1", [] {
        for (int n : {1, 2}) {
            ModelSurface s = ModelSurface::heisenberg(n, 6);
            GeometryReport geom = geometry_report(s);
            require(geom.lambda == Jet::constant(s.ctxs().surface, geom.lambda.cap(), kOne),
                    "lambda != 1");
            SzegoReport rep = full_report(s);
            require(rep.r_scal0.is_zero(), "R_scal(0) != 0");
            require(rep.A1_route_sp.is_zero() && rep.A1_route_closed.is_zero() &&
                        rep.A1_route_curv.is_zero(),
                    "A1 != 0");
            require(rep.agreement(), "routes disagree");
        }
    }});

    criteria.push_back({"worked example: A1 = -c/pi^2 with R_scal = -4c, lap lambda = 4c, d4R = -2c (10 c values)", [] {
        std::vector<GaussianRational> cs;
        for (auto [p, q] : {std::pair{1L, 1L}, {-1L, 1L}, {1L, 2L}, {-1L, 2L}, {1L, 3L},
                            {-2L, 3L}, {3L, 4L}, {-5L, 7L}, {9L, 8L}, {-7L, 9L}})
            cs.emplace_back(make_rat(p, q));
        for (const GaussianRational& c : cs) {
            SzegoReport rep = verify_main_identity(quartic_spec(1, c));
            PiScaled want(-c, -2);
            require(rep.A1_route_sp == want && rep.A1_route_closed == want &&
                        rep.A1_route_curv == want,
                    "A1 != -c/pi^2 for c = " + c.str());
            require(rep.r_scal0 == GaussianRational(make_rat(-4)) * c, "R_scal(0) != -4c");
            require(rep.lambda_lap0 == GaussianRational(make_rat(4)) * c, "lap lambda != 4c");
            require(rep.r_quartic_trace0 == GaussianRational(make_rat(-2)) * c, "d4R trace != -2c");
        }
    }});

    criteria.push_back({"Hessian certificates: det = (-1)^{n+1} 2^{2n}, prefactor = 2 pi^{n+1} (n in {1,2,3})", [] {
        for (int n : {1, 2, 3}) {
            ModelSurface s = ModelSurface::heisenberg(n, 6);
            GeometryReport geom = geometry_report(s);
            PhaseResult ph = build_phase(s, geom);
            Jet F = compose_phase(ph.fact, s.ctxs());
            CriticalPointData data = verify_critical_data(F, n);
            GaussianRational want = kOne;
            for (int k = 0; k < 2 * n; ++k) want = want * GaussianRational(make_rat(2));
            if (n % 2 == 0) want = -want;
            require(data.det == want, "det mismatch at n = " + std::to_string(n));
            require(data.prefactor.exact &&
                        data.prefactor.exact_value == PiScaled(GaussianRational(make_rat(2)), n + 1),
                    "prefactor mismatch at n = " + std::to_string(n));
        }
    }});

    criteria.push_back({"leading coefficient: B0 = A0 = 1/(2 pi^{n+1}) (n in {1,2,3})", [] {
        for (int n : {1, 2, 3}) {
            SzegoReport rep = full_report(ModelSurface::heisenberg(n, 6));
            require(rep.A0 == PiScaled(GaussianRational(make_rat(1, 2)), -(n + 1)), "A0 mismatch");
            require(rep.prefactor * rep.A0 * rep.A0 == rep.A0, "B0 != A0");
        }
    }});

    criteria.push_back({"phase identity suite (exact jet identities, 12 random surfaces)", [] {
        check_phase(seed, 12);
    }});

    criteria.push_back({"geometry identity suite (exact jet identities, 12 random surfaces)", [] {
        check_geometry(seed, 12);
    }});

    criteria.push_back({"truncation independence: degree-5/6 terms leave A1 bit-identical", [] {
        std::mt19937_64 rng(seed + 1);
        for (int i = 0; i < 6; ++i) {
            SurfaceSpec spec = random_surface_spec(1 + (i % 2), rng, 3);
            SzegoReport base = verify_main_identity(spec);
            SurfaceSpec noisy = spec;
            SurfaceSpec extra = random_surface_spec(spec.n, rng, 3, {5, 6});
            for (auto& t : extra.perturbation) noisy.perturbation.push_back(t);
            SzegoReport rep = verify_main_identity(noisy);
            require(rep.A1_route_sp == base.A1_route_sp &&
                        rep.A1_route_closed == base.A1_route_closed &&
                        rep.A1_route_curv == base.A1_route_curv,
                    "A1 moved under degree-5/6 perturbation");
        }
    }});

    criteria.push_back({"stationary-phase numeric oracle: decay order >= N - 0.2, moments to 1e-9", [] {
        check_oracle_sp();
    }});

    criteria.push_back({"regularized-integral oracle: gamma_pv to 1e-10, finite part to 1e-8, reduction to 1e-5", [] {
        check_oracle_integrals();
    }});

    bool all_ok = true;
    double total_ms = 0.0;
    for (size_t i = 0; i < criteria.size(); ++i) {
        auto start = std::chrono::steady_clock::now();
        bool ok = true;
        std::string detail;
        try {
            criteria[i].run();
        } catch (const std::exception& e) {
            ok = false;
            detail = e.what();
        }
        double ms = std::chrono::duration<double, std::milli>(
                        std::chrono::steady_clock::now() - start)
                        .count();
        total_ms += ms;
        std::printf("criterion %02zu [%s] %s (%.0f ms)\n", i + 1, ok ? "PASS" : "FAIL",
                    criteria[i].label.c_str(), ms);
        if (!ok) {
            std::printf("             %s\n", detail.c_str());
            all_ok = false;
        }
    }
    std::printf("acceptance total: %.1f s — %s\n", total_ms / 1000.0,
                all_ok ? "all criteria passed" : "FAILURES PRESENT");
    return all_ok ? 0 : 1;
}
