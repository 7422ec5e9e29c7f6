// Batch front end: validate surface specs, run the kernel-coefficient
// pipeline, and drive the self-check suites.

#include <chrono>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "szg/selfcheck.hpp"

namespace {

// Stable exit codes (documented in the README).
enum ExitCode : int {
    kOk = 0,
    kOtherError = 1,
    kSpecError = 2,        // unreadable/malformed spec, Hermitian or degree violation
    kValidationError = 3,  // normal-form rejection
    kGeometryError = 4,
    kPhaseError = 5,
    kSzegoError = 6,
    kOracleError = 7,
    kCheckFailure = 8,
};

int stage_exit_code(const std::string& stage) {
    if (stage == "geometry") return kGeometryError;
    if (stage == "phase") return kPhaseError;
    if (stage == "szego") return kSzegoError;
    return kOtherError;
}

std::string pis_text(const szg::PiScaled& p) { return p.str(); }

void print_text_report(const szg::SzegoReport& rep) {
    std::cout << "n                    = " << rep.n << "\n";
    std::cout << "A0                   = " << pis_text(rep.A0) << "\n";
    std::cout << "A1 (stationary)      = " << pis_text(rep.A1_route_sp) << "\n";
    std::cout << "A1 (closed form)     = " << pis_text(rep.A1_route_closed) << "\n";
    std::cout << "A1 (curvature)       = " << pis_text(rep.A1_route_curv) << "\n";
    std::cout << "R_scal(0)            = " << rep.r_scal0.str() << "\n";
    std::cout << "sum d2 lambda (0)    = " << rep.lambda_lap0.str() << "\n";
    std::cout << "sum d4 R (0)         = " << rep.r_quartic_trace0.str() << "\n";
    std::cout << "det Hess             = " << rep.hessian_det.str() << "\n";
    std::cout << "prefactor            = " << pis_text(rep.prefactor) << "\n";
    std::cout << "agreement            = " << (rep.agreement() ? "true" : "false") << "\n";
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Szego kernel second-coefficient pipeline over exact arithmetic"};
    app.require_subcommand(1);

    // run
    auto* run = app.add_subcommand("run", "run the pipeline on a surface spec file");
    std::string spec_path;
    std::string report = "szego";
    std::string format = "json";
    int degree = 0;
    std::vector<std::string> dump_jets;
    run->add_option("--spec", spec_path, "surface spec JSON file")->required();
    run->add_option("--report", report, "geometry|phase|szego|all")
        ->check(CLI::IsMember({"geometry", "phase", "szego", "all"}));
    run->add_option("--format", format, "json|text")->check(CLI::IsMember({"json", "text"}));
    run->add_option("--degree", degree, "override the truncation degree (>= spec value)");
    run->add_option("--dump-jet", dump_jets,
                    "include jet literals in the JSON report (phi|f|g|Phi|F|lambda|R)");

    // check
    auto* check = app.add_subcommand("check", "run the property suites");
    unsigned seed = 42;
    int samples = 20;
    std::string suite = "all";
    check->add_option("--seed", seed, "random seed");
    check->add_option("--samples", samples, "random surface count (0 = fixed suites only)");
    check->add_option("--suite", suite, "all|scalars|jets|exterior|geometry|phase|szego|oracle")
        ->check(CLI::IsMember(
            {"all", "scalars", "jets", "exterior", "geometry", "phase", "szego", "oracle"}));

    CLI11_PARSE(app, argc, argv);

    if (run->parsed()) {
        szg::SurfaceSpec spec;
        try {
            spec = szg::parse_surface(spec_path);
        } catch (const szg::error& e) {
            std::cerr << "spec error: " << e.what() << "\n";
            return kSpecError;
        }
        try {
            szg::ModelSurface surface = szg::build_surface(spec, degree);
            if (report == "geometry" || report == "phase") {
                szg::GeometryReport geom = szg::geometry_report(surface);
                if (report == "phase") {
                    szg::PhaseResult ph = szg::build_phase(surface, geom);
                    szg::Jet f_dev =
                        ph.fact.f - szg::Jet::constant(ph.fact.f.context(), ph.fact.f.cap(),
                                                       szg::GaussianRational(szg::make_rat(1)));
                    if (format == "json") {
                        std::cout << "{\n  \"schema_version\": 1,\n  \"phase\": {\n"
                                  << "    \"identities_verified\": true,\n"
                                  << "    \"f_minus_one_min_degree\": "
                                  << (f_dev.is_zero() ? -1 : f_dev.min_degree()) << "\n  }\n}\n";
                    } else {
                        std::cout << "phase identities verified; f - 1 starts at degree "
                                  << (f_dev.is_zero() ? -1 : f_dev.min_degree()) << "\n";
                    }
                } else {
                    if (format == "json") {
                        std::cout << "{\n  \"schema_version\": 1,\n  \"geometry\": {\n"
                                  << "    \"r_scal0\": [\"" << geom.r_scal0.re().get_num().get_str()
                                  << "\", \"" << geom.r_scal0.re().get_den().get_str() << "\"],\n"
                                  << "    \"lambda_lap0\": [\""
                                  << geom.lambda_lap0.re().get_num().get_str() << "\", \""
                                  << geom.lambda_lap0.re().get_den().get_str() << "\"],\n"
                                  << "    \"r_quartic_trace0\": [\""
                                  << geom.r_quartic_trace0.re().get_num().get_str() << "\", \""
                                  << geom.r_quartic_trace0.re().get_den().get_str()
                                  << "\"]\n  }\n}\n";
                    } else {
                        std::cout << "R_scal(0)         = " << geom.r_scal0.str() << "\n";
                        std::cout << "sum d2 lambda (0) = " << geom.lambda_lap0.str() << "\n";
                        std::cout << "sum d4 R (0)      = " << geom.r_quartic_trace0.str() << "\n";
                    }
                }
            } else {
                szg::PipelineArtifacts art = szg::run_pipeline(surface);
                if (format == "json") {
                    szg::ReportOptions opts;
                    opts.geometry = true;  // the scalar invariants ship with every report
                    opts.phase = report == "all";
                    opts.szego = true;
                    opts.dump_jets = dump_jets;
                    std::cout << szg::pipeline_report_json(art, opts) << "\n";
                } else {
                    print_text_report(art.report);
                }
                if (!art.report.agreement()) return kSzegoError;
            }
        } catch (const szg::validation_error& e) {
            std::cerr << "validation error: " << e.what() << "\n";
            return kValidationError;
        } catch (const szg::pipeline_error& e) {
            std::cerr << "pipeline error: " << e.what() << "\n";
            return stage_exit_code(e.stage);
        } catch (const szg::oracle_failure& e) {
            std::cerr << "oracle failure: " << e.what() << "\n";
            return kOracleError;
        } catch (const szg::error& e) {
            std::cerr << "error: " << e.what() << "\n";
            return kOtherError;
        }
        return kOk;
    }

    // check
    struct SuiteEntry {
        std::string name;
        std::function<szg::CheckStats()> fn;
    };
    std::vector<SuiteEntry> suites{
        {"scalars", [&] { return szg::check_scalars(seed, samples); }},
        {"jets", [&] { return szg::check_jets(seed, samples); }},
        {"exterior", [&] { return szg::check_exterior(seed, samples); }},
        {"geometry", [&] { return szg::check_geometry(seed, samples); }},
        {"phase", [&] { return szg::check_phase(seed, samples); }},
        {"szego", [&] { return szg::check_szego(seed, samples); }},
        {"oracle", [&] { return szg::check_oracle(); }},
    };
    bool all_ok = true;
    for (const auto& entry : suites) {
        if (suite != "all" && suite != entry.name) continue;
        auto start = std::chrono::steady_clock::now();
        try {
            szg::CheckStats stats = entry.fn();
            auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                          std::chrono::steady_clock::now() - start)
                          .count();
            std::cout << "[PASS] " << entry.name << " (" << stats.cases << " cases, " << ms
                      << " ms)\n";
        } catch (const szg::error& e) {
            std::cout << "[FAIL] " << entry.name << ": " << e.what() << "\n";
            all_ok = false;
            break;  // first failing property wins
        }
    }
    return all_ok ? kOk : kCheckFailure;
}
