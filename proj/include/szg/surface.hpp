#pragma once

#include <random>
#include <string>
#include <vector>

#include "szg/szego.hpp"

namespace szg {

// One perturbation monomial coeff * z^alpha * zb^beta of the defining
// function, exponents over z_1..z_{n+1}.
struct PerturbationTerm {
    std::vector<int> alpha;
    std::vector<int> beta;
    GaussianRational coeff;
};

struct SurfaceSpec {
    int n = 1;
    int truncation_degree = 6;
    std::vector<PerturbationTerm> perturbation;
};

// JSON spec file: {"n": int, "truncation_degree": int, "perturbation":
// [{"alpha": [...], "beta": [...], "coeff": {"re": [num, den], "im": [num,
// den]}}]}. Rational entries are decimal strings (plain integers are also
// accepted on input). Throws validation_error with entry-level diagnostics.
SurfaceSpec parse_surface(const std::string& path);
SurfaceSpec parse_surface_text(const std::string& json_text);
std::string surface_to_json(const SurfaceSpec& spec);

// Hermitian closure: materializes implied conjugate partners, rejects
// explicit partners with inconsistent coefficients and diagonal terms with
// nonzero imaginary part.
SurfaceSpec hermitian_closure(const SurfaceSpec& spec);

// Closure + defining-function jet + normal-form validation.
ModelSurface build_surface(const SurfaceSpec& spec, int degree_override = 0);

// Random admissible perturbations: coefficients p/q with p in {-9..9},
// q in {1..9} on monomials of the given total degrees, Hermitian closure
// implied. Deterministic for a given generator state.
SurfaceSpec random_surface_spec(int n, std::mt19937_64& rng, int max_terms = 6,
                                const std::vector<int>& degrees = {4});

// Report serialization (schema_version 1).
std::string report_to_json(const SzegoReport& rep, bool pretty = true);

// Jet literals: {"cap": N, "context": [{"name", "kind"}...], "terms":
// [{"exponents": [...], "coeff": {"re": [num, den], "im": [num, den]}}]}
// with decimal-string rationals. Debugging format for phase jets etc.
std::string jet_to_json(const Jet& j, bool pretty = true);

// Combined report covering the requested sections of one pipeline run, plus
// optional jet dumps ("phi", "f", "g", "Phi", "F", "lambda", "R").
struct ReportOptions {
    bool geometry = true;
    bool phase = false;
    bool szego = true;
    std::vector<std::string> dump_jets;
};
std::string pipeline_report_json(const PipelineArtifacts& art, const ReportOptions& opts,
                                 bool pretty = true);

}  // namespace szg
