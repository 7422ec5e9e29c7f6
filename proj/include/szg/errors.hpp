#pragma once

#include <stdexcept>
#include <string>

namespace szg {

// Base class for everything this library throws on purpose.
struct error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Exact arithmetic: division by zero and friends.
struct arithmetic_error : error {
    using error::error;
};

// PiScaled addition with mismatched pi powers.
struct grading_error : arithmetic_error {
    using arithmetic_error::arithmetic_error;
};

// exact_sqrt asked for a root that does not exist in Q(i); callers may fall
// back to floating point.
struct inexact_root : arithmetic_error {
    using arithmetic_error::arithmetic_error;
};

// API misuse: context/arity mismatch, unknown variable, and so on.
struct usage_error : error {
    using error::error;
};

// substitute() saw an image with an undeclared nonzero constant term.
struct base_point_error : usage_error {
    using usage_error::usage_error;
};

// reciprocal() of a jet with zero constant term.
struct non_invertible : error {
    using error::error;
};

// linear_solve with a singular constant-term matrix.
struct degenerate_frame : error {
    using error::error;
};

// implicit_solve with vanishing linear coefficient on the solve variable.
struct non_graph_surface : error {
    using error::error;
};

// Weierstrass/Malgrange division preconditions violated.
struct preparation_failure : error {
    using error::error;
};

// Normal-form validation: carries which condition failed.
struct validation_error : error {
    using error::error;
};

// Stationary phase: F does not vanish to second order at the base point.
struct not_critical_point : error {
    using error::error;
};

struct singular_hessian : error {
    using error::error;
};

// Degree caps too small for the requested expansion order.
struct truncation_unsound : error {
    using error::error;
};

// Numeric oracle did not converge within its budget.
struct oracle_failure : error {
    using error::error;
};

// An exact identity the pipeline relies on failed; indicates an upstream bug.
struct identity_violation : error {
    using error::error;
};

// Wraps a failure with the pipeline stage it happened in.
struct pipeline_error : error {
    std::string stage;
    pipeline_error(std::string stage_, const std::string& what_)
        : error("[" + stage_ + "] " + what_), stage(std::move(stage_)) {}
};

}  // namespace szg
