#pragma once

#include <map>
#include <vector>

#include "szg/jets.hpp"

namespace szg {

// Vector field with jet coefficients, one component per context variable.
class VectorFieldJet {
public:
    VectorFieldJet() = default;
    VectorFieldJet(ContextPtr ctx, int cap);
    explicit VectorFieldJet(std::vector<Jet> components);

    const ContextPtr& context() const { return ctx_; }
    size_t size() const { return comp_.size(); }
    const Jet& component(size_t i) const { return comp_[i]; }
    Jet& component(size_t i) { return comp_[i]; }

    // derivation: V(f) = sum_i V^i d f / d x_i
    Jet apply(const Jet& f) const;

    VectorFieldJet operator-() const;
    VectorFieldJet& operator+=(const VectorFieldJet& o);
    friend VectorFieldJet operator+(VectorFieldJet a, const VectorFieldJet& b) { return a += b; }
    VectorFieldJet scaled_by(const Jet& f) const;

    // component-conjugate field (real fields are fixed points)
    VectorFieldJet conjugated() const;
    bool is_real() const;

private:
    ContextPtr ctx_;
    std::vector<Jet> comp_;
};

VectorFieldJet lie_bracket(const VectorFieldJet& u, const VectorFieldJet& v);

// Exterior form with jet coefficients over the context covariables
// (d x_i for each variable x_i). Only strictly increasing covariable tuples
// are stored; antisymmetry is canonicalized on insertion.
class FormJet {
public:
    using Tuple = std::vector<uint8_t>;  // strictly increasing covariable indices

    FormJet() = default;
    FormJet(ContextPtr ctx, int degree, int cap);

    static FormJet d_of_variable(ContextPtr ctx, int cap, size_t var);

    const ContextPtr& context() const { return ctx_; }
    int degree() const { return degree_; }
    int cap() const { return cap_; }
    const std::map<Tuple, Jet>& components() const { return comp_; }

    bool is_zero() const;
    Jet component(const Tuple& t) const;  // zero jet when absent
    // Accepts an arbitrary tuple and sorts it, tracking the sign.
    void add_term(Tuple t, const Jet& coefficient);

    FormJet operator-() const;
    FormJet& operator+=(const FormJet& o);
    FormJet& operator-=(const FormJet& o);
    friend FormJet operator+(FormJet a, const FormJet& b) { return a += b; }
    friend FormJet operator-(FormJet a, const FormJet& b) { return a -= b; }
    FormJet scaled(const GaussianRational& s) const;
    FormJet scaled_by(const Jet& f) const;

    friend bool operator==(const FormJet& a, const FormJet& b);

    FormJet wedge(const FormJet& o) const;
    FormJet exterior_d() const;
    // interior product with the first slot
    FormJet interior(const VectorFieldJet& v) const;
    // full contraction; field count must match the degree
    Jet pair(const std::vector<VectorFieldJet>& fields) const;

    // Pullback along the map sending each target-context expression through
    // `images` (one image jet per source variable, in the target context):
    // coefficients are substituted and each d x_i becomes d(image_i).
    FormJet pullback(const std::vector<Jet>& images, const ContextPtr& target) const;

    FormJet conjugated() const;
    bool is_real() const { return *this == conjugated(); }

    std::string str() const;

private:
    ContextPtr ctx_;
    int degree_ = 0;
    int cap_ = 0;
    std::map<Tuple, Jet> comp_;
};

// Coefficient of dx_1 ^ ... ^ dx_{2n+1} after converting complex covariables
// to real ones (dz_j = dx_{2j-1} + i dx_{2j}); equivalently the pairing with
// the positively oriented real coordinate frame. Requires top degree.
Jet top_density(const FormJet& a);

// The real coordinate frame (d/dx_1, ..., d/dx_{2n+1}) expressed through the
// complex frame: d/dx_{2j-1} = d/dz_j + d/dzb_j, d/dx_{2j} = i(d/dz_j - d/dzb_j),
// real variables verbatim. Order: conjugate pairs first (in holomorphic
// order), then real variables.
std::vector<VectorFieldJet> real_coordinate_frame(const ContextPtr& ctx, int cap);

}  // namespace szg
