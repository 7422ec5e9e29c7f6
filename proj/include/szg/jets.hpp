#pragma once

#include <complex>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "szg/scalars.hpp"

namespace szg {

enum class VarKind { Holomorphic, Antiholomorphic, Real };

// Ordered variable list with a conjugation involution. Holomorphic variables
// are paired with their antiholomorphic partners; real variables are fixed
// points. The involution is what makes reality of a jet a coefficient
// condition.
class VariableContext {
public:
    struct Var {
        std::string name;
        VarKind kind;
        int conj;  // index of the conjugate variable (self for real)
    };

    static std::shared_ptr<const VariableContext> make(std::vector<Var> vars);

    size_t size() const { return vars_.size(); }
    const std::string& name(size_t i) const { return vars_[i].name; }
    VarKind kind(size_t i) const { return vars_[i].kind; }
    size_t conj(size_t i) const { return static_cast<size_t>(vars_[i].conj); }
    size_t index_of(const std::string& name) const;
    std::optional<size_t> find(const std::string& name) const;

    // Holomorphic variable indices, in context order.
    const std::vector<size_t>& holomorphic() const { return holo_; }
    // Real variable indices, in context order.
    const std::vector<size_t>& reals() const { return real_; }

private:
    std::vector<Var> vars_;
    std::vector<size_t> holo_, real_;
};

using ContextPtr = std::shared_ptr<const VariableContext>;

// Builder so call sites read like the variable list itself.
class ContextBuilder {
public:
    // adds z and its conjugate partner, in that order
    ContextBuilder& pair(const std::string& holo, const std::string& anti);
    ContextBuilder& real(const std::string& name);
    ContextPtr build() const { return VariableContext::make(vars_); }

private:
    std::vector<VariableContext::Var> vars_;
};

// Exponent vector. Ordered by graded lexicographic order so jets have a
// canonical term order.
class MultiIndex {
public:
    MultiIndex() = default;
    explicit MultiIndex(size_t nvars) : e_(nvars, 0), deg_(0) {}
    explicit MultiIndex(std::vector<uint8_t> e);

    size_t size() const { return e_.size(); }
    int degree() const { return deg_; }
    uint8_t operator[](size_t i) const { return e_[i]; }

    MultiIndex raised(size_t i, int k = 1) const;
    // returns nullopt when the exponent would go negative
    std::optional<MultiIndex> lowered(size_t i, int k = 1) const;
    // swap exponents along the conjugation involution
    MultiIndex conjugated(const VariableContext& ctx) const;

    bool is_constant() const { return deg_ == 0; }

    friend bool operator==(const MultiIndex& a, const MultiIndex& b) { return a.e_ == b.e_; }
    friend bool operator<(const MultiIndex& a, const MultiIndex& b) {
        if (a.deg_ != b.deg_) return a.deg_ < b.deg_;
        return a.e_ < b.e_;
    }

    std::string str(const VariableContext& ctx) const;

private:
    std::vector<uint8_t> e_;
    int deg_ = 0;
};

// Truncated multivariate power series over Q(i): exact coefficients, sparse
// storage, explicit degree cap. A jet with cap N represents its underlying
// function modulo terms of total degree > N; every operation propagates the
// cap pessimistically so each stored coefficient is certified exact.
class Jet {
public:
    using TermMap = std::map<MultiIndex, GaussianRational>;

    Jet() = default;
    Jet(ContextPtr ctx, int cap);

    static Jet constant(ContextPtr ctx, int cap, GaussianRational c);
    static Jet variable(ContextPtr ctx, int cap, size_t var);
    static Jet variable(ContextPtr ctx, int cap, const std::string& name);
    static Jet monomial(ContextPtr ctx, int cap, MultiIndex mi, GaussianRational c);

    const ContextPtr& context() const { return ctx_; }
    int cap() const { return cap_; }
    const TermMap& terms() const { return c_; }
    size_t term_count() const { return c_.size(); }

    bool is_zero() const { return c_.empty(); }
    GaussianRational coeff(const MultiIndex& mi) const;
    GaussianRational constant_term() const;
    // degree of the lowest stored term; cap+1 when the jet is zero mod cap
    int min_degree() const;
    int max_degree() const;

    void set_coeff(const MultiIndex& mi, GaussianRational c);
    void add_coeff(const MultiIndex& mi, const GaussianRational& c);

    Jet operator-() const;
    Jet& operator+=(const Jet& o);
    Jet& operator-=(const Jet& o);
    friend Jet operator+(Jet a, const Jet& b) { return a += b; }
    friend Jet operator-(Jet a, const Jet& b) { return a -= b; }
    friend Jet operator*(const Jet& a, const Jet& b);
    Jet scaled(const GaussianRational& s) const;

    friend bool operator==(const Jet& a, const Jet& b);

    // Lower the cap (dropping terms above it). Raising throws.
    Jet truncated(int new_cap) const;
    // Caller asserts the jet is exact to the new (higher) cap, e.g. for
    // literal polynomials.
    Jet assume_exact_to(int new_cap) const;
    // Keep only terms of one homogeneous degree (cap preserved).
    Jet homogeneous_part(int d) const;
    // Drop terms of degree > d, i.e. the Taylor polynomial of order d.
    Jet degree_at_most(int d) const;

    // Formal partial derivative; the cap drops by the order taken.
    Jet derive(size_t var) const;
    Jet derive(const MultiIndex& alpha) const;

    // Coefficient-conjugate jet: coefficients conjugated, exponents swapped
    // along the context involution.
    Jet conjugated() const;
    bool is_real() const { return *this == conjugated(); }

    // Simultaneous substitution var -> images[var] into a target context.
    // Every image must have the declared constant term (default 0); anything
    // else is a base-point error. With nonzero declared offsets the source is
    // treated as an exact polynomial, which is the caller's responsibility.
    Jet substituted(const std::vector<Jet>& images, const ContextPtr& target,
                    const std::vector<GaussianRational>& declared_offsets = {}) const;

    // Rename variables into a context that holds a variable of the mapped
    // name for every variable with nonzero support.
    Jet renamed(const ContextPtr& target,
                const std::map<std::string, std::string>& name_map = {}) const;

    // Multiplicative inverse modulo the cap; requires nonzero constant term.
    Jet reciprocal() const;

    // Integer power with truncation (k >= 0).
    Jet pow(int k) const;

    std::complex<double> eval(const std::vector<std::complex<double>>& point) const;

    std::string str() const;

private:
    void check_same_context(const Jet& o) const;
    ContextPtr ctx_;
    int cap_ = 0;
    TermMap c_;
};

// Solve M x = b over jets; requires the constant-term matrix invertible.
std::vector<Jet> linear_solve(std::vector<std::vector<Jet>> M, std::vector<Jet> b);

// Solve r(..., v) = 0 for the real variable v by fixed-point iteration.
// Requires r(0) = 0 and a nonzero linear coefficient on v; the result lives
// in the same context with no v-monomials.
Jet implicit_solve(const Jet& r, size_t solve_var);

// phi = f * (-v + g) with g free of v and f(0) = 1. Requires phi(0) = 0 and
// d phi/d v (0) = -1. The recursion is the s-implicit solve for g followed by
// exact synthetic division for f; both are deterministic degree by degree.
struct WeierstrassFactors {
    Jet f;
    Jet g;
};
WeierstrassFactors weierstrass_divide(const Jet& phi, size_t dist_var);

}  // namespace szg
