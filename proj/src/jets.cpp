#include "szg/jets.hpp"

#include <algorithm>
#include <sstream>

namespace szg {

// ---------------------------------------------------------------------------
// VariableContext

std::shared_ptr<const VariableContext> VariableContext::make(std::vector<Var> vars) {
    auto ctx = std::make_shared<VariableContext>();
    ctx->vars_ = std::move(vars);
    const size_t n = ctx->vars_.size();
    for (size_t i = 0; i < n; ++i) {
        const Var& v = ctx->vars_[i];
        if (v.conj < 0 || static_cast<size_t>(v.conj) >= n)
            throw usage_error("context: conjugate index out of range for " + v.name);
        const Var& w = ctx->vars_[v.conj];
        if (static_cast<size_t>(w.conj) != i)
            throw usage_error("context: conjugation is not an involution at " + v.name);
        switch (v.kind) {
            case VarKind::Real:
                if (static_cast<size_t>(v.conj) != i)
                    throw usage_error("context: real variable " + v.name + " must be self-conjugate");
                ctx->real_.push_back(i);
                break;
            case VarKind::Holomorphic:
                if (w.kind != VarKind::Antiholomorphic)
                    throw usage_error("context: conjugate of " + v.name + " must be antiholomorphic");
                ctx->holo_.push_back(i);
                break;
            case VarKind::Antiholomorphic:
                if (w.kind != VarKind::Holomorphic)
                    throw usage_error("context: conjugate of " + v.name + " must be holomorphic");
                break;
        }
        for (size_t j = i + 1; j < n; ++j)
            if (ctx->vars_[j].name == v.name)
                throw usage_error("context: duplicate variable name " + v.name);
    }
    return ctx;
}

size_t VariableContext::index_of(const std::string& name) const {
    auto i = find(name);
    if (!i) throw usage_error("context has no variable named " + name);
    return *i;
}

std::optional<size_t> VariableContext::find(const std::string& name) const {
    for (size_t i = 0; i < vars_.size(); ++i)
        if (vars_[i].name == name) return i;
    return std::nullopt;
}

ContextBuilder& ContextBuilder::pair(const std::string& holo, const std::string& anti) {
    int i = static_cast<int>(vars_.size());
    vars_.push_back({holo, VarKind::Holomorphic, i + 1});
    vars_.push_back({anti, VarKind::Antiholomorphic, i});
    return *this;
}

ContextBuilder& ContextBuilder::real(const std::string& name) {
    int i = static_cast<int>(vars_.size());
    vars_.push_back({name, VarKind::Real, i});
    return *this;
}

// ---------------------------------------------------------------------------
// MultiIndex

MultiIndex::MultiIndex(std::vector<uint8_t> e) : e_(std::move(e)), deg_(0) {
    for (uint8_t x : e_) deg_ += x;
}

MultiIndex MultiIndex::raised(size_t i, int k) const {
    MultiIndex r = *this;
    r.e_[i] = static_cast<uint8_t>(r.e_[i] + k);
    r.deg_ += k;
    return r;
}

std::optional<MultiIndex> MultiIndex::lowered(size_t i, int k) const {
    if (e_[i] < k) return std::nullopt;
    MultiIndex r = *this;
    r.e_[i] = static_cast<uint8_t>(r.e_[i] - k);
    r.deg_ -= k;
    return r;
}

MultiIndex MultiIndex::conjugated(const VariableContext& ctx) const {
    MultiIndex r(e_.size());
    for (size_t i = 0; i < e_.size(); ++i) r.e_[ctx.conj(i)] = e_[i];
    r.deg_ = deg_;
    return r;
}

std::string MultiIndex::str(const VariableContext& ctx) const {
    std::ostringstream os;
    bool first = true;
    for (size_t i = 0; i < e_.size(); ++i) {
        if (e_[i] == 0) continue;
        if (!first) os << "*";
        os << ctx.name(i);
        if (e_[i] > 1) os << "^" << int(e_[i]);
        first = false;
    }
    if (first) os << "1";
    return os.str();
}

// ---------------------------------------------------------------------------
// Jet basics

Jet::Jet(ContextPtr ctx, int cap) : ctx_(std::move(ctx)), cap_(cap) {
    if (cap_ < 0) throw usage_error("jet cap must be nonnegative");
}

Jet Jet::constant(ContextPtr ctx, int cap, GaussianRational c) {
    Jet j(std::move(ctx), cap);
    if (!c.is_zero()) j.c_.emplace(MultiIndex(j.ctx_->size()), std::move(c));
    return j;
}

Jet Jet::variable(ContextPtr ctx, int cap, size_t var) {
    Jet j(std::move(ctx), cap);
    if (var >= j.ctx_->size()) throw usage_error("variable index out of range");
    if (cap < 1) throw usage_error("cap too small for a variable jet");
    j.c_.emplace(MultiIndex(j.ctx_->size()).raised(var), GaussianRational(make_rat(1)));
    return j;
}

Jet Jet::variable(ContextPtr ctx, int cap, const std::string& name) {
    size_t i = ctx->index_of(name);
    return variable(std::move(ctx), cap, i);
}

Jet Jet::monomial(ContextPtr ctx, int cap, MultiIndex mi, GaussianRational c) {
    Jet j(std::move(ctx), cap);
    j.set_coeff(mi, std::move(c));
    return j;
}

GaussianRational Jet::coeff(const MultiIndex& mi) const {
    auto it = c_.find(mi);
    return it == c_.end() ? GaussianRational() : it->second;
}

GaussianRational Jet::constant_term() const { return coeff(MultiIndex(ctx_->size())); }

int Jet::min_degree() const { return c_.empty() ? cap_ + 1 : c_.begin()->first.degree(); }

int Jet::max_degree() const { return c_.empty() ? 0 : c_.rbegin()->first.degree(); }

void Jet::set_coeff(const MultiIndex& mi, GaussianRational c) {
    if (mi.size() != ctx_->size()) throw usage_error("multi-index does not fit context");
    if (mi.degree() > cap_) throw usage_error("monomial degree above jet cap");
    if (c.is_zero())
        c_.erase(mi);
    else
        c_[mi] = std::move(c);
}

void Jet::add_coeff(const MultiIndex& mi, const GaussianRational& c) {
    if (c.is_zero()) return;
    if (mi.size() != ctx_->size()) throw usage_error("multi-index does not fit context");
    if (mi.degree() > cap_) throw usage_error("monomial degree above jet cap");
    auto [it, inserted] = c_.try_emplace(mi, c);
    if (!inserted) {
        it->second += c;
        if (it->second.is_zero()) c_.erase(it);
    }
}

void Jet::check_same_context(const Jet& o) const {
    if (ctx_ != o.ctx_) throw usage_error("jet context mismatch");
}

Jet Jet::operator-() const {
    Jet r(ctx_, cap_);
    for (const auto& [mi, c] : c_) r.c_.emplace(mi, -c);
    return r;
}

Jet& Jet::operator+=(const Jet& o) {
    check_same_context(o);
    int new_cap = std::min(cap_, o.cap_);
    if (new_cap < cap_) *this = truncated(new_cap);
    for (const auto& [mi, c] : o.c_) {
        if (mi.degree() > new_cap) continue;
        add_coeff(mi, c);
    }
    return *this;
}

Jet& Jet::operator-=(const Jet& o) {
    check_same_context(o);
    int new_cap = std::min(cap_, o.cap_);
    if (new_cap < cap_) *this = truncated(new_cap);
    for (const auto& [mi, c] : o.c_) {
        if (mi.degree() > new_cap) continue;
        add_coeff(mi, -c);
    }
    return *this;
}

Jet operator*(const Jet& a, const Jet& b) {
    a.check_same_context(b);
    // A product coefficient at degree d is certified as long as every
    // contributing pair is stored, so the cap improves with the factor
    // valuations; the clamp keeps intermediate results from ballooning.
    int cap = std::min(a.cap_ + b.min_degree(), b.cap_ + a.min_degree());
    cap = std::min(cap, std::max(a.cap_, b.cap_));
    Jet r(a.ctx_, cap);
    if (a.c_.empty() || b.c_.empty()) return r;
    for (const auto& [ma, ca] : a.c_) {
        if (ma.degree() > cap) break;  // map is degree-ordered
        for (const auto& [mb, cb] : b.c_) {
            if (ma.degree() + mb.degree() > cap) break;
            MultiIndex m = ma;
            for (size_t i = 0; i < mb.size(); ++i)
                if (mb[i]) m = m.raised(i, mb[i]);
            r.add_coeff(m, ca * cb);
        }
    }
    return r;
}

Jet Jet::scaled(const GaussianRational& s) const {
    Jet r(ctx_, cap_);
    if (s.is_zero()) return r;
    for (const auto& [mi, c] : c_) r.c_.emplace(mi, c * s);
    return r;
}

bool operator==(const Jet& a, const Jet& b) {
    a.check_same_context(b);
    int cap = std::min(a.cap_, b.cap_);
    auto ia = a.c_.begin(), ib = b.c_.begin();
    while (true) {
        while (ia != a.c_.end() && ia->first.degree() > cap) ia = a.c_.end();
        while (ib != b.c_.end() && ib->first.degree() > cap) ib = b.c_.end();
        if (ia == a.c_.end() || ib == b.c_.end()) break;
        if (!(ia->first == ib->first) || ia->second != ib->second) return false;
        ++ia;
        ++ib;
    }
    return ia == a.c_.end() && ib == b.c_.end();
}

Jet Jet::truncated(int new_cap) const {
    if (new_cap > cap_) throw usage_error("truncated() cannot raise a cap");
    Jet r(ctx_, new_cap);
    for (const auto& [mi, c] : c_) {
        if (mi.degree() > new_cap) break;
        r.c_.emplace(mi, c);
    }
    return r;
}

Jet Jet::assume_exact_to(int new_cap) const {
    if (new_cap < cap_) return truncated(new_cap);
    Jet r = *this;
    r.cap_ = new_cap;
    return r;
}

Jet Jet::homogeneous_part(int d) const {
    Jet r(ctx_, cap_);
    for (const auto& [mi, c] : c_)
        if (mi.degree() == d) r.c_.emplace(mi, c);
    return r;
}

Jet Jet::degree_at_most(int d) const {
    Jet r(ctx_, cap_);
    for (const auto& [mi, c] : c_) {
        if (mi.degree() > d) break;
        r.c_.emplace(mi, c);
    }
    return r;
}

// ---------------------------------------------------------------------------
// Calculus

Jet Jet::derive(size_t var) const {
    if (var >= ctx_->size()) throw usage_error("derive: variable index out of range");
    if (cap_ < 1) throw truncation_unsound("derive: cap exhausted");
    Jet r(ctx_, cap_ - 1);
    for (const auto& [mi, c] : c_) {
        auto low = mi.lowered(var);
        if (!low) continue;
        r.add_coeff(*low, c * GaussianRational(make_rat(mi[var])));
    }
    return r;
}

Jet Jet::derive(const MultiIndex& alpha) const {
    if (alpha.size() != ctx_->size()) throw usage_error("derive: multi-index does not fit context");
    Jet r = *this;
    for (size_t v = 0; v < alpha.size(); ++v)
        for (int k = 0; k < alpha[v]; ++k) r = r.derive(v);
    return r;
}

Jet Jet::conjugated() const {
    Jet r(ctx_, cap_);
    for (const auto& [mi, c] : c_) r.c_.emplace(mi.conjugated(*ctx_), c.conj());
    return r;
}

Jet Jet::substituted(const std::vector<Jet>& images, const ContextPtr& target,
                     const std::vector<GaussianRational>& declared_offsets) const {
    const size_t n = ctx_->size();
    if (images.size() != n) throw usage_error("substitute: one image per source variable required");
    for (const Jet& im : images)
        if (im.context() != target) throw usage_error("substitute: image context mismatch");
    for (size_t v = 0; v < n; ++v) {
        GaussianRational want = v < declared_offsets.size() ? declared_offsets[v] : GaussianRational();
        if (images[v].constant_term() != want)
            throw base_point_error("substitute: image of " + ctx_->name(v) +
                                   " has undeclared constant term " + images[v].constant_term().str());
    }

    int cap = cap_;
    std::vector<int> max_exp(n, 0);
    for (const auto& [mi, c] : c_)
        for (size_t v = 0; v < n; ++v) max_exp[v] = std::max<int>(max_exp[v], mi[v]);
    for (size_t v = 0; v < n; ++v)
        if (max_exp[v] > 0) cap = std::min(cap, images[v].cap());

    // cached powers of each occurring image
    std::vector<std::vector<Jet>> pows(n);
    for (size_t v = 0; v < n; ++v) {
        if (max_exp[v] == 0) continue;
        pows[v].reserve(max_exp[v] + 1);
        pows[v].push_back(Jet::constant(target, cap, GaussianRational(make_rat(1))));
        for (int k = 1; k <= max_exp[v]; ++k)
            pows[v].push_back((pows[v].back() * images[v]).truncated(
                std::min(cap, pows[v].back().cap())));
    }

    Jet result(target, cap);
    for (const auto& [mi, c] : c_) {
        Jet prod = Jet::constant(target, cap, c);
        for (size_t v = 0; v < n && !prod.is_zero(); ++v)
            if (mi[v]) prod = prod * pows[v][mi[v]];
        for (const auto& [m, cc] : prod.terms()) {
            if (m.degree() > cap) break;
            result.add_coeff(m, cc);
        }
    }
    return result;
}

Jet Jet::renamed(const ContextPtr& target, const std::map<std::string, std::string>& name_map) const {
    const size_t n = ctx_->size();
    std::vector<Jet> images;
    std::vector<bool> missing(n, false);
    images.reserve(n);
    for (size_t v = 0; v < n; ++v) {
        const std::string& src = ctx_->name(v);
        auto it = name_map.find(src);
        const std::string& dst = it == name_map.end() ? src : it->second;
        if (auto idx = target->find(dst)) {
            images.push_back(Jet::variable(target, cap_, *idx));
        } else {
            images.push_back(Jet(target, cap_));
            missing[v] = true;
        }
    }
    for (const auto& [mi, c] : c_)
        for (size_t v = 0; v < n; ++v)
            if (mi[v] && missing[v])
                throw usage_error("renamed: target context lacks a home for " + ctx_->name(v));
    return substituted(images, target);
}

Jet Jet::reciprocal() const {
    GaussianRational a0 = constant_term();
    if (a0.is_zero()) throw non_invertible("reciprocal of a jet with zero constant term");
    Jet b = Jet::constant(ctx_, cap_, a0.inverse());
    Jet two = Jet::constant(ctx_, cap_, GaussianRational(make_rat(2)));
    // Newton doubling: each step doubles the number of correct degrees.
    for (int correct = 1; correct <= cap_; correct *= 2) b = b * (two - *this * b);
    return b;
}

Jet Jet::pow(int k) const {
    if (k < 0) throw usage_error("pow: negative exponent");
    Jet r = Jet::constant(ctx_, cap_, GaussianRational(make_rat(1)));
    for (int j = 0; j < k; ++j) r = r * *this;
    return r;
}

std::complex<double> Jet::eval(const std::vector<std::complex<double>>& point) const {
    if (point.size() != ctx_->size()) throw usage_error("eval: wrong point dimension");
    std::complex<double> acc = 0.0;
    for (const auto& [mi, c] : c_) {
        std::complex<double> t = c.to_complex();
        for (size_t v = 0; v < point.size(); ++v)
            for (int k = 0; k < mi[v]; ++k) t *= point[v];
        acc += t;
    }
    return acc;
}

std::string Jet::str() const {
    if (c_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [mi, c] : c_) {
        if (!first) os << " + ";
        os << "(" << c.str() << ")";
        if (!mi.is_constant()) os << "*" << mi.str(*ctx_);
        first = false;
    }
    os << "  [cap " << cap_ << "]";
    return os.str();
}

// ---------------------------------------------------------------------------
// Solvers

std::vector<Jet> linear_solve(std::vector<std::vector<Jet>> M, std::vector<Jet> b) {
    const size_t n = b.size();
    if (M.size() != n) throw usage_error("linear_solve: shape mismatch");
    for (auto& row : M)
        if (row.size() != n) throw usage_error("linear_solve: matrix must be square");

    for (size_t col = 0; col < n; ++col) {
        size_t piv = col;
        while (piv < n && M[piv][col].constant_term().is_zero()) ++piv;
        if (piv == n) throw degenerate_frame("linear_solve: constant-term matrix is singular");
        std::swap(M[piv], M[col]);
        std::swap(b[piv], b[col]);
        Jet inv = M[col][col].reciprocal();
        for (size_t j = col; j < n; ++j) M[col][j] = M[col][j] * inv;
        b[col] = b[col] * inv;
        for (size_t row = 0; row < n; ++row) {
            if (row == col || M[row][col].is_zero()) continue;
            Jet factor = M[row][col];
            for (size_t j = col; j < n; ++j) M[row][j] -= factor * M[col][j];
            b[row] -= factor * b[col];
        }
    }
    return b;
}

Jet implicit_solve(const Jet& r, size_t solve_var) {
    const ContextPtr& ctx = r.context();
    if (solve_var >= ctx->size()) throw usage_error("implicit_solve: bad variable index");
    if (ctx->kind(solve_var) != VarKind::Real)
        throw usage_error("implicit_solve: solve variable must be real-type");
    if (!r.constant_term().is_zero())
        throw usage_error("implicit_solve: r(0) != 0");
    GaussianRational c0 = r.derive(solve_var).constant_term();
    if (c0.is_zero())
        throw non_graph_surface("implicit_solve: linear coefficient of " + ctx->name(solve_var) +
                                " vanishes");
    GaussianRational inv_c0 = c0.inverse();

    std::vector<Jet> images;
    images.reserve(ctx->size());
    for (size_t v = 0; v < ctx->size(); ++v)
        images.push_back(Jet::variable(ctx, r.cap(), v));

    // x <- x - r(., x)/c0 gains at least one degree of agreement per pass.
    Jet x(ctx, r.cap());
    for (int iter = 0; iter <= r.cap() + 1; ++iter) {
        images[solve_var] = x;
        Jet next = x - r.substituted(images, ctx).scaled(inv_c0);
        if (next == x) return x;
        x = std::move(next);
    }
    throw identity_violation("implicit_solve: fixed point did not stabilize");
}

WeierstrassFactors weierstrass_divide(const Jet& phi, size_t dist_var) {
    const ContextPtr& ctx = phi.context();
    if (ctx->kind(dist_var) != VarKind::Real)
        throw usage_error("weierstrass_divide: distinguished variable must be real-type");
    if (!phi.constant_term().is_zero())
        throw preparation_failure("weierstrass_divide: phi(0) != 0");
    GaussianRational d0 = phi.derive(dist_var).constant_term();
    if (d0.is_zero())
        throw preparation_failure("weierstrass_divide: d phi / d " + ctx->name(dist_var) +
                                  " vanishes at 0");
    if (d0 != GaussianRational(make_rat(-1)))
        throw preparation_failure("weierstrass_divide: d phi / d " + ctx->name(dist_var) +
                                  " (0) must be -1, got " + d0.str());

    Jet g = implicit_solve(phi, dist_var);

    // phi = -f*(v - g) and v == g modulo (v - g), so synthetic division of
    // each v-power gives the quotient exactly:
    //   sum_k phi_k v^k = sum_k phi_k g^k + (v - g) * sum_k phi_k * sum_{j<k} v^j g^{k-1-j}
    // with the remainder term vanishing because g solves phi = 0.
    int vmax = 0;
    for (const auto& [mi, c] : phi.terms()) vmax = std::max<int>(vmax, mi[dist_var]);
    std::vector<Jet> phi_k;
    for (int k = 0; k <= vmax; ++k) phi_k.push_back(Jet(ctx, std::max(phi.cap() - k, 0)));
    for (const auto& [mi, c] : phi.terms()) {
        int k = mi[dist_var];
        phi_k[k].add_coeff(*mi.lowered(dist_var, k), c);
    }

    std::vector<Jet> gpow{Jet::constant(ctx, g.cap(), GaussianRational(make_rat(1)))};
    for (int k = 1; k < vmax; ++k) gpow.push_back(gpow.back() * g);

    Jet q(ctx, std::max(phi.cap() - 1, 0));
    for (int k = 1; k <= vmax; ++k) {
        if (phi_k[k].is_zero()) continue;
        Jet inner(ctx, phi.cap());
        for (int j = 0; j < k; ++j) {
            Jet vj = Jet::monomial(ctx, phi.cap(), MultiIndex(ctx->size()).raised(dist_var, j),
                                   GaussianRational(make_rat(1)));
            inner += vj * gpow[k - 1 - j];
        }
        q += phi_k[k] * inner;
    }
    Jet f = -q;
    if (!f.constant_term().is_one())
        throw identity_violation("weierstrass_divide: unit part does not start at 1");
    return {std::move(f), std::move(g)};
}

}  // namespace szg
