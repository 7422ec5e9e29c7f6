#include "szg/exterior.hpp"

#include <algorithm>
#include <sstream>

namespace szg {

// ---------------------------------------------------------------------------
// VectorFieldJet

VectorFieldJet::VectorFieldJet(ContextPtr ctx, int cap) : ctx_(std::move(ctx)) {
    comp_.assign(ctx_->size(), Jet(ctx_, cap));
}

VectorFieldJet::VectorFieldJet(std::vector<Jet> components) : comp_(std::move(components)) {
    if (comp_.empty()) throw usage_error("vector field needs at least one component");
    ctx_ = comp_.front().context();
    if (comp_.size() != ctx_->size()) throw usage_error("vector field: one component per variable");
    for (const Jet& c : comp_)
        if (c.context() != ctx_) throw usage_error("vector field: component context mismatch");
}

Jet VectorFieldJet::apply(const Jet& f) const {
    if (f.context() != ctx_) throw usage_error("vector field applied across contexts");
    Jet r(ctx_, std::max(f.cap() - 1, 0));
    for (size_t i = 0; i < comp_.size(); ++i) {
        if (comp_[i].is_zero()) continue;
        r += comp_[i] * f.derive(i);
    }
    return r;
}

VectorFieldJet VectorFieldJet::operator-() const {
    VectorFieldJet r = *this;
    for (Jet& c : r.comp_) c = -c;
    return r;
}

VectorFieldJet& VectorFieldJet::operator+=(const VectorFieldJet& o) {
    if (ctx_ != o.ctx_) throw usage_error("vector field context mismatch");
    for (size_t i = 0; i < comp_.size(); ++i) comp_[i] += o.comp_[i];
    return *this;
}

VectorFieldJet VectorFieldJet::scaled_by(const Jet& f) const {
    VectorFieldJet r = *this;
    for (Jet& c : r.comp_) c = c * f;
    return r;
}

VectorFieldJet VectorFieldJet::conjugated() const {
    VectorFieldJet r(ctx_, 0);
    for (size_t i = 0; i < comp_.size(); ++i) r.comp_[ctx_->conj(i)] = comp_[i].conjugated();
    return r;
}

bool VectorFieldJet::is_real() const {
    for (size_t i = 0; i < comp_.size(); ++i)
        if (!(comp_[ctx_->conj(i)] == comp_[i].conjugated())) return false;
    return true;
}

VectorFieldJet lie_bracket(const VectorFieldJet& u, const VectorFieldJet& v) {
    if (u.context() != v.context()) throw usage_error("lie_bracket: context mismatch");
    const ContextPtr& ctx = u.context();
    std::vector<Jet> comps;
    comps.reserve(ctx->size());
    for (size_t k = 0; k < ctx->size(); ++k)
        comps.push_back(u.apply(v.component(k)) - v.apply(u.component(k)));
    return VectorFieldJet(std::move(comps));
}

// ---------------------------------------------------------------------------
// FormJet

FormJet::FormJet(ContextPtr ctx, int degree, int cap)
    : ctx_(std::move(ctx)), degree_(degree), cap_(cap) {
    // degree above the variable count is allowed; such forms are identically
    // zero and arise transiently in wedge products
    if (degree_ < 0) throw usage_error("form degree out of range");
}

FormJet FormJet::d_of_variable(ContextPtr ctx, int cap, size_t var) {
    FormJet f(ctx, 1, cap);
    f.add_term({static_cast<uint8_t>(var)}, Jet::constant(f.ctx_, cap, GaussianRational(make_rat(1))));
    return f;
}

bool FormJet::is_zero() const {
    for (const auto& [t, j] : comp_)
        if (!j.is_zero()) return false;
    return true;
}

Jet FormJet::component(const Tuple& t) const {
    auto it = comp_.find(t);
    if (it != comp_.end()) return it->second;
    return Jet(ctx_, cap_);
}

namespace {
// Sorts a covariable tuple, returning the permutation sign, or 0 on repeats.
int sort_tuple(FormJet::Tuple& t) {
    int sign = 1;
    for (size_t i = 1; i < t.size(); ++i)
        for (size_t j = i; j > 0 && t[j - 1] >= t[j]; --j) {
            if (t[j - 1] == t[j]) return 0;
            std::swap(t[j - 1], t[j]);
            sign = -sign;
        }
    return sign;
}
}  // namespace

void FormJet::add_term(Tuple t, const Jet& coefficient) {
    if (t.size() != static_cast<size_t>(degree_)) throw usage_error("tuple arity != form degree");
    if (coefficient.context() != ctx_) throw usage_error("form coefficient context mismatch");
    int sign = sort_tuple(t);
    if (sign == 0 || coefficient.is_zero()) return;
    Jet add = sign == 1 ? coefficient : -coefficient;
    cap_ = std::min(cap_, add.cap());
    auto [it, inserted] = comp_.try_emplace(std::move(t), add);
    if (!inserted) it->second += add;
    if (it->second.is_zero()) comp_.erase(it);
}

FormJet FormJet::operator-() const {
    FormJet r(ctx_, degree_, cap_);
    for (const auto& [t, j] : comp_) r.comp_.emplace(t, -j);
    return r;
}

FormJet& FormJet::operator+=(const FormJet& o) {
    if (ctx_ != o.ctx_ || degree_ != o.degree_) throw usage_error("form addition mismatch");
    cap_ = std::min(cap_, o.cap_);
    for (const auto& [t, j] : o.comp_) {
        auto [it, inserted] = comp_.try_emplace(t, j);
        if (!inserted) {
            it->second += j;
            if (it->second.is_zero()) comp_.erase(it);
        }
    }
    return *this;
}

FormJet& FormJet::operator-=(const FormJet& o) { return *this += -o; }

FormJet FormJet::scaled(const GaussianRational& s) const {
    FormJet r(ctx_, degree_, cap_);
    if (s.is_zero()) return r;
    for (const auto& [t, j] : comp_) r.comp_.emplace(t, j.scaled(s));
    return r;
}

FormJet FormJet::scaled_by(const Jet& f) const {
    FormJet r(ctx_, degree_, cap_);
    for (const auto& [t, j] : comp_) {
        Jet prod = j * f;
        r.cap_ = std::min(r.cap_, prod.cap());
        if (!prod.is_zero()) r.comp_.emplace(t, std::move(prod));
    }
    return r;
}

bool operator==(const FormJet& a, const FormJet& b) {
    if (a.ctx_ != b.ctx_ || a.degree_ != b.degree_) return false;
    // compare componentwise at the shared cap
    for (const auto& [t, j] : a.comp_)
        if (!(j == b.component(t))) return false;
    for (const auto& [t, j] : b.comp_)
        if (a.comp_.find(t) == a.comp_.end() && !(a.component(t) == j)) return false;
    return true;
}

FormJet FormJet::wedge(const FormJet& o) const {
    if (ctx_ != o.ctx_) throw usage_error("wedge: context mismatch");
    FormJet r(ctx_, degree_ + o.degree_, std::min(cap_, o.cap_));
    for (const auto& [ta, ja] : comp_) {
        for (const auto& [tb, jb] : o.comp_) {
            Tuple t = ta;
            t.insert(t.end(), tb.begin(), tb.end());
            // quick repeat rejection before multiplying jets
            int sign = sort_tuple(t);
            if (sign == 0) continue;
            Jet prod = ja * jb;
            r.cap_ = std::min(r.cap_, prod.cap());
            if (prod.is_zero()) continue;
            if (sign < 0) prod = -prod;
            auto [it, inserted] = r.comp_.try_emplace(std::move(t), prod);
            if (!inserted) {
                it->second += prod;
                if (it->second.is_zero()) r.comp_.erase(it);
            }
        }
    }
    return r;
}

FormJet FormJet::exterior_d() const {
    if (cap_ < 1) throw truncation_unsound("exterior_d: cap exhausted");
    FormJet r(ctx_, degree_ + 1, cap_ - 1);
    for (const auto& [t, j] : comp_) {
        for (size_t v = 0; v < ctx_->size(); ++v) {
            Jet dj = j.derive(v);
            if (dj.is_zero()) continue;
            Tuple nt;
            nt.reserve(t.size() + 1);
            nt.push_back(static_cast<uint8_t>(v));
            nt.insert(nt.end(), t.begin(), t.end());
            r.add_term(std::move(nt), dj);
        }
    }
    return r;
}

FormJet FormJet::interior(const VectorFieldJet& v) const {
    if (v.context() != ctx_) throw usage_error("interior: context mismatch");
    if (degree_ == 0) throw usage_error("interior product of a 0-form");
    FormJet r(ctx_, degree_ - 1, cap_);
    for (const auto& [t, j] : comp_) {
        for (size_t pos = 0; pos < t.size(); ++pos) {
            const Jet& comp = v.component(t[pos]);
            if (comp.is_zero()) continue;
            Jet prod = j * comp;
            r.cap_ = std::min(r.cap_, prod.cap());
            if (prod.is_zero()) continue;
            if (pos % 2 == 1) prod = -prod;
            Tuple nt;
            nt.reserve(t.size() - 1);
            for (size_t k = 0; k < t.size(); ++k)
                if (k != pos) nt.push_back(t[k]);
            auto [it, inserted] = r.comp_.try_emplace(std::move(nt), prod);
            if (!inserted) {
                it->second += prod;
                if (it->second.is_zero()) r.comp_.erase(it);
            }
        }
    }
    return r;
}

Jet FormJet::pair(const std::vector<VectorFieldJet>& fields) const {
    if (fields.size() != static_cast<size_t>(degree_))
        throw usage_error("pair: field count must equal form degree");
    FormJet cur = *this;
    for (const VectorFieldJet& v : fields) cur = cur.interior(v);
    auto it = cur.components().find(Tuple{});
    return it == cur.components().end() ? Jet(ctx_, cur.cap()) : it->second;
}

FormJet FormJet::pullback(const std::vector<Jet>& images, const ContextPtr& target) const {
    if (images.size() != ctx_->size()) throw usage_error("pullback: one image per variable required");
    // d(image) for every variable, as target 1-forms
    std::vector<FormJet> dimg;
    dimg.reserve(images.size());
    for (const Jet& im : images) {
        FormJet df(target, 1, std::max(im.cap() - 1, 0));
        for (size_t u = 0; u < target->size(); ++u) {
            Jet d = im.derive(u);
            if (!d.is_zero()) df.add_term({static_cast<uint8_t>(u)}, d);
        }
        dimg.push_back(std::move(df));
    }
    FormJet r(target, degree_, cap_);
    bool first = true;
    for (const auto& [t, j] : comp_) {
        Jet coeff = j.substituted(images, target);
        FormJet term(target, 0, coeff.cap());
        term.add_term({}, coeff);
        FormJet wedge_part = term;
        for (uint8_t v : t) wedge_part = wedge_part.wedge(dimg[v]);
        if (first) {
            r = std::move(wedge_part);
            first = false;
        } else {
            r += wedge_part;
        }
    }
    return r;
}

FormJet FormJet::conjugated() const {
    FormJet r(ctx_, degree_, cap_);
    for (const auto& [t, j] : comp_) {
        Tuple nt;
        nt.reserve(t.size());
        for (uint8_t v : t) nt.push_back(static_cast<uint8_t>(ctx_->conj(v)));
        r.add_term(std::move(nt), j.conjugated());
    }
    return r;
}

std::string FormJet::str() const {
    std::ostringstream os;
    bool first = true;
    for (const auto& [t, j] : comp_) {
        if (!first) os << " + ";
        os << "[" << j.str() << "] ";
        for (size_t k = 0; k < t.size(); ++k) {
            if (k) os << "^";
            os << "d" << ctx_->name(t[k]);
        }
        first = false;
    }
    if (first) os << "0";
    return os.str();
}

// ---------------------------------------------------------------------------
// Top density and the real frame

std::vector<VectorFieldJet> real_coordinate_frame(const ContextPtr& ctx, int cap) {
    std::vector<VectorFieldJet> frame;
    GaussianRational one(make_rat(1));
    for (size_t z : ctx->holomorphic()) {
        size_t zb = ctx->conj(z);
        VectorFieldJet re(ctx, cap), im(ctx, cap);
        re.component(z) = Jet::constant(ctx, cap, one);
        re.component(zb) = Jet::constant(ctx, cap, one);
        im.component(z) = Jet::constant(ctx, cap, GaussianRational::i());
        im.component(zb) = Jet::constant(ctx, cap, -GaussianRational::i());
        frame.push_back(std::move(re));
        frame.push_back(std::move(im));
    }
    for (size_t s : ctx->reals()) {
        VectorFieldJet v(ctx, cap);
        v.component(s) = Jet::constant(ctx, cap, one);
        frame.push_back(std::move(v));
    }
    return frame;
}

Jet top_density(const FormJet& a) {
    const ContextPtr& ctx = a.context();
    if (static_cast<size_t>(a.degree()) != ctx->size())
        throw usage_error("top_density: form degree must equal variable count");
    return a.pair(real_coordinate_frame(ctx, a.cap()));
}

}  // namespace szg
