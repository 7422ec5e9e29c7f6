#include "szg/surface.hpp"

#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "json.hpp"

namespace szg {

namespace {

using nlohmann::json;

int term_degree(const PerturbationTerm& t) {
    int d = 0;
    for (int a : t.alpha) d += a;
    for (int b : t.beta) d += b;
    return d;
}

Rat parse_rat(const json& arr, const std::string& where) {
    if (!arr.is_array() || arr.size() != 2)
        throw validation_error(where + ": rational must be a [numerator, denominator] pair");
    auto piece = [&](const json& v) -> std::string {
        if (v.is_string()) return v.get<std::string>();
        if (v.is_number_integer()) return std::to_string(v.get<long long>());
        throw validation_error(where + ": rational entries must be integers or decimal strings");
    };
    std::string num = piece(arr[0]), den = piece(arr[1]);
    try {
        return rat_from_decimal_strings(num, den);
    } catch (const error& e) {
        throw validation_error(where + ": " + e.what());
    }
}

json rat_to_json(const Rat& q) {
    return json::array({q.get_num().get_str(), q.get_den().get_str()});
}

json gr_to_json(const GaussianRational& c) {
    return json{{"re", rat_to_json(c.re())}, {"im", rat_to_json(c.im())}};
}

json pis_to_json(const PiScaled& p) {
    return json{{"re", rat_to_json(p.coeff().re())},
                {"im", rat_to_json(p.coeff().im())},
                {"pi_power", p.pi_power()}};
}

std::vector<int> parse_exponents(const json& arr, int n, const std::string& where) {
    if (!arr.is_array() || static_cast<int>(arr.size()) != n + 1)
        throw validation_error(where + ": exponent vector must have length n+1");
    std::vector<int> e;
    for (const auto& v : arr) {
        if (!v.is_number_integer() || v.get<long long>() < 0)
            throw validation_error(where + ": exponents must be nonnegative integers");
        e.push_back(v.get<int>());
    }
    return e;
}

}  // namespace

SurfaceSpec parse_surface_text(const std::string& json_text) {
    json j;
    try {
        j = json::parse(json_text);
    } catch (const std::exception& e) {
        throw validation_error(std::string("surface spec is not well-formed JSON: ") + e.what());
    }
    SurfaceSpec spec;
    if (!j.contains("n") || !j["n"].is_number_integer())
        throw validation_error("surface spec: missing integer field 'n'");
    spec.n = j["n"].get<int>();
    if (spec.n < 1) throw validation_error("surface spec: n must be >= 1");
    if (j.contains("truncation_degree")) {
        spec.truncation_degree = j["truncation_degree"].get<int>();
    }
    if (spec.truncation_degree < 6)
        throw validation_error("surface spec: truncation_degree must be >= 6");
    if (j.contains("perturbation")) {
        if (!j["perturbation"].is_array())
            throw validation_error("surface spec: 'perturbation' must be an array");
        int idx = 0;
        for (const auto& e : j["perturbation"]) {
            std::string where = "perturbation[" + std::to_string(idx++) + "]";
            PerturbationTerm t;
            if (!e.contains("alpha") || !e.contains("beta") || !e.contains("coeff"))
                throw validation_error(where + ": needs 'alpha', 'beta' and 'coeff'");
            t.alpha = parse_exponents(e["alpha"], spec.n, where + ".alpha");
            t.beta = parse_exponents(e["beta"], spec.n, where + ".beta");
            t.coeff = GaussianRational(parse_rat(e["coeff"]["re"], where + ".coeff.re"),
                                       e["coeff"].contains("im")
                                           ? parse_rat(e["coeff"]["im"], where + ".coeff.im")
                                           : make_rat(0));
            int deg = term_degree(t);
            if (deg < 4)
                throw validation_error(where + ": |alpha|+|beta| = " + std::to_string(deg) +
                                       " violates the degree >= 4 normal-form constraint");
            if (deg > spec.truncation_degree)
                throw validation_error(where + ": degree " + std::to_string(deg) +
                                       " exceeds truncation_degree " +
                                       std::to_string(spec.truncation_degree));
            spec.perturbation.push_back(std::move(t));
        }
    }
    return spec;
}

SurfaceSpec parse_surface(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw validation_error("cannot open surface spec file: " + path);
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_surface_text(buf.str());
}

std::string surface_to_json(const SurfaceSpec& spec) {
    json j;
    j["n"] = spec.n;
    j["truncation_degree"] = spec.truncation_degree;
    j["perturbation"] = json::array();
    for (const auto& t : spec.perturbation) {
        json e;
        e["alpha"] = t.alpha;
        e["beta"] = t.beta;
        e["coeff"] = gr_to_json(t.coeff);
        j["perturbation"].push_back(std::move(e));
    }
    return j.dump(2);
}

SurfaceSpec hermitian_closure(const SurfaceSpec& spec) {
    using Key = std::pair<std::vector<int>, std::vector<int>>;
    std::map<Key, GaussianRational> terms;
    int idx = 0;
    for (const auto& t : spec.perturbation) {
        std::string where = "perturbation[" + std::to_string(idx++) + "]";
        auto [it, inserted] = terms.try_emplace({t.alpha, t.beta}, t.coeff);
        if (!inserted) throw validation_error(where + ": duplicate (alpha, beta) entry");
    }
    for (const auto& [key, c] : terms) {
        if (key.first == key.second && !c.is_real())
            throw validation_error("Hermitian violation: diagonal term with alpha == beta has a "
                                   "nonzero imaginary part (" + c.str() + ")");
    }
    std::map<Key, GaussianRational> closed = terms;
    for (const auto& [key, c] : terms) {
        Key partner{key.second, key.first};
        auto it = terms.find(partner);
        if (it != terms.end()) {
            if (it->second != c.conj())
                throw validation_error(
                    "Hermitian violation: entry and its (beta, alpha) partner are not conjugate (" +
                    c.str() + " vs " + it->second.str() + ")");
        } else {
            closed.try_emplace(partner, c.conj());
        }
    }
    SurfaceSpec out;
    out.n = spec.n;
    out.truncation_degree = spec.truncation_degree;
    for (auto& [key, c] : closed) out.perturbation.push_back({key.first, key.second, c});
    return out;
}

ModelSurface build_surface(const SurfaceSpec& spec, int degree_override) {
    SurfaceSpec closed = hermitian_closure(spec);
    int cap = degree_override > 0 ? degree_override : closed.truncation_degree;
    if (cap < closed.truncation_degree)
        throw validation_error("degree override below the spec truncation degree");
    if (cap > 16) throw validation_error("truncation degree above the supported maximum (16)");
    SurfaceContexts ctxs = SurfaceContexts::make(closed.n, cap);

    Jet r(ctxs.ambient, cap);
    GaussianRational i = GaussianRational::i();
    r.add_coeff(MultiIndex(ctxs.ambient->size())
                    .raised(ctxs.ambient->index_of(SurfaceContexts::z(closed.n + 1))),
                -i);
    r.add_coeff(MultiIndex(ctxs.ambient->size())
                    .raised(ctxs.ambient->index_of(SurfaceContexts::zb(closed.n + 1))),
                i);
    for (int j = 1; j <= closed.n; ++j) {
        MultiIndex mi(ctxs.ambient->size());
        mi = mi.raised(ctxs.ambient->index_of(SurfaceContexts::z(j)));
        mi = mi.raised(ctxs.ambient->index_of(SurfaceContexts::zb(j)));
        r.add_coeff(mi, GaussianRational(make_rat(1)));
    }
    for (const auto& t : closed.perturbation) {
        MultiIndex mi(ctxs.ambient->size());
        for (int j = 1; j <= closed.n + 1; ++j) {
            if (t.alpha[j - 1])
                mi = mi.raised(ctxs.ambient->index_of(SurfaceContexts::z(j)), t.alpha[j - 1]);
            if (t.beta[j - 1])
                mi = mi.raised(ctxs.ambient->index_of(SurfaceContexts::zb(j)), t.beta[j - 1]);
        }
        r.add_coeff(mi, t.coeff);
    }
    return ModelSurface::validate(closed.n, cap, std::move(r));
}

namespace {

// uniform integer in [0, m) independent of library distribution details
long uniform_below(std::mt19937_64& rng, long m) {
    unsigned long limit = (~0ul / m) * m;
    unsigned long x;
    do {
        x = rng();
    } while (x >= limit);
    return static_cast<long>(x % m);
}

// all exponent pairs (alpha, beta) over n+1 variables with |alpha|+|beta| = d
void enumerate_terms(int slots, int d, std::vector<int>& cur,
                     std::vector<std::vector<int>>& out) {
    if (static_cast<int>(cur.size()) == slots - 1) {
        cur.push_back(d);
        out.push_back(cur);
        cur.pop_back();
        return;
    }
    for (int k = 0; k <= d; ++k) {
        cur.push_back(k);
        enumerate_terms(slots, d - k, cur, out);
        cur.pop_back();
    }
}

}  // namespace

SurfaceSpec random_surface_spec(int n, std::mt19937_64& rng, int max_terms,
                                const std::vector<int>& degrees) {
    SurfaceSpec spec;
    spec.n = n;
    spec.truncation_degree = 6;
    // Tangential monomials only (no z_{n+1} factors): this is the class where
    // the diagonal normalizations are exact identities, and z_{n+1}-involving
    // quartics carry no quartic CR data at the center anyway.
    const int slots = 2 * n;

    std::vector<std::pair<std::vector<int>, std::vector<int>>> candidates;
    for (int d : degrees) {
        std::vector<std::vector<int>> raw;
        std::vector<int> cur;
        enumerate_terms(slots, d, cur, raw);
        for (const auto& e : raw) {
            std::vector<int> alpha(e.begin(), e.begin() + n);
            std::vector<int> beta(e.begin() + n, e.end());
            alpha.push_back(0);
            beta.push_back(0);
            if (alpha < beta) continue;  // one representative per conjugate pair
            candidates.emplace_back(std::move(alpha), std::move(beta));
        }
    }

    int count = 1 + static_cast<int>(uniform_below(rng, max_terms));
    std::set<size_t> chosen;
    for (int t = 0; t < count; ++t)
        chosen.insert(static_cast<size_t>(uniform_below(rng, static_cast<long>(candidates.size()))));
    for (size_t c : chosen) {
        const auto& [alpha, beta] = candidates[c];
        long p = uniform_below(rng, 19) - 9;  // -9..9
        long q = 1 + uniform_below(rng, 9);   // 1..9
        if (p == 0) p = 1;
        Rat re = make_rat(p, q);
        Rat im = make_rat(0);
        if (alpha != beta) {
            long pi_ = uniform_below(rng, 19) - 9;
            long qi = 1 + uniform_below(rng, 9);
            im = make_rat(pi_, qi);
        }
        spec.perturbation.push_back({alpha, beta, GaussianRational(re, im)});
    }
    return spec;
}

namespace {

json report_json_body(const SzegoReport& rep) {
    json j;
    j["schema_version"] = 1;
    j["n"] = rep.n;
    j["geometry"] = {
        {"r_scal0", gr_to_json(rep.r_scal0)},
        {"lambda_lap0", gr_to_json(rep.lambda_lap0)},
        {"r_quartic_trace0", gr_to_json(rep.r_quartic_trace0)},
    };
    j["szego"] = {
        {"a0", pis_to_json(rep.A0)},
        {"a1_route_sp", pis_to_json(rep.A1_route_sp)},
        {"a1_route_closed", pis_to_json(rep.A1_route_closed)},
        {"a1_route_curv", pis_to_json(rep.A1_route_curv)},
        {"hessian_det", gr_to_json(rep.hessian_det)},
        {"prefactor", pis_to_json(rep.prefactor)},
        {"agreement",
         {{"sp_closed", rep.agree_sp_closed},
          {"closed_curv", rep.agree_closed_curv},
          {"sp_curv", rep.agree_sp_curv},
          {"all", rep.agreement()}}},
    };
    return j;
}

json jet_json_body(const Jet& jet) {
    json ctx = json::array();
    const VariableContext& c = *jet.context();
    for (size_t v = 0; v < c.size(); ++v) {
        const char* kind = c.kind(v) == VarKind::Real ? "real"
                           : c.kind(v) == VarKind::Holomorphic ? "holomorphic"
                                                               : "antiholomorphic";
        ctx.push_back({{"name", c.name(v)}, {"kind", kind}});
    }
    json terms = json::array();
    for (const auto& [mi, coeff] : jet.terms()) {
        json exps = json::array();
        for (size_t v = 0; v < mi.size(); ++v) exps.push_back(int(mi[v]));
        terms.push_back({{"exponents", exps}, {"coeff", gr_to_json(coeff)}});
    }
    return json{{"cap", jet.cap()}, {"context", ctx}, {"terms", terms}};
}

}  // namespace

std::string jet_to_json(const Jet& j, bool pretty) {
    return pretty ? jet_json_body(j).dump(2) : jet_json_body(j).dump();
}

std::string pipeline_report_json(const PipelineArtifacts& art, const ReportOptions& opts,
                                 bool pretty) {
    json j = report_json_body(art.report);
    if (!opts.geometry) j.erase("geometry");
    if (!opts.szego) j.erase("szego");
    if (opts.phase) {
        Jet f_dev = art.phase.fact.f - Jet::constant(art.phase.fact.f.context(),
                                                     art.phase.fact.f.cap(),
                                                     GaussianRational(make_rat(1)));
        j["phase"] = {
            {"identities_verified", true},
            {"f_minus_one_min_degree", f_dev.is_zero() ? -1 : f_dev.min_degree()},
            {"phi_term_count", art.phase.phi.term_count()},
        };
    }
    if (!opts.dump_jets.empty()) {
        json dumps;
        for (const std::string& name : opts.dump_jets) {
            if (name == "phi")
                dumps[name] = jet_json_body(art.phase.phi);
            else if (name == "f")
                dumps[name] = jet_json_body(art.phase.fact.f);
            else if (name == "g")
                dumps[name] = jet_json_body(art.phase.fact.g);
            else if (name == "Phi")
                dumps[name] = jet_json_body(art.phase.fact.Phi);
            else if (name == "F")
                dumps[name] = jet_json_body(art.composed);
            else if (name == "lambda")
                dumps[name] = jet_json_body(art.geom.lambda);
            else if (name == "R")
                dumps[name] = jet_json_body(art.geom.R);
            else
                throw usage_error("unknown jet dump name: " + name);
        }
        j["jets"] = std::move(dumps);
    }
    return pretty ? j.dump(2) : j.dump();
}

std::string report_to_json(const SzegoReport& rep, bool pretty) {
    json j = report_json_body(rep);
    return pretty ? j.dump(2) : j.dump();
}

}  // namespace szg
