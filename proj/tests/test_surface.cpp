#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"
#include "szg/selfcheck.hpp"

using namespace szg;

TEST_CASE("spec parsing accepts both integer and decimal-string rationals") {
    SurfaceSpec spec = parse_surface_text(
        R"({"n":1, "perturbation":[{"alpha":[2,0],"beta":[2,0],"coeff":{"re":[1,3],"im":[0,1]}}]})");
    CHECK(spec.n == 1);
    CHECK(spec.truncation_degree == 6);
    REQUIRE(spec.perturbation.size() == 1);
    CHECK(spec.perturbation[0].coeff == GaussianRational(make_rat(1, 3)));

    SurfaceSpec spec2 = parse_surface_text(
        R"({"n":1, "perturbation":[{"alpha":[2,0],"beta":[2,0],
            "coeff":{"re":["123456789012345678901","3"],"im":["0","1"]}}]})");
    CHECK(spec2.perturbation[0].coeff.re() ==
          rat_from_decimal_strings("123456789012345678901", "3"));
}

TEST_CASE("spec validation diagnostics") {
    // degree violation: |alpha| + |beta| = 3
    CHECK_THROWS_AS(parse_surface_text(
                        R"({"n":1, "perturbation":[{"alpha":[2,0],"beta":[1,0],
                            "coeff":{"re":[1,1],"im":[0,1]}}]})"),
                    validation_error);
    // malformed JSON
    CHECK_THROWS_AS(parse_surface_text("{"), validation_error);
    // diagonal term with a nonzero imaginary part violates Hermitian symmetry
    SurfaceSpec diag = parse_surface_text(
        R"({"n":1, "perturbation":[{"alpha":[2,0],"beta":[2,0],"coeff":{"re":[1,1],"im":[1,1]}}]})");
    CHECK_THROWS_AS(hermitian_closure(diag), validation_error);
    // explicit conjugate partner with the wrong coefficient
    SurfaceSpec wrong = parse_surface_text(
        R"({"n":1, "perturbation":[
            {"alpha":[3,0],"beta":[1,0],"coeff":{"re":[1,1],"im":[1,1]}},
            {"alpha":[1,0],"beta":[3,0],"coeff":{"re":[1,1],"im":[1,1]}}]})");
    CHECK_THROWS_AS(hermitian_closure(wrong), validation_error);
    // truncation degree below 6
    CHECK_THROWS_AS(parse_surface_text(R"({"n":1, "truncation_degree":4})"), validation_error);
}

TEST_CASE("implied Hermitian partners are materialized") {
    SurfaceSpec spec = parse_surface_text(
        R"({"n":1, "perturbation":[{"alpha":[3,0],"beta":[1,0],"coeff":{"re":[1,2],"im":[1,3]}}]})");
    SurfaceSpec closed = hermitian_closure(spec);
    REQUIRE(closed.perturbation.size() == 2);
    ModelSurface s = build_surface(spec);
    CHECK(s.r().is_real());
}

TEST_CASE("round trip parse -> serialize -> parse") {
    std::mt19937_64 rng(20260811u);
    for (int i = 0; i < 10; ++i) {
        SurfaceSpec spec = random_surface_spec(1 + (i % 2), rng, 5, {4, 5, 6});
        SurfaceSpec again = parse_surface_text(surface_to_json(spec));
        CHECK(again.n == spec.n);
        CHECK(again.truncation_degree == spec.truncation_degree);
        REQUIRE(again.perturbation.size() == spec.perturbation.size());
        for (size_t t = 0; t < spec.perturbation.size(); ++t) {
            CHECK(again.perturbation[t].alpha == spec.perturbation[t].alpha);
            CHECK(again.perturbation[t].beta == spec.perturbation[t].beta);
            CHECK(again.perturbation[t].coeff == spec.perturbation[t].coeff);
        }
    }
}

TEST_CASE("random specs are admissible and tangential") {
    std::mt19937_64 rng(7u);
    for (int i = 0; i < 12; ++i) {
        SurfaceSpec spec = random_surface_spec(1 + (i % 2), rng);
        ModelSurface s = build_surface(spec);
        CHECK(s.tangential_perturbation());
        for (const auto& t : spec.perturbation) {
            int deg = 0;
            for (int a : t.alpha) deg += a;
            for (int b : t.beta) deg += b;
            CHECK(deg == 4);
            CHECK(t.alpha.back() == 0);
            CHECK(t.beta.back() == 0);
        }
    }
}

TEST_CASE("jet literals serialize with exponent vectors and exact coefficients") {
    ContextPtr ctx = ContextBuilder().pair("z1", "zb1").real("s").build();
    Jet j(ctx, 6);
    j.add_coeff(MultiIndex(ctx->size()).raised(0, 2).raised(1), GaussianRational(make_rat(-7, 3)));
    std::string out = jet_to_json(j);
    CHECK(out.find("\"cap\": 6") != std::string::npos);
    CHECK(out.find("\"exponents\"") != std::string::npos);
    CHECK(out.find("\"-7\"") != std::string::npos);
    CHECK(out.find("\"holomorphic\"") != std::string::npos);

    // the pipeline artifacts expose their jets through the same format
    SurfaceSpec spec;
    spec.n = 1;
    spec.perturbation.push_back({{2, 0}, {2, 0}, GaussianRational(make_rat(1))});
    PipelineArtifacts art = run_pipeline(build_surface(spec));
    ReportOptions opts;
    opts.phase = true;
    opts.dump_jets = {"g", "lambda", "F"};
    std::string rep = pipeline_report_json(art, opts);
    CHECK(rep.find("\"jets\"") != std::string::npos);
    CHECK(rep.find("\"phase\"") != std::string::npos);
    CHECK_THROWS_AS(pipeline_report_json(art, {true, false, true, {"nope"}}), usage_error);
}

TEST_CASE("degree override") {
    SurfaceSpec spec;
    spec.n = 1;
    ModelSurface s = build_surface(spec, 8);
    CHECK(s.cap() == 8);
    CHECK_THROWS_AS(build_surface(spec, 5), validation_error);
}
