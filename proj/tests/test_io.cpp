#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "opkan/io.hpp"
#include "opkan/suites.hpp"

using namespace opkan;

TEST_CASE("canonical export of a hand-written simplicial set") {
    const std::string loose =
        "{ \"faces\": [[[]], [[{\"gen\":0,\"level\":0,\"degens\":[]}, {\"level\":0,\"gen\":0,\"degens\":[]}]]],"
        "  \"levels\": [[\"v\"], [\"loop\"]], \"dim_bound\": 1 }";
    FiniteSimplicialSet X = sset_from_json(parse_text(loose));
    CHECK(X.count(0) == 1);
    CHECK(X.count(1) == 1);
    std::string canon = export_text(X);
    CHECK(canon.rfind("{\n  \"dim_bound\": 1,\n  \"levels\"", 0) == 0);
    CHECK(export_text(sset_from_json(parse_text(canon))) == canon);
}

TEST_CASE("truncated files report line and column") {
    std::string text = export_text(standard_simplex(2));
    std::string cut = text.substr(0, text.size() / 2);
    try {
        (void)parse_text(cut);
        FAIL("parse should fail");
    } catch (const ParseError& e) {
        CHECK(e.line > 1);
        CHECK(e.column >= 1);
        CHECK(std::string(e.what()).find("line") != std::string::npos);
    }
    try {
        (void)parse_text("{\n  \"a\": [1,\n  2,, 3]\n}");
        FAIL("parse should fail");
    } catch (const ParseError& e) {
        CHECK(e.line == 3);
        CHECK(e.column == 5);
    }
}

TEST_CASE("schema violations are rejected") {
    CHECK_THROWS_AS(sset_from_json(parse_text("{\"dim_bound\": 0, \"levels\": [[\"v\"]]}")), InvalidStructure);
    CHECK_THROWS_AS(sset_from_json(parse_text(
                        "{\"dim_bound\": 1, \"levels\": [[\"v\"], [\"e\"]], \"faces\": [[[]], "
                        "[[{\"level\":0,\"gen\":3,\"degens\":[]}, {\"level\":0,\"gen\":0,\"degens\":[]}]]]}")),
                    InvalidStructure);
    CHECK_THROWS_AS(category_from_json(parse_text("{\"objects\": [\"x\"], \"arrows\": [{\"src\": 0, \"dst\": 1, "
                                                  "\"name\": \"f\", \"composites\": []}]}")),
                    InvalidStructure);
    CHECK_THROWS_AS(simplex_from_json(parse_text("{\"level\": 2, \"gen\": 0, \"degens\": [0, 1]}")), InvalidStructure);
}

TEST_CASE("the nerve of Fin*<=1 re-imports isomorphically") {
    FinStarNerve N = nerve_finstar(1, 1, 1);
    FiniteSimplicialSet back = sset_from_json(parse_text(export_text(*N.nerve)));
    REQUIRE(back.dim_bound() == N.nerve->dim_bound());
    for (int l = 0; l <= back.dim_bound(); ++l) {
        REQUIRE(back.count(l) == N.nerve->count(l));
        for (int g = 0; l > 0 && g < back.count(l); ++g)
            for (int i = 0; i <= l; ++i) CHECK(back.gen_face(l, g, i) == N.nerve->gen_face(l, g, i));
    }
    CHECK(back.check().empty());
}

TEST_CASE("round trips of every interchange kind") {
    CHECK(roundtrip_failure(standard_simplex(3)).empty());
    CHECK(roundtrip_failure(FiniteSimplicialSet::empty_set()).empty());
    CHECK(roundtrip_failure(product(standard_simplex(1), standard_simplex(2))).empty());
    CHECK(roundtrip_failure(comm_model(2).cat.operator*()).empty());
    CHECK(roundtrip_failure(finstar_category(2, 1, 2).cat).empty());
    for (const CategoryDiagram& F : {arrow_example(), poset_diagram(), iso_example(), group_example()}) {
        CHECK(roundtrip_failure(F).empty());
        CHECK(roundtrip_failure(grothendieck_construct(F).cat).empty());
        CategoryDiagram back = diagram_from_json(to_json(F));
        CHECK(back.check().empty());
        Report r = phi_roundtrip_check(back, 2);
        CHECK(r.ok());
    }
    CHECK(roundtrip_failure(cyclic_monoid(3)).empty());
    for (const auto& i : heads_tails_instances()) CHECK(roundtrip_failure(i.input).empty());
    for (const auto& in : lemma_3125_instances()) {
        CHECK(roundtrip_failure(in).empty());
        Lemma3125Input back = lemma_3125_from_json(to_json(in));
        CHECK(lemma_3125_verify(back).ok());
    }
    auto ht = heads_tails_instances();
    HeadsTailsInput back = heads_tails_from_json(to_json(ht[0].input));
    CHECK(heads_tails_verify(back).ok());
}

TEST_CASE("suites") {
    Report ez = run_suite("ez");
    CHECK_MESSAGE(ez.ok(), ez.first_failure());
    CHECK(ez.count(Status::Skipped) == 0);
    SuiteParams d;
    d.K = 2;
    d.n = 1;
    d.m = 2;
    Report dm = run_suite("diamond", d);
    CHECK_MESSAGE(dm.ok(), dm.first_failure());
    CHECK_THROWS_AS(run_suite("unknown"), UnknownSuite);
    CHECK(render_text(run_suite("ez")) == render_text(ez));
    CHECK(canonical_text(to_json(dm)) == canonical_text(to_json(run_suite("diamond", d))));
}

TEST_CASE("resource ceilings skip instead of failing") {
    SuiteParams p;
    p.max_gen = 10;
    std::size_t before = generator_ceiling();
    Report r = run_suite("finstar", p);
    CHECK(r.count(Status::Skipped) > 0);
    CHECK(r.failed() == 0);
    CHECK(generator_ceiling() == before);
}

TEST_CASE("report totals equal the entry counts") {
    Report r = run_suite("slices");
    ojson j = to_json(r);
    std::size_t total = j["totals"]["pass"].get<std::size_t>() + j["totals"]["fail"].get<std::size_t>() +
                        j["totals"]["skipped"].get<std::size_t>() + j["totals"]["not checked"].get<std::size_t>();
    CHECK(total == r.entries.size());
    CHECK(r.ok());
}
