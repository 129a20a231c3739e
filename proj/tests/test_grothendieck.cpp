#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "opkan/grothendieck.hpp"

using namespace opkan;

namespace {

int non_identity_arrows(const FiniteCategory& C) {
    int c = 0;
    for (int a = 0; a < C.arrow_count(); ++a) c += !C.is_identity(a);
    return c;
}

int base_arrow(const FiniteCategory& C, int x, int y) {
    for (int a : C.hom(x, y))
        if (!C.is_identity(a)) return a;
    return -1;
}

}  // namespace

TEST_CASE("the arrow example has three objects and three arrows") {
    CategoryDiagram F = arrow_example();
    CHECK(F.check().empty());
    GrothendieckTotal G = grothendieck_construct(F);
    CHECK(G.cat.object_count() == 3);
    CHECK(non_identity_arrows(G.cat) == 3);
    CHECK(G.check_decomposition().empty());
    CHECK(G.cat.check().empty());
}

TEST_CASE("constant diagrams") {
    FiniteCategory C = linear_order(2);
    GrothendieckTotal T = grothendieck_construct(constant_diagram(C, terminal_category(), "terminal"));
    CHECK(T.cat.object_count() == C.object_count());
    CHECK(T.cat.arrow_count() == C.arrow_count());
    FiniteCategory D = arrow_category();
    CategoryDiagram F = constant_diagram(C, D, "constant");
    GrothendieckTotal G = grothendieck_construct(F);
    CHECK(G.cat.object_count() == C.object_count() * D.object_count());
    for (int c = 0; c < C.object_count(); ++c)
        for (int c2 = 0; c2 < C.object_count(); ++c2)
            for (int x = 0; x < D.object_count(); ++x)
                for (int y = 0; y < D.object_count(); ++y)
                    CHECK(G.cat.hom(G.object(c, x), G.object(c2, y)).size() ==
                          C.hom(c, c2).size() * D.hom(x, y).size());
}

TEST_CASE("relative nerve agrees with the nerve of the total category") {
    for (const CategoryDiagram& F : {arrow_example(), poset_diagram(), iso_example(), group_example()}) {
        GrothendieckTotal G = grothendieck_construct(F);
        for (int n = 0; n <= 2; ++n) {
            auto rel = relative_nerve_simplices(F, n);
            CHECK(rel.size() == total_simplices(G, n).size());
            for (const auto& s : rel) {
                CHECK(check_rel_simplex(F, s).empty());
                TotalSimplex t = phi_forward(G, s);
                CHECK(phi_inverse(G, t) == s);
                for (int i = 0; i <= n; ++i) CHECK(G.object_tag[t.phi.obj[i]].first == s.objects[i]);
            }
        }
    }
    CategoryDiagram A = arrow_example();
    auto zero = relative_nerve_simplices(A, 0);
    CHECK(zero.size() == 3);
    CategoryDiagram P = constant_diagram(linear_order(2), terminal_category(), "point");
    CHECK(relative_nerve_simplices(P, 1).size() == 6);
}

TEST_CASE("round trips commute with faces and degeneracies") {
    for (const CategoryDiagram& F : {arrow_example(), poset_diagram(), iso_example()}) {
        Report r = phi_roundtrip_check(F, 3);
        CHECK_MESSAGE(r.ok(), r.first_failure());
    }
}

TEST_CASE("cocartesian edges of the total category") {
    CategoryDiagram F = arrow_example();
    GrothendieckTotal G = grothendieck_construct(F);
    int f = base_arrow(F.base, 0, 1);
    REQUIRE(f >= 0);
    int star = G.object(0, 0);
    int a = F.transition[f].obj[0];
    int lift = G.arrow(star, f, F.fibers[1].id(a));
    REQUIRE(lift >= 0);
    CHECK(is_cocartesian_gr(G, lift));
    int ab = base_arrow(F.fibers[1], a, 1 - a);
    REQUIRE(ab >= 0);
    int fab = G.arrow(star, f, ab);
    REQUIRE(fab >= 0);
    CHECK_FALSE(is_cocartesian_gr(G, fab));
    for (const CategoryDiagram& D : {arrow_example(), poset_diagram(), iso_example(), group_example(),
                                     arrow_example_at_target()}) {
        Report r = cocartesian_gr_check(grothendieck_construct(D));
        CHECK_MESSAGE(r.ok(), r.first_failure());
    }
}

TEST_CASE("induced functors") {
    CategoryDiagram F = arrow_example();
    GrothendieckTotal G = grothendieck_construct(F);
    for (int f = 0; f < F.base.arrow_count(); ++f) CHECK(induced_functor_check(G, f).ok());
    int f = base_arrow(F.base, 0, 1);
    CHECK(F.fibers[1].object_name(F.transition[f].obj[0]) == "a");
    CategoryDiagram P = poset_diagram();
    for (int g = 0; g < P.base.arrow_count(); ++g)
        for (int h = 0; h < P.base.arrow_count(); ++h) {
            if (P.base.arrow(h).dst != P.base.arrow(g).src) continue;
            int gh = P.base.compose(g, h);
            for (int x = 0; x < P.fibers[P.base.arrow(h).src].object_count(); ++x)
                CHECK(P.transition[gh].obj[x] == P.transition[g].obj[P.transition[h].obj[x]]);
        }
    for (int c = 0; c < P.base.object_count(); ++c) {
        const Functor& idf = P.transition[P.base.id(c)];
        for (int x = 0; x < P.fibers[c].object_count(); ++x) CHECK(idf.obj[x] == x);
    }
}

TEST_CASE("naturality of the round trip") {
    CategoryDiagram a = arrow_example(), b = arrow_example_at_target();
    DiagramMap eta = collapse_transformation(a, b);
    CHECK(check_diagram_map(eta).empty());
    Report r = phi_naturality_check(eta, 3);
    CHECK_MESSAGE(r.ok(), r.first_failure());
}

TEST_CASE("rigidified simplices") {
    RigidSimplex R(3);
    CHECK(R.vertex_count(0, 3) == 4);
    CHECK(R.vertex_count(1, 1) == 1);
    FiniteSimplicialSet H = R.hom(0, 3);
    CHECK(H.count(0) == 4);
    CHECK(H.count(2) == 2);
    CHECK(H.check().empty());
}
