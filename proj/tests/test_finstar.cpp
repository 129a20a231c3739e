#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "opkan/finstar.hpp"

using namespace opkan;

namespace {

bool inert_by_definition(const PointedMap& a) {
    for (int j = 1; j <= a.n; ++j) {
        int c = 0;
        for (int i = 1; i <= a.m; ++i) c += a(i) == j;
        if (c != 1) return false;
    }
    return true;
}

bool active_by_definition(const PointedMap& a) {
    for (int i = 1; i <= a.m; ++i)
        if (a(i) == 0) return false;
    return true;
}

bool ordered_section_by_definition(const PointedMap& a) {
    if (!inert_by_definition(a)) return false;
    int prev = 0;
    for (int j = 1; j <= a.n; ++j) {
        int pre = 0;
        for (int i = 1; i <= a.m; ++i)
            if (a(i) == j) pre = i;
        if (pre <= prev) return false;
        prev = pre;
    }
    return true;
}

}  // namespace

TEST_CASE("textual form round trips") {
    PointedMap a = PointedMap::parse("3>2:[2,1,0]");
    CHECK(a == PointedMap(3, 2, {2, 1, 0}));
    CHECK(a.to_string() == "3>2:[2,1,0]");
    TaggedEdge e = TaggedEdge::parse("2>1:[1,1]@(1,2)");
    CHECK(e.map == PointedMap(2, 1, {1, 1}));
    CHECK(e.e0 == 1);
    CHECK(e.e1 == 2);
    CHECK(TaggedEdge::parse(e.to_string()) == e);
    CHECK_THROWS(PointedMap::parse("2>1:[1,2]"));
    CHECK_THROWS(PointedMap::parse("2>1:[1"));
}

TEST_CASE("inert and active examples") {
    PointedMap rho2(3, 1, {0, 1, 0});
    CHECK(is_inert(rho2));
    CHECK_FALSE(is_active(rho2));
    for (int n = 0; n <= 3; ++n) {
        CHECK(is_inert(PointedMap::identity(n)));
        CHECK(is_active(PointedMap::identity(n)));
    }
    CHECK(is_active(PointedMap(2, 1, {1, 1})));
    CHECK_FALSE(is_inert(PointedMap(2, 1, {1, 1})));
    int active = 0, inert = 0;
    for (const auto& a : all_maps(2, 1)) {
        active += is_active(a);
        inert += is_inert(a);
    }
    CHECK(all_maps(2, 1).size() == 4);
    CHECK(active == 1);
    CHECK(inert == 2);
}

TEST_CASE("classification agrees with the definitions on all small maps") {
    for (int m = 0; m <= 4; ++m)
        for (int n = 0; n <= 3; ++n)
            for (const auto& a : all_maps(m, n)) {
                CHECK(is_inert(a) == inert_by_definition(a));
                CHECK(is_active(a) == active_by_definition(a));
                CHECK(has_ordered_section(a) == ordered_section_by_definition(a));
            }
}

TEST_CASE("composition is associative and unital") {
    std::mt19937 rng(11);
    auto random_map = [&](int m, int n) {
        std::vector<int> v(static_cast<std::size_t>(m));
        for (auto& x : v) x = static_cast<int>(rng() % static_cast<unsigned>(n + 1));
        return PointedMap(m, n, v);
    };
    for (int t = 0; t < 300; ++t) {
        int a = static_cast<int>(rng() % 4), b = static_cast<int>(rng() % 4), c = static_cast<int>(rng() % 4),
            d = static_cast<int>(rng() % 4);
        PointedMap f = random_map(a, b), g = random_map(b, c), h = random_map(c, d);
        CHECK(compose(h, compose(g, f)) == compose(compose(h, g), f));
        CHECK(compose(f, PointedMap::identity(a)) == f);
        CHECK(compose(PointedMap::identity(b), f) == f);
        for (int i = 0; i <= a; ++i) CHECK(compose(g, f)(i) == g(f(i)));
    }
}

TEST_CASE("edge taxonomy examples") {
    TaggedEdge rho1(PointedMap(2, 1, {1, 0}), 1, 1);
    CHECK(is_strongly_inert(rho1));
    CHECK(edge_kind(rho1) == EdgeKind::StronglyInert);
    TaggedEdge label(PointedMap::identity(1), 1, 2);
    CHECK_FALSE(is_strongly_inert(label));
    CHECK(edge_kind(label) == EdgeKind::Active);
    TaggedEdge swap(PointedMap(3, 2, {2, 1, 0}), 1, 1);
    CHECK(is_inert(swap.map));
    CHECK_FALSE(has_ordered_section(swap.map));
    CHECK(edge_kind(swap) == EdgeKind::Neutral);
    CHECK(is_neutral(swap));
}

TEST_CASE("strongly inert / active factorization") {
    TaggedEdge a(PointedMap(4, 2, {1, 0, 2, 2}), 1, 1);
    Factorization f = inert_active_factorize(a);
    CHECK(f.inert.map == PointedMap(4, 3, {1, 0, 2, 3}));
    CHECK(f.active.map == PointedMap(3, 2, {1, 2, 2}));
    CHECK(compose(f.active, f.inert) == a);
    CHECK(count_factorizations(a, 4) == 1);
    TaggedEdge act(PointedMap(3, 1, {1, 1, 1}), 1, 2);
    Factorization fa = inert_active_factorize(act);
    CHECK(fa.inert.degenerate());
    CHECK(fa.active == act);
    TaggedEdge si(PointedMap(3, 2, {0, 1, 2}), 1, 1);
    Factorization fs = inert_active_factorize(si);
    CHECK(fs.inert == si);
    CHECK(fs.active.degenerate());
    for (int m = 0; m <= 3; ++m)
        for (int n = 0; n <= 3; ++n)
            for (const auto& g : all_maps(m, n))
                for (int e1 = 1; e1 <= 2; ++e1) {
                    TaggedEdge e(g, 1, e1);
                    Factorization h = inert_active_factorize(e);
                    CHECK(is_strongly_inert(h.inert));
                    CHECK(is_active(h.active));
                    CHECK(compose(h.active, h.inert) == e);
                    CHECK(count_factorizations(e, 3) == 1);
                }
}

TEST_CASE("wedge blocks and their projections") {
    CHECK(wedge_inclusion({2, 3}, 2, 2) == 4);
    CHECK(wedge_inclusion({2, 3}, 1, 1) == 1);
    CHECK(wedge_inclusion({0, 5}, 2, 5) == 5);
    CHECK(wedge_size({2, 3}) == 5);
    CHECK(h_component({2, 3}, 1) == PointedMap(5, 2, {1, 2, 0, 0, 0}));
    CHECK(h_component({2, 3}, 2) == PointedMap(5, 3, {0, 0, 1, 2, 3}));
    CHECK(h_component({1}, 1) == PointedMap::identity(1));
    for (const std::vector<int>& sizes : {std::vector<int>{2, 3}, {1, 0, 2}, {3}, {0, 0}}) {
        for (std::size_t i = 1; i <= sizes.size(); ++i) {
            PointedMap h = h_component(sizes, static_cast<int>(i));
            CHECK(is_inert(h));
            for (int k = 1; k <= sizes[i - 1]; ++k) CHECK(h(wedge_inclusion(sizes, static_cast<int>(i), k)) == k);
        }
    }
}

TEST_CASE("preimage objects") {
    Preimage p = preimage_object(PointedMap(3, 2, {1, 2, 2}), 2);
    CHECK(p.k == 2);
    CHECK(p.elements == std::vector<int>{2, 3});
    CHECK(preimage_object(PointedMap(3, 2, {1, 2, 2}), 1).k == 1);
    PointedMap inert(4, 2, {0, 2, 0, 1});
    for (int i = 1; i <= 2; ++i) CHECK(preimage_object(inert, i).k == 1);
    CHECK(preimage_object(PointedMap(3, 2, {0, 0, 0}), 1).k == 0);
}

TEST_CASE("truncated Fin* categories and nerves") {
    FinStarCategory C = finstar_category(1);
    int non_identity = 0;
    for (int a = 0; a < C.cat.arrow_count(); ++a) non_identity += !C.cat.is_identity(a);
    // <0> -> <1>, <1> -> <0>, and the zero map <1> -> <1>
    CHECK(non_identity == 3);
    CHECK(C.cat.check().empty());
    FinStarNerve N0 = nerve_finstar(0, 3, 3);
    CHECK(N0.nerve->count(0) == 3);
    CHECK(N0.nerve->count(1) == 3);
    CHECK(N0.nerve->count(2) == 1);
    CHECK(N0.nerve->count(3) == 0);
    FinStarNerve N1 = nerve_finstar(2, 1, 2);
    CHECK(N1.nerve->count(0) == 3);
    CHECK(N1.nerve->check().empty());
    FinStarCategory C2 = finstar_category(2, 1, 2);
    CHECK(C2.cat.check().empty());
    for (int a = 0; a < C2.cat.arrow_count(); ++a) CHECK(C2.arrow_of(C2.edge[a]) == a);
}
