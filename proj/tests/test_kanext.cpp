#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "opkan/kanext.hpp"
#include "opkan/operad.hpp"

using namespace opkan;

namespace {

OperadSimplex edge(int k0, int e0, const PointedMap& a, int e1) { return OperadSimplex::vertex(k0, e0).then(a, e1); }

/** Group rule computed from the edge kinds alone. */
Group group_by_rule(const OperadSimplex& s, int* j_out, int* k_out) {
    const int m = s.m;
    int k = m;
    while (k >= 1 && is_strongly_inert(s.edge(k))) --k;
    int j = k;
    while (j >= 1 && is_active(s.edge(j))) --j;
    *j_out = j;
    *k_out = k;
    bool closed = s.sizes.back() == 1;
    if (j == 0) {
        if (!closed) return Group::G2p;
        return k == m ? Group::G1 : Group::G2;
    }
    return is_strongly_inert(s.edge(j)) ? Group::G3 : Group::G3p;
}

}  // namespace

TEST_CASE("complete simplices") {
    auto v = enumerate_complete(1, 1, 0);
    REQUIRE(v.size() == 2);
    CHECK(v[0] == OperadSimplex::vertex(0, 1));
    CHECK(v[1] == OperadSimplex::vertex(1, 1));
    CHECK(enumerate_complete(2, 2, 0).empty());
    for (int m = 0; m <= 2; ++m)
        for (const auto& s : enumerate_complete(2, 2, m)) {
            CHECK(s.nondegenerate());
            CHECK(s.complete(2));
        }
}

TEST_CASE("group examples") {
    OperadSimplex fold = edge(2, 1, PointedMap(2, 1, {1, 1}), 1);
    GroupTag t = classify_group(fold, 1);
    CHECK(t.group == Group::G1);
    CHECK(t.j == 0);
    CHECK(t.k == 1);
    OperadSimplex r1 = edge(2, 1, PointedMap(2, 1, {1, 0}), 1);
    GroupTag u = classify_group(r1, 1);
    CHECK(u.group == Group::G2);
    CHECK(u.k == 0);
    CHECK(u.j == 0);
    OperadSimplex lab = edge(1, 1, PointedMap::identity(1), 2);
    CHECK(classify_group(lab, 2).group == Group::G1);
    OperadSimplex a = associate(r1, 1);
    CHECK(a == OperadSimplex::vertex(2, 1));
    CHECK(classify_group(a, 1).group == Group::G2p);
}

TEST_CASE("groups agree with the rule on every complete simplex") {
    for (int n = 1; n <= 2; ++n)
        for (int m = 0; m <= 2; ++m)
            for (const auto& s : enumerate_complete(2, n, m)) {
                int j = 0, k = 0;
                Group g = group_by_rule(s, &j, &k);
                GroupTag t = classify_group(s, n);
                CHECK(t.group == g);
                if (t.group != Group::G3 && t.group != Group::G3p) CHECK(t.k == k);
                CHECK(t.j == j);
            }
}

TEST_CASE("associates") {
    auto as = associates_of(OperadSimplex::vertex(2, 1), 2, 1);
    REQUIRE(as.size() == 2);
    for (const auto& s : as) {
        CHECK(s.m == 1);
        CHECK(classify_group(s, 1).group == Group::G2);
        CHECK(associate(s, 1) == OperadSimplex::vertex(2, 1));
        CHECK(is_strongly_inert(s.edge(1)));
        CHECK(quadruple_of_associate(s) == Quadruple{0, 0, 0, 0});
    }
    CHECK(associates_of(OperadSimplex::vertex(0, 1), 2, 1).empty());
    CHECK(quadruple(OperadSimplex::vertex(2, 1), 2, 1) == Quadruple{0, 0, 0, 0});
}

TEST_CASE("ordering by quadruple") {
    OrderedItem x{OperadSimplex::vertex(2, 1), Quadruple{0, 1, 0, 0}};
    OrderedItem y{OperadSimplex::vertex(0, 1), Quadruple{0, 0, 1, 5}};
    auto o = order_A({x, y});
    CHECK(o[0].simplex == y.simplex);
    OrderedItem p{OperadSimplex::vertex(2, 1), Quadruple{0, 0, 0, 0}};
    OrderedItem q{OperadSimplex::vertex(0, 1), Quadruple{0, 0, 0, 0}};
    auto e = order_A({p, q});
    CHECK(e[0].simplex == q.simplex);
    CHECK(e[0].simplex < e[1].simplex);
    Filtration F = build_filtration(2, 1, 2);
    for (std::size_t i = 1; i < F.A.size(); ++i) CHECK_FALSE(F.A[i].quad < F.A[i - 1].quad);
}

TEST_CASE("filtration stages are nested and exhaust F(m)") {
    Filtration F = build_filtration(2, 1, 2);
    CHECK(F.F_prev.subset_of(F.F_prime));
    CHECK(F.F_prime.subset_of(F.F_second));
    CHECK(F.F_second.subset_of(F.F_m));
    CHECK(filtration_upto(F, static_cast<int>(F.A.size()) - 1, true) == F.F_m);
    CHECK(F.F_prev == filtration_level(F.amb, 1));
    CHECK(F.F_m == filtration_level(F.amb, 2));
}

TEST_CASE("diamond properties and the reversed control") {
    for (auto [K, n, m] : {std::tuple{2, 1, 2}, std::tuple{2, 2, 2}, std::tuple{2, 1, 3}}) {
        Report r = check_diamond(K, n, m);
        CHECK_MESSAGE(r.ok(), r.first_failure());
        DiamondOptions o;
        o.order = Order::Reversed;
        CHECK_FALSE(check_diamond(K, n, m, o).ok());
        Report q = quadruple_invariance(K, n, m);
        CHECK_MESSAGE(q.ok(), q.first_failure());
    }
}

TEST_CASE("taxonomy sweeps") {
    Report e = edge_taxonomy_sweep(3, 2);
    CHECK_MESSAGE(e.ok(), e.first_failure());
    Report p = partition_sweep(2, 2, 2);
    CHECK_MESSAGE(p.ok(), p.first_failure());
}

TEST_CASE("heads and tails") {
    auto inst = heads_tails_instances();
    REQUIRE(inst.size() >= 10);
    bool saw_empty = false;
    for (const auto& i : inst) {
        CHECK(heads_tails_hypotheses(i.input).empty());
        Report r = heads_tails_verify(i.input);
        CHECK_MESSAGE(r.ok(), std::string(i.input.name + ": " + r.first_failure()));
        if (i.input.Sigma.empty()) {
            saw_empty = true;
            HeadsTailsData d = heads_tails_build(i.input);
            CHECK(d.XSp == d.XS);
            CHECK(d.sigma_a.empty());
        }
    }
    CHECK(saw_empty);
    HeadsTailsData d = heads_tails_build(inst[0].input);
    REQUIRE_FALSE(d.sigma_a.empty());
    for (unsigned seed = 0; seed < 5; ++seed) {
        HeadsTailsData m = d;
        std::mt19937 rng(seed);
        std::string what = heads_tails_mutate(m, rng);
        CHECK_MESSAGE(!heads_tails_check(inst[0].input, m).ok(), what);
    }
}

TEST_CASE("pushout description of the slice join") {
    auto inst = lemma_3125_instances();
    REQUIRE(inst.size() >= 5);
    bool empty_c0 = false;
    for (const auto& in : inst) {
        CHECK(lemma_3125_hypotheses(in).empty());
        Report r = lemma_3125_verify(in);
        CHECK_MESSAGE(r.ok(), std::string(in.name + ": " + r.first_failure()));
        empty_c0 = empty_c0 || in.c0.empty();
    }
    CHECK(empty_c0);
    Lemma3125Options o;
    o.perturb_seed = 1;
    CHECK_FALSE(lemma_3125_verify(inst[0], o).ok());
}

TEST_CASE("step 3 case 1 on identity cylinders") {
    OperadModel T = triv_model(2);
    OperadModel cyl = family_from_functor(identity_functor(T));
    for (int m = 1; m <= 2; ++m) {
        Report r = step3_case1_verify(cyl, m, 3);
        CHECK_MESSAGE(r.ok(), r.first_failure());
        Step3Options o;
        o.reverse_lambda = true;
        CHECK_FALSE(step3_case1_verify(cyl, m, 3, o).ok());
    }
    OperadModel small = family_from_functor(identity_functor(comm_model(1)));
    Report e = step3_case1_verify(small, 1, 3);
    CHECK(e.ok());
    bool none = false;
    for (const auto& n : e.notes) none = none || n.find("no sigma'_a") != std::string::npos;
    CHECK(none);
    CHECK_THROWS_AS(step3_case1_verify(T, 1, 3), HypothesisViolation);
}
