#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <functional>
#include <random>

#include "opkan/category.hpp"
#include "opkan/finstar.hpp"
#include "opkan/grothendieck.hpp"
#include "opkan/sset.hpp"

using namespace opkan;

namespace {

std::vector<int> counts(const FiniteSimplicialSet& X) {
    std::vector<int> c;
    for (int l = 0; l <= X.dim_bound(); ++l) c.push_back(X.count(l));
    while (!c.empty() && c.back() == 0) c.pop_back();
    return c;
}

/** Strictly increasing chains of length k+1 in the product poset [p] x [q]. */
int product_chains(int p, int q, int k) {
    std::vector<std::pair<int, int>> pts;
    for (int a = 0; a <= p; ++a)
        for (int b = 0; b <= q; ++b) pts.push_back({a, b});
    std::function<int(int, int)> rec = [&](int last, int left) {
        if (left == 0) return 1;
        int c = 0;
        for (int i = 0; i < static_cast<int>(pts.size()); ++i) {
            if (last >= 0) {
                auto [a, b] = pts[last];
                auto [x, y] = pts[i];
                if (!(x >= a && y >= b && (x > a || y > b))) continue;
            }
            c += rec(i, left - 1);
        }
        return c;
    };
    return rec(-1, k + 1);
}

std::vector<Mono> monotone(int q, int p) {
    std::vector<Mono> out;
    Mono t(static_cast<std::size_t>(q + 1), 0);
    while (true) {
        out.push_back(t);
        int i = q;
        while (i >= 0 && t[i] == p) --i;
        if (i < 0) break;
        int v = t[i] + 1;
        for (int u = i; u <= q; ++u) t[u] = v;
    }
    return out;
}

}  // namespace

TEST_CASE("degeneracy words normalize to strictly decreasing form") {
    FiniteSimplicialSet P = point();
    Simplex x = P.normalize(0, 0, {{'s', 1}, {'s', 0}});
    CHECK(x.level == 2);
    CHECK(x.degeneracies() == std::vector<int>{1, 0});
    Simplex y = P.normalize(0, 0, {{'s', 0}, {'s', 0}});
    CHECK(y == x);
    CHECK(P.face(P.degeneracy(Simplex(0, 0), 0), 0) == Simplex(0, 0));
}

TEST_CASE("mixed identities on a degenerate edge") {
    FiniteSimplicialSet D2 = standard_simplex(2);
    Simplex e = simplex_with_vertices(2, {0, 1});
    CHECK(D2.face(D2.degeneracy(e, 0), 1) == e);
    CHECK(D2.face(D2.degeneracy(e, 0), 0) == e);
    CHECK(D2.face(D2.degeneracy(e, 1), 0) == D2.degeneracy(D2.face(e, 0), 0));
    CHECK(D2.face(D2.degeneracy(e, 0), 2) == D2.degeneracy(D2.face(e, 1), 0));
}

TEST_CASE("faces of the standard 2-simplex") {
    FiniteSimplicialSet D2 = standard_simplex(2);
    Simplex top(2, 0);
    CHECK(D2.face(top, 1) == simplex_with_vertices(2, {0, 2}));
    CHECK(D2.vertices(D2.face(top, 1)) == std::vector<int>{0, 2});
}

TEST_CASE("normal forms in Delta^n agree with vertex precomposition") {
    for (int n = 0; n <= 3; ++n) {
        FiniteSimplicialSet S = standard_simplex(n);
        for (int l = 0; l <= n + 2; ++l)
            S.for_each_simplex(l, [&](const Simplex& x) {
                auto xv = S.vertices(x);
                for (int q = 0; q <= 3; ++q)
                    for (const Mono& th : monotone(q, l)) {
                        std::vector<int> want;
                        for (int t : th) want.push_back(xv[t]);
                        CHECK(S.apply(x, th) == simplex_with_vertices(n, want));
                    }
            });
    }
}

TEST_CASE("simplicial identities on every generator of a nerve") {
    FinStarNerve N = nerve_finstar(2, 1, 3);
    const FiniteSimplicialSet& X = *N.nerve;
    CHECK(X.check().empty());
    for (int l = 2; l <= 3; ++l)
        for (int g = 0; g < X.count(l); ++g) {
            Simplex s(l, g);
            for (int j = 1; j <= l; ++j)
                for (int i = 0; i < j; ++i) CHECK(X.face(X.face(s, j), i) == X.face(X.face(s, i), j - 1));
        }
}

TEST_CASE("a corrupted face table is rejected") {
    FiniteSimplicialSet D2 = standard_simplex(2);
    D2.set_gen_face(2, 0, 0, simplex_with_vertices(2, {0, 1}));
    CHECK_FALSE(D2.check().empty());
    CHECK_THROWS_AS(D2.validate(), InvalidStructure);
}

TEST_CASE("product counts match chains in the product poset") {
    for (int p = 0; p <= 2; ++p)
        for (int q = 0; q <= 2; ++q) {
            FiniteSimplicialSet P = product(standard_simplex(p), standard_simplex(q));
            CHECK(P.check().empty());
            for (int k = 0; k <= p + q; ++k) CHECK(P.count(k) == product_chains(p, q, k));
        }
    FiniteSimplicialSet sq = product(standard_simplex(1), standard_simplex(1));
    CHECK(counts(sq) == std::vector<int>{4, 5, 2});
    CHECK(counts(product(standard_simplex(2), point())) == std::vector<int>{3, 3, 1});
}

TEST_CASE("join counts follow the levelwise formula") {
    auto formula = [](const FiniteSimplicialSet& X, const FiniteSimplicialSet& Y, int k) {
        int c = (k <= X.dim_bound() ? X.count(k) : 0) + (k <= Y.dim_bound() ? Y.count(k) : 0);
        for (int i = 0; i <= k - 1; ++i) {
            int j = k - 1 - i;
            if (i <= X.dim_bound() && j <= Y.dim_bound()) c += X.count(i) * Y.count(j);
        }
        return c;
    };
    FiniteSimplicialSet D1 = standard_simplex(1);
    FiniteSimplicialSet bd = restrict_to(boundary_mask(D1));
    FiniteSimplicialSet J = join(bd, point());
    CHECK(counts(J) == std::vector<int>{3, 2});
    CHECK(J.check().empty());
    for (int p = 0; p <= 2; ++p)
        for (int q = 0; q <= 2; ++q) {
            FiniteSimplicialSet A = standard_simplex(p), B = standard_simplex(q);
            FiniteSimplicialSet S = join(A, B);
            CHECK(counts(S) == counts(standard_simplex(p + q + 1)));
            for (int k = 0; k <= p + q + 1; ++k) CHECK(S.count(k) == formula(A, B, k));
        }
    CHECK(counts(join(point(), point())) == std::vector<int>{2, 1});
    CHECK(counts(join(standard_simplex(2), FiniteSimplicialSet::empty_set())) == std::vector<int>{3, 3, 1});
}

TEST_CASE("nerves of small categories") {
    CHECK(counts(nerve(linear_order(1), 3)) == std::vector<int>{2, 1});
    CHECK(counts(nerve(linear_order(2), 3)) == std::vector<int>{3, 3, 1});
    CategoryDiagram F = arrow_example();
    GrothendieckTotal G = grothendieck_construct(F);
    CHECK(counts(nerve(G.cat, 3)) == std::vector<int>{3, 3, 1});
}

TEST_CASE("generated subsets and membership") {
    FiniteSimplicialSet D2 = standard_simplex(2);
    CHECK(subset_generated(D2, {Simplex(2, 0)}) == SubsetMask(D2, true));
    SubsetMask h = subset_generated(D2, {simplex_with_vertices(2, {0, 1}), simplex_with_vertices(2, {1, 2})});
    CHECK(h == horn_mask(D2, 1));
    CHECK_FALSE(member(h, simplex_with_vertices(2, {0, 2})));
    CHECK(member(h, simplex_with_vertices(2, {1, 1, 2})));
    CHECK(h.face_closed());
}

TEST_CASE("pushout decisions") {
    FiniteSimplicialSet D2 = standard_simplex(2);
    SubsetMask e01 = subset_generated(D2, {simplex_with_vertices(2, {0, 1})});
    SubsetMask e12 = subset_generated(D2, {simplex_with_vertices(2, {1, 2})});
    SubsetMask v1 = subset_generated(D2, {simplex_with_vertices(2, {1})});
    CHECK(pushout_check(v1, e01, e12, horn_mask(D2, 1)).ok());
    CHECK(pushout_check(v1, v1, e12, e12).ok());
    CHECK(pushout_check(v1, e01, e12, SubsetMask(D2, true)).status == PushoutStatus::NotPushout);
    SubsetMask empty(D2);
    CHECK(pushout_check(empty, e01, e12, horn_mask(D2, 1)).status == PushoutStatus::NotPushout);
}

TEST_CASE("slices agree with brute-force extension counts") {
    FiniteSimplicialSet D0 = standard_simplex(0);
    FiniteSimplicialSet s0 = slice_over(D0, Simplex(0, 0), 2);
    CHECK(counts(s0) == std::vector<int>{1});
    FiniteSimplicialSet D1 = standard_simplex(1);
    CHECK(slice_over(D1, simplex_with_vertices(1, {1}), 2).count(0) == 2);
    FiniteSimplicialSet D2 = standard_simplex(2);
    CHECK(slice_over(D2, simplex_with_vertices(2, {1, 2}), 2).simplex_count(0) == 2);
    for (int n = 1; n <= 3; ++n) {
        FiniteSimplicialSet S = standard_simplex(n);
        for (int m = 0; m <= 1; ++m)
            S.for_each_simplex(m, [&](const Simplex& sigma) {
                FiniteSimplicialSet sl = slice_over(S, sigma, 2);
                CHECK(sl.check().empty());
                for (int k = 0; k <= 2; ++k) {
                    std::size_t brute = 0;
                    std::vector<int> last;
                    for (int t = k + 1; t <= k + m + 1; ++t) last.push_back(t);
                    S.for_each_simplex(k + m + 1, [&](const Simplex& y) {
                        if (S.restrict(y, last) == sigma) ++brute;
                    });
                    CHECK(sl.simplex_count(k) == brute);
                }
            });
    }
}

TEST_CASE("heads and tails") {
    FiniteSimplicialSet D2 = standard_simplex(2);
    OverInterval u{{0, 1, 1}};
    Simplex top(2, 0);
    CHECK(head(D2, top, u) == simplex_with_vertices(2, {1, 2}));
    CHECK(tail(D2, top, u) == simplex_with_vertices(2, {0}));
    CHECK(head(D2, simplex_with_vertices(2, {0, 0}), u).is_empty());
    std::mt19937 rng(7);
    for (int t = 0; t < 50; ++t) {
        int l = static_cast<int>(rng() % 4);
        std::vector<int> v(static_cast<std::size_t>(l + 1));
        for (auto& x : v) x = static_cast<int>(rng() % 3);
        std::sort(v.begin(), v.end());
        Simplex x = simplex_with_vertices(2, v);
        Simplex h = head(D2, x, u);
        if (!h.is_empty()) CHECK(head(D2, h, u) == h);
    }
}
