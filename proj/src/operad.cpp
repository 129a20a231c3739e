#include "opkan/operad.hpp"

#include <algorithm>
#include <map>
#include <unordered_map>

namespace opkan {

std::vector<int> OperadModel::fiber(int k, int label) const {
    std::vector<int> out;
    for (int x = 0; x < cat->object_count(); ++x)
        if (size_of(x) == k && label_of(x) == label) out.push_back(x);
    return out;
}

namespace {

OperadModel make_model(std::string name, std::shared_ptr<const FinStarCategory> base) {
    OperadModel M;
    M.name = std::move(name);
    M.base = std::move(base);
    M.cat = std::make_shared<FiniteCategory>();
    M.proj.source = M.cat.get();
    M.proj.target = &M.base->cat;
    return M;
}

bool inert_edge(const TaggedEdge& e) { return e.e0 == e.e1 && is_inert(e.map); }

PointedMap rho(int n, int i) {
    std::vector<int> v(n, 0);
    v[i - 1] = 1;
    return PointedMap(n, 1, v);
}

}  // namespace

OperadModel comm_model(int K) {
    auto base = std::make_shared<FinStarCategory>(finstar_category(K, 1, 1));
    OperadModel M = make_model("comm", base);
    *M.cat = base->cat;
    for (int x = 0; x < base->cat.object_count(); ++x) M.proj.obj.push_back(x);
    for (int f = 0; f < base->cat.arrow_count(); ++f) {
        M.proj.arr.push_back(f);
        M.inert.push_back(inert_edge(base->edge[f]) ? 1 : 0);
    }
    return M;
}

OperadModel triv_model(int K) {
    auto base = std::make_shared<FinStarCategory>(finstar_category(K, 1, 1));
    OperadModel M = make_model("triv", base);
    const FiniteCategory& B = base->cat;
    for (int x = 0; x < B.object_count(); ++x) {
        M.cat->add_object(B.object_name(x));
        M.proj.obj.push_back(x);
    }
    std::vector<int> idx(B.arrow_count(), -1);
    for (int x = 0; x < B.object_count(); ++x) idx[B.id(x)] = M.cat->id(x);
    M.proj.arr.assign(M.cat->arrow_count(), 0);
    for (int x = 0; x < B.object_count(); ++x) M.proj.arr[M.cat->id(x)] = B.id(x);
    for (int f = 0; f < B.arrow_count(); ++f) {
        if (B.is_identity(f) || !is_inert(base->edge[f].map)) continue;
        idx[f] = M.cat->add_arrow(B.arrow(f).src, B.arrow(f).dst, B.arrow(f).name);
        M.proj.arr.push_back(f);
    }
    for (int f = 0; f < B.arrow_count(); ++f) {
        if (idx[f] < 0 || B.is_identity(f)) continue;
        for (int g : B.out(B.arrow(f).dst)) {
            if (idx[g] < 0 || B.is_identity(g)) continue;
            M.cat->set_composite(idx[g], idx[f], idx[B.compose(g, f)]);
        }
    }
    M.inert.assign(M.cat->arrow_count(), 1);
    return M;
}

std::vector<std::string> Monoid::check() const {
    std::vector<std::string> errs;
    int n = size();
    if (n == 0) return {"monoid has no elements"};
    if (unit < 0 || unit >= n) return {"unit out of range"};
    if (static_cast<int>(table.size()) != n) return {"table has the wrong number of rows"};
    for (const auto& row : table) {
        if (static_cast<int>(row.size()) != n) return {"table row has the wrong length"};
        for (int v : row)
            if (v < 0 || v >= n) return {"table entry out of range"};
    }
    for (int a = 0; a < n; ++a) {
        if (mul(unit, a) != a || mul(a, unit) != a) errs.push_back("unit law fails at " + elements[a]);
        for (int b = 0; b < n; ++b) {
            if (mul(a, b) != mul(b, a)) errs.push_back("not commutative at " + elements[a] + "," + elements[b]);
            for (int c = 0; c < n; ++c)
                if (mul(mul(a, b), c) != mul(a, mul(b, c)))
                    errs.push_back("not associative at " + elements[a] + "," + elements[b] + "," + elements[c]);
        }
    }
    return errs;
}

Monoid cyclic_monoid(int order) {
    Monoid M;
    for (int i = 0; i < order; ++i) M.elements.push_back(std::to_string(i));
    M.unit = 0;
    M.table.assign(order, std::vector<int>(order));
    for (int a = 0; a < order; ++a)
        for (int b = 0; b < order; ++b) M.table[a][b] = (a + b) % order;
    return M;
}

int monoid_tuple_object(const std::vector<int>& tuple, int s) {
    int offset = 0, p = 1;
    for (std::size_t j = 0; j < tuple.size(); ++j) {
        offset += p;
        p *= s;
    }
    int code = 0;
    for (int x : tuple) code = code * s + x;
    return offset + code;
}

OperadModel monoid_model(const Monoid& Mo, int K) {
    auto errs = Mo.check();
    if (!errs.empty()) throw InvalidStructure(errs.front());
    auto base = std::make_shared<FinStarCategory>(finstar_category(K, 1, 1));
    OperadModel M = make_model("monoid", base);
    int s = Mo.size();
    std::vector<std::vector<int>> tuples;
    for (int k = 0; k <= K; ++k) {
        std::vector<int> t(k, 0);
        while (true) {
            std::string name = "(";
            for (int i = 0; i < k; ++i) name += (i ? "," : "") + Mo.elements[t[i]];
            name += ")";
            M.cat->add_object(name);
            M.proj.obj.push_back(base->object(k, 1));
            tuples.push_back(t);
            int i = k - 1;
            while (i >= 0 && t[i] == s - 1) t[i--] = 0;
            if (i < 0) break;
            ++t[i];
        }
    }
    M.proj.arr.resize(M.cat->arrow_count());
    for (int x = 0; x < M.cat->object_count(); ++x) M.proj.arr[M.cat->id(x)] = base->cat.id(M.proj.obj[x]);
    std::unordered_map<long long, int> lookup;
    auto key = [&](int x, int base_arrow) { return static_cast<long long>(x) * base->cat.arrow_count() + base_arrow; };
    std::vector<int> arrow_source;
    for (int x = 0; x < M.cat->object_count(); ++x) lookup[key(x, base->cat.id(M.proj.obj[x]))] = M.cat->id(x);
    for (int x = 0; x < M.cat->object_count(); ++x) {
        const auto& t = tuples[x];
        int m = static_cast<int>(t.size());
        for (int n = 0; n <= K; ++n)
            for (const PointedMap& a : all_maps(m, n)) {
                if (a == PointedMap::identity(m)) continue;
                std::vector<int> y(n, Mo.unit);
                for (int i = 1; i <= m; ++i)
                    if (a(i)) y[a(i) - 1] = Mo.mul(y[a(i) - 1], t[i - 1]);
                int yo = monoid_tuple_object(y, s);
                int ba = base->arrow_of(TaggedEdge(a, 1, 1));
                int f = M.cat->add_arrow(x, yo, a.to_string() + " on " + M.cat->object_name(x));
                M.proj.arr.push_back(ba);
                lookup[key(x, ba)] = f;
            }
    }
    for (int f = 0; f < M.cat->arrow_count(); ++f) {
        if (M.cat->is_identity(f)) continue;
        for (int g : M.cat->out(M.cat->arrow(f).dst)) {
            if (M.cat->is_identity(g)) continue;
            int ba = base->cat.compose(M.proj.arr[g], M.proj.arr[f]);
            M.cat->set_composite(g, f, lookup.at(key(M.cat->arrow(f).src, ba)));
        }
    }
    for (int f = 0; f < M.cat->arrow_count(); ++f) M.inert.push_back(inert_edge(M.edge_of(f)) ? 1 : 0);
    return M;
}

OperadFunctor identity_functor(const OperadModel& M) {
    OperadFunctor G;
    G.source = &M;
    G.target = &M;
    G.F.source = M.cat.get();
    G.F.target = M.cat.get();
    for (int x = 0; x < M.cat->object_count(); ++x) G.F.obj.push_back(x);
    for (int f = 0; f < M.cat->arrow_count(); ++f) G.F.arr.push_back(f);
    return G;
}

OperadFunctor monoid_functor(const OperadModel& A, const OperadModel& B, const std::vector<int>& hom, int sa, int sb) {
    OperadFunctor G;
    G.source = &A;
    G.target = &B;
    G.F.source = A.cat.get();
    G.F.target = B.cat.get();
    for (int k = 0; k <= A.base->K; ++k) {
        std::vector<int> t(k, 0);
        while (true) {
            std::vector<int> u(k);
            for (int i = 0; i < k; ++i) u[i] = hom.at(t[i]);
            G.F.obj.push_back(monoid_tuple_object(u, sb));
            int i = k - 1;
            while (i >= 0 && t[i] == sa - 1) t[i--] = 0;
            if (i < 0) break;
            ++t[i];
        }
    }
    for (int f = 0; f < A.cat->arrow_count(); ++f) {
        int s = G.F.obj[A.cat->arrow(f).src], d = G.F.obj[A.cat->arrow(f).dst];
        int found = -1;
        for (int g : B.cat->hom(s, d))
            if (B.edge_of(g).map == A.edge_of(f).map) found = g;
        if (found < 0) throw HypothesisViolation("element map is not a monoid homomorphism");
        G.F.arr.push_back(found);
    }
    return G;
}

OperadModel family_from_functor(const OperadFunctor& G) {
    const OperadModel& A = *G.source;
    const OperadModel& B = *G.target;
    auto errs = G.F.check(1);
    if (!errs.empty()) throw HypothesisViolation("not a functor: " + errs.front());
    if (A.base->K != B.base->K) throw HypothesisViolation("models have different truncations");
    for (int x = 0; x < A.cat->object_count(); ++x)
        if (A.size_of(x) != B.size_of(G.F.obj[x])) throw HypothesisViolation("functor is not over Fin*");
    for (int f = 0; f < A.cat->arrow_count(); ++f)
        if (A.edge_of(f).map != B.edge_of(G.F.arr[f]).map) throw HypothesisViolation("functor is not over Fin*");
    int K = A.base->K;
    auto base = std::make_shared<FinStarCategory>(finstar_category(K, 0, 1));
    OperadModel M = make_model("cylinder(" + A.name + "->" + B.name + ")", base);
    const FiniteCategory& CA = *A.cat;
    const FiniteCategory& CB = *B.cat;
    int nA = CA.object_count();
    for (int x = 0; x < nA; ++x) {
        M.cat->add_object(CA.object_name(x) + "@0");
        M.proj.obj.push_back(base->object(A.size_of(x), 0));
    }
    for (int y = 0; y < CB.object_count(); ++y) {
        M.cat->add_object(CB.object_name(y) + "@1");
        M.proj.obj.push_back(base->object(B.size_of(y), 1));
    }
    M.proj.arr.assign(M.cat->arrow_count(), 0);
    M.inert.assign(M.cat->arrow_count(), 1);
    for (int x = 0; x < M.cat->object_count(); ++x) M.proj.arr[M.cat->id(x)] = base->cat.id(M.proj.obj[x]);
    auto add = [&](int s, int d, const std::string& name, const TaggedEdge& e, bool inert) {
        int f = M.cat->add_arrow(s, d, name);
        M.proj.arr.push_back(base->arrow_of(e));
        M.inert.push_back(inert ? 1 : 0);
        return f;
    };
    std::vector<int> ai(CA.arrow_count()), bi(CB.arrow_count());
    for (int f = 0; f < CA.arrow_count(); ++f)
        ai[f] = CA.is_identity(f) ? M.cat->id(CA.arrow(f).src)
                                  : add(CA.arrow(f).src, CA.arrow(f).dst, CA.arrow(f).name + "@0",
                                        TaggedEdge(A.edge_of(f).map, 0, 0), A.inert[f]);
    for (int g = 0; g < CB.arrow_count(); ++g)
        bi[g] = CB.is_identity(g) ? M.cat->id(nA + CB.arrow(g).src)
                                  : add(nA + CB.arrow(g).src, nA + CB.arrow(g).dst, CB.arrow(g).name + "@1",
                                        TaggedEdge(B.edge_of(g).map, 1, 1), B.inert[g]);
    std::vector<std::unordered_map<int, int>> cross(nA);
    std::vector<std::pair<int, int>> cross_of;
    for (int x = 0; x < nA; ++x)
        for (int g : CB.out(G.F.obj[x])) {
            int c = add(x, nA + CB.arrow(g).dst, CA.object_name(x) + ">" + CB.arrow(g).name,
                        TaggedEdge(B.edge_of(g).map, 0, 1), false);
            cross[x][g] = c;
            if (static_cast<int>(cross_of.size()) < c + 1) cross_of.resize(c + 1, {-1, -1});
            cross_of[c] = {x, g};
        }
    cross_of.resize(M.cat->arrow_count(), {-1, -1});
    for (int f = 0; f < CA.arrow_count(); ++f) {
        if (CA.is_identity(f)) continue;
        for (int f2 : CA.out(CA.arrow(f).dst))
            if (!CA.is_identity(f2)) M.cat->set_composite(ai[f2], ai[f], ai[CA.compose(f2, f)]);
        int x = CA.arrow(f).dst, x0 = CA.arrow(f).src;
        for (auto [g, c] : cross[x]) M.cat->set_composite(c, ai[f], cross[x0].at(CB.compose(g, G.F.arr[f])));
    }
    for (int g = 0; g < CB.arrow_count(); ++g) {
        if (CB.is_identity(g)) continue;
        for (int g2 : CB.out(CB.arrow(g).dst))
            if (!CB.is_identity(g2)) M.cat->set_composite(bi[g2], bi[g], bi[CB.compose(g2, g)]);
    }
    for (int c = 0; c < M.cat->arrow_count(); ++c) {
        auto [x, g] = cross_of[c];
        if (x < 0) continue;
        for (int b : CB.out(CB.arrow(g).dst))
            if (!CB.is_identity(b)) M.cat->set_composite(bi[b], c, cross[x].at(CB.compose(b, g)));
    }
    return M;
}

Report validate_operad_model(const OperadModel& M) {
    Report r;
    r.suite = "validate " + M.name;
    auto cerrs = M.cat->check(1);
    r.add("category laws", cerrs.empty(), cerrs.empty() ? "" : cerrs.front());
    auto perrs = M.proj.check(1);
    r.add("projection is a functor", perrs.empty(), perrs.empty() ? "" : perrs.front());
    if (!cerrs.empty() || !perrs.empty()) return r;
    const FiniteCategory& C = *M.cat;
    const FinStarCategory& B = *M.base;
    std::vector<signed char> cc(C.arrow_count(), -1);
    auto cocart = [&](int f) {
        if (cc[f] < 0) cc[f] = is_cocartesian(M.proj, f) ? 1 : 0;
        return cc[f] == 1;
    };
    std::string bad;
    std::size_t designated = 0;
    for (int f = 0; f < C.arrow_count(); ++f) {
        if (!M.inert[f]) continue;
        ++designated;
        if (!inert_edge(M.edge_of(f)) || !cocart(f)) {
            if (bad.empty()) bad = C.arrow(f).name;
        }
    }
    r.add("designated lifts are cocartesian over inert maps (" + std::to_string(designated) + ")", bad.empty(), bad);
    for (int x = 0; x < C.object_count(); ++x) {
        int bx = M.proj.obj[x];
        for (int b : B.cat.out(bx)) {
            if (!inert_edge(B.edge[b])) continue;
            bool found = false;
            for (int f : C.out(x))
                if (M.inert[f] && M.proj.arr[f] == b && cocart(f)) {
                    found = true;
                    break;
                }
            r.add("(a) lift of " + B.edge[b].to_string() + " at " + C.object_name(x), found);
        }
    }
    for (int c = B.lo; c <= B.hi; ++c) {
        std::vector<int> ones = M.fiber(1, c);
        for (int n = 1; n <= B.K; ++n) {
            std::vector<int> over = M.fiber(n, c);
            std::vector<int> pick(n, 0);
            if (ones.empty()) break;
            while (true) {
                bool glued = false;
                for (int X : over) {
                    bool all = true;
                    for (int i = 1; i <= n && all; ++i) {
                        int target = B.arrow_of(TaggedEdge(rho(n, i), c, c));
                        bool ok = false;
                        for (int f : C.hom(X, ones[pick[i - 1]]))
                            if (M.proj.arr[f] == target && cocart(f)) {
                                ok = true;
                                break;
                            }
                        all = ok;
                    }
                    if (all) {
                        glued = true;
                        break;
                    }
                }
                std::string tuple;
                for (int i = 0; i < n; ++i) tuple += (i ? "," : "") + C.object_name(ones[pick[i]]);
                r.add("(c) gluing object for [" + tuple + "]", glued);
                int i = n - 1;
                while (i >= 0 && pick[i] == static_cast<int>(ones.size()) - 1) pick[i--] = 0;
                if (i < 0) break;
                ++pick[i];
            }
        }
    }
    r.add("(b) limit clause", Status::NotChecked, "not checked (homotopical)");
    return r;
}

ActCategory act_category(std::shared_ptr<const FinStarCategory> base) {
    if (base->lo != base->hi) throw HypothesisViolation("active arrow category needs a single label");
    ActCategory A;
    A.base = base;
    A.cat = std::make_shared<FiniteCategory>();
    const FiniteCategory& B = base->cat;
    for (int a = 0; a < B.arrow_count(); ++a) {
        if (!is_active(base->edge[a].map)) continue;
        A.cat->add_object(base->edge[a].map.to_string());
        A.object_arrow.push_back(a);
    }
    int nobj = A.cat->object_count();
    for (int x = 0; x < nobj; ++x) A.square.push_back({B.id(B.arrow(A.object_arrow[x]).src), B.id(B.arrow(A.object_arrow[x]).dst)});
    std::unordered_map<std::uint64_t, int> lookup;
    auto key = [&](int s, int d, int u, int v) {
        return (static_cast<std::uint64_t>(s) * nobj + d) << 32 | static_cast<std::uint64_t>(u) << 16 |
               static_cast<std::uint64_t>(v);
    };
    if (B.arrow_count() >= 65536) throw ResourceLimit("base category too large for the active arrow category");
    for (int x = 0; x < nobj; ++x) lookup[key(x, x, A.square[x].first, A.square[x].second)] = A.cat->id(x);
    for (int x = 0; x < nobj; ++x) {
        int a = A.object_arrow[x];
        for (int y = 0; y < nobj; ++y) {
            int b = A.object_arrow[y];
            for (int u : B.hom(B.arrow(a).src, B.arrow(b).src))
                for (int v : B.hom(B.arrow(a).dst, B.arrow(b).dst)) {
                    if (B.compose(b, u) != B.compose(v, a)) continue;
                    if (x == y && B.is_identity(u) && B.is_identity(v)) continue;
                    int f = A.cat->add_arrow(x, y, "[" + base->edge[u].map.to_string() + "|" +
                                                       base->edge[v].map.to_string() + "]");
                    A.square.push_back({u, v});
                    lookup[key(x, y, u, v)] = f;
                }
        }
    }
    for (int f = 0; f < A.cat->arrow_count(); ++f) {
        if (A.cat->is_identity(f)) continue;
        for (int g : A.cat->out(A.cat->arrow(f).dst)) {
            if (A.cat->is_identity(g)) continue;
            int u = B.compose(A.square[g].first, A.square[f].first);
            int v = B.compose(A.square[g].second, A.square[f].second);
            A.cat->set_composite(g, f, lookup.at(key(A.cat->arrow(f).src, A.cat->arrow(g).dst, u, v)));
        }
    }
    for (Functor* F : {&A.ev0, &A.ev1}) {
        F->source = A.cat.get();
        F->target = &B;
        bool first = F == &A.ev0;
        for (int x = 0; x < nobj; ++x) {
            const Arrow& ar = B.arrow(A.object_arrow[x]);
            F->obj.push_back(first ? ar.src : ar.dst);
        }
        for (int f = 0; f < A.cat->arrow_count(); ++f)
            F->arr.push_back(first ? A.square[f].first : A.square[f].second);
    }
    return A;
}

FiniteSimplicialSet act_arrows(int K, int D) {
    auto base = std::make_shared<FinStarCategory>(finstar_category(K, 1, 1));
    ActCategory A = act_category(base);
    return nerve(*A.cat, D);
}

std::vector<int> EnvelopeSet::fiber(int k) const {
    std::vector<int> out;
    for (int x = 0; x < cat->object_count(); ++x)
        if (act.base->size[q.obj[x]] == k) out.push_back(x);
    return out;
}

EnvelopeSet envelope(const OperadModel& M, int D) {
    if (M.base->lo != M.base->hi) throw HypothesisViolation("envelopes are built for single-label models");
    EnvelopeSet E;
    E.model = &M;
    E.act = act_category(M.base);
    E.cat = std::make_shared<FiniteCategory>(pullback_category(M.proj, E.act.ev0, &E.pairs));
    E.to_model.source = E.cat.get();
    E.to_model.target = M.cat.get();
    E.q.source = E.cat.get();
    E.q.target = &M.base->cat;
    for (const auto& [m, a] : E.pairs.objects) {
        E.to_model.obj.push_back(m);
        E.q.obj.push_back(E.act.ev1.obj[a]);
    }
    for (const auto& [m, a] : E.pairs.arrows) {
        E.to_model.arr.push_back(m);
        E.q.arr.push_back(E.act.ev1.arr[a]);
    }
    if (D < 0) return E;
    E.total = std::make_shared<FiniteSimplicialSet>(nerve(*E.cat, D, &E.info));
    E.base = nerve_finstar(M.base->K, 1, D);
    Functor qb = E.q;
    qb.target = &E.base.base->cat;
    E.to_base = nerve_map(qb, E.total, E.info, E.base.nerve, E.base.info);
    return E;
}

Report envelope_fiber_product_check(const EnvelopeSet& E) {
    Report r;
    const OperadModel& M = *E.model;
    if (!E.total) throw HypothesisViolation("envelope was built without its nerve");
    int D = E.total->dim_bound();
    NerveInfo im, ia, ib;
    auto NM = std::make_shared<FiniteSimplicialSet>(nerve(*M.cat, D, &im));
    auto NA = std::make_shared<FiniteSimplicialSet>(nerve(*E.act.cat, D, &ia));
    auto NB = std::make_shared<FiniteSimplicialSet>(nerve(M.base->cat, D, &ib));
    SimplicialMap pm = nerve_map(M.proj, NM, im, NB, ib);
    SimplicialMap pa = nerve_map(E.act.ev0, NA, ia, NB, ib);
    for (int n = 0; n <= D; ++n) {
        std::unordered_map<Simplex, std::size_t, SimplexHash> left;
        NM->for_each_simplex(n, [&](const Simplex& x) { ++left[pm(x)]; });
        std::size_t total = 0;
        NA->for_each_simplex(n, [&](const Simplex& y) {
            auto it = left.find(pa(y));
            if (it != left.end()) total += it->second;
        });
        std::size_t have = E.total->simplex_count(n);
        r.add("level " + std::to_string(n) + " fiber product count", total == have,
              std::to_string(total) + " vs " + std::to_string(have));
    }
    return r;
}

Report envelope_cocartesian_check(const EnvelopeSet& E) {
    Report r;
    const OperadModel& M = *E.model;
    const FiniteCategory& C = *E.cat;
    std::vector<signed char> mc(M.cat->arrow_count(), -1);
    auto inert_in_model = [&](int m) {
        if (mc[m] < 0) mc[m] = (inert_edge(M.edge_of(m)) && is_cocartesian(M.proj, m)) ? 1 : 0;
        return mc[m] == 1;
    };
    std::size_t forward = 0, converse = 0;
    std::string fbad, cbad;
    for (int f = 0; f < C.arrow_count(); ++f) {
        bool inert_img = inert_in_model(E.to_model.arr[f]);
        bool over_inert = inert_edge(E.act.base->edge[E.q.arr[f]]);
        if (!inert_img && !over_inert) continue;
        bool cc = is_cocartesian(E.q, f);
        if (inert_img) {
            ++forward;
            if (!cc && fbad.empty()) fbad = C.arrow(f).name;
        }
        if (over_inert && cc) {
            ++converse;
            if (!inert_img && cbad.empty()) cbad = C.arrow(f).name;
        }
    }
    r.add("inert image implies q-cocartesian (" + std::to_string(forward) + " edges)", fbad.empty(), fbad);
    r.add("q-cocartesian over inert implies inert image (" + std::to_string(converse) + " edges)", cbad.empty(),
          cbad);
    return r;
}

Report envelope_cocartesian_scan(const OperadModel& M) {
    if (M.base->lo != M.base->hi) throw HypothesisViolation("envelopes are built for single-label models");
    Report r;
    const FiniteCategory& C = *M.cat;
    const FiniteCategory& B = M.base->cat;
    std::vector<std::vector<int>> actives(C.object_count());
    for (int a = 0; a < B.arrow_count(); ++a) {
        if (!is_active(M.base->edge[a].map)) continue;
        for (int x = 0; x < C.object_count(); ++x)
            if (M.proj.obj[x] == B.arrow(a).src) actives[x].push_back(a);
    }
    std::vector<signed char> mc(C.arrow_count(), -1);
    auto inert_in_model = [&](int m) {
        if (mc[m] < 0) mc[m] = (inert_edge(M.edge_of(m)) && is_cocartesian(M.proj, m)) ? 1 : 0;
        return mc[m] == 1;
    };
    // (f, v) : (x, a) -> (y, b) is cocartesian iff for every (z, c) and u, composing with (f, v)
    // is a bijection from arrows (h, u) out of (y, b) to arrows (g, u v) out of (x, a)
    auto cocartesian = [&](int x, int a, int f, int y, int b, int v) {
        std::unordered_map<int, std::vector<int>> hk, gk;
        for (int z = 0; z < C.object_count(); ++z) {
            std::vector<int> hz = C.hom(y, z), gz = C.hom(x, z);
            for (int c : actives[z]) {
                hk.clear();
                gk.clear();
                for (int h : hz) hk[B.compose(c, M.proj.arr[h])].push_back(h);
                for (int g : gz) gk[B.compose(c, M.proj.arr[g])].push_back(g);
                for (int u : B.hom(B.arrow(b).dst, B.arrow(c).dst)) {
                    auto hi = hk.find(B.compose(u, b));
                    auto gi = gk.find(B.compose(B.compose(u, v), a));
                    std::size_t hn = hi == hk.end() ? 0 : hi->second.size();
                    std::size_t gn = gi == gk.end() ? 0 : gi->second.size();
                    if (hn != gn) return false;
                    if (hn < 2) continue;
                    std::vector<int> img;
                    for (int h : hi->second) img.push_back(C.compose(h, f));
                    std::sort(img.begin(), img.end());
                    if (std::adjacent_find(img.begin(), img.end()) != img.end()) return false;
                }
            }
        }
        return true;
    };
    std::size_t edges = 0, forward = 0, converse = 0;
    std::string fbad, cbad;
    for (int x = 0; x < C.object_count(); ++x)
        for (int a : actives[x])
            for (int f : C.out(x)) {
                int y = C.arrow(f).dst;
                for (int b : actives[y])
                    for (int v : B.hom(B.arrow(a).dst, B.arrow(b).dst)) {
                        if (B.compose(b, M.proj.arr[f]) != B.compose(v, a)) continue;
                        ++edges;
                        bool inert_img = inert_in_model(f);
                        bool over_inert = inert_edge(M.base->edge[v]);
                        if (!inert_img && !over_inert) continue;
                        bool cc = cocartesian(x, a, f, y, b, v);
                        std::string name = C.arrow(f).name + " / " + M.base->edge[v].to_string();
                        if (inert_img) {
                            ++forward;
                            if (!cc && fbad.empty()) fbad = name;
                        }
                        if (over_inert && cc) {
                            ++converse;
                            if (!inert_img && cbad.empty()) cbad = name;
                        }
                    }
            }
    r.notes.push_back(std::to_string(edges) + " envelope edges");
    r.add("inert image implies q-cocartesian (" + std::to_string(forward) + " edges)", fbad.empty(), fbad);
    r.add("q-cocartesian over inert implies inert image (" + std::to_string(converse) + " edges)", cbad.empty(),
          cbad);
    return r;
}

EnvObject rho_shriek_env(const PointedMap& alpha, int i) {
    int k = preimage_object(alpha, i).k;
    return {k, PointedMap(k, 1, std::vector<int>(k, 1))};
}

EnvObject phi_section(const std::vector<int>& sizes) {
    if (sizes.empty()) throw IndexError("section needs at least one block");
    int total = wedge_size(sizes);
    std::vector<int> v;
    for (std::size_t i = 0; i < sizes.size(); ++i)
        for (int t = 0; t < sizes[i]; ++t) v.push_back(static_cast<int>(i) + 1);
    return {total, PointedMap(total, static_cast<int>(sizes.size()), v)};
}

DirectSum direct_sum_objects(const OperadModel& M, const std::vector<int>& objects) {
    if (objects.empty()) throw IndexError("direct sum of no objects");
    const FinStarCategory& B = *M.base;
    int c = M.label_of(objects[0]);
    std::vector<int> sizes;
    for (int x : objects) {
        if (M.label_of(x) != c) throw HypothesisViolation("summands lie over different base objects");
        sizes.push_back(M.size_of(x));
    }
    int total = wedge_size(sizes);
    if (total > B.K) throw ResourceLimit("direct sum exceeds the truncation");
    std::vector<int> targets;
    for (std::size_t i = 0; i < sizes.size(); ++i)
        targets.push_back(B.arrow_of(TaggedEdge(h_component(sizes, static_cast<int>(i) + 1), c, c)));
    for (int X : M.fiber(total, c)) {
        DirectSum d{X, {}};
        for (std::size_t i = 0; i < objects.size(); ++i) {
            int found = -1;
            for (int f : M.cat->hom(X, objects[i]))
                if (M.proj.arr[f] == targets[i] && is_cocartesian(M.proj, f)) {
                    found = f;
                    break;
                }
            if (found < 0) break;
            d.projections.push_back(found);
        }
        if (d.projections.size() == objects.size()) return d;
    }
    throw ModelDefect("no gluing object exists for the given summands");
}

namespace {

struct MapCategory {
    FiniteCategory cat;
    std::vector<int> size;
    std::vector<PointedMap> arrow_map;
};

/** Objects with given sizes; arrows are active maps accepted by the predicate. */
template <class Pred>
MapCategory build_map_category(const std::vector<int>& sizes, const std::vector<std::string>& names, Pred accept) {
    MapCategory M;
    int n = static_cast<int>(sizes.size());
    for (int x = 0; x < n; ++x) {
        M.cat.add_object(names[x]);
        M.size.push_back(sizes[x]);
        M.arrow_map.push_back(PointedMap::identity(sizes[x]));
    }
    std::map<std::tuple<int, int, std::vector<int>>, int> lookup;
    for (int x = 0; x < n; ++x) lookup[{x, x, PointedMap::identity(sizes[x]).v}] = M.cat.id(x);
    for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y)
            for (const PointedMap& u : all_maps(sizes[x], sizes[y])) {
                if (!is_active(u) || !accept(x, y, u)) continue;
                if (x == y && u == PointedMap::identity(sizes[x])) continue;
                int f = M.cat.add_arrow(x, y, u.to_string());
                M.arrow_map.push_back(u);
                lookup[{x, y, u.v}] = f;
            }
    for (int f = 0; f < M.cat.arrow_count(); ++f) {
        if (M.cat.is_identity(f)) continue;
        for (int g : M.cat.out(M.cat.arrow(f).dst)) {
            if (M.cat.is_identity(g)) continue;
            PointedMap c = compose(M.arrow_map[g], M.arrow_map[f]);
            M.cat.set_composite(g, f, lookup.at({M.cat.arrow(f).src, M.cat.arrow(g).dst, c.v}));
        }
    }
    return M;
}

/** Category whose only arrows out of objects above the truncation are identities;
 *  its nerve is the set of chains whose non-final vertices have size <= T. */
struct TruncatedSide {
    MapCategory C;
    NerveInfo info;
    std::shared_ptr<FiniteSimplicialSet> N;
};

}  // namespace

Report slice_iso_check(int n, const PointedMap& alpha, int D, const SliceIsoOptions& opt) {
    Report r;
    if (alpha.n != n) throw HypothesisViolation("alpha does not land in <n>");
    if (!is_active(alpha)) throw HypothesisViolation("alpha is not active");
    if (D < 0) throw IndexError("dimension bound must be non-negative");
    int k = alpha.m, T = opt.truncation;
    // left: objects of Act_<n> (active maps into <n>) of size <= T, plus alpha
    std::vector<PointedMap> lobj;
    for (int j = 0; j <= T; ++j)
        for (const PointedMap& b : all_maps(j, n))
            if (is_active(b)) lobj.push_back(b);
    int alpha_obj = -1;
    for (std::size_t i = 0; i < lobj.size(); ++i)
        if (lobj[i] == alpha) alpha_obj = static_cast<int>(i);
    if (alpha_obj < 0) {
        alpha_obj = static_cast<int>(lobj.size());
        lobj.push_back(alpha);
    }
    std::vector<int> lsizes;
    std::vector<std::string> lnames;
    for (const auto& b : lobj) {
        lsizes.push_back(b.m);
        lnames.push_back(b.to_string());
    }
    TruncatedSide L;
    L.C = build_map_category(lsizes, lnames, [&](int x, int y, const PointedMap& u) {
        return lsizes[x] <= T && compose(lobj[y], u) == lobj[x];
    });
    L.N = std::make_shared<FiniteSimplicialSet>(nerve(L.C.cat, D + 1, &L.info));
    // right: Fin*_act on sizes <= T, plus <k>
    std::vector<int> rsizes;
    std::vector<std::string> rnames;
    for (int j = 0; j <= T; ++j) rsizes.push_back(j);
    if (k > T) rsizes.push_back(k);
    for (int j : rsizes) rnames.push_back("<" + std::to_string(j) + ">");
    int k_obj = k > T ? T + 1 : k;
    TruncatedSide R;
    R.C = build_map_category(rsizes, rnames, [&](int x, int, const PointedMap&) { return rsizes[x] <= T; });
    R.N = std::make_shared<FiniteSimplicialSet>(nerve(R.C.cat, D + 1, &R.info));

    SliceInfo li, ri;
    FiniteSimplicialSet SL = slice_over(*L.N, Simplex(0, alpha_obj, 0), D, &li);
    auto SR = std::make_shared<FiniteSimplicialSet>(slice_over(*R.N, Simplex(0, k_obj, 0), D, &ri));
    if (opt.perturb) {
        bool done = false;
        for (int p = SL.dim_bound(); p >= 1 && !done; --p)
            for (int g = 0; g < SL.count(p) && !done; ++g) {
                Simplex f = SL.gen_face(p, g, 0);
                if (f.degen != 0) continue;
                for (int h = 0; h < SL.count(p - 1); ++h)
                    if (h != f.gen) {
                        SL.set_gen_face(p, g, 0, Simplex(p - 1, h, 0));
                        done = true;
                        break;
                    }
            }
    }
    auto SLp = std::make_shared<FiniteSimplicialSet>(std::move(SL));

    // ev0 on objects: beta of size j goes to <j>
    std::vector<int> obj_map(lobj.size());
    for (std::size_t x = 0; x < lobj.size(); ++x) {
        int j = lobj[x].m;
        obj_map[x] = j <= T ? j : T + 1;
    }
    SimplicialMap ev(SLp, SR);
    bool bij = true;
    std::string witness;
    for (int p = 0; p <= D; ++p) {
        std::vector<char> hit(SR->count(p), 0);
        for (int g = 0; g < SLp->count(p); ++g) {
            const Simplex& y = li.witness[p][g];
            int start = 0;
            std::vector<int> arrows = simplex_arrows(L.C.cat, *L.N, L.info, y, &start);
            std::vector<int> mapped;
            int cur = obj_map[start];
            for (int a : arrows) {
                int dst = obj_map[L.C.cat.arrow(a).dst];
                int b = -1;
                if (L.C.cat.is_identity(a)) {
                    b = R.C.cat.id(cur);
                } else {
                    for (int c : R.C.cat.hom(cur, dst))
                        if (R.C.arrow_map[c] == L.C.arrow_map[a]) b = c;
                }
                if (b < 0) throw InvalidStructure("ev0 has no image arrow");
                mapped.push_back(b);
                cur = dst;
            }
            Simplex z = chain_simplex(R.C.cat, R.info, obj_map[start], mapped);
            Simplex img = slice_simplex(*R.N, ri, z);
            if (img.degen != 0 || hit[img.gen]) {
                bij = false;
                if (witness.empty()) witness = "not injective at " + SLp->name(p, g);
            } else {
                hit[img.gen] = 1;
            }
            ev.images[p][g] = img;
        }
        for (char h : hit)
            if (!h) {
                bij = false;
                if (witness.empty()) witness = "not surjective at level " + std::to_string(p);
            }
    }
    std::string name = "n=" + std::to_string(n) + " alpha=" + alpha.to_string() + " D=" + std::to_string(D);
    r.add(name + " levelwise bijection", bij, witness);
    auto errs = ev.check(1);
    r.add(name + " commutes with faces", errs.empty(), errs.empty() ? "" : errs.front());
    return r;
}

}  // namespace opkan
