#include "opkan/grothendieck.hpp"

#include <bit>
#include <functional>

#include "opkan/errors.hpp"

namespace opkan {

namespace {

int low_bit(std::uint32_t m) { return std::countr_zero(m); }
int high_bit(std::uint32_t m) { return 31 - std::countl_zero(m); }
std::uint32_t interval(int a, int b) { return ((2u << b) - 1) & ~((1u << a) - 1); }

void note(std::vector<std::string>& out, std::size_t max, std::string msg) {
    if (out.size() < max) out.push_back(std::move(msg));
}

/** Image of a subset under a monotone map. */
std::uint32_t image_mask(std::uint32_t S, const std::vector<int>& theta) {
    std::uint32_t out = 0;
    for (int i = 0; i < static_cast<int>(theta.size()); ++i)
        if (S >> i & 1u) out |= 1u << theta[i];
    return out;
}

std::vector<std::string> check_functor_tables(const FiniteCategory& A, const FiniteCategory& B, const Functor& F,
                                              std::size_t max) {
    Functor G = F;
    G.source = &A;
    G.target = &B;
    return G.check(max);
}

}  // namespace

std::vector<std::string> CategoryDiagram::check(std::size_t max_messages) const {
    std::vector<std::string> out;
    if (static_cast<int>(fibers.size()) != base.object_count()) return {"one fiber per base object required"};
    if (static_cast<int>(transition.size()) != base.arrow_count()) return {"one transition per base arrow required"};
    for (int f = 0; f < base.arrow_count(); ++f) {
        const FiniteCategory& A = fibers[base.arrow(f).src];
        const FiniteCategory& B = fibers[base.arrow(f).dst];
        auto errs = check_functor_tables(A, B, transition[f], max_messages);
        for (auto& e : errs) note(out, max_messages, "F(" + base.arrow(f).name + "): " + e);
        if (!errs.empty()) continue;
        if (base.is_identity(f)) {
            for (int x = 0; x < A.object_count(); ++x)
                if (transition[f].obj[x] != x) note(out, max_messages, "F(id) moves object " + A.object_name(x));
            for (int a = 0; a < A.arrow_count(); ++a)
                if (transition[f].arr[a] != a) note(out, max_messages, "F(id) moves arrow " + A.arrow(a).name);
        }
    }
    if (!out.empty()) return out;
    for (int f = 0; f < base.arrow_count(); ++f)
        for (int g : base.out(base.arrow(f).dst)) {
            int gf = base.compose(g, f);
            const FiniteCategory& A = fibers[base.arrow(f).src];
            for (int x = 0; x < A.object_count(); ++x)
                if (transition[gf].obj[x] != transition[g].obj[transition[f].obj[x]])
                    note(out, max_messages, "F(gf) != F(g)F(f) on object " + A.object_name(x));
            for (int a = 0; a < A.arrow_count(); ++a)
                if (transition[gf].arr[a] != transition[g].arr[transition[f].arr[a]])
                    note(out, max_messages, "F(gf) != F(g)F(f) on arrow " + A.arrow(a).name);
        }
    return out;
}

int GrothendieckTotal::arrow(int src, int f, int g) const {
    auto it = lookup.find((static_cast<std::uint64_t>(src) << 42) | (static_cast<std::uint64_t>(f) << 21) |
                          static_cast<std::uint64_t>(g));
    return it == lookup.end() ? -1 : it->second;
}

GrothendieckTotal grothendieck_construct(const CategoryDiagram& F) {
    auto errs = F.check(1);
    if (!errs.empty()) throw InvalidStructure("diagram is not functorial: " + errs.front());
    GrothendieckTotal G;
    G.diagram = &F;
    const FiniteCategory& B = F.base;
    auto key = [](int src, int f, int g) {
        return (static_cast<std::uint64_t>(src) << 42) | (static_cast<std::uint64_t>(f) << 21) |
               static_cast<std::uint64_t>(g);
    };
    G.object_index.resize(B.object_count());
    for (int c = 0; c < B.object_count(); ++c)
        for (int x = 0; x < F.fibers[c].object_count(); ++x) {
            int o = G.cat.add_object(B.object_name(c) + ":" + F.fibers[c].object_name(x));
            G.object_index[c].push_back(o);
            G.object_tag.push_back({c, x});
            G.arrow_tag.push_back({B.id(c), F.fibers[c].id(x)});
            G.lookup[key(o, B.id(c), F.fibers[c].id(x))] = G.cat.id(o);
        }
    for (int o = 0; o < G.cat.object_count(); ++o) {
        auto [c, x] = G.object_tag[o];
        for (int f : B.out(c)) {
            int c2 = B.arrow(f).dst;
            const FiniteCategory& D = F.fibers[c2];
            int fx = F.transition[f].obj[x];
            for (int g : D.out(fx)) {
                if (B.is_identity(f) && D.is_identity(g)) continue;
                int dst = G.object_index[c2][D.arrow(g).dst];
                int a = G.cat.add_arrow(o, dst, "(" + B.arrow(f).name + "," + D.arrow(g).name + ")");
                G.arrow_tag.push_back({f, g});
                G.lookup[key(o, f, g)] = a;
            }
        }
    }
    for (int a = 0; a < G.cat.arrow_count(); ++a) {
        if (G.cat.is_identity(a)) continue;
        auto [f, g] = G.arrow_tag[a];
        for (int b : G.cat.out(G.cat.arrow(a).dst)) {
            if (G.cat.is_identity(b)) continue;
            auto [f2, g2] = G.arrow_tag[b];
            int c3 = B.arrow(f2).dst;
            int moved = F.transition[f2].arr[g];
            int comp = F.fibers[c3].compose(g2, moved);
            int ab = G.arrow(G.cat.arrow(a).src, B.compose(f2, f), comp);
            if (ab < 0) throw InvalidStructure("composite missing from the Grothendieck construction");
            G.cat.set_composite(b, a, ab);
        }
    }
    G.proj.source = &G.cat;
    G.proj.target = &F.base;
    for (auto [c, x] : G.object_tag) G.proj.obj.push_back(c);
    for (auto [f, g] : G.arrow_tag) G.proj.arr.push_back(f);
    return G;
}

std::vector<std::string> GrothendieckTotal::check_decomposition() const {
    std::vector<std::string> out;
    const CategoryDiagram& F = *diagram;
    for (int o = 0; o < cat.object_count(); ++o)
        for (int o2 = 0; o2 < cat.object_count(); ++o2) {
            auto [c, x] = object_tag[o];
            auto [c2, x2] = object_tag[o2];
            std::size_t expect = 0;
            for (int f : F.base.hom(c, c2)) expect += F.fibers[c2].hom(F.transition[f].obj[x], x2).size();
            std::vector<int> h = cat.hom(o, o2);
            if (h.size() != expect)
                note(out, 20, "hom(" + cat.object_name(o) + "," + cat.object_name(o2) + ") has " +
                                  std::to_string(h.size()) + " arrows, expected " + std::to_string(expect));
            for (int a : h) {
                auto [f, g] = arrow_tag[a];
                const FiniteCategory& D = F.fibers[c2];
                if (F.base.arrow(f).src != c || F.base.arrow(f).dst != c2 ||
                    D.arrow(g).src != F.transition[f].obj[x] || D.arrow(g).dst != x2)
                    note(out, 20, "arrow " + cat.arrow(a).name + " has an ill-typed tag");
            }
        }
    return out;
}

std::vector<std::uint32_t> RigidSimplex::vertices(int i, int j) const {
    if (i > j || i < 0 || j > n) throw IndexError("cube endpoints out of range");
    std::vector<std::uint32_t> out;
    if (i == j) return {1u << i};
    int inner = j - i - 1;
    for (std::uint32_t s = 0; s < (1u << inner); ++s) out.push_back((1u << i) | (1u << j) | (s << (i + 1)));
    return out;
}

std::size_t RigidSimplex::vertex_count(int i, int j) const { return vertices(i, j).size(); }

FiniteSimplicialSet RigidSimplex::hom(int i, int j) const {
    auto vs = vertices(i, j);
    FiniteCategory P;
    for (auto v : vs) {
        std::string name;
        for (int t = 0; t <= n; ++t)
            if (v >> t & 1u) name += std::to_string(t);
        P.add_object(name);
    }
    int k = static_cast<int>(vs.size());
    std::vector<std::vector<int>> a(k, std::vector<int>(k, -1));
    for (int x = 0; x < k; ++x) a[x][x] = P.id(x);
    for (int x = 0; x < k; ++x)
        for (int y = 0; y < k; ++y)
            if (x != y && (vs[x] & vs[y]) == vs[x]) a[x][y] = P.add_arrow(x, y, P.object_name(x) + "<" + P.object_name(y));
    for (int x = 0; x < k; ++x)
        for (int y = 0; y < k; ++y)
            for (int z = 0; z < k; ++z)
                if (x != y && y != z && a[x][y] >= 0 && a[y][z] >= 0) P.set_composite(a[y][z], a[x][y], a[x][z]);
    return nerve(P, std::max(j - i - 1, 0));
}

std::vector<std::string> check_coherent(const FiniteCategory& C, const CoherentFunctor& phi, int n) {
    std::vector<std::string> out;
    std::uint32_t D = phi.domain;
    if (D == 0 || high_bit(D) > n) return {"domain out of range"};
    if (static_cast<int>(phi.obj.size()) != n + 1 || phi.arr.size() != (std::size_t{1} << (n + 1)))
        return {"tables have the wrong size"};
    for (int i = 0; i <= n; ++i)
        if ((D >> i & 1u) && (phi.obj[i] < 0 || phi.obj[i] >= C.object_count()))
            note(out, 20, "object of " + std::to_string(i) + " out of range");
    if (!out.empty()) return out;
    for (std::uint32_t S = D;; S = (S - 1) & D) {
        if (S == 0) break;
        int i = low_bit(S), j = high_bit(S), a = phi.arr[S];
        if (a < 0 || a >= C.arrow_count()) {
            note(out, 20, "arrow missing for a subset");
            continue;
        }
        if (C.arrow(a).src != phi.obj[i] || C.arrow(a).dst != phi.obj[j]) note(out, 20, "arrow has wrong endpoints");
        if (i == j && !C.is_identity(a)) note(out, 20, "singleton does not go to an identity");
    }
    if (!out.empty()) return out;
    for (std::uint32_t S = D;; S = (S - 1) & D) {
        if (S == 0) break;
        int i = low_bit(S), j = high_bit(S);
        for (int k = i + 1; k < j; ++k) {
            if (!(D >> k & 1u)) continue;
            if (S >> k & 1u) {
                std::uint32_t lo = S & interval(i, k), hi = S & interval(k, j);
                if (C.compose(phi.arr[hi], phi.arr[lo]) != phi.arr[S]) note(out, 20, "union is not sent to composite");
            } else if (phi.arr[S | (1u << k)] != phi.arr[S]) {
                note(out, 20, "cube edge is not sent to a degenerate edge");
            }
        }
    }
    return out;
}

int chain_composite(const FiniteCategory& C, const RelSimplex& s, int i, int j) {
    int a = C.id(s.objects[i]);
    for (int t = i + 1; t <= j; ++t) a = C.compose(s.arrows[t - 1], a);
    return a;
}

std::vector<std::string> check_rel_simplex(const CategoryDiagram& F, const RelSimplex& s, std::size_t max_messages) {
    std::vector<std::string> out;
    int n = s.n;
    const FiniteCategory& B = F.base;
    if (static_cast<int>(s.objects.size()) != n + 1 || static_cast<int>(s.arrows.size()) != n ||
        s.phi.size() != (std::size_t{1} << (n + 1)))
        return {"relative simplex has the wrong shape"};
    for (int i = 1; i <= n; ++i)
        if (B.arrow(s.arrows[i - 1]).src != s.objects[i - 1] || B.arrow(s.arrows[i - 1]).dst != s.objects[i])
            return {"base chain is not composable"};
    std::uint32_t full = interval(0, n);
    for (std::uint32_t I = 1; I <= full; ++I) {
        if (s.phi[I].domain != I) note(out, max_messages, "phi_I has the wrong domain");
        for (auto& e : check_coherent(F.fibers[s.objects[high_bit(I)]], s.phi[I], n)) note(out, max_messages, e);
    }
    if (!out.empty()) return out;
    for (std::uint32_t J = 1; J <= full; ++J)
        for (std::uint32_t I = (J - 1) & J; I != 0; I = (I - 1) & J) {
            int f = chain_composite(B, s, high_bit(I), high_bit(J));
            const Functor& T = F.transition[f];
            for (int i = 0; i <= n; ++i)
                if ((I >> i & 1u) && T.obj[s.phi[I].obj[i]] != s.phi[J].obj[i])
                    note(out, max_messages, "compatibility fails on objects");
            for (std::uint32_t S = I; S != 0; S = (S - 1) & I)
                if (T.arr[s.phi[I].arr[S]] != s.phi[J].arr[S]) note(out, max_messages, "compatibility fails on arrows");
        }
    return out;
}

std::vector<RelSimplex> relative_nerve_simplices(const CategoryDiagram& F, int n) {
    if (n < 0 || n > 8) throw IndexError("relative nerve dimension out of range");
    std::vector<RelSimplex> result;
    const FiniteCategory& B = F.base;
    std::size_t table = std::size_t{1} << (n + 1);
    RelSimplex cur;
    cur.n = n;
    cur.objects.assign(n + 1, -1);
    cur.arrows.assign(n, -1);
    // prefix[j] is phi on the interval [0..j]
    std::vector<CoherentFunctor> prefix(n + 1);

    auto finish = [&]() {
        RelSimplex s = cur;
        s.phi.assign(table, CoherentFunctor{});
        for (std::uint32_t I = 1; I < table; ++I) {
            const CoherentFunctor& P = prefix[high_bit(I)];
            CoherentFunctor& Q = s.phi[I];
            Q.domain = I;
            Q.obj.assign(n + 1, -1);
            Q.arr.assign(table, -1);
            for (int i = 0; i <= n; ++i)
                if (I >> i & 1u) Q.obj[i] = P.obj[i];
            for (std::uint32_t S = I; S != 0; S = (S - 1) & I) Q.arr[S] = P.arr[S];
        }
        auto errs = check_rel_simplex(F, s, 1);
        if (!errs.empty()) throw InvalidStructure("restricted family is not compatible: " + errs.front());
        result.push_back(std::move(s));
        guard_generators(result.size(), "relative nerve");
    };
    // assigns phi on [0..j] over the fiber at C_j
    std::function<void(int)> fill = [&](int j) {
        if (j > n) {
            finish();
            return;
        }
        const FiniteCategory& D = F.fibers[cur.objects[j]];
        CoherentFunctor& P = prefix[j];
        P.domain = interval(0, j);
        P.obj.assign(n + 1, -1);
        P.arr.assign(table, -1);
        if (j > 0) {
            const Functor& T = F.transition[cur.arrows[j - 1]];
            const CoherentFunctor& Q = prefix[j - 1];
            for (int i = 0; i < j; ++i) P.obj[i] = T.obj[Q.obj[i]];
            for (std::uint32_t S = 1; S < (1u << j); ++S) P.arr[S] = T.arr[Q.arr[S]];
        }
        std::vector<std::uint32_t> open;
        for (std::uint32_t S = 1u << j; S < (2u << j); ++S) open.push_back(S);
        std::function<void(std::size_t)> choose = [&](std::size_t t) {
            if (t == open.size()) {
                fill(j + 1);
                return;
            }
            std::uint32_t S = open[t];
            int i = low_bit(S);
            std::vector<int> cand;
            if (i == j)
                cand.push_back(D.id(P.obj[j]));
            else
                cand = D.hom(P.obj[i], P.obj[j]);
            for (int a : cand) {
                bool ok = true;
                for (int k = i + 1; k < j && ok; ++k) {
                    if (S >> k & 1u) {
                        ok = D.compose(P.arr[S & interval(k, j)], P.arr[S & interval(i, k)]) == a;
                    } else {
                        ok = P.arr[S | (1u << k)] < 0 || P.arr[S | (1u << k)] == a;
                    }
                    if (ok && (S >> k & 1u)) ok = P.arr[S & ~(1u << k)] == a;
                }
                if (!ok) continue;
                P.arr[S] = a;
                choose(t + 1);
                P.arr[S] = -1;
            }
        };
        for (int x = 0; x < D.object_count(); ++x) {
            P.obj[j] = x;
            choose(0);
        }
        P.obj[j] = -1;
    };
    std::function<void(int)> chain = [&](int i) {
        if (i > n) {
            fill(0);
            return;
        }
        if (i == 0) {
            for (int c = 0; c < B.object_count(); ++c) {
                cur.objects[0] = c;
                chain(1);
            }
            return;
        }
        for (int f : B.out(cur.objects[i - 1])) {
            cur.arrows[i - 1] = f;
            cur.objects[i] = B.arrow(f).dst;
            chain(i + 1);
        }
    };
    chain(0);
    return result;
}

std::vector<TotalSimplex> total_simplices(const GrothendieckTotal& G, int n) {
    NerveInfo info;
    auto N = nerve(G.cat, n, &info);
    std::vector<TotalSimplex> out;
    std::size_t table = std::size_t{1} << (n + 1);
    N.for_each_simplex(n, [&](const Simplex& x) {
        int start = 0;
        std::vector<int> arrows = simplex_arrows(G.cat, N, info, x, &start);
        TotalSimplex t;
        t.n = n;
        t.phi.domain = interval(0, n);
        t.phi.obj.assign(n + 1, -1);
        t.phi.arr.assign(table, -1);
        t.phi.obj[0] = start;
        for (int i = 1; i <= n; ++i) t.phi.obj[i] = G.cat.arrow(arrows[i - 1]).dst;
        for (std::uint32_t S = 1; S < table; ++S) {
            int i = low_bit(S), j = high_bit(S);
            int a = G.cat.id(t.phi.obj[i]);
            for (int k = i + 1; k <= j; ++k) a = G.cat.compose(arrows[k - 1], a);
            t.phi.arr[S] = a;
        }
        out.push_back(std::move(t));
    });
    return out;
}

TotalSimplex phi_forward(const GrothendieckTotal& G, const RelSimplex& s) {
    const CategoryDiagram& F = *G.diagram;
    int n = s.n;
    std::size_t table = std::size_t{1} << (n + 1);
    TotalSimplex t;
    t.n = n;
    t.phi.domain = interval(0, n);
    t.phi.obj.assign(n + 1, -1);
    t.phi.arr.assign(table, -1);
    for (int i = 0; i <= n; ++i) t.phi.obj[i] = G.object(s.objects[i], s.phi[interval(0, i)].obj[i]);
    for (std::uint32_t S = 1; S < table; ++S) {
        int i = low_bit(S), j = high_bit(S);
        const CoherentFunctor& Pj = s.phi[interval(0, j)];
        int f = chain_composite(F.base, s, i, j);
        int moved = F.transition[f].obj[s.phi[interval(0, i)].obj[i]];
        if (moved != Pj.obj[i]) throw InvalidStructure("phi_[j](i) differs from F(f_ij)(phi_[i](i))");
        int a = G.arrow(t.phi.obj[i], f, Pj.arr[S]);
        if (a < 0) throw InvalidStructure("no arrow of the total category for a subset");
        t.phi.arr[S] = a;
    }
    return t;
}

RelSimplex phi_inverse(const GrothendieckTotal& G, const TotalSimplex& t) {
    const CategoryDiagram& F = *G.diagram;
    const FiniteCategory& B = F.base;
    int n = t.n;
    std::size_t table = std::size_t{1} << (n + 1);
    RelSimplex s;
    s.n = n;
    for (int i = 0; i <= n; ++i) s.objects.push_back(G.object_tag[t.phi.obj[i]].first);
    for (int i = 1; i <= n; ++i) s.arrows.push_back(G.arrow_tag[t.phi.arr[(1u << (i - 1)) | (1u << i)]].first);
    s.phi.assign(table, CoherentFunctor{});
    auto blank = [&](std::uint32_t I) {
        CoherentFunctor Q;
        Q.domain = I;
        Q.obj.assign(n + 1, -1);
        Q.arr.assign(table, -1);
        return Q;
    };
    // subintervals first
    for (int a = 0; a <= n; ++a)
        for (int b = a; b <= n; ++b) {
            std::uint32_t I = interval(a, b);
            CoherentFunctor Q = blank(I);
            for (int i = a; i <= b; ++i)
                Q.obj[i] = F.transition[chain_composite(B, s, i, b)].obj[G.object_tag[t.phi.obj[i]].second];
            for (std::uint32_t S = I; S != 0; S = (S - 1) & I) {
                int j = high_bit(S);
                Q.arr[S] = F.transition[chain_composite(B, s, j, b)].arr[G.arrow_tag[t.phi.arr[S]].second];
            }
            s.phi[I] = std::move(Q);
        }
    // other subsets restrict phi_[0..max J]
    for (std::uint32_t J = 1; J < table; ++J) {
        if (J == interval(low_bit(J), high_bit(J))) continue;
        const CoherentFunctor& P = s.phi[interval(0, high_bit(J))];
        CoherentFunctor Q = blank(J);
        for (int i = 0; i <= n; ++i)
            if (J >> i & 1u) Q.obj[i] = P.obj[i];
        for (std::uint32_t S = J; S != 0; S = (S - 1) & J) Q.arr[S] = P.arr[S];
        s.phi[J] = std::move(Q);
    }
    return s;
}

RelSimplex pull_back(const CategoryDiagram& F, const RelSimplex& s, const std::vector<int>& theta) {
    int m = static_cast<int>(theta.size()) - 1;
    std::size_t table = std::size_t{1} << (m + 1);
    RelSimplex r;
    r.n = m;
    for (int i = 0; i <= m; ++i) r.objects.push_back(s.objects[theta[i]]);
    for (int i = 1; i <= m; ++i) r.arrows.push_back(chain_composite(F.base, s, theta[i - 1], theta[i]));
    r.phi.assign(table, CoherentFunctor{});
    for (std::uint32_t I = 1; I < table; ++I) {
        const CoherentFunctor& P = s.phi[image_mask(I, theta)];
        CoherentFunctor& Q = r.phi[I];
        Q.domain = I;
        Q.obj.assign(m + 1, -1);
        Q.arr.assign(table, -1);
        for (int i = 0; i <= m; ++i)
            if (I >> i & 1u) Q.obj[i] = P.obj[theta[i]];
        for (std::uint32_t S = I; S != 0; S = (S - 1) & I) Q.arr[S] = P.arr[image_mask(S, theta)];
    }
    return r;
}

TotalSimplex pull_back(const GrothendieckTotal&, const TotalSimplex& t, const std::vector<int>& theta) {
    int m = static_cast<int>(theta.size()) - 1;
    std::size_t table = std::size_t{1} << (m + 1);
    TotalSimplex r;
    r.n = m;
    r.phi.domain = interval(0, m);
    r.phi.obj.assign(m + 1, -1);
    r.phi.arr.assign(table, -1);
    for (int i = 0; i <= m; ++i) r.phi.obj[i] = t.phi.obj[theta[i]];
    for (std::uint32_t S = 1; S < table; ++S) r.phi.arr[S] = t.phi.arr[image_mask(S, theta)];
    return r;
}

namespace {

std::vector<std::vector<int>> structure_maps(int n) {
    std::vector<std::vector<int>> out;
    for (int k = 0; k <= n && n > 0; ++k) {
        std::vector<int> d;
        for (int i = 0; i < n; ++i) d.push_back(i < k ? i : i + 1);
        out.push_back(d);
    }
    for (int k = 0; k <= n; ++k) {
        std::vector<int> s;
        for (int i = 0; i <= n + 1; ++i) s.push_back(i <= k ? i : i - 1);
        out.push_back(s);
    }
    return out;
}

}  // namespace

Report phi_roundtrip_check(const CategoryDiagram& F, int max_dim) {
    Report r;
    r.suite = "nerve-roundtrip " + F.name;
    GrothendieckTotal G = grothendieck_construct(F);
    auto derrs = G.check_decomposition();
    r.add(F.name + " hom decomposition", derrs.empty(), derrs.empty() ? "" : derrs.front());
    for (int n = 0; n <= max_dim; ++n) {
        std::string lvl = F.name + " n=" + std::to_string(n);
        auto R = relative_nerve_simplices(F, n);
        auto T = total_simplices(G, n);
        r.add(lvl + " simplex counts agree", R.size() == T.size(),
              std::to_string(R.size()) + " vs " + std::to_string(T.size()));
        std::size_t bad_fwd = 0, bad_proj = 0, bad_ops = 0, bad_bwd = 0;
        auto maps = structure_maps(n);
        for (const auto& s : R) {
            TotalSimplex t = phi_forward(G, s);
            if (!(phi_inverse(G, t) == s)) ++bad_fwd;
            bool proj = true;
            for (int i = 0; i <= n; ++i) proj = proj && G.object_tag[t.phi.obj[i]].first == s.objects[i];
            for (int i = 1; i <= n; ++i)
                proj = proj && G.arrow_tag[t.phi.arr[(1u << (i - 1)) | (1u << i)]].first == s.arrows[i - 1];
            if (!proj) ++bad_proj;
            for (const auto& theta : maps) {
                RelSimplex ps = pull_back(F, s, theta);
                if (!check_rel_simplex(F, ps, 1).empty() || !(phi_forward(G, ps) == pull_back(G, t, theta))) {
                    ++bad_ops;
                    break;
                }
            }
        }
        for (const auto& t : T) {
            RelSimplex s = phi_inverse(G, t);
            if (!check_rel_simplex(F, s, 1).empty() || !(phi_forward(G, s) == t)) ++bad_bwd;
        }
        r.add(lvl + " inverse after forward is the identity", bad_fwd == 0, std::to_string(bad_fwd) + " mismatches");
        r.add(lvl + " forward after inverse is the identity", bad_bwd == 0, std::to_string(bad_bwd) + " mismatches");
        r.add(lvl + " forward commutes with the projection", bad_proj == 0, std::to_string(bad_proj) + " mismatches");
        r.add(lvl + " forward commutes with faces and degeneracies", bad_ops == 0,
              std::to_string(bad_ops) + " mismatches");
    }
    return r;
}

std::vector<std::string> check_diagram_map(const DiagramMap& eta) {
    std::vector<std::string> out;
    const CategoryDiagram& A = *eta.source;
    const CategoryDiagram& B = *eta.target;
    if (A.base.object_count() != B.base.object_count() || A.base.arrow_count() != B.base.arrow_count())
        return {"diagrams live over different bases"};
    if (static_cast<int>(eta.component.size()) != A.base.object_count()) return {"one component per object"};
    for (int c = 0; c < A.base.object_count(); ++c)
        for (auto& e : check_functor_tables(A.fibers[c], B.fibers[c], eta.component[c], 20))
            note(out, 20, "component " + A.base.object_name(c) + ": " + e);
    if (!out.empty()) return out;
    for (int f = 0; f < A.base.arrow_count(); ++f) {
        int c = A.base.arrow(f).src, c2 = A.base.arrow(f).dst;
        const FiniteCategory& X = A.fibers[c];
        for (int x = 0; x < X.object_count(); ++x)
            if (eta.component[c2].obj[A.transition[f].obj[x]] != B.transition[f].obj[eta.component[c].obj[x]])
                note(out, 20, "naturality fails at object " + X.object_name(x));
        for (int a = 0; a < X.arrow_count(); ++a)
            if (eta.component[c2].arr[A.transition[f].arr[a]] != B.transition[f].arr[eta.component[c].arr[a]])
                note(out, 20, "naturality fails at arrow " + X.arrow(a).name);
    }
    return out;
}

Report phi_naturality_check(const DiagramMap& eta, int max_dim) {
    Report r;
    auto errs = check_diagram_map(eta);
    r.add("transformation is natural", errs.empty(), errs.empty() ? "" : errs.front());
    if (!errs.empty()) return r;
    const CategoryDiagram& A = *eta.source;
    const CategoryDiagram& B = *eta.target;
    GrothendieckTotal GA = grothendieck_construct(A);
    GrothendieckTotal GB = grothendieck_construct(B);
    for (int n = 0; n <= max_dim; ++n) {
        std::size_t bad = 0, total = 0;
        for (const auto& s : relative_nerve_simplices(A, n)) {
            ++total;
            RelSimplex s2 = s;
            for (std::uint32_t I = 1; I < s.phi.size(); ++I) {
                const Functor& H = eta.component[s.objects[high_bit(I)]];
                for (int i = 0; i <= n; ++i)
                    if (I >> i & 1u) s2.phi[I].obj[i] = H.obj[s.phi[I].obj[i]];
                for (std::uint32_t S = I; S != 0; S = (S - 1) & I) s2.phi[I].arr[S] = H.arr[s.phi[I].arr[S]];
            }
            TotalSimplex left = phi_forward(GB, s2);
            TotalSimplex t = phi_forward(GA, s);
            TotalSimplex right = t;
            for (int i = 0; i <= n; ++i) {
                auto [c, x] = GA.object_tag[t.phi.obj[i]];
                right.phi.obj[i] = GB.object(c, eta.component[c].obj[x]);
            }
            for (std::uint32_t S = 1; S < t.phi.arr.size(); ++S) {
                auto [f, g] = GA.arrow_tag[t.phi.arr[S]];
                int c2 = A.base.arrow(f).dst;
                right.phi.arr[S] = GB.arrow(right.phi.obj[low_bit(S)], f, eta.component[c2].arr[g]);
            }
            if (!(left == right)) ++bad;
        }
        r.add("naturality square at n=" + std::to_string(n) + " (" + std::to_string(total) + " simplices)", bad == 0,
              std::to_string(bad) + " mismatches");
    }
    return r;
}

bool is_cocartesian_gr(const GrothendieckTotal& G, int edge) {
    auto [f, g] = G.arrow_tag[edge];
    return is_isomorphism(G.diagram->fibers[G.diagram->base.arrow(f).dst], g);
}

Report cocartesian_gr_check(const GrothendieckTotal& G) {
    Report r;
    const CategoryDiagram& F = *G.diagram;
    std::size_t agree = 0, cocart = 0;
    std::string witness;
    for (int e = 0; e < G.cat.arrow_count(); ++e) {
        bool a = is_cocartesian_gr(G, e);
        bool b = is_cocartesian(G.proj, e);
        if (a == b)
            ++agree;
        else if (witness.empty())
            witness = G.cat.arrow(e).name + (a ? " iso but not cocartesian" : " cocartesian but not iso");
        if (a) ++cocart;
    }
    r.add(F.name + " criterion agrees with the universal property on " + std::to_string(G.cat.arrow_count()) +
              " edges (" + std::to_string(cocart) + " cocartesian)",
          agree == static_cast<std::size_t>(G.cat.arrow_count()), witness);
    std::string missing;
    for (int o = 0; o < G.cat.object_count(); ++o) {
        auto [c, x] = G.object_tag[o];
        for (int f : F.base.out(c)) {
            bool found = false;
            for (int e : G.cat.out(o))
                if (G.arrow_tag[e].first == f && is_cocartesian_gr(G, e) && is_cocartesian(G.proj, e)) found = true;
            if (!found && missing.empty()) missing = G.cat.object_name(o) + " over " + F.base.arrow(f).name;
        }
    }
    r.add(F.name + " every base arrow has a cocartesian lift at every object", missing.empty(), missing);
    return r;
}

Report induced_functor_check(const GrothendieckTotal& G, int f) {
    Report r;
    const CategoryDiagram& F = *G.diagram;
    int c = F.base.arrow(f).src, c2 = F.base.arrow(f).dst;
    const FiniteCategory& X = F.fibers[c];
    const FiniteCategory& Y = F.fibers[c2];
    const Functor& T = F.transition[f];
    std::string label = F.name + " f=" + F.base.arrow(f).name;
    std::vector<int> lift(X.object_count(), -1);
    bool ok = true;
    std::string witness;
    for (int x = 0; x < X.object_count(); ++x) {
        lift[x] = G.arrow(G.object(c, x), f, Y.id(T.obj[x]));
        if (lift[x] < 0 || !is_cocartesian(G.proj, lift[x]) || !is_cocartesian_gr(G, lift[x]) ||
            G.cat.arrow(lift[x]).dst != G.object(c2, T.obj[x])) {
            ok = false;
            if (witness.empty()) witness = "lift at " + X.object_name(x);
        }
    }
    r.add(label + " identities id_{Ff X} give cocartesian lifts ending at Ff X", ok, witness);
    if (!ok) return r;
    bool nat = true;
    for (int a = 0; a < X.arrow_count(); ++a) {
        int x = X.arrow(a).src, x2 = X.arrow(a).dst;
        int inside = G.arrow(G.object(c, x), F.base.id(c), a);
        int pushed = G.arrow(G.object(c2, T.obj[x]), F.base.id(c2), T.arr[a]);
        if (inside < 0 || pushed < 0 || G.cat.compose(lift[x2], inside) != G.cat.compose(pushed, lift[x])) {
            nat = false;
            if (witness.empty()) witness = "naturality at " + X.arrow(a).name;
        }
    }
    r.add(label + " endpoint functor equals F(f) on arrows", nat, witness);
    return r;
}

FiniteCategory terminal_category() {
    FiniteCategory C;
    C.add_object("*");
    return C;
}

FiniteCategory arrow_category() {
    FiniteCategory C;
    C.add_object("a");
    C.add_object("b");
    C.add_arrow(0, 1, "a->b");
    return C;
}

FiniteCategory walking_iso() {
    FiniteCategory C;
    C.add_object("a");
    C.add_object("b");
    int u = C.add_arrow(0, 1, "u");
    int v = C.add_arrow(1, 0, "v");
    C.set_composite(v, u, C.id(0));
    C.set_composite(u, v, C.id(1));
    return C;
}

FiniteCategory cyclic_group_category(int order) {
    FiniteCategory C;
    C.add_object("*");
    std::vector<int> g(order);
    g[0] = C.id(0);
    for (int i = 1; i < order; ++i) g[i] = C.add_arrow(0, 0, "g" + std::to_string(i));
    for (int i = 1; i < order; ++i)
        for (int j = 1; j < order; ++j) C.set_composite(g[j], g[i], g[(i + j) % order]);
    return C;
}

namespace {

Functor identity_tables(const FiniteCategory& C) {
    Functor F;
    for (int x = 0; x < C.object_count(); ++x) F.obj.push_back(x);
    for (int a = 0; a < C.arrow_count(); ++a) F.arr.push_back(a);
    return F;
}

/** From the terminal category, picking object x. */
Functor point_at(const FiniteCategory& C, int x) {
    Functor F;
    F.obj = {x};
    F.arr = {C.id(x)};
    return F;
}

/** Base [1] with F(0) = terminal and F(0 -> 1) picking x in D. */
CategoryDiagram over_interval(const FiniteCategory& D, int x, const std::string& name) {
    CategoryDiagram F;
    F.name = name;
    F.base = linear_order(1);
    F.fibers = {terminal_category(), D};
    F.transition.resize(F.base.arrow_count());
    for (int a = 0; a < F.base.arrow_count(); ++a) {
        if (F.base.is_identity(a))
            F.transition[a] = identity_tables(F.fibers[F.base.arrow(a).src]);
        else
            F.transition[a] = point_at(D, x);
    }
    return F;
}

}  // namespace

CategoryDiagram constant_diagram(const FiniteCategory& C, const FiniteCategory& D, const std::string& name) {
    CategoryDiagram F;
    F.name = name;
    F.base = C;
    F.fibers.assign(C.object_count(), D);
    F.transition.assign(C.arrow_count(), identity_tables(D));
    return F;
}

CategoryDiagram arrow_example() { return over_interval(arrow_category(), 0, "arrow"); }
CategoryDiagram arrow_example_at_target() { return over_interval(arrow_category(), 1, "arrow-at-b"); }
CategoryDiagram iso_example() { return over_interval(walking_iso(), 0, "iso"); }
CategoryDiagram group_example() { return over_interval(cyclic_group_category(2), 0, "Z/2"); }

CategoryDiagram poset_diagram() {
    CategoryDiagram F;
    F.name = "poset";
    F.base = linear_order(2);
    for (int i = 0; i <= 2; ++i) F.fibers.push_back(linear_order(i));
    F.transition.resize(F.base.arrow_count());
    for (int a = 0; a < F.base.arrow_count(); ++a) {
        const FiniteCategory& X = F.fibers[F.base.arrow(a).src];
        const FiniteCategory& Y = F.fibers[F.base.arrow(a).dst];
        Functor T;
        for (int x = 0; x < X.object_count(); ++x) T.obj.push_back(x);
        for (int e = 0; e < X.arrow_count(); ++e) T.arr.push_back(Y.hom(X.arrow(e).src, X.arrow(e).dst).at(0));
        F.transition[a] = T;
    }
    return F;
}

DiagramMap collapse_transformation(const CategoryDiagram& source, const CategoryDiagram& target) {
    DiagramMap eta;
    eta.source = &source;
    eta.target = &target;
    eta.component.push_back(identity_tables(source.fibers[0]));
    const FiniteCategory& D = target.fibers[1];
    Functor H;
    H.obj = {1, 1};
    H.arr.assign(source.fibers[1].arrow_count(), D.id(1));
    eta.component.push_back(H);
    return eta;
}

}  // namespace opkan
