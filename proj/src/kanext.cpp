#include "opkan/kanext.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

#include "opkan/errors.hpp"

namespace opkan {

OperadSimplex OperadSimplex::vertex(int k, int e) {
    OperadSimplex s;
    s.m = 0;
    s.sizes = {k};
    s.labels = {e};
    return s;
}

OperadSimplex OperadSimplex::then(const PointedMap& a, int e) const {
    if (a.m != sizes.back()) throw InvalidStructure("edge source does not match the last vertex");
    if (e < labels.back()) throw InvalidStructure("labels must be non-decreasing");
    OperadSimplex s = *this;
    s.m += 1;
    s.sizes.push_back(a.n);
    s.labels.push_back(e);
    s.edges.push_back(a);
    return s;
}

TaggedEdge OperadSimplex::edge(int i) const {
    if (i < 1 || i > m) throw IndexError("edge index out of range");
    return TaggedEdge(edges[i - 1], labels[i - 1], labels[i]);
}

bool OperadSimplex::nondegenerate() const {
    for (int i = 1; i <= m; ++i)
        if (edge(i).degenerate()) return false;
    return true;
}

bool OperadSimplex::complete(int n) const {
    std::vector<char> seen(static_cast<std::size_t>(n + 1), 0);
    for (int e : labels) {
        if (e < 1 || e > n) return false;
        seen[e] = 1;
    }
    for (int e = 1; e <= n; ++e)
        if (!seen[e]) return false;
    return true;
}

OperadSimplex OperadSimplex::face(int i) const {
    if (m < 1 || i < 0 || i > m) throw IndexError("face index out of range");
    OperadSimplex s;
    s.m = m - 1;
    for (int t = 0; t <= m; ++t) {
        if (t == i) continue;
        s.sizes.push_back(sizes[t]);
        s.labels.push_back(labels[t]);
    }
    for (int t = 1; t <= m; ++t) {
        if (t == i || (t == 1 && i == 0)) continue;
        if (t == i + 1 && i > 0) {
            s.edges.push_back(compose(edges[t - 1], edges[t - 2]));
        } else {
            s.edges.push_back(edges[t - 1]);
        }
    }
    return s;
}

OperadSimplex OperadSimplex::slice(int lo, int hi) const {
    if (lo < 0 || hi > m || lo > hi) throw IndexError("vertex range out of bounds");
    OperadSimplex s = vertex(sizes[lo], labels[lo]);
    for (int t = lo + 1; t <= hi; ++t) s = s.then(edges[t - 1], labels[t]);
    return s;
}

std::vector<int> OperadSimplex::encode() const {
    std::vector<int> out{m};
    for (int t = 0; t <= m; ++t) {
        out.push_back(sizes[t]);
        out.push_back(labels[t]);
    }
    for (const auto& a : edges) out.insert(out.end(), a.v.begin(), a.v.end());
    return out;
}

std::string OperadSimplex::to_string() const {
    std::ostringstream os;
    os << "(<" << sizes[0] << ">," << labels[0] << ")";
    for (int t = 1; t <= m; ++t)
        os << " -" << edges[t - 1].to_string() << "-> (<" << sizes[t] << ">," << labels[t] << ")";
    return os.str();
}

namespace {

struct MapTable {
    int K;
    std::vector<std::vector<std::vector<PointedMap>>> maps;  // [a][b]
    explicit MapTable(int K_) : K(K_) {
        maps.assign(static_cast<std::size_t>(K + 1), std::vector<std::vector<PointedMap>>(K + 1));
        for (int a = 0; a <= K; ++a)
            for (int b = 0; b <= K; ++b) maps[a][b] = all_maps(a, b);
    }
};

void extend(const MapTable& T, int n, int m, OperadSimplex& cur,
            const std::function<void(const OperadSimplex&)>& f) {
    int e = cur.labels.back();
    if (cur.m == m) {
        if (e == n) f(cur);
        return;
    }
    int left = m - cur.m;
    int a = cur.sizes.back();
    for (int b = 0; b <= T.K; ++b) {
        for (const auto& alpha : T.maps[a][b]) {
            bool ident = a == b && alpha == PointedMap::identity(a);
            for (int e1 = e; e1 <= std::min(n, e + 1); ++e1) {
                if (ident && e1 == e) continue;
                if (n - e1 > left - 1) continue;
                cur.m += 1;
                cur.sizes.push_back(b);
                cur.labels.push_back(e1);
                cur.edges.push_back(alpha);
                extend(T, n, m, cur, f);
                cur.m -= 1;
                cur.sizes.pop_back();
                cur.labels.pop_back();
                cur.edges.pop_back();
            }
        }
    }
}

bool active_edge(const TaggedEdge& e) { return is_active(e.map); }
bool strongly_inert_edge(const TaggedEdge& e) {
    return is_inert(e.map) && has_ordered_section(e.map) && e.e0 == e.e1;
}

}  // namespace

void for_each_complete(int K, int n, int m, const std::function<void(const OperadSimplex&)>& f) {
    if (K < 0 || n < 1 || m < 0) throw IndexError("enumeration parameters out of range");
    if (m < n - 1) return;
    MapTable T(K);
    for (int k0 = 0; k0 <= K; ++k0) {
        OperadSimplex cur = OperadSimplex::vertex(k0, 1);
        extend(T, n, m, cur, f);
    }
}

std::vector<OperadSimplex> enumerate_complete(int K, int n, int m) {
    std::vector<OperadSimplex> out;
    for_each_complete(K, n, m, [&](const OperadSimplex& s) {
        out.push_back(s);
        guard_generators(out.size(), "complete simplex enumeration");
    });
    return out;
}

const char* to_string(Group g) {
    switch (g) {
        case Group::G1: return "G1";
        case Group::G2: return "G2";
        case Group::G2p: return "G2'";
        case Group::G3: return "G3";
        case Group::G3p: return "G3'";
    }
    return "?";
}

GroupTag classify_group(const OperadSimplex& s, int n) {
    if (!s.nondegenerate()) throw HypothesisViolation("simplex is degenerate: " + s.to_string());
    if (!s.complete(n)) throw HypothesisViolation("simplex is incomplete: " + s.to_string());
    std::vector<EdgeKind> kind(static_cast<std::size_t>(s.m + 1), EdgeKind::Active);
    for (int i = 1; i <= s.m; ++i) kind[i] = edge_kind(s.edge(i));
    int k = s.m;
    while (k > 0 && kind[k] == EdgeKind::StronglyInert) --k;
    int j = k;
    while (j > 0 && kind[j] == EdgeKind::Active) --j;
    GroupTag t{Group::G1, j, k};
    bool closed = s.closed();
    if (j == 0) {
        if (!closed) t.group = Group::G2p;
        else t.group = k == s.m ? Group::G1 : Group::G2;
    } else {
        t.group = kind[j] == EdgeKind::StronglyInert ? Group::G3 : Group::G3p;
    }
    return t;
}

OperadSimplex associate(const OperadSimplex& s, int n) {
    GroupTag t = classify_group(s, n);
    if (t.group == Group::G2) return s.slice(0, s.m - 1);
    if (t.group == Group::G3) return s.face(t.j);
    throw HypothesisViolation(std::string("associates are defined on G2 and G3, not ") + to_string(t.group));
}

std::vector<OperadSimplex> associates_of(const OperadSimplex& s, int K, int n) {
    for (int k : s.sizes)
        if (k > K) throw IndexError("simplex lies outside the truncation");
    MapTable T(K);
    std::set<std::vector<int>> seen;
    std::vector<OperadSimplex> out;
    auto consider = [&](const OperadSimplex& c) {
        if (!c.nondegenerate() || !c.complete(n)) return;
        GroupTag t = classify_group(c, n);
        if (t.group != Group::G2 && t.group != Group::G3) return;
        if (associate(c, n) != s) return;
        if (seen.insert(c.encode()).second) out.push_back(c);
    };
    int m = s.m;
    for (int t = 0; t <= m + 1; ++t) {
        int elo = t == 0 ? 1 : s.labels[t - 1];
        int ehi = t == m + 1 ? n : s.labels[t];
        for (int p = 0; p <= K; ++p) {
            for (int e = elo; e <= ehi; ++e) {
                if (t == 0) {
                    for (const auto& beta : T.maps[p][s.sizes[0]]) {
                        OperadSimplex c = OperadSimplex::vertex(p, e).then(beta, s.labels[0]);
                        for (int r = 1; r <= m; ++r) c = c.then(s.edges[r - 1], s.labels[r]);
                        consider(c);
                    }
                } else if (t == m + 1) {
                    for (const auto& beta : T.maps[s.sizes[m]][p]) consider(s.then(beta, e));
                } else {
                    const PointedMap& alpha = s.edges[t - 1];
                    for (const auto& beta : T.maps[s.sizes[t - 1]][p]) {
                        for (const auto& gamma : T.maps[p][s.sizes[t]]) {
                            if (compose(gamma, beta) != alpha) continue;
                            OperadSimplex c = s.slice(0, t - 1).then(beta, e).then(gamma, s.labels[t]);
                            for (int r = t + 1; r <= m; ++r) c = c.then(s.edges[r - 1], s.labels[r]);
                            consider(c);
                        }
                    }
                }
            }
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::string Quadruple::to_string() const {
    std::ostringstream os;
    os << "(" << neut << "," << act << "," << oc << "," << as << ")";
    return os.str();
}

Quadruple quadruple_of_associate(const OperadSimplex& a) {
    Quadruple q;
    std::vector<EdgeKind> kind;
    for (int i = 1; i <= a.m; ++i) kind.push_back(edge_kind(a.edge(i)));
    for (auto k : kind) {
        if (k == EdgeKind::Neutral) ++q.neut;
        if (k == EdgeKind::Active) ++q.act;
    }
    q.oc = a.closed() ? 0 : 1;
    for (std::size_t i = 0; i < kind.size(); ++i)
        for (std::size_t j = i + 1; j < kind.size(); ++j)
            if (kind[i] == EdgeKind::Active && kind[j] == EdgeKind::StronglyInert) ++q.as;
    return q;
}

Quadruple quadruple(const OperadSimplex& s, int K, int n) {
    auto as = associates_of(s, K, n);
    if (as.empty()) throw HypothesisViolation("simplex has no associate within the truncation: " + s.to_string());
    return quadruple_of_associate(as.front());
}

std::vector<OrderedItem> order_A(std::vector<OrderedItem> items) {
    std::stable_sort(items.begin(), items.end(), [](const OrderedItem& a, const OrderedItem& b) {
        if (a.quad != b.quad) return a.quad < b.quad;
        return a.simplex.encode() < b.simplex.encode();
    });
    return items;
}

OperadSimplex Ambient::operad_simplex(const Simplex& x) const {
    const FinStarCategory& B = *nerve.base;
    int start = 0;
    auto arrows = simplex_arrows(B.cat, X(), nerve.info, x, &start);
    OperadSimplex s = OperadSimplex::vertex(B.size[start], B.label[start]);
    for (int a : arrows) {
        const TaggedEdge& e = B.edge[a];
        s = s.then(e.map, e.e1);
    }
    return s;
}

Simplex Ambient::simplex(const OperadSimplex& s) const {
    const FinStarCategory& B = *nerve.base;
    for (int t = 0; t <= s.m; ++t)
        if (s.sizes[t] > K || s.labels[t] < B.lo || s.labels[t] > B.hi) return Simplex::empty();
    std::vector<int> arrows;
    int nonid = 0;
    for (int i = 1; i <= s.m; ++i) {
        int a = B.arrow_of(s.edge(i));
        if (a < 0) return Simplex::empty();
        if (!B.cat.is_identity(a)) ++nonid;
        arrows.push_back(a);
    }
    if (nonid > D) return Simplex::empty();
    return chain_simplex(B.cat, nerve.info, B.object(s.sizes[0], s.labels[0]), arrows);
}

Ambient make_ambient(int K, int n, int D) {
    Ambient A;
    A.K = K;
    A.n = n;
    A.D = D;
    A.nerve = nerve_finstar(K, n, D);
    A.gens.resize(static_cast<std::size_t>(D + 1));
    for (int l = 0; l <= D; ++l)
        for (int g = 0; g < A.X().count(l); ++g) A.gens[l].push_back(A.operad_simplex(Simplex(l, g)));
    return A;
}

void add_closure(SubsetMask& mask, int level, int g) {
    const FiniteSimplicialSet& X = mask.parent();
    std::vector<std::pair<int, int>> stack{{level, g}};
    while (!stack.empty()) {
        auto [l, x] = stack.back();
        stack.pop_back();
        if (mask.member_gen(l, x)) continue;
        mask.set(l, x);
        for (int i = 0; l > 0 && i <= l; ++i) {
            const Simplex& f = X.gen_face(l, x, i);
            if (!mask.member_gen(f.gen_level(), f.gen)) stack.push_back({f.gen_level(), f.gen});
        }
    }
}

namespace {

void add_simplex(SubsetMask& mask, const Simplex& s) {
    if (s.is_empty()) return;
    add_closure(mask, s.gen_level(), s.gen);
}

bool in_g2_g3(Group g) { return g == Group::G2 || g == Group::G3; }

}  // namespace

SubsetMask filtration_level(const Ambient& amb, int m) {
    SubsetMask F(amb.X());
    for (int l = 0; l <= amb.D; ++l) {
        for (int g = 0; g < amb.X().count(l); ++g) {
            const OperadSimplex& s = amb.gens[l][g];
            bool take = !s.complete(amb.n) || l < m || (l == m && in_g2_g3(classify_group(s, amb.n).group));
            if (take) add_closure(F, l, g);
        }
    }
    return F;
}

Filtration build_filtration(int K, int n, int m, Order order) {
    if (m < 1) throw IndexError("filtration stages need m >= 1");
    Filtration F;
    F.amb = make_ambient(K, n, m);
    F.m = m;
    const Ambient& amb = F.amb;
    F.F_prev = filtration_level(amb, m - 1);
    F.F_m = filtration_level(amb, m);
    F.F_prime = F.F_prev;
    std::vector<OrderedItem> items;
    std::map<std::vector<int>, std::vector<OperadSimplex>> assoc;
    std::vector<std::pair<int, int>> second;
    for (int g = 0; g < amb.X().count(m - 1); ++g) {
        const OperadSimplex& s = amb.gens[m - 1][g];
        if (!s.complete(n)) continue;
        Group grp = classify_group(s, n).group;
        if (grp == Group::G1) add_closure(F.F_prime, m - 1, g);
        if (grp != Group::G2p && grp != Group::G3p) continue;
        auto as = associates_of(s, K, n);
        if (as.empty()) {
            if (grp == Group::G2p) second.push_back({m - 1, g});
            continue;
        }
        items.push_back({s, quadruple_of_associate(as.front())});
        assoc[s.encode()] = std::move(as);
    }
    F.F_second = F.F_prime;
    for (auto [l, g] : second) add_closure(F.F_second, l, g);
    F.without_associates = second.size();
    F.A = order_A(std::move(items));
    if (order == Order::Reversed) std::reverse(F.A.begin(), F.A.end());
    for (const auto& it : F.A) F.assoc.push_back(assoc[it.simplex.encode()]);
    return F;
}

SubsetMask filtration_upto(const Filtration& F, int a, bool inclusive) {
    SubsetMask M = F.F_second;
    int end = inclusive ? a + 1 : a;
    for (int b = 0; b < end && b < static_cast<int>(F.A.size()); ++b)
        for (const auto& s : F.assoc[b]) add_simplex(M, F.amb.simplex(s));
    return M;
}

Report check_diamond(int K, int n, int m, const DiamondOptions& opt) {
    Report r;
    r.suite = "diamond";
    r.params = {{"K", std::to_string(K)}, {"n", std::to_string(n)}, {"m", std::to_string(m)},
                {"order", opt.order == Order::Quadruple ? "quadruple" : "reversed"}};
    Filtration F = build_filtration(K, n, m, opt.order);
    const FiniteSimplicialSet& X = F.amb.X();
    r.notes.push_back("|A| = " + std::to_string(F.A.size()) + ", associate-free G2' simplices: " +
                      std::to_string(F.without_associates));
    r.add("F(m-1) in F'(m)", F.F_prev.subset_of(F.F_prime));
    r.add("F'(m) in F''(m)", F.F_prime.subset_of(F.F_second));
    r.add("F''(m) in F(m)", F.F_second.subset_of(F.F_m));

    SubsetMask M = F.F_second;
    std::size_t diamond_bad = 0, ddiamond_bad = 0, unique_bad = 0, checks = 0;
    std::string diamond_w, ddiamond_w, unique_w;
    for (std::size_t a = 0; a < F.A.size(); ++a) {
        const OperadSimplex& sp = F.A[a].simplex;
        Simplex s = F.amb.simplex(sp);
        if (M.member(s)) {
            if (ddiamond_bad++ == 0) ddiamond_w = "a=" + std::to_string(a) + " sigma'=" + sp.to_string();
            if (ddiamond_bad <= 5) r.notes.push_back("double diamond violation: " + sp.to_string());
        }
        for (const auto& sig : F.assoc[a]) {
            Simplex x = F.amb.simplex(sig);
            std::vector<int> ls;
            for (int i = 0; i <= m; ++i)
                if (X.face(x, i) == s) ls.push_back(i);
            if (ls.size() != 1) {
                if (unique_bad++ == 0) unique_w = sig.to_string();
                continue;
            }
            for (int i = 0; i <= m; ++i) {
                if (i == ls[0]) continue;
                ++checks;
                if (!M.member(X.face(x, i))) {
                    std::string w = "a=" + std::to_string(a) + " sigma=" + sig.to_string() + " i=" +
                                    std::to_string(i) + " l=" + std::to_string(ls[0]);
                    if (diamond_bad++ == 0) diamond_w = w;
                    if (diamond_bad <= 5) r.notes.push_back("diamond violation: " + w);
                }
            }
        }
        for (const auto& sig : F.assoc[a]) add_simplex(M, F.amb.simplex(sig));
    }
    r.add("unique face index l", unique_bad == 0,
          unique_bad ? std::to_string(unique_bad) + " associates, first " + unique_w : "");
    r.add("diamond: d_i sigma in F_<a (" + std::to_string(checks) + " faces)", diamond_bad == 0,
          diamond_bad ? std::to_string(diamond_bad) + " violations, first " + diamond_w : "");
    r.add("double diamond: sigma'_a not in F_<a (" + std::to_string(F.A.size()) + " stages)", ddiamond_bad == 0,
          ddiamond_bad ? std::to_string(ddiamond_bad) + " violations, first " + ddiamond_w : "");
    r.add("F''(m) with all associates equals F(m)", M == F.F_m);
    return r;
}

Report quadruple_invariance(int K, int n, int m) {
    Report r;
    r.suite = "quadruple-invariance";
    r.params = {{"K", std::to_string(K)}, {"n", std::to_string(n)}, {"m", std::to_string(m)}};
    std::size_t with = 0, multi = 0, bad = 0;
    std::string w;
    for_each_complete(K, n, m - 1, [&](const OperadSimplex& s) {
        Group g = classify_group(s, n).group;
        if (g != Group::G2p && g != Group::G3p) return;
        auto as = associates_of(s, K, n);
        if (as.empty()) return;
        ++with;
        if (as.size() > 1) ++multi;
        Quadruple q0 = quadruple_of_associate(as.front());
        for (std::size_t i = 1; i < as.size(); ++i) {
            Quadruple q = quadruple_of_associate(as[i]);
            if (q != q0) {
                if (bad++ == 0)
                    w = s.to_string() + ": " + q0.to_string() + " from " + as.front().to_string() + " vs " +
                        q.to_string() + " from " + as[i].to_string();
            }
        }
    });
    r.notes.push_back(std::to_string(with) + " simplices with associates, " + std::to_string(multi) +
                      " with more than one");
    r.add("quadruple independent of the associate", bad == 0, bad ? std::to_string(bad) + " discrepancies, " + w : "");
    return r;
}

Report partition_sweep(int K, int n, int m) {
    Report r;
    r.suite = "partition";
    r.params = {{"K", std::to_string(K)}, {"n", std::to_string(n)}, {"m", std::to_string(m)}};
    std::size_t total = 0, part_bad = 0, assoc_bad = 0, jk_bad = 0, kind_bad = 0;
    std::string pw, aw, jw, kw;
    std::array<std::size_t, 5> counts{};
    for_each_complete(K, n, m, [&](const OperadSimplex& s) {
        ++total;
        std::vector<char> act(static_cast<std::size_t>(m + 1), 0), si(static_cast<std::size_t>(m + 1), 0);
        for (int i = 1; i <= m; ++i) {
            TaggedEdge e = s.edge(i);
            act[i] = active_edge(e);
            si[i] = strongly_inert_edge(e);
            EdgeKind k = edge_kind(e);
            EdgeKind expect = act[i] ? EdgeKind::Active : si[i] ? EdgeKind::StronglyInert : EdgeKind::Neutral;
            if (k != expect && kind_bad++ == 0) kw = e.to_string();
        }
        int k = 0;
        for (k = 0; k <= m; ++k) {
            bool ok = true;
            for (int i = k + 1; i <= m; ++i) ok = ok && si[i];
            if (ok) break;
        }
        int j = 0;
        for (j = 0; j <= k; ++j) {
            bool ok = true;
            for (int i = j + 1; i <= k; ++i) ok = ok && act[i];
            if (ok) break;
        }
        bool closed = s.sizes[m] == 1;
        std::array<bool, 5> in{j == 0 && k == m && closed, j == 0 && k < m && closed, j == 0 && !closed,
                               j >= 1 && si[j], j >= 1 && !act[j] && !si[j]};
        int hits = 0, which = -1;
        for (int g = 0; g < 5; ++g)
            if (in[g]) ++hits, which = g;
        GroupTag t = classify_group(s, n);
        if (hits != 1 || static_cast<int>(t.group) != which) {
            if (part_bad++ == 0) pw = s.to_string() + " hits=" + std::to_string(hits);
            return;
        }
        ++counts[which];
        if (t.j != j || t.k != k) {
            if (jk_bad++ == 0) jw = s.to_string();
        }
        if (in_g2_g3(t.group)) {
            OperadSimplex a = associate(s, n);
            bool ok = a.nondegenerate() && a.complete(n);
            if (ok) {
                Group ga = classify_group(a, n).group;
                ok = (t.group == Group::G2 && ga == Group::G2p) || (t.group == Group::G3 && ga == Group::G3p);
            }
            if (!ok && assoc_bad++ == 0) aw = s.to_string();
        }
    });
    std::ostringstream os;
    os << total << " simplices: G1 " << counts[0] << ", G2 " << counts[1] << ", G2' " << counts[2] << ", G3 "
       << counts[3] << ", G3' " << counts[4];
    r.notes.push_back(os.str());
    r.add("exactly one group per simplex", part_bad == 0, part_bad ? std::to_string(part_bad) + ", first " + pw : "");
    r.add("j and k agree with the direct minimisation", jk_bad == 0, jw);
    r.add("edge kinds agree with the map-level rule", kind_bad == 0, kw);
    r.add("associates land in G2' / G3'", assoc_bad == 0, aw);
    return r;
}

Report edge_taxonomy_sweep(int K, int n) {
    Report r;
    r.suite = "edge-taxonomy";
    r.params = {{"K", std::to_string(K)}, {"n", std::to_string(n)}};
    std::size_t total = 0, kind_bad = 0, fact_bad = 0, canon_bad = 0;
    std::string kw, fw, cw;
    for (int a = 0; a <= K; ++a) {
        for (int b = 0; b <= K; ++b) {
            for (const auto& alpha : all_maps(a, b)) {
                for (int e0 = 1; e0 <= n; ++e0) {
                    for (int e1 = e0; e1 <= n; ++e1) {
                        TaggedEdge e(alpha, e0, e1);
                        ++total;
                        bool act = active_edge(e), si = strongly_inert_edge(e);
                        bool neut = !act && !si;
                        int hits = act + si + neut;
                        bool ok = e.degenerate() ? (act && si) : hits == 1;
                        ok = ok && is_active(e) == act && is_strongly_inert(e) == si && is_neutral(e) == neut;
                        if (!ok && kind_bad++ == 0) kw = e.to_string();
                        int c = count_factorizations(e, K);
                        if (c != 1 && fact_bad++ == 0) fw = e.to_string() + " has " + std::to_string(c);
                        Factorization f = inert_active_factorize(e);
                        bool cok = strongly_inert_edge(f.inert) && active_edge(f.active) &&
                                   compose(f.active, f.inert) == e;
                        if (!cok && canon_bad++ == 0) cw = e.to_string();
                    }
                }
            }
        }
    }
    r.notes.push_back(std::to_string(total) + " tagged edges");
    r.add("each edge has exactly one kind (degenerate edges: active and strongly inert)", kind_bad == 0, kw);
    r.add("unique strongly inert / active factorization", fact_bad == 0, fw);
    r.add("canonical factorization has the right kinds and composes back", canon_bad == 0, cw);
    return r;
}

}  // namespace opkan
