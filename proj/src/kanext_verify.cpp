#include <algorithm>
#include <sstream>
#include <unordered_set>

#include "opkan/errors.hpp"
#include "opkan/grothendieck.hpp"
#include "opkan/kanext.hpp"

namespace opkan {

OperadSimplex FamilyNerve::base_simplex(const Simplex& y) const {
    const FinStarCategory& B = *model->base;
    int start = 0;
    auto arrows = simplex_arrows(B.cat, *Y, yinfo, y, &start);
    OperadSimplex s = OperadSimplex::vertex(B.size[start], B.label[start]);
    for (int a : arrows) s = s.then(B.edge[a].map, B.edge[a].e1);
    return s;
}

FamilyNerve family_nerve(const OperadModel& M, int D) {
    FamilyNerve F;
    F.model = &M;
    F.X = std::make_shared<FiniteSimplicialSet>(nerve(*M.cat, D, &F.xinfo));
    F.Y = std::make_shared<FiniteSimplicialSet>(nerve(M.base->cat, D, &F.yinfo));
    F.p = nerve_map(M.proj, F.X, F.xinfo, F.Y, F.yinfo);
    for (int x = 0; x < M.cat->object_count(); ++x) F.xside.side.push_back(M.label_of(x) >= 1 ? 1 : 0);
    for (int c = 0; c < M.base->cat.object_count(); ++c) F.yside.side.push_back(M.base->label[c] >= 1 ? 1 : 0);
    return F;
}

namespace {

std::vector<int> side_vertices(const OverInterval& u, int side) {
    std::vector<int> out;
    for (int v = 0; v < static_cast<int>(u.side.size()); ++v)
        if (u.side[v] == side) out.push_back(v);
    return out;
}

std::vector<Simplex> gen_faces(const FiniteSimplicialSet& X, const Simplex& s) {
    std::vector<Simplex> out;
    for (int i = 0; s.level > 0 && i <= s.level; ++i) out.push_back(X.face(s, i));
    return out;
}

bool member_or_empty(const SubsetMask& M, const Simplex& s) { return s.is_empty() || M.member(s); }

std::string levels_string(const SubsetMask& M) {
    std::ostringstream os;
    for (int l = 0; l < M.levels(); ++l) os << (l ? "," : "") << M.count(l);
    return os.str();
}

}  // namespace

std::vector<std::string> heads_tails_hypotheses(const HeadsTailsInput& in) {
    std::vector<std::string> errs;
    const FiniteSimplicialSet& X = *in.X;
    const FiniteSimplicialSet& Y = *in.Y;
    if (static_cast<int>(in.xside.side.size()) != X.count(0)) errs.push_back("side map of X has the wrong size");
    if (static_cast<int>(in.yside.side.size()) != Y.count(0)) errs.push_back("side map of Y has the wrong size");
    if (!errs.empty()) return errs;
    for (int v = 0; v < X.count(0); ++v) {
        Simplex pv = in.p(Simplex(0, v));
        if (in.yside.side[pv.gen] != in.xside.side[v]) {
            errs.push_back("p does not commute with the maps to Delta^1 at vertex " + X.name(0, v));
            break;
        }
    }
    if (&in.S.parent() != &Y) errs.push_back("S is not a subset of Y");
    if (!errs.empty()) return errs;
    SubsetMask Y1 = full_subset_on_vertices(Y, side_vertices(in.yside, 1));
    if (!in.S.subset_of(Y1)) errs.push_back("S is not contained in Y_1");
    if (!in.S.face_closed()) errs.push_back("S is not a simplicial subset");
    for (int l = 0; l < in.n && l <= Y.dim_bound(); ++l)
        for (int g = 0; g < Y.count(l); ++g)
            if (Y1.member_gen(l, g) && !in.S.member_gen(l, g)) {
                errs.push_back("S misses the simplex " + Y.name(l, g) + " of the (n-1)-skeleton");
                l = in.n;
                break;
            }
    std::unordered_set<Simplex, SimplexHash> seen;
    for (const auto& s : in.Sigma) {
        if (!Y.contains(s) || !s.nondegenerate() || s.level != in.n) {
            errs.push_back("Sigma entry is not a nondegenerate n-simplex");
        } else if (!Y1.member(s)) {
            errs.push_back("Sigma entry " + Y.simplex_name(s) + " is not in Y_1");
        } else if (in.S.member(s)) {
            errs.push_back("Sigma entry " + Y.simplex_name(s) + " already lies in S");
        } else if (!seen.insert(s).second) {
            errs.push_back("Sigma has a repeated entry");
        }
    }
    return errs;
}

HeadsTailsData heads_tails_build(const HeadsTailsInput& in) {
    const FiniteSimplicialSet& X = *in.X;
    const FiniteSimplicialSet& Y = *in.Y;
    HeadsTailsData d;
    SubsetMask Sp = in.S;
    for (const auto& s : in.Sigma) add_closure(Sp, s.gen_level(), s.gen);
    std::unordered_set<Simplex, SimplexHash> sigma(in.Sigma.begin(), in.Sigma.end());

    std::vector<std::vector<Simplex>> heads(static_cast<std::size_t>(X.dim_bound() + 1));
    d.XS = SubsetMask(X);
    d.XSp = SubsetMask(X);
    for (int l = 0; l <= X.dim_bound(); ++l) {
        for (int g = 0; g < X.count(l); ++g) {
            Simplex x(l, g);
            Simplex h = head(X, x, in.xside);
            heads[l].push_back(h);
            Simplex ph = h.is_empty() ? h : in.p(h);
            if (member_or_empty(in.S, ph)) d.XS.set(l, g);
            if (member_or_empty(Sp, ph)) d.XSp.set(l, g);
            bool all_one = true;
            for (int v : X.vertices(x)) all_one = all_one && in.xside.side[v] == 1;
            if (!all_one) continue;
            Simplex px = in.p(x);
            if (sigma.count(Simplex(px.gen_level(), px.gen, 0))) d.sigma_a.push_back(x);
        }
    }
    (void)Y;
    SubsetMask cur = d.XS;
    for (const auto& sa : d.sigma_a) {
        SubsetMask G = subset_generated(X, {sa});
        SubsetMask dG = subset_generated(X, gen_faces(X, sa));
        SubsetMask K(X), K0(X);
        for (int l = 0; l <= X.dim_bound(); ++l)
            for (int g = 0; g < X.count(l); ++g) {
                const Simplex& h = heads[l][g];
                if (member_or_empty(G, h)) K.set(l, g);
                if (member_or_empty(dG, h)) K0.set(l, g);
            }
        d.lt.push_back(cur);
        cur |= K;
        d.le.push_back(cur);
        d.K.push_back(std::move(K));
        d.K0.push_back(std::move(K0));
    }
    return d;
}

Report heads_tails_check(const HeadsTailsInput& in, const HeadsTailsData& d) {
    Report r;
    r.suite = "heads-tails";
    r.params = {{"instance", in.name}, {"n", std::to_string(in.n)}, {"|Sigma|", std::to_string(in.Sigma.size())}};
    r.notes.push_back("subsets are defined through heads: X(S) holds the simplices whose head lies over S");
    r.notes.push_back("|A| = " + std::to_string(d.sigma_a.size()) + ", X(S') levels " + levels_string(d.XSp));
    SubsetMask uni = d.XS;
    for (const auto& le : d.le) uni |= le;
    r.add("(1) X(S') is X(S) with every X(S')_<=a", uni == d.XSp);
    std::size_t bad = 0, card_bad = 0, closed_bad = 0;
    std::string w, cw;
    for (std::size_t a = 0; a < d.sigma_a.size(); ++a) {
        PushoutResult pr = pushout_check(d.K0[a], d.K[a], d.lt[a], d.le[a]);
        if (!pr.ok() && bad++ == 0) w = "a=" + std::to_string(a) + ": " + to_string(pr.status) + " " + pr.detail;
        for (int l = 0; l < d.le[a].levels(); ++l) {
            long long lhs = static_cast<long long>(d.le[a].count(l));
            long long rhs = static_cast<long long>(d.lt[a].count(l)) + static_cast<long long>(d.K[a].count(l)) -
                            static_cast<long long>(d.K0[a].count(l));
            if (lhs != rhs && card_bad++ == 0)
                cw = "a=" + std::to_string(a) + " level " + std::to_string(l) + ": " + std::to_string(lhs) +
                     " vs " + std::to_string(rhs);
        }
        if (!d.K[a].face_closed() || !d.K0[a].face_closed() || !d.lt[a].face_closed() || !d.le[a].face_closed())
            ++closed_bad;
    }
    r.add("(2) pushout at every a (" + std::to_string(d.sigma_a.size()) + " stages)", bad == 0, w);
    r.add("levelwise |X_<=a| = |X_<a| + |K_a| - |K_0,a|", card_bad == 0, cw);
    r.add("every stage is a simplicial subset", closed_bad == 0);
    return r;
}

Report heads_tails_verify(const HeadsTailsInput& in) {
    auto errs = heads_tails_hypotheses(in);
    if (!errs.empty()) throw HypothesisViolation(errs.front());
    return heads_tails_check(in, heads_tails_build(in));
}

std::string heads_tails_mutate(HeadsTailsData& d, std::mt19937& rng) {
    if (d.sigma_a.empty()) return "no stage to mutate";
    std::size_t a = rng() % d.sigma_a.size();
    const FiniteSimplicialSet& X = d.le[a].parent();
    auto pick = [&](auto pred) -> std::pair<int, int> {
        std::vector<std::pair<int, int>> c;
        for (int l = 0; l <= X.dim_bound(); ++l)
            for (int g = 0; g < X.count(l); ++g)
                if (pred(l, g)) c.push_back({l, g});
        if (c.empty()) return {-1, -1};
        return c[rng() % c.size()];
    };
    for (int attempt = 0; attempt < 4; ++attempt) {
        int kind = static_cast<int>(rng() % 4);
        std::pair<int, int> x{-1, -1};
        std::string what;
        if (kind == 0) {
            x = pick([&](int l, int g) { return d.le[a].member_gen(l, g); });
            if (x.first >= 0) d.le[a].set(x.first, x.second, false), what = "removed from X(S')_<=a";
        } else if (kind == 1) {
            x = pick([&](int l, int g) { return d.K[a].member_gen(l, g) && !d.lt[a].member_gen(l, g); });
            if (x.first >= 0) d.K0[a].set(x.first, x.second), what = "added to K_0,a";
        } else if (kind == 2) {
            x = pick([&](int l, int g) { return d.K[a].member_gen(l, g) && !d.K0[a].member_gen(l, g); });
            if (x.first >= 0) d.K[a].set(x.first, x.second, false), what = "removed from K_a";
        } else {
            x = pick([&](int l, int g) { return d.K[a].member_gen(l, g) && !d.lt[a].member_gen(l, g); });
            if (x.first >= 0) d.lt[a].set(x.first, x.second), what = "added to X(S')_<a";
        }
        if (x.first >= 0)
            return X.name(x.first, x.second) + " " + what + " at a=" + std::to_string(a);
    }
    return "no applicable mutation";
}

HeadsTailsInstance heads_tails_instance(std::shared_ptr<OperadModel> model, int D, int n, int sigma_count,
                                        unsigned seed, const std::string& name) {
    HeadsTailsInstance I;
    I.model = model;
    I.nerve = std::make_shared<FamilyNerve>(family_nerve(*model, D));
    const FamilyNerve& F = *I.nerve;
    const FiniteSimplicialSet& Y = *F.Y;
    SubsetMask Y1 = full_subset_on_vertices(Y, side_vertices(F.yside, 1));
    SubsetMask S(Y);
    for (int l = 0; l < n; ++l)
        for (int g = 0; g < Y.count(l); ++g)
            if (Y1.member_gen(l, g)) S.set(l, g);
    std::vector<char> hit(static_cast<std::size_t>(Y.count(n)), 0);
    for (int g = 0; g < F.X->count(n); ++g) {
        Simplex px = F.p(Simplex(n, g));
        if (px.nondegenerate()) hit[px.gen] = 1;
    }
    std::vector<int> cand;
    for (int g = 0; g < Y.count(n); ++g)
        if (Y1.member_gen(n, g) && hit[g]) cand.push_back(g);
    std::mt19937 rng(seed);
    for (std::size_t i = cand.size(); i > 1; --i) std::swap(cand[i - 1], cand[rng() % i]);
    HeadsTailsInput& in = I.input;
    in.name = name;
    in.X = F.X;
    in.xside = F.xside;
    in.Y = F.Y;
    in.yside = F.yside;
    in.p = F.p;
    in.S = S;
    in.n = n;
    for (int i = 0; i < sigma_count && i < static_cast<int>(cand.size()); ++i) in.Sigma.push_back(Simplex(n, cand[i]));
    return I;
}

std::vector<HeadsTailsInstance> heads_tails_instances() {
    std::vector<std::pair<std::string, std::shared_ptr<OperadModel>>> models;
    auto cylinder = [](const OperadModel& M) {
        return std::make_shared<OperadModel>(family_from_functor(identity_functor(M)));
    };
    static const OperadModel comm = comm_model(2);
    static const OperadModel triv = triv_model(2);
    static const OperadModel z2 = monoid_model(cyclic_monoid(2), 2);
    models.push_back({"comm", cylinder(comm)});
    models.push_back({"triv", cylinder(triv)});
    models.push_back({"Z2", cylinder(z2)});
    std::vector<HeadsTailsInstance> out;
    unsigned seed = 1;
    for (const auto& [name, M] : models) {
        out.push_back(heads_tails_instance(M, 3, 1, 1, seed++, name + "-n1-one"));
        out.push_back(heads_tails_instance(M, 3, 1, 3, seed++, name + "-n1-three"));
        out.push_back(heads_tails_instance(M, 3, 2, 1, seed++, name + "-n2-one"));
    }
    out.push_back(heads_tails_instance(models[0].second, 3, 1, 0, seed++, "comm-n1-empty"));
    out.push_back(heads_tails_instance(models[2].second, 3, 2, 2, seed++, "Z2-n2-two"));
    return out;
}

// Slice of a join over a simplex avoiding C0

namespace {

struct C0Slice {
    FiniteSimplicialSet S;
    std::vector<std::vector<Simplex>> witness;
};

C0Slice c0_slice(const FiniteSimplicialSet& C, const std::vector<char>& in_c0, const Simplex& base, int bound) {
    SliceInfo info;
    FiniteSimplicialSet full = slice_over(C, base, bound, &info);
    SubsetMask keep(full);
    for (int k = 0; k <= full.dim_bound(); ++k)
        for (int g = 0; g < full.count(k); ++g) {
            auto vs = C.vertices(info.witness[k][g]);
            bool ok = true;
            for (int t = 0; t <= k; ++t) ok = ok && in_c0[vs[t]];
            if (ok) keep.set(k, g);
        }
    C0Slice out;
    std::vector<std::vector<int>> idx;
    out.S = restrict_to(keep, &idx);
    out.witness.resize(static_cast<std::size_t>(std::max(0, out.S.dim_bound() + 1)));
    for (int k = 0; k <= full.dim_bound() && k <= out.S.dim_bound(); ++k) {
        out.witness[k].resize(static_cast<std::size_t>(out.S.count(k)));
        for (int g = 0; g < full.count(k); ++g)
            if (idx[k][g] >= 0) out.witness[k][idx[k][g]] = info.witness[k][g];
    }
    return out;
}

struct JoinToC {
    const FiniteSimplicialSet* C;
    const C0Slice* sl;
    const FiniteSimplicialSet* delta;
    const JoinInfo* info;
    Simplex base;

    Simplex operator()(int level, int g) const {
        const JoinInfo::Part& p = info->parts[level][g];
        auto zverts = [&]() {
            std::vector<int> v;
            for (int t : delta->vertices(Simplex(p.y_level, p.y_gen))) v.push_back(t);
            return v;
        };
        if (p.kind == JoinInfo::Right) return C->restrict(base, zverts());
        const Simplex& w = sl->witness[p.x_level][p.x_gen];
        std::vector<int> pos;
        for (int t = 0; t <= p.x_level; ++t) pos.push_back(t);
        if (p.kind == JoinInfo::Pair)
            for (int v : zverts()) pos.push_back(p.x_level + 1 + v);
        return C->restrict(w, pos);
    }

    Simplex of(const FiniteSimplicialSet& J, const Simplex& s) const {
        Simplex core = (*this)(s.gen_level(), s.gen);
        if (s.degen == 0) return core;
        (void)J;
        return C->degenerate_by(core, s.degen, s.level);
    }
};

struct LemmaSets {
    std::vector<char> in_c0;
    SubsetMask Gs, dGs, K, K0, L;
    int n;
    Simplex sigma;

    // Split of a simplex into a C0 prefix and the rest; returns false if none.
    bool split(const FiniteSimplicialSet& C, const Simplex& x, Simplex& rest) const {
        auto vs = C.vertices(x);
        int r = 0;
        while (r <= x.level && in_c0[vs[r]]) ++r;
        for (int t = r; t <= x.level; ++t)
            if (in_c0[vs[t]]) return false;
        std::vector<int> pos;
        for (int t = r; t <= x.level; ++t) pos.push_back(t);
        rest = C.restrict(x, pos);
        return true;
    }

    SubsetMask X_m(const FiniteSimplicialSet& C, int m) const {
        SubsetMask M = K0;
        for (int l = 0; l <= C.dim_bound(); ++l)
            for (int g = 0; g < C.count(l); ++g) {
                Simplex rest;
                if (!split(C, Simplex(l, g), rest) || rest.is_empty()) continue;
                if (rest.gen_level() == n && rest.gen == sigma.gen && rest.level >= n && rest.level < m) M.set(l, g);
            }
        return M;
    }
};

std::vector<std::uint32_t> surjection_masks(int m, int n) {
    std::vector<std::uint32_t> out;
    for (std::uint32_t mask = 0; mask < (1u << m); ++mask)
        if (__builtin_popcount(mask) == m - n) out.push_back(mask);
    return out;
}

}  // namespace

std::vector<std::string> lemma_3125_hypotheses(const Lemma3125Input& in) {
    std::vector<std::string> errs;
    const FiniteSimplicialSet& C = *in.C;
    for (int v : in.c0)
        if (v < 0 || v >= C.count(0)) errs.push_back("C0 vertex out of range");
    if (!C.contains(in.sigma) || !in.sigma.nondegenerate()) {
        errs.push_back("sigma is not a nondegenerate simplex of C");
        return errs;
    }
    for (int v : C.vertices(in.sigma))
        if (std::find(in.c0.begin(), in.c0.end(), v) != in.c0.end())
            errs.push_back("vertex " + C.name(0, v) + " of sigma lies in C0");
    if (in.bound < in.sigma.level) errs.push_back("bound is below the dimension of sigma");
    if (in.bound + in.sigma.level + 1 >= 31) errs.push_back("bound too large");
    return errs;
}

Report lemma_3125_verify(const Lemma3125Input& in, const Lemma3125Options& opt) {
    auto errs = lemma_3125_hypotheses(in);
    if (!errs.empty()) throw HypothesisViolation(errs.front());
    const FiniteSimplicialSet& C = *in.C;
    const int n = in.sigma.level;
    const int bound = in.bound;
    Report r;
    r.suite = "lemma3125";
    r.params = {{"instance", in.name}, {"n", std::to_string(n)}, {"bound", std::to_string(bound)}};
    r.notes.push_back("the literal X_m (n <= m' < m) gives X_n = K0 and X_{n+1} = K0 u L; squares run for m > n");

    LemmaSets T;
    T.n = n;
    T.sigma = in.sigma;
    T.in_c0.assign(static_cast<std::size_t>(C.count(0)), 0);
    for (int v : in.c0) T.in_c0[v] = 1;
    T.Gs = subset_generated(C, {in.sigma});
    T.dGs = subset_generated(C, gen_faces(C, in.sigma));
    T.K = SubsetMask(C);
    T.K0 = SubsetMask(C);
    T.L = SubsetMask(C);
    for (int l = 0; l <= C.dim_bound(); ++l)
        for (int g = 0; g < C.count(l); ++g) {
            Simplex rest;
            if (!T.split(C, Simplex(l, g), rest)) continue;
            if (member_or_empty(T.Gs, rest)) T.K.set(l, g);
            if (member_or_empty(T.dGs, rest)) T.K0.set(l, g);
            if (rest == in.sigma) add_closure(T.L, l, g);
        }
    SubsetMask K0L = T.K0 | T.L;
    r.add("K, K0 and L are simplicial subsets", T.K.face_closed() && T.K0.face_closed() && T.L.face_closed());
    r.add("K0 u L = X_{n+1}", K0L.equal_up_to(T.X_m(C, n + 1), bound));
    r.add("K = X_{bound+1} through the bound", T.K.equal_up_to(T.X_m(C, bound + 1), bound));

    // (a): the pushout of the slice join along the boundary join, built explicitly.
    {
        C0Slice sl = c0_slice(C, T.in_c0, in.sigma, bound);
        FiniteSimplicialSet delta = standard_simplex(n);
        JoinInfo jinfo;
        FiniteSimplicialSet J = join(sl.S, delta, &jinfo);
        JoinToC phi{&C, &sl, &delta, &jinfo, in.sigma};
        const int top = n;
        auto in_boundary = [&](int l, int g) {
            const JoinInfo::Part& p = jinfo.parts[l][g];
            return p.kind == JoinInfo::Left || p.y_level != top;
        };
        int Pdim = std::min(bound, J.dim_bound());
        Pdim = std::max(Pdim, std::min(bound, C.dim_bound()));
        FiniteSimplicialSet P(Pdim);
        std::vector<std::vector<int>> pC(static_cast<std::size_t>(C.dim_bound() + 1)),
            pJ(static_cast<std::size_t>(J.dim_bound() + 1));
        std::vector<std::vector<Simplex>> images(static_cast<std::size_t>(Pdim + 1));
        bool into_k0 = true;
        std::string k0w;
        auto to_P = [&](const Simplex& c) {
            return Simplex(c.level, pC[c.gen_level()][c.gen], c.degen);
        };
        for (int l = 0; l <= Pdim; ++l) {
            if (l <= C.dim_bound()) {
                pC[l].assign(static_cast<std::size_t>(C.count(l)), -1);
                for (int g = 0; g < C.count(l); ++g) {
                    if (!T.K0.member_gen(l, g)) continue;
                    std::vector<Simplex> faces;
                    for (int i = 0; l > 0 && i <= l; ++i) faces.push_back(to_P(C.gen_face(l, g, i)));
                    pC[l][g] = P.add_generator(l, C.name(l, g), faces);
                    images[l].push_back(Simplex(l, g));
                }
            }
            if (l <= J.dim_bound()) {
                pJ[l].assign(static_cast<std::size_t>(J.count(l)), -1);
                for (int g = 0; g < J.count(l); ++g) {
                    if (in_boundary(l, g)) {
                        Simplex img = phi(l, g);
                        if (!T.K0.member(img)) {
                            if (into_k0) k0w = J.name(l, g);
                            into_k0 = false;
                        }
                        continue;
                    }
                    std::vector<Simplex> faces;
                    for (int i = 0; l > 0 && i <= l; ++i) {
                        Simplex f = J.gen_face(l, g, i);
                        int cl = f.gen_level(), cg = f.gen;
                        if (in_boundary(cl, cg)) {
                            Simplex img = phi(cl, cg);
                            Simplex pi = T.K0.member(img) ? to_P(img) : Simplex(cl, 0, 0);
                            faces.push_back(f.degen ? P.degenerate_by(pi, f.degen, f.level) : pi);
                        } else {
                            faces.push_back(Simplex(f.level, pJ[cl][cg], f.degen));
                        }
                    }
                    pJ[l][g] = P.add_generator(l, "j:" + J.name(l, g), faces);
                    images[l].push_back(phi(l, g));
                }
            }
        }
        r.add("boundary join lands in K0", into_k0, k0w);
        if (opt.perturb_seed >= 0) {
            std::mt19937 rng(static_cast<unsigned>(opt.perturb_seed));
            std::vector<std::pair<int, int>> cand;
            for (int l = 1; l <= Pdim; ++l)
                for (int g = 0; g < P.count(l); ++g)
                    if (P.name(l, g).rfind("j:", 0) == 0 && P.count(l - 1) > 1) cand.push_back({l, g});
            if (!cand.empty()) {
                auto [l, g] = cand[rng() % cand.size()];
                int i = static_cast<int>(rng() % static_cast<unsigned>(l + 1));
                Simplex old = P.gen_face(l, g, i);
                Simplex repl(l - 1, 0, 0);
                for (int h = 0; h < P.count(l - 1); ++h)
                    if (Simplex(l - 1, h, 0) != old) {
                        repl = Simplex(l - 1, h, 0);
                        if (rng() % 2) break;
                    }
                P.set_gen_face(l, g, i, repl);
                r.notes.push_back("perturbed face d" + std::to_string(i) + " of " + P.name(l, g));
            } else {
                r.notes.push_back("perturbation not applicable: no generator of the join part has two candidate faces");
            }
        }
        auto Pp = std::make_shared<FiniteSimplicialSet>(P);
        auto Cp = std::shared_ptr<const FiniteSimplicialSet>(in.C);
        SimplicialMap psi(Pp, Cp);
        for (int l = 0; l <= Pdim; ++l) psi.images[l] = images[l];
        auto merrs = psi.check(5);
        r.add("pushout candidate maps simplicially to C", merrs.empty(), merrs.empty() ? "" : merrs.front());
        bool nondeg = true, inj = true;
        SubsetMask image(C);
        for (int l = 0; l <= Pdim; ++l)
            for (const auto& s : images[l]) {
                if (!s.nondegenerate()) {
                    nondeg = false;
                    continue;
                }
                if (image.member_gen(l, s.gen)) inj = false;
                image.set(l, s.gen);
            }
        r.add("generators go to distinct nondegenerate simplices", nondeg && inj);
        r.add("(a) image is K0 u L (isomorphism through the bound)", image.equal_up_to(K0L, bound));
    }

    // (i): the squares X_m -> X_{m+1}.
    std::size_t square_bad = 0;
    std::string sw;
    int squares = 0;
    for (int m = n + 1; m <= bound; ++m) {
        ++squares;
        SubsetMask Xm = T.X_m(C, m), Xm1 = T.X_m(C, m + 1);
        std::vector<std::unordered_set<Simplex, SimplexHash>> hit(static_cast<std::size_t>(bound + 1));
        bool ok = true;
        std::string why;
        FiniteSimplicialSet delta = standard_simplex(m);
        for (std::uint32_t mask : surjection_masks(m, n)) {
            Simplex base = C.degenerate_by(in.sigma, mask, m);
            C0Slice sl = c0_slice(C, T.in_c0, base, bound);
            SubsetMask A(sl.S);
            for (int k = 0; k <= sl.S.dim_bound(); ++k)
                for (int g = 0; g < sl.S.count(k); ++g) {
                    std::uint32_t wd = sl.witness[k][g].degen;
                    for (int j = 0; j < m; ++j)
                        if ((mask >> j & 1u) && (wd >> (k + 1 + j) & 1u)) A.set(k, g);
                }
            JoinInfo jinfo;
            FiniteSimplicialSet J = join(sl.S, delta, &jinfo);
            JoinToC phi{&C, &sl, &delta, &jinfo, base};
            auto in_tl = [&](int l, int g) {
                const JoinInfo::Part& p = jinfo.parts[l][g];
                if (p.kind != JoinInfo::Pair) return true;
                return A.member_gen(p.x_level, p.x_gen) || p.y_level != m;
            };
            for (int q = 0; q <= bound; ++q) {
                J.for_each_simplex(q, [&](const Simplex& s) {
                    if (!ok) return;
                    Simplex img = phi.of(J, s);
                    if (in_tl(s.gen_level(), s.gen)) {
                        if (!Xm.member(img)) ok = false, why = "top-left simplex " + J.simplex_name(s) + " misses X_m";
                    } else if (Xm.member(img) || !Xm1.member(img)) {
                        ok = false, why = J.simplex_name(s) + " does not land in X_{m+1} \\ X_m";
                    } else if (!hit[q].insert(img).second) {
                        ok = false, why = "two simplices map to " + C.simplex_name(img);
                    }
                });
            }
        }
        for (int q = 0; ok && q <= bound; ++q) {
            std::size_t cnt = 0;
            C.for_each_simplex(q, [&](const Simplex& x) {
                if (Xm1.member(x) && !Xm.member(x)) ++cnt;
            });
            if (cnt != hit[q].size())
                ok = false, why = "level " + std::to_string(q) + ": " + std::to_string(cnt) + " new simplices, " +
                                  std::to_string(hit[q].size()) + " reached";
        }
        if (!ok && square_bad++ == 0) sw = "m=" + std::to_string(m) + ": " + why;
    }
    r.add("(i) X_m -> X_{m+1} squares are pushouts (" + std::to_string(squares) + " squares)", square_bad == 0, sw);
    return r;
}

std::vector<Lemma3125Input> lemma_3125_instances() {
    std::vector<Lemma3125Input> out;
    auto d2 = std::make_shared<FiniteSimplicialSet>(standard_simplex(2));
    auto d3 = std::make_shared<FiniteSimplicialSet>(standard_simplex(3));
    out.push_back({"delta2-c0-0-edge12", d2, {0}, simplex_with_vertices(2, {1, 2}), 3});
    out.push_back({"delta2-c0-empty-top", d2, {}, simplex_with_vertices(2, {0, 1, 2}), 3});
    out.push_back({"delta3-c0-01-edge23", d3, {0, 1}, simplex_with_vertices(3, {2, 3}), 3});
    out.push_back({"delta3-c0-0-face123", d3, {0}, simplex_with_vertices(3, {1, 2, 3}), 3});
    out.push_back({"delta3-c0-empty-vertex3", d3, {}, simplex_with_vertices(3, {3}), 3});
    {
        FiniteSimplicialSet d1 = standard_simplex(1);
        ProductInfo pi;
        auto sq = std::make_shared<FiniteSimplicialSet>(product(d1, d1, &pi));
        int v00 = -1, v01 = -1, v11 = -1;
        for (int g = 0; g < sq->count(0); ++g) {
            const auto& c = pi.components[0][g];
            int a = d1.vertex(c.x, 0), b = d1.vertex(c.y, 0);
            if (a == 0 && b == 0) v00 = g;
            if (a == 0 && b == 1) v01 = g;
            if (a == 1 && b == 1) v11 = g;
        }
        Simplex edge(1, 0);
        for (int g = 0; g < sq->count(1); ++g) {
            auto vs = sq->vertices(Simplex(1, g));
            if (vs[0] == v01 && vs[1] == v11) edge = Simplex(1, g);
        }
        out.push_back({"square-c0-00-top-edge", sq, {v00}, edge, 3});
    }
    {
        FiniteCategory P;
        int a = P.add_object("a"), b = P.add_object("b"), c = P.add_object("c");
        int f = P.add_arrow(a, b, "f"), g = P.add_arrow(a, b, "g"), h = P.add_arrow(b, c, "h");
        int hf = P.add_arrow(a, c, "hf"), hg = P.add_arrow(a, c, "hg");
        P.set_composite(h, f, hf);
        P.set_composite(h, g, hg);
        NerveInfo info;
        auto N = std::make_shared<FiniteSimplicialSet>(nerve(P, 6, &info));
        out.push_back({"parallel-c0-a-edge-h", N, {a}, Simplex(1, info.lookup[1].at({h})), 3});
    }
    {
        FiniteCategory I = walking_iso();
        NerveInfo info;
        auto N = std::make_shared<FiniteSimplicialSet>(nerve(I, 4, &info));
        out.push_back({"iso-c0-a-vertex-b", N, {0}, Simplex(0, 1), 2});
    }
    return out;
}

// Step 3, Case 1

namespace {

PointedMap rho_map(int k, int i) {
    std::vector<int> v(static_cast<std::size_t>(k), 0);
    v[i - 1] = 1;
    return PointedMap(k, 1, v);
}

}  // namespace

Report step3_case1_verify(const OperadModel& M, int m, int D, const Step3Options& opt) {
    const FinStarCategory& B = *M.base;
    if (B.lo != 0) throw HypothesisViolation("the family must carry labels 0..n");
    const int K = B.K, n = B.hi;
    Report r;
    r.suite = "step3-case1";
    r.params = {{"model", M.name}, {"K", std::to_string(K)}, {"n", std::to_string(n)}, {"m", std::to_string(m)},
                {"D", std::to_string(D)}, {"lambda order", opt.reverse_lambda ? "reversed" : "by dimension"}};
    r.notes.push_back("subsets are defined through heads; comparisons run through level D-1");
    Filtration F = build_filtration(K, n, m);
    const Ambient& amb = F.amb;
    FamilyNerve fam = family_nerve(M, D);
    const FiniteSimplicialSet& X = *fam.X;
    const FinStarCategory& YB = *M.base;
    const int cmp = D - 1;

    std::vector<std::vector<Simplex>> amb_head(static_cast<std::size_t>(D + 1));
    std::vector<std::vector<char>> head_empty(static_cast<std::size_t>(D + 1));
    for (int l = 0; l <= D; ++l)
        for (int g = 0; g < X.count(l); ++g) {
            Simplex h = head(X, Simplex(l, g), fam.xside);
            head_empty[l].push_back(h.is_empty());
            amb_head[l].push_back(h.is_empty() ? h : amb.simplex(fam.base_simplex(fam.p(h))));
        }
    auto pulled = [&](const SubsetMask& S) {
        SubsetMask out(X);
        for (int l = 0; l <= D; ++l)
            for (int g = 0; g < X.count(l); ++g)
                if (head_empty[l][g] || (!amb_head[l][g].is_empty() && S.member(amb_head[l][g]))) out.set(l, g);
        return out;
    };
    if (m == 1) {
        std::vector<int> complete_free;
        SubsetMask horn(X);
        for (int l = 0; l <= D; ++l)
            for (int g = 0; g < X.count(l); ++g) {
                std::vector<char> seen(static_cast<std::size_t>(n + 1), 0);
                for (int v : X.vertices(Simplex(l, g))) seen[M.label_of(v)] = 1;
                bool all = true;
                for (int e = 1; e <= n; ++e) all = all && seen[e];
                if (!all) horn.set(l, g);
            }
        r.add("M over F(0) is M over the horn Lambda^n_0", pulled(F.F_prev) == horn);
    }

    std::vector<std::vector<std::vector<int>>> arrows(static_cast<std::size_t>(D + 1));
    std::vector<std::vector<std::vector<int>>> objects(static_cast<std::size_t>(D + 1));
    for (int l = 0; l <= D; ++l)
        for (int g = 0; g < X.count(l); ++g) {
            int start = 0;
            auto ar = simplex_arrows(*M.cat, X, fam.xinfo, Simplex(l, g), &start);
            std::vector<int> ob{start};
            for (int a : ar) ob.push_back(M.cat->arrow(a).dst);
            arrows[l].push_back(ar);
            objects[l].push_back(ob);
        }
    auto over_one = [&](int obj) { return M.size_of(obj) == 1; };
    auto over_one_n = [&](int obj) { return M.size_of(obj) == 1 && M.label_of(obj) == n; };
    auto fiber_arrow = [&](int a) { return M.edge_of(a).map == PointedMap::identity(1); };
    auto id_arrow = [&](int a) { return YB.cat.is_identity(M.proj.arr[a]); };

    // Per generator, each cut rp whose rest lies over (<1>, n) with identity base arrows,
    // together with the prefix 0..rp.
    struct Cut {
        int rp;
        Simplex pre;
    };
    std::vector<std::vector<std::vector<Cut>>> cuts_n(static_cast<std::size_t>(D + 1));
    for (int l = 0; l <= D; ++l)
        for (int g = 0; g < X.count(l); ++g) {
            const auto& ar = arrows[l][g];
            const auto& ob = objects[l][g];
            std::vector<Cut> cs;
            for (int rp = -1; rp <= l; ++rp) {
                bool rest = true;
                for (int t = rp + 1; t <= l; ++t) rest = rest && over_one_n(ob[t]);
                for (int t = rp + 1; t < l; ++t) rest = rest && id_arrow(ar[t]);
                if (!rest) continue;
                std::vector<int> pos;
                for (int t = 0; t <= rp; ++t) pos.push_back(t);
                cs.push_back({rp, rp < 0 ? Simplex() : X.restrict(Simplex(l, g), pos)});
            }
            cuts_n[l].push_back(std::move(cs));
        }

    SubsetMask Fmask = F.F_second;
    int case1 = 0;
    for (std::size_t a = 0; a < F.A.size(); ++a) {
        const OperadSimplex& sp = F.A[a].simplex;
        SubsetMask Fle = Fmask;
        for (const auto& s : F.assoc[a]) {
            Simplex x = amb.simplex(s);
            add_closure(Fle, x.gen_level(), x.gen);
        }
        if (classify_group(sp, n).group != Group::G2p) {
            Fmask = Fle;
            continue;
        }
        ++case1;
        Simplex s_amb = amb.simplex(sp);
        SubsetMask Mlt = pulled(Fmask), Mle = pulled(Fle);
        std::vector<Simplex> lambda;
        for (int l = 0; l <= D; ++l)
            for (int g = 0; g < X.count(l); ++g) {
                const Simplex& h = amb_head[l][g];
                if (head_empty[l][g] || h.is_empty()) continue;
                if (h.gen_level() == s_amb.level && h.gen == s_amb.gen) lambda.push_back(Simplex(l, g));
            }
        if (opt.reverse_lambda) std::reverse(lambda.begin(), lambda.end());
        std::vector<SubsetMask> G;
        for (const auto& t : lambda) G.push_back(subset_generated(X, {t}));
        // First lambda at which each generator qualifies for the generation rule.
        std::vector<std::vector<int>> first(static_cast<std::size_t>(D + 1));
        for (int l = 0; l <= D; ++l) {
            first[l].assign(static_cast<std::size_t>(X.count(l)), -1);
            for (int g = 0; l >= 1 && g < X.count(l); ++g) {
                const auto& ar = arrows[l][g];
                const auto& ob = objects[l][g];
                std::vector<int> cuts;
                for (int pp = 0; pp < l; ++pp) {
                    if (!M.inert[ar[pp]]) continue;
                    bool rest = true;
                    for (int t = pp + 1; t <= l; ++t) rest = rest && over_one(ob[t]);
                    for (int t = pp + 1; t < l; ++t) rest = rest && fiber_arrow(ar[t]);
                    if (rest) cuts.push_back(pp);
                }
                if (cuts.empty()) continue;
                std::vector<Simplex> pres;
                for (int pp : cuts) {
                    std::vector<int> pos;
                    for (int t = 0; t <= pp; ++t) pos.push_back(t);
                    pres.push_back(X.restrict(Simplex(l, g), pos));
                }
                for (std::size_t mu = 0; mu < lambda.size() && first[l][g] < 0; ++mu)
                    for (const Simplex& pre : pres)
                        if (G[mu].member(pre)) {
                            first[l][g] = static_cast<int>(mu);
                            break;
                        }
            }
        }
        SubsetMask N = Mlt;
        std::size_t star2_bad = 0, inj_bad = 0;
        std::string w2, wi;
        for (std::size_t lam = 0; lam < lambda.size(); ++lam) {
            SubsetMask Nlt = N;
            for (int l = 1; l <= D; ++l)
                for (int g = 0; g < X.count(l); ++g)
                    if (first[l][g] == static_cast<int>(lam)) add_closure(N, l, g);
            const Simplex& tau = lambda[lam];
            const int d = tau.level;
            const auto& tob = objects[d][tau.gen];
            const auto& tar = arrows[d][tau.gen];
            const int kfin = M.size_of(tob[d]);
            // Fin* edge from vertex t of tau to its last vertex.
            std::vector<PointedMap> to_last(static_cast<std::size_t>(d + 1));
            to_last[d] = PointedMap::identity(kfin);
            for (int t = d - 1; t >= 0; --t) to_last[t] = compose(to_last[t + 1], M.edge_of(tar[t]).map);
            SubsetMask Kl(X), K0l(X);
            for (int l = 0; l <= D; ++l)
                for (int g = 0; g < X.count(l); ++g) {
                    const auto& ar = arrows[l][g];
                    int witnesses = 0;
                    bool any = false, any0 = false;
                    for (const Cut& c : cuts_n[l][g]) {
                        const int rp = c.rp;
                        if (rp < 0) {
                            any = any0 = true;
                            witnesses += kfin;
                            continue;
                        }
                        const Simplex& pre = c.pre;
                        if (!G[lam].member(pre)) continue;
                        // monotone theta : [rp] -> [d]
                        std::vector<int> theta(static_cast<std::size_t>(rp + 1), 0);
                        while (true) {
                            if (X.apply(tau, theta) == pre) {
                                bool surj = true;
                                for (int v = 0; v <= d; ++v)
                                    surj = surj && std::find(theta.begin(), theta.end(), v) != theta.end();
                                for (int i = 1; i <= kfin; ++i) {
                                    bool edge_ok = true;
                                    if (rp < l) {
                                        const TaggedEdge& e = M.edge_of(ar[rp]);
                                        edge_ok = e.map == compose(rho_map(kfin, i), to_last[theta[rp]]) &&
                                                  e.e0 == M.label_of(tob[theta[rp]]) && e.e1 == n;
                                    } else if (i > 1) {
                                        edge_ok = false;
                                    }
                                    if (!edge_ok) continue;
                                    any = true;
                                    if (!surj) any0 = true;
                                    ++witnesses;
                                }
                            }
                            int t = rp;
                            while (t >= 0 && theta[t] == d) --t;
                            if (t < 0) break;
                            int v = theta[t] + 1;
                            for (int u = t; u <= rp; ++u) theta[u] = v;
                        }
                    }
                    if (any) Kl.set(l, g);
                    if (any0) K0l.set(l, g);
                    if (l <= cmp && any && !any0 && witnesses != 1 && inj_bad++ == 0)
                        wi = "lambda=" + std::to_string(lam) + " " + X.name(l, g) + " has " +
                             std::to_string(witnesses) + " preimages";
                }
            std::string fail;
            if (!Kl.subset_up_to(N, cmp)) fail = "K not inside N_<=lambda";
            else if (!K0l.subset_up_to(Nlt, cmp)) fail = "K0 not inside N_<lambda";
            else {
                PushoutResult pr = pushout_check(K0l, Kl, Nlt, N, cmp);
                if (!pr.ok()) fail = std::string(to_string(pr.status)) + " " + pr.detail;
            }
            if (!fail.empty() && star2_bad++ == 0)
                w2 = "lambda=" + std::to_string(lam) + " (" + X.name(tau.level, tau.gen) + "): " + fail;
        }
        SubsetMask uni = Mlt | N;
        std::string tag = "a=" + std::to_string(a) + " " + sp.to_string();
        r.add("(*) " + tag + ": M_F<=a is M_F<a with every N_<=lambda (" + std::to_string(lambda.size()) +
                  " lambdas)",
              uni.equal_up_to(Mle, cmp));
        r.add("(**) " + tag + ": right square is a pushout for every lambda", star2_bad == 0, w2);
        r.add("(**) " + tag + ": K minus K0 embeds", inj_bad == 0, wi);
        Fmask = Fle;
    }
    if (case1 == 0) r.notes.push_back("no sigma'_a in G2' with associates");
    return r;
}

}  // namespace opkan
