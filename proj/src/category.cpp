#include "opkan/category.hpp"

#include <algorithm>

namespace opkan {

int FiniteCategory::add_object(std::string name) {
    int x = static_cast<int>(objects_.size());
    objects_.push_back(std::move(name));
    out_.emplace_back();
    in_.emplace_back();
    int a = static_cast<int>(arrows_.size());
    arrows_.push_back({x, x, "id_" + objects_[x]});
    ids_.push_back(a);
    pos_in_out_.push_back(static_cast<int>(out_[x].size()));
    out_[x].push_back(a);
    in_[x].push_back(a);
    comp_.emplace_back();
    return x;
}

int FiniteCategory::add_arrow(int src, int dst, std::string name) {
    if (src < 0 || src >= object_count() || dst < 0 || dst >= object_count())
        throw InvalidStructure("arrow endpoint out of range");
    int a = static_cast<int>(arrows_.size());
    arrows_.push_back({src, dst, std::move(name)});
    pos_in_out_.push_back(static_cast<int>(out_[src].size()));
    out_[src].push_back(a);
    in_[dst].push_back(a);
    comp_.emplace_back();
    guard_generators(arrows_.size(), "category arrows");
    return a;
}

void FiniteCategory::set_composite(int g, int f, int gf) {
    if (arrows_.at(f).dst != arrows_.at(g).src) throw InvalidStructure("composite of non-composable arrows");
    if (arrows_.at(gf).src != arrows_[f].src || arrows_[gf].dst != arrows_[g].dst)
        throw InvalidStructure("composite has wrong endpoints");
    auto& row = comp_[f];
    std::size_t need = out_[arrows_[f].dst].size();
    if (row.size() < need) row.resize(need, -1);
    row[pos_in_out_[g]] = gf;
}

bool FiniteCategory::has_composite(int g, int f) const {
    if (arrows_[f].dst != arrows_[g].src) return false;
    if (is_identity(f) || is_identity(g)) return true;
    const auto& row = comp_[f];
    std::size_t p = static_cast<std::size_t>(pos_in_out_[g]);
    return p < row.size() && row[p] >= 0;
}

int FiniteCategory::compose(int g, int f) const {
    if (arrows_[f].dst != arrows_[g].src)
        throw InvalidStructure("cannot compose " + arrows_[g].name + " after " + arrows_[f].name);
    if (is_identity(f)) return g;
    if (is_identity(g)) return f;
    const auto& row = comp_[f];
    std::size_t p = static_cast<std::size_t>(pos_in_out_[g]);
    if (p >= row.size() || row[p] < 0)
        throw InvalidStructure("composite " + arrows_[g].name + " o " + arrows_[f].name + " not recorded");
    return row[p];
}

std::vector<int> FiniteCategory::hom(int a, int b) const {
    std::vector<int> out;
    for (int f : out_[a])
        if (arrows_[f].dst == b) out.push_back(f);
    return out;
}

int FiniteCategory::find_object(const std::string& name) const {
    for (int x = 0; x < object_count(); ++x)
        if (objects_[x] == name) return x;
    return -1;
}

std::vector<std::string> FiniteCategory::check(std::size_t max_messages) const {
    std::vector<std::string> errs;
    auto report = [&](const std::string& s) {
        if (errs.size() < max_messages) errs.push_back(s);
    };
    for (int f = 0; f < arrow_count(); ++f)
        for (int g : out_[arrows_[f].dst])
            if (!has_composite(g, f)) report("missing composite " + arrows_[g].name + " o " + arrows_[f].name);
    if (!errs.empty()) return errs;
    for (int f = 0; f < arrow_count(); ++f) {
        for (int g : out_[arrows_[f].dst]) {
            int gf = compose(g, f);
            for (int h : out_[arrows_[g].dst]) {
                if (compose(h, gf) != compose(compose(h, g), f))
                    report("associativity fails on " + arrows_[h].name + ", " + arrows_[g].name + ", " +
                           arrows_[f].name);
            }
        }
    }
    return errs;
}

void FiniteCategory::validate() const {
    auto errs = check(1);
    if (!errs.empty()) throw InvalidStructure(errs.front());
}

std::vector<std::string> Functor::check(std::size_t max_messages) const {
    std::vector<std::string> errs;
    auto report = [&](const std::string& s) {
        if (errs.size() < max_messages) errs.push_back(s);
    };
    if (static_cast<int>(obj.size()) != source->object_count() || static_cast<int>(arr.size()) != source->arrow_count()) {
        report("functor tables have the wrong size");
        return errs;
    }
    for (int x = 0; x < source->object_count(); ++x)
        if (arr[source->id(x)] != target->id(obj[x])) report("identity of " + source->object_name(x) + " not preserved");
    for (int f = 0; f < source->arrow_count(); ++f) {
        const Arrow& a = source->arrow(f);
        const Arrow& b = target->arrow(arr[f]);
        if (b.src != obj[a.src] || b.dst != obj[a.dst]) report("endpoints of " + a.name + " not preserved");
    }
    if (!errs.empty()) return errs;
    for (int f = 0; f < source->arrow_count(); ++f)
        for (int g : source->out(source->arrow(f).dst))
            if (arr[source->compose(g, f)] != target->compose(arr[g], arr[f]))
                report("composite " + source->arrow(g).name + " o " + source->arrow(f).name + " not preserved");
    return errs;
}

FiniteCategory product_category(const FiniteCategory& A, const FiniteCategory& B) {
    FiniteCategory P;
    int nb = B.object_count();
    for (int a = 0; a < A.object_count(); ++a)
        for (int b = 0; b < nb; ++b) P.add_object("(" + A.object_name(a) + "," + B.object_name(b) + ")");
    std::vector<int> idx(static_cast<std::size_t>(A.arrow_count()) * B.arrow_count(), -1);
    for (int f = 0; f < A.arrow_count(); ++f)
        for (int g = 0; g < B.arrow_count(); ++g) {
            const Arrow& af = A.arrow(f);
            const Arrow& bg = B.arrow(g);
            int s = product_index(af.src, bg.src, nb), t = product_index(af.dst, bg.dst, nb);
            int k;
            if (A.is_identity(f) && B.is_identity(g))
                k = P.id(s);
            else
                k = P.add_arrow(s, t, "(" + af.name + "," + bg.name + ")");
            idx[product_index(f, g, B.arrow_count())] = k;
        }
    for (int f = 0; f < A.arrow_count(); ++f)
        for (int g = 0; g < B.arrow_count(); ++g) {
            int k = idx[product_index(f, g, B.arrow_count())];
            if (P.is_identity(k)) continue;
            for (int f2 : A.out(A.arrow(f).dst))
                for (int g2 : B.out(B.arrow(g).dst)) {
                    int k2 = idx[product_index(f2, g2, B.arrow_count())];
                    if (P.is_identity(k2)) continue;
                    P.set_composite(k2, k, idx[product_index(A.compose(f2, f), B.compose(g2, g), B.arrow_count())]);
                }
        }
    return P;
}

FiniteCategory pullback_category(const Functor& F, const Functor& G, PullbackInfo* info) {
    const FiniteCategory& A = *F.source;
    const FiniteCategory& B = *G.source;
    FiniteCategory P;
    PullbackInfo local;
    PullbackInfo& I = info ? *info : local;
    I = PullbackInfo{};
    std::vector<std::vector<int>> obj_index(A.object_count(), std::vector<int>(B.object_count(), -1));
    for (int a = 0; a < A.object_count(); ++a)
        for (int b = 0; b < B.object_count(); ++b)
            if (F.obj[a] == G.obj[b]) {
                obj_index[a][b] = P.add_object("(" + A.object_name(a) + "," + B.object_name(b) + ")");
                I.objects.push_back({a, b});
                I.arrows.push_back({A.id(a), B.id(b)});
            }
    std::unordered_map<long long, int> arr_index;
    auto key = [&](int f, int g) { return static_cast<long long>(f) * B.arrow_count() + g; };
    for (int a = 0; a < A.object_count(); ++a)
        for (int b = 0; b < B.object_count(); ++b) {
            int s = obj_index[a][b];
            if (s < 0) continue;
            arr_index[key(A.id(a), B.id(b))] = P.id(s);
            for (int f : A.out(a))
                for (int g : B.out(b)) {
                    if (A.is_identity(f) && B.is_identity(g)) continue;
                    if (F.arr[f] != G.arr[g]) continue;
                    int t = obj_index[A.arrow(f).dst][B.arrow(g).dst];
                    int k = P.add_arrow(s, t, "(" + A.arrow(f).name + "," + B.arrow(g).name + ")");
                    I.arrows.push_back({f, g});
                    arr_index[key(f, g)] = k;
                }
        }
    for (int k = 0; k < P.arrow_count(); ++k) {
        if (P.is_identity(k)) continue;
        auto [f, g] = I.arrows[k];
        for (int k2 : P.out(P.arrow(k).dst)) {
            if (P.is_identity(k2)) continue;
            auto [f2, g2] = I.arrows[k2];
            P.set_composite(k2, k, arr_index.at(key(A.compose(f2, f), B.compose(g2, g))));
        }
    }
    return P;
}

FiniteCategory full_subcategory(const FiniteCategory& C, const std::vector<int>& objects, std::vector<int>* arrow_map) {
    FiniteCategory S;
    std::vector<int> oi(C.object_count(), -1);
    for (int x : objects) oi[x] = S.add_object(C.object_name(x));
    std::vector<int> ai(C.arrow_count(), -1);
    for (int x : objects) {
        ai[C.id(x)] = S.id(oi[x]);
        for (int f : C.out(x)) {
            if (C.is_identity(f) || oi[C.arrow(f).dst] < 0) continue;
            ai[f] = S.add_arrow(oi[x], oi[C.arrow(f).dst], C.arrow(f).name);
        }
    }
    for (int f = 0; f < C.arrow_count(); ++f) {
        if (ai[f] < 0 || C.is_identity(f)) continue;
        for (int g : C.out(C.arrow(f).dst)) {
            if (ai[g] < 0 || C.is_identity(g)) continue;
            S.set_composite(ai[g], ai[f], ai[C.compose(g, f)]);
        }
    }
    if (arrow_map) *arrow_map = std::move(ai);
    return S;
}

FiniteCategory linear_order(int n) {
    FiniteCategory C;
    for (int i = 0; i <= n; ++i) C.add_object(std::to_string(i));
    std::vector<std::vector<int>> a(n + 1, std::vector<int>(n + 1, -1));
    for (int i = 0; i <= n; ++i) a[i][i] = C.id(i);
    for (int i = 0; i <= n; ++i)
        for (int j = i + 1; j <= n; ++j) a[i][j] = C.add_arrow(i, j, std::to_string(i) + "<" + std::to_string(j));
    for (int i = 0; i <= n; ++i)
        for (int j = i + 1; j <= n; ++j)
            for (int k = j + 1; k <= n; ++k) C.set_composite(a[j][k], a[i][j], a[i][k]);
    return C;
}

Simplex chain_simplex(const FiniteCategory& C, const NerveInfo& info, int start, const std::vector<int>& arrows) {
    std::vector<int> core;
    std::uint32_t mask = 0;
    int cur = start;
    for (std::size_t t = 0; t < arrows.size(); ++t) {
        int f = arrows[t];
        if (C.arrow(f).src != cur) throw ForeignSimplex("arrows do not form a chain");
        cur = C.arrow(f).dst;
        if (C.is_identity(f))
            mask |= 1u << t;
        else
            core.push_back(f);
    }
    int level = static_cast<int>(arrows.size());
    if (core.empty()) return Simplex(level, start, mask);
    int n = static_cast<int>(core.size());
    if (n >= static_cast<int>(info.lookup.size())) throw ForeignSimplex("chain longer than the nerve bound");
    auto it = info.lookup[n].find(core);
    if (it == info.lookup[n].end()) throw ForeignSimplex("chain not present in the nerve");
    return Simplex(level, it->second, mask);
}

std::vector<int> simplex_arrows(const FiniteCategory& C, const FiniteSimplicialSet& N, const NerveInfo& info,
                                const Simplex& x, int* start) {
    (void)N;
    int gl = x.gen_level();
    const std::vector<int>& core = info.chains[gl][x.gen];
    int s = gl == 0 ? x.gen : C.arrow(core.front()).src;
    if (start) *start = s;
    std::vector<int> out;
    std::size_t p = 0;
    int cur = s;
    for (int t = 0; t < x.level; ++t) {
        if ((x.degen >> t) & 1u) {
            out.push_back(C.id(cur));
        } else {
            out.push_back(core[p]);
            cur = C.arrow(core[p]).dst;
            ++p;
        }
    }
    return out;
}

FiniteSimplicialSet nerve(const FiniteCategory& C, int D, NerveInfo* info) {
    if (C.object_count() == 0) {
        if (info) *info = NerveInfo{};
        return FiniteSimplicialSet::empty_set();
    }
    if (D < 0) throw IndexError("nerve dimension bound must be non-negative");
    FiniteSimplicialSet N(D);
    NerveInfo local;
    NerveInfo& I = info ? *info : local;
    I = NerveInfo{};
    I.chains.resize(static_cast<std::size_t>(D + 1));
    I.lookup.resize(static_cast<std::size_t>(D + 1));
    for (int x = 0; x < C.object_count(); ++x) {
        N.add_generator(0, C.object_name(x));
        I.chains[0].push_back({});
    }
    for (int n = 1; n <= D; ++n) {
        std::size_t prev = I.chains[n - 1].size();
        for (std::size_t pg = 0; pg < prev; ++pg) {
            int last = n == 1 ? static_cast<int>(pg) : C.arrow(I.chains[n - 1][pg].back()).dst;
            for (int f : C.out(last)) {
                if (C.is_identity(f)) continue;
                std::vector<int> ch = I.chains[n - 1][pg];
                ch.push_back(f);
                int start = C.arrow(ch.front()).src;
                std::vector<Simplex> faces;
                faces.reserve(n + 1);
                for (int i = 0; i <= n; ++i) {
                    std::vector<int> fa;
                    int fs = start;
                    if (i == 0) {
                        fa.assign(ch.begin() + 1, ch.end());
                        fs = C.arrow(ch[0]).dst;
                    } else if (i == n) {
                        fa.assign(ch.begin(), ch.end() - 1);
                    } else {
                        for (int t = 0; t < n; ++t) {
                            if (t == i - 1) {
                                fa.push_back(C.compose(ch[i], ch[i - 1]));
                                ++t;
                            } else {
                                fa.push_back(ch[t]);
                            }
                        }
                    }
                    faces.push_back(chain_simplex(C, I, fs, fa));
                }
                std::string name;
                for (std::size_t t = 0; t < ch.size(); ++t) name += (t ? "|" : "") + C.arrow(ch[t]).name;
                int g = N.add_generator(n, name, faces);
                I.lookup[n][ch] = g;
                I.chains[n].push_back(std::move(ch));
            }
        }
    }
    return N;
}

SimplicialMap nerve_map(const Functor& F, const SSetPtr& NX, const NerveInfo& ix, const SSetPtr& NY,
                        const NerveInfo& iy) {
    SimplicialMap m(NX, NY);
    for (int n = 0; n <= NX->dim_bound(); ++n)
        for (int g = 0; g < NX->count(n); ++g) {
            if (n == 0) {
                m.images[0][g] = Simplex(0, F.obj[g], 0);
                continue;
            }
            const auto& ch = ix.chains[n][g];
            std::vector<int> img;
            for (int f : ch) img.push_back(F.arr[f]);
            m.images[n][g] = chain_simplex(*F.target, iy, F.obj[F.source->arrow(ch.front()).src], img);
        }
    return m;
}

bool is_cocartesian(const Functor& P, int e) {
    const FiniteCategory& E = *P.source;
    const FiniteCategory& B = *P.target;
    int X = E.arrow(e).src, Y = E.arrow(e).dst;
    int pe = P.arr[e];
    for (int Z = 0; Z < E.object_count(); ++Z) {
        // fillers k : Y -> Z keyed by (P(k), k o e)
        std::unordered_map<long long, int> fillers;
        for (int k : E.hom(Y, Z))
            ++fillers[static_cast<long long>(P.arr[k]) * E.arrow_count() + E.compose(k, e)];
        std::unordered_map<int, std::vector<int>> by_composite;
        for (int g : B.hom(P.obj[Y], P.obj[Z])) by_composite[B.compose(g, pe)].push_back(g);
        for (int h : E.hom(X, Z)) {
            auto it = by_composite.find(P.arr[h]);
            if (it == by_composite.end()) continue;
            for (int g : it->second) {
                auto f = fillers.find(static_cast<long long>(g) * E.arrow_count() + h);
                if (f == fillers.end() || f->second != 1) return false;
            }
        }
    }
    return true;
}

bool is_isomorphism(const FiniteCategory& C, int a) {
    const Arrow& f = C.arrow(a);
    for (int g : C.hom(f.dst, f.src))
        if (C.compose(g, a) == C.id(f.src) && C.compose(a, g) == C.id(f.dst)) return true;
    return false;
}

}  // namespace opkan
