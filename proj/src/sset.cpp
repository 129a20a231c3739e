#include "opkan/sset.hpp"

#include <algorithm>

namespace opkan {

std::vector<int> Simplex::degeneracies() const {
    std::vector<int> out;
    for (int t = 31; t >= 0; --t)
        if (degen & (1u << t)) out.push_back(t);
    return out;
}

Mono surjection_of(int level, std::uint32_t degen) {
    Mono eta(static_cast<std::size_t>(level + 1));
    if (level < 0) return eta;
    eta[0] = 0;
    for (int t = 0; t < level; ++t) eta[t + 1] = eta[t] + ((degen >> t) & 1u ? 0 : 1);
    return eta;
}

std::uint32_t mask_of_surjection(const Mono& eta) {
    std::uint32_t m = 0;
    for (std::size_t t = 0; t + 1 < eta.size(); ++t)
        if (eta[t] == eta[t + 1]) m |= 1u << t;
    return m;
}

Mono coface_map(int n, int i) {
    Mono m;
    for (int v = 0; v <= n; ++v)
        if (v != i) m.push_back(v);
    return m;
}

Mono codegeneracy_map(int n, int i) {
    Mono m;
    for (int v = 0; v <= n + 1; ++v) m.push_back(v <= i ? v : v - 1);
    return m;
}

Mono inclusion_of(const std::vector<int>& sorted_vertices) { return sorted_vertices; }

bool is_monotone(const Mono& m, int target_level) {
    for (std::size_t t = 0; t < m.size(); ++t) {
        if (m[t] < 0 || m[t] > target_level) return false;
        if (t > 0 && m[t] < m[t - 1]) return false;
    }
    return true;
}

namespace {


void for_each_mask(int bits, int ones, const std::function<void(std::uint32_t)>& f) {
    if (ones < 0 || ones > bits) return;
    if (ones == 0) {
        f(0);
        return;
    }
    // Gosper's hack, ascending numeric order
    std::uint32_t m = (1u << ones) - 1;
    std::uint32_t limit = bits >= 32 ? 0xffffffffu : (1u << bits);
    while (m < limit) {
        f(m);
        std::uint32_t c = m & (~m + 1);
        std::uint32_t r = m + c;
        if (r == 0) break;
        m = (((r ^ m) >> 2) / c) | r;
    }
}

}  // namespace

FiniteSimplicialSet::FiniteSimplicialSet(int dim_bound) : dim_(dim_bound) {
    if (dim_bound < -1) throw IndexError("dimension bound below -1");
    std::size_t n = static_cast<std::size_t>(dim_bound + 1);
    names_.resize(n);
    faces_.resize(n);
    verts_.resize(n);
}

int FiniteSimplicialSet::count(int level) const {
    if (level < 0 || level > dim_) return 0;
    return static_cast<int>(names_[level].size());
}

std::size_t FiniteSimplicialSet::total_generators() const { return total_; }

int FiniteSimplicialSet::add_generator(int level, std::string name, const std::vector<Simplex>& faces) {
    if (level < 0 || level > dim_) throw IndexError("generator level out of range");
    guard_generators(total_ + 1, "simplicial set");
    int g = static_cast<int>(names_[level].size());
    if (level == 0) {
        if (!faces.empty()) throw InvalidStructure("vertices take no faces");
        verts_[0].push_back(g);
    } else {
        if (static_cast<int>(faces.size()) != level + 1)
            throw InvalidStructure("generator at level " + std::to_string(level) + " needs " +
                                   std::to_string(level + 1) + " faces");
        for (const Simplex& f : faces) {
            if (f.level != level - 1 || !contains(f))
                throw ForeignSimplex("face of '" + name + "' does not name an existing simplex");
        }
        for (int i = 0; i < level; ++i) verts_[level].push_back(vertex(faces[level], i));
        verts_[level].push_back(vertex(faces[0], level - 1));
        for (const Simplex& f : faces) faces_[level].push_back(f);
    }
    names_[level].push_back(std::move(name));
    ++total_;
    return g;
}

bool FiniteSimplicialSet::contains(const Simplex& x) const {
    if (x.level < 0) return true;
    if (x.level < 31 && (x.degen >> x.level) != 0) return false;
    int gl = x.gen_level();
    if (gl < 0 || gl > dim_) return false;
    return x.gen >= 0 && x.gen < count(gl);
}

Simplex FiniteSimplicialSet::restrict_gen(int level, int g, const std::vector<int>& vertices) const {
    if (vertices.empty()) return Simplex::empty();
    if (static_cast<int>(vertices.size()) == level + 1) return Simplex(level, g, 0);
    // remove the largest missing vertex through the face table
    int missing = level;
    for (int v = level, p = static_cast<int>(vertices.size()) - 1; v >= 0; --v) {
        if (p >= 0 && vertices[p] == v) {
            --p;
            continue;
        }
        missing = v;
        break;
    }
    const Simplex& f = gen_face(level, g, missing);
    Mono theta;
    theta.reserve(vertices.size());
    for (int v : vertices) theta.push_back(v < missing ? v : v - 1);
    return apply(f, theta);
}

Simplex FiniteSimplicialSet::apply(const Simplex& x, const Mono& theta) const {
    if (theta.empty()) return Simplex::empty();
    if (x.is_empty()) throw IndexError("operator applied to the empty simplex");
    if (!is_monotone(theta, x.level)) throw IndexError("operator is not monotone into the simplex level");
    int q = static_cast<int>(theta.size()) - 1;
    Mono eta = surjection_of(x.level, x.degen);
    Mono psi(theta.size());
    for (std::size_t t = 0; t < theta.size(); ++t) psi[t] = eta[theta[t]];
    std::vector<int> image;
    for (int v : psi)
        if (image.empty() || image.back() != v) image.push_back(v);
    Simplex r = restrict_gen(x.gen_level(), x.gen, image);
    // compose the surjection of r with [q] -> image
    Mono eta_r = surjection_of(r.level, r.degen);
    Mono comp(theta.size());
    int pos = 0;
    for (std::size_t t = 0; t < psi.size(); ++t) {
        if (t > 0 && psi[t] != psi[t - 1]) ++pos;
        comp[t] = eta_r[pos];
    }
    return Simplex(q, r.gen, mask_of_surjection(comp));
}

Simplex FiniteSimplicialSet::face(const Simplex& x, int i) const {
    if (x.level < 1 || i < 0 || i > x.level) throw IndexError("face index out of range");
    return apply(x, coface_map(x.level, i));
}

Simplex FiniteSimplicialSet::degeneracy(const Simplex& x, int i) const {
    if (x.level < 0 || i < 0 || i > x.level) throw IndexError("degeneracy index out of range");
    if (x.level + 1 >= 32) throw IndexError("degeneracy exceeds supported level");
    return apply(x, codegeneracy_map(x.level, i));
}

Simplex FiniteSimplicialSet::degenerate_by(const Simplex& x, std::uint32_t mask, int new_level) const {
    Mono eta = surjection_of(new_level, mask);
    if (eta.back() != x.level) throw IndexError("degeneracy mask does not land on the simplex level");
    return apply(x, eta);
}

Simplex FiniteSimplicialSet::normalize(int level, int gen, const std::vector<Op>& word) const {
    Simplex x(level, gen, 0);
    if (!contains(x)) throw ForeignSimplex("generator does not exist");
    for (auto it = word.rbegin(); it != word.rend(); ++it) {
        if (it->kind == 'd') {
            if (x.level < 1 || it->index < 0 || it->index > x.level)
                throw MalformedWord("d" + std::to_string(it->index) + " applied at level " +
                                    std::to_string(x.level));
            x = face(x, it->index);
        } else if (it->kind == 's') {
            if (it->index < 0 || it->index > x.level || x.level + 1 >= 32)
                throw MalformedWord("s" + std::to_string(it->index) + " applied at level " +
                                    std::to_string(x.level));
            x = degeneracy(x, it->index);
        } else {
            throw MalformedWord(std::string("unknown operator symbol '") + it->kind + "'");
        }
    }
    return x;
}

Simplex FiniteSimplicialSet::restrict(const Simplex& x, const std::vector<int>& vertices) const {
    if (vertices.empty()) return Simplex::empty();
    return apply(x, inclusion_of(vertices));
}

int FiniteSimplicialSet::vertex(const Simplex& x, int i) const {
    if (x.is_empty() || i < 0 || i > x.level) throw IndexError("vertex index out of range");
    Mono eta = surjection_of(x.level, x.degen);
    return gen_vertices(x.gen_level(), x.gen)[eta[i]];
}

std::vector<int> FiniteSimplicialSet::vertices(const Simplex& x) const {
    std::vector<int> out;
    if (x.is_empty()) return out;
    Mono eta = surjection_of(x.level, x.degen);
    const int* gv = gen_vertices(x.gen_level(), x.gen);
    for (int t = 0; t <= x.level; ++t) out.push_back(gv[eta[t]]);
    return out;
}

void FiniteSimplicialSet::for_each_simplex(int level, const std::function<void(const Simplex&)>& f) const {
    if (level < 0) return;
    for (int gl = 0; gl <= std::min(level, dim_); ++gl) {
        int c = count(gl);
        if (c == 0) continue;
        for_each_mask(level, level - gl, [&](std::uint32_t m) {
            for (int g = 0; g < c; ++g) f(Simplex(level, g, m));
        });
    }
}

std::size_t FiniteSimplicialSet::simplex_count(int level) const {
    std::size_t n = 0;
    for_each_simplex(level, [&](const Simplex&) { ++n; });
    return n;
}

std::vector<std::string> FiniteSimplicialSet::check(bool mixed, std::size_t max_messages) const {
    std::vector<std::string> errs;
    auto report = [&](const std::string& s) {
        if (errs.size() < max_messages) errs.push_back(s);
    };
    for (int n = 1; n <= dim_; ++n) {
        for (int g = 0; g < count(n); ++g) {
            for (int i = 0; i <= n; ++i) {
                const Simplex& f = gen_face(n, g, i);
                if (f.level != n - 1 || !contains(f))
                    report("face d" + std::to_string(i) + " of " + names_[n][g] + " is not a simplex");
            }
        }
    }
    if (!errs.empty()) return errs;
    for (int n = 2; n <= dim_; ++n) {
        for (int g = 0; g < count(n); ++g) {
            Simplex x(n, g, 0);
            for (int j = 1; j <= n; ++j) {
                for (int i = 0; i < j; ++i) {
                    Simplex a = face(gen_face(n, g, j), i);
                    Simplex b = face(gen_face(n, g, i), j - 1);
                    if (a != b)
                        report("d" + std::to_string(i) + "d" + std::to_string(j) + " != d" +
                               std::to_string(j - 1) + "d" + std::to_string(i) + " on " + names_[n][g]);
                }
            }
            (void)x;
        }
    }
    if (!mixed) return errs;
    for (int n = 0; n <= dim_; ++n) {
        for (int g = 0; g < count(n); ++g) {
            Simplex x(n, g, 0);
            for (int j = 0; j <= n; ++j) {
                Simplex sx = degeneracy(x, j);
                for (int i = 0; i <= n + 1; ++i) {
                    Simplex lhs = face(sx, i);
                    Simplex rhs;
                    if (i < j)
                        rhs = degeneracy(face(x, i), j - 1);
                    else if (i == j || i == j + 1)
                        rhs = x;
                    else
                        rhs = degeneracy(face(x, i - 1), j);
                    if (lhs != rhs)
                        report("mixed identity d" + std::to_string(i) + "s" + std::to_string(j) +
                               " fails on " + names_[n][g]);
                }
                for (int i = 0; i <= j; ++i) {
                    Simplex a = degeneracy(sx, i);
                    Simplex b = degeneracy(degeneracy(x, i), j + 1);
                    if (a != b)
                        report("s" + std::to_string(i) + "s" + std::to_string(j) + " identity fails on " +
                               names_[n][g]);
                }
            }
        }
    }
    return errs;
}

void FiniteSimplicialSet::validate(bool mixed) const {
    auto errs = check(mixed, 1);
    if (!errs.empty()) throw InvalidStructure(errs.front());
}

std::string FiniteSimplicialSet::simplex_name(const Simplex& x) const {
    if (x.is_empty()) return "()";
    std::string out;
    for (int t : x.degeneracies()) out += "s" + std::to_string(t);
    if (!out.empty()) out += " ";
    return out + names_[x.gen_level()][x.gen];
}

SimplicialMap::SimplicialMap(SSetPtr s, SSetPtr t) : source(std::move(s)), target(std::move(t)) {
    images.resize(static_cast<std::size_t>(source->dim_bound() + 1));
    for (int n = 0; n <= source->dim_bound(); ++n) images[n].assign(source->count(n), Simplex(n, 0, 0));
}

Simplex SimplicialMap::operator()(const Simplex& x) const {
    if (x.is_empty()) return x;
    if (!source->contains(x)) throw ForeignSimplex("simplex not in the map's source");
    const Simplex& img = images[x.gen_level()][x.gen];
    if (x.degen == 0) return img;
    return target->apply(img, surjection_of(x.level, x.degen));
}

std::vector<std::string> SimplicialMap::check(std::size_t max_messages) const {
    std::vector<std::string> errs;
    auto report = [&](const std::string& s) {
        if (errs.size() < max_messages) errs.push_back(s);
    };
    for (int n = 0; n <= source->dim_bound(); ++n) {
        for (int g = 0; g < source->count(n); ++g) {
            const Simplex& img = images[n][g];
            if (img.level != n || !target->contains(img)) {
                report("image of " + source->name(n, g) + " is not a simplex of the target at level " +
                       std::to_string(n));
                continue;
            }
            for (int i = 0; n > 0 && i <= n; ++i) {
                Simplex a = target->face(img, i);
                Simplex b = (*this)(source->gen_face(n, g, i));
                if (a != b) report("map does not commute with d" + std::to_string(i) + " on " + source->name(n, g));
            }
        }
    }
    return errs;
}

SubsetMask::SubsetMask(const FiniteSimplicialSet& parent, bool full) : parent_(&parent) {
    bits_.resize(static_cast<std::size_t>(parent.dim_bound() + 1));
    for (int n = 0; n <= parent.dim_bound(); ++n) bits_[n].assign(parent.count(n), full ? 1 : 0);
}

bool SubsetMask::member(const Simplex& x) const {
    if (x.is_empty()) return true;
    int gl = x.gen_level();
    if (gl < 0 || gl >= levels()) return false;
    if (x.gen < 0 || x.gen >= static_cast<int>(bits_[gl].size())) return false;
    return bits_[gl][x.gen] != 0;
}

std::size_t SubsetMask::count(int level) const {
    if (level < 0 || level >= levels()) return 0;
    return static_cast<std::size_t>(std::count(bits_[level].begin(), bits_[level].end(), 1));
}

std::size_t SubsetMask::count() const {
    std::size_t n = 0;
    for (int l = 0; l < levels(); ++l) n += count(l);
    return n;
}

void SubsetMask::close() {
    for (int n = levels() - 1; n >= 1; --n) {
        for (std::size_t g = 0; g < bits_[n].size(); ++g) {
            if (!bits_[n][g]) continue;
            for (int i = 0; i <= n; ++i) {
                const Simplex& f = parent_->gen_face(n, static_cast<int>(g), i);
                bits_[f.gen_level()][f.gen] = 1;
            }
        }
    }
}

bool SubsetMask::face_closed() const {
    for (int n = 1; n < levels(); ++n)
        for (std::size_t g = 0; g < bits_[n].size(); ++g) {
            if (!bits_[n][g]) continue;
            for (int i = 0; i <= n; ++i)
                if (!member(parent_->gen_face(n, static_cast<int>(g), i))) return false;
        }
    return true;
}

bool SubsetMask::subset_of(const SubsetMask& o) const { return subset_up_to(o, levels() - 1); }

bool SubsetMask::subset_up_to(const SubsetMask& o, int max_level) const {
    for (int n = 0; n <= max_level && n < levels(); ++n)
        for (std::size_t g = 0; g < bits_[n].size(); ++g)
            if (bits_[n][g] && !o.bits_[n][g]) return false;
    return true;
}

bool SubsetMask::equal_up_to(const SubsetMask& o, int max_level) const {
    for (int n = 0; n <= max_level && n < levels(); ++n)
        if (bits_[n] != o.bits_[n]) return false;
    return true;
}

SubsetMask SubsetMask::operator|(const SubsetMask& o) const {
    SubsetMask r = *this;
    r |= o;
    return r;
}

SubsetMask& SubsetMask::operator|=(const SubsetMask& o) {
    for (int n = 0; n < levels(); ++n)
        for (std::size_t g = 0; g < bits_[n].size(); ++g) bits_[n][g] = bits_[n][g] | o.bits_[n][g];
    return *this;
}

SubsetMask SubsetMask::operator&(const SubsetMask& o) const {
    SubsetMask r = *this;
    for (int n = 0; n < levels(); ++n)
        for (std::size_t g = 0; g < r.bits_[n].size(); ++g) r.bits_[n][g] = bits_[n][g] & o.bits_[n][g];
    return r;
}

SubsetMask subset_generated(const FiniteSimplicialSet& X, const std::vector<Simplex>& seeds) {
    SubsetMask m(X);
    for (const Simplex& s : seeds) {
        if (!X.contains(s)) throw ForeignSimplex("seed is not a simplex of the parent set");
        if (s.is_empty()) continue;
        m.set(s.gen_level(), s.gen);
    }
    m.close();
    return m;
}

bool member(const SubsetMask& mask, const Simplex& x) {
    if (!mask.parent().contains(x)) throw ForeignSimplex("simplex not in the parent set");
    return mask.member(x);
}

SubsetMask full_subset_on_vertices(const FiniteSimplicialSet& X, const std::vector<int>& vertex_gens) {
    std::vector<char> ok(X.count(0), 0);
    for (int v : vertex_gens) {
        if (v < 0 || v >= X.count(0)) throw ForeignSimplex("vertex out of range");
        ok[v] = 1;
    }
    SubsetMask m(X);
    for (int n = 0; n <= X.dim_bound(); ++n)
        for (int g = 0; g < X.count(n); ++g) {
            const int* vs = X.gen_vertices(n, g);
            bool in = true;
            for (int t = 0; t <= n && in; ++t) in = ok[vs[t]] != 0;
            if (in) m.set(n, g);
        }
    return m;
}

const char* to_string(PushoutStatus s) {
    switch (s) {
        case PushoutStatus::Pushout: return "pushout";
        case PushoutStatus::NotPushout: return "not a pushout";
        case PushoutStatus::InclusionViolation: return "inclusion violation";
    }
    return "?";
}

PushoutResult pushout_check(const SubsetMask& A, const SubsetMask& B, const SubsetMask& C,
                            const SubsetMask& D, int max_level) {
    if (&A.parent() != &B.parent() || &A.parent() != &C.parent() || &A.parent() != &D.parent())
        throw ForeignSimplex("pushout square masks live in different simplicial sets");
    int top = max_level < 0 ? A.levels() - 1 : max_level;
    if (!A.subset_up_to(B, top)) return {PushoutStatus::InclusionViolation, "A is not contained in B"};
    if (!A.subset_up_to(C, top)) return {PushoutStatus::InclusionViolation, "A is not contained in C"};
    if (!B.subset_up_to(D, top)) return {PushoutStatus::InclusionViolation, "B is not contained in D"};
    if (!C.subset_up_to(D, top)) return {PushoutStatus::InclusionViolation, "C is not contained in D"};
    SubsetMask u = B | C;
    SubsetMask i = B & C;
    for (int n = 0; n <= top && n < A.levels(); ++n) {
        for (int g = 0; g < A.parent().count(n); ++g) {
            if (D.member_gen(n, g) != u.member_gen(n, g))
                return {PushoutStatus::NotPushout,
                        "D differs from B u C at " + A.parent().name(n, g)};
            if (A.member_gen(n, g) != i.member_gen(n, g))
                return {PushoutStatus::NotPushout,
                        "A differs from B n C at " + A.parent().name(n, g)};
        }
    }
    return {PushoutStatus::Pushout, ""};
}

FiniteSimplicialSet restrict_to(const SubsetMask& mask, std::vector<std::vector<int>>* index_map) {
    const FiniteSimplicialSet& X = mask.parent();
    int top = -1;
    for (int n = 0; n < mask.levels(); ++n)
        if (mask.count(n) > 0) top = n;
    FiniteSimplicialSet out(top);
    std::vector<std::vector<int>> idx(static_cast<std::size_t>(X.dim_bound() + 1));
    for (int n = 0; n <= X.dim_bound(); ++n) idx[n].assign(X.count(n), -1);
    for (int n = 0; n <= top; ++n) {
        for (int g = 0; g < X.count(n); ++g) {
            if (!mask.member_gen(n, g)) continue;
            std::vector<Simplex> faces;
            for (int i = 0; n > 0 && i <= n; ++i) {
                Simplex f = X.gen_face(n, g, i);
                f.gen = idx[f.gen_level()][f.gen];
                if (f.gen < 0) throw InvalidStructure("mask is not face-closed");
                faces.push_back(f);
            }
            idx[n][g] = out.add_generator(n, X.name(n, g), faces);
        }
    }
    if (index_map) *index_map = std::move(idx);
    return out;
}

namespace {

std::vector<std::vector<int>> combinations(int n, int k) {
    std::vector<std::vector<int>> out;
    std::vector<int> cur;
    std::function<void(int)> rec = [&](int start) {
        if (static_cast<int>(cur.size()) == k) {
            out.push_back(cur);
            return;
        }
        for (int v = start; v <= n; ++v) {
            cur.push_back(v);
            rec(v + 1);
            cur.pop_back();
        }
    };
    rec(0);
    return out;
}

std::string vertex_list_name(const std::vector<int>& vs, int n) {
    std::string s;
    for (std::size_t t = 0; t < vs.size(); ++t) {
        if (t > 0 && n >= 10) s += ",";
        s += std::to_string(vs[t]);
    }
    return s;
}

}  // namespace

FiniteSimplicialSet standard_simplex(int n) {
    FiniteSimplicialSet X(n);
    for (int k = 0; k <= n; ++k) {
        for (const auto& c : combinations(n, k + 1)) {
            std::vector<Simplex> faces;
            for (int i = 0; k > 0 && i <= k; ++i) {
                std::vector<int> f = c;
                f.erase(f.begin() + i);
                faces.push_back(simplex_with_vertices(n, f));
            }
            X.add_generator(k, vertex_list_name(c, n), faces);
        }
    }
    return X;
}

Simplex simplex_with_vertices(int n, const std::vector<int>& vertices) {
    if (vertices.empty()) return Simplex::empty();
    std::vector<int> distinct;
    std::uint32_t mask = 0;
    for (std::size_t t = 0; t < vertices.size(); ++t) {
        if (vertices[t] < 0 || vertices[t] > n) throw IndexError("vertex out of range");
        if (t > 0 && vertices[t] < vertices[t - 1]) throw IndexError("vertex list is not monotone");
        if (t > 0 && vertices[t] == vertices[t - 1])
            mask |= 1u << (t - 1);
        else
            distinct.push_back(vertices[t]);
    }
    auto combos = combinations(n, static_cast<int>(distinct.size()));
    auto it = std::lower_bound(combos.begin(), combos.end(), distinct);
    return Simplex(static_cast<int>(vertices.size()) - 1, static_cast<int>(it - combos.begin()), mask);
}

SubsetMask boundary_mask(const FiniteSimplicialSet& delta_n) {
    SubsetMask m(delta_n, true);
    int n = delta_n.dim_bound();
    if (n >= 0) m.set(n, 0, false);
    return m;
}

SubsetMask horn_mask(const FiniteSimplicialSet& delta_n, int k) {
    SubsetMask m = boundary_mask(delta_n);
    int n = delta_n.dim_bound();
    if (k < 0 || k > n || n < 1) throw IndexError("horn index out of range");
    Simplex f = delta_n.gen_face(n, 0, k);
    m.set(f.gen_level(), f.gen, false);
    return m;
}

FiniteSimplicialSet point() { return standard_simplex(0); }

Simplex product_simplex(const FiniteSimplicialSet& P, const ProductInfo& info, const FiniteSimplicialSet& X,
                        const FiniteSimplicialSet& Y, const Simplex& x, const Simplex& y) {
    (void)P;
    if (x.level != y.level) throw IndexError("product components at different levels");
    std::uint32_t common = x.degen & y.degen;
    if (common == 0) {
        auto it = info.lookup.find({x, y});
        if (it == info.lookup.end()) throw ForeignSimplex("pair is not a product simplex");
        return Simplex(x.level, it->second, 0);
    }
    Mono eta = surjection_of(x.level, common);
    std::vector<int> reps;
    for (int t = 0; t <= x.level; ++t)
        if (t == 0 || eta[t] != eta[t - 1]) reps.push_back(t);
    Simplex xc = X.restrict(x, reps);
    Simplex yc = Y.restrict(y, reps);
    auto it = info.lookup.find({xc, yc});
    if (it == info.lookup.end()) throw ForeignSimplex("pair is not a product simplex");
    return Simplex(x.level, it->second, common);
}

FiniteSimplicialSet product(const FiniteSimplicialSet& X, const FiniteSimplicialSet& Y, ProductInfo* info) {
    int dx = X.dim_bound(), dy = Y.dim_bound();
    if (dx < 0 || dy < 0) {
        if (info) *info = ProductInfo{};
        return FiniteSimplicialSet::empty_set();
    }
    FiniteSimplicialSet P(dx + dy);
    ProductInfo local;
    ProductInfo& I = info ? *info : local;
    I = ProductInfo{};
    I.components.resize(static_cast<std::size_t>(dx + dy + 1));
    for (int n = 0; n <= dx + dy; ++n) {
        for (int a = 0; a <= std::min(n, dx); ++a) {
            for (int b = std::max(0, n - a); b <= std::min(n, dy); ++b) {
                for_each_mask(n, n - a, [&](std::uint32_t jx) {
                    for_each_mask(n, n - b, [&](std::uint32_t jy) {
                        if (jx & jy) return;
                        for (int gx = 0; gx < X.count(a); ++gx) {
                            for (int gy = 0; gy < Y.count(b); ++gy) {
                                Simplex x(n, gx, jx), y(n, gy, jy);
                                std::vector<Simplex> faces;
                                for (int i = 0; n > 0 && i <= n; ++i)
                                    faces.push_back(product_simplex(P, I, X, Y, X.face(x, i), Y.face(y, i)));
                                int g = P.add_generator(n, "(" + X.simplex_name(x) + "," + Y.simplex_name(y) + ")",
                                                        faces);
                                I.components[n].push_back({x, y});
                                I.lookup[{x, y}] = g;
                            }
                        }
                    });
                });
            }
        }
    }
    return P;
}

namespace {

int pair_offset(const JoinInfo& I, int n, int p) {
    int base = (n < static_cast<int>(I.x_counts.size()) ? I.x_counts[n] : 0) +
               (n < static_cast<int>(I.y_counts.size()) ? I.y_counts[n] : 0);
    for (int pp = 0; pp < p; ++pp) {
        int qq = n - 1 - pp;
        int cx = pp < static_cast<int>(I.x_counts.size()) ? I.x_counts[pp] : 0;
        int cy = qq < static_cast<int>(I.y_counts.size()) ? I.y_counts[qq] : 0;
        base += cx * cy;
    }
    return base;
}

}  // namespace

Simplex join_simplex(const JoinInfo& info, const FiniteSimplicialSet& X, const FiniteSimplicialSet& Y,
                     const Simplex& x, const Simplex& y) {
    (void)X;
    (void)Y;
    if (x.is_empty() && y.is_empty()) return Simplex::empty();
    if (y.is_empty()) return x;
    if (x.is_empty()) {
        int gl = y.gen_level();
        int off = gl < static_cast<int>(info.x_counts.size()) ? info.x_counts[gl] : 0;
        return Simplex(y.level, off + y.gen, y.degen);
    }
    int p = x.level, q = y.level;
    int gp = x.gen_level(), gq = y.gen_level();
    int n = gp + gq + 1;
    int cy = gq < static_cast<int>(info.y_counts.size()) ? info.y_counts[gq] : 0;
    int idx = pair_offset(info, n, gp) + x.gen * cy + y.gen;
    std::uint32_t mask = x.degen | (y.degen << (p + 1));
    return Simplex(p + q + 1, idx, mask);
}

FiniteSimplicialSet join(const FiniteSimplicialSet& X, const FiniteSimplicialSet& Y, JoinInfo* info) {
    int dx = X.dim_bound(), dy = Y.dim_bound();
    int d = std::max(dx, dy);
    if (dx >= 0 && dy >= 0) d = std::max(d, dx + dy + 1);
    FiniteSimplicialSet J(d);
    JoinInfo local;
    JoinInfo& I = info ? *info : local;
    I = JoinInfo{};
    I.x_dim = dx;
    I.y_dim = dy;
    for (int n = 0; n <= dx; ++n) I.x_counts.push_back(X.count(n));
    for (int n = 0; n <= dy; ++n) I.y_counts.push_back(Y.count(n));
    I.parts.resize(static_cast<std::size_t>(d + 1));
    for (int n = 0; n <= d; ++n) {
        for (int g = 0; g < X.count(n); ++g) {
            std::vector<Simplex> faces;
            for (int i = 0; n > 0 && i <= n; ++i) faces.push_back(X.gen_face(n, g, i));
            J.add_generator(n, X.name(n, g), faces);
            I.parts[n].push_back({JoinInfo::Left, n, g, -1, -1});
        }
        for (int g = 0; g < Y.count(n); ++g) {
            std::vector<Simplex> faces;
            for (int i = 0; n > 0 && i <= n; ++i)
                faces.push_back(join_simplex(I, X, Y, Simplex::empty(), Y.gen_face(n, g, i)));
            J.add_generator(n, Y.name(n, g), faces);
            I.parts[n].push_back({JoinInfo::Right, -1, -1, n, g});
        }
        for (int p = 0; p <= n - 1; ++p) {
            int q = n - 1 - p;
            for (int gx = 0; gx < X.count(p); ++gx) {
                for (int gy = 0; gy < Y.count(q); ++gy) {
                    Simplex x(p, gx, 0), y(q, gy, 0);
                    std::vector<Simplex> faces;
                    for (int i = 0; i <= n; ++i) {
                        if (i <= p)
                            faces.push_back(p == 0 ? join_simplex(I, X, Y, Simplex::empty(), y)
                                                   : join_simplex(I, X, Y, X.face(x, i), y));
                        else
                            faces.push_back(q == 0 ? join_simplex(I, X, Y, x, Simplex::empty())
                                                   : join_simplex(I, X, Y, x, Y.face(y, i - p - 1)));
                    }
                    J.add_generator(n, X.name(p, gx) + "*" + Y.name(q, gy), faces);
                    I.parts[n].push_back({JoinInfo::Pair, p, gx, q, gy});
                }
            }
        }
    }
    return J;
}

FiniteSimplicialSet cone_right(const FiniteSimplicialSet& X, JoinInfo* info) {
    FiniteSimplicialSet pt(0);
    pt.add_generator(0, "∞");
    return join(X, pt, info);
}

Simplex cone_point(const FiniteSimplicialSet& cone) {
    for (int g = cone.count(0) - 1; g >= 0; --g)
        if (cone.name(0, g) == "∞") return Simplex(0, g, 0);
    throw ForeignSimplex("set has no cone point");
}

Simplex slice_simplex(const FiniteSimplicialSet& X, const SliceInfo& info, const Simplex& y) {
    int m = info.base.level;
    int k = y.level - m - 1;
    if (k < 0) throw IndexError("simplex too short for the slice");
    std::uint32_t low = k >= 1 ? (y.degen & ((1u << k) - 1)) : 0;
    Simplex core = y;
    if (low) {
        std::vector<int> keep;
        for (int t = 0; t <= y.level; ++t)
            if (!(t >= 1 && t <= k && ((low >> (t - 1)) & 1u))) keep.push_back(t);
        core = X.restrict(y, keep);
    }
    auto it = info.lookup.find(core);
    if (it == info.lookup.end()) throw ForeignSimplex("simplex does not lie in the slice");
    return Simplex(k, it->second, low);
}

FiniteSimplicialSet slice_over(const FiniteSimplicialSet& X, const Simplex& sigma, int bound, SliceInfo* info) {
    if (bound < 0) throw IndexError("slice bound must be non-negative");
    if (sigma.is_empty() || !X.contains(sigma)) throw ForeignSimplex("slice base is not a simplex");
    int m = sigma.level;
    FiniteSimplicialSet S(bound);
    SliceInfo local;
    SliceInfo& I = info ? *info : local;
    I = SliceInfo{};
    I.base = sigma;
    I.witness.resize(static_cast<std::size_t>(bound + 1));
    for (int k = 0; k <= bound; ++k) {
        int L = k + m + 1;
        if (L >= 31) throw ResourceLimit("slice level exceeds supported simplex level");
        std::vector<int> tailv;
        for (int t = k + 1; t <= L; ++t) tailv.push_back(t);
        std::uint32_t lowmask = k >= 1 ? ((1u << k) - 1) : 0;
        X.for_each_simplex(L, [&](const Simplex& y) {
            if (y.degen & lowmask) return;
            if (X.restrict(y, tailv) != sigma) return;
            std::vector<Simplex> faces;
            for (int i = 0; k > 0 && i <= k; ++i) faces.push_back(slice_simplex(X, I, X.face(y, i)));
            int g = S.add_generator(k, X.simplex_name(y), faces);
            I.witness[k].push_back(y);
            I.lookup[y] = g;
        });
    }
    return S;
}

std::vector<int> head_positions(const FiniteSimplicialSet& X, const Simplex& x, const OverInterval& u) {
    std::vector<int> out;
    if (x.is_empty()) return out;
    auto vs = X.vertices(x);
    for (int t = 0; t <= x.level; ++t)
        if (u.side.at(vs[t]) == 1) out.push_back(t);
    return out;
}

Simplex head(const FiniteSimplicialSet& X, const Simplex& x, const OverInterval& u) {
    return X.restrict(x, head_positions(X, x, u));
}

Simplex tail(const FiniteSimplicialSet& X, const Simplex& x, const OverInterval& u) {
    std::vector<int> pos;
    if (x.is_empty()) return x;
    auto vs = X.vertices(x);
    for (int t = 0; t <= x.level; ++t)
        if (u.side.at(vs[t]) == 0) pos.push_back(t);
    return X.restrict(x, pos);
}

}  // namespace opkan
