#include "opkan/io.hpp"

#include <fstream>
#include <sstream>

namespace opkan {

namespace {

const ojson& field(const ojson& j, const char* key, const std::string& where) {
    if (!j.is_object()) throw InvalidStructure(where + ": expected an object");
    auto it = j.find(key);
    if (it == j.end()) throw InvalidStructure(where + ": missing field '" + key + "'");
    return *it;
}

const ojson& array_field(const ojson& j, const char* key, const std::string& where) {
    const ojson& a = field(j, key, where);
    if (!a.is_array()) throw InvalidStructure(where + "." + key + ": expected an array");
    return a;
}

int int_field(const ojson& j, const char* key, const std::string& where) {
    const ojson& v = field(j, key, where);
    if (!v.is_number_integer()) throw InvalidStructure(where + "." + key + ": expected an integer");
    return v.get<int>();
}

int as_int(const ojson& v, const std::string& where) {
    if (!v.is_number_integer()) throw InvalidStructure(where + ": expected an integer");
    return v.get<int>();
}

std::vector<int> int_list(const ojson& a, const std::string& where) {
    if (!a.is_array()) throw InvalidStructure(where + ": expected an array");
    std::vector<int> out;
    for (std::size_t i = 0; i < a.size(); ++i) out.push_back(as_int(a[i], where + "[" + std::to_string(i) + "]"));
    return out;
}

Simplex simplex_at(const ojson& j, const std::string& where) {
    try {
        return simplex_from_json(j);
    } catch (const InvalidStructure& e) {
        throw InvalidStructure(where + ": " + e.what());
    }
}

ojson side_json(const OverInterval& u) { return ojson(u.side); }

template <class T, class Import>
std::string compare_roundtrip(const T& x, Import import) {
    std::string a = export_text(x);
    std::string b;
    try {
        b = export_text(import(parse_text(a)));
    } catch (const Error& e) {
        return std::string("re-import failed: ") + e.what();
    }
    if (a == b) return "";
    std::size_t i = 0;
    while (i < a.size() && i < b.size() && a[i] == b[i]) ++i;
    return "exports differ at byte " + std::to_string(i);
}

}  // namespace

ojson parse_text(const std::string& text) {
    try {
        return ojson::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        std::size_t line = 1, column = 1;
        std::size_t end = std::min<std::size_t>(e.byte == 0 ? 0 : e.byte - 1, text.size());
        for (std::size_t i = 0; i < end; ++i) {
            if (text[i] == '\n') {
                ++line;
                column = 1;
            } else {
                ++column;
            }
        }
        throw ParseError("malformed structured text", line, column);
    }
}

std::string canonical_text(const ojson& j) { return j.dump(2) + "\n"; }

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot write " + path);
    out << text;
}

ojson to_json(const Simplex& s) {
    ojson j;
    j["level"] = s.level;
    j["gen"] = s.gen;
    j["degens"] = s.is_empty() ? std::vector<int>{} : s.degeneracies();
    return j;
}

Simplex simplex_from_json(const ojson& j) {
    int level = int_field(j, "level", "simplex");
    int gen = int_field(j, "gen", "simplex");
    std::vector<int> word = int_list(array_field(j, "degens", "simplex"), "simplex.degens");
    if (level < 0) return Simplex::empty();
    std::uint32_t mask = 0;
    for (std::size_t i = 0; i < word.size(); ++i) {
        if (word[i] < 0 || word[i] >= 31 || (i > 0 && word[i] >= word[i - 1]))
            throw InvalidStructure("simplex.degens: expected a strictly decreasing word");
        mask |= 1u << word[i];
    }
    Simplex s(level, gen, mask);
    if (s.gen_level() < 0) throw InvalidStructure("simplex.degens: too many degeneracies");
    return s;
}

ojson to_json(const FiniteSimplicialSet& X) {
    ojson j;
    j["dim_bound"] = X.dim_bound();
    ojson levels = ojson::array(), faces = ojson::array();
    for (int l = 0; l <= X.dim_bound(); ++l) {
        ojson names = ojson::array(), lf = ojson::array();
        for (int g = 0; g < X.count(l); ++g) {
            names.push_back(X.name(l, g));
            ojson fs = ojson::array();
            for (int i = 0; l > 0 && i <= l; ++i) fs.push_back(to_json(X.gen_face(l, g, i)));
            lf.push_back(std::move(fs));
        }
        levels.push_back(std::move(names));
        faces.push_back(std::move(lf));
    }
    j["levels"] = std::move(levels);
    j["faces"] = std::move(faces);
    return j;
}

FiniteSimplicialSet sset_from_json(const ojson& j) {
    int dim = int_field(j, "dim_bound", "sset");
    const ojson& levels = array_field(j, "levels", "sset");
    const ojson& faces = array_field(j, "faces", "sset");
    if (dim < -1) throw InvalidStructure("sset.dim_bound: must be at least -1");
    if (levels.size() != static_cast<std::size_t>(dim + 1) || faces.size() != levels.size())
        throw InvalidStructure("sset: levels and faces must have dim_bound + 1 entries");
    FiniteSimplicialSet X(dim);
    for (int l = 0; l <= dim; ++l) {
        const ojson& names = levels[l];
        const ojson& lf = faces[l];
        std::string where = "sset.faces[" + std::to_string(l) + "]";
        if (!names.is_array() || !lf.is_array() || names.size() != lf.size())
            throw InvalidStructure(where + ": one face list per generator expected");
        for (std::size_t g = 0; g < names.size(); ++g) {
            if (!names[g].is_string()) throw InvalidStructure("sset.levels: names must be strings");
            std::vector<Simplex> fs;
            const ojson& fl = lf[g];
            if (!fl.is_array() || fl.size() != static_cast<std::size_t>(l == 0 ? 0 : l + 1))
                throw InvalidStructure(where + "[" + std::to_string(g) + "]: wrong number of faces");
            for (std::size_t i = 0; i < fl.size(); ++i) {
                Simplex f = simplex_at(fl[i], where);
                if (f.level != l - 1 || !X.contains(f))
                    throw InvalidStructure(where + "[" + std::to_string(g) + "]: face " + std::to_string(i) +
                                           " does not name an earlier simplex");
                fs.push_back(f);
            }
            X.add_generator(l, names[g].get<std::string>(), fs);
        }
    }
    auto problems = X.check(true, 1);
    if (!problems.empty()) throw InvalidStructure("sset: " + problems.front());
    return X;
}

int arrow_reference(const FiniteCategory& C, int a) {
    if (C.is_identity(a)) return -1 - C.arrow(a).src;
    int p = 0;
    for (int b = 0; b < a; ++b)
        if (!C.is_identity(b)) ++p;
    return p;
}

int canonical_arrow_index(const FiniteCategory& C, int a) {
    if (C.is_identity(a)) return C.arrow(a).src;
    return C.object_count() + arrow_reference(C, a);
}

ojson to_json(const FiniteCategory& C) {
    ojson j;
    ojson objects = ojson::array();
    for (int x = 0; x < C.object_count(); ++x) objects.push_back(C.object_name(x));
    std::vector<int> ref(static_cast<std::size_t>(C.arrow_count()));
    int p = 0;
    for (int a = 0; a < C.arrow_count(); ++a) ref[a] = C.is_identity(a) ? -1 - C.arrow(a).src : p++;
    ojson arrows = ojson::array();
    for (int g = 0; g < C.arrow_count(); ++g) {
        if (C.is_identity(g)) continue;
        const Arrow& A = C.arrow(g);
        ojson e;
        e["src"] = A.src;
        e["dst"] = A.dst;
        e["name"] = A.name;
        ojson comps = ojson::array();
        for (int f = 0; f < C.arrow_count(); ++f) {
            if (C.is_identity(f) || C.arrow(f).dst != A.src || !C.has_composite(g, f)) continue;
            comps.push_back(ojson::array({ref[f], ref[C.compose(g, f)]}));
        }
        e["composites"] = std::move(comps);
        arrows.push_back(std::move(e));
    }
    j["objects"] = std::move(objects);
    j["arrows"] = std::move(arrows);
    return j;
}

FiniteCategory category_from_json(const ojson& j) {
    const ojson& objects = array_field(j, "objects", "category");
    const ojson& arrows = array_field(j, "arrows", "category");
    FiniteCategory C;
    for (const auto& o : objects) {
        if (!o.is_string()) throw InvalidStructure("category.objects: names must be strings");
        C.add_object(o.get<std::string>());
    }
    const int n = C.object_count();
    const int count = static_cast<int>(arrows.size());
    auto index_of = [&](int ref, const std::string& where) {
        if (ref < 0) {
            if (-1 - ref >= n) throw InvalidStructure(where + ": identity of an unknown object");
            return -1 - ref;
        }
        if (ref >= count) throw InvalidStructure(where + ": unknown arrow " + std::to_string(ref));
        return n + ref;
    };
    for (int p = 0; p < count; ++p) {
        std::string where = "category.arrows[" + std::to_string(p) + "]";
        int src = int_field(arrows[p], "src", where), dst = int_field(arrows[p], "dst", where);
        const ojson& name = field(arrows[p], "name", where);
        if (src < 0 || src >= n || dst < 0 || dst >= n) throw InvalidStructure(where + ": unknown object");
        if (!name.is_string()) throw InvalidStructure(where + ".name: expected a string");
        C.add_arrow(src, dst, name.get<std::string>());
    }
    for (int p = 0; p < count; ++p) {
        std::string where = "category.arrows[" + std::to_string(p) + "].composites";
        for (const auto& pair : array_field(arrows[p], "composites", "category.arrows[" + std::to_string(p) + "]")) {
            std::vector<int> v = int_list(pair, where);
            if (v.size() != 2) throw InvalidStructure(where + ": expected pairs [f, g o f]");
            int f = index_of(v[0], where), gf = index_of(v[1], where);
            if (C.arrow(f).dst != C.arrow(n + p).src) throw InvalidStructure(where + ": arrows are not composable");
            C.set_composite(n + p, f, gf);
        }
    }
    auto problems = C.check(1);
    if (!problems.empty()) throw InvalidStructure("category: " + problems.front());
    return C;
}

ojson to_json(const CategoryDiagram& F) {
    ojson j;
    j["name"] = F.name;
    j["base"] = to_json(F.base);
    ojson fibers = ojson::array();
    for (const auto& c : F.fibers) fibers.push_back(to_json(c));
    j["fibers"] = std::move(fibers);
    std::vector<int> order(static_cast<std::size_t>(F.base.arrow_count()));
    for (int a = 0; a < F.base.arrow_count(); ++a) order[canonical_arrow_index(F.base, a)] = a;
    ojson trans = ojson::array();
    for (int a : order) {
        const FiniteCategory& tgt = F.fibers[F.base.arrow(a).dst];
        ojson t;
        t["obj"] = F.transition[a].obj;
        std::vector<int> arr;
        for (int x : F.transition[a].arr) arr.push_back(arrow_reference(tgt, x));
        t["arr"] = arr;
        trans.push_back(std::move(t));
    }
    j["transition"] = std::move(trans);
    return j;
}

CategoryDiagram diagram_from_json(const ojson& j) {
    CategoryDiagram F;
    const ojson& name = field(j, "name", "diagram");
    if (!name.is_string()) throw InvalidStructure("diagram.name: expected a string");
    F.name = name.get<std::string>();
    F.base = category_from_json(field(j, "base", "diagram"));
    for (const auto& c : array_field(j, "fibers", "diagram")) F.fibers.push_back(category_from_json(c));
    if (static_cast<int>(F.fibers.size()) != F.base.object_count())
        throw InvalidStructure("diagram.fibers: one fiber per base object expected");
    const ojson& trans = array_field(j, "transition", "diagram");
    if (static_cast<int>(trans.size()) != F.base.arrow_count())
        throw InvalidStructure("diagram.transition: one entry per base arrow expected");
    for (int a = 0; a < F.base.arrow_count(); ++a) {
        std::string where = "diagram.transition[" + std::to_string(a) + "]";
        const FiniteCategory& src = F.fibers[F.base.arrow(a).src];
        const FiniteCategory& tgt = F.fibers[F.base.arrow(a).dst];
        Functor T;
        T.obj = int_list(array_field(trans[a], "obj", where), where + ".obj");
        std::vector<int> refs = int_list(array_field(trans[a], "arr", where), where + ".arr");
        if (static_cast<int>(T.obj.size()) != src.object_count() || static_cast<int>(refs.size()) != src.arrow_count())
            throw InvalidStructure(where + ": table sizes do not match the source fiber");
        for (int x : T.obj)
            if (x < 0 || x >= tgt.object_count()) throw InvalidStructure(where + ".obj: unknown object");
        const int n = tgt.object_count();
        for (int r : refs) {
            int idx = r < 0 ? -1 - r : n + r;
            if (idx < 0 || idx >= tgt.arrow_count()) throw InvalidStructure(where + ".arr: unknown arrow");
            T.arr.push_back(idx);
        }
        F.transition.push_back(std::move(T));
    }
    auto problems = F.check(1);
    if (!problems.empty()) throw InvalidStructure("diagram: " + problems.front());
    return F;
}

ojson to_json(const Monoid& M) {
    ojson j;
    j["elements"] = M.elements;
    j["unit"] = M.unit;
    j["table"] = M.table;
    return j;
}

Monoid monoid_from_json(const ojson& j) {
    Monoid M;
    for (const auto& e : array_field(j, "elements", "monoid")) {
        if (!e.is_string()) throw InvalidStructure("monoid.elements: names must be strings");
        M.elements.push_back(e.get<std::string>());
    }
    M.unit = int_field(j, "unit", "monoid");
    const ojson& table = array_field(j, "table", "monoid");
    for (std::size_t r = 0; r < table.size(); ++r)
        M.table.push_back(int_list(table[r], "monoid.table[" + std::to_string(r) + "]"));
    auto problems = M.check();
    if (!problems.empty()) throw InvalidStructure("monoid: " + problems.front());
    return M;
}

ojson to_json(const HeadsTailsInput& in) {
    ojson j;
    j["name"] = in.name;
    j["n"] = in.n;
    j["X"] = to_json(*in.X);
    j["x_side"] = side_json(in.xside);
    j["Y"] = to_json(*in.Y);
    j["y_side"] = side_json(in.yside);
    ojson p = ojson::array();
    for (int l = 0; l <= in.X->dim_bound(); ++l) {
        ojson lv = ojson::array();
        for (int g = 0; g < in.X->count(l); ++g) lv.push_back(to_json(in.p.images[l][g]));
        p.push_back(std::move(lv));
    }
    j["p"] = std::move(p);
    ojson S = ojson::array();
    for (int l = 0; l <= in.Y->dim_bound(); ++l) {
        std::vector<int> gens;
        for (int g = 0; g < in.Y->count(l); ++g)
            if (in.S.member_gen(l, g)) gens.push_back(g);
        S.push_back(gens);
    }
    j["S"] = std::move(S);
    ojson sigma = ojson::array();
    for (const auto& s : in.Sigma) sigma.push_back(to_json(s));
    j["Sigma"] = std::move(sigma);
    return j;
}

HeadsTailsInput heads_tails_from_json(const ojson& j) {
    HeadsTailsInput in;
    const ojson& name = field(j, "name", "instance");
    if (!name.is_string()) throw InvalidStructure("instance.name: expected a string");
    in.name = name.get<std::string>();
    in.n = int_field(j, "n", "instance");
    auto X = std::make_shared<FiniteSimplicialSet>(sset_from_json(field(j, "X", "instance")));
    auto Y = std::make_shared<FiniteSimplicialSet>(sset_from_json(field(j, "Y", "instance")));
    in.X = X;
    in.Y = Y;
    in.xside.side = int_list(array_field(j, "x_side", "instance"), "instance.x_side");
    in.yside.side = int_list(array_field(j, "y_side", "instance"), "instance.y_side");
    if (static_cast<int>(in.xside.side.size()) != std::max(0, X->count(0)) ||
        static_cast<int>(in.yside.side.size()) != std::max(0, Y->count(0)))
        throw InvalidStructure("instance: one side per vertex expected");
    in.p = SimplicialMap(in.X, in.Y);
    const ojson& p = array_field(j, "p", "instance");
    if (p.size() != static_cast<std::size_t>(X->dim_bound() + 1))
        throw InvalidStructure("instance.p: one list per level of X expected");
    for (int l = 0; l <= X->dim_bound(); ++l) {
        std::string where = "instance.p[" + std::to_string(l) + "]";
        if (!p[l].is_array() || p[l].size() != static_cast<std::size_t>(X->count(l)))
            throw InvalidStructure(where + ": one image per generator expected");
        for (int g = 0; g < X->count(l); ++g) {
            Simplex s = simplex_at(p[l][g], where);
            if (s.level != l || !Y->contains(s)) throw InvalidStructure(where + ": image is not a simplex of Y");
            in.p.images[l][g] = s;
        }
    }
    auto problems = in.p.check(1);
    if (!problems.empty()) throw InvalidStructure("instance.p: " + problems.front());
    in.S = SubsetMask(*Y);
    const ojson& S = array_field(j, "S", "instance");
    if (S.size() != static_cast<std::size_t>(Y->dim_bound() + 1))
        throw InvalidStructure("instance.S: one list per level of Y expected");
    for (int l = 0; l <= Y->dim_bound(); ++l)
        for (int g : int_list(S[l], "instance.S")) {
            if (g < 0 || g >= Y->count(l)) throw InvalidStructure("instance.S: unknown generator");
            in.S.set(l, g);
        }
    for (const auto& s : array_field(j, "Sigma", "instance")) {
        Simplex x = simplex_at(s, "instance.Sigma");
        if (!Y->contains(x)) throw InvalidStructure("instance.Sigma: not a simplex of Y");
        in.Sigma.push_back(x);
    }
    return in;
}

ojson to_json(const Lemma3125Input& in) {
    ojson j;
    j["name"] = in.name;
    j["C"] = to_json(*in.C);
    j["c0"] = in.c0;
    j["sigma"] = to_json(in.sigma);
    j["bound"] = in.bound;
    return j;
}

Lemma3125Input lemma_3125_from_json(const ojson& j) {
    Lemma3125Input in;
    const ojson& name = field(j, "name", "instance");
    if (!name.is_string()) throw InvalidStructure("instance.name: expected a string");
    in.name = name.get<std::string>();
    auto C = std::make_shared<FiniteSimplicialSet>(sset_from_json(field(j, "C", "instance")));
    in.C = C;
    in.c0 = int_list(array_field(j, "c0", "instance"), "instance.c0");
    for (int v : in.c0)
        if (v < 0 || v >= C->count(0)) throw InvalidStructure("instance.c0: unknown vertex");
    in.sigma = simplex_at(field(j, "sigma", "instance"), "instance.sigma");
    if (!C->contains(in.sigma)) throw InvalidStructure("instance.sigma: not a simplex of C");
    in.bound = int_field(j, "bound", "instance");
    return in;
}

ojson to_json(const Report& r, bool timing) {
    ojson j;
    j["suite"] = r.suite;
    ojson params = ojson::object();
    for (const auto& [k, v] : r.params) params[k] = v;
    j["params"] = std::move(params);
    j["notes"] = r.notes;
    ojson entries = ojson::array();
    for (const auto& e : r.entries) {
        ojson x;
        x["name"] = e.name;
        x["status"] = to_string(e.status);
        x["witness"] = e.witness;
        if (timing) x["seconds"] = e.seconds;
        entries.push_back(std::move(x));
    }
    j["entries"] = std::move(entries);
    ojson totals;
    totals["pass"] = r.count(Status::Pass);
    totals["fail"] = r.count(Status::Fail);
    totals["skipped"] = r.count(Status::Skipped);
    totals["not checked"] = r.count(Status::NotChecked);
    j["totals"] = std::move(totals);
    return j;
}

std::string render_text(const Report& r, bool timing) {
    std::ostringstream out;
    out << "== " << r.suite;
    for (const auto& [k, v] : r.params) out << " " << k << "=" << v;
    out << "\n";
    for (const auto& n : r.notes) out << "   # " << n << "\n";
    for (const auto& e : r.entries) {
        out << "   " << to_string(e.status) << " " << e.name;
        if (!e.witness.empty()) out << " [" << e.witness << "]";
        if (timing) out << " (" << e.seconds << " s)";
        out << "\n";
    }
    out << "   totals: " << r.count(Status::Pass) << " pass, " << r.count(Status::Fail) << " fail, "
        << r.count(Status::Skipped) << " skipped, " << r.count(Status::NotChecked) << " not checked\n";
    return out.str();
}

std::string roundtrip_failure(const FiniteSimplicialSet& X) { return compare_roundtrip(X, sset_from_json); }
std::string roundtrip_failure(const FiniteCategory& C) { return compare_roundtrip(C, category_from_json); }
std::string roundtrip_failure(const CategoryDiagram& F) { return compare_roundtrip(F, diagram_from_json); }
std::string roundtrip_failure(const Monoid& M) { return compare_roundtrip(M, monoid_from_json); }
std::string roundtrip_failure(const HeadsTailsInput& in) { return compare_roundtrip(in, heads_tails_from_json); }
std::string roundtrip_failure(const Lemma3125Input& in) { return compare_roundtrip(in, lemma_3125_from_json); }

}  // namespace opkan
