#include "opkan/finstar.hpp"

#include <algorithm>
#include <cctype>

namespace opkan {

PointedMap::PointedMap(int m_, int n_, std::vector<int> values) : m(m_), n(n_), v(std::move(values)) {
    if (m < 0 || n < 0) throw IndexError("pointed set size must be non-negative");
    if (static_cast<int>(v.size()) != m) throw IndexError("value array length differs from source size");
    for (int x : v)
        if (x < 0 || x > n) throw IndexError("pointed map value out of range");
}

PointedMap PointedMap::identity(int n) {
    std::vector<int> v(n);
    for (int i = 0; i < n; ++i) v[i] = i + 1;
    return PointedMap(n, n, v);
}

bool PointedMap::operator<(const PointedMap& o) const {
    if (m != o.m) return m < o.m;
    if (n != o.n) return n < o.n;
    return v < o.v;
}

std::string PointedMap::to_string() const {
    std::string s = std::to_string(m) + ">" + std::to_string(n) + ":[";
    for (int i = 0; i < m; ++i) s += (i ? "," : "") + std::to_string(v[i]);
    return s + "]";
}

namespace {

struct Cursor {
    const std::string& s;
    std::size_t pos = 0;

    [[noreturn]] void fail(const std::string& what) const { throw ParseError(what, 1, pos + 1); }
    void skip() {
        while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
    }
    void expect(char c) {
        skip();
        if (pos >= s.size() || s[pos] != c) fail(std::string("expected '") + c + "'");
        ++pos;
    }
    bool peek(char c) {
        skip();
        return pos < s.size() && s[pos] == c;
    }
    int integer() {
        skip();
        std::size_t start = pos;
        while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
        if (start == pos) fail("expected a number");
        if (pos - start > 6) fail("number too large");
        return std::stoi(s.substr(start, pos - start));
    }
    void end() {
        skip();
        if (pos != s.size()) fail("trailing characters");
    }
};

PointedMap parse_map(Cursor& c) {
    int m = c.integer();
    c.expect('>');
    int n = c.integer();
    c.expect(':');
    c.expect('[');
    std::vector<int> v;
    if (!c.peek(']')) {
        v.push_back(c.integer());
        while (c.peek(',')) {
            c.expect(',');
            v.push_back(c.integer());
        }
    }
    std::size_t at = c.pos;
    c.expect(']');
    try {
        return PointedMap(m, n, v);
    } catch (const IndexError& e) {
        throw ParseError(e.what(), 1, at + 1);
    }
}

}  // namespace

PointedMap PointedMap::parse(const std::string& text) {
    Cursor c{text};
    PointedMap a = parse_map(c);
    c.end();
    return a;
}

PointedMap compose(const PointedMap& g, const PointedMap& f) {
    if (f.n != g.m) throw IndexError("pointed maps are not composable");
    std::vector<int> v(f.m);
    for (int i = 0; i < f.m; ++i) v[i] = g(f.v[i]);
    return PointedMap(f.m, g.n, std::move(v));
}

bool is_inert(const PointedMap& a) {
    std::vector<int> hits(a.n + 1, 0);
    for (int x : a.v) ++hits[x];
    for (int i = 1; i <= a.n; ++i)
        if (hits[i] != 1) return false;
    return true;
}

bool is_active(const PointedMap& a) {
    for (int x : a.v)
        if (x == 0) return false;
    return true;
}

bool has_ordered_section(const PointedMap& a) {
    if (!is_inert(a)) return false;
    int last = 0;
    for (int x : a.v) {
        if (x == 0) continue;
        if (x < last) return false;
        last = x;
    }
    return true;
}

Classification classify(const PointedMap& a) { return {is_inert(a), is_active(a)}; }

std::vector<PointedMap> all_maps(int m, int n) {
    std::vector<PointedMap> out;
    std::vector<int> v(m, 0);
    while (true) {
        out.push_back(PointedMap(m, n, v));
        int t = m - 1;
        while (t >= 0 && v[t] == n) {
            v[t] = 0;
            --t;
        }
        if (t < 0) break;
        ++v[t];
    }
    return out;
}

TaggedEdge::TaggedEdge(PointedMap a, int x0, int x1) : map(std::move(a)), e0(x0), e1(x1) {
    if (e0 > e1) throw IndexError("label edge must satisfy e0 <= e1");
}

TaggedEdge TaggedEdge::parse(const std::string& text) {
    Cursor c{text};
    PointedMap a = parse_map(c);
    c.expect('@');
    c.expect('(');
    int x0 = c.integer();
    c.expect(',');
    int x1 = c.integer();
    std::size_t at = c.pos;
    c.expect(')');
    c.end();
    if (x0 > x1) throw ParseError("label edge must satisfy e0 <= e1", 1, at + 1);
    return TaggedEdge(std::move(a), x0, x1);
}

std::string TaggedEdge::to_string() const {
    return map.to_string() + "@(" + std::to_string(e0) + "," + std::to_string(e1) + ")";
}

TaggedEdge compose(const TaggedEdge& g, const TaggedEdge& f) {
    if (f.e1 != g.e0) throw IndexError("tagged edges are not composable");
    return TaggedEdge(compose(g.map, f.map), f.e0, g.e1);
}

const char* to_string(EdgeKind k) {
    switch (k) {
        case EdgeKind::Active: return "active";
        case EdgeKind::StronglyInert: return "strongly inert";
        case EdgeKind::Neutral: return "neutral";
    }
    return "?";
}

bool is_active(const TaggedEdge& e) { return is_active(e.map); }

bool is_strongly_inert(const TaggedEdge& e) { return e.e0 == e.e1 && has_ordered_section(e.map); }

bool is_neutral(const TaggedEdge& e) { return !is_active(e) && !is_strongly_inert(e); }

EdgeKind edge_kind(const TaggedEdge& e) {
    if (is_active(e)) return EdgeKind::Active;
    if (is_strongly_inert(e)) return EdgeKind::StronglyInert;
    return EdgeKind::Neutral;
}

Factorization inert_active_factorize(const TaggedEdge& e) {
    const PointedMap& a = e.map;
    std::vector<int> beta(a.m, 0), gamma;
    int r = 0;
    for (int i = 1; i <= a.m; ++i) {
        if (a(i) == 0) continue;
        beta[i - 1] = ++r;
        gamma.push_back(a(i));
    }
    return {TaggedEdge(PointedMap(a.m, r, beta), e.e0, e.e0), TaggedEdge(PointedMap(r, a.n, gamma), e.e0, e.e1)};
}

int count_factorizations(const TaggedEdge& e, int max_size) {
    int found = 0;
    for (int p = 0; p <= max_size; ++p) {
        for (const PointedMap& b : all_maps(e.map.m, p)) {
            TaggedEdge be(b, e.e0, e.e0);
            if (!is_strongly_inert(be)) continue;
            for (const PointedMap& g : all_maps(p, e.map.n)) {
                if (!is_active(g)) continue;
                if (compose(g, b) == e.map) ++found;
            }
        }
    }
    return found;
}

int wedge_size(const std::vector<int>& sizes) {
    int t = 0;
    for (int s : sizes) {
        if (s < 0) throw IndexError("negative block size");
        t += s;
    }
    return t;
}

int wedge_inclusion(const std::vector<int>& sizes, int i, int k) {
    if (i < 1 || i > static_cast<int>(sizes.size())) throw IndexError("block index out of range");
    if (k < 1 || k > sizes[i - 1]) throw IndexError("element index out of range for its block");
    int base = 0;
    for (int j = 0; j < i - 1; ++j) base += sizes[j];
    return base + k;
}

PointedMap h_component(const std::vector<int>& sizes, int i) {
    int total = wedge_size(sizes);
    if (i < 1 || i > static_cast<int>(sizes.size())) throw IndexError("block index out of range");
    std::vector<int> v(total, 0);
    for (int k = 1; k <= sizes[i - 1]; ++k) v[wedge_inclusion(sizes, i, k) - 1] = k;
    return PointedMap(total, sizes[i - 1], v);
}

Preimage preimage_object(const PointedMap& a, int i) {
    if (i < 1 || i > a.n) throw IndexError("target element out of range");
    Preimage p{0, {}};
    for (int x = 1; x <= a.m; ++x)
        if (a(x) == i) p.elements.push_back(x);
    p.k = static_cast<int>(p.elements.size());
    return p;
}

namespace {

std::uint64_t map_code(const PointedMap& a) {
    std::uint64_t c = 0;
    for (int x : a.v) c = c * static_cast<std::uint64_t>(a.n + 1) + static_cast<std::uint64_t>(x);
    return c;
}

std::uint64_t edge_key(int src, int dst, int nobj, const PointedMap& a) {
    return (static_cast<std::uint64_t>(src) * static_cast<std::uint64_t>(nobj) + static_cast<std::uint64_t>(dst))
               << 32 |
           map_code(a);
}

}  // namespace

int FinStarCategory::arrow_of(const TaggedEdge& e) const {
    if (e.map.m > K || e.map.n > K || e.e0 < lo || e.e1 > hi) return -1;
    int s = object(e.map.m, e.e0), t = object(e.map.n, e.e1);
    auto it = lookup.find(edge_key(s, t, cat.object_count(), e.map));
    return it == lookup.end() ? -1 : it->second;
}

FinStarCategory finstar_category(int K, int lo, int hi) {
    if (K < 0) throw IndexError("truncation K must be non-negative");
    if (lo > hi) throw IndexError("empty label range");
    FinStarCategory F;
    F.K = K;
    F.lo = lo;
    F.hi = hi;
    int L = hi - lo + 1;
    for (int k = 0; k <= K; ++k)
        for (int e = lo; e <= hi; ++e) {
            std::string name = "<" + std::to_string(k) + ">";
            if (L > 1 || lo != 1) name += "," + std::to_string(e);
            F.cat.add_object(name);
            F.size.push_back(k);
            F.label.push_back(e);
            int x = F.cat.object_count() - 1;
            TaggedEdge idt(PointedMap::identity(k), e, e);
            F.edge.push_back(idt);
            F.lookup[edge_key(x, x, (K + 1) * L, idt.map)] = F.cat.id(x);
        }
    int nobj = F.cat.object_count();
    std::vector<std::vector<PointedMap>> maps(static_cast<std::size_t>((K + 1) * (K + 1)));
    for (int m = 0; m <= K; ++m)
        for (int n = 0; n <= K; ++n) maps[m * (K + 1) + n] = all_maps(m, n);
    for (int s = 0; s < nobj; ++s)
        for (int t = 0; t < nobj; ++t) {
            if (F.label[t] < F.label[s]) continue;
            for (const PointedMap& a : maps[F.size[s] * (K + 1) + F.size[t]]) {
                TaggedEdge te(a, F.label[s], F.label[t]);
                if (s == t && te.degenerate()) continue;
                int idx = F.cat.add_arrow(s, t, te.to_string());
                F.edge.push_back(te);
                F.lookup[edge_key(s, t, nobj, a)] = idx;
            }
        }
    for (int f = 0; f < F.cat.arrow_count(); ++f) {
        if (F.cat.is_identity(f)) continue;
        for (int g : F.cat.out(F.cat.arrow(f).dst)) {
            if (F.cat.is_identity(g)) continue;
            F.cat.set_composite(g, f, F.arrow_of(compose(F.edge[g], F.edge[f])));
        }
    }
    return F;
}

FinStarNerve nerve_finstar(int K, int n_delta, int D) {
    if (n_delta < 1) throw IndexError("n_delta must be at least 1");
    if (D < 0) throw IndexError("dimension bound must be non-negative");
    FinStarNerve out;
    out.base = std::make_shared<FinStarCategory>(finstar_category(K, 1, n_delta));
    out.nerve = std::make_shared<FiniteSimplicialSet>(nerve(out.base->cat, D, &out.info));
    out.over.side.assign(out.nerve->count(0), 1);
    return out;
}

}  // namespace opkan
