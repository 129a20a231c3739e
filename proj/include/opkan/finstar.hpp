#ifndef OPKAN_FINSTAR_HPP
#define OPKAN_FINSTAR_HPP

#include <cstdint>
#include <memory>
#include <string>
#include <unordered_map>
#include <vector>

#include "opkan/category.hpp"
#include "opkan/sset.hpp"

namespace opkan {

/** A basepoint-preserving map <m> -> <n>; v[i-1] is the image of i, 0 is the basepoint. */
struct PointedMap {
    int m = 0;
    int n = 0;
    std::vector<int> v;

    PointedMap() = default;
    PointedMap(int m_, int n_, std::vector<int> values);

    static PointedMap identity(int n);
    static PointedMap parse(const std::string& text);

    int operator()(int i) const { return i == 0 ? 0 : v[i - 1]; }
    std::string to_string() const;

    bool operator==(const PointedMap& o) const { return m == o.m && n == o.n && v == o.v; }
    bool operator!=(const PointedMap& o) const { return !(*this == o); }
    bool operator<(const PointedMap& o) const;
};

/** g o f. */
PointedMap compose(const PointedMap& g, const PointedMap& f);

bool is_inert(const PointedMap& a);
bool is_active(const PointedMap& a);
/** Inert and the section <n>° -> <m>° is order-preserving. */
bool has_ordered_section(const PointedMap& a);

struct Classification {
    bool inert;
    bool active;
};
Classification classify(const PointedMap& a);

/** All pointed maps <m> -> <n> in odometer order (first value varies slowest). */
std::vector<PointedMap> all_maps(int m, int n);

/** A morphism of N(Fin*) x Delta^{lo..hi}: a pointed map with a label edge e0 <= e1. */
struct TaggedEdge {
    PointedMap map;
    int e0 = 1;
    int e1 = 1;

    TaggedEdge() = default;
    TaggedEdge(PointedMap a, int x0, int x1);

    static TaggedEdge parse(const std::string& text);
    std::string to_string() const;
    bool degenerate() const { return e0 == e1 && map == PointedMap::identity(map.m); }
    bool operator==(const TaggedEdge& o) const { return map == o.map && e0 == o.e0 && e1 == o.e1; }
};

TaggedEdge compose(const TaggedEdge& g, const TaggedEdge& f);

enum class EdgeKind { Active, StronglyInert, Neutral };
const char* to_string(EdgeKind k);

bool is_active(const TaggedEdge& e);
bool is_strongly_inert(const TaggedEdge& e);
bool is_neutral(const TaggedEdge& e);
/** Active takes precedence; only degenerate edges are both. */
EdgeKind edge_kind(const TaggedEdge& e);

struct Factorization {
    TaggedEdge inert;
    TaggedEdge active;
};

/** Canonical strongly inert / active factorization: collapse onto the support, then act. */
Factorization inert_active_factorize(const TaggedEdge& e);
/** Number of (strongly inert, active) factorizations through <p>, p <= max_size. */
int count_factorizations(const TaggedEdge& e, int max_size);

/** Position of element k of block i (1-based) in the wedge of the blocks. */
int wedge_inclusion(const std::vector<int>& sizes, int i, int k);
int wedge_size(const std::vector<int>& sizes);
/** The inert map from the wedge onto block i. */
PointedMap h_component(const std::vector<int>& sizes, int i);

struct Preimage {
    int k;
    /** Elements of the preimage in increasing order; element r relabels to r+1. */
    std::vector<int> elements;
};
Preimage preimage_object(const PointedMap& a, int i);

/** Fin*^{<=K} x [lo..hi]: objects (k, e), arrows tagged pointed maps. */
struct FinStarCategory {
    int K = 0;
    int lo = 1;
    int hi = 1;
    FiniteCategory cat;
    std::vector<int> size;
    std::vector<int> label;
    std::vector<TaggedEdge> edge;

    int object(int k, int e) const { return k * (hi - lo + 1) + (e - lo); }
    /** Arrow index of a tagged edge; -1 when outside the truncation. */
    int arrow_of(const TaggedEdge& e) const;

    std::unordered_map<std::uint64_t, int> lookup;
};

FinStarCategory finstar_category(int K, int lo = 1, int hi = 1);

/** Truncated nerve of Fin*^{<=K} x Delta^{1..n_delta}; every vertex lies over 1 in Delta^1. */
struct FinStarNerve {
    std::shared_ptr<FinStarCategory> base;
    std::shared_ptr<FiniteSimplicialSet> nerve;
    NerveInfo info;
    OverInterval over;
};

FinStarNerve nerve_finstar(int K, int n_delta, int D);

}  // namespace opkan

#endif
