#ifndef OPKAN_SSET_HPP
#define OPKAN_SSET_HPP

#include <cstdint>
#include <functional>
#include <memory>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "opkan/errors.hpp"

namespace opkan {

/** A monotone map [q] -> [p], stored as its list of values. */
using Mono = std::vector<int>;

/**
 * A simplex in Eilenberg-Zilber normal form: s_W g with g a nondegenerate
 * generator and W a strictly decreasing degeneracy word.  The word is kept
 * as a bitmask; bit j is set iff s_j occurs in W, which is the same as
 * vertices j and j+1 of the simplex being identified.
 *
 * level == -1 is the empty simplex (the unique simplex of the empty set).
 */
struct Simplex {
    int level = 0;
    int gen = 0;
    std::uint32_t degen = 0;

    Simplex() = default;
    Simplex(int l, int g, std::uint32_t d = 0) : level(l), gen(g), degen(d) {}

    static Simplex empty() { return Simplex(-1, 0, 0); }
    bool is_empty() const { return level < 0; }
    int gen_level() const { return level - __builtin_popcount(degen); }
    bool nondegenerate() const { return degen == 0; }
    /** Degeneracy word, outermost operator first (strictly decreasing). */
    std::vector<int> degeneracies() const;

    bool operator==(const Simplex& o) const {
        return level == o.level && gen == o.gen && degen == o.degen;
    }
    bool operator!=(const Simplex& o) const { return !(*this == o); }
    bool operator<(const Simplex& o) const {
        if (level != o.level) return level < o.level;
        if (gen_level() != o.gen_level()) return gen_level() < o.gen_level();
        if (gen != o.gen) return gen < o.gen;
        return degen < o.degen;
    }
};

struct SimplexHash {
    std::size_t operator()(const Simplex& s) const {
        std::uint64_t h = static_cast<std::uint32_t>(s.level);
        h = h * 1000003u ^ static_cast<std::uint32_t>(s.gen);
        h = h * 1000003u ^ s.degen;
        return static_cast<std::size_t>(h ^ (h >> 29));
    }
};

/** One face (d) or degeneracy (s) symbol of an operator word. */
struct Op {
    char kind;  // 'd' or 's'
    int index;
};

/** Surjection [level] -> [gen_level] determined by a degeneracy mask. */
Mono surjection_of(int level, std::uint32_t degen);
/** Degeneracy mask of a surjection. */
std::uint32_t mask_of_surjection(const Mono& eta);
/** delta^i : [n-1] -> [n], skipping i. */
Mono coface_map(int n, int i);
/** sigma^i : [n+1] -> [n], hitting i twice. */
Mono codegeneracy_map(int n, int i);
/** Inclusion of a sorted vertex list into [p]. */
Mono inclusion_of(const std::vector<int>& sorted_vertices);
bool is_monotone(const Mono& m, int target_level);

/**
 * A finite simplicial set presented by nondegenerate generators at levels
 * 0..dim_bound, each positive-level generator carrying its faces in normal
 * form.  Every simplex above the bound is degenerate.  A dim_bound of -1 is
 * the empty simplicial set.
 */
class FiniteSimplicialSet {
public:
    FiniteSimplicialSet() : dim_(-1) {}
    explicit FiniteSimplicialSet(int dim_bound);

    static FiniteSimplicialSet empty_set() { return FiniteSimplicialSet(-1); }

    int dim_bound() const { return dim_; }
    int count(int level) const;
    std::size_t total_generators() const;
    const std::string& name(int level, int g) const { return names_[level][g]; }
    void rename(int level, int g, std::string name) { names_[level][g] = std::move(name); }

    /** Appends a generator; faces must have level-1 and be in normal form.
     *  Level-0 generators take no faces. */
    int add_generator(int level, std::string name, const std::vector<Simplex>& faces = {});
    const Simplex& gen_face(int level, int g, int i) const {
        return faces_[level][static_cast<std::size_t>(g) * (level + 1) + i];
    }
    void set_gen_face(int level, int g, int i, const Simplex& s) {
        faces_[level][static_cast<std::size_t>(g) * (level + 1) + i] = s;
    }

    Simplex generator(int level, int g) const { return Simplex(level, g, 0); }
    /** Returns true iff x refers to an existing generator with a legal mask. */
    bool contains(const Simplex& x) const;

    /** x o theta for a monotone theta : [q] -> [x.level], in normal form. */
    Simplex apply(const Simplex& x, const Mono& theta) const;
    Simplex face(const Simplex& x, int i) const;
    Simplex degeneracy(const Simplex& x, int i) const;
    Simplex degenerate_by(const Simplex& x, std::uint32_t mask, int new_level) const;
    /** Applies an operator word (outermost first) to a generator. */
    Simplex normalize(int level, int gen, const std::vector<Op>& word) const;
    /** Normal form of a generator restricted to a sorted vertex subset. */
    Simplex restrict_gen(int level, int g, const std::vector<int>& vertices) const;
    Simplex restrict(const Simplex& x, const std::vector<int>& vertices) const;

    /** Generator index of the i-th vertex of x. */
    int vertex(const Simplex& x, int i) const;
    std::vector<int> vertices(const Simplex& x) const;

    /** Calls f on every simplex (degenerate or not) of the given level. */
    void for_each_simplex(int level, const std::function<void(const Simplex&)>& f) const;
    std::size_t simplex_count(int level) const;

    /** Returns a list of violated identities; empty means valid. */
    std::vector<std::string> check(bool mixed_identities = true, std::size_t max_messages = 20) const;
    void validate(bool mixed_identities = true) const;

    std::string simplex_name(const Simplex& x) const;

    /** Vertex generators of a generator, in order. */
    const int* gen_vertices(int level, int g) const {
        return &verts_[level][static_cast<std::size_t>(g) * (level + 1)];
    }

private:
    int dim_;
    std::size_t total_ = 0;
    std::vector<std::vector<std::string>> names_;
    std::vector<std::vector<Simplex>> faces_;
    std::vector<std::vector<int>> verts_;
};

using SSetPtr = std::shared_ptr<const FiniteSimplicialSet>;

/** A simplicial map given by the image of every source generator. */
struct SimplicialMap {
    SSetPtr source;
    SSetPtr target;
    std::vector<std::vector<Simplex>> images;

    SimplicialMap() = default;
    SimplicialMap(SSetPtr s, SSetPtr t);

    Simplex operator()(const Simplex& x) const;
    /** Face/degeneracy commutation and level checks on generators. */
    std::vector<std::string> check(std::size_t max_messages = 20) const;
    bool valid() const { return check(1).empty(); }
};

/** Membership bits per generator per level of a parent simplicial set. */
class SubsetMask {
public:
    SubsetMask() = default;
    explicit SubsetMask(const FiniteSimplicialSet& parent, bool full = false);

    const FiniteSimplicialSet& parent() const { return *parent_; }
    bool member(const Simplex& x) const;
    bool member_gen(int level, int g) const { return bits_[level][g] != 0; }
    void set(int level, int g, bool v = true) { bits_[level][g] = v ? 1 : 0; }
    std::size_t count(int level) const;
    std::size_t count() const;
    int levels() const { return static_cast<int>(bits_.size()); }

    /** Adds all iterated faces of members. */
    void close();
    bool face_closed() const;
    bool subset_of(const SubsetMask& o) const;
    bool operator==(const SubsetMask& o) const { return bits_ == o.bits_; }
    bool operator!=(const SubsetMask& o) const { return !(*this == o); }
    SubsetMask operator|(const SubsetMask& o) const;
    SubsetMask operator&(const SubsetMask& o) const;
    SubsetMask& operator|=(const SubsetMask& o);
    /** Levelwise equality restricted to levels <= max_level. */
    bool equal_up_to(const SubsetMask& o, int max_level) const;
    bool subset_up_to(const SubsetMask& o, int max_level) const;

private:
    const FiniteSimplicialSet* parent_ = nullptr;
    std::vector<std::vector<char>> bits_;
};

/** Smallest simplicial subset containing the seeds. */
SubsetMask subset_generated(const FiniteSimplicialSet& X, const std::vector<Simplex>& seeds);
bool member(const SubsetMask& mask, const Simplex& x);
/** Subset of simplices all of whose vertices lie in the given vertex set. */
SubsetMask full_subset_on_vertices(const FiniteSimplicialSet& X, const std::vector<int>& vertex_gens);

enum class PushoutStatus { Pushout, NotPushout, InclusionViolation };

struct PushoutResult {
    PushoutStatus status;
    std::string detail;
    bool ok() const { return status == PushoutStatus::Pushout; }
};

/** Square A -> B, A -> C, B -> D, C -> D of subsets of one simplicial set.
 *  Pushout iff D = B u C and A = B n C; inclusion failures are reported
 *  separately.  max_level < 0 compares all levels. */
PushoutResult pushout_check(const SubsetMask& A, const SubsetMask& B, const SubsetMask& C,
                            const SubsetMask& D, int max_level = -1);
const char* to_string(PushoutStatus s);

/** Copies the subset out as a standalone set; index_map[level][g] gives the
 *  new index (or -1). */
FiniteSimplicialSet restrict_to(const SubsetMask& mask,
                                std::vector<std::vector<int>>* index_map = nullptr);

FiniteSimplicialSet standard_simplex(int n);
/** Simplex of the standard simplex with the given (weakly increasing) vertices. */
Simplex simplex_with_vertices(int n, const std::vector<int>& vertices);
SubsetMask boundary_mask(const FiniteSimplicialSet& delta_n);
SubsetMask horn_mask(const FiniteSimplicialSet& delta_n, int k);
FiniteSimplicialSet point();

struct SimplexPairHash {
    std::size_t operator()(const std::pair<Simplex, Simplex>& p) const {
        SimplexHash h;
        return h(p.first) * 31u ^ h(p.second);
    }
};

struct ProductInfo {
    struct Component {
        Simplex x;
        Simplex y;
    };
    std::vector<std::vector<Component>> components;
    std::unordered_map<std::pair<Simplex, Simplex>, int, SimplexPairHash> lookup;
};

FiniteSimplicialSet product(const FiniteSimplicialSet& X, const FiniteSimplicialSet& Y,
                            ProductInfo* info = nullptr);
/** Normal form in X x Y of the pair (x, y) of simplices of equal level. */
Simplex product_simplex(const FiniteSimplicialSet& P, const ProductInfo& info,
                        const FiniteSimplicialSet& X, const FiniteSimplicialSet& Y,
                        const Simplex& x, const Simplex& y);

struct JoinInfo {
    enum Kind { Left, Right, Pair };
    struct Part {
        Kind kind;
        int x_level, x_gen, y_level, y_gen;
    };
    std::vector<std::vector<Part>> parts;
    int x_dim = -1, y_dim = -1;
    std::vector<int> x_counts, y_counts;
};

FiniteSimplicialSet join(const FiniteSimplicialSet& X, const FiniteSimplicialSet& Y,
                         JoinInfo* info = nullptr);
/** Join normal form of x * y (either may be the empty simplex). */
Simplex join_simplex(const JoinInfo& info, const FiniteSimplicialSet& X,
                     const FiniteSimplicialSet& Y, const Simplex& x, const Simplex& y);
/** X * Delta^0; the cone point is the vertex named "∞". */
FiniteSimplicialSet cone_right(const FiniteSimplicialSet& X, JoinInfo* info = nullptr);
Simplex cone_point(const FiniteSimplicialSet& cone);

struct SliceInfo {
    Simplex base;
    /** The simplex of X (level k + m + 1) behind each slice generator. */
    std::vector<std::vector<Simplex>> witness;
    std::unordered_map<Simplex, int, SimplexHash> lookup;
};

/**
 * Slice X_{/sigma}: k-simplices are the simplices y of X at level k+m+1
 * whose restriction to the last m+1 vertices is sigma.  Levels 0..bound.
 */
FiniteSimplicialSet slice_over(const FiniteSimplicialSet& X, const Simplex& sigma, int bound,
                               SliceInfo* info = nullptr);
/** Slice normal form of a simplex y of X at level k+m+1 ending in sigma. */
Simplex slice_simplex(const FiniteSimplicialSet& X, const SliceInfo& info, const Simplex& y);

/** A map X -> Delta^1 given by the side (0 or 1) of each vertex. */
struct OverInterval {
    std::vector<int> side;
};

/** Restriction of x to its vertices over 1 (head) or 0 (tail); the empty
 *  simplex when there are none. */
Simplex head(const FiniteSimplicialSet& X, const Simplex& x, const OverInterval& u);
Simplex tail(const FiniteSimplicialSet& X, const Simplex& x, const OverInterval& u);
/** Vertex positions of x over side 1 / side 0. */
std::vector<int> head_positions(const FiniteSimplicialSet& X, const Simplex& x,
                                const OverInterval& u);

}  // namespace opkan

#endif
