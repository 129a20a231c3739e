#ifndef OPKAN_CATEGORY_HPP
#define OPKAN_CATEGORY_HPP

#include <string>
#include <unordered_map>
#include <vector>

#include "opkan/sset.hpp"

namespace opkan {

struct Arrow {
    int src;
    int dst;
    std::string name;
};

struct VecHash {
    std::size_t operator()(const std::vector<int>& v) const {
        std::size_t h = v.size();
        for (int x : v) h = h * 1000003u ^ static_cast<std::size_t>(x + 0x9e3779b9u);
        return h;
    }
};

/**
 * A finite category given by explicit tables.  Each object owns an identity
 * arrow created with it; composites of non-identity arrows are recorded with
 * set_composite.
 */
class FiniteCategory {
public:
    int add_object(std::string name);
    int add_arrow(int src, int dst, std::string name);
    /** Records g o f = gf. */
    void set_composite(int g, int f, int gf);

    int object_count() const { return static_cast<int>(objects_.size()); }
    int arrow_count() const { return static_cast<int>(arrows_.size()); }
    const std::string& object_name(int x) const { return objects_[x]; }
    const Arrow& arrow(int a) const { return arrows_[a]; }
    int id(int x) const { return ids_[x]; }
    bool is_identity(int a) const { return ids_[arrows_[a].src] == a; }
    const std::vector<int>& out(int x) const { return out_[x]; }
    const std::vector<int>& in(int x) const { return in_[x]; }
    std::vector<int> hom(int a, int b) const;
    bool has_composite(int g, int f) const;
    /** g o f; throws InvalidStructure when not composable or unrecorded. */
    int compose(int g, int f) const;
    int find_object(const std::string& name) const;

    /** Unit, associativity and completeness of the composition table. */
    std::vector<std::string> check(std::size_t max_messages = 20) const;
    void validate() const;

private:
    std::vector<std::string> objects_;
    std::vector<Arrow> arrows_;
    std::vector<int> ids_;
    std::vector<std::vector<int>> out_, in_;
    std::vector<int> pos_in_out_;
    std::vector<std::vector<int>> comp_;
};

struct Functor {
    const FiniteCategory* source = nullptr;
    const FiniteCategory* target = nullptr;
    std::vector<int> obj;
    std::vector<int> arr;

    std::vector<std::string> check(std::size_t max_messages = 20) const;
    bool valid() const { return check(1).empty(); }
};

FiniteCategory product_category(const FiniteCategory& A, const FiniteCategory& B);
/** Object (a, b) of the product has index a * |B| + b; likewise arrows. */
inline int product_index(int a, int b, int count_b) { return a * count_b + b; }

struct PullbackInfo {
    std::vector<std::pair<int, int>> objects;
    std::vector<std::pair<int, int>> arrows;
};
/** A x_C B for functors F : A -> C and G : B -> C. */
FiniteCategory pullback_category(const Functor& F, const Functor& G, PullbackInfo* info = nullptr);

FiniteCategory full_subcategory(const FiniteCategory& C, const std::vector<int>& objects,
                                std::vector<int>* arrow_map = nullptr);

/** The poset [n] = {0 < 1 < ... < n} as a category. */
FiniteCategory linear_order(int n);

struct NerveInfo {
    /** chains[n][g]: the n non-identity arrows of generator g (level 0: empty). */
    std::vector<std::vector<std::vector<int>>> chains;
    std::vector<std::unordered_map<std::vector<int>, int, VecHash>> lookup;
};

/** Nerve truncated at dimension D; generators are chains of non-identity arrows. */
FiniteSimplicialSet nerve(const FiniteCategory& C, int D, NerveInfo* info = nullptr);
/** Normal form of the chain start -> ... given by arrows (identities allowed). */
Simplex chain_simplex(const FiniteCategory& C, const NerveInfo& info, int start, const std::vector<int>& arrows);
/** Arrows (identities included) of a nerve simplex, and its start object. */
std::vector<int> simplex_arrows(const FiniteCategory& C, const FiniteSimplicialSet& N, const NerveInfo& info,
                                const Simplex& x, int* start = nullptr);
SimplicialMap nerve_map(const Functor& F, const SSetPtr& NX, const NerveInfo& ix, const SSetPtr& NY,
                        const NerveInfo& iy);

/** Strict 1-categorical cocartesian test of arrow e for P. */
bool is_cocartesian(const Functor& P, int e);
bool is_isomorphism(const FiniteCategory& C, int a);

}  // namespace opkan

#endif
