#ifndef OPKAN_GROTHENDIECK_HPP
#define OPKAN_GROTHENDIECK_HPP

#include <cstdint>
#include <memory>
#include <string>
#include <unordered_map>
#include <vector>

#include "opkan/category.hpp"
#include "opkan/report.hpp"

namespace opkan {

/**
 * A functor from a finite category C to categories: one fiber category per
 * object and one transition functor per arrow.  Fibers are ordinary
 * categories, i.e. simplicial categories with discrete hom sets.
 */
struct CategoryDiagram {
    std::string name;
    FiniteCategory base;
    std::vector<FiniteCategory> fibers;
    /** Object and arrow tables per base arrow; the source/target pointers are not used. */
    std::vector<Functor> transition;

    /** Functor laws of every transition plus F(id) = id and F(gf) = F(g)F(f). */
    std::vector<std::string> check(std::size_t max_messages = 20) const;
};

/** The Grothendieck construction of a diagram; objects (C, X), arrows (f, g : Ff X -> X'). */
struct GrothendieckTotal {
    const CategoryDiagram* diagram = nullptr;
    FiniteCategory cat;
    std::vector<std::pair<int, int>> object_tag;
    std::vector<std::pair<int, int>> arrow_tag;
    std::vector<std::vector<int>> object_index;  // [C][X]
    Functor proj;
    std::unordered_map<std::uint64_t, int> lookup;

    int object(int c, int x) const { return object_index[c][x]; }
    /** Arrow out of the given object tagged (f, g), or -1. */
    int arrow(int src, int f, int g) const;
    /** hom(X, X') is the disjoint union over f of F(C')(Ff X, X'). */
    std::vector<std::string> check_decomposition() const;
};

GrothendieckTotal grothendieck_construct(const CategoryDiagram& F);

/** The rigidification C[Delta^n]: hom(i, j) is the nerve of the cube of
 *  subsets of {i..j} containing both ends, and composition is union. */
struct RigidSimplex {
    int n = 0;
    explicit RigidSimplex(int n_) : n(n_) {}
    /** Subsets (as bit masks over [n]) with minimum i and maximum j. */
    std::vector<std::uint32_t> vertices(int i, int j) const;
    /** Number of vertices of hom(i, j). */
    std::size_t vertex_count(int i, int j) const;
    FiniteSimplicialSet hom(int i, int j) const;
};

/**
 * A simplicial functor from C[Delta^I] into a category with discrete homs.
 * obj[i] is defined for i in I; arr[S] for every nonempty S within I.
 */
struct CoherentFunctor {
    std::uint32_t domain = 0;
    std::vector<int> obj;
    std::vector<int> arr;

    bool operator==(const CoherentFunctor& o) const {
        return domain == o.domain && obj == o.obj && arr == o.arr;
    }
};

/** Validates a coherent functor into C: typing, units, composition by union, and
 *  that each hom map from the cube is simplicial (constant along cube edges). */
std::vector<std::string> check_coherent(const FiniteCategory& C, const CoherentFunctor& phi, int n);

/** An n-simplex of the relative nerve: a chain in N(C) and phi_I for every nonempty I in [n]. */
struct RelSimplex {
    int n = 0;
    std::vector<int> objects;
    std::vector<int> arrows;
    std::vector<CoherentFunctor> phi;  // indexed by the mask of I; entry 0 unused

    bool operator==(const RelSimplex& o) const {
        return n == o.n && objects == o.objects && arrows == o.arrows && phi == o.phi;
    }
};

/** An n-simplex of the coherent nerve of the total category. */
struct TotalSimplex {
    int n = 0;
    CoherentFunctor phi;
    bool operator==(const TotalSimplex& o) const { return n == o.n && phi == o.phi; }
};

/** Composite f_ij : C_i -> C_j along the chain. */
int chain_composite(const FiniteCategory& C, const RelSimplex& s, int i, int j);

/** Checks the compatibility square for every pair I within J. */
std::vector<std::string> check_rel_simplex(const CategoryDiagram& F, const RelSimplex& s,
                                           std::size_t max_messages = 20);

/** All n-simplices of the relative nerve, by exhaustive search. */
std::vector<RelSimplex> relative_nerve_simplices(const CategoryDiagram& F, int n);
/** All n-simplices of N(total), degenerate ones included. */
std::vector<TotalSimplex> total_simplices(const GrothendieckTotal& G, int n);

TotalSimplex phi_forward(const GrothendieckTotal& G, const RelSimplex& s);
RelSimplex phi_inverse(const GrothendieckTotal& G, const TotalSimplex& t);

/** Precomposition with a monotone map theta : [m] -> [n]. */
RelSimplex pull_back(const CategoryDiagram& F, const RelSimplex& s, const std::vector<int>& theta);
TotalSimplex pull_back(const GrothendieckTotal& G, const TotalSimplex& t, const std::vector<int>& theta);

/** Round trips both ways, level counts, and commutation with every coface and codegeneracy. */
Report phi_roundtrip_check(const CategoryDiagram& F, int max_dim);

/** A natural transformation between diagrams over the same base. */
struct DiagramMap {
    const CategoryDiagram* source = nullptr;
    const CategoryDiagram* target = nullptr;
    std::vector<Functor> component;
};

std::vector<std::string> check_diagram_map(const DiagramMap& eta);
/** Phi' o eta_* = (int eta)_* o Phi on all simplices up to max_dim. */
Report phi_naturality_check(const DiagramMap& eta, int max_dim);

/** True iff the fiber component of the edge is an isomorphism. */
bool is_cocartesian_gr(const GrothendieckTotal& G, int edge);
/** Compares is_cocartesian_gr with the universal property on every edge, and
 *  checks that each (f, X) has a cocartesian lift. */
Report cocartesian_gr_check(const GrothendieckTotal& G);

/** The transformation id_{Ff X} is pointwise cocartesian and its endpoint functor is F(f). */
Report induced_functor_check(const GrothendieckTotal& G, int f);

/** Fixed instances. */
CategoryDiagram constant_diagram(const FiniteCategory& C, const FiniteCategory& D, const std::string& name);
CategoryDiagram arrow_example();
/** [2] with F(i) = [i] and inclusions. */
CategoryDiagram poset_diagram();
/** F(0) = terminal, F(1) = walking isomorphism a <-> b, f picks a. */
CategoryDiagram iso_example();
/** F(0) = terminal, F(1) = Z/2 as a one-object category. */
CategoryDiagram group_example();
/** The arrow example with f picking b instead of a. */
CategoryDiagram arrow_example_at_target();
/** arrow_example => arrow_example_at_target, collapsing a -> b onto b over 1. */
DiagramMap collapse_transformation(const CategoryDiagram& source, const CategoryDiagram& target);
FiniteCategory terminal_category();
FiniteCategory arrow_category();
FiniteCategory walking_iso();
FiniteCategory cyclic_group_category(int order);

}  // namespace opkan

#endif
