#ifndef OPKAN_OPERAD_HPP
#define OPKAN_OPERAD_HPP

#include <memory>
#include <string>
#include <vector>

#include "opkan/category.hpp"
#include "opkan/finstar.hpp"
#include "opkan/report.hpp"

namespace opkan {

/**
 * A finite category over Fin*^{<=K} x [lo..hi] with designated inert lifts.
 * Plain operads use the single label 1; families over [n] use labels 0..n.
 */
struct OperadModel {
    std::string name;
    std::shared_ptr<const FinStarCategory> base;
    std::shared_ptr<FiniteCategory> cat;
    Functor proj;
    std::vector<char> inert;

    int size_of(int x) const { return base->size[proj.obj[x]]; }
    int label_of(int x) const { return base->label[proj.obj[x]]; }
    const TaggedEdge& edge_of(int f) const { return base->edge[proj.arr[f]]; }
    /** Objects lying over (<k>, label). */
    std::vector<int> fiber(int k, int label) const;
};

OperadModel comm_model(int K);
OperadModel triv_model(int K);

/** A finite commutative monoid by its multiplication table. */
struct Monoid {
    std::vector<std::string> elements;
    int unit = 0;
    std::vector<std::vector<int>> table;

    int size() const { return static_cast<int>(elements.size()); }
    int mul(int a, int b) const { return table[a][b]; }
    /** Empty when associative, unital and commutative. */
    std::vector<std::string> check() const;
};

Monoid cyclic_monoid(int order);
/** Objects are tuples of elements; an arrow over alpha exists iff each target
 *  entry is the product of the entries over its preimage. */
OperadModel monoid_model(const Monoid& M, int K);
/** Index of the tuple in a monoid model built from a monoid of the given size. */
int monoid_tuple_object(const std::vector<int>& tuple, int monoid_size);

/** A functor between models that commutes with the projections to Fin*. */
struct OperadFunctor {
    const OperadModel* source = nullptr;
    const OperadModel* target = nullptr;
    Functor F;
};

OperadFunctor identity_functor(const OperadModel& M);
OperadFunctor monoid_functor(const OperadModel& A, const OperadModel& B, const std::vector<int>& hom,
                             int monoid_size_a, int monoid_size_b);

/** Mapping cylinder of G over Fin* x [1]: A at label 0, B at label 1, and
 *  Hom(x^0, y^1) = Hom_B(Gx, y). */
OperadModel family_from_functor(const OperadFunctor& G);
/** Conditions (a) and (c) of a family of operads, plus designated-lift checks. */
Report validate_operad_model(const OperadModel& M);

/** The category of active arrows of Fin*^{<=K}: commuting squares between them. */
struct ActCategory {
    std::shared_ptr<const FinStarCategory> base;
    std::shared_ptr<FiniteCategory> cat;
    std::vector<int> object_arrow;  // base arrow of each object
    std::vector<std::pair<int, int>> square;  // (top, bottom) base arrows of each arrow
    Functor ev0;
    Functor ev1;
};

ActCategory act_category(std::shared_ptr<const FinStarCategory> base);
FiniteSimplicialSet act_arrows(int K, int D);

struct EnvelopeSet {
    const OperadModel* model = nullptr;
    ActCategory act;
    std::shared_ptr<FiniteCategory> cat;
    PullbackInfo pairs;
    Functor to_model;
    Functor q;  // ev1 after the projection to Act
    std::shared_ptr<FiniteSimplicialSet> total;
    NerveInfo info;
    FinStarNerve base;
    SimplicialMap to_base;

    /** Objects over <k> (under q). */
    std::vector<int> fiber(int k) const;
};

/** Nerve and map to N(Fin*) up to dimension D; D < 0 builds only the category. */
EnvelopeSet envelope(const OperadModel& M, int D);
/** Levelwise fiber product N(M) x_{N(Fin*)} N(Act) counted directly; compares with the envelope nerve. */
Report envelope_fiber_product_check(const EnvelopeSet& E);
/** Edges with inert image in M are q-cocartesian; q-cocartesian edges over inert maps have inert image. */
Report envelope_cocartesian_check(const EnvelopeSet& E);
/** The same check computed from M and Fin* alone, without building the envelope category. */
Report envelope_cocartesian_scan(const OperadModel& M);

/** Envelope object (<k>, active <k> -> <n>) of the commutative operad. */
struct EnvObject {
    int k;
    PointedMap act;
    bool operator==(const EnvObject& o) const { return k == o.k && act == o.act; }
};

EnvObject rho_shriek_env(const PointedMap& alpha, int i);
EnvObject phi_section(const std::vector<int>& sizes);

struct DirectSum {
    int object;
    std::vector<int> projections;
};

/** First object over the wedge with cocartesian arrows onto each summand over h_i. */
DirectSum direct_sum_objects(const OperadModel& M, const std::vector<int>& objects);

struct SliceIsoOptions {
    int truncation = 2;
    bool perturb = false;
};

/** ev0 : (Act_<n>)_{/alpha} -> (Fin*_act)_{/<k>} on truncated slices up to dimension D. */
Report slice_iso_check(int n, const PointedMap& alpha, int D, const SliceIsoOptions& opt = {});

}  // namespace opkan

#endif
