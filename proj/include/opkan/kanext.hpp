#ifndef OPKAN_KANEXT_HPP
#define OPKAN_KANEXT_HPP

#include <array>
#include <cstdint>
#include <functional>
#include <memory>
#include <random>
#include <string>
#include <vector>

#include "opkan/finstar.hpp"
#include "opkan/operad.hpp"
#include "opkan/report.hpp"
#include "opkan/sset.hpp"

namespace opkan {

/**
 * A simplex (<k_0>, e_0) -> ... -> (<k_m>, e_m) of N(Fin*) x Delta^{1..n}.
 * edges[i - 1] is alpha(i) : <k_{i-1}> -> <k_i>.
 */
struct OperadSimplex {
    int m = 0;
    std::vector<int> sizes;
    std::vector<int> labels;
    std::vector<PointedMap> edges;

    static OperadSimplex vertex(int k, int e);
    /** Appends a vertex reached by the given map. */
    OperadSimplex then(const PointedMap& a, int e) const;

    TaggedEdge edge(int i) const;
    bool nondegenerate() const;
    bool complete(int n) const;
    bool closed() const { return sizes.back() == 1; }
    /** Removes vertex i, composing the adjacent edges when i is interior. */
    OperadSimplex face(int i) const;
    /** Restriction to vertices lo..hi. */
    OperadSimplex slice(int lo, int hi) const;
    /** m, the vertices, then the values of every edge. */
    std::vector<int> encode() const;
    std::string to_string() const;

    bool operator==(const OperadSimplex& o) const {
        return m == o.m && sizes == o.sizes && labels == o.labels && edges == o.edges;
    }
    bool operator!=(const OperadSimplex& o) const { return !(*this == o); }
    bool operator<(const OperadSimplex& o) const { return encode() < o.encode(); }
};

/** Calls f on every nondegenerate simplex of dimension m with label set {1..n}
 *  and sizes at most K, in canonical order. */
void for_each_complete(int K, int n, int m, const std::function<void(const OperadSimplex&)>& f);
std::vector<OperadSimplex> enumerate_complete(int K, int n, int m);

enum class Group { G1, G2, G2p, G3, G3p };
const char* to_string(Group g);

struct GroupTag {
    Group group;
    int j;
    int k;
};

GroupTag classify_group(const OperadSimplex& s, int n);

/** sigma restricted to 0..m-1 for G2, and sigma with vertex j removed for G3. */
OperadSimplex associate(const OperadSimplex& s, int n);
/** Every sigma in G2 or G3 with sizes at most K whose associate is s, by search
 *  over all one-vertex extensions; sorted by encoding. */
std::vector<OperadSimplex> associates_of(const OperadSimplex& s, int K, int n);

struct Quadruple {
    int neut = 0;
    int act = 0;
    int oc = 0;
    int as = 0;

    std::array<int, 4> tuple() const { return {neut, act, oc, as}; }
    bool operator==(const Quadruple& o) const { return tuple() == o.tuple(); }
    bool operator!=(const Quadruple& o) const { return !(*this == o); }
    bool operator<(const Quadruple& o) const { return tuple() < o.tuple(); }
    std::string to_string() const;
};

/** Edge counts of an associate; u_as counts pairs i < j with alpha(i) active and
 *  alpha(j) strongly inert. */
Quadruple quadruple_of_associate(const OperadSimplex& assoc);
/** Quadruple from the first associate in canonical order. */
Quadruple quadruple(const OperadSimplex& s, int K, int n);

struct OrderedItem {
    OperadSimplex simplex;
    Quadruple quad;
};

/** Sort by quadruple, ties by encoding. */
std::vector<OrderedItem> order_A(std::vector<OrderedItem> items);

/** Nerve of Fin*^{<=K} x Delta^{1..n} truncated at m, with the operad view of each generator. */
struct Ambient {
    int K = 0;
    int n = 0;
    int D = 0;
    FinStarNerve nerve;
    std::vector<std::vector<OperadSimplex>> gens;

    const FiniteSimplicialSet& X() const { return *nerve.nerve; }
    OperadSimplex operad_simplex(const Simplex& x) const;
    /** Normal form in the truncated nerve; the empty simplex if the nondegenerate
     *  part lies above the truncation or outside Fin*^{<=K}. */
    Simplex simplex(const OperadSimplex& s) const;
};

Ambient make_ambient(int K, int n, int D);

enum class Order { Quadruple, Reversed };

struct Filtration {
    Ambient amb;
    int m = 0;
    SubsetMask F_prev;  // F(m-1)
    SubsetMask F_prime;
    SubsetMask F_second;
    SubsetMask F_m;
    std::vector<OrderedItem> A;
    std::vector<std::vector<OperadSimplex>> assoc;
    std::size_t without_associates = 0;
};

Filtration build_filtration(int K, int n, int m, Order order = Order::Quadruple);
/** F_{<=a} (inclusive) or F_{<a}. */
SubsetMask filtration_upto(const Filtration& F, int a, bool inclusive);
/** Simplicial subset generated by dimension rules: incomplete, dim < m, dim-m members of G2/G3. */
SubsetMask filtration_level(const Ambient& amb, int m);

/** Adds a generator and all its iterated faces. */
void add_closure(SubsetMask& mask, int level, int g);

struct DiamondOptions {
    Order order = Order::Quadruple;
};

Report check_diamond(int K, int n, int m, const DiamondOptions& opt = {});
Report quadruple_invariance(int K, int n, int m);
/** Groups partition, associate consistency, and j/k agreement with an independent rule. */
Report partition_sweep(int K, int n, int m);
/** Edge kinds and unique strongly inert / active factorization for sizes at most K. */
Report edge_taxonomy_sweep(int K, int n);

/** N(M) and N(Fin* x [lo..hi]) with the projection and both maps to Delta^1 (label >= 1 is side 1). */
struct FamilyNerve {
    const OperadModel* model = nullptr;
    std::shared_ptr<FiniteSimplicialSet> X;
    NerveInfo xinfo;
    std::shared_ptr<FiniteSimplicialSet> Y;
    NerveInfo yinfo;
    SimplicialMap p;
    OverInterval xside;
    OverInterval yside;

    /** Operad view of a simplex of Y. */
    OperadSimplex base_simplex(const Simplex& y) const;
};

FamilyNerve family_nerve(const OperadModel& M, int D);

struct HeadsTailsInput {
    std::string name;
    SSetPtr X;
    OverInterval xside;
    SSetPtr Y;
    OverInterval yside;
    SimplicialMap p;
    SubsetMask S;  // on Y
    std::vector<Simplex> Sigma;
    int n = 1;
};

struct HeadsTailsData {
    SubsetMask XS;
    SubsetMask XSp;
    std::vector<Simplex> sigma_a;
    std::vector<SubsetMask> lt;
    std::vector<SubsetMask> le;
    std::vector<SubsetMask> K;
    std::vector<SubsetMask> K0;
};

/** Empty when the hypotheses hold. */
std::vector<std::string> heads_tails_hypotheses(const HeadsTailsInput& in);
HeadsTailsData heads_tails_build(const HeadsTailsInput& in);
Report heads_tails_check(const HeadsTailsInput& in, const HeadsTailsData& d);
Report heads_tails_verify(const HeadsTailsInput& in);
/** One random single-simplex change to one stage; returns a description. */
std::string heads_tails_mutate(HeadsTailsData& d, std::mt19937& rng);

/** Instances over family models, each owning its nerves. */
struct HeadsTailsInstance {
    std::shared_ptr<OperadModel> model;
    std::shared_ptr<FamilyNerve> nerve;
    HeadsTailsInput input;
};
std::vector<HeadsTailsInstance> heads_tails_instances();
HeadsTailsInstance heads_tails_instance(std::shared_ptr<OperadModel> model, int D, int n, int sigma_count,
                                        unsigned seed, const std::string& name);

struct Lemma3125Input {
    std::string name;
    SSetPtr C;
    std::vector<int> c0;
    Simplex sigma;
    int bound = 3;
};

struct Lemma3125Options {
    /** Negative seeds leave the pushout candidate untouched. */
    int perturb_seed = -1;
};

std::vector<std::string> lemma_3125_hypotheses(const Lemma3125Input& in);
Report lemma_3125_verify(const Lemma3125Input& in, const Lemma3125Options& opt = {});
std::vector<Lemma3125Input> lemma_3125_instances();

struct Step3Options {
    bool reverse_lambda = false;
};

/** Case 1 of the inductive step for every sigma'_a in G2' with associates, at
 *  dimension m, over the family nerve truncated at D; comparisons run below D. */
Report step3_case1_verify(const OperadModel& M, int m, int D, const Step3Options& opt = {});

}  // namespace opkan

#endif
