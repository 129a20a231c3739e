#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "opkan/operad.hpp"
#include "opkan/suites.hpp"

using namespace opkan;

TEST_CASE("fixed models satisfy the operad conditions") {
    for (int K = 1; K <= 3; ++K) {
        Report c = validate_operad_model(comm_model(K));
        CHECK_MESSAGE(c.ok(), c.first_failure());
        Report t = validate_operad_model(triv_model(K));
        CHECK_MESSAGE(t.ok(), t.first_failure());
    }
    Report z = validate_operad_model(monoid_model(cyclic_monoid(2), 2));
    CHECK_MESSAGE(z.ok(), z.first_failure());
}

TEST_CASE("removing the designated lifts over one inert map breaks condition (a)") {
    OperadModel M = comm_model(2);
    int target = -1;
    for (int f = 0; f < M.cat->arrow_count() && target < 0; ++f)
        if (M.inert[f] && M.edge_of(f).map == PointedMap(2, 1, {1, 0})) target = M.proj.arr[f];
    REQUIRE(target >= 0);
    for (int f = 0; f < M.cat->arrow_count(); ++f)
        if (M.proj.arr[f] == target) M.inert[f] = 0;
    Report r = validate_operad_model(M);
    CHECK_FALSE(r.ok());
    CHECK(r.first_failure().find("(a) lift of 2>1:[1,0]") != std::string::npos);
}

TEST_CASE("monoid models") {
    OperadModel Z = monoid_model(cyclic_monoid(2), 2);
    CHECK(Z.fiber(2, 1).size() == 4);
    CHECK(Z.fiber(1, 1).size() == 2);
    OperadModel T = monoid_model(cyclic_monoid(1), 3);
    OperadModel C = comm_model(3);
    CHECK(T.cat->object_count() == C.cat->object_count());
    for (int k = 0; k <= 3; ++k) CHECK(T.fiber(k, 1).size() == C.fiber(k, 1).size());
    CHECK(cyclic_monoid(3).check().empty());
    Monoid bad = cyclic_monoid(2);
    bad.table[0][1] = 0;
    CHECK_FALSE(bad.check().empty());
}

TEST_CASE("one arrow over each inert map out of a comm object") {
    OperadModel M = comm_model(2);
    int x = M.fiber(2, 1).front();
    int count = 0;
    for (int f : M.cat->out(x)) count += M.edge_of(f).map == PointedMap(2, 1, {1, 0});
    CHECK(count == 1);
}

TEST_CASE("mapping cylinders") {
    OperadModel A = comm_model(2);
    OperadModel cyl = family_from_functor(identity_functor(A));
    for (int k = 0; k <= 2; ++k) {
        CHECK(cyl.fiber(k, 0).size() == A.fiber(k, 1).size());
        CHECK(cyl.fiber(k, 1).size() == A.fiber(k, 1).size());
    }
    for (int x : cyl.fiber(2, 0))
        for (int y : cyl.fiber(1, 1)) {
            CHECK(cyl.cat->hom(x, y).size() == A.cat->hom(A.fiber(2, 1).front(), A.fiber(1, 1).front()).size());
            CHECK(cyl.cat->hom(y, x).empty());
        }
    Report r = validate_operad_model(cyl);
    CHECK_MESSAGE(r.ok(), r.first_failure());
    OperadModel Z4 = monoid_model(cyclic_monoid(4), 2);
    OperadModel Z2 = monoid_model(cyclic_monoid(2), 2);
    OperadModel q = family_from_functor(monoid_functor(Z4, Z2, {0, 1, 0, 1}, 4, 2));
    Report rq = validate_operad_model(q);
    CHECK_MESSAGE(rq.ok(), rq.first_failure());
}

TEST_CASE("active arrows of Fin*") {
    CHECK(act_arrows(1, 1).count(0) == 3);
    CHECK(act_arrows(0, 1).count(0) == 1);
    FiniteSimplicialSet A = act_arrows(2, 2);
    CHECK(A.check().empty());
}

TEST_CASE("envelopes of the fixed models") {
    OperadModel C = comm_model(2);
    EnvelopeSet E = envelope(C, 2);
    CHECK(E.fiber(1).size() == 3);
    CHECK(E.fiber(0).size() == C.fiber(0, 1).size());
    for (OperadModel M : {comm_model(2), triv_model(2), monoid_model(cyclic_monoid(2), 2)}) {
        EnvelopeSet F = envelope(M, 2);
        Report fp = envelope_fiber_product_check(F);
        CHECK_MESSAGE(fp.ok(), fp.first_failure());
        Report cc = envelope_cocartesian_check(F);
        CHECK_MESSAGE(cc.ok(), cc.first_failure());
    }
}

TEST_CASE("envelope projection and section") {
    CHECK(rho_shriek_env(PointedMap(3, 2, {1, 2, 2}), 1).k == 1);
    CHECK(rho_shriek_env(PointedMap(3, 2, {1, 2, 2}), 2).k == 2);
    for (int i = 1; i <= 3; ++i) CHECK(rho_shriek_env(PointedMap(4, 3, {0, 3, 1, 2}), i).k == 1);
    EnvObject s = phi_section({2, 1});
    CHECK(s.k == 3);
    CHECK(s.act == PointedMap(3, 2, {1, 1, 2}));
    EnvObject ones = phi_section({1, 1, 1});
    CHECK(ones.act == PointedMap::identity(3));
    Report r = section_identity_check(6, 3);
    CHECK_MESSAGE(r.ok(), r.first_failure());
}

TEST_CASE("slice isomorphisms") {
    CHECK(slice_iso_check(1, PointedMap::identity(1), 1).ok());
    CHECK(slice_iso_check(2, PointedMap(2, 2, {2, 1}), 1).ok());
    CHECK(slice_iso_check(2, PointedMap(3, 2, {1, 2, 2}), 2).ok());
    SliceIsoOptions o;
    o.perturb = true;
    CHECK_FALSE(slice_iso_check(2, PointedMap(3, 2, {1, 1, 2}), 2, o).ok());
    CHECK_THROWS_AS(slice_iso_check(1, PointedMap(2, 1, {1, 0}), 1), HypothesisViolation);
}

TEST_CASE("direct sums glue objects") {
    OperadModel C = comm_model(3);
    int a = C.fiber(1, 1).front(), b = C.fiber(2, 1).front();
    DirectSum d = direct_sum_objects(C, {a, b});
    CHECK(C.size_of(d.object) == 3);
    CHECK(d.projections.size() == 2);
    DirectSum one = direct_sum_objects(C, {b});
    CHECK(one.object == b);
    CHECK(C.cat->is_identity(one.projections.front()));
    OperadModel Z = monoid_model(cyclic_monoid(2), 3);
    int t1 = monoid_tuple_object({1}, 2), t2 = monoid_tuple_object({0, 1}, 2);
    CHECK(direct_sum_objects(Z, {t1, t2}).object == monoid_tuple_object({1, 0, 1}, 2));
}
