#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "testutil.hpp"

#include <algorithm>

using namespace ccalg;

namespace {

// Lift a matrix of D-only polynomials into the (D, L1) variable set.
PMatrix lift1(const PMatrix& M) {
    PMatrix out = M;
    for (auto& row : out)
        for (auto& e : row) e = e.extend_vars(1);
    return out;
}

long long count_status(const RigidityReport& rep, CocycleStatus s) {
    return std::count_if(rep.entries.begin(), rep.entries.end(),
                         [&](const RigidityEntry& e) { return e.status == s; });
}

} // namespace

TEST_CASE("linear family: rescaling the base operator passes every order") {
    tu::Fixture A = tu::fixa();
    DeformationReport rep = check_linear_deformation(A.S, A.R, A.R);
    REQUIRE(rep.orders.size() == 4);
    for (int k = 0; k < 4; ++k) {
        CHECK(rep.orders[k].order == k);
        CHECK(rep.orders[k].check.ok);
    }
    CHECK(rep.ok);
    CHECK(check_linear_deformation(A.S, A.R, Cochain::zero(1, 2, 2)).ok);
}

TEST_CASE("linear family: order-1 and order-2 obstructions are distinguished") {
    tu::Fixture A = tu::fixa();

    // u2 -> e1 is not closed: the family dies at order 1
    Cochain g1(1, 2, 2);
    g1.set_value({1}, {MPoly::constant(1, 0), MPoly::zero(0)});
    DeformationReport r1 = check_linear_deformation(A.S, A.R, g1);
    CHECK(!r1.ok);
    CHECK(r1.orders[0].check.ok);
    CHECK(!r1.orders[1].check.ok);
    CHECK(!r1.orders[1].check.witness.empty());

    // u1 -> e1 is closed but has a nonvanishing self-bracket: dies at order 2
    Cochain g2(1, 2, 2);
    g2.set_value({0}, {MPoly::constant(1, 0), MPoly::zero(0)});
    DeformationReport r2 = check_linear_deformation(A.S, A.R, g2);
    CHECK(!r2.ok);
    CHECK(r2.orders[1].check.ok);
    CHECK(!r2.orders[2].check.ok);
}

TEST_CASE("order-1 flag of a linear family is exactly the cocycle condition") {
    tu::Rng g(70);
    for (auto& fx : {tu::fixa(), tu::fixb()}) {
        const int rT = fx.S.rT(), rU = fx.S.rU();
        for (int it = 0; it < 10; ++it) {
            Cochain R1 = tu::rop(g, rU, rT, 1);
            DeformationReport rep = check_linear_deformation(fx.S, fx.R, R1);
            CHECK(rep.orders[1].check.ok == is_one_cocycle(fx.S, fx.R, R1).ok);
        }
    }
}

TEST_CASE("cocycle recognition on frozen instances") {
    tu::Fixture A = tu::fixa();
    CHECK(is_one_cocycle(A.S, A.R, A.R).ok);
    CHECK(is_one_cocycle(A.S, A.R, Cochain::zero(1, 2, 2)).ok);
    Cochain g1(1, 2, 2);
    g1.set_value({1}, {MPoly::constant(1, 0), MPoly::zero(0)});
    CheckResult bad = is_one_cocycle(A.S, A.R, g1);
    CHECK(!bad.ok);
    CHECK(!bad.witness.empty());

    // identity direction is obstructed on the twisted rank-1 fixture, while
    // its D-multiple is closed
    tu::Fixture B = tu::fixb();
    CHECK(!is_one_cocycle(B.S, B.R, Cochain::identity(1)).ok);
    Cochain Did(1, 1, 1);
    Did.set_value({0}, {MPoly::var_D(0)});
    CHECK(is_one_cocycle(B.S, B.R, Did).ok);
}

TEST_CASE("formal families: constant series pass, the twisted one obstructs") {
    tu::Fixture A = tu::fixa();
    DeformationReport ra = check_formal_deformation(A.S, {A.R, A.R}, 3);
    REQUIRE(ra.orders.size() == 4);
    CHECK(ra.ok);

    CHECK(check_formal_deformation(A.S, {A.R}, 2).ok);
    CHECK(check_formal_deformation(A.S, {}, 1).ok); // the zero family

    tu::Fixture B = tu::fixb();
    DeformationReport rb = check_formal_deformation(B.S, {B.R, B.R}, 1);
    CHECK(rb.orders[0].check.ok);
    CHECK(!rb.orders[1].check.ok);
    CHECK(!rb.ok);
}

TEST_CASE("formal order-1 agrees with the linear order-1 on random directions") {
    tu::Rng g(71);
    for (auto& fx : {tu::fixa(), tu::fixb()}) {
        const int rT = fx.S.rT(), rU = fx.S.rU();
        for (int it = 0; it < 6; ++it) {
            Cochain R1 = tu::rop(g, rU, rT, 1);
            DeformationReport f = check_formal_deformation(fx.S, {fx.R, R1}, 1);
            DeformationReport l = check_linear_deformation(fx.S, fx.R, R1);
            CHECK(f.orders[1].check.ok == l.orders[1].check.ok);
        }
    }
}

TEST_CASE("morphisms: identity, twist rescaling, and basis dilation") {
    tu::Fixture A = tu::fixa();
    MorphismReport mid =
        check_morphism(A.S, A.R, A.S, A.R, Cochain::identity(2), Cochain::identity(2));
    CHECK(mid.algebra.ok);
    CHECK(mid.left.ok);
    CHECK(mid.right.ok);
    CHECK(mid.twist.ok);
    CHECK(mid.intertwine.ok);
    CHECK(mid.ok);

    // psi = 2 id doubles the twist and halves the operator
    tu::Fixture B = tu::fixb();
    SumSpace S2(B.S.T, B.S.U, B.S.H * Rat(2));
    MorphismReport ms = check_morphism(B.S, B.R, S2, B.R * Rat(1, 2), Cochain::identity(1),
                                       Cochain::identity(1) * Rat(2));
    CHECK(ms.ok);

    // keeping the twist instead breaks exactly the twist condition
    MorphismReport mt = check_morphism(B.S, B.R, B.S, B.R * Rat(1, 2), Cochain::identity(1),
                                       Cochain::identity(1) * Rat(2));
    CHECK(mt.algebra.ok);
    CHECK(mt.left.ok);
    CHECK(mt.right.ok);
    CHECK(!mt.twist.ok);
    CHECK(mt.intertwine.ok);
    CHECK(!mt.ok);

    // phi = 2 id is not an algebra map on a unital algebra
    MorphismReport ma = check_morphism(B.S, B.R, B.S, B.R, Cochain::identity(1) * Rat(2),
                                       Cochain::identity(1) * Rat(2));
    CHECK(!ma.algebra.ok);
    CHECK(!ma.ok);

    // dilating the nilpotent direction of the dual-numbers fixture
    Cochain dil(1, 2, 2);
    dil.set_value({0}, {MPoly::constant(1, 0), MPoly::zero(0)});
    dil.set_value({1}, {MPoly::zero(0), MPoly::constant(3, 0)});
    MorphismReport md = check_morphism(A.S, A.R, A.S, A.R * Rat(3), dil, dil);
    CHECK(md.ok);
}

TEST_CASE("first-order gauge pair: vanishing and commutator instances") {
    tu::Fixture A = tu::fixa();
    EquivalencePair p0 = equivalence_pair(A.S, A.R, Element(2, 0));
    CHECK(tu::pmatrix_is_zero(p0.phi));
    CHECK(tu::pmatrix_is_zero(p0.psi));

    // the nilpotent generator is central: both maps vanish
    EquivalencePair pe2 = equivalence_pair(A.S, A.R, tu::basis_element(2, 1));
    CHECK(tu::pmatrix_is_zero(pe2.phi));
    CHECK(tu::pmatrix_is_zero(pe2.psi));

    tu::Fixture B = tu::fixb();
    EquivalencePair pe = equivalence_pair(B.S, B.R, tu::basis_element(1, 0));
    CHECK(tu::pmatrix_is_zero(pe.phi));
    CHECK(tu::pmatrix_is_zero(pe.psi));

    // on the matrix fixture the first map is the commutator with p = E12
    tu::Fixture M = tu::inverse_id_fixture(tu::m2_current());
    EquivalencePair pm = equivalence_pair(M.S, M.R, tu::basis_element(4, 1));
    CHECK(pm.phi[0][2] == MPoly::constant(1, 1));  // E21 -> E11 - E22
    CHECK(pm.phi[3][2] == MPoly::constant(-1, 1));
    CHECK(pm.phi[1][0] == MPoly::constant(-1, 1)); // E11 -> -E12
    CHECK(pm.phi[1][3] == MPoly::constant(1, 1));  // E22 -> E12
    CHECK(pm.phi[0][1].is_zero());                 // E12 -> 0
    CHECK(pm.phi[1][1].is_zero());
    CHECK(tu::pmatrix_is_zero(pm.psi)); // twist terms cancel the module terms
}

TEST_CASE("linear equivalence: trivial gauges relate a family to itself") {
    tu::Rng g(72);
    tu::Fixture A = tu::fixa();
    for (int it = 0; it < 5; ++it) {
        Cochain R1 = tu::rop(g, 2, 2, 1);
        EquivalenceReport e0 = check_linear_equivalence(A.S, A.R, R1, R1, Element(2, 0));
        CHECK(e0.ok);
        // e2 generates the zero gauge pair, so it also fixes every family
        EquivalenceReport e2 =
            check_linear_equivalence(A.S, A.R, R1, R1, tu::basis_element(2, 1));
        CHECK(e2.algebra_second_order.ok);
        CHECK(e2.module_mixed.ok);
        CHECK(e2.module_second_order.ok);
        CHECK(e2.twist_mixed.ok);
        CHECK(e2.twist_second_order.ok);
        CHECK(e2.operator_first.ok);
        CHECK(e2.operator_second.ok);
        CHECK(e2.difference_coboundary.ok);
        CHECK(e2.ok);
    }
}

TEST_CASE("linear equivalence flags the second-order obstruction") {
    tu::Fixture M = tu::inverse_id_fixture(tu::m2_current());
    Element p = tu::basis_element(4, 1); // E12
    Cochain R1 = twisted_delta(M.S, M.R, Cochain::from_element(p, 4));
    CHECK(!R1.is_zero());
    EquivalenceReport rep = check_linear_equivalence(M.S, M.R, R1, Cochain::zero(1, 4, 4), p);
    CHECK(rep.difference_coboundary.ok);
    CHECK(rep.operator_first.ok);
    CHECK(!rep.algebra_second_order.ok);
    CHECK(!rep.algebra_second_order.witness.empty());
    CHECK(!rep.ok);
}

TEST_CASE("first-order gauging of a linear family") {
    tu::Rng g(73);
    tu::Fixture A = tu::fixa();
    Element e2 = tu::basis_element(2, 1);
    PMatrix z = gauge_order1(A.S, A.R, Cochain::zero(1, 2, 2), e2);
    CHECK(tu::pmatrix_is_zero(z));
    for (int it = 0; it < 5; ++it) {
        Cochain R1 = tu::rop(g, 2, 2, 1);
        // the gauge pair of e2 vanishes, so gauging returns the family itself
        PMatrix M = gauge_order1(A.S, A.R, R1, e2);
        CHECK(M == lift1(cochain_matrix(R1)));
    }
}

TEST_CASE("self-conjugate elements across the fixture family") {
    tu::Fixture A = tu::fixa();
    NijenhuisReport n0 = is_nijenhuis(A.S, A.R, Element(2, 0));
    CHECK(n0.self_conjugate.ok);
    CHECK(n0.gauge.ok);
    CHECK(n0.ok);
    CHECK(is_nijenhuis(A.S, A.R, tu::basis_element(2, 1)).ok);

    // no non-central element of the full matrix algebra is self-conjugate
    tu::Fixture M = tu::inverse_id_fixture(tu::m2_current());
    NijenhuisReport nm = is_nijenhuis(M.S, M.R, tu::basis_element(4, 1));
    CHECK(!nm.self_conjugate.ok);
    CHECK(!nm.ok);
    Element diag(4, 0);
    diag.coeffs[0] = MPoly::constant(1, 0);
    diag.coeffs[3] = MPoly::constant(-1, 0);
    CHECK(!is_nijenhuis(M.S, M.R, diag).ok);

    // in the nilpotent fixture every element is self-conjugate
    tu::Fixture N = tu::inverse_id_fixture(tu::nilp3_current());
    for (int k = 0; k < 3; ++k) CHECK(is_nijenhuis(N.S, N.R, tu::basis_element(3, k)).ok);
    Element mix(3, 0);
    mix.coeffs[0] = MPoly::constant(1, 0);
    mix.coeffs[1] = MPoly::constant(2, 0);
    CHECK(is_nijenhuis(N.S, N.R, mix).ok);
}

TEST_CASE("rigidity search: vacuous, obstructed, and witnessed statuses") {
    // twisted rank-1 fixture: no constant cocycles at all
    tu::Fixture B = tu::fixb();
    RigidityReport rb0 = rigidity_witness(B.S, B.R, 0);
    CHECK(rb0.truncation == 0);
    CHECK(rb0.entries.empty());
    CHECK(rb0.witnessed);

    // ... and one unsolvable class in degree 1
    RigidityReport rb1 = rigidity_witness(B.S, B.R, 1);
    REQUIRE(rb1.entries.size() == 1);
    CHECK(rb1.entries[0].status == CocycleStatus::unsolved);
    CHECK(!rb1.witnessed);

    // dual fixture: two constant classes, neither a coboundary
    tu::Fixture A = tu::fixa();
    RigidityReport ra = rigidity_witness(A.S, A.R, 0);
    REQUIRE(ra.entries.size() == 2);
    for (const RigidityEntry& e : ra.entries) {
        CHECK(e.status == CocycleStatus::unsolved);
        CHECK(twisted_delta(A.S, A.R, e.cocycle).is_zero());
        CHECK(e.cocycle.max_entry_degree() == 0);
    }
    CHECK(!ra.witnessed);
}

TEST_CASE("rigidity search distinguishes solvable from self-conjugate") {
    // full matrix algebra: every class solves, no solution is self-conjugate
    tu::Fixture M = tu::inverse_id_fixture(tu::m2_current());
    RigidityReport rm = rigidity_witness(M.S, M.R, 0);
    REQUIRE(rm.entries.size() == 3);
    CHECK(count_status(rm, CocycleStatus::solved_not_nijenhuis) == 3);
    CHECK(!rm.witnessed);
    for (const RigidityEntry& e : rm.entries) {
        CHECK(twisted_delta(M.S, M.R, Cochain::from_element(e.p, 4)) == e.cocycle);
        CHECK(!is_nijenhuis(M.S, M.R, e.p).ok);
    }

    // nilpotent fixture: the solvable classes have self-conjugate solutions
    tu::Fixture N = tu::inverse_id_fixture(tu::nilp3_current());
    RigidityReport rn = rigidity_witness(N.S, N.R, 0);
    REQUIRE(rn.entries.size() == 4);
    CHECK(count_status(rn, CocycleStatus::nijenhuis) == 2);
    CHECK(count_status(rn, CocycleStatus::unsolved) == 2);
    CHECK(!rn.witnessed);
    for (const RigidityEntry& e : rn.entries)
        if (e.status == CocycleStatus::nijenhuis) {
            CHECK(twisted_delta(N.S, N.R, Cochain::from_element(e.p, 3)) == e.cocycle);
            CHECK(is_nijenhuis(N.S, N.R, e.p).ok);
        }
}
