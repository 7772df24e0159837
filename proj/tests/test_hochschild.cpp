#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "testutil.hpp"

using namespace ccalg;

namespace {

Cochain multiplication_of(const ConformalAlgebra& T) { return multiplication_cochain(T); }

} // namespace

TEST_CASE("cochain table basics") {
    Cochain f(2, 2, 2);
    CHECK(f.is_zero());
    CHECK(f.nl() == 1);
    // absent tuples evaluate to zero vectors
    auto v = f.value({0, 1});
    CHECK(v.size() == 2);
    CHECK(v[0].is_zero());
    f.set_value({0, 1}, {MPoly::var_D(1), MPoly::zero(1)});
    CHECK(!f.is_zero());
    f.add_value({0, 1}, {-MPoly::var_D(1), MPoly::zero(1)});
    CHECK(f.is_zero());

    Element p(2, 0);
    p.coeffs[1] = MPoly::constant(1, 0);
    Cochain c0 = Cochain::from_element(p, 5);
    CHECK(c0.n == 0);
    CHECK(c0.src_rank == 5);
    CHECK(c0.as_element() == p);

    Cochain id = Cochain::identity(3);
    for (int i = 0; i < 3; ++i) {
        auto row = id.value({i});
        for (int k = 0; k < 3; ++k) CHECK(row[k] == (i == k ? MPoly::constant(1, 0) : MPoly::zero(0)));
    }
}

TEST_CASE("cochain linear arithmetic") {
    tu::Rng g(31);
    for (int it = 0; it < 10; ++it) {
        Cochain a = tu::rcochain(g, 2, 2, 2, 2), b = tu::rcochain(g, 2, 2, 2, 2);
        CHECK(a + b == b + a);
        CHECK(a - a == Cochain::zero(2, 2, 2));
        CHECK((a + b) - b == a);
        CHECK(a * Rat(2) == a + a);
        CHECK(-a == a * Rat(-1));
    }
}

TEST_CASE("evaluation applies the slot rules") {
    tu::Fixture A = tu::fixa();
    // identity one-cochain: a derivative in the (last) argument passes through
    Cochain id = Cochain::identity(2);
    LambdaVec de1(2, 0);
    de1.coeffs[0] = MPoly::var_D(0);
    LambdaVec out = evaluate(id, {de1}, std::vector<MPoly>{}, 0);
    CHECK(out.coeffs[0] == MPoly::var_D(0));
    CHECK(out.coeffs[1].is_zero());

    // the rank-1 twist: H_s(d e, e) = -s H_s(e, e) = s u
    tu::Fixture B = tu::fixb();
    const MPoly s = MPoly::var_L(1, 1);
    LambdaVec de(1, 1);
    de.coeffs[0] = MPoly::var_D(1);
    LambdaVec e = LambdaVec::unit(1, 0, 1);
    CHECK(evaluate(B.S.H, {de, e}, {s}, 1).coeffs[0] == s);
    // last slot: H_s(e, d e) = (D + s) H_s(e, e) = -(D + s) u
    CHECK(evaluate(B.S.H, {e, de}, {s}, 1).coeffs[0] == -(MPoly::var_D(1) + s));
    // zero argument kills everything
    LambdaVec zero(1, 1);
    CHECK(evaluate(B.S.H, {zero, e}, {s}, 1).is_zero());
    // table consistency: evaluating on basis tuples reproduces stored entries
    CHECK(evaluate(B.S.H, {e, e}, {s}, 1).coeffs[0] == MPoly::constant(-1, 1));
}

TEST_CASE("differential of the identity is the multiplication; elements die on commutative input") {
    tu::Fixture B = tu::fixb();
    ComplexCtx ctx{B.S.T, B.S.U};
    Cochain did = hochschild_delta(ctx, Cochain::identity(1));
    CHECK(did.n == 2);
    CHECK(did.value({0, 0})[0] == MPoly::constant(1, 1));

    CHECK(hochschild_delta(ctx, Cochain::zero(1, 1, 1)).is_zero());

    tu::Fixture A = tu::fixa();
    ComplexCtx ctxA{A.S.T, A.S.U};
    Element e2 = tu::basis_element(2, 1);
    CHECK(hochschild_delta(ctxA, Cochain::from_element(e2, 2)).is_zero());
}

TEST_CASE("delta composed with delta is zero on random cochains") {
    tu::Rng g(32);
    for (auto& [T, U] : tu::pool_rank_le2()) {
        ComplexCtx ctx{T, U};
        for (int n = 0; n <= 2; ++n)
            for (int it = 0; it < 6; ++it) {
                Cochain f = tu::rcochain(g, n, T.rank, U.rank, 2);
                CHECK(hochschild_delta(ctx, hochschild_delta(ctx, f)).is_zero());
            }
    }
}

TEST_CASE("two-cocycle recognition") {
    tu::Fixture A = tu::fixa();
    ComplexCtx ctx{A.S.T, A.S.U};
    CHECK(is_two_cocycle(ctx, Cochain::zero(2, 2, 2)).ok);

    tu::Fixture B = tu::fixb();
    CHECK(is_two_cocycle(ComplexCtx{B.S.T, B.S.U}, B.S.H).ok);

    Cochain bad(2, 2, 2);
    bad.set_value({0, 0}, {MPoly::constant(1, 1), MPoly::zero(1)});
    CheckResult c = is_two_cocycle(ctx, bad);
    CHECK(!c.ok);
    CHECK(!c.witness.empty());
}

TEST_CASE("coboundaries of one-cochains are always two-cocycles") {
    tu::Rng g(33);
    for (auto& [T, U] : tu::pool_rank_le2()) {
        ComplexCtx ctx{T, U};
        for (int it = 0; it < 8; ++it) {
            Cochain h = tu::rcochain(g, 1, T.rank, U.rank, 2);
            CHECK(is_two_cocycle(ctx, hochschild_delta(ctx, h)).ok);
        }
    }
}

TEST_CASE("insertion composition: identity slots") {
    tu::Fixture B = tu::fixb();
    Cochain mu = multiplication_of(B.S.T);
    Cochain id = Cochain::identity(1);
    CHECK(compose_at(mu, id, 1) == mu);
    CHECK(compose_at(mu, id, 2) == mu);
    tu::Rng g(34);
    Cochain f = tu::rcochain(g, 2, 1, 1, 2);
    CHECK(compose_at(id, f, 1) == f);
}

TEST_CASE("insertion composition: both associations of the triple product agree") {
    for (const ConformalAlgebra& T : {tu::unit_current(), tu::dual_current()}) {
        Cochain mu = multiplication_of(T);
        CHECK(compose_at(mu, mu, 1) == compose_at(mu, mu, 2));
    }
}

TEST_CASE("self-bracket of the multiplication detects associativity") {
    for (const ConformalAlgebra& T : {tu::unit_current(), tu::dual_current(), tu::m2_current()}) {
        Cochain mu = multiplication_of(T);
        CHECK(gerstenhaber_bracket(mu, mu).is_zero());
    }
    // non-associative table: e_s e = D e
    ConformalAlgebra bad = ConformalAlgebra::zero(1);
    bad.basis = {"e"};
    bad.S[0][0][0] = MPoly::var_D(1);
    CHECK(!gerstenhaber_bracket(multiplication_of(bad), multiplication_of(bad)).is_zero());
}

TEST_CASE("bracket with the identity reproduces the multiplication") {
    // [mu, id] = mu (the differential of the identity cochain), never zero:
    // inserting the identity leaves both slots of mu intact and the outer
    // composition contributes mu once more with the opposite sign.
    for (const ConformalAlgebra& T : {tu::unit_current(), tu::dual_current()}) {
        Cochain mu = multiplication_of(T);
        Cochain br = gerstenhaber_bracket(mu, Cochain::identity(T.rank));
        CHECK(br == mu);
    }
}

TEST_CASE("graded antisymmetry of the composition bracket") {
    tu::Rng g(35);
    const int rank = 2;
    for (int it = 0; it < 6; ++it) {
        for (int m = 1; m <= 2; ++m)
            for (int n = 1; n <= 2; ++n) {
                Cochain f = tu::rcochain(g, m, rank, rank, 1);
                Cochain h = tu::rcochain(g, n, rank, rank, 1);
                int sign = ((m - 1) * (n - 1)) % 2 ? -1 : 1;
                CHECK(gerstenhaber_bracket(f, h) ==
                      gerstenhaber_bracket(h, f) * Rat(-sign));
            }
    }
}

TEST_CASE("the differential is the bracket with the semidirect multiplication") {
    // For f: T^(x)n -> U embedded into the untwisted semidirect sum W,
    // delta(f) = (-1)^(n-1) [mult_W, f-hat] restricted back to (T-args, U-values).
    tu::Rng g(36);
    for (auto& fx : {tu::fixa(), tu::fixb()}) {
        const int rT = fx.S.rT(), rU = fx.S.rU();
        ComplexCtx ctx{fx.S.T, fx.S.U};
        Cochain mult = fx.S.mult;
        for (int n = 1; n <= 2; ++n)
            for (int it = 0; it < 4; ++it) {
                Cochain f = tu::rcochain(g, n, rT, rU, 1);
                Cochain fhat = sum_embed(f, 0, rT, rT + rU);
                Cochain lifted = gerstenhaber_bracket(mult, fhat);
                Cochain back = sum_project(lifted, 0, rT, rT, rU);
                int sign = (n - 1) % 2 ? -1 : 1;
                CHECK(hochschild_delta(ctx, f) == back * Rat(sign));
            }
    }
}
