#pragma once

// Shared fixtures, random generators, and hand-rolled oracle formulas used
// across the test binaries. Everything here is deterministic: every test
// seeds its own RNG.

#include <ccalg/deform.hpp>
#include <ccalg/io.hpp>

#include <functional>
#include <random>
#include <string>
#include <utility>
#include <vector>

namespace tu {

using namespace ccalg;
using Rng = std::mt19937_64;

// ------------------------------------------------------------------ fixtures

// Current algebra of the dual numbers Q[x]/(x^2): basis e1 = 1, e2 = x.
inline ConformalAlgebra dual_current() {
    std::vector<std::vector<std::vector<Rat>>> A(
        2, std::vector<std::vector<Rat>>(2, std::vector<Rat>(2, Rat(0))));
    A[0][0][0] = 1;
    A[0][1][1] = 1;
    A[1][0][1] = 1;
    return current_algebra(A, {"e1", "e2"});
}

// Current algebra of Q: basis e = 1.
inline ConformalAlgebra unit_current() {
    std::vector<std::vector<std::vector<Rat>>> A(
        1, std::vector<std::vector<Rat>>(1, std::vector<Rat>(1, Rat(1))));
    return current_algebra(A, {"e"});
}

struct Fixture {
    SumSpace S;
    Cochain R;
};

// Weight-0 Rota-Baxter fixture: dual-numbers current algebra acting on its
// regular bimodule (u-basis u1, u2), H = 0, R(u1) = e2, R(u2) = 0.
inline Fixture fixa() {
    ConformalAlgebra T = dual_current();
    ConformalBimodule U = regular_bimodule(T);
    U.basis = {"u1", "u2"};
    Cochain R(1, 2, 2);
    R.set_value({0}, {MPoly::zero(0), MPoly::constant(1, 0)});
    return {SumSpace(T, U, Cochain::zero(2, 2, 2)), R};
}

// Invertible-one-cochain fixture on the rank-1 unit algebra: R = id,
// H(e, e) = -u (the coboundary twist of the identity).
inline Fixture fixb() {
    ConformalAlgebra T = unit_current();
    ConformalBimodule U = regular_bimodule(T);
    U.basis = {"u"};
    Cochain H(2, 1, 1);
    H.set_value({0, 0}, {MPoly::constant(-1, 1)});
    Cochain R(1, 1, 1);
    R.set_value({0}, {MPoly::constant(1, 0)});
    return {SumSpace(T, U, H), R};
}

// Full 2x2 matrix current algebra, basis E11, E12, E21, E22.
inline ConformalAlgebra m2_current() {
    auto idx = [](int r, int c) { return 2 * r + c; };
    std::vector<std::vector<std::vector<Rat>>> A(
        4, std::vector<std::vector<Rat>>(4, std::vector<Rat>(4, Rat(0))));
    for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b)
            for (int c = 0; c < 2; ++c)
                for (int d = 0; d < 2; ++d)
                    if (b == c) A[idx(a, b)][idx(c, d)][idx(a, d)] = 1;
    return current_algebra(A, {"E11", "E12", "E21", "E22"});
}

// Rank-3 nilpotent current algebra: basis x, y, z with x_s y = z and every
// other product zero (so all triple products vanish).
inline ConformalAlgebra nilp3_current() {
    std::vector<std::vector<std::vector<Rat>>> A(
        3, std::vector<std::vector<Rat>>(3, std::vector<Rat>(3, Rat(0))));
    A[0][1][2] = 1;
    return current_algebra(A, {"x", "y", "z"});
}

// Fixture built by inverting the identity one-cochain on a current algebra:
// R = id, H = -(coboundary of id), always a valid twisted Rota-Baxter pair.
inline Fixture inverse_id_fixture(const ConformalAlgebra& T) {
    ConformalBimodule U = regular_bimodule(T);
    OperatorPair p = from_invertible_onecochain(T, U, Cochain::identity(T.rank));
    return {SumSpace(T, U, p.H), p.R};
}

// ---------------------------------------------------------------- randomness

inline Rat rrat(Rng& g) {
    std::uniform_int_distribution<int> num(-3, 3);
    std::uniform_int_distribution<int> den(1, 2);
    return Rat(num(g), den(g));
}

inline Rat rrat_nonzero(Rng& g) {
    Rat r = rrat(g);
    while (r == 0) r = rrat(g);
    return r;
}

// Random polynomial in D, L1..Lnl of total degree <= maxdeg (possibly zero).
inline MPoly rpoly(Rng& g, int nl, int maxdeg, int tries = 3) {
    std::vector<MPoly::Expo> monos;
    MPoly::Expo cur(static_cast<size_t>(nl) + 1, 0);
    // enumerate all monomials of total degree <= maxdeg
    std::function<void(int, int)> rec = [&](int pos, int rem) {
        if (pos == static_cast<int>(cur.size())) {
            monos.push_back(cur);
            return;
        }
        for (int e = 0; e <= rem; ++e) {
            cur[static_cast<size_t>(pos)] = e;
            rec(pos + 1, rem - e);
        }
        cur[static_cast<size_t>(pos)] = 0;
    };
    rec(0, maxdeg);
    std::uniform_int_distribution<size_t> pick(0, monos.size() - 1);
    MPoly p(nl);
    for (int t = 0; t < tries; ++t) p += MPoly::monomial(rrat(g), monos[pick(g)]);
    return p;
}

// Random cochain with table entries of total degree <= maxdeg; roughly half
// of the (tuple, target) slots are populated.
inline Cochain rcochain(Rng& g, int n, int src, int tgt, int maxdeg) {
    Cochain f(n, src, tgt);
    const int nl = n > 0 ? n - 1 : 0;
    std::vector<std::vector<int>> tuples{{}};
    for (int s = 0; s < n; ++s) {
        std::vector<std::vector<int>> next;
        for (const auto& t : tuples)
            for (int i = 0; i < src; ++i) {
                auto u = t;
                u.push_back(i);
                next.push_back(std::move(u));
            }
        tuples = std::move(next);
    }
    std::bernoulli_distribution keep(0.5);
    for (const auto& t : tuples) {
        std::vector<MPoly> v(static_cast<size_t>(tgt), MPoly(nl));
        bool any = false;
        for (int k = 0; k < tgt; ++k)
            if (keep(g)) {
                v[static_cast<size_t>(k)] = rpoly(g, nl, maxdeg);
                any = any || !v[static_cast<size_t>(k)].is_zero();
            }
        if (any) f.set_value(t, std::move(v));
    }
    return f;
}

// Random arity-1 operator U -> T with entries in D of degree <= maxdeg.
inline Cochain rop(Rng& g, int src, int tgt, int maxdeg) {
    return rcochain(g, 1, src, tgt, maxdeg);
}

// Random element (coefficient vector of polynomials in D alone).
inline Element relement(Rng& g, int rank, int maxdeg) {
    Element v(rank, 0);
    for (int i = 0; i < rank; ++i) v.coeffs[static_cast<size_t>(i)] = rpoly(g, 0, maxdeg);
    return v;
}

// Pool of small validated (algebra, bimodule) pairs of rank <= 2 used by the
// randomized property tests.
inline std::vector<std::pair<ConformalAlgebra, ConformalBimodule>> pool_rank_le2() {
    std::vector<std::pair<ConformalAlgebra, ConformalBimodule>> out;
    out.emplace_back(unit_current(), regular_bimodule(unit_current()));
    out.emplace_back(dual_current(), regular_bimodule(dual_current()));
    {
        // Q x Q: two orthogonal idempotents.
        std::vector<std::vector<std::vector<Rat>>> A(
            2, std::vector<std::vector<Rat>>(2, std::vector<Rat>(2, Rat(0))));
        A[0][0][0] = 1;
        A[1][1][1] = 1;
        ConformalAlgebra T = current_algebra(A, {"f1", "f2"});
        out.emplace_back(T, regular_bimodule(T));
    }
    {
        // rank-2 zero-product algebra with zero actions.
        std::vector<std::vector<std::vector<Rat>>> A(
            2, std::vector<std::vector<Rat>>(2, std::vector<Rat>(2, Rat(0))));
        ConformalAlgebra T = current_algebra(A, {"n1", "n2"});
        out.emplace_back(T, regular_bimodule(T));
    }
    return out;
}

// ------------------------------------------------------------ oracle formulas

// Direct expansion of the binary-bracket anchor:
//   (u, v) -> 2 ( R(R(u)_s v + u_s R(v)) - R(u)_s R(v) ).
inline Cochain binary_anchor(const SumSpace& S, const Cochain& R) {
    const int rU = S.rU(), rT = S.rT();
    Cochain out(2, rU, rT);
    const MPoly s = MPoly::var_L(1, 1);
    for (int a = 0; a < rU; ++a)
        for (int b = 0; b < rU; ++b) {
            LambdaVec u = LambdaVec::unit(rU, a, 1), v = LambdaVec::unit(rU, b, 1);
            LambdaVec Ru = apply_map(R, u), Rv = apply_map(R, v);
            LambdaVec inner = left_action(S.U, Ru, v, s) + right_action(S.U, u, Rv, s);
            LambdaVec val = (apply_map(R, inner) - lambda_product(S.T, Ru, Rv, s)) * Rat(2);
            out.set_value({a, b}, val.coeffs);
        }
    return out;
}

// Direct expansion of the ternary-bracket anchor:
//   (u1, u2) -> -6 R( H_s(R(u1), R(u2)) ).
inline Cochain ternary_anchor(const SumSpace& S, const Cochain& R) {
    const int rU = S.rU(), rT = S.rT();
    Cochain out(2, rU, rT);
    const MPoly s = MPoly::var_L(1, 1);
    for (int a = 0; a < rU; ++a)
        for (int b = 0; b < rU; ++b) {
            LambdaVec Ru = apply_map(R, LambdaVec::unit(rU, a, 1));
            LambdaVec Rv = apply_map(R, LambdaVec::unit(rU, b, 1));
            LambdaVec val = apply_map(R, evaluate(S.H, {Ru, Rv}, {s}, 1)) * Rat(-6);
            out.set_value({a, b}, val.coeffs);
        }
    return out;
}

// Defect of the twisted Rota-Baxter identity as a 2-cochain:
//   (u, v) -> R(u)_s R(v) - R( u_s R(v) + R(u)_s v + H_s(R(u), R(v)) ).
inline Cochain trb_defect(const SumSpace& S, const Cochain& R) {
    const int rU = S.rU(), rT = S.rT();
    Cochain out(2, rU, rT);
    const MPoly s = MPoly::var_L(1, 1);
    for (int a = 0; a < rU; ++a)
        for (int b = 0; b < rU; ++b) {
            LambdaVec u = LambdaVec::unit(rU, a, 1), v = LambdaVec::unit(rU, b, 1);
            LambdaVec Ru = apply_map(R, u), Rv = apply_map(R, v);
            LambdaVec inner = right_action(S.U, u, Rv, s) + left_action(S.U, Ru, v, s) +
                              evaluate(S.H, {Ru, Rv}, {s}, 1);
            LambdaVec val = lambda_product(S.T, Ru, Rv, s) - apply_map(R, inner);
            out.set_value({a, b}, val.coeffs);
        }
    return out;
}

// Basis element of T as a constant Element.
inline Element basis_element(int rank, int k) { return LambdaVec::unit(rank, k, 0); }

// Coefficient-wise polynomial scaling of a vector.
inline LambdaVec scale(const LambdaVec& v, const MPoly& m) {
    LambdaVec out = v;
    for (auto& c : out.coeffs) c = c * m;
    return out;
}

// PMatrix of zeros, for comparisons against gauge outputs.
inline bool pmatrix_is_zero(const PMatrix& M) {
    for (const auto& row : M)
        for (const auto& e : row)
            if (!e.is_zero()) return false;
    return true;
}

} // namespace tu
