#pragma once

// ============================================================================
// The graded bracket calculus on cochains U^(x)n -> T over a direct sum
// W = T (+) U: block embeddings, the multiplication cochain of W, the derived
// binary bracket, the H-dependent ternary bracket, Maurer-Cartan residuals,
// and the operator-twisted structure maps l1/l2/l3.
//
// Conventions fixed here (and asserted throughout the test suite):
//   [[A, B]](u,v)  for arity-1 A = B = R expands to
//       2 ( R(R(u)_s v + u_s R(v)) - R(u)_s R(v) )
//   [[A, B, C]] carries a global sign (-1)^{abc} over its six sums, and
//   [[R, R, R]](u1,u2) = -6 R(H_s(R u1, R u2)).
// ============================================================================

#include <ccalg/hochschild.hpp>

namespace ccalg {

// A direct-sum workspace: algebra T, bimodule U over it, and an arity-2 twist
// cochain H (T-arguments, U-values; may be zero). `sum` is the UNtwisted
// semidirect product on T (+) U and `mult` its multiplication cochain; the
// twist enters only through the ternary bracket.
struct SumSpace {
    ConformalAlgebra T;
    ConformalBimodule U;
    Cochain H;
    ConformalAlgebra sum;
    Cochain mult;

    SumSpace(ConformalAlgebra T_, ConformalBimodule U_, Cochain H_);

    int rT() const { return T.rank; }
    int rU() const { return U.rank; }
};

// Embed a cochain into a direct sum of total rank sum_rank: argument indices
// shift up by arg_offset, the value vector lands in the block starting at
// out_offset (all other output coordinates zero).
Cochain sum_embed(const Cochain& f, int arg_offset, int out_offset, int sum_rank);

// Inverse restriction: keep only table entries whose argument indices all lie
// in [arg_offset, arg_offset + arg_rank), shift them down, and slice the
// value block [out_offset, out_offset + out_rank).
Cochain sum_project(const Cochain& F, int arg_offset, int arg_rank, int out_offset,
                    int out_rank);

// The arity-2 cochain of an algebra's own lambda-product.
Cochain multiplication_cochain(const ConformalAlgebra& A);

// Derived binary bracket of two cochains U^(x)a -> T, U^(x)b -> T:
//   (-1)^a * project( [[mult, embed A], embed B] )  over the untwisted sum,
// with arguments restricted to the U-block and values to the T-block.
// Result arity a + b.
Cochain derived_bracket(const SumSpace& S, const Cochain& A, const Cochain& B);

// Ternary bracket of degree -1: six insertion sums pairing the twist H with
// two of the three cochains inside the third, with a global sign (-1)^{abc}.
// Result arity a + b + c - 1 (the total arity must be positive).
Cochain ternary_bracket(const SumSpace& S, const Cochain& A, const Cochain& B,
                        const Cochain& C);

// (1/2)[[R,R]] - (1/6)[[R,R,R]] for an arity-1 R; zero exactly when R
// satisfies the H-twisted Rota-Baxter identity
//   R(u)_s R(v) = R( R(u)_s v + u_s R(v) + H_s(R u, R v) ).
Cochain mc_residual(const SumSpace& S, const Cochain& R);

// The differential induced by a twisted Rota-Baxter operator:
//   d_R(g) = [[R, g]] - (1/2)[[R, R, g]].
// Throws std::domain_error when mc_residual(R) != 0 (the square would not
// vanish).
Cochain d_R(const SumSpace& S, const Cochain& R, const Cochain& g);

// Structure maps twisted by a Maurer-Cartan element R:
//   l1 = d_R,   l2(A,B) = [[A,B]] - [[R,A,B]],   l3 = ternary bracket.
Cochain twisted_l1(const SumSpace& S, const Cochain& R, const Cochain& A);
Cochain twisted_l2(const SumSpace& S, const Cochain& R, const Cochain& A, const Cochain& B);
Cochain twisted_l3(const SumSpace& S, const Cochain& A, const Cochain& B, const Cochain& C);

} // namespace ccalg
