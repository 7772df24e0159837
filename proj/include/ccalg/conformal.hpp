#pragma once

// ============================================================================
// Associative conformal algebras and conformal bimodules over C[D], given by
// structure-constant tables of MPoly.
//
// Conventions used throughout the library:
//   * A "lambda vector" (LambdaVec) is an element of a free C[D]-module with
//     coefficients that may also involve ambient lambda variables L1..Lnl.
//   * A lambda product a_<s> b with subscript form s (a polynomial linear in
//     the ambient L-variables) is computed by the slot rules
//         a-coefficients:  D -> -s
//         b-coefficients:  D -> D + s
//         structure table: D -> D (output), L1 -> s
//     which encode sesquilinearity ((D a)_s b = -s (a_s b)) and the right
//     shift (a_s (D b) = (D + s)(a_s b)).
// ============================================================================

#include <ccalg/mpoly.hpp>

#include <optional>
#include <string>
#include <vector>

namespace ccalg {

// Element of a free module with ambient lambda variables: coeffs[k] multiplies
// the k-th basis vector. All coefficients share the same variable count.
struct LambdaVec {
    std::vector<MPoly> coeffs;

    LambdaVec() = default;
    LambdaVec(int rank, int nl) : coeffs(rank, MPoly(nl)) {}

    int rank() const { return static_cast<int>(coeffs.size()); }
    int nl() const { return coeffs.empty() ? 0 : coeffs[0].nl(); }
    bool is_zero() const;

    static LambdaVec unit(int rank, int k, int nl);

    LambdaVec operator+(const LambdaVec& o) const;
    LambdaVec operator-(const LambdaVec& o) const;
    LambdaVec operator-() const;
    LambdaVec operator*(const Rat& c) const;
    LambdaVec& operator+=(const LambdaVec& o);
    LambdaVec& operator-=(const LambdaVec& o);
    bool operator==(const LambdaVec& o) const { return coeffs == o.coeffs; }

    LambdaVec extend_vars(int new_nl) const;
    LambdaVec subst_L(int i, const MPoly& r) const;
};

// Element of T or U proper: coefficients involve D only (nl = 0).
using Element = LambdaVec;

// Outcome of a symbolic checker, with the first violating basis tuple and the
// nonzero residual recorded for debuggability.
struct CheckResult {
    bool ok = true;
    std::string witness;

    explicit operator bool() const { return ok; }
};

struct ConformalAlgebra {
    int rank = 0;
    std::vector<std::string> basis;
    // S[i][j][k] in variables (D, L1):  e_i ^L1 e_j = sum_k S[i][j][k] e_k.
    std::vector<std::vector<std::vector<MPoly>>> S;
    // Cached validation outcome; constructors do not validate silently.
    mutable std::optional<bool> validated;

    static ConformalAlgebra zero(int rank);
    MPoly table(int i, int j, int k) const { return S[i][j][k]; }
    // Largest total degree over all structure constants (0 for rank 0).
    int max_structure_degree() const;
};

struct ConformalBimodule {
    // The algebra acting (by value; ranks are small and values keep lifetimes
    // trivial).
    ConformalAlgebra over;
    int rank = 0; // rank of the carrier module
    std::vector<std::string> basis;
    // Lact[i][a][b]: e_i ^L1 m_a = sum_b Lact[i][a][b] m_b   (i over algebra)
    // Ract[a][i][b]: m_a ^L1 e_i = sum_b Ract[a][i][b] m_b
    std::vector<std::vector<std::vector<MPoly>>> Lact;
    std::vector<std::vector<std::vector<MPoly>>> Ract;
    mutable std::optional<bool> validated;

    static ConformalBimodule zero(const ConformalAlgebra& over, int rank);
    int max_structure_degree() const;
};

// ------------------------------------------------------------ lambda calculus

// Generic bilinear evaluation against a structure table with the slot rules
// above. `table[i][j][k]` has variables (D, L1); `sub` is the subscript form
// over the ambient variables of a and b (it must not involve D). `out_rank`
// is the rank of the target module (not inferable from an empty table).
LambdaVec bilinear_eval(const std::vector<std::vector<std::vector<MPoly>>>& table,
                        const LambdaVec& a, const LambdaVec& b, const MPoly& sub, int out_rank);

LambdaVec lambda_product(const ConformalAlgebra& T, const LambdaVec& a, const LambdaVec& b,
                         const MPoly& sub);
// Convenience: subscript is the single ambient variable L_slot.
LambdaVec lambda_product(const ConformalAlgebra& T, const LambdaVec& a, const LambdaVec& b,
                         int slot, int nl);

LambdaVec left_action(const ConformalBimodule& M, const LambdaVec& p, const LambdaVec& u,
                      const MPoly& sub);
LambdaVec left_action(const ConformalBimodule& M, const LambdaVec& p, const LambdaVec& u,
                      int slot, int nl);
LambdaVec right_action(const ConformalBimodule& M, const LambdaVec& u, const LambdaVec& p,
                       const MPoly& sub);
LambdaVec right_action(const ConformalBimodule& M, const LambdaVec& u, const LambdaVec& p,
                       int slot, int nl);

// The "right product at minus-D-minus-form" x_{-D - f} y, computed with a
// fresh slot variable that is then substituted by -D - f (with D the module
// generator acting on the assembled result). `table` is any of the three
// structure tables above.
LambdaVec product_at_conjugate(const std::vector<std::vector<std::vector<MPoly>>>& table,
                               const LambdaVec& x, const LambdaVec& y, const MPoly& form,
                               int out_rank);

// -------------------------------------------------------------------- checks

// (e_i ^l e_j) ^(l+m) e_k == e_i ^l (e_j ^m e_k) over all basis triples.
CheckResult check_associativity(const ConformalAlgebra& T);

// The three bimodule axioms over all basis triples:
//   (p ^l q) ^(l+m) u == p ^l (q ^m u)
//   (p ^l u) ^(l+m) q == p ^l (u ^m q)
//   (u ^l p) ^(l+m) q == u ^l (p ^m q)
CheckResult check_bimodule(const ConformalBimodule& M);

// --------------------------------------------------------------- constructors

// Current algebra over a finite-dimensional associative algebra given by
// rational structure constants A[i][j][k]. Verifies plain associativity of A
// and throws std::invalid_argument on failure.
ConformalAlgebra current_algebra(const std::vector<std::vector<std::vector<Rat>>>& A,
                                 const std::vector<std::string>& names);

// The algebra acting on itself: Lact = Ract = S.
ConformalBimodule regular_bimodule(const ConformalAlgebra& T);

} // namespace ccalg
