#pragma once

// ============================================================================
// Twisted Rota-Baxter operators R: U -> T against a twist 2-cocycle H:
// verification, the graph criterion, the induced algebra on U and the induced
// U-bimodule on T, the differential of that induced complex, truncated
// cohomology dimensions, and the cocycle-perturbation constructions.
//
// Operators (R, h, h') are arity-1 cochains: their table entries are
// polynomials in D alone, i.e. matrices over the polynomial ring in D,
// applied D-linearly.
// ============================================================================

#include <ccalg/linalg.hpp>
#include <ccalg/linf.hpp>

namespace ccalg {

// Apply an arity-1 cochain as a D-linear map to a vector over its source
// module (any ambient variable set).
LambdaVec apply_map(const Cochain& f, const LambdaVec& u);

// Matrix view of an arity-1 cochain: tgt_rank x src_rank entries in D.
PMatrix cochain_matrix(const Cochain& f);
Cochain matrix_cochain(const PMatrix& M, int src_rank, int tgt_rank);

// R(u)_s R(v) = R( u_s R(v) + R(u)_s v + H_s(R u, R v) ) over all basis
// pairs; first-failure witness on the result.
CheckResult check_trb(const SumSpace& S, const Cochain& R);

// Closure of { (R(u), u) } under the H-twisted semidirect product: the
// T-component of every product of graph generators must equal R applied to
// its U-component. Agrees with check_trb.
CheckResult graph_check(const SumSpace& S, const Cochain& R);

// u *_s v = u_s R(v) + R(u)_s v + H_s(R u, R v) as structure constants on U.
// The _raw variant never validates; the plain one runs check_trb first and
// throws std::domain_error with the witness on failure (associativity of the
// result is equivalent to that check).
ConformalAlgebra induced_product_raw(const SumSpace& S, const Cochain& R);
ConformalAlgebra induced_product(const SumSpace& S, const Cochain& R);

// Actions of (U, *) on T:
//   l_s(u, p) = R(u)_s p - R( u_s p + H_s(R u, p) )
//   r_s(p, u) = p_s R(u) - R( p_s u + H_s(p, R u) )
ConformalBimodule induced_bimodule_raw(const SumSpace& S, const Cochain& R);
ConformalBimodule induced_bimodule(const SumSpace& S, const Cochain& R);

// The complex of cochains U^(x)m -> T over the induced structures (built
// without validation; its differential is meaningful as a complex exactly
// when R passes check_trb).
ComplexCtx twisted_complex(const SumSpace& S, const Cochain& R);

// Differential of that complex. For arity >= 1 the terms group as: act by
// R(u_1) on the left minus R of the two left-insertion corrections, the
// alternating inner *-insertions, and the three right-edge terms with sign
// (-1)^{m+1}; arity 0 instantiates the edge subscripts at -D and 0.
Cochain twisted_delta(const SumSpace& S, const Cochain& R, const Cochain& g);

// Largest total degree among the induced structure constants; one application
// of the induced differential raises table degrees by at most this amount.
int induced_structure_degree(const SumSpace& S, const Cochain& R);

struct CohomologyReport {
    int degree = 0;     // cochain arity n
    int truncation = 0; // max total degree of table entries
    int window = 0;     // truncation + max structure degree, the target space
    long long dim_cocycles = 0;
    long long dim_coboundaries_in_window = 0;
    long long dim_quotient = 0;
    bool stabilized = false; // same quotient dimension at truncation + 1
};

CohomologyReport cohomology(const SumSpace& S, const Cochain& R, int degree, int truncation);

// Basis of the degree-truncated cocycle space in arity `degree` (each entry
// a cochain with table polynomials of total degree <= truncation).
std::vector<Cochain> cocycle_basis(const SumSpace& S, const Cochain& R, int degree,
                                   int truncation);

// H' = H + delta(h) for an arity-1 h: T -> U, together with the verification
// that (p, u) -> (p, u + h(p)) maps the H'-twisted semidirect product onto
// the H-twisted one.
struct TwistReport {
    Cochain twisted; // H'
    CheckResult iso;
};
TwistReport twist_by_coboundary(const SumSpace& S, const Cochain& h);

enum class PerturbMode {
    admissible, // requires delta(h) = 0; same twist; R -> R o (id + hR)^{-1}
    twist       // twist becomes H + delta(h);       R -> R o (id - hR)^{-1}
};

struct PerturbResult {
    Cochain R2;
    Cochain H2;
};

// Throws std::domain_error when h fails the admissible-mode cocycle
// requirement or when the relevant (id +- h o R) is not invertible over the
// polynomial ring (determinant not a nonzero constant).
PerturbResult perturb_graph(const SumSpace& S, const Cochain& R, const Cochain& h,
                            PerturbMode mode);

// (id + h'R)(u *_s v) = (id + h'R)u *'_s (id + h'R)v, where * is induced by
// R and *' by the admissible-mode perturbation of R.
CheckResult induced_iso_check(const SumSpace& S, const Cochain& R, const Cochain& hp);

// From an invertible arity-1 h: T -> U: R = h^{-1} and H = -delta(h); the
// pair always passes check_trb. Throws std::domain_error when h is not
// invertible over the polynomial ring.
struct OperatorPair {
    Cochain R;
    Cochain H;
};
OperatorPair from_invertible_onecochain(const ConformalAlgebra& T, const ConformalBimodule& U,
                                        const Cochain& h);

} // namespace ccalg
