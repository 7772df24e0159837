#pragma once

// ============================================================================
// Cochains of the conformal Hochschild complex and its calculus: evaluation
// with instantiated subscripts, the differential, insertion composition, and
// the graded commutator bracket.
//
// Representation convention ("constraint picture"): an arity-n cochain sends
// a basis tuple to a target vector whose coefficients live in variables
// (D, L1..L{n-1}) — the first n-1 subscripts are explicit, and the n-th is
// determined by the output constraint  L1 + ... + Ln = -D.  Evaluation with
// instantiated subscript forms s_1..s_{n-1} applies the slot rules
//     argument j < n:  coefficient D -> -s_j
//     argument n:      coefficient D -> D + (s_1 + ... + s_{n-1})
//     table value:     L_j -> s_j
// so the implicit last subscript never needs a name of its own.
// ============================================================================

#include <ccalg/conformal.hpp>

#include <map>

namespace ccalg {

struct Cochain {
    int n = 0;        // arity (n >= 0)
    int src_rank = 0; // rank of the argument module
    int tgt_rank = 0; // rank of the value module
    // Sparse table from argument index tuple (size n) to the value vector
    // with nl = max(n-1, 0) variables. Missing tuples are zero. An arity-0
    // cochain has the single empty key (or none, when zero).
    std::map<std::vector<int>, std::vector<MPoly>> table;

    Cochain() = default;
    Cochain(int n_, int src, int tgt) : n(n_), src_rank(src), tgt_rank(tgt) {}

    int nl() const { return n > 0 ? n - 1 : 0; }
    bool is_zero() const;
    // The value vector at a tuple (zero vector if absent).
    std::vector<MPoly> value(const std::vector<int>& args) const;
    void set_value(const std::vector<int>& args, std::vector<MPoly> v);
    void add_value(const std::vector<int>& args, const std::vector<MPoly>& v);

    static Cochain zero(int n, int src_rank, int tgt_rank) { return {n, src_rank, tgt_rank}; }
    // Arity-0 cochain from an element.
    static Cochain from_element(const Element& v, int src_rank);
    // The arity-0 value as an element.
    Element as_element() const;
    // Arity-1 identity (requires src_rank == tgt_rank).
    static Cochain identity(int rank);

    Cochain operator+(const Cochain& o) const;
    Cochain operator-(const Cochain& o) const;
    Cochain operator-() const;
    Cochain operator*(const Rat& c) const;
    bool operator==(const Cochain& o) const;

    // Largest total degree over all table entries; 0 when empty.
    int max_entry_degree() const;
};

// A Hochschild complex: cochains map tuples over `alg` into the carrier of
// `coeff`, a conformal bimodule over `alg`.
struct ComplexCtx {
    ConformalAlgebra alg;
    ConformalBimodule coeff;
};

// Evaluate the cochain on argument vectors over an ambient variable set with
// the given instantiated subscript forms (size max(n-1,0); each form is a
// polynomial in the ambient L-variables only). Argument vectors and forms
// must share one ambient nl; the result is a target vector over that ambient.
LambdaVec evaluate(const Cochain& f, const std::vector<LambdaVec>& args,
                   const std::vector<MPoly>& forms, int ambient_nl);

// Convenience: subscripts are the consecutive variables L_{var_base}, ...,
// L_{var_base + n - 2} of the ambient.
LambdaVec evaluate(const Cochain& f, const std::vector<LambdaVec>& args, int var_base,
                   int ambient_nl);

// The conformal Hochschild differential on the complex `ctx`. For arity 0 the
// first term is instantiated at the output constraint (subscript -> -D) and
// the last at the empty subscript sum (-> 0).
Cochain hochschild_delta(const ComplexCtx& ctx, const Cochain& f);

// delta(H) == 0 for an arity-2 cochain, with first-failure witness.
CheckResult is_two_cocycle(const ComplexCtx& ctx, const Cochain& H);

// ok when the residual cochain is identically zero; otherwise reports the
// first nonzero table entry, naming the argument tuple (through src_names)
// and the target component (through tgt_names) it lives on.
CheckResult first_nonzero_witness(const Cochain& residual,
                                  const std::vector<std::string>& src_names,
                                  const std::vector<std::string>& tgt_names,
                                  const std::string& what);

// Insertion composition f o_i g (1-based slot i of f), arities m and n >= 0;
// the result has arity m + n - 1. Pure insertion — no Koszul signs.
Cochain compose_at(const Cochain& f, const Cochain& g, int i);

// circle product f o g = sum_i (-1)^{(i-1)(n-1)} f o_i g and the graded
// commutator [f, g] = f o g - (-1)^{(m-1)(n-1)} g o f.
Cochain circle_product(const Cochain& f, const Cochain& g);
Cochain gerstenhaber_bracket(const Cochain& f, const Cochain& g);

// The H-twisted semidirect product algebra on T (+) U:
//   (p,u) ^s (q,v) = (p ^s q, p ^s v + u ^s q + H_s(p,q)).
// H is an arity-2 cochain with src_rank = rank(T), tgt_rank = rank(U); it is
// not validated here (associativity of the result is equivalent to H being a
// 2-cocycle, and callers check whichever side they need).
ConformalAlgebra semidirect_twisted(const ConformalAlgebra& T, const ConformalBimodule& U,
                                    const Cochain& H);

} // namespace ccalg
