#pragma once

// ============================================================================
// Deformation theory of twisted Rota-Baxter operators: order-by-order checks
// for linear and formal one-parameter families, morphisms between operator
// bundles, first-order equivalences generated by an algebra element, the
// self-conjugate ("Nijenhuis") elements that freeze a linear family, and a
// rigidity search that tries to trivialize every truncated 1-cocycle.
// ============================================================================

#include <ccalg/trb.hpp>

namespace ccalg {

// ----------------------------------------------------------- one-parameter

struct OrderReport {
    int order = 0;
    CheckResult check;
};

struct DeformationReport {
    std::vector<OrderReport> orders;
    bool ok = true;
};

// R_t = sum_i t^i series[i] (missing entries are zero). The order-n condition
// collects the t^n coefficient of the twisted Rota-Baxter identity:
//   sum_{i+j=n} R_i(u)_s R_j(v)
//     = sum_{i+j=n} R_i( u_s R_j(v) + R_j(u)_s v )
//     + sum_{i+j+k=n} R_i( H_s(R_j(u), R_k(v)) ).
DeformationReport check_formal_deformation(const SumSpace& S,
                                           const std::vector<Cochain>& series, int max_order);

// R_t = R + t R1: the same conditions at orders 0..3 (all higher orders are
// identically zero for a linear family).
DeformationReport check_linear_deformation(const SumSpace& S, const Cochain& R,
                                           const Cochain& R1);

// Kernel condition of the induced-complex differential in arity 1; the
// order-1 condition of a linear family is exactly this.
CheckResult is_one_cocycle(const SumSpace& S, const Cochain& R, const Cochain& R1);

// ---------------------------------------------------------------- morphisms

// phi: T -> T' and psi: U -> U' (honest D-linear maps, arity-1 cochains)
// between two operator bundles (S, R) and (S2, R2).
struct MorphismReport {
    CheckResult algebra;    // phi(p_s q)     = phi(p)_s phi(q)
    CheckResult left;       // psi(p_s u)     = phi(p)_s psi(u)
    CheckResult right;      // psi(u_s p)     = psi(u)_s phi(p)
    CheckResult twist;      // psi(H_s(p, q)) = H'_s(phi(p), phi(q))
    CheckResult intertwine; // phi o R        = R' o psi
    bool ok = false;
};

MorphismReport check_morphism(const SumSpace& S, const Cochain& R, const SumSpace& S2,
                              const Cochain& R2, const Cochain& phi, const Cochain& psi);

// ------------------------------------------------------ order-1 equivalence

// First-order gauge maps generated by an element p of T. Entries are
// polynomials in (D, L1): the maps act with a free subscript, via
//   phi1(q) = p_s q - q_{-D-s} p,
//   psi1(u) = p_s u - u_{-D-s} p + H_s(p, R(u)) - H_s(R(u), p).
struct EquivalencePair {
    PMatrix phi; // rT x rT
    PMatrix psi; // rU x rU
};

EquivalencePair equivalence_pair(const SumSpace& S, const Cochain& R, const Element& p);

// Report for "R + t R1 is carried onto R + t R1' by the gauge pair of p".
// The two *_second_order flags and algebra_second_order are the t^2
// obstructions; the mixed flags are the t^1 compatibilities of the induced
// actions and the twist; operator_first/operator_second are the t^1 and t^2
// intertwining conditions on the operator itself.
struct EquivalenceReport {
    CheckResult algebra_second_order; // (p_s q - q_{-D-s} p)_m (p_s r - r_{-D-s} p) = 0
    CheckResult module_mixed;         // gauge of q_m u matches gauged factors
    CheckResult module_second_order;  // (gauge q)_m (gauge u) = 0
    CheckResult twist_mixed;          // gauge of H_m(q, r) matches gauged arguments
    CheckResult twist_second_order;   // H_{s+m}(gauge q, gauge r) = 0
    CheckResult operator_first;       // R1 + phi1 o R = R o psi1 + R1'
    CheckResult operator_second;      // phi1 o R1 = R1' o psi1
    CheckResult difference_coboundary; // R1 - R1' equals the differential of p
    bool ok = false;
};

EquivalenceReport check_linear_equivalence(const SumSpace& S, const Cochain& R,
                                           const Cochain& R1, const Cochain& R1p,
                                           const Element& p);

// R1' at order 1 after gauging the family (R, R1) by p:
//   R1' = R1 + phi1 o R - R o psi1   (an rT x rU matrix in (D, L1)).
PMatrix gauge_order1(const SumSpace& S, const Cochain& R, const Cochain& R1,
                     const Element& p);

// ------------------------------------------------------------------ rigidity

// p is self-conjugate when its gauge pair fixes the operator bundle to first
// order on its own: the induced-action conjugate vanishes,
//   p_m ( l(u, p) - r(p, u) ) - ( l(u, p) - r(p, u) )_{-D-m} p = 0
// over the actions induced by R, together with the full equivalence report
// for R1 = differential of p and R1' = 0.
struct NijenhuisReport {
    CheckResult self_conjugate;
    EquivalenceReport gauge;
    bool ok = false;
};

NijenhuisReport is_nijenhuis(const SumSpace& S, const Cochain& R, const Element& p);

enum class CocycleStatus {
    nijenhuis,            // trivialized by a self-conjugate element
    solved_not_nijenhuis, // some p has differential z, but no self-conjugate one found
    unsolved              // z is not a coboundary of the searched window
};

struct RigidityEntry {
    Cochain cocycle;
    CocycleStatus status = CocycleStatus::unsolved;
    Element p; // meaningful unless unsolved
};

struct RigidityReport {
    int truncation = 0;
    std::vector<RigidityEntry> entries; // one per truncated cocycle-basis vector
    bool witnessed = false;             // every basis cocycle landed on nijenhuis
};

// For each basis vector z of the degree-truncated arity-1 cocycle space,
// solve  differential(p) = z  for p with entries of degree <= truncation +
// structure degree, then test the solution for self-conjugacy. Solutions are
// re-verified through the L-infinity differential before being reported.
RigidityReport rigidity_witness(const SumSpace& S, const Cochain& R, int truncation);

} // namespace ccalg
