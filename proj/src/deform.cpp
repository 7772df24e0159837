#include <ccalg/deform.hpp>
#include <ccalg/linf.hpp>

#include <stdexcept>

namespace ccalg {

namespace {

void require_operator_shape(const SumSpace& S, const Cochain& R, const char* who) {
    if (R.n != 1 || R.src_rank != S.rU() || R.tgt_rank != S.rT())
        throw std::invalid_argument(std::string(who) +
                                    ": operator must be an arity-1 cochain U -> T");
}

void require_element(const SumSpace& S, const Element& p, const char* who) {
    if (p.rank() != S.rT() || p.nl() != 0)
        throw std::invalid_argument(std::string(who) +
                                    ": generator must be an element of T (entries in D only)");
}

// Coefficient of t^i of the series applied to w (zero beyond the last term).
LambdaVec series_apply(const std::vector<Cochain>& series, int i, const LambdaVec& w,
                       int tgt_rank) {
    if (i >= 0 && i < static_cast<int>(series.size())) return apply_map(series[i], w);
    return LambdaVec(tgt_rank, w.nl());
}

// First nonzero component of diff as a failure report, or ok.
CheckResult scan_vec(const LambdaVec& diff, const std::string& what, const std::string& args,
                     const std::vector<std::string>& tgt_names) {
    for (int k = 0; k < diff.rank(); ++k) {
        if (diff.coeffs[k].is_zero()) continue;
        return {false, what + " fails at " + args + "; residual coefficient of " +
                           tgt_names[k] + " = " + diff.coeffs[k].str()};
    }
    return {};
}

std::string pair_name(const std::string& a, const std::string& b) {
    return "(" + a + "," + b + ")";
}

} // namespace

// --------------------------------------------------------------- deformations

DeformationReport check_formal_deformation(const SumSpace& S, const std::vector<Cochain>& series,
                                           int max_order) {
    for (const Cochain& Ri : series) require_operator_shape(S, Ri, "check_formal_deformation");
    if (max_order < 0)
        throw std::invalid_argument("check_formal_deformation: max_order must be nonnegative");
    const int rT = S.rT(), rU = S.rU();
    const MPoly s = MPoly::var_L(1, 1);
    DeformationReport rep;
    for (int n = 0; n <= max_order; ++n) {
        Cochain residual(2, rU, rT);
        for (int a = 0; a < rU; ++a) {
            for (int b = 0; b < rU; ++b) {
                LambdaVec u = LambdaVec::unit(rU, a, 1), v = LambdaVec::unit(rU, b, 1);
                LambdaVec diff(rT, 1);
                for (int i = 0; i <= n; ++i) {
                    const int j = n - i;
                    LambdaVec Riu = series_apply(series, i, u, rT);
                    LambdaVec Rjv = series_apply(series, j, v, rT);
                    LambdaVec Rju = series_apply(series, j, u, rT);
                    diff += lambda_product(S.T, Riu, Rjv, s);
                    diff -= series_apply(series, i,
                                         right_action(S.U, u, Rjv, s) +
                                             left_action(S.U, Rju, v, s),
                                         rT);
                    for (int k = 0; k <= n - i; ++k) {
                        const int jj = n - i - k;
                        LambdaVec Hterm = evaluate(
                            S.H,
                            {series_apply(series, jj, u, rT), series_apply(series, k, v, rT)},
                            {s}, 1);
                        diff -= series_apply(series, i, Hterm, rT);
                    }
                }
                residual.set_value({a, b}, diff.coeffs);
            }
        }
        OrderReport o;
        o.order = n;
        o.check = first_nonzero_witness(residual, S.U.basis, S.T.basis,
                                        "order-" + std::to_string(n) + " family condition");
        rep.ok = rep.ok && o.check.ok;
        rep.orders.push_back(std::move(o));
    }
    return rep;
}

DeformationReport check_linear_deformation(const SumSpace& S, const Cochain& R,
                                           const Cochain& R1) {
    return check_formal_deformation(S, {R, R1}, 3);
}

CheckResult is_one_cocycle(const SumSpace& S, const Cochain& R, const Cochain& R1) {
    return first_nonzero_witness(twisted_delta(S, R, R1), S.U.basis, S.T.basis,
                                 "1-cocycle condition");
}

// ------------------------------------------------------------------ morphisms

MorphismReport check_morphism(const SumSpace& S, const Cochain& R, const SumSpace& S2,
                              const Cochain& R2, const Cochain& phi, const Cochain& psi) {
    require_operator_shape(S, R, "check_morphism");
    require_operator_shape(S2, R2, "check_morphism");
    if (phi.n != 1 || phi.src_rank != S.rT() || phi.tgt_rank != S2.rT())
        throw std::invalid_argument("check_morphism: phi must be an arity-1 cochain T -> T'");
    if (psi.n != 1 || psi.src_rank != S.rU() || psi.tgt_rank != S2.rU())
        throw std::invalid_argument("check_morphism: psi must be an arity-1 cochain U -> U'");
    const int rT = S.rT(), rU = S.rU();
    const MPoly s = MPoly::var_L(1, 1);
    MorphismReport rep;

    for (int i = 0; i < rT && rep.algebra.ok; ++i)
        for (int j = 0; j < rT; ++j) {
            LambdaVec a = LambdaVec::unit(rT, i, 1), b = LambdaVec::unit(rT, j, 1);
            LambdaVec diff = apply_map(phi, lambda_product(S.T, a, b, s)) -
                             lambda_product(S2.T, apply_map(phi, a), apply_map(phi, b), s);
            rep.algebra = scan_vec(diff, "algebra-map identity",
                                   pair_name(S.T.basis[i], S.T.basis[j]), S2.T.basis);
            if (!rep.algebra.ok) break;
        }

    for (int i = 0; i < rT && rep.left.ok; ++i)
        for (int a = 0; a < rU; ++a) {
            LambdaVec pv = LambdaVec::unit(rT, i, 1), uv = LambdaVec::unit(rU, a, 1);
            LambdaVec diff = apply_map(psi, left_action(S.U, pv, uv, s)) -
                             left_action(S2.U, apply_map(phi, pv), apply_map(psi, uv), s);
            rep.left = scan_vec(diff, "left-action identity",
                                pair_name(S.T.basis[i], S.U.basis[a]), S2.U.basis);
            if (!rep.left.ok) break;
        }

    for (int a = 0; a < rU && rep.right.ok; ++a)
        for (int i = 0; i < rT; ++i) {
            LambdaVec uv = LambdaVec::unit(rU, a, 1), pv = LambdaVec::unit(rT, i, 1);
            LambdaVec diff = apply_map(psi, right_action(S.U, uv, pv, s)) -
                             right_action(S2.U, apply_map(psi, uv), apply_map(phi, pv), s);
            rep.right = scan_vec(diff, "right-action identity",
                                 pair_name(S.U.basis[a], S.T.basis[i]), S2.U.basis);
            if (!rep.right.ok) break;
        }

    for (int i = 0; i < rT && rep.twist.ok; ++i)
        for (int j = 0; j < rT; ++j) {
            LambdaVec a = LambdaVec::unit(rT, i, 1), b = LambdaVec::unit(rT, j, 1);
            LambdaVec diff =
                apply_map(psi, evaluate(S.H, {a, b}, {s}, 1)) -
                evaluate(S2.H, {apply_map(phi, a), apply_map(phi, b)}, {s}, 1);
            rep.twist = scan_vec(diff, "twist-cocycle identity",
                                 pair_name(S.T.basis[i], S.T.basis[j]), S2.U.basis);
            if (!rep.twist.ok) break;
        }

    for (int a = 0; a < rU && rep.intertwine.ok; ++a) {
        LambdaVec uv = LambdaVec::unit(rU, a, 0);
        LambdaVec diff = apply_map(phi, apply_map(R, uv)) - apply_map(R2, apply_map(psi, uv));
        rep.intertwine =
            scan_vec(diff, "operator intertwining", "(" + S.U.basis[a] + ")", S2.T.basis);
    }

    rep.ok = rep.algebra.ok && rep.left.ok && rep.right.ok && rep.twist.ok && rep.intertwine.ok;
    return rep;
}

// --------------------------------------------------------- order-1 equivalence

EquivalencePair equivalence_pair(const SumSpace& S, const Cochain& R, const Element& p) {
    require_operator_shape(S, R, "equivalence_pair");
    require_element(S, p, "equivalence_pair");
    const int rT = S.rT(), rU = S.rU();
    const MPoly s = MPoly::var_L(1, 1);
    const LambdaVec pe = p.extend_vars(1);
    EquivalencePair out;
    out.phi.assign(rT, std::vector<MPoly>(rT, MPoly(1)));
    out.psi.assign(rU, std::vector<MPoly>(rU, MPoly(1)));
    for (int j = 0; j < rT; ++j) {
        LambdaVec q = LambdaVec::unit(rT, j, 1);
        LambdaVec col =
            lambda_product(S.T, pe, q, s) - product_at_conjugate(S.T.S, q, pe, s, rT);
        for (int i = 0; i < rT; ++i) out.phi[i][j] = col.coeffs[i];
    }
    for (int a = 0; a < rU; ++a) {
        LambdaVec u = LambdaVec::unit(rU, a, 1);
        LambdaVec Ru = apply_map(R, u);
        LambdaVec col = left_action(S.U, pe, u, s) -
                        product_at_conjugate(S.U.Ract, u, pe, s, rU) +
                        evaluate(S.H, {pe, Ru}, {s}, 1) - evaluate(S.H, {Ru, pe}, {s}, 1);
        for (int b = 0; b < rU; ++b) out.psi[b][a] = col.coeffs[b];
    }
    return out;
}

EquivalenceReport check_linear_equivalence(const SumSpace& S, const Cochain& R,
                                           const Cochain& R1, const Cochain& R1p,
                                           const Element& p) {
    require_operator_shape(S, R, "check_linear_equivalence");
    require_operator_shape(S, R1, "check_linear_equivalence");
    require_operator_shape(S, R1p, "check_linear_equivalence");
    require_element(S, p, "check_linear_equivalence");
    const int rT = S.rT(), rU = S.rU();

    // Two-subscript ambient: s = L1, m = L2.
    const MPoly s2 = MPoly::var_L(1, 2), m2 = MPoly::var_L(2, 2);
    const LambdaVec pe2 = p.extend_vars(2);
    // p_s x - x_{-D-s} p in T.
    auto conj_T = [&](const LambdaVec& x) {
        return lambda_product(S.T, pe2, x, s2) - product_at_conjugate(S.T.S, x, pe2, s2, rT);
    };
    // p_s w - w_{-D-s} p + H_s(p, Rw) - H_s(Rw, p) in U (uniform subscripts).
    auto gauge_U = [&](const LambdaVec& w) {
        LambdaVec Rw = apply_map(R, w);
        return left_action(S.U, pe2, w, s2) - product_at_conjugate(S.U.Ract, w, pe2, s2, rU) +
               evaluate(S.H, {pe2, Rw}, {s2}, 2) - evaluate(S.H, {Rw, pe2}, {s2}, 2);
    };
    // Same with the final twist term taken at the combined subscript s + m, as
    // required when w itself carries the second subscript.
    auto gauge_U_mixed = [&](const LambdaVec& w) {
        LambdaVec Rw = apply_map(R, w);
        return left_action(S.U, pe2, w, s2) - product_at_conjugate(S.U.Ract, w, pe2, s2, rU) +
               evaluate(S.H, {pe2, Rw}, {s2}, 2) - evaluate(S.H, {Rw, pe2}, {s2 + m2}, 2);
    };

    EquivalenceReport rep;

    for (int j = 0; j < rT && rep.algebra_second_order.ok; ++j)
        for (int k = 0; k < rT; ++k) {
            LambdaVec diff = lambda_product(
                S.T, conj_T(LambdaVec::unit(rT, j, 2)), conj_T(LambdaVec::unit(rT, k, 2)), m2);
            rep.algebra_second_order =
                scan_vec(diff, "second-order algebra obstruction",
                         pair_name(S.T.basis[j], S.T.basis[k]), S.T.basis);
            if (!rep.algebra_second_order.ok) break;
        }

    for (int j = 0; j < rT && rep.module_mixed.ok; ++j)
        for (int a = 0; a < rU; ++a) {
            LambdaVec q = LambdaVec::unit(rT, j, 2), u = LambdaVec::unit(rU, a, 2);
            LambdaVec w = left_action(S.U, q, u, m2);
            LambdaVec lhs = gauge_U_mixed(w);
            LambdaVec rhs = left_action(S.U, conj_T(q), u, s2 + m2) +
                            left_action(S.U, q, gauge_U(u), m2);
            rep.module_mixed = scan_vec(lhs - rhs, "first-order module compatibility",
                                        pair_name(S.T.basis[j], S.U.basis[a]), S.U.basis);
            if (!rep.module_mixed.ok) break;
        }

    for (int j = 0; j < rT && rep.module_second_order.ok; ++j)
        for (int a = 0; a < rU; ++a) {
            LambdaVec diff = left_action(S.U, conj_T(LambdaVec::unit(rT, j, 2)),
                                         gauge_U(LambdaVec::unit(rU, a, 2)), m2);
            rep.module_second_order =
                scan_vec(diff, "second-order module obstruction",
                         pair_name(S.T.basis[j], S.U.basis[a]), S.U.basis);
            if (!rep.module_second_order.ok) break;
        }

    for (int j = 0; j < rT && rep.twist_mixed.ok; ++j)
        for (int k = 0; k < rT; ++k) {
            LambdaVec q = LambdaVec::unit(rT, j, 2), r = LambdaVec::unit(rT, k, 2);
            LambdaVec w = evaluate(S.H, {q, r}, {m2}, 2);
            LambdaVec lhs = gauge_U_mixed(w);
            LambdaVec rhs = evaluate(S.H, {conj_T(q), r}, {s2 + m2}, 2) +
                            evaluate(S.H, {q, conj_T(r)}, {m2}, 2);
            rep.twist_mixed = scan_vec(lhs - rhs, "first-order twist compatibility",
                                       pair_name(S.T.basis[j], S.T.basis[k]), S.U.basis);
            if (!rep.twist_mixed.ok) break;
        }

    for (int j = 0; j < rT && rep.twist_second_order.ok; ++j)
        for (int k = 0; k < rT; ++k) {
            LambdaVec diff = evaluate(S.H,
                                      {conj_T(LambdaVec::unit(rT, j, 2)),
                                       conj_T(LambdaVec::unit(rT, k, 2))},
                                      {s2 + m2}, 2);
            rep.twist_second_order =
                scan_vec(diff, "second-order twist obstruction",
                         pair_name(S.T.basis[j], S.T.basis[k]), S.U.basis);
            if (!rep.twist_second_order.ok) break;
        }

    // One-subscript ambient for the operator conditions.
    const MPoly s1 = MPoly::var_L(1, 1);
    const LambdaVec pe1 = p.extend_vars(1);
    auto conj_T1 = [&](const LambdaVec& x) {
        return lambda_product(S.T, pe1, x, s1) - product_at_conjugate(S.T.S, x, pe1, s1, rT);
    };
    auto gauge_U1 = [&](const LambdaVec& w) {
        LambdaVec Rw = apply_map(R, w);
        return left_action(S.U, pe1, w, s1) - product_at_conjugate(S.U.Ract, w, pe1, s1, rU) +
               evaluate(S.H, {pe1, Rw}, {s1}, 1) - evaluate(S.H, {Rw, pe1}, {s1}, 1);
    };

    for (int a = 0; a < rU && rep.operator_first.ok; ++a) {
        LambdaVec u = LambdaVec::unit(rU, a, 1);
        LambdaVec lhs = apply_map(R1, u) + conj_T1(apply_map(R, u));
        LambdaVec rhs = apply_map(R, gauge_U1(u)) + apply_map(R1p, u);
        rep.operator_first = scan_vec(lhs - rhs, "first-order operator intertwining",
                                      "(" + S.U.basis[a] + ")", S.T.basis);
    }

    for (int a = 0; a < rU && rep.operator_second.ok; ++a) {
        LambdaVec u = LambdaVec::unit(rU, a, 1);
        LambdaVec lhs = conj_T1(apply_map(R1, u));
        LambdaVec rhs = apply_map(R1p, gauge_U1(u));
        rep.operator_second = scan_vec(lhs - rhs, "second-order operator intertwining",
                                       "(" + S.U.basis[a] + ")", S.T.basis);
    }

    Cochain dp = twisted_delta(S, R, Cochain::from_element(p, S.rU()));
    rep.difference_coboundary = first_nonzero_witness(
        (R1 - R1p) - dp, S.U.basis, S.T.basis, "coboundary difference");

    rep.ok = rep.algebra_second_order.ok && rep.module_mixed.ok &&
             rep.module_second_order.ok && rep.twist_mixed.ok && rep.twist_second_order.ok &&
             rep.operator_first.ok && rep.operator_second.ok &&
             rep.difference_coboundary.ok;
    return rep;
}

PMatrix gauge_order1(const SumSpace& S, const Cochain& R, const Cochain& R1,
                     const Element& p) {
    require_operator_shape(S, R, "gauge_order1");
    require_operator_shape(S, R1, "gauge_order1");
    require_element(S, p, "gauge_order1");
    EquivalencePair gp = equivalence_pair(S, R, p);
    auto extend = [](PMatrix M) {
        for (auto& row : M)
            for (auto& e : row) e = e.extend_vars(1);
        return M;
    };
    PMatrix MR = extend(cochain_matrix(R));
    PMatrix MR1 = extend(cochain_matrix(R1));
    // Post-composition with the gauge map shifts D by the subscript in the
    // inner operator's entries: phi1(f(D) e_j) = f(D + L1) phi1(e_j).
    const MPoly shift = MPoly::var_D(1) + MPoly::var_L(1, 1);
    PMatrix MRs = MR;
    for (auto& row : MRs)
        for (auto& e : row) e = e.subst_D(shift);
    return pmatrix_add(MR1, pmatrix_sub(pmatrix_mul(gp.phi, MRs), pmatrix_mul(MR, gp.psi)));
}

// ------------------------------------------------------------------- rigidity

NijenhuisReport is_nijenhuis(const SumSpace& S, const Cochain& R, const Element& p) {
    require_operator_shape(S, R, "is_nijenhuis");
    require_element(S, p, "is_nijenhuis");
    const int rT = S.rT(), rU = S.rU();
    const MPoly s2 = MPoly::var_L(1, 2), m2 = MPoly::var_L(2, 2);
    const LambdaVec pe2 = p.extend_vars(2);
    NijenhuisReport rep;
    for (int a = 0; a < rU && rep.self_conjugate.ok; ++a) {
        LambdaVec u = LambdaVec::unit(rU, a, 2);
        LambdaVec Ru = apply_map(R, u);
        LambdaVec l = lambda_product(S.T, Ru, pe2, s2) -
                      apply_map(R, right_action(S.U, u, pe2, s2) +
                                       evaluate(S.H, {Ru, pe2}, {s2}, 2));
        LambdaVec r = lambda_product(S.T, pe2, Ru, s2) -
                      apply_map(R, left_action(S.U, pe2, u, s2) +
                                       evaluate(S.H, {pe2, Ru}, {s2}, 2));
        LambdaVec w = l - r;
        LambdaVec diff =
            lambda_product(S.T, pe2, w, m2) - product_at_conjugate(S.T.S, w, pe2, m2, rT);
        rep.self_conjugate =
            scan_vec(diff, "self-conjugacy", "(" + S.U.basis[a] + ")", S.T.basis);
    }
    Cochain dp = twisted_delta(S, R, Cochain::from_element(p, rU));
    rep.gauge = check_linear_equivalence(S, R, dp, Cochain::zero(1, rU, rT), p);
    rep.ok = rep.self_conjugate.ok && rep.gauge.ok;
    return rep;
}

RigidityReport rigidity_witness(const SumSpace& S, const Cochain& R, int truncation) {
    require_operator_shape(S, R, "rigidity_witness");
    if (truncation < 0)
        throw std::invalid_argument("rigidity_witness: truncation must be nonnegative");
    RigidityReport rep;
    rep.truncation = truncation;
    std::vector<Cochain> zs = cocycle_basis(S, R, 1, truncation);
    const int rT = S.rT(), rU = S.rU();
    const int g = induced_structure_degree(S, R);
    const int dmax = truncation + g;      // degree window for the generator p
    const int tmax = truncation + 2 * g;  // degree window for differentials of p

    auto coords = [&](const Cochain& z) {
        std::vector<Rat> out(static_cast<size_t>(rU) * rT * (tmax + 1), Rat(0));
        for (int a = 0; a < rU; ++a) {
            std::vector<MPoly> vals = z.value({a});
            for (int k = 0; k < rT; ++k)
                for (const auto& [e, c] : vals[k].terms()) {
                    if (e[0] > tmax)
                        throw std::logic_error(
                            "rigidity_witness: differential exceeded the degree window");
                    out[(static_cast<size_t>(a) * rT + k) * (tmax + 1) + e[0]] = c;
                }
        }
        return out;
    };

    // Columns: differentials of the generator candidates e_i D^s.
    const int cols = rT * (dmax + 1);
    QMatrix A(static_cast<size_t>(rU) * rT * (tmax + 1), std::vector<Rat>(cols, Rat(0)));
    for (int i = 0; i < rT; ++i)
        for (int sdeg = 0; sdeg <= dmax; ++sdeg) {
            Element cand(rT, 0);
            cand.coeffs[i] = MPoly::monomial(Rat(1), {sdeg});
            std::vector<Rat> col = coords(twisted_delta(S, R, Cochain::from_element(cand, rU)));
            for (size_t r = 0; r < col.size(); ++r) A[r][i * (dmax + 1) + sdeg] = col[r];
        }

    rep.witnessed = true;
    for (const Cochain& z : zs) {
        RigidityEntry entry;
        entry.cocycle = z;
        std::optional<std::vector<Rat>> x = solve(A, coords(z));
        if (!x) {
            entry.status = CocycleStatus::unsolved;
            rep.witnessed = false;
        } else {
            Element p(rT, 0);
            for (int i = 0; i < rT; ++i)
                for (int sdeg = 0; sdeg <= dmax; ++sdeg) {
                    const Rat& c = (*x)[i * (dmax + 1) + sdeg];
                    if (c != 0) p.coeffs[i] += MPoly::monomial(c, {sdeg});
                }
            Cochain reverify = d_R(S, R, Cochain::from_element(p, rU));
            if (!(reverify - z).is_zero())
                throw std::logic_error(
                    "rigidity_witness: solver result fails re-verification against the "
                    "graded differential");
            entry.p = p;
            entry.status = is_nijenhuis(S, R, p).ok ? CocycleStatus::nijenhuis
                                                    : CocycleStatus::solved_not_nijenhuis;
            if (entry.status != CocycleStatus::nijenhuis) rep.witnessed = false;
        }
        rep.entries.push_back(std::move(entry));
    }
    return rep;
}

} // namespace ccalg
