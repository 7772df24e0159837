#include <ccalg/linf.hpp>

#include <stdexcept>

namespace ccalg {

SumSpace::SumSpace(ConformalAlgebra T_, ConformalBimodule U_, Cochain H_)
    : T(std::move(T_)), U(std::move(U_)), H(std::move(H_)) {
    if (U.over.rank != T.rank)
        throw std::invalid_argument("SumSpace: bimodule is not over the given algebra");
    if (H.n != 2 || H.src_rank != T.rank || H.tgt_rank != U.rank)
        throw std::invalid_argument("SumSpace: twist must be an arity-2 cochain T -> U");
    sum = semidirect_twisted(T, U, Cochain::zero(2, T.rank, U.rank));
    mult = multiplication_cochain(sum);
}

Cochain sum_embed(const Cochain& f, int arg_offset, int out_offset, int sum_rank) {
    if (arg_offset < 0 || out_offset < 0 || arg_offset + f.src_rank > sum_rank ||
        out_offset + f.tgt_rank > sum_rank)
        throw std::invalid_argument("sum_embed: block out of range");
    Cochain r(f.n, sum_rank, sum_rank);
    for (const auto& [tuple, val] : f.table) {
        std::vector<int> t = tuple;
        for (auto& i : t) i += arg_offset;
        std::vector<MPoly> v(sum_rank, MPoly(f.nl()));
        for (int k = 0; k < f.tgt_rank; ++k) v[out_offset + k] = val[k];
        r.set_value(t, std::move(v));
    }
    return r;
}

Cochain sum_project(const Cochain& F, int arg_offset, int arg_rank, int out_offset,
                    int out_rank) {
    if (arg_offset < 0 || out_offset < 0 || arg_offset + arg_rank > F.src_rank ||
        out_offset + out_rank > F.tgt_rank)
        throw std::invalid_argument("sum_project: block out of range");
    Cochain r(F.n, arg_rank, out_rank);
    for (const auto& [tuple, val] : F.table) {
        bool inside = true;
        for (int i : tuple)
            if (i < arg_offset || i >= arg_offset + arg_rank) { inside = false; break; }
        if (!inside) continue;
        std::vector<int> t = tuple;
        for (auto& i : t) i -= arg_offset;
        std::vector<MPoly> v(val.begin() + out_offset, val.begin() + out_offset + out_rank);
        r.set_value(t, std::move(v));
    }
    return r;
}

Cochain multiplication_cochain(const ConformalAlgebra& A) {
    Cochain m(2, A.rank, A.rank);
    for (int i = 0; i < A.rank; ++i)
        for (int j = 0; j < A.rank; ++j) m.set_value({i, j}, A.S[i][j]);
    return m;
}

namespace {

void require_ucochain(const SumSpace& S, const Cochain& A, const char* who) {
    if (A.src_rank != S.rU() || A.tgt_rank != S.rT())
        throw std::invalid_argument(std::string(who) +
                                    ": cochain must take U-arguments to T-values");
}

} // namespace

Cochain derived_bracket(const SumSpace& S, const Cochain& A, const Cochain& B) {
    require_ucochain(S, A, "derived_bracket");
    require_ucochain(S, B, "derived_bracket");
    const int rT = S.rT(), rU = S.rU(), rW = rT + rU;
    Cochain Ah = sum_embed(A, rT, 0, rW);
    Cochain Bh = sum_embed(B, rT, 0, rW);
    Cochain inner = gerstenhaber_bracket(S.mult, Ah);
    Cochain outer = gerstenhaber_bracket(inner, Bh);
    Cochain res = sum_project(outer, rT, rU, 0, rT);
    if (A.n & 1) return -res;
    return res;
}

namespace {

// One of the six sums: insert H(P(...), Q(...)) into slot j of `outer` for
// every j, with sign pre * (-1)^{(j-1) * arity(P)}, and accumulate into `acc`.
void ternary_sum(const SumSpace& S, const Cochain& outer, const Cochain& P, const Cochain& Q,
                 int pre, Cochain& acc) {
    const int x = outer.n, p = P.n, q = Q.n;
    const int M = x + p + q - 1;
    const int rU = S.rU();
    const int amb = M > 0 ? M - 1 : 0;

    std::vector<std::vector<int>> tuples;
    {
        std::vector<int> cur(M, 0);
        if (M == 0) {
            tuples.push_back({});
        } else if (rU > 0) {
            for (;;) {
                tuples.push_back(cur);
                int pos = M - 1;
                while (pos >= 0 && ++cur[pos] == rU) cur[pos--] = 0;
                if (pos < 0) break;
            }
        }
    }

    for (int j = 1; j <= x; ++j) {
        const int sgn = pre * ((((j - 1) * p) & 1) ? -1 : 1);
        // When Q is empty and the block sits at the outer's last slot, some
        // referenced subscript is the implicit final one (the block's own
        // momentum when P is nonempty, the preceding outer subscript when it
        // is empty): name it with a scratch variable — index M, one past the
        // explicit subscripts — and resolve it against the output constraint
        // at the end.
        const bool need_temp = (q == 0 && j == x && M >= 1);
        const int W = amb + (need_temp ? 1 : 0);

        for (const auto& tuple : tuples) {
            std::vector<LambdaVec> pa, qa, oa;
            std::vector<MPoly> pf, qf, of;
            for (int s = 0; s < p; ++s)
                pa.push_back(LambdaVec::unit(rU, tuple[j - 1 + s], W));
            for (int s = 0; s < p - 1; ++s) pf.push_back(MPoly::var_L(j + s, W));
            LambdaVec Pv = evaluate(P, pa, pf, W);

            for (int s = 0; s < q; ++s)
                qa.push_back(LambdaVec::unit(rU, tuple[j + p - 1 + s], W));
            for (int s = 0; s < q - 1; ++s) qf.push_back(MPoly::var_L(j + p + s, W));
            LambdaVec Qv = evaluate(Q, qa, qf, W);

            MPoly block_p(W); // momentum of P's block (index M = scratch)
            for (int s = 0; s < p; ++s) block_p += MPoly::var_L(j + s, W);
            LambdaVec Hv = evaluate(S.H, {Pv, Qv}, {block_p}, W);

            for (int t = 1; t <= x; ++t) {
                if (t < j) {
                    oa.push_back(LambdaVec::unit(rU, tuple[t - 1], W));
                } else if (t == j) {
                    oa.push_back(Hv);
                } else {
                    oa.push_back(LambdaVec::unit(rU, tuple[t + p + q - 2], W));
                }
            }
            for (int t = 1; t <= x - 1; ++t) {
                if (t < j) {
                    of.push_back(MPoly::var_L(t, W));
                } else if (t == j) {
                    MPoly s(W);
                    for (int k = 0; k < p + q; ++k) s += MPoly::var_L(j + k, W);
                    of.push_back(s);
                } else {
                    of.push_back(MPoly::var_L(t + p + q - 1, W));
                }
            }
            LambdaVec val = evaluate(outer, oa, of, W);

            if (need_temp) {
                MPoly target = -MPoly::var_D(W);
                for (int k = 1; k <= amb; ++k) target -= MPoly::var_L(k, W);
                for (auto& c : val.coeffs) c = c.subst_L(W, target).truncate_vars(amb);
            }
            if (sgn < 0) {
                for (auto& c : val.coeffs) c = -c;
            }
            acc.add_value(tuple, val.coeffs);
        }
    }
}

} // namespace

Cochain ternary_bracket(const SumSpace& S, const Cochain& A, const Cochain& B,
                        const Cochain& C) {
    require_ucochain(S, A, "ternary_bracket");
    require_ucochain(S, B, "ternary_bracket");
    require_ucochain(S, C, "ternary_bracket");
    const int a = A.n, b = B.n, c = C.n;
    if (a + b + c == 0)
        throw std::invalid_argument("ternary_bracket: total arity must be positive");

    Cochain acc(a + b + c - 1, S.rU(), S.rT());
    auto sgn = [](int e) { return (e & 1) ? -1 : 1; };

    ternary_sum(S, A, B, C, +1, acc);
    ternary_sum(S, A, C, B, -sgn(b * c), acc);
    ternary_sum(S, B, A, C, -sgn(a * b), acc);
    ternary_sum(S, B, C, A, +sgn(a * (b + c)), acc);
    ternary_sum(S, C, B, A, -sgn(a * b + b * c + c * a), acc);
    ternary_sum(S, C, A, B, +sgn(c * (a + b)), acc);

    if (sgn(a * b * c) < 0) return -acc;
    return acc;
}

Cochain mc_residual(const SumSpace& S, const Cochain& R) {
    require_ucochain(S, R, "mc_residual");
    if (R.n != 1) throw std::invalid_argument("mc_residual: operator must have arity 1");
    Cochain bin = derived_bracket(S, R, R);
    Cochain ter = ternary_bracket(S, R, R, R);
    return bin * Rat(1, 2) - ter * Rat(1, 6);
}

Cochain d_R(const SumSpace& S, const Cochain& R, const Cochain& g) {
    require_ucochain(S, R, "d_R");
    require_ucochain(S, g, "d_R");
    if (!mc_residual(S, R).is_zero())
        throw std::domain_error(
            "d_R: operator fails the twisted Rota-Baxter identity, the square "
            "of the differential would not vanish");
    return derived_bracket(S, R, g) - ternary_bracket(S, R, R, g) * Rat(1, 2);
}

Cochain twisted_l1(const SumSpace& S, const Cochain& R, const Cochain& A) {
    return d_R(S, R, A);
}

Cochain twisted_l2(const SumSpace& S, const Cochain& R, const Cochain& A, const Cochain& B) {
    require_ucochain(S, R, "twisted_l2");
    return derived_bracket(S, A, B) - ternary_bracket(S, R, A, B);
}

Cochain twisted_l3(const SumSpace& S, const Cochain& A, const Cochain& B, const Cochain& C) {
    return ternary_bracket(S, A, B, C);
}

} // namespace ccalg
