#include <ccalg/trb.hpp>

#include <stdexcept>

namespace ccalg {

namespace {

std::vector<std::vector<int>> all_tuples(int rank, int len) {
    std::vector<std::vector<int>> out;
    if (len == 0) {
        out.push_back({});
        return out;
    }
    if (rank <= 0) return out;
    std::vector<int> cur(len, 0);
    for (;;) {
        out.push_back(cur);
        int pos = len - 1;
        while (pos >= 0 && ++cur[pos] == rank) cur[pos--] = 0;
        if (pos < 0) break;
    }
    return out;
}

} // namespace

LambdaVec apply_map(const Cochain& f, const LambdaVec& u) {
    if (f.n != 1) throw std::invalid_argument("apply_map: cochain must have arity 1");
    return evaluate(f, {u}, {}, u.nl());
}

PMatrix cochain_matrix(const Cochain& f) {
    if (f.n != 1) throw std::invalid_argument("cochain_matrix: cochain must have arity 1");
    PMatrix M(f.tgt_rank, std::vector<MPoly>(f.src_rank, MPoly(0)));
    for (int a = 0; a < f.src_rank; ++a) {
        std::vector<MPoly> col = f.value({a});
        for (int i = 0; i < f.tgt_rank; ++i) M[i][a] = col[i];
    }
    return M;
}

Cochain matrix_cochain(const PMatrix& M, int src_rank, int tgt_rank) {
    Cochain f(1, src_rank, tgt_rank);
    for (int a = 0; a < src_rank; ++a) {
        std::vector<MPoly> col(tgt_rank, MPoly(0));
        for (int i = 0; i < tgt_rank; ++i) col[i] = M[i][a];
        f.set_value({a}, std::move(col));
    }
    return f;
}

namespace {

void require_operator(const SumSpace& S, const Cochain& R, const char* who) {
    if (R.n != 1 || R.src_rank != S.rU() || R.tgt_rank != S.rT())
        throw std::invalid_argument(std::string(who) +
                                    ": operator must be an arity-1 cochain U -> T");
}

// u *_s v, l_s(u, p), r_s(p, u) building blocks, all in one ambient.
LambdaVec star_product(const SumSpace& S, const Cochain& R, const LambdaVec& u,
                       const LambdaVec& v, const MPoly& s) {
    LambdaVec Ru = apply_map(R, u), Rv = apply_map(R, v);
    LambdaVec inner = right_action(S.U, u, Rv, s) + left_action(S.U, Ru, v, s) +
                      evaluate(S.H, {Ru, Rv}, {s}, s.nl());
    return inner;
}

} // namespace

CheckResult check_trb(const SumSpace& S, const Cochain& R) {
    require_operator(S, R, "check_trb");
    const int rU = S.rU();
    Cochain residual(2, rU, S.rT());
    for (int a = 0; a < rU; ++a) {
        for (int b = 0; b < rU; ++b) {
            LambdaVec u = LambdaVec::unit(rU, a, 1), v = LambdaVec::unit(rU, b, 1);
            const MPoly s = MPoly::var_L(1, 1);
            LambdaVec lhs =
                lambda_product(S.T, apply_map(R, u), apply_map(R, v), s);
            LambdaVec rhs = apply_map(R, star_product(S, R, u, v, s));
            residual.set_value({a, b}, (lhs - rhs).coeffs);
        }
    }
    return first_nonzero_witness(residual, S.U.basis, S.T.basis,
                                 "twisted Rota-Baxter identity");
}

CheckResult graph_check(const SumSpace& S, const Cochain& R) {
    require_operator(S, R, "graph_check");
    const int rT = S.rT(), rU = S.rU();
    ConformalAlgebra W = semidirect_twisted(S.T, S.U, S.H);
    Cochain residual(2, rU, rT);
    for (int a = 0; a < rU; ++a) {
        for (int b = 0; b < rU; ++b) {
            // Graph generators (R(u), u) inside the twisted sum.
            LambdaVec ga(rT + rU, 1), gb(rT + rU, 1);
            LambdaVec Ra = apply_map(R, LambdaVec::unit(rU, a, 1));
            LambdaVec Rb = apply_map(R, LambdaVec::unit(rU, b, 1));
            for (int i = 0; i < rT; ++i) {
                ga.coeffs[i] = Ra.coeffs[i];
                gb.coeffs[i] = Rb.coeffs[i];
            }
            ga.coeffs[rT + a] += MPoly::constant(1, 1);
            gb.coeffs[rT + b] += MPoly::constant(1, 1);
            LambdaVec prod = lambda_product(W, ga, gb, MPoly::var_L(1, 1));
            LambdaVec tpart(rT, 1), upart(rU, 1);
            for (int i = 0; i < rT; ++i) tpart.coeffs[i] = prod.coeffs[i];
            for (int i = 0; i < rU; ++i) upart.coeffs[i] = prod.coeffs[rT + i];
            residual.set_value({a, b}, (tpart - apply_map(R, upart)).coeffs);
        }
    }
    return first_nonzero_witness(residual, S.U.basis, S.T.basis, "graph closure");
}

ConformalAlgebra induced_product_raw(const SumSpace& S, const Cochain& R) {
    require_operator(S, R, "induced_product_raw");
    const int rU = S.rU();
    ConformalAlgebra A;
    A.rank = rU;
    A.basis = S.U.basis;
    A.S.assign(rU, std::vector<std::vector<MPoly>>(rU, std::vector<MPoly>(rU, MPoly(1))));
    for (int a = 0; a < rU; ++a)
        for (int b = 0; b < rU; ++b) {
            LambdaVec v = star_product(S, R, LambdaVec::unit(rU, a, 1),
                                       LambdaVec::unit(rU, b, 1), MPoly::var_L(1, 1));
            A.S[a][b] = v.coeffs;
        }
    return A;
}

ConformalAlgebra induced_product(const SumSpace& S, const Cochain& R) {
    CheckResult c = check_trb(S, R);
    if (!c) throw std::domain_error("induced_product: " + c.witness);
    return induced_product_raw(S, R);
}

ConformalBimodule induced_bimodule_raw(const SumSpace& S, const Cochain& R) {
    require_operator(S, R, "induced_bimodule_raw");
    const int rT = S.rT(), rU = S.rU();
    ConformalBimodule B;
    B.over = induced_product_raw(S, R);
    B.rank = rT;
    B.basis = S.T.basis;
    B.Lact.assign(rU, std::vector<std::vector<MPoly>>(rT, std::vector<MPoly>(rT, MPoly(1))));
    B.Ract.assign(rT, std::vector<std::vector<MPoly>>(rU, std::vector<MPoly>(rT, MPoly(1))));
    const MPoly s = MPoly::var_L(1, 1);
    for (int a = 0; a < rU; ++a) {
        LambdaVec u = LambdaVec::unit(rU, a, 1);
        LambdaVec Ru = apply_map(R, u);
        for (int i = 0; i < rT; ++i) {
            LambdaVec p = LambdaVec::unit(rT, i, 1);
            LambdaVec l = lambda_product(S.T, Ru, p, s) -
                          apply_map(R, right_action(S.U, u, p, s) +
                                           evaluate(S.H, {Ru, p}, {s}, 1));
            B.Lact[a][i] = l.coeffs;
            LambdaVec r = lambda_product(S.T, p, Ru, s) -
                          apply_map(R, left_action(S.U, p, u, s) +
                                           evaluate(S.H, {p, Ru}, {s}, 1));
            B.Ract[i][a] = r.coeffs;
        }
    }
    return B;
}

ConformalBimodule induced_bimodule(const SumSpace& S, const Cochain& R) {
    CheckResult c = check_trb(S, R);
    if (!c) throw std::domain_error("induced_bimodule: " + c.witness);
    return induced_bimodule_raw(S, R);
}

ComplexCtx twisted_complex(const SumSpace& S, const Cochain& R) {
    ComplexCtx ctx{induced_product_raw(S, R), induced_bimodule_raw(S, R)};
    return ctx;
}

Cochain twisted_delta(const SumSpace& S, const Cochain& R, const Cochain& g) {
    require_operator(S, R, "twisted_delta");
    if (g.src_rank != S.rU() || g.tgt_rank != S.rT())
        throw std::invalid_argument("twisted_delta: cochain must take U-arguments to T-values");
    return hochschild_delta(twisted_complex(S, R), g);
}

// ----------------------------------------------------------------- cohomology

namespace {

void gen_monomials(int pos, int remaining, MPoly::Expo& cur, std::vector<MPoly::Expo>& out) {
    if (pos == static_cast<int>(cur.size())) {
        out.push_back(cur);
        return;
    }
    for (int e = 0; e <= remaining; ++e) {
        cur[pos] = e;
        gen_monomials(pos + 1, remaining - e, cur, out);
    }
    cur[pos] = 0;
}

std::vector<MPoly::Expo> monomials_up_to(int nl, int maxdeg) {
    std::vector<MPoly::Expo> out;
    MPoly::Expo cur(nl + 1, 0);
    gen_monomials(0, maxdeg, cur, out);
    return out;
}

// Deterministic coordinates on arity-m cochains with entry degree <= maxdeg.
struct CochainCoords {
    int arity, src, tgt, maxdeg;
    std::vector<std::vector<int>> tuples;
    std::vector<MPoly::Expo> monos;
    std::map<MPoly::Expo, int> mono_index;

    CochainCoords(int arity_, int src_, int tgt_, int maxdeg_)
        : arity(arity_), src(src_), tgt(tgt_), maxdeg(maxdeg_) {
        tuples = all_tuples(src, arity);
        const int nl = arity > 0 ? arity - 1 : 0;
        monos = monomials_up_to(nl, maxdeg);
        for (size_t i = 0; i < monos.size(); ++i) mono_index[monos[i]] = static_cast<int>(i);
    }

    long long dim() const {
        return static_cast<long long>(tuples.size()) * tgt * static_cast<long long>(monos.size());
    }

    Cochain unit(long long flat) const {
        const long long nm = static_cast<long long>(monos.size());
        const int mi = static_cast<int>(flat % nm);
        const int k = static_cast<int>((flat / nm) % tgt);
        const int ti = static_cast<int>(flat / (nm * tgt));
        Cochain f(arity, src, tgt);
        std::vector<MPoly> v(tgt, MPoly(arity > 0 ? arity - 1 : 0));
        v[k] = MPoly::monomial(Rat(1), monos[mi]);
        f.set_value(tuples[ti], std::move(v));
        return f;
    }

    // Coordinates of f; throws std::logic_error if a term falls outside.
    std::vector<Rat> coords(const Cochain& f) const {
        std::vector<Rat> out(static_cast<size_t>(dim()), Rat(0));
        const long long nm = static_cast<long long>(monos.size());
        std::map<std::vector<int>, int> tuple_index;
        for (size_t i = 0; i < tuples.size(); ++i) tuple_index[tuples[i]] = static_cast<int>(i);
        for (const auto& [args, v] : f.table) {
            auto ti = tuple_index.find(args);
            if (ti == tuple_index.end()) throw std::logic_error("coords: unknown tuple");
            for (int k = 0; k < tgt; ++k) {
                for (const auto& [e, c] : v[k].terms()) {
                    auto mi = mono_index.find(e);
                    if (mi == mono_index.end())
                        throw std::logic_error("coords: monomial outside the degree window");
                    out[static_cast<size_t>((static_cast<long long>(ti->second) * tgt + k) * nm +
                                            mi->second)] = c;
                }
            }
        }
        return out;
    }
};

int structure_degree_impl(const ComplexCtx& ctx) {
    int g = 0;
    for (const auto& a : ctx.alg.S)
        for (const auto& b : a)
            for (const auto& p : b) g = std::max(g, p.total_degree());
    for (const auto& a : ctx.coeff.Lact)
        for (const auto& b : a)
            for (const auto& p : b) g = std::max(g, p.total_degree());
    for (const auto& a : ctx.coeff.Ract)
        for (const auto& b : a)
            for (const auto& p : b) g = std::max(g, p.total_degree());
    return g;
}

// Matrix of the differential from arity-(m) degree-<=d cochains into the
// degree-<=(d+g) window of arity-(m+1); rows = target coords, cols = source.
QMatrix delta_matrix(const ComplexCtx& ctx, const CochainCoords& src, const CochainCoords& dst) {
    // Represent a map into a zero-dimensional target by one explicit zero row
    // so the column count (and hence the kernel) stays visible downstream.
    const size_t nrows = dst.dim() > 0 ? static_cast<size_t>(dst.dim()) : 1;
    QMatrix A(nrows, std::vector<Rat>(static_cast<size_t>(src.dim()), Rat(0)));
    for (long long c = 0; c < src.dim(); ++c) {
        Cochain d = hochschild_delta(ctx, src.unit(c));
        std::vector<Rat> col = dst.coords(d);
        for (long long r = 0; r < dst.dim(); ++r) A[static_cast<size_t>(r)][static_cast<size_t>(c)] = col[static_cast<size_t>(r)];
    }
    return A;
}

struct TruncatedDims {
    long long cocycles = 0, coboundaries = 0, quotient = 0;
};

TruncatedDims truncated_dims(const ComplexCtx& ctx, int n, int d, int g) {
    TruncatedDims out;
    const int rs = ctx.alg.rank, rt = ctx.coeff.rank;
    CochainCoords Cn(n, rs, rt, d);
    CochainCoords Cnext(n + 1, rs, rt, d + g);
    QMatrix A = delta_matrix(ctx, Cn, Cnext);
    out.cocycles = Cn.dim() - matrix_rank(A);
    if (n > 0) {
        CochainCoords Cprev(n - 1, rs, rt, d);
        CochainCoords Cwin(n, rs, rt, d + g);
        QMatrix B = delta_matrix(ctx, Cprev, Cwin);
        // Image vectors lying inside the degree-<=d block: the kernel of the
        // projection onto the higher-degree coordinates, measured on im(B).
        QMatrix Bhigh;
        const long long nm = static_cast<long long>(Cwin.monos.size());
        for (long long r = 0; r < Cwin.dim(); ++r) {
            const MPoly::Expo& e = Cwin.monos[static_cast<size_t>(r % nm)];
            int deg = 0;
            for (int x : e) deg += x;
            if (deg > d) Bhigh.push_back(B[static_cast<size_t>(r)]);
        }
        const int rb = matrix_rank(B);
        const int rh = Bhigh.empty() ? 0 : matrix_rank(Bhigh);
        out.coboundaries = rb - rh;
    }
    out.quotient = out.cocycles - out.coboundaries;
    return out;
}

} // namespace

int induced_structure_degree(const SumSpace& S, const Cochain& R) {
    require_operator(S, R, "induced_structure_degree");
    return structure_degree_impl(twisted_complex(S, R));
}

CohomologyReport cohomology(const SumSpace& S, const Cochain& R, int degree, int truncation) {
    require_operator(S, R, "cohomology");
    if (degree < 0 || truncation < 0)
        throw std::invalid_argument("cohomology: degree and truncation must be nonnegative");
    CheckResult c = check_trb(S, R);
    if (!c) throw std::domain_error("cohomology: " + c.witness);
    ComplexCtx ctx = twisted_complex(S, R);
    const int g = structure_degree_impl(ctx);
    TruncatedDims at_d = truncated_dims(ctx, degree, truncation, g);
    TruncatedDims at_d1 = truncated_dims(ctx, degree, truncation + 1, g);
    CohomologyReport rep;
    rep.degree = degree;
    rep.truncation = truncation;
    rep.window = truncation + g;
    rep.dim_cocycles = at_d.cocycles;
    rep.dim_coboundaries_in_window = at_d.coboundaries;
    rep.dim_quotient = at_d.quotient;
    rep.stabilized = (at_d.quotient == at_d1.quotient);
    return rep;
}

std::vector<Cochain> cocycle_basis(const SumSpace& S, const Cochain& R, int degree,
                                   int truncation) {
    require_operator(S, R, "cocycle_basis");
    CheckResult c = check_trb(S, R);
    if (!c) throw std::domain_error("cocycle_basis: " + c.witness);
    ComplexCtx ctx = twisted_complex(S, R);
    const int g = structure_degree_impl(ctx);
    CochainCoords Cn(degree, S.rU(), S.rT(), truncation);
    CochainCoords Cnext(degree + 1, S.rU(), S.rT(), truncation + g);
    QMatrix A = delta_matrix(ctx, Cn, Cnext);
    std::vector<Cochain> basis;
    for (const auto& v : nullspace(A)) {
        Cochain z(degree, S.rU(), S.rT());
        for (long long i = 0; i < Cn.dim(); ++i) {
            if (v[static_cast<size_t>(i)] == 0) continue;
            z = z + Cn.unit(i) * v[static_cast<size_t>(i)];
        }
        basis.push_back(std::move(z));
    }
    return basis;
}

// ------------------------------------------------------------- perturbations

TwistReport twist_by_coboundary(const SumSpace& S, const Cochain& h) {
    if (h.n != 1 || h.src_rank != S.rT() || h.tgt_rank != S.rU())
        throw std::invalid_argument(
            "twist_by_coboundary: h must be an arity-1 cochain T -> U");
    ComplexCtx base{S.T, S.U};
    Cochain H2 = S.H + hochschild_delta(base, h);
    const int rT = S.rT(), rU = S.rU(), rW = rT + rU;

    ConformalAlgebra W = semidirect_twisted(S.T, S.U, S.H);
    ConformalAlgebra W2 = semidirect_twisted(S.T, S.U, H2);

    // Phi(p, u) = (p, u + h(p)) as an arity-1 cochain on the sum.
    Cochain Phi = Cochain::identity(rW);
    for (int i = 0; i < rT; ++i) {
        std::vector<MPoly> col = Phi.value({i});
        std::vector<MPoly> hcol = h.value({i});
        for (int b = 0; b < rU; ++b) col[rT + b] += hcol[b];
        Phi.set_value({i}, std::move(col));
    }

    const MPoly s = MPoly::var_L(1, 1);
    Cochain residual(2, rW, rW);
    for (int a = 0; a < rW; ++a)
        for (int b = 0; b < rW; ++b) {
            LambdaVec ua = LambdaVec::unit(rW, a, 1), ub = LambdaVec::unit(rW, b, 1);
            LambdaVec lhs = apply_map(Phi, lambda_product(W2, ua, ub, s));
            LambdaVec rhs = lambda_product(W, apply_map(Phi, ua), apply_map(Phi, ub), s);
            residual.set_value({a, b}, (lhs - rhs).coeffs);
        }
    TwistReport rep;
    rep.twisted = std::move(H2);
    rep.iso = first_nonzero_witness(residual, W.basis, W.basis,
                                    "semidirect intertwining");
    return rep;
}

PerturbResult perturb_graph(const SumSpace& S, const Cochain& R, const Cochain& h,
                            PerturbMode mode) {
    require_operator(S, R, "perturb_graph");
    if (h.n != 1 || h.src_rank != S.rT() || h.tgt_rank != S.rU())
        throw std::invalid_argument("perturb_graph: h must be an arity-1 cochain T -> U");
    ComplexCtx base{S.T, S.U};
    Cochain dh = hochschild_delta(base, h);
    if (mode == PerturbMode::admissible) {
        CheckResult c =
            first_nonzero_witness(dh, S.T.basis, S.U.basis, "1-cocycle condition");
        if (!c) throw std::domain_error("perturb_graph: " + c.witness);
    }
    PMatrix N = pmatrix_mul(cochain_matrix(h), cochain_matrix(R)); // U -> U
    PMatrix K = (mode == PerturbMode::admissible)
                    ? pmatrix_add(pmatrix_identity(S.rU()), N)
                    : pmatrix_sub(pmatrix_identity(S.rU()), N);
    std::optional<PMatrix> inv = pmatrix_inverse(K);
    if (!inv)
        throw std::domain_error(
            "perturb_graph: the composite map is not invertible over the polynomial "
            "ring (determinant = " +
            pmatrix_det(K).str() + ")");
    PerturbResult out;
    out.R2 = matrix_cochain(pmatrix_mul(cochain_matrix(R), *inv), S.rU(), S.rT());
    out.H2 = (mode == PerturbMode::admissible) ? S.H : S.H + dh;
    return out;
}

CheckResult induced_iso_check(const SumSpace& S, const Cochain& R, const Cochain& hp) {
    PerturbResult pr = perturb_graph(S, R, hp, PerturbMode::admissible);
    ConformalAlgebra star = induced_product_raw(S, R);
    ConformalAlgebra star2 = induced_product_raw(S, pr.R2);
    PMatrix phi = pmatrix_add(pmatrix_identity(S.rU()),
                              pmatrix_mul(cochain_matrix(hp), cochain_matrix(R)));
    Cochain phic = matrix_cochain(phi, S.rU(), S.rU());
    const MPoly s = MPoly::var_L(1, 1);
    Cochain residual(2, S.rU(), S.rU());
    for (int a = 0; a < S.rU(); ++a)
        for (int b = 0; b < S.rU(); ++b) {
            LambdaVec ua = LambdaVec::unit(S.rU(), a, 1), ub = LambdaVec::unit(S.rU(), b, 1);
            LambdaVec lhs = apply_map(phic, lambda_product(star, ua, ub, s));
            LambdaVec rhs =
                lambda_product(star2, apply_map(phic, ua), apply_map(phic, ub), s);
            residual.set_value({a, b}, (lhs - rhs).coeffs);
        }
    return first_nonzero_witness(residual, S.U.basis, S.U.basis,
                                 "induced-product intertwining");
}

OperatorPair from_invertible_onecochain(const ConformalAlgebra& T, const ConformalBimodule& U,
                                        const Cochain& h) {
    if (h.n != 1 || h.src_rank != T.rank || h.tgt_rank != U.rank)
        throw std::invalid_argument(
            "from_invertible_onecochain: h must be an arity-1 cochain T -> U");
    if (T.rank != U.rank)
        throw std::domain_error(
            "from_invertible_onecochain: h is not square, hence not invertible");
    std::optional<PMatrix> inv = pmatrix_inverse(cochain_matrix(h));
    if (!inv)
        throw std::domain_error(
            "from_invertible_onecochain: h is not invertible over the polynomial ring "
            "(determinant = " +
            pmatrix_det(cochain_matrix(h)).str() + ")");
    ComplexCtx base{T, U};
    OperatorPair out;
    out.R = matrix_cochain(*inv, U.rank, T.rank);
    out.H = -hochschild_delta(base, h);
    return out;
}

} // namespace ccalg
