#include <ccalg/conformal.hpp>

#include <stdexcept>

namespace ccalg {

// ------------------------------------------------------------------ LambdaVec

bool LambdaVec::is_zero() const {
    for (const auto& c : coeffs)
        if (!c.is_zero()) return false;
    return true;
}

LambdaVec LambdaVec::unit(int rank, int k, int nl) {
    LambdaVec v(rank, nl);
    v.coeffs[k] = MPoly::constant(1, nl);
    return v;
}

LambdaVec LambdaVec::operator+(const LambdaVec& o) const {
    LambdaVec r = *this;
    r += o;
    return r;
}

LambdaVec LambdaVec::operator-(const LambdaVec& o) const {
    LambdaVec r = *this;
    r -= o;
    return r;
}

LambdaVec LambdaVec::operator-() const {
    LambdaVec r = *this;
    for (auto& c : r.coeffs) c = -c;
    return r;
}

LambdaVec LambdaVec::operator*(const Rat& c) const {
    LambdaVec r = *this;
    for (auto& x : r.coeffs) x = x * c;
    return r;
}

LambdaVec& LambdaVec::operator+=(const LambdaVec& o) {
    if (coeffs.size() != o.coeffs.size())
        throw std::invalid_argument("LambdaVec: rank mismatch");
    for (size_t k = 0; k < coeffs.size(); ++k) coeffs[k] += o.coeffs[k];
    return *this;
}

LambdaVec& LambdaVec::operator-=(const LambdaVec& o) {
    if (coeffs.size() != o.coeffs.size())
        throw std::invalid_argument("LambdaVec: rank mismatch");
    for (size_t k = 0; k < coeffs.size(); ++k) coeffs[k] -= o.coeffs[k];
    return *this;
}

LambdaVec LambdaVec::extend_vars(int new_nl) const {
    LambdaVec r = *this;
    for (auto& c : r.coeffs) c = c.extend_vars(new_nl);
    return r;
}

LambdaVec LambdaVec::subst_L(int i, const MPoly& q) const {
    LambdaVec r = *this;
    for (auto& c : r.coeffs) c = c.subst_L(i, q);
    return r;
}

// ----------------------------------------------------------------- structures

ConformalAlgebra ConformalAlgebra::zero(int rank) {
    ConformalAlgebra T;
    T.rank = rank;
    for (int i = 0; i < rank; ++i) T.basis.push_back("e" + std::to_string(i + 1));
    T.S.assign(rank, std::vector<std::vector<MPoly>>(rank, std::vector<MPoly>(rank, MPoly(1))));
    return T;
}

int ConformalAlgebra::max_structure_degree() const {
    int g = 0;
    for (const auto& a : S)
        for (const auto& b : a)
            for (const auto& p : b) g = std::max(g, p.total_degree());
    return g;
}

ConformalBimodule ConformalBimodule::zero(const ConformalAlgebra& over, int rank) {
    ConformalBimodule M;
    M.over = over;
    M.rank = rank;
    for (int a = 0; a < rank; ++a) M.basis.push_back("u" + std::to_string(a + 1));
    M.Lact.assign(over.rank,
                  std::vector<std::vector<MPoly>>(rank, std::vector<MPoly>(rank, MPoly(1))));
    M.Ract.assign(rank,
                  std::vector<std::vector<MPoly>>(over.rank, std::vector<MPoly>(rank, MPoly(1))));
    return M;
}

int ConformalBimodule::max_structure_degree() const {
    int g = 0;
    auto scan = [&](const std::vector<std::vector<std::vector<MPoly>>>& t) {
        for (const auto& a : t)
            for (const auto& b : a)
                for (const auto& p : b) g = std::max(g, p.total_degree());
    };
    scan(Lact);
    scan(Ract);
    return g;
}

// -------------------------------------------------------------- lambda calculus

LambdaVec bilinear_eval(const std::vector<std::vector<std::vector<MPoly>>>& table,
                        const LambdaVec& a, const LambdaVec& b, const MPoly& sub, int out_rank) {
    if (sub.depends_on(0))
        throw std::invalid_argument("bilinear_eval: subscript form must not involve D");
    const int nl = sub.nl();
    const int ra = a.rank();
    const int rb = b.rank();
    const int rout = out_rank;
    LambdaVec out(rout, nl);
    const MPoly minus_sub = -sub;
    const MPoly shifted = MPoly::var_D(nl) + sub;
    for (int i = 0; i < ra; ++i) {
        if (a.coeffs[i].is_zero()) continue;
        MPoly ai = a.coeffs[i].subst_D(minus_sub);
        if (ai.is_zero()) continue;
        for (int j = 0; j < rb; ++j) {
            if (b.coeffs[j].is_zero()) continue;
            MPoly bj = b.coeffs[j].subst_D(shifted);
            if (bj.is_zero()) continue;
            MPoly fac = ai * bj;
            for (int k = 0; k < rout; ++k) {
                const MPoly& s = table[i][j][k];
                if (s.is_zero()) continue;
                MPoly st = s.extend_vars(nl == 0 ? 1 : nl);
                if (nl == 0) {
                    // Subscript lives in a zero-variable ambient; the table's
                    // L1 must be instantiated by the (constant) form.
                    st = st.subst_L(1, sub.extend_vars(1)).truncate_vars(0);
                } else {
                    st = st.subst_L(1, sub);
                }
                out.coeffs[k] += fac * st;
            }
        }
    }
    return out;
}

LambdaVec lambda_product(const ConformalAlgebra& T, const LambdaVec& a, const LambdaVec& b,
                         const MPoly& sub) {
    if (a.rank() != T.rank || b.rank() != T.rank)
        throw std::invalid_argument("lambda_product: rank mismatch");
    return bilinear_eval(T.S, a, b, sub, T.rank);
}

LambdaVec lambda_product(const ConformalAlgebra& T, const LambdaVec& a, const LambdaVec& b,
                         int slot, int nl) {
    return lambda_product(T, a, b, MPoly::var_L(slot, nl));
}

LambdaVec left_action(const ConformalBimodule& M, const LambdaVec& p, const LambdaVec& u,
                      const MPoly& sub) {
    if (p.rank() != M.over.rank || u.rank() != M.rank)
        throw std::invalid_argument("left_action: rank mismatch");
    return bilinear_eval(M.Lact, p, u, sub, M.rank);
}

LambdaVec left_action(const ConformalBimodule& M, const LambdaVec& p, const LambdaVec& u,
                      int slot, int nl) {
    return left_action(M, p, u, MPoly::var_L(slot, nl));
}

LambdaVec right_action(const ConformalBimodule& M, const LambdaVec& u, const LambdaVec& p,
                       const MPoly& sub) {
    if (u.rank() != M.rank || p.rank() != M.over.rank)
        throw std::invalid_argument("right_action: rank mismatch");
    return bilinear_eval(M.Ract, u, p, sub, M.rank);
}

LambdaVec right_action(const ConformalBimodule& M, const LambdaVec& u, const LambdaVec& p,
                       int slot, int nl) {
    return right_action(M, u, p, MPoly::var_L(slot, nl));
}

LambdaVec product_at_conjugate(const std::vector<std::vector<std::vector<MPoly>>>& table,
                               const LambdaVec& x, const LambdaVec& y, const MPoly& form,
                               int out_rank) {
    // x_{-D-form} y: evaluate with a fresh trailing variable, then substitute
    // it by -D - form (D is the D of the assembled result).
    const int nl = form.nl();
    const int fresh = nl + 1;
    LambdaVec wide = bilinear_eval(table, x.extend_vars(fresh), y.extend_vars(fresh),
                                   MPoly::var_L(fresh, fresh), out_rank);
    MPoly target = -MPoly::var_D(fresh) - form.extend_vars(fresh);
    LambdaVec out(wide.rank(), nl);
    for (int k = 0; k < wide.rank(); ++k)
        out.coeffs[k] = wide.coeffs[k].subst_L(fresh, target).truncate_vars(nl);
    return out;
}

// --------------------------------------------------------------------- checks

namespace {

std::string describe_residual(const LambdaVec& r, const std::vector<std::string>& names) {
    std::string s;
    for (int k = 0; k < r.rank(); ++k) {
        if (r.coeffs[k].is_zero()) continue;
        if (!s.empty()) s += " + ";
        s += "(" + r.coeffs[k].str() + ") " + names[k];
    }
    return s.empty() ? "0" : s;
}

} // namespace

CheckResult check_associativity(const ConformalAlgebra& T) {
    const int nl = 2;
    MPoly l = MPoly::var_L(1, nl), m = MPoly::var_L(2, nl);
    for (int i = 0; i < T.rank; ++i)
        for (int j = 0; j < T.rank; ++j)
            for (int k = 0; k < T.rank; ++k) {
                LambdaVec ei = LambdaVec::unit(T.rank, i, nl);
                LambdaVec ej = LambdaVec::unit(T.rank, j, nl);
                LambdaVec ek = LambdaVec::unit(T.rank, k, nl);
                LambdaVec lhs = lambda_product(T, lambda_product(T, ei, ej, l), ek, l + m);
                LambdaVec rhs = lambda_product(T, ei, lambda_product(T, ej, ek, m), l);
                LambdaVec res = lhs - rhs;
                if (!res.is_zero()) {
                    T.validated = false;
                    return {false, "associativity fails at (" + T.basis[i] + "," + T.basis[j] +
                                       "," + T.basis[k] +
                                       "); residual = " + describe_residual(res, T.basis)};
                }
            }
    T.validated = true;
    return {};
}

CheckResult check_bimodule(const ConformalBimodule& M) {
    const ConformalAlgebra& T = M.over;
    const int nl = 2;
    MPoly l = MPoly::var_L(1, nl), m = MPoly::var_L(2, nl);
    for (int i = 0; i < T.rank; ++i)
        for (int j = 0; j < T.rank; ++j)
            for (int a = 0; a < M.rank; ++a) {
                LambdaVec p = LambdaVec::unit(T.rank, i, nl);
                LambdaVec q = LambdaVec::unit(T.rank, j, nl);
                LambdaVec u = LambdaVec::unit(M.rank, a, nl);
                LambdaVec r1 = left_action(M, lambda_product(T, p, q, l), u, l + m) -
                               left_action(M, p, left_action(M, q, u, m), l);
                if (!r1.is_zero()) {
                    M.validated = false;
                    return {false, "left-left axiom fails at (" + T.basis[i] + "," + T.basis[j] +
                                       "," + M.basis[a] +
                                       "); residual = " + describe_residual(r1, M.basis)};
                }
                LambdaVec r2 = right_action(M, left_action(M, p, u, l), q, l + m) -
                               left_action(M, p, right_action(M, u, q, m), l);
                if (!r2.is_zero()) {
                    M.validated = false;
                    return {false, "left-right axiom fails at (" + T.basis[i] + "," + M.basis[a] +
                                       "," + T.basis[j] +
                                       "); residual = " + describe_residual(r2, M.basis)};
                }
                LambdaVec r3 = right_action(M, right_action(M, u, p, l), q, l + m) -
                               right_action(M, u, lambda_product(T, p, q, m), l);
                if (!r3.is_zero()) {
                    M.validated = false;
                    return {false, "right-right axiom fails at (" + M.basis[a] + "," + T.basis[i] +
                                       "," + T.basis[j] +
                                       "); residual = " + describe_residual(r3, M.basis)};
                }
            }
    M.validated = true;
    return {};
}

// --------------------------------------------------------------- constructors

ConformalAlgebra current_algebra(const std::vector<std::vector<std::vector<Rat>>>& A,
                                 const std::vector<std::string>& names) {
    const int n = static_cast<int>(A.size());
    // Plain associativity of the scalar table, checked by brute force.
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k)
                for (int m = 0; m < n; ++m) {
                    Rat lhs = 0, rhs = 0;
                    for (int s = 0; s < n; ++s) {
                        lhs += A[i][j][s] * A[s][k][m];
                        rhs += A[j][k][s] * A[i][s][m];
                    }
                    if (lhs != rhs)
                        throw std::invalid_argument(
                            "current_algebra: underlying product is not associative at (" +
                            std::to_string(i) + "," + std::to_string(j) + "," + std::to_string(k) +
                            ")");
                }
    ConformalAlgebra T;
    T.rank = n;
    T.basis = names;
    T.S.assign(n, std::vector<std::vector<MPoly>>(n, std::vector<MPoly>(n, MPoly(1))));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k) T.S[i][j][k] = MPoly::constant(A[i][j][k], 1);
    return T;
}

ConformalBimodule regular_bimodule(const ConformalAlgebra& T) {
    ConformalBimodule M;
    M.over = T;
    M.rank = T.rank;
    for (int a = 0; a < T.rank; ++a) M.basis.push_back("u" + std::to_string(a + 1));
    M.Lact = T.S;
    M.Ract = T.S;
    return M;
}

} // namespace ccalg
