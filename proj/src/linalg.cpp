#include <ccalg/linalg.hpp>

#include <stdexcept>

namespace ccalg {

std::vector<int> rref(QMatrix& M) {
    std::vector<int> pivots;
    if (M.empty()) return pivots;
    const int rows = static_cast<int>(M.size());
    const int cols = static_cast<int>(M[0].size());
    int r = 0;
    for (int c = 0; c < cols && r < rows; ++c) {
        int sel = -1;
        for (int i = r; i < rows; ++i)
            if (M[i][c] != 0) { sel = i; break; }
        if (sel < 0) continue;
        std::swap(M[r], M[sel]);
        const Rat inv = Rat(1) / M[r][c];
        for (int j = c; j < cols; ++j) M[r][j] *= inv;
        for (int i = 0; i < rows; ++i) {
            if (i == r || M[i][c] == 0) continue;
            const Rat f = M[i][c];
            for (int j = c; j < cols; ++j) M[i][j] -= f * M[r][j];
        }
        pivots.push_back(c);
        ++r;
    }
    return pivots;
}

int matrix_rank(QMatrix M) { return static_cast<int>(rref(M).size()); }

std::vector<std::vector<Rat>> nullspace(const QMatrix& M) {
    if (M.empty()) return {};
    const int cols = static_cast<int>(M[0].size());
    QMatrix R = M;
    std::vector<int> pivots = rref(R);
    std::vector<bool> is_pivot(cols, false);
    for (int c : pivots) is_pivot[c] = true;
    std::vector<std::vector<Rat>> basis;
    for (int c = 0; c < cols; ++c) {
        if (is_pivot[c]) continue;
        std::vector<Rat> v(cols, Rat(0));
        v[c] = 1;
        for (size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = -R[r][c];
        basis.push_back(std::move(v));
    }
    return basis;
}

std::optional<std::vector<Rat>> solve(const QMatrix& A, const std::vector<Rat>& b) {
    const size_t rows = A.size();
    const size_t cols = rows ? A[0].size() : 0;
    QMatrix aug(rows, std::vector<Rat>(cols + 1, Rat(0)));
    for (size_t i = 0; i < rows; ++i) {
        for (size_t j = 0; j < cols; ++j) aug[i][j] = A[i][j];
        aug[i][cols] = b[i];
    }
    std::vector<int> pivots = rref(aug);
    std::vector<Rat> x(cols, Rat(0));
    for (size_t r = 0; r < pivots.size(); ++r) {
        if (pivots[r] == static_cast<int>(cols)) return std::nullopt; // 0 = 1 row
        x[pivots[r]] = aug[r][cols];
    }
    return x;
}

PMatrix pmatrix_identity(int n) {
    PMatrix I(n, std::vector<MPoly>(n, MPoly(0)));
    for (int i = 0; i < n; ++i) I[i][i] = MPoly::constant(1, 0);
    return I;
}

PMatrix pmatrix_mul(const PMatrix& A, const PMatrix& B) {
    const int n = static_cast<int>(A.size());
    const int m = B.empty() ? 0 : static_cast<int>(B[0].size());
    const int k = static_cast<int>(B.size());
    int nl = 0;
    if (n > 0 && !A[0].empty()) nl = A[0][0].nl();
    else if (k > 0 && m > 0) nl = B[0][0].nl();
    PMatrix C(n, std::vector<MPoly>(m, MPoly(nl)));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < m; ++j)
            for (int t = 0; t < k; ++t) C[i][j] += A[i][t] * B[t][j];
    return C;
}

PMatrix pmatrix_add(const PMatrix& A, const PMatrix& B) {
    PMatrix C = A;
    for (size_t i = 0; i < C.size(); ++i)
        for (size_t j = 0; j < C[i].size(); ++j) C[i][j] += B[i][j];
    return C;
}

PMatrix pmatrix_sub(const PMatrix& A, const PMatrix& B) {
    PMatrix C = A;
    for (size_t i = 0; i < C.size(); ++i)
        for (size_t j = 0; j < C[i].size(); ++j) C[i][j] -= B[i][j];
    return C;
}

namespace {

MPoly det_rec(const PMatrix& A, std::vector<int>& cols, int row) {
    const int n = static_cast<int>(A.size());
    if (row == n) return MPoly::constant(1, 0);
    MPoly acc(0);
    for (size_t k = 0; k < cols.size(); ++k) {
        const int c = cols[k];
        if (A[row][c].is_zero()) continue;
        std::vector<int> rest;
        rest.reserve(cols.size() - 1);
        for (size_t t = 0; t < cols.size(); ++t)
            if (t != k) rest.push_back(cols[t]);
        MPoly sub = det_rec(A, rest, row + 1);
        MPoly term = A[row][c] * sub;
        if (k & 1) acc -= term;
        else acc += term;
    }
    return acc;
}

} // namespace

MPoly pmatrix_det(const PMatrix& A) {
    const int n = static_cast<int>(A.size());
    for (const auto& r : A)
        if (static_cast<int>(r.size()) != n)
            throw std::invalid_argument("pmatrix_det: matrix must be square");
    std::vector<int> cols(n);
    for (int i = 0; i < n; ++i) cols[i] = i;
    return det_rec(A, cols, 0);
}

std::optional<PMatrix> pmatrix_inverse(const PMatrix& A) {
    const int n = static_cast<int>(A.size());
    MPoly det = pmatrix_det(A);
    if (!det.is_constant() || det.is_zero()) return std::nullopt;
    const Rat inv = Rat(1) / det.constant_term();
    PMatrix adj(n, std::vector<MPoly>(n, MPoly(0)));
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            // Minor with row j and column i removed (transposed cofactor).
            PMatrix m;
            m.reserve(n - 1);
            for (int r = 0; r < n; ++r) {
                if (r == j) continue;
                std::vector<MPoly> row;
                row.reserve(n - 1);
                for (int c = 0; c < n; ++c)
                    if (c != i) row.push_back(A[r][c]);
                m.push_back(std::move(row));
            }
            MPoly cof = m.empty() ? MPoly::constant(1, 0) : pmatrix_det(m);
            adj[i][j] = ((i + j) & 1) ? -(cof * inv) : cof * inv;
        }
    }
    return adj;
}

} // namespace ccalg
