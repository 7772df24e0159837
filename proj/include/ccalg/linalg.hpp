#pragma once

// Exact dense linear algebra over the rationals, plus the small amount of
// polynomial-matrix arithmetic needed for inverting D-linear operators whose
// determinant is a nonzero scalar.

#include <ccalg/mpoly.hpp>

#include <optional>
#include <vector>

namespace ccalg {

using QMatrix = std::vector<std::vector<Rat>>;

// Gauss-Jordan to reduced row echelon form in place; returns pivot columns.
std::vector<int> rref(QMatrix& M);

int matrix_rank(QMatrix M);

// Basis of { x : M x = 0 }, one vector per free column.
std::vector<std::vector<Rat>> nullspace(const QMatrix& M);

// One particular solution of A x = b (free variables set to zero), or
// nullopt when the system is inconsistent.
std::optional<std::vector<Rat>> solve(const QMatrix& A, const std::vector<Rat>& b);

// Matrices of polynomial entries sharing one variable set. Determinants and
// inverses are only used for operator matrices (entries in D alone, nl = 0);
// the arithmetic helpers work for any uniform variable count.
using PMatrix = std::vector<std::vector<MPoly>>;

PMatrix pmatrix_identity(int n);
PMatrix pmatrix_mul(const PMatrix& A, const PMatrix& B);
PMatrix pmatrix_add(const PMatrix& A, const PMatrix& B);
PMatrix pmatrix_sub(const PMatrix& A, const PMatrix& B);

// Determinant by cofactor expansion (ranks here are tiny).
MPoly pmatrix_det(const PMatrix& A);

// Inverse via adjugate/determinant, defined only when the determinant is a
// nonzero constant; returns nullopt otherwise (the operator then fails to be
// invertible over the polynomial ring).
std::optional<PMatrix> pmatrix_inverse(const PMatrix& A);

} // namespace ccalg
