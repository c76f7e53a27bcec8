#pragma once

#include <optional>
#include <vector>

#include "zarlab/scalar.hpp"

namespace zarlab {

using QVec = std::vector<Rat>;

/// Dense row-major rational matrix.
struct QMat {
    int rows = 0, cols = 0;
    std::vector<Rat> a;

    QMat() = default;
    QMat(int r, int c) : rows(r), cols(c), a(size_t(r) * c) {}

    Rat& operator()(int i, int j) { return a[size_t(i) * cols + j]; }
    const Rat& operator()(int i, int j) const { return a[size_t(i) * cols + j]; }

    static QMat identity(int n);
    QMat transposed() const;
    QVec col(int j) const;
    QVec row_vec(int i) const;
    void set_col(int j, const QVec& v);
    QMat hcat(const QMat& other) const;

    friend bool operator==(const QMat&, const QMat&) = default;
};

QVec mat_vec(const QMat& A, const QVec& x);
QMat mat_mul(const QMat& A, const QMat& B);
Rat dot(const QVec& a, const QVec& b);

/// Reduced row echelon form in place; returns pivot columns.
std::vector<int> rref(QMat& A);

int rank(const QMat& A);

/// Basis of the right kernel {x : Ax = 0}, returned as matrix columns.
QMat kernel_basis(const QMat& A);

struct LinearSolution {
    QVec particular;
    QMat kernel;  // columns span the homogeneous solutions
    int rank = 0;
};

/// Exact solution set of Ax = b, or nullopt when inconsistent.
std::optional<LinearSolution> solve_rational(const QMat& A, const QVec& b);

/// Inverse of a square matrix; nullopt when singular.
std::optional<QMat> inverse(const QMat& A);

/// Canonical basis of the column span: RREF of the transpose, transposed
/// back. Two matrices span the same subspace iff their canonical bases
/// are identical.
QMat canonical_subspace_basis(const QMat& cols);

/// Conversions between standard points and rational vectors.
QVec qvec_of(const Point& p);
Point point_of(const QVec& v);

/// p >= 0 with q_1 Z + ... + q_k Z = p Z, plus integer Bezout
/// coefficients with sum n_i q_i = p. Empty input gives p = 0.
struct GcdSpan {
    Rat p;
    std::vector<Int> coeffs;
};
GcdSpan rational_gcd_span(const std::vector<Rat>& qs);

}  // namespace zarlab
