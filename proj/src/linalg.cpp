#include "zarlab/linalg.hpp"

#include <cassert>
#include <stdexcept>

namespace zarlab {

QMat QMat::identity(int n) {
    QMat I(n, n);
    for (int i = 0; i < n; ++i) I(i, i) = 1;
    return I;
}

QMat QMat::transposed() const {
    QMat T(cols, rows);
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j) T(j, i) = (*this)(i, j);
    return T;
}

QVec QMat::col(int j) const {
    QVec v(rows);
    for (int i = 0; i < rows; ++i) v[i] = (*this)(i, j);
    return v;
}

QVec QMat::row_vec(int i) const {
    QVec v(cols);
    for (int j = 0; j < cols; ++j) v[j] = (*this)(i, j);
    return v;
}

void QMat::set_col(int j, const QVec& v) {
    for (int i = 0; i < rows; ++i) (*this)(i, j) = v[i];
}

QMat QMat::hcat(const QMat& other) const {
    assert(rows == other.rows);
    QMat H(rows, cols + other.cols);
    for (int i = 0; i < rows; ++i) {
        for (int j = 0; j < cols; ++j) H(i, j) = (*this)(i, j);
        for (int j = 0; j < other.cols; ++j) H(i, cols + j) = other(i, j);
    }
    return H;
}

QVec mat_vec(const QMat& A, const QVec& x) {
    assert(int(x.size()) == A.cols);
    QVec y(A.rows);
    for (int i = 0; i < A.rows; ++i) {
        Rat s = 0;
        for (int j = 0; j < A.cols; ++j) s += A(i, j) * x[j];
        y[i] = s;
    }
    return y;
}

QMat mat_mul(const QMat& A, const QMat& B) {
    assert(A.cols == B.rows);
    QMat C(A.rows, B.cols);
    for (int i = 0; i < A.rows; ++i)
        for (int k = 0; k < A.cols; ++k) {
            if (A(i, k) == 0) continue;
            for (int j = 0; j < B.cols; ++j) C(i, j) += A(i, k) * B(k, j);
        }
    return C;
}

Rat dot(const QVec& a, const QVec& b) {
    assert(a.size() == b.size());
    Rat s = 0;
    for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

std::vector<int> rref(QMat& A) {
    std::vector<int> pivots;
    int r = 0;
    for (int c = 0; c < A.cols && r < A.rows; ++c) {
        int p = -1;
        for (int i = r; i < A.rows; ++i)
            if (A(i, c) != 0) {
                p = i;
                break;
            }
        if (p < 0) continue;
        if (p != r)
            for (int j = 0; j < A.cols; ++j) std::swap(A(p, j), A(r, j));
        Rat inv = 1 / A(r, c);
        for (int j = c; j < A.cols; ++j) A(r, j) *= inv;
        for (int i = 0; i < A.rows; ++i) {
            if (i == r || A(i, c) == 0) continue;
            Rat f = A(i, c);
            for (int j = c; j < A.cols; ++j) A(i, j) -= f * A(r, j);
        }
        pivots.push_back(c);
        ++r;
    }
    return pivots;
}

int rank(const QMat& A) {
    QMat B = A;
    return int(rref(B).size());
}

QMat kernel_basis(const QMat& A) {
    QMat B = A;
    std::vector<int> piv = rref(B);
    std::vector<bool> is_pivot(A.cols, false);
    for (int c : piv) is_pivot[c] = true;
    std::vector<int> free_cols;
    for (int c = 0; c < A.cols; ++c)
        if (!is_pivot[c]) free_cols.push_back(c);
    QMat K(A.cols, int(free_cols.size()));
    for (size_t k = 0; k < free_cols.size(); ++k) {
        int fc = free_cols[k];
        K(fc, int(k)) = 1;
        for (size_t r = 0; r < piv.size(); ++r) K(piv[r], int(k)) = -B(int(r), fc);
    }
    return K;
}

std::optional<LinearSolution> solve_rational(const QMat& A, const QVec& b) {
    assert(int(b.size()) == A.rows);
    QMat Ab = A;
    Ab = Ab.hcat(QMat(A.rows, 1));
    for (int i = 0; i < A.rows; ++i) Ab(i, A.cols) = b[i];
    std::vector<int> piv = rref(Ab);
    if (!piv.empty() && piv.back() == A.cols) return std::nullopt;
    LinearSolution sol;
    sol.rank = int(piv.size());
    sol.particular.assign(A.cols, Rat(0));
    for (size_t r = 0; r < piv.size(); ++r) sol.particular[piv[r]] = Ab(int(r), A.cols);
    QMat A2 = A;
    sol.kernel = kernel_basis(A2);
    return sol;
}

std::optional<QMat> inverse(const QMat& A) {
    assert(A.rows == A.cols);
    QMat W = A.hcat(QMat::identity(A.rows));
    std::vector<int> piv = rref(W);
    if (int(piv.size()) < A.rows) return std::nullopt;
    QMat Inv(A.rows, A.rows);
    for (int i = 0; i < A.rows; ++i)
        for (int j = 0; j < A.rows; ++j) Inv(i, j) = W(i, A.cols + j);
    return Inv;
}

QMat canonical_subspace_basis(const QMat& cols) {
    QMat T = cols.transposed();
    std::vector<int> piv = rref(T);
    QMat C(cols.rows, int(piv.size()));
    for (size_t r = 0; r < piv.size(); ++r)
        for (int i = 0; i < cols.rows; ++i) C(i, int(r)) = T(int(r), i);
    return C;
}

QVec qvec_of(const Point& p) {
    QVec v(p.size());
    for (size_t i = 0; i < p.size(); ++i) {
        if (!p[i].standard()) throw std::domain_error("omega scalar in rational vector context");
        v[i] = p[i].finite;
    }
    return v;
}

Point point_of(const QVec& v) {
    Point p(v.size());
    for (size_t i = 0; i < v.size(); ++i) p[i] = Scalar(v[i]);
    return p;
}

GcdSpan rational_gcd_span(const std::vector<Rat>& qs) {
    GcdSpan out;
    out.p = 0;
    out.coeffs.assign(qs.size(), Int(0));
    if (qs.empty()) return out;
    // Common denominator L: sum q_i Z = (1/L) sum (q_i L) Z.
    Int L = 1;
    for (auto& q : qs) mpz_lcm(L.get_mpz_t(), L.get_mpz_t(), q.get_den_mpz_t());
    Int g = 0;
    // Running gcd with Bezout tracking.
    for (size_t i = 0; i < qs.size(); ++i) {
        Rat scaled = qs[i] * Rat(L);
        assert(is_integral(scaled));
        Int v = scaled.get_num();
        if (v == 0) continue;
        if (g == 0) {
            if (v > 0) {
                g = v;
                out.coeffs[i] = 1;
            } else {
                g = -v;
                out.coeffs[i] = -1;
            }
            continue;
        }
        Int s, t, g2;
        mpz_gcdext(g2.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(), g.get_mpz_t(), v.get_mpz_t());
        for (size_t j = 0; j < i; ++j) out.coeffs[j] *= s;
        out.coeffs[i] = t;
        g = g2;
    }
    out.p = Rat(g) / Rat(L);
    out.p.canonicalize();
    return out;
}

}  // namespace zarlab
