#include "zarlab/lattice.hpp"

#include <cassert>

namespace zarlab {

namespace {

void col_swap(QMat& M, int a, int b) {
    for (int i = 0; i < M.rows; ++i) std::swap(M(i, a), M(i, b));
}

// col_a <- p*col_a + q*col_b ; col_b <- u*col_a_old + v*col_b_old
void col_combine(QMat& M, int a, int b, const Rat& p, const Rat& q, const Rat& u, const Rat& v) {
    for (int i = 0; i < M.rows; ++i) {
        Rat na = p * M(i, a) + q * M(i, b);
        Rat nb = u * M(i, a) + v * M(i, b);
        M(i, a) = na;
        M(i, b) = nb;
    }
}

void col_addmul(QMat& M, int dst, int src, const Rat& f) {
    for (int i = 0; i < M.rows; ++i) M(i, dst) += f * M(i, src);
}

}  // namespace

void hermite_columns(QMat& M, QMat* U) {
    if (U) *U = QMat::identity(M.cols);
    int c = 0;
    std::vector<int> pivot_row_of;  // per fixed column
    for (int r = 0; r < M.rows && c < M.cols; ++r) {
        // Clear row r across active columns c..end down to one pivot.
        int nz = -1;
        for (int j = c; j < M.cols; ++j)
            if (M(r, j) != 0) {
                nz = j;
                break;
            }
        if (nz < 0) continue;
        if (nz != c) {
            col_swap(M, c, nz);
            if (U) col_swap(*U, c, nz);
        }
        for (int j = c + 1; j < M.cols; ++j) {
            if (M(r, j) == 0) continue;
            Int x = M(r, c).get_num(), y = M(r, j).get_num();
            assert(is_integral(M(r, c)) && is_integral(M(r, j)));
            Int g, s, t;
            mpz_gcdext(g.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(), x.get_mpz_t(), y.get_mpz_t());
            // [c j] <- [c j] * [[s, -y/g], [t, x/g]] keeps the span and
            // puts g at (r, c), 0 at (r, j).
            Rat xs = Rat(x) / Rat(g), ys = Rat(y) / Rat(g);
            col_combine(M, c, j, Rat(s), Rat(t), -ys, xs);
            if (U) col_combine(*U, c, j, Rat(s), Rat(t), -ys, xs);
        }
        if (M(r, c) < 0) {
            for (int i = 0; i < M.rows; ++i) M(i, c) = -M(i, c);
            if (U)
                for (int i = 0; i < U->rows; ++i) (*U)(i, c) = -(*U)(i, c);
        }
        // Reduce earlier fixed columns' entries in this pivot row.
        for (int j = 0; j < c; ++j) {
            Rat q = M(r, j) / M(r, c);
            Int f = rat_floor(q);
            if (f != 0) {
                col_addmul(M, j, c, -Rat(f));
                if (U) col_addmul(*U, j, c, -Rat(f));
            }
        }
        pivot_row_of.push_back(r);
        ++c;
    }
    // Drop trailing zero columns.
    QMat H(M.rows, c);
    for (int i = 0; i < M.rows; ++i)
        for (int j = 0; j < c; ++j) H(i, j) = M(i, j);
    M = H;
}

LatticeBasis lattice_canonicalize(const QMat& generators) {
    LatticeBasis L;
    L.ambient = generators.rows;
    if (generators.cols == 0) {
        L.gens = QMat(generators.rows, 0);
        return L;
    }
    Int D = 1;
    for (auto& q : generators.a) mpz_lcm(D.get_mpz_t(), D.get_mpz_t(), q.get_den_mpz_t());
    QMat M = generators;
    for (auto& q : M.a) {
        q *= Rat(D);
        q.canonicalize();
    }
    hermite_columns(M);
    for (auto& q : M.a) {
        q /= Rat(D);
        q.canonicalize();
    }
    L.gens = M;
    return L;
}

std::optional<std::vector<Int>> lattice_coords(const LatticeBasis& L, const QVec& x) {
    assert(int(x.size()) == L.ambient);
    // Forward solve along the echelon pivot structure.
    std::vector<Int> z(L.rank(), Int(0));
    QVec rem = x;
    int col = 0;
    for (int r = 0; r < L.ambient && col < L.gens.cols; ++r) {
        if (L.gens(r, col) == 0) {
            // No pivot in this row for the current column.
            if (rem[r] != 0) {
                // Might be covered by a later pivot? Pivots descend, so no.
                return std::nullopt;
            }
            continue;
        }
        Rat q = rem[r] / L.gens(r, col);
        if (!is_integral(q)) return std::nullopt;
        z[col] = q.get_num();
        for (int i = r; i < L.ambient; ++i) rem[i] -= q * L.gens(i, col);
        ++col;
    }
    for (int i = 0; i < L.ambient; ++i)
        if (rem[i] != 0) return std::nullopt;
    return z;
}

bool lattice_member(const LatticeBasis& L, const QVec& x) {
    return lattice_coords(L, x).has_value();
}

QMat integer_kernel(const QMat& A) {
    // Scale A to integer entries; kernel over Z is unchanged.
    Int D = 1;
    for (auto& q : A.a) mpz_lcm(D.get_mpz_t(), D.get_mpz_t(), q.get_den_mpz_t());
    QMat M = A;
    for (auto& q : M.a) {
        q *= Rat(D);
        q.canonicalize();
    }
    QMat U;
    hermite_columns(M, &U);
    // Columns of U beyond the Hermite rank map to zero.
    int r = M.cols;
    QMat K(A.cols, U.cols - r);
    for (int j = r; j < U.cols; ++j)
        for (int i = 0; i < A.cols; ++i) K(i, j - r) = U(i, j);
    QMat Kc = K;
    hermite_columns(Kc);
    return Kc;
}

LatticeBasis subspace_integer_points(const QMat& basis_cols) {
    int n = basis_cols.rows;
    if (basis_cols.cols == 0) {
        LatticeBasis L;
        L.ambient = n;
        L.gens = QMat(n, 0);
        return L;
    }
    // x in span(B) iff Ax = 0 where rows of A span the orthogonal
    // complement; kernel of B^T gives those rows.
    QMat A = kernel_basis(basis_cols.transposed()).transposed();
    if (A.rows == 0) {
        // Full space: integer points are Z^n.
        return lattice_canonicalize(QMat::identity(n));
    }
    QMat K = integer_kernel(A);
    return lattice_canonicalize(K);
}

}  // namespace zarlab
