#pragma once

#include <optional>

#include "zarlab/linalg.hpp"

namespace zarlab {

/// Column-style Hermite form of an integer matrix, in place. Pivots are
/// positive, descend row-wise left to right, entries left of a pivot in
/// its row are reduced into [0, pivot). Zero columns are dropped. The
/// result is the unique such basis of the column span over Z.
/// When U is non-null it receives the applied column transform
/// (unimodular, cols x cols of the input), so input * U = [result | 0].
void hermite_columns(QMat& M, QMat* U = nullptr);

/// Finitely generated subgroup of Q^n, stored as the unique Hermite
/// basis of its generators.
struct LatticeBasis {
    int ambient = 0;
    QMat gens;  // ambient x rank, canonical

    int rank() const { return gens.cols; }
    bool trivial() const { return gens.cols == 0; }

    friend bool operator==(const LatticeBasis&, const LatticeBasis&) = default;
};

/// Canonicalize arbitrary rational generator columns.
LatticeBasis lattice_canonicalize(const QMat& generators);

/// Integer-combination membership, decided exactly.
bool lattice_member(const LatticeBasis& L, const QVec& x);

/// Coordinates of x in the basis, when x is a member.
std::optional<std::vector<Int>> lattice_coords(const LatticeBasis& L, const QVec& x);

/// Basis of {z in Z^k : Az = 0} for rational A (n x k), as integer
/// columns in Hermite form.
QMat integer_kernel(const QMat& A);

/// Lattice of integer points of the rational subspace spanned by the
/// given columns: span(B) intersected with Z^n.
LatticeBasis subspace_integer_points(const QMat& basis_cols);

}  // namespace zarlab
