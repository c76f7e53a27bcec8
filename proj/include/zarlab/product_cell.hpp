#pragma once

#include "zarlab/cell.hpp"

namespace zarlab {

struct UnboundedWitness {
    bool purely_unbounded = false;
    /// Per-level reason: "graph", "infinite-bound", "nonconstant-height",
    /// or the failing "constant-height".
    std::vector<std::string> levels;
};

/// Recursive symbolic test: every band level has an infinite bound or a
/// non-constant height.
UnboundedWitness purely_unbounded_check(const Cell& c);

/// Ray p + d * (nonnegative multiples); integer flavor walks d over N,
/// real flavor over the nonnegative rationals.
struct Ray {
    Point origin;
    Point direction;
};

/// Symbolic containment of the ray in the cell.
bool ray_in_cell(const Cell& c, const Ray& l);

/// Does the ray witness that the cell is purely unbounded: recursively,
/// the projected ray witnesses the projection, and on band levels both
/// fiber gaps grow without bound along the ray.
bool witness_line_check(const Cell& c, const Ray& l);

/// One product piece K + E of a real linear cell: K purely unbounded,
/// E bounded, together with the affine maps extracting the unique
/// decomposition of a member.
struct ProductPiece {
    Cell unbounded;  // K
    Cell bounded;    // E
    std::vector<AffineMap> to_unbounded;  // x |-> its K-component, one map per coordinate
    std::vector<AffineMap> to_bounded;    // x |-> its E-component
};

/// Partition of a real linear cell into product cells.
std::vector<ProductPiece> product_decompose(const Cell& c);

/// Set-membership of x in K + E for a piece (via the decomposition maps).
bool piece_member(const ProductPiece& p, const Point& x);

}  // namespace zarlab
