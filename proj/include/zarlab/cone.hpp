#pragma once

#include "zarlab/grid.hpp"
#include "zarlab/subgroup.hpp"

namespace zarlab {

/// Cone: a bounded real "short" cell plus positive combinations of
/// Lambda-independent ray directions (all ray intervals are (0, inf)
/// over the reals).
struct Cone {
    Cell short_part;
    QMat directions;  // n x k columns
    std::vector<int> block_dims;

    int ambient() const { return directions.rows; }
    int rays() const { return directions.cols; }
};

/// Over Q-scalars, Lambda-independence is linear independence.
bool lambda_independent(const QMat& vs);

/// Structural checks: bounded short part, independent rays, and the
/// normalisation (unique decomposition), decided exactly.
void cone_validate(const Cone& e);

struct ConeMembership {
    bool member = false;
    Point short_point;  // b with x = b + sum v_i t_i
    QVec ray_coeffs;    // t, all > 0
};

ConeMembership cone_member(const Cone& e, const Point& x);

/// Linear skeleton <C>: the divisible subgroup spanned by the rays.
Subgroup skeleton(const Cone& e);

/// Margin m(E): exact maximum of the short-part difference expressions
/// over all invertible k x k row submatrices, rows j, and vertex pairs
/// of the closed short part.
Rat cone_margin(const Cone& e);

struct ConeVerdict {
    ClassifyResult core;
    Rat margin;
};

/// Skeleton-projection classifier with the margin attached; grid
/// generators are scaled beyond the margin.
ConeVerdict cone_classify(const Cone& e);

struct InjectivityReport {
    bool injective = true;
    Point collision_a, collision_b;
};

/// Empirical injectivity of p_l on E cap B for an m(E)-distant grid.
InjectivityReport distant_injectivity_check(const Cone& e, int l, const Grid& b);

}  // namespace zarlab
