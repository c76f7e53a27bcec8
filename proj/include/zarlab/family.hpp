#pragma once

#include "zarlab/cell.hpp"

namespace zarlab {

/// Family of fibers over a parameter cell: family_cell lives over
/// m + n coordinates and restricts to parameter_cell on the first m.
struct FiberedFamily {
    Cell parameter_cell;  // T, dimension m ambient
    Cell family_cell;     // over m + n coordinates, first m levels match T

    int param_dim() const { return parameter_cell.dim_ambient(); }
    int fiber_dim() const { return family_cell.dim_ambient() - param_dim(); }
};

void family_validate(const FiberedFamily& f);

struct NormalizedFamily {
    std::vector<AffineMap> section;  // f : T -> M^n with f(t) in X_t
    FiberedFamily shifted;           // Y_t = X_t - f(t); 0 in every fiber
};

/// Lemma-A.8-style choice of a linear section and the recentred family.
NormalizedFamily normalize_family(const FiberedFamily& f);

/// Membership of (t, y) with y in the fiber over t.
bool family_member(const FiberedFamily& f, const Point& t, const Point& y);

}  // namespace zarlab
