#pragma once

#include "zarlab/cell.hpp"

namespace zarlab {

/// Partition the solution set of a quantifier-free system into pairwise
/// disjoint cells. Real flavor forbids congruence rows; integer flavor
/// splits residue classes so that bounds become congruence-aligned
/// Pres-linear maps. Infeasible systems give an empty list.
std::vector<Cell> decompose_constraints(const ConstraintSystem& s, Flavor flavor);

}  // namespace zarlab
