#pragma once

#include <optional>

#include "zarlab/grid.hpp"
#include "zarlab/subgroup.hpp"

namespace zarlab {

/// Default search-radius cap factor (multiplies N+1); overridable via
/// the ZARLAB_SEARCH_CAP environment variable in the CLI.
inline constexpr long kDefaultSearchCap = 1 << 16;

/// Z-cover of an omega-constant Presburger cell containing 0: bounds
/// whose constant lies beyond the integers are relaxed to +-infinity.
Cell zcover(const Cell& c);

struct HeightInterval {
    std::optional<Scalar> lo, hi;
    bool empty = false;
    bool finite() const { return lo && hi && !empty; }
    Scalar length() const;  // only when finite()
};

/// S_L(x, C): the intersection of the hull fibers over the L-box around
/// x in pi(C). Top level must be a band.
HeightInterval cylinder_height(const Cell& c, const Point& base, const Int& radius);

/// An N-internal point: x in C with B_N(x) cap Sh(C) <= C. Constructive
/// per the inductive existence proof; throws SearchExhausted past the
/// radius cap.
Point internal_point(const Cell& c, const Int& n_radius, long cap = kDefaultSearchCap);

/// Translation a with A + a inside C, for a finite Z-volume subset A of
/// Sh(C). Returns a.
Point transfer_grid(const Cell& c, const std::vector<Point>& a_set, long cap = kDefaultSearchCap);

/// A standard-lattice replica of A inside Sh(C) with the same
/// grid-configuration.
std::vector<Point> replica_in_lattice(const Cell& c, const BlockedSet& a, long cap = kDefaultSearchCap);

/// k > N / (least nonzero coordinate gap); returns (kA, k). Singleton
/// or gap-free sets give k = 1.
std::pair<std::vector<Point>, Int> distant_dilate(const std::vector<Point>& a, const Int& n_dist);

/// N-distant grid B' with |C cap B| <= |C cap B'| and B' <= B.
Grid distant_replica(const Cell& c, const Grid& b, const Int& n_dist, long cap = kDefaultSearchCap);

/// A verified k-grid inside a Presburger cell containing 0 whose shell
/// classifies GridsForAllK; throws NotGridFull otherwise.
Grid kgrid_in_cell(const Cell& c, int k, const std::vector<int>& block_dims,
                   long cap = kDefaultSearchCap);

/// Grid B with B <= V drawn from k distinct multiples of each block
/// generator (Theorem 2.8 direction (1) => grids).
Grid shell_grid(const Subgroup& v, int k);

/// Integer points of a cell inside the box [lo, hi]^n.
std::vector<Point> enumerate_cell_box(const Cell& c, const Int& lo, const Int& hi);

/// Lattice points in the box [-radius, radius]^n around a center.
std::vector<Point> lattice_points_in_box(const LatticeBasis& l, const Point& center,
                                         const Int& radius);

}  // namespace zarlab
