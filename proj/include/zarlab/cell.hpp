#pragma once

#include <optional>
#include <variant>
#include <vector>

#include "zarlab/affine.hpp"
#include "zarlab/constraint.hpp"

namespace zarlab {

enum class Flavor { Real, Integer };

/// Cylinder level of a cell tower: lower/upper affine bounds (absent =
/// -inf / +inf), closedness flags, and a congruence on the new
/// coordinate (integer flavor; mod 1 means plain integers).
struct Band {
    std::optional<AffineMap> lower, upper;
    bool lower_closed = false, upper_closed = false;
    Int mod{1};
    Int res{0};

    friend bool operator==(const Band&, const Band&) = default;
};

using Level = std::variant<AffineMap, Band>;  // graph or band

inline bool is_graph(const Level& l) { return std::holds_alternative<AffineMap>(l); }
inline const AffineMap& graph_map(const Level& l) { return std::get<AffineMap>(l); }
inline const Band& band(const Level& l) { return std::get<Band>(l); }

/// Recursive graph/cylinder tower over affine bound maps. Real flavor
/// with open bands and no congruences is a linear cell; integer flavor
/// with closed bands and per-level congruences is a Presburger cell.
struct Cell {
    Flavor flavor = Flavor::Real;
    std::vector<Level> levels;

    Cell() = default;
    Cell(Flavor f, std::vector<Level> ls) : flavor(f), levels(std::move(ls)) {}

    int dim_ambient() const { return int(levels.size()); }
    /// Number of band levels (the cell's dimension).
    int dim() const;

    friend bool operator==(const Cell&, const Cell&) = default;
};

/// Exact description of the fiber C_base over a base point.
struct FiberDesc {
    bool graph_point = false;
    Scalar value;  // when graph_point
    std::optional<Scalar> lo, hi;
    bool lo_closed = false, hi_closed = false;
    Int mod{1};
    Int res{0};

    bool contains(const Scalar& t) const;
    bool empty() const;
};

bool cell_member(const Cell& c, const Point& x);
Cell cell_project(const Cell& c);
FiberDesc cell_fiber(const Cell& c, const Point& base);
Point cell_basepoint(const Cell& c);
Cell cell_translate(const Cell& c, const Point& v);

/// Constraint-system view of the tower (per-level rows plus coordinate
/// congruences).
ConstraintSystem cell_to_constraints(const Cell& c);

/// Structural validation: flavor-legal levels, Pres-linearity of maps
/// and bounds in integer flavor, the non-uniformly-finite fiber
/// condition on integer bands, and lower < upper over the base.
/// Throws on violation.
void cell_validate(const Cell& c);

/// Prefix tower (first k levels).
Cell cell_prefix(const Cell& c, int k);

/// Basis of the direction space of the affine hull, one vector per band
/// level, as columns.
QMat cell_direction_space(const Cell& c);

/// Single-point cell {0}^n of the given flavor.
Cell point_cell(Flavor f, int n);
/// Cell consisting of exactly the given point.
Cell point_cell_at(Flavor f, const Point& p);

/// Graph level over an existing tower / band construction helpers.
Cell with_graph_level(const Cell& base, AffineMap map);
Cell with_band_level(const Cell& base, Band b);

bool cell_is_bounded(const Cell& c);

}  // namespace zarlab
