#pragma once

#include <optional>
#include <vector>

#include "zarlab/errors.hpp"
#include "zarlab/linalg.hpp"

namespace zarlab {

enum class Rel { LT, LE, EQ };

/// a . x REL rhs
struct LinRow {
    QVec a;
    Rel rel = Rel::LE;
    Scalar rhs;
};

/// a . x == res (mod mod); integer coefficients.
struct CongRow {
    QVec a;
    Int mod{1};
    Int res{0};
};

/// Quantifier-free conjunction of linear relations and congruences over
/// n ambient coordinates. Real semantics ignore congruence rows; they
/// are only legal in integer-flavored inputs.
struct ConstraintSystem {
    int n = 0;
    std::vector<LinRow> rows;
    std::vector<CongRow> congs;

    ConstraintSystem() = default;
    explicit ConstraintSystem(int dim) : n(dim) {}

    void add(QVec a, Rel r, Scalar rhs) { rows.push_back({std::move(a), r, std::move(rhs)}); }
    void add_cong(QVec a, Int mod, Int res);

    /// A constant row that is false (e.g. 0 < -1). Produced by
    /// fm_eliminate as the infeasibility marker.
    bool trivially_infeasible() const;
};

/// Scale each row to a primitive integer coefficient vector with
/// positive leading entry, drop satisfied constant rows, and remove
/// duplicates / single-row-implied inequalities.
void normalize_rows(ConstraintSystem& s);

/// Projection of the solution set onto the coordinates other than
/// `coord` (real-relaxation semantics). Congruence rows not mentioning
/// `coord` pass through with the coordinate deleted. Throws
/// CongruenceOnEliminatedCoord otherwise.
ConstraintSystem fm_eliminate(const ConstraintSystem& s, int coord);

/// Real-relaxation feasibility (congruence rows ignored), decided by
/// eliminating every coordinate.
bool feasible_rational(const ConstraintSystem& s);

struct BoundingInterval {
    std::optional<Scalar> lo, hi;  // nullopt = unbounded
    bool lo_closed = false, hi_closed = false;
    bool empty = false;
};

/// Exact range of coordinate i over the solution set (real relaxation).
BoundingInterval bounding_interval(const ConstraintSystem& s, int i);

/// Range of an arbitrary linear functional over the solution set.
BoundingInterval functional_range(const ConstraintSystem& s, const QVec& coeffs);

/// Vertices of the closure polytope, sorted lexicographically.
/// Requires a bounded system with standard scalars and no congruences.
std::vector<QVec> vertex_enumerate(const ConstraintSystem& s);

/// Exact bounded system test (every coordinate has finite range).
bool is_bounded(const ConstraintSystem& s);

/// Does the point satisfy the system (including congruence rows)?
bool satisfies(const ConstraintSystem& s, const Point& x);

/// One exact rational solution of a feasible real-relaxation system;
/// nullopt when infeasible. Deterministic.
std::optional<Point> rational_witness(const ConstraintSystem& s);

}  // namespace zarlab
