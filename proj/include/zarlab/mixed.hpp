#pragma once

#include <optional>

#include "zarlab/family.hpp"
#include "zarlab/grid.hpp"
#include "zarlab/product_cell.hpp"
#include "zarlab/subgroup.hpp"

namespace zarlab {

/// E = f(S) + J + D with S a Presburger cell, J a purely unbounded real
/// part (cell, or a divisible subgroup which is the same thing as a
/// subspace cell), and D a bounded real cell.
struct SumForm {
    Cell s_cell;
    LinMap f;
    std::optional<Cell> j_cell;
    std::optional<Subgroup> j_group;
    Cell d_cell;
    std::vector<int> block_dims;

    int ambient() const { return f.codomain_dim(); }
};

void sum_form_validate(const SumForm& e);

/// Exact membership by bounded enumeration of the Presburger parameter.
bool sum_form_member(const SumForm& e, const Point& x);

struct SumCaseResult {
    ClassifyResult core;  // FiniteToOne(l, N) or GridsForAllK
    Point translation;    // normalisation translation applied to E
};

/// Lemma 5.4 / Prop 5.6: find l and N with p_l N-to-1 on E, or report
/// grid generators.
SumCaseResult sum_case_analyze(const SumForm& e);

/// Lemma 5.3: (f(Z^m) + J) cap (axis line) = r Z; FullDimensional when
/// the coordinates other than `axis` fail the unique-solution shape.
Rat axis_lattice(const LinMap& f, const Subgroup& j, int axis);

/// Prop 5.15: a direction d such that p + dN witnesses pure
/// unboundedness of the full-dimensional Presburger cell for every p.
Point nesting_direction(const Cell& s);

/// Symbolic nesting-line verification for a normalized family along a
/// ray (Claim A.5 dichotomy + domination).
bool nesting_verify(const FiberedFamily& f, const Ray& l);

/// X = union over t in S of f(t) + Y_t, in the structured input form.
struct MixedRelation {
    Cell s_cell;           // Presburger, full-dimensional
    LinMap f;              // R^m -> R^n
    FiberedFamily family;  // parameters over a real cell T containing S
    std::vector<int> block_dims;
};

bool mixed_member(const MixedRelation& x, const Point& p, long s_box = 64);

struct MixedResult {
    Point nesting_dir;
    std::vector<SumForm> pieces;        // X' = f(S) + union_t Y_t
    std::vector<SumCaseResult> verdicts;
    std::optional<Rat> alpha;           // present iff every piece certified
};

/// Thm 5.21 pipeline: nesting checks, fiber-union materialisation,
/// product decomposition, and the sum-case certificates. The alpha
/// bounds X since X is contained in X'.
MixedResult mixed_reduce(const MixedRelation& x);

}  // namespace zarlab
