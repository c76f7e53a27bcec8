#pragma once

#include "zarlab/cell.hpp"
#include "zarlab/lattice.hpp"

namespace zarlab {

/// Subgroup of Q^n given canonically as a divisible part (rational
/// subspace) plus a lattice part reduced against it. Equal subgroups
/// have identical canonical forms.
struct Subgroup {
    int ambient = 0;
    std::vector<int> block_dims;
    QMat divisible;        // ambient x p, canonical subspace basis
    LatticeBasis lattice;  // reduced mod divisible, Hermite-canonical

    static Subgroup trivial(int n) {
        Subgroup g;
        g.ambient = n;
        g.divisible = QMat(n, 0);
        g.lattice.ambient = n;
        g.lattice.gens = QMat(n, 0);
        return g;
    }

    bool is_trivial() const { return divisible.cols == 0 && lattice.rank() == 0; }

    friend bool operator==(const Subgroup& a, const Subgroup& b) {
        return a.ambient == b.ambient && a.divisible == b.divisible && a.lattice == b.lattice;
    }
};

/// Canonicalize from arbitrary divisible and lattice generators.
Subgroup subgroup_make(int ambient, const QMat& div_gens, const QMat& lat_gens);

bool subgroup_member(const Subgroup& g, const QVec& x);

Subgroup subgroup_sum(const Subgroup& a, const Subgroup& b);

/// Exact image under a rational linear map fixing 0 (rows x ambient).
Subgroup subgroup_image(const Subgroup& g, const QMat& f);

/// U_l = { x in Q^{d_l} : x-hat^l in V }, over the l-th block (1-based).
Subgroup block_kernel(const Subgroup& v, int l);

/// Lattice of the standard integer points of the subgroup.
LatticeBasis subgroup_integer_points(const Subgroup& g);

/// One-pass linear map zeroing the divisible part (identity on the
/// complement of its pivot rows).
QMat divisible_reduction_matrix(const Subgroup& g);

enum class VerdictKind { Injective, FiniteToOne, GridsForAllK };

struct ClassifyResult {
    VerdictKind kind = VerdictKind::Injective;
    int block = 0;              // 1-based l for Injective / FiniteToOne
    Int fiber_bound{1};         // N for FiniteToOne
    std::vector<QVec> generators;  // per-block infinite generator (GridsForAllK)
};

/// Theorem-2.8 trichotomy for the projections p_l of a subgroup.
ClassifyResult projection_classify(const Subgroup& v);

/// Shell of a cell containing 0 (throws OriginOutside otherwise).
Subgroup shell_of_cell(const Cell& c);

/// Sh(C) intersected with Z^n, computed structurally; valid for
/// omega-constant Presburger cells as well.
LatticeBasis shell_standard_lattice(const Cell& c);

}  // namespace zarlab
