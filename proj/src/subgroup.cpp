#include "zarlab/subgroup.hpp"

#include <cassert>

namespace zarlab {

namespace {

// Pivot rows of a canonical (RREF-style) subspace basis: the first
// nonzero row of each column.
std::vector<int> pivot_rows(const QMat& div) {
    std::vector<int> p(div.cols, -1);
    for (int j = 0; j < div.cols; ++j)
        for (int i = 0; i < div.rows; ++i)
            if (div(i, j) != 0) {
                p[j] = i;
                break;
            }
    return p;
}

QVec reduce_mod_divisible(const QMat& div, const std::vector<int>& piv, QVec x) {
    for (int j = 0; j < div.cols; ++j) {
        Rat f = x[piv[j]] / div(piv[j], j);
        if (f == 0) continue;
        for (int i = 0; i < div.rows; ++i) x[i] -= f * div(i, j);
    }
    return x;
}

}  // namespace

Subgroup subgroup_make(int ambient, const QMat& div_gens, const QMat& lat_gens) {
    Subgroup g;
    g.ambient = ambient;
    g.divisible = canonical_subspace_basis(div_gens);
    std::vector<int> piv = pivot_rows(g.divisible);
    QMat reduced(ambient, lat_gens.cols);
    for (int j = 0; j < lat_gens.cols; ++j)
        reduced.set_col(j, reduce_mod_divisible(g.divisible, piv, lat_gens.col(j)));
    g.lattice = lattice_canonicalize(reduced);
    return g;
}

bool subgroup_member(const Subgroup& g, const QVec& x) {
    assert(int(x.size()) == g.ambient);
    std::vector<int> piv = pivot_rows(g.divisible);
    QVec r = reduce_mod_divisible(g.divisible, piv, x);
    return lattice_member(g.lattice, r);
}

Subgroup subgroup_sum(const Subgroup& a, const Subgroup& b) {
    assert(a.ambient == b.ambient);
    Subgroup g = subgroup_make(a.ambient, a.divisible.hcat(b.divisible),
                               a.lattice.gens.hcat(b.lattice.gens));
    g.block_dims = a.block_dims.empty() ? b.block_dims : a.block_dims;
    return g;
}

Subgroup subgroup_image(const Subgroup& g, const QMat& f) {
    assert(f.cols == g.ambient);
    return subgroup_make(f.rows, mat_mul(f, g.divisible), mat_mul(f, g.lattice.gens));
}

Subgroup block_kernel(const Subgroup& v, int l) {
    assert(!v.block_dims.empty());
    assert(l >= 1 && l <= int(v.block_dims.size()));
    int off = 0;
    for (int i = 0; i + 1 < l; ++i) off += v.block_dims[i];
    int dl = v.block_dims[l - 1];
    int n = v.ambient;

    auto outside = [&](int row) { return row < off || row >= off + dl; };

    // Rows outside the block of the generator matrices.
    int n_out = n - dl;
    QMat div_out(n_out, v.divisible.cols), lat_out(n_out, v.lattice.rank());
    {
        int r = 0;
        for (int i = 0; i < n; ++i) {
            if (!outside(i)) continue;
            for (int j = 0; j < v.divisible.cols; ++j) div_out(r, j) = v.divisible(i, j);
            for (int j = 0; j < v.lattice.rank(); ++j) lat_out(r, j) = v.lattice.gens(i, j);
            ++r;
        }
    }

    // Divisible part: rational combinations with zero outside-block rows.
    QMat ka = kernel_basis(div_out);
    QMat div_block(dl, ka.cols);
    for (int j = 0; j < ka.cols; ++j) {
        QVec full = mat_vec(v.divisible, ka.col(j));
        for (int i = 0; i < dl; ++i) div_block(i, j) = full[off + i];
    }

    // Lattice part: integer z with lat_out z in the column space of
    // div_out, i.e. C lat_out z = 0 for C spanning the left cokernel.
    QMat c = kernel_basis(div_out.transposed()).transposed();
    QMat lat_block(dl, 0);
    if (v.lattice.rank() > 0) {
        QMat cond = c.rows > 0 ? mat_mul(c, lat_out) : QMat(0, v.lattice.rank());
        QMat zs = cond.rows > 0 ? integer_kernel(cond) : QMat::identity(v.lattice.rank());
        lat_block = QMat(dl, zs.cols);
        for (int j = 0; j < zs.cols; ++j) {
            QVec z = zs.col(j);
            QVec rhs = mat_vec(lat_out, z);
            for (auto& q : rhs) q = -q;
            QVec a(v.divisible.cols, Rat(0));
            if (v.divisible.cols > 0) {
                auto sol = solve_rational(div_out, rhs);
                assert(sol);
                a = sol->particular;
            }
            QVec full = mat_vec(v.lattice.gens, z);
            if (v.divisible.cols > 0) {
                QVec dv = mat_vec(v.divisible, a);
                for (int i = 0; i < n; ++i) full[i] += dv[i];
            }
            for (int i = 0; i < dl; ++i) lat_block(i, j) = full[off + i];
        }
    }
    Subgroup u = subgroup_make(dl, div_block, lat_block);
    u.block_dims = {dl};
    return u;
}

LatticeBasis subgroup_integer_points(const Subgroup& g) {
    // x in Z^n with reduce(x) in lattice: solve reduce(x) - L z = 0 over
    // integer (x, z) and project onto x.
    int n = g.ambient;
    std::vector<int> piv = pivot_rows(g.divisible);
    // reduce as a linear map R: x - sum_j (x[piv_j]/d_j) col_j.
    QMat r = QMat::identity(n);
    for (int j = 0; j < g.divisible.cols; ++j) {
        Rat inv = 1 / g.divisible(piv[j], j);
        for (int i = 0; i < n; ++i) r(i, piv[j]) -= inv * g.divisible(i, j);
    }
    // But reduction is sequential; as the canonical basis has zero
    // entries at other pivots, the one-pass matrix is exact.
    int q = g.lattice.rank();
    QMat sys(n, n + q);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) sys(i, j) = r(i, j);
        for (int j = 0; j < q; ++j) sys(i, n + j) = -g.lattice.gens(i, j);
    }
    QMat k = integer_kernel(sys);
    QMat xs(n, k.cols);
    for (int j = 0; j < k.cols; ++j)
        for (int i = 0; i < n; ++i) xs(i, j) = k(i, j);
    return lattice_canonicalize(xs);
}

ClassifyResult projection_classify(const Subgroup& v) {
    assert(!v.block_dims.empty());
    int r = int(v.block_dims.size());
    ClassifyResult res;
    std::vector<Subgroup> kernels;
    for (int l = 1; l <= r; ++l) {
        Subgroup u = block_kernel(v, l);
        if (u.is_trivial()) {
            res.kind = VerdictKind::Injective;
            res.block = l;
            return res;
        }
        kernels.push_back(std::move(u));
    }
    // Q-ambient subgroups are torsion-free: nontrivial kernels are
    // infinite, so all projections admit grids of every size.
    res.kind = VerdictKind::GridsForAllK;
    res.block = 0;
    for (auto& u : kernels) {
        QVec gen = u.divisible.cols > 0 ? u.divisible.col(0) : u.lattice.gens.col(0);
        res.generators.push_back(std::move(gen));
    }
    return res;
}

}  // namespace zarlab
