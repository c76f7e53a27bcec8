#include <cassert>

#include "zarlab/subgroup.hpp"

namespace zarlab {

namespace {

// Embedding matrix Q^k -> Q^(k+1), zero last row.
QMat embed_matrix(int k) {
    QMat t(k + 1, k);
    for (int i = 0; i < k; ++i) t(i, i) = 1;
    return t;
}

// A band level has >= 2 admissible points in some fiber iff a bound is
// infinite, the height is non-constant, or the constant height reaches
// the modulus (bounds in cells from the decomposer are class-aligned).
enum class BandShellKind { AddsDirection, SinglePointFiber };

BandShellKind classify_band_fibers(const Band& b, const Int& mod) {
    if (!b.lower || !b.upper) return BandShellKind::AddsDirection;
    AffineMap diff = *b.upper - *b.lower;
    if (!diff.is_constant()) return BandShellKind::AddsDirection;
    Scalar h = diff.constant;
    if (h >= Scalar(Rat(mod))) return BandShellKind::AddsDirection;
    return BandShellKind::SinglePointFiber;
}

}  // namespace

Subgroup shell_of_cell(const Cell& c) {
    int n = c.dim_ambient();
    Point zero(n, Scalar());
    if (!cell_member(c, zero))
        throw err("OriginOutside", "shell_of_cell needs 0 in the cell; translate by cell_basepoint first");
    for (auto& l : c.levels) {
        auto standard_map = [](const AffineMap& m) { return m.constant.standard(); };
        if (is_graph(l)) {
            if (!standard_map(graph_map(l))) throw err("OmegaScalar", "shell of an omega cell is not finitely describable; use shell_standard_lattice");
        } else {
            const Band& b = band(l);
            if ((b.lower && !standard_map(*b.lower)) || (b.upper && !standard_map(*b.upper)))
                throw err("OmegaScalar", "shell of an omega cell is not finitely describable; use shell_standard_lattice");
        }
    }
    Subgroup g = Subgroup::trivial(0);
    for (int k = 0; k < n; ++k) {
        const Level& l = c.levels[k];
        if (is_graph(l)) {
            const AffineMap& m = graph_map(l);
            assert(m.constant == Scalar());  // 0 in C pins graph constants
            QMat t = embed_matrix(k);
            for (int j = 0; j < k; ++j) t(k, j) = m.coeffs[j];
            g = subgroup_image(g, t);
            continue;
        }
        const Band& b = band(l);
        QMat t = embed_matrix(k);
        QMat div = mat_mul(t, g.divisible);
        QMat lat = mat_mul(t, g.lattice.gens);
        if (c.flavor == Flavor::Real) {
            QMat dir(k + 1, 1);
            dir(k, 0) = 1;
            g = subgroup_make(k + 1, div.hcat(dir), lat);
        } else {
            BandShellKind kind = classify_band_fibers(b, b.mod);
            if (kind == BandShellKind::SinglePointFiber) {
                // Fibers are singletons: the level acts as the graph of
                // the aligned lower bound.
                QMat tg = embed_matrix(k);
                for (int j = 0; j < k; ++j) tg(k, j) = b.lower->coeffs[j];
                g = subgroup_image(g, tg);
                continue;
            }
            QMat dir(k + 1, 1);
            dir(k, 0) = Rat(b.mod);
            g = subgroup_make(k + 1, div, lat.hcat(dir));
        }
    }
    g.ambient = n;
    return g;
}

LatticeBasis shell_standard_lattice(const Cell& c) {
    if (c.flavor != Flavor::Integer)
        throw err("FlavorMismatch", "standard-lattice shells are for integer cells");
    int n = c.dim_ambient();
    Point zero(n, Scalar());
    if (!cell_member(c, zero)) throw err("OriginOutside", "cell must contain 0");
    LatticeBasis latt;
    latt.ambient = 0;
    latt.gens = QMat(0, 0);
    for (int k = 0; k < n; ++k) {
        const Level& l = c.levels[k];
        auto lift_graph = [&](const AffineMap& m) {
            // { (x, m(x)) : x in latt, m(x) integral }.
            QVec w(latt.rank(), Rat(0));
            for (int j = 0; j < latt.rank(); ++j) {
                Rat v = 0;
                for (int i = 0; i < k; ++i)
                    if (m.coeffs[i] != 0) v += m.coeffs[i] * latt.gens(i, j);
                w[j] = v;
            }
            // Integrality sublattice: z with w . z integral.
            QMat cond(1, latt.rank() + 1);
            for (int j = 0; j < latt.rank(); ++j) cond(0, j) = w[j];
            cond(0, latt.rank()) = -1;
            QMat zs = integer_kernel(cond);
            QMat out(k + 1, zs.cols);
            for (int j = 0; j < zs.cols; ++j) {
                QVec z(latt.rank());
                for (int i = 0; i < latt.rank(); ++i) z[i] = zs(i, j);
                QVec x = mat_vec(latt.gens, z);
                Rat val = 0;
                for (int i = 0; i < k; ++i)
                    if (m.coeffs[i] != 0) val += m.coeffs[i] * x[i];
                for (int i = 0; i < k; ++i) out(i, j) = x[i];
                out(k, j) = val;
            }
            latt = lattice_canonicalize(out);
            latt.ambient = k + 1;
        };
        if (is_graph(l)) {
            const AffineMap& m = graph_map(l);
            assert(m.constant == Scalar());
            lift_graph(m);
            continue;
        }
        const Band& b = band(l);
        if (classify_band_fibers(b, b.mod) == BandShellKind::SinglePointFiber) {
            if (!b.lower->constant.standard())
                throw err("Unsupported", "single-point omega band has no standard lattice rule");
            lift_graph(*b.lower);
            continue;
        }
        QMat out(k + 1, latt.rank() + 1);
        for (int j = 0; j < latt.rank(); ++j)
            for (int i = 0; i < k; ++i) out(i, j) = latt.gens(i, j);
        out(k, latt.rank()) = Rat(b.mod);
        latt = lattice_canonicalize(out);
        latt.ambient = k + 1;
    }
    return latt;
}

}  // namespace zarlab
