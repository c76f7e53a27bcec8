#include "zarlab/family.hpp"

#include <cassert>

namespace zarlab {

void family_validate(const FiberedFamily& f) {
    int m = f.param_dim();
    if (f.family_cell.dim_ambient() < m) throw err("DimensionMismatch", "family narrower than parameters");
    for (int k = 0; k < m; ++k)
        if (!(f.family_cell.levels[k] == f.parameter_cell.levels[k]))
            throw err("FamilyMismatch", "family cell must restrict to the parameter cell");
    if (f.parameter_cell.flavor != Flavor::Real || f.family_cell.flavor != Flavor::Real)
        throw err("FlavorMismatch", "families are real-cell objects");
    cell_validate(f.parameter_cell);
    cell_validate(f.family_cell);
}

bool family_member(const FiberedFamily& f, const Point& t, const Point& y) {
    Point full = t;
    for (auto& c : y) full.push_back(c);
    return cell_member(f.family_cell, full);
}

NormalizedFamily normalize_family(const FiberedFamily& f) {
    family_validate(f);
    int m = f.param_dim();
    int n = f.fiber_dim();
    NormalizedFamily out;
    out.shifted.parameter_cell = f.parameter_cell;
    out.shifted.family_cell = Cell(Flavor::Real, {});
    for (int k = 0; k < m; ++k) out.shifted.family_cell.levels.push_back(f.family_cell.levels[k]);

    // Evaluate a level map along (t, section(t)) as a map of t alone.
    auto along_section = [&](const AffineMap& mu) {
        std::vector<AffineMap> inner;
        for (int c = 0; c < m; ++c) {
            AffineMap id{m};
            id.coeffs[c] = 1;
            inner.push_back(std::move(id));
        }
        for (auto& h : out.section) inner.push_back(h);
        assert(int(inner.size()) >= mu.arity());
        inner.resize(mu.arity(), AffineMap{m});
        return compose_affine(mu, inner);
    };

    for (int j = 0; j < n; ++j) {
        const Level& lev = f.family_cell.levels[m + j];
        AffineMap h{m};
        if (is_graph(lev)) {
            h = along_section(graph_map(lev));
        } else {
            const Band& b = band(lev);
            if (b.lower && b.upper) {
                h = (along_section(*b.lower) + along_section(*b.upper)).scaled(rat(1, 2));
            } else if (b.lower) {
                h = along_section(*b.lower).plus_const(Scalar(rat(1)));
            } else if (b.upper) {
                h = along_section(*b.upper).plus_const(Scalar(rat(-1)));
            }
        }
        // Shift the level: mu'(t, z) = mu(t, z + h_<j(t)) - h_j(t).
        auto shift_map = [&](const AffineMap& mu) {
            AffineMap r{m + j};
            r.constant = mu.constant;
            for (int c = 0; c < m && c < mu.arity(); ++c) r.coeffs[c] = mu.coeffs[c];
            for (int i = 0; i < j && m + i < mu.arity(); ++i) {
                Rat w = mu.coeffs[m + i];
                if (w == 0) continue;
                r.coeffs[m + i] = w;
                const AffineMap& hi = out.section[i];
                for (int c = 0; c < m; ++c) r.coeffs[c] += w * hi.coeffs[c];
                r.constant += w * hi.constant;
            }
            for (int c = 0; c < m; ++c) r.coeffs[c] -= h.coeffs[c];
            r.constant -= h.constant;
            return r;
        };
        if (is_graph(lev)) {
            out.shifted.family_cell.levels.push_back(shift_map(graph_map(lev)));
        } else {
            Band b = band(lev);
            if (b.lower) b.lower = shift_map(*b.lower);
            if (b.upper) b.upper = shift_map(*b.upper);
            out.shifted.family_cell.levels.push_back(b);
        }
        out.section.push_back(std::move(h));
    }
    return out;
}

}  // namespace zarlab
