#include "zarlab/product_cell.hpp"

#include <cassert>

namespace zarlab {

UnboundedWitness purely_unbounded_check(const Cell& c) {
    UnboundedWitness w;
    w.purely_unbounded = true;
    for (auto& l : c.levels) {
        if (is_graph(l)) {
            w.levels.push_back("graph");
            continue;
        }
        const Band& b = band(l);
        if (!b.lower || !b.upper) {
            w.levels.push_back("infinite-bound");
            continue;
        }
        AffineMap diff = *b.upper - *b.lower;
        if (!diff.is_constant()) {
            w.levels.push_back("nonconstant-height");
            continue;
        }
        w.levels.push_back("constant-height");
        w.purely_unbounded = false;
    }
    return w;
}

namespace {

// Values of an affine map along the ray as an affine function of the
// ray parameter: (offset, slope).
std::pair<Scalar, Scalar> along_ray(const AffineMap& m, const Ray& l) {
    Scalar a = m.constant, b;
    for (int i = 0; i < m.arity(); ++i) {
        if (m.coeffs[i] == 0) continue;
        a += m.coeffs[i] * l.origin[i];
        b += m.coeffs[i] * l.direction[i];
    }
    return {a, b};
}

bool nonneg_for_all_t(const Scalar& c0, const Scalar& c1, bool strict) {
    // c0 + c1 t for t >= 0.
    Scalar zero;
    if (c1 < zero) return false;
    return strict ? c0 > zero : c0 >= zero;
}

}  // namespace

bool ray_in_cell(const Cell& c, const Ray& l) {
    int n = c.dim_ambient();
    assert(int(l.origin.size()) == n && int(l.direction.size()) == n);
    for (int k = 0; k < n; ++k) {
        const Level& lev = c.levels[k];
        Scalar xk0 = l.origin[k], xk1 = l.direction[k];
        if (is_graph(lev)) {
            auto [a, b] = along_ray(graph_map(lev), l);
            if (a != xk0 || b != xk1) return false;
            continue;
        }
        const Band& bd = band(lev);
        if (bd.lower) {
            auto [a, b] = along_ray(*bd.lower, l);
            if (!nonneg_for_all_t(xk0 - a, xk1 - b, !bd.lower_closed)) return false;
        }
        if (bd.upper) {
            auto [a, b] = along_ray(*bd.upper, l);
            if (!nonneg_for_all_t(a - xk0, b - xk1, !bd.upper_closed)) return false;
        }
        if (c.flavor == Flavor::Integer) {
            if (!xk0.integral() || !xk1.integral()) return false;
            if (xk0.residue(bd.mod) != bd.res) return false;
            if (xk1.residue(bd.mod) != 0) return false;
        }
    }
    return true;
}

bool witness_line_check(const Cell& c, const Ray& l) {
    if (!ray_in_cell(c, l)) throw err("LineLeavesCell", "the ray is not contained in the cell");
    int n = c.dim_ambient();
    Ray cur = l;
    for (int k = n - 1; k >= 0; --k) {
        const Level& lev = c.levels[k];
        if (!is_graph(lev)) {
            const Band& bd = band(lev);
            Scalar zero;
            // Both fiber gaps must grow without bound along the ray.
            if (bd.lower) {
                Scalar slope = cur.direction[k] - along_ray(*bd.lower, cur).second;
                if (!(slope > zero)) return false;
            }
            if (bd.upper) {
                Scalar slope = along_ray(*bd.upper, cur).second - cur.direction[k];
                if (!(slope > zero)) return false;
            }
        }
        cur.origin.pop_back();
        cur.direction.pop_back();
    }
    return true;
}

namespace {

// Is the homogeneous part of m zero on the column space of dirs?
bool constant_on_directions(const AffineMap& m, const QMat& dirs) {
    for (int j = 0; j < dirs.cols; ++j) {
        Rat v = 0;
        for (int i = 0; i < m.arity() && i < dirs.rows; ++i)
            if (m.coeffs[i] != 0) v += m.coeffs[i] * dirs(i, j);
        if (v != 0) return false;
    }
    return true;
}

AffineMap coordinate_map(int arity, int coord) {
    AffineMap m{arity};
    m.coeffs[coord] = 1;
    return m;
}

struct BasePiece {
    Cell j, d;
    std::vector<AffineMap> gmaps, dmaps;  // arity n-1
};

// diff(x + shift) as an affine map, shift a fixed point evaluated
// through the homogeneous part.
AffineMap shifted_by_const(const AffineMap& diff, const QVec& shift) {
    AffineMap r = diff;
    for (int i = 0; i < diff.arity(); ++i)
        if (diff.coeffs[i] != 0) r.constant += diff.coeffs[i] * Scalar(shift[i]);
    return r;
}

void emit_graph_case(const BasePiece& bp, const AffineMap& alpha, int n,
                     std::vector<ProductPiece>& out) {
    Scalar a = alpha.constant;
    ProductPiece p;
    p.unbounded = with_graph_level(bp.j, alpha);
    p.bounded = with_graph_level(bp.d, alpha.plus_const(-a));
    p.to_unbounded = bp.gmaps;
    p.to_bounded = bp.dmaps;
    for (auto& m : p.to_unbounded) m = m.widened(n);
    for (auto& m : p.to_bounded) m = m.widened(n);
    AffineMap dn = compose_affine(alpha, bp.dmaps).widened(n).plus_const(-a);
    AffineMap gn = coordinate_map(n, n - 1) - dn;
    p.to_unbounded.push_back(gn);
    p.to_bounded.push_back(dn);
    out.push_back(std::move(p));
}

void emit_halfcylinder_case(const BasePiece& bp, const std::optional<AffineMap>& lower,
                            const std::optional<AffineMap>& upper, int n,
                            std::vector<ProductPiece>& out) {
    // (alpha, inf), (-inf, beta) or (-inf, inf): the finite bound (if
    // any) moves into the bounded part as a graph.
    const AffineMap* fin = lower ? &*lower : (upper ? &*upper : nullptr);
    ProductPiece p;
    Band kb;
    kb.lower = lower;
    kb.upper = upper;
    p.unbounded = with_band_level(bp.j, kb);
    p.bounded = with_graph_level(bp.d, fin ? fin->plus_const(-fin->constant) : AffineMap{n - 1});
    p.to_unbounded = bp.gmaps;
    p.to_bounded = bp.dmaps;
    for (auto& m : p.to_unbounded) m = m.widened(n);
    for (auto& m : p.to_bounded) m = m.widened(n);
    AffineMap dn = fin ? compose_affine(*fin, bp.dmaps).widened(n).plus_const(-fin->constant)
                       : AffineMap{n};
    AffineMap gn = coordinate_map(n, n - 1) - dn;
    p.to_unbounded.push_back(gn);
    p.to_bounded.push_back(dn);
    out.push_back(std::move(p));
}

// (beta - alpha) constant along D: K = (alpha, eps)_J, E = graph of
// alpha - alpha(0) over D.
void emit_case_iiia(const BasePiece& bp, const AffineMap& alpha, const AffineMap& beta, int n,
                    std::vector<ProductPiece>& out) {
    AffineMap diff = beta - alpha;
    Point d0 = cell_basepoint(bp.d);
    AffineMap eps = alpha + shifted_by_const(diff, qvec_of(d0));
    Scalar a = alpha.constant;
    ProductPiece p;
    Band kb;
    kb.lower = alpha;
    kb.upper = eps;
    p.unbounded = with_band_level(bp.j, kb);
    p.bounded = with_graph_level(bp.d, alpha.plus_const(-a));
    p.to_unbounded = bp.gmaps;
    p.to_bounded = bp.dmaps;
    for (auto& m : p.to_unbounded) m = m.widened(n);
    for (auto& m : p.to_bounded) m = m.widened(n);
    AffineMap dn = compose_affine(alpha, bp.dmaps).widened(n).plus_const(-a);
    AffineMap gn = coordinate_map(n, n - 1) - dn;
    p.to_unbounded.push_back(gn);
    p.to_bounded.push_back(dn);
    out.push_back(std::move(p));
}

// (beta - alpha) constant along J: K = graph of alpha - alpha(0) over J,
// E = (alpha, eps)_D.
void emit_case_iiib(const BasePiece& bp, const AffineMap& alpha, const AffineMap& beta, int n,
                    std::vector<ProductPiece>& out) {
    AffineMap diff = beta - alpha;
    Point g0 = cell_basepoint(bp.j);
    AffineMap eps = alpha + shifted_by_const(diff, qvec_of(g0));
    Scalar a = alpha.constant;
    ProductPiece p;
    p.unbounded = with_graph_level(bp.j, alpha.plus_const(-a));
    Band eb;
    eb.lower = alpha;
    eb.upper = eps;
    p.bounded = with_band_level(bp.d, eb);
    p.to_unbounded = bp.gmaps;
    p.to_bounded = bp.dmaps;
    for (auto& m : p.to_unbounded) m = m.widened(n);
    for (auto& m : p.to_bounded) m = m.widened(n);
    AffineMap gn = compose_affine(alpha, bp.gmaps).widened(n).plus_const(-a);
    AffineMap dn = coordinate_map(n, n - 1) - gn;
    p.to_unbounded.push_back(gn);
    p.to_bounded.push_back(dn);
    out.push_back(std::move(p));
}

void emit_bounded_band(const BasePiece& bp, const AffineMap& alpha, const AffineMap& beta, int n,
                       std::vector<ProductPiece>& out) {
    AffineMap diff = beta - alpha;
    QMat jdirs = cell_direction_space(bp.j);
    QMat ddirs = cell_direction_space(bp.d);
    bool j_const = constant_on_directions(diff, jdirs);
    bool d_const = constant_on_directions(diff, ddirs);
    if (j_const) {
        emit_case_iiib(bp, alpha, beta, n, out);
        return;
    }
    if (d_const) {
        emit_case_iiia(bp, alpha, beta, n, out);
        return;
    }
    // Split by gamma(x) = alpha(x) + diff(g(x) + d0), d0 minimizing diff
    // over the closure of D.
    ConstraintSystem dsys = cell_to_constraints(bp.d);
    std::vector<QVec> verts = vertex_enumerate(dsys);
    assert(!verts.empty());
    QVec d0 = verts[0];
    Rat best;
    bool first = true;
    for (auto& v : verts) {
        Rat val = diff.constant.finite;
        for (int i = 0; i < diff.arity(); ++i) val += diff.coeffs[i] * v[i];
        if (first || val < best) {
            best = val;
            d0 = v;
            first = false;
        }
    }
    AffineMap diff_of_g = compose_affine(diff.homogeneous(), bp.gmaps);
    AffineMap gamma = alpha + diff_of_g;
    {
        Rat shift = diff.constant.finite;
        for (int i = 0; i < diff.arity(); ++i) shift += diff.coeffs[i] * d0[i];
        // gamma = alpha + diff^(g(x)) + diff(d0); diff(d0) includes the
        // constant term once.
        gamma = gamma.plus_const(Scalar(shift));
    }
    emit_case_iiia(bp, alpha, gamma, n, out);
    emit_graph_case(bp, gamma, n, out);
    emit_case_iiib(bp, gamma, beta, n, out);
}

}  // namespace

std::vector<ProductPiece> product_decompose(const Cell& c) {
    if (c.flavor != Flavor::Real) throw err("FlavorMismatch", "product cells live in the real setting");
    int n = c.dim_ambient();
    if (n == 0) {
        ProductPiece p;
        p.unbounded = Cell(Flavor::Real, {});
        p.bounded = Cell(Flavor::Real, {});
        return {p};
    }
    Cell base = cell_project(c);
    std::vector<ProductPiece> base_pieces = product_decompose(base);
    std::vector<ProductPiece> out;
    for (auto& bpp : base_pieces) {
        BasePiece bp;
        bp.j = bpp.unbounded;
        bp.d = bpp.bounded;
        bp.gmaps = bpp.to_unbounded;
        bp.dmaps = bpp.to_bounded;
        const Level& top = c.levels[n - 1];
        if (is_graph(top)) {
            emit_graph_case(bp, graph_map(top), n, out);
            continue;
        }
        const Band& b = band(top);
        if (b.lower && b.upper)
            emit_bounded_band(bp, *b.lower, *b.upper, n, out);
        else
            emit_halfcylinder_case(bp, b.lower, b.upper, n, out);
    }
    return out;
}

bool piece_member(const ProductPiece& p, const Point& x) {
    Point g, d;
    for (auto& m : p.to_unbounded) g.push_back(m.eval(x));
    for (auto& m : p.to_bounded) d.push_back(m.eval(x));
    if (!cell_member(p.unbounded, g)) return false;
    if (!cell_member(p.bounded, d)) return false;
    Point sum = g + d;
    for (size_t i = 0; i < x.size(); ++i)
        if (sum[i] != x[i]) return false;
    return true;
}

}  // namespace zarlab
