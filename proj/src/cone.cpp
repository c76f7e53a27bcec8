#include "zarlab/cone.hpp"

#include <cassert>
#include <functional>

namespace zarlab {

bool lambda_independent(const QMat& vs) { return rank(vs) == vs.cols; }

namespace {

// Feasibility system over the ray coefficients t for a fixed x:
// the short-part rows applied to x - Vt, plus t_i > 0.
ConstraintSystem ray_system(const Cone& e, const Point& x) {
    ConstraintSystem ssys = cell_to_constraints(e.short_part);
    int k = e.rays();
    ConstraintSystem out(k);
    for (auto& r : ssys.rows) {
        // a . (x - V t) rel rhs  =>  (-a V) . t rel rhs - a . x
        QVec at(k, Rat(0));
        Scalar shift;
        for (int i = 0; i < e.ambient(); ++i) {
            if (r.a[i] == 0) continue;
            shift += r.a[i] * x[i];
            for (int j = 0; j < k; ++j) at[j] -= r.a[i] * e.directions(i, j);
        }
        out.add(std::move(at), r.rel, r.rhs - shift);
    }
    for (int j = 0; j < k; ++j) {
        QVec a(k, Rat(0));
        a[j] = -1;
        out.add(std::move(a), Rel::LT, Scalar());
    }
    return out;
}

}  // namespace

void cone_validate(const Cone& e) {
    if (e.short_part.flavor != Flavor::Real) throw err("FlavorMismatch", "short parts are real cells");
    if (e.short_part.dim_ambient() != e.ambient()) throw err("DimensionMismatch", "short part vs rays");
    cell_validate(e.short_part);
    if (!cell_is_bounded(e.short_part)) throw err("UnboundedShortPart", "short cells are bounded");
    if (!lambda_independent(e.directions)) throw err("DependentRays", "ray directions must be independent");
    if (e.rays() == 0) return;
    // Normalisation: the only s with V s in S - S is 0. Project the
    // system {b, b' in S, b - b' = V s} onto s and inspect the polytope.
    int n = e.ambient(), k = e.rays();
    ConstraintSystem sys(2 * n + k);
    ConstraintSystem ssys = cell_to_constraints(e.short_part);
    for (auto& r : ssys.rows) {
        QVec a(2 * n + k, Rat(0));
        for (int i = 0; i < n; ++i) a[i] = r.a[i];
        sys.add(std::move(a), r.rel, r.rhs);
        QVec b(2 * n + k, Rat(0));
        for (int i = 0; i < n; ++i) b[n + i] = r.a[i];
        sys.add(std::move(b), r.rel, r.rhs);
    }
    for (int i = 0; i < n; ++i) {
        QVec a(2 * n + k, Rat(0));
        a[i] = 1;
        a[n + i] = -1;
        for (int j = 0; j < k; ++j) a[2 * n + j] = -e.directions(i, j);
        sys.add(std::move(a), Rel::EQ, Scalar());
    }
    for (int j = 0; j < k; ++j) {
        BoundingInterval r;
        QVec c(2 * n + k, Rat(0));
        c[2 * n + j] = 1;
        r = functional_range(sys, c);
        if (r.empty) continue;
        bool zero_lo = r.lo && *r.lo == Scalar();
        bool zero_hi = r.hi && *r.hi == Scalar();
        if (!zero_lo || !zero_hi)
            throw err("NotNormalised", "a nonzero ray combination lies in S - S");
    }
}

ConeMembership cone_member(const Cone& e, const Point& x) {
    assert(int(x.size()) == e.ambient());
    ConeMembership out;
    ConstraintSystem sys = ray_system(e, x);
    auto w = rational_witness(sys);
    if (!w) return out;
    out.member = true;
    out.ray_coeffs.resize(e.rays());
    for (int j = 0; j < e.rays(); ++j) out.ray_coeffs[j] = (*w)[j].finite;
    out.short_point = x;
    for (int i = 0; i < e.ambient(); ++i) {
        Rat acc = 0;
        for (int j = 0; j < e.rays(); ++j) acc += e.directions(i, j) * out.ray_coeffs[j];
        out.short_point[i] -= Scalar(acc);
    }
    return out;
}

Subgroup skeleton(const Cone& e) {
    Subgroup g = subgroup_make(e.ambient(), e.directions, QMat(e.ambient(), 0));
    g.block_dims = e.block_dims;
    return g;
}

Rat cone_margin(const Cone& e) {
    ConstraintSystem ssys = cell_to_constraints(e.short_part);
    std::vector<QVec> verts = vertex_enumerate(ssys);
    if (verts.empty()) return Rat(0);
    int n = e.ambient(), k = e.rays();
    Rat best = 0;

    // All k-row index subsets with invertible submatrix D.
    std::vector<int> rows_idx;
    std::function<void(int)> rec = [&](int start) {
        if (int(rows_idx.size()) == k) {
            QMat d(k, k);
            for (int a = 0; a < k; ++a)
                for (int b = 0; b < k; ++b) d(a, b) = e.directions(rows_idx[a], b);
            auto inv = inverse(d);
            if (!inv) return;
            for (int j = 0; j < n; ++j) {
                // row_j . D^{-1} applied to the selected coordinates of b - b'.
                QVec aj(k);
                for (int b = 0; b < k; ++b) aj[b] = e.directions(j, b);
                QVec w = mat_vec(inv->transposed(), aj);  // w has one weight per selected row
                for (auto& vb : verts)
                    for (auto& vb2 : verts) {
                        Rat expr = vb[j] - vb2[j];
                        for (int a = 0; a < k; ++a)
                            expr += w[a] * (vb[rows_idx[a]] - vb2[rows_idx[a]]);
                        if (expr < 0) expr = -expr;
                        if (expr > best) best = expr;
                    }
            }
            return;
        }
        for (int i = start; i < n; ++i) {
            rows_idx.push_back(i);
            rec(i + 1);
            rows_idx.pop_back();
        }
    };
    if (k == 0) {
        for (int j = 0; j < n; ++j)
            for (auto& vb : verts)
                for (auto& vb2 : verts) {
                    Rat d = vb[j] - vb2[j];
                    if (d < 0) d = -d;
                    if (d > best) best = d;
                }
        return best;
    }
    bool any = false;
    std::function<void(int)> probe = [&](int start) {
        if (int(rows_idx.size()) == k) {
            QMat d(k, k);
            for (int a = 0; a < k; ++a)
                for (int b = 0; b < k; ++b) d(a, b) = e.directions(rows_idx[a], b);
            if (rank(d) == k) any = true;
            return;
        }
        for (int i = start; i < n && !any; ++i) {
            rows_idx.push_back(i);
            probe(i + 1);
            rows_idx.pop_back();
        }
    };
    probe(0);
    if (!any) throw err("DegenerateDirections", "no invertible k x k row submatrix");
    rec(0);
    return best;
}

ConeVerdict cone_classify(const Cone& e) {
    ConeVerdict out;
    out.margin = cone_margin(e);
    if (e.rays() == 0) {
        // Bounded cone: each m-distant block meets it at most once.
        out.core.kind = VerdictKind::FiniteToOne;
        out.core.block = 1;
        out.core.fiber_bound = 1;
        return out;
    }
    Subgroup v = skeleton(e);
    out.core = projection_classify(v);
    if (out.core.kind == VerdictKind::GridsForAllK) {
        // Scale generators beyond the margin so Z g_1 x ... x Z g_r is
        // made of m-distant blocks.
        for (auto& g : out.core.generators) {
            Rat norm = 0;
            for (auto& q : g) {
                Rat a = q < 0 ? -q : q;
                if (a > norm) norm = a;
            }
            assert(norm > 0);
            Rat need = (out.margin + 1) / norm;
            Int f = rat_ceil(need);
            if (f < 1) f = 1;
            for (auto& q : g) q *= Rat(f);
        }
    }
    return out;
}

InjectivityReport distant_injectivity_check(const Cone& e, int l, const Grid& b) {
    if (!distant_check(b, Scalar(cone_margin(e))))
        throw err("NotDistant", "grid is not m(E)-distant");
    InjectivityReport rep;
    std::vector<std::pair<Point, Point>> seen;  // (projection, full point)
    int off = 0;
    for (int i = 0; i + 1 < l; ++i) off += b.block_dims[i];
    int dl = b.block_dims[l - 1];
    for_each_tuple(b, [&](const Point& t) {
        if (!rep.injective) return;
        if (!cone_member(e, t).member) return;
        Point proj;
        for (size_t i = 0; i < t.size(); ++i)
            if (int(i) < off || int(i) >= off + dl) proj.push_back(t[i]);
        for (auto& [p, full] : seen) {
            if (p == proj) {
                rep.injective = false;
                rep.collision_a = full;
                rep.collision_b = t;
                return;
            }
        }
        seen.push_back({proj, t});
    });
    return rep;
}

}  // namespace zarlab
