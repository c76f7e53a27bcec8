#include "zarlab/cell.hpp"

#include <cassert>

namespace zarlab {

int Cell::dim() const {
    int d = 0;
    for (auto& l : levels)
        if (!is_graph(l)) ++d;
    return d;
}

bool FiberDesc::contains(const Scalar& t) const {
    if (graph_point) return t == value;
    if (lo && (lo_closed ? t < *lo : t <= *lo)) return false;
    if (hi && (hi_closed ? t > *hi : t >= *hi)) return false;
    if (mod > 1 || res != 0) {
        if (!t.integral()) return false;
        if (t.residue(mod) != res) return false;
    }
    return true;
}

bool FiberDesc::empty() const {
    if (graph_point) return false;
    if (!lo || !hi) return false;  // half-infinite: nonempty for mod-respecting t
    if (*lo > *hi) return true;
    if (*lo == *hi) {
        if (!(lo_closed && hi_closed)) return true;
        return !FiberDesc(*this).contains(*lo);
    }
    // Finite window: an admissible congruence point must fit.
    if (mod >= 1) {
        if (!lo->standard() || !hi->standard()) return false;  // omega-length window
        Scalar start = lo_closed ? *lo : *lo;
        Int t = rat_ceil(start.finite);
        if (!lo_closed && Rat(t) == start.finite) t += 1;
        t += mod_pos(res - t, mod);
        Scalar st{Rat(t)};
        return !contains(st);
    }
    return false;
}

bool cell_member(const Cell& c, const Point& x) {
    if (int(x.size()) != c.dim_ambient())
        throw err("DimensionMismatch", "point dimension does not match cell");
    if (c.flavor == Flavor::Integer && !point_integral(x)) return false;
    Point prefix;
    prefix.reserve(x.size());
    for (size_t k = 0; k < x.size(); ++k) {
        const Level& l = c.levels[k];
        if (is_graph(l)) {
            if (graph_map(l).eval_prefix(prefix) != x[k]) return false;
        } else {
            const Band& b = band(l);
            if (b.lower) {
                Scalar lo = b.lower->eval_prefix(prefix);
                if (b.lower_closed ? x[k] < lo : x[k] <= lo) return false;
            }
            if (b.upper) {
                Scalar hi = b.upper->eval_prefix(prefix);
                if (b.upper_closed ? x[k] > hi : x[k] >= hi) return false;
            }
            if (c.flavor == Flavor::Integer) {
                if (x[k].residue(b.mod) != b.res) return false;
            }
        }
        prefix.push_back(x[k]);
    }
    return true;
}

Cell cell_project(const Cell& c) {
    if (c.levels.empty()) throw err("EmptyTower", "projecting a 0-level cell");
    Cell p = c;
    p.levels.pop_back();
    return p;
}

FiberDesc cell_fiber(const Cell& c, const Point& base) {
    if (c.levels.empty()) throw err("EmptyTower", "fiber of a 0-level cell");
    if (int(base.size()) != c.dim_ambient() - 1)
        throw err("DimensionMismatch", "base dimension mismatch");
    if (!cell_member(cell_project(c), base)) throw err("BaseOutside", "base not in the projection");
    const Level& l = c.levels.back();
    FiberDesc f;
    if (is_graph(l)) {
        f.graph_point = true;
        f.value = graph_map(l).eval_prefix(base);
        return f;
    }
    const Band& b = band(l);
    if (b.lower) {
        f.lo = b.lower->eval_prefix(base);
        f.lo_closed = b.lower_closed;
    }
    if (b.upper) {
        f.hi = b.upper->eval_prefix(base);
        f.hi_closed = b.upper_closed;
    }
    if (c.flavor == Flavor::Integer) {
        f.mod = b.mod;
        f.res = b.res;
    }
    return f;
}

namespace {

/// Deterministic choice of a fiber element: the congruence-respecting
/// point nearest 0 within bounds, preferring the lower value on ties;
/// for real open intervals, 0 if it fits, else 1 past the finite
/// endpoint or the midpoint.
std::optional<Scalar> pick_fiber_point(const FiberDesc& f, Flavor flavor) {
    if (f.graph_point) return f.value;
    if (flavor == Flavor::Integer) {
        Int m = f.mod >= 1 ? f.mod : Int(1);
        // Candidate nearest 0 in the congruence class.
        auto clamp = [&](Int t) -> std::optional<Int> {
            if (f.lo) {
                // smallest admissible >= / > lo
                if (!f.lo->standard()) {
                    if (f.lo->omega > 0) return std::nullopt;
                    // lower bound below every integer: no clamping needed
                } else {
                    Int floor_lo = rat_ceil(f.lo->finite);
                    if (!f.lo_closed && Rat(floor_lo) == f.lo->finite) floor_lo += 1;
                    if (t < floor_lo) t = floor_lo + mod_pos(f.res - floor_lo, m);
                }
            }
            if (f.hi) {
                if (!f.hi->standard()) {
                    if (f.hi->omega < 0) return std::nullopt;
                } else {
                    Int cap = rat_floor(f.hi->finite);
                    if (!f.hi_closed && Rat(cap) == f.hi->finite) cap -= 1;
                    if (t > cap) t = cap - mod_pos(cap - f.res, m);
                }
            }
            FiberDesc chk = f;
            if (chk.contains(Scalar(Rat(t)))) return t;
            return std::nullopt;
        };
        Int base = mod_pos(f.res, m);            // candidate in [0, m)
        Int below = (base == 0) ? Int(-m) : Int(base - m);  // candidate in [-m, 0)
        // Prefer smaller absolute value; tie -> the lower one.
        Int first = (-below <= base) ? below : base;
        Int second = (first == base) ? below : base;
        for (const Int& cand : {first, second}) {
            auto r = clamp(cand);
            if (r) return Scalar(Rat(*r));
        }
        return std::nullopt;
    }
    // Real flavor.
    FiberDesc chk = f;
    Scalar zero;
    if (chk.contains(zero)) return zero;
    if (f.lo && f.hi) {
        if (*f.lo == *f.hi && f.lo_closed && f.hi_closed) return *f.lo;
        if (*f.lo >= *f.hi) return std::nullopt;
        return rat(1, 2) * (*f.lo + *f.hi);
    }
    if (f.lo) return f.lo_closed ? *f.lo : *f.lo + Scalar(rat(1));
    if (f.hi) return f.hi_closed ? *f.hi : *f.hi - Scalar(rat(1));
    return zero;
}

}  // namespace

Point cell_basepoint(const Cell& c) {
    Point p;
    Cell prefix(c.flavor, {});
    for (auto& l : c.levels) {
        prefix.levels.push_back(l);
        FiberDesc f = cell_fiber(prefix, p);
        auto t = pick_fiber_point(f, c.flavor);
        if (!t) throw err("EmptyCell", "cell has no point along the deterministic choice");
        p.push_back(*t);
    }
    return p;
}

Cell cell_translate(const Cell& c, const Point& v) {
    assert(int(v.size()) == c.dim_ambient());
    Cell out(c.flavor, {});
    for (size_t k = 0; k < c.levels.size(); ++k) {
        const Level& l = c.levels[k];
        if (is_graph(l)) {
            out.levels.push_back(graph_map(l).translated(v, v[k]));
        } else {
            Band b = band(l);
            if (b.lower) b.lower = b.lower->translated(v, v[k]);
            if (b.upper) b.upper = b.upper->translated(v, v[k]);
            if (c.flavor == Flavor::Integer) {
                if (!v[k].integral()) throw err("FlavorMismatch", "integer cell translated by a non-integer");
                b.res = mod_pos(b.res - v[k].residue(b.mod), b.mod);
            }
            out.levels.push_back(b);
        }
    }
    return out;
}

ConstraintSystem cell_to_constraints(const Cell& c) {
    int n = c.dim_ambient();
    ConstraintSystem s(n);
    for (int k = 0; k < n; ++k) {
        const Level& l = c.levels[k];
        auto row_of = [&](const AffineMap& m, int sign_map, Rel rel) {
            // sign_map * (m(x_prefix) - x_k) REL 0 rearranged onto coeffs.
            QVec a(n, Rat(0));
            for (int j = 0; j < m.arity(); ++j) a[j] = Rat(sign_map) * m.coeffs[j];
            a[k] = Rat(-sign_map);
            LinRow r;
            r.a = std::move(a);
            r.rel = rel;
            r.rhs = Rat(-sign_map) * m.constant;
            return r;
        };
        if (is_graph(l)) {
            s.rows.push_back(row_of(graph_map(l), 1, Rel::EQ));
        } else {
            const Band& b = band(l);
            if (b.lower) s.rows.push_back(row_of(*b.lower, 1, b.lower_closed ? Rel::LE : Rel::LT));
            if (b.upper) s.rows.push_back(row_of(*b.upper, -1, b.upper_closed ? Rel::LE : Rel::LT));
            if (c.flavor == Flavor::Integer) {
                QVec a(n, Rat(0));
                a[k] = 1;
                s.add_cong(std::move(a), b.mod, b.res);
            }
        }
    }
    return s;
}

void cell_validate(const Cell& c) {
    Cell prefix(c.flavor, {});
    for (size_t k = 0; k < c.levels.size(); ++k) {
        const Level& l = c.levels[k];
        if (is_graph(l)) {
            const AffineMap& m = graph_map(l);
            if (m.arity() != int(k)) throw err("BadArity", "graph map arity mismatch");
            if (c.flavor == Flavor::Integer && !m.pres_linear() && !m.is_constant())
                throw err("NotPresLinear", "integer-flavor graph map is not Pres-linear");
        } else {
            const Band& b = band(l);
            if (b.lower && b.lower->arity() != int(k)) throw err("BadArity", "lower bound arity");
            if (b.upper && b.upper->arity() != int(k)) throw err("BadArity", "upper bound arity");
            if (c.flavor == Flavor::Real) {
                if (b.lower_closed || b.upper_closed)
                    throw err("FlavorMismatch", "real cells use open cylinders");
                if (b.mod != 1 || b.res != 0)
                    throw err("FlavorMismatch", "real cells carry no congruence");
            } else {
                if ((b.lower && !b.lower_closed) || (b.upper && !b.upper_closed))
                    throw err("FlavorMismatch", "Presburger cylinders are closed");
                if (b.mod < 1 || b.res < 0 || b.res >= b.mod)
                    throw err("BadCongruence", "modulus must be positive, residue reduced");
                // Def 2.15(2): fibers not uniformly finite, which for
                // affine bounds means an infinite bound or a
                // non-constant difference.
                if (b.lower && b.upper) {
                    AffineMap diff = *b.upper - *b.lower;
                    if (diff.is_constant())
                        throw err("UniformlyFiniteFibers",
                                  "bounded band with constant height is not a Presburger cylinder");
                }
            }
            // lower < upper over the base (<= where both closed).
            if (b.lower && b.upper && k > 0) {
                ConstraintSystem base = cell_to_constraints(prefix);
                AffineMap diff = *b.upper - *b.lower;
                QVec coeffs = diff.coeffs;
                BoundingInterval r = functional_range(base, coeffs);
                if (!r.empty && r.lo) {
                    Scalar lo_val = *r.lo + diff.constant;
                    bool ok = (b.lower_closed && b.upper_closed) ? lo_val >= Scalar()
                                                                 : lo_val > Scalar();
                    if (!ok && r.lo_closed)
                        throw err("InvertedBounds", "upper bound does not dominate lower bound");
                }
            } else if (b.lower && b.upper && k == 0) {
                Scalar lo = b.lower->constant, hi = b.upper->constant;
                bool ok = (b.lower_closed && b.upper_closed) ? lo <= hi : lo < hi;
                if (!ok) throw err("InvertedBounds", "empty interval at level 0");
            }
        }
        prefix.levels.push_back(l);
    }
}

Cell cell_prefix(const Cell& c, int k) {
    Cell p(c.flavor, {});
    p.levels.assign(c.levels.begin(), c.levels.begin() + k);
    return p;
}

QMat cell_direction_space(const Cell& c) {
    int n = c.dim_ambient();
    std::vector<QVec> dirs;
    for (int k = 0; k < n; ++k) {
        if (is_graph(c.levels[k])) continue;
        // Direction: e_k lifted through the higher levels.
        QVec w(n, Rat(0));
        w[k] = 1;
        for (int j = k + 1; j < n; ++j) {
            if (is_graph(c.levels[j])) {
                const AffineMap& m = graph_map(c.levels[j]);
                Rat v = 0;
                for (int i = 0; i < m.arity(); ++i) v += m.coeffs[i] * w[i];
                w[j] = v;
            } else {
                w[j] = 0;
            }
        }
        dirs.push_back(std::move(w));
    }
    QMat D(n, int(dirs.size()));
    for (size_t j = 0; j < dirs.size(); ++j) D.set_col(int(j), dirs[j]);
    return D;
}

Cell point_cell(Flavor f, int n) {
    Cell c(f, {});
    for (int k = 0; k < n; ++k) c.levels.push_back(AffineMap(k));
    return c;
}

Cell point_cell_at(Flavor f, const Point& p) {
    Cell c(f, {});
    for (size_t k = 0; k < p.size(); ++k) {
        AffineMap m{int(k)};
        m.constant = p[k];
        c.levels.push_back(std::move(m));
    }
    return c;
}

Cell with_graph_level(const Cell& base, AffineMap map) {
    Cell c = base;
    c.levels.push_back(std::move(map));
    return c;
}

Cell with_band_level(const Cell& base, Band b) {
    Cell c = base;
    c.levels.push_back(std::move(b));
    return c;
}

bool cell_is_bounded(const Cell& c) {
    ConstraintSystem s = cell_to_constraints(c);
    return is_bounded(s);
}

}  // namespace zarlab
