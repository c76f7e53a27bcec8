#include "zarlab/presburger.hpp"

#include <algorithm>
#include <cassert>
#include <functional>

#include "zarlab/product_cell.hpp"

namespace zarlab {

namespace {

Scalar zero_s;

// Smallest t >= v with t == res (mod mod).
Int ceil_admissible(const Rat& v, const Int& mod, const Int& res) {
    Int t = rat_ceil(v);
    t += mod_pos(res - t, mod);
    return t;
}

// Largest t <= v with t == res (mod mod).
Int floor_admissible(const Rat& v, const Int& mod, const Int& res) {
    Int t = rat_floor(v);
    t -= mod_pos(t - res, mod);
    return t;
}

}  // namespace

Scalar HeightInterval::length() const {
    assert(finite());
    return *hi - *lo;
}

Cell zcover(const Cell& c) {
    if (c.flavor != Flavor::Integer) throw err("FlavorMismatch", "Z-covers are Presburger-side");
    int n = c.dim_ambient();
    Point zero(n, Scalar());
    if (!cell_member(c, zero)) throw err("OriginOutside", "Z-cover needs 0 in the cell");
    Cell out(Flavor::Integer, {});
    for (auto& l : c.levels) {
        if (is_graph(l)) {
            // 0 in C pins graph constants to 0, so graphs are standard.
            out.levels.push_back(l);
            continue;
        }
        Band b = band(l);
        // A bound survives only when its constant is standard; a lower
        // bound above Z or an upper bound below Z would empty the cell
        // (0 is a member), so the drop direction is forced.
        if (b.lower && !b.lower->constant.standard()) {
            assert(b.lower->constant.omega < 0);
            b.lower = std::nullopt;
            b.lower_closed = false;
        }
        if (b.upper && !b.upper->constant.standard()) {
            assert(b.upper->constant.omega > 0);
            b.upper = std::nullopt;
            b.upper_closed = false;
        }
        out.levels.push_back(b);
    }
    return out;
}

HeightInterval cylinder_height(const Cell& c, const Point& base, const Int& radius) {
    int n = c.dim_ambient();
    if (n == 0 || is_graph(c.levels[n - 1]))
        throw err("GraphHasNoHeight", "top level must be a band");
    Cell pc = cell_project(c);
    if (!cell_member(pc, base)) throw err("BaseOutside", "base point not in the projection");
    const Band& b = band(c.levels[n - 1]);
    HeightInterval out;
    if (c.flavor == Flavor::Integer) {
        // Enumerate the base points of the box window.
        std::vector<Point> ys;
        std::function<void(Point&)> rec = [&](Point& prefix) {
            size_t k = prefix.size();
            if (int(k) == n - 1) {
                if (cell_member(pc, prefix)) ys.push_back(prefix);
                return;
            }
            Int lo = rat_ceil(base[k].finite - Rat(radius));
            Int hi = rat_floor(base[k].finite + Rat(radius));
            for (Int t = lo; t <= hi; ++t) {
                prefix.push_back(Scalar(Rat(t)));
                rec(prefix);
                prefix.pop_back();
            }
        };
        Point p;
        if (!point_standard(base)) throw err("OmegaScalar", "cylinder heights need standard bases");
        rec(p);
        for (auto& y : ys) {
            if (b.lower) {
                Scalar v = b.lower->eval_prefix(y);
                if (!out.lo || v > *out.lo) out.lo = v;
            }
            if (b.upper) {
                Scalar v = b.upper->eval_prefix(y);
                if (!out.hi || v < *out.hi) out.hi = v;
            }
        }
    } else {
        ConstraintSystem sys = cell_to_constraints(pc);
        for (int i = 0; i < n - 1; ++i) {
            QVec a(n - 1, Rat(0));
            a[i] = 1;
            sys.add(a, Rel::LE, base[i] + Scalar(Rat(radius)));
            for (auto& q : a) q = -q;
            a[i] = -1;
            sys.add(a, Rel::LE, Scalar(Rat(radius)) - base[i]);
        }
        if (b.lower) {
            BoundingInterval r = functional_range(sys, b.lower->coeffs);
            if (r.hi) out.lo = *r.hi + b.lower->constant;
        }
        if (b.upper) {
            BoundingInterval r = functional_range(sys, b.upper->coeffs);
            if (r.lo) out.hi = *r.lo + b.upper->constant;
        }
    }
    if (out.lo && out.hi && *out.lo > *out.hi) out.empty = true;
    return out;
}

namespace {

// Scan order: ascending max-norm distance from the center, then lex.
std::vector<Point> box_points_around(const Point& center, const Int& radius, int dim) {
    std::vector<Point> pts;
    std::function<void(Point&)> rec = [&](Point& p) {
        if (int(p.size()) == dim) {
            pts.push_back(p);
            return;
        }
        size_t k = p.size();
        Int lo = rat_ceil(center[k].finite - Rat(radius));
        Int hi = rat_floor(center[k].finite + Rat(radius));
        for (Int t = lo; t <= hi; ++t) {
            p.push_back(Scalar(Rat(t)));
            rec(p);
            p.pop_back();
        }
    };
    Point p;
    rec(p);
    std::stable_sort(pts.begin(), pts.end(), [&](const Point& a, const Point& b) {
        Scalar da = max_norm(a - center), db = max_norm(b - center);
        if (da != db) return da < db;
        return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end(),
                                            [](const Scalar& x, const Scalar& y) { return x < y; });
    });
    return pts;
}

Point internal_point_impl(const Cell& c, const Int& n_radius, long cap) {
    int n = c.dim_ambient();
    if (n == 0) return {};
    const Level& top = c.levels[n - 1];
    Cell base = cell_project(c);
    if (is_graph(top)) {
        Point x1 = internal_point_impl(base, n_radius, cap);
        x1.push_back(graph_map(top).eval(x1));
        return x1;
    }
    const Band& b = band(top);
    Int r = b.mod;
    if (b.lower && b.upper) {
        Int margin = n_radius * 2 + r;
        Int k_rad = n_radius + r;
        Int limit = Int(cap) * (n_radius + 1);
        while (k_rad <= limit) {
            Int l_rad = std::max(n_radius, k_rad);
            Point x0 = internal_point_impl(base, 2 * l_rad, cap);
            for (auto& y : box_points_around(x0, k_rad, n - 1)) {
                if (!cell_member(base, y)) continue;
                HeightInterval s = cylinder_height(c, y, n_radius);
                if (s.empty) continue;
                if (s.lo && s.hi && !(s.length() > Scalar(Rat(margin)))) continue;
                // Admissible t with B_N(t) inside the window.
                Int t;
                if (s.lo && s.hi) {
                    Rat mid = (s.lo->finite + s.hi->finite) / 2;
                    t = ceil_admissible(mid, r, b.res);
                    if (Rat(t) + Rat(n_radius) > s.hi->finite) t = floor_admissible(mid, r, b.res);
                } else if (s.lo) {
                    t = ceil_admissible(s.lo->finite + Rat(n_radius), r, b.res);
                } else if (s.hi) {
                    t = floor_admissible(s.hi->finite - Rat(n_radius), r, b.res);
                } else {
                    t = mod_pos(b.res, r);
                }
                if (s.lo && Rat(t) - Rat(n_radius) < s.lo->finite) continue;
                if (s.hi && Rat(t) + Rat(n_radius) > s.hi->finite) continue;
                Point out = y;
                out.push_back(Scalar(Rat(t)));
                return out;
            }
            k_rad *= 2;
        }
        throw err("SearchExhausted", "internal point search hit the radius cap");
    }
    // Half-infinite or full cylinder: lift an N-internal base point.
    Point x1 = internal_point_impl(base, n_radius, cap);
    HeightInterval s = cylinder_height(c, x1, n_radius);
    Int t;
    if (s.lo && !s.hi)
        t = ceil_admissible(s.lo->finite + Rat(n_radius), r, b.res);
    else if (!s.lo && s.hi)
        t = floor_admissible(s.hi->finite - Rat(n_radius), r, b.res);
    else if (!s.lo && !s.hi)
        t = mod_pos(b.res, r);
    else
        throw err("Internal", "finite window in the half-infinite branch");
    Point out = x1;
    out.push_back(Scalar(Rat(t)));
    return out;
}

}  // namespace

Point internal_point(const Cell& c, const Int& n_radius, long cap) {
    if (c.flavor != Flavor::Integer)
        throw err("FlavorMismatch", "internal points are computed for Presburger cells");
    int n = c.dim_ambient();
    Point zero(n, Scalar());
    if (!cell_member(c, zero)) throw err("OriginOutside", "internal_point needs 0 in the cell");
    for (auto& l : c.levels) {
        auto std_map = [](const std::optional<AffineMap>& m) {
            return !m || m->constant.standard();
        };
        if (is_graph(l)) {
            if (!graph_map(l).constant.standard()) throw err("OmegaScalar", "omega cells rejected here");
        } else if (!std_map(band(l).lower) || !std_map(band(l).upper)) {
            throw err("OmegaScalar", "omega cells rejected here");
        }
    }
    if (!purely_unbounded_check(c).purely_unbounded)
        throw err("NotPurelyUnbounded", "internal points need a purely unbounded cell");
    return internal_point_impl(c, n_radius, cap);
}

Point transfer_grid(const Cell& c, const std::vector<Point>& a_set, long cap) {
    if (a_set.empty()) throw err("EmptyInput", "nothing to transfer");
    int n = c.dim_ambient();
    // Z-volume: all pairwise differences integral.
    for (auto& p : a_set) {
        Point d = p - a_set[0];
        if (!point_integral(d)) throw err("NotZVolume", "set is not within one integer coset");
    }
    Subgroup sh = shell_of_cell(c);
    for (auto& p : a_set)
        if (!subgroup_member(sh, qvec_of(p))) throw err("NotInShell", "set must lie in Sh(C)");
    // Radius: the set fits in B_N around its lexicographic minimum.
    Point x = *std::min_element(a_set.begin(), a_set.end(), [](const Point& a, const Point& b) {
        return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end(),
                                            [](const Scalar& u, const Scalar& v) { return u < v; });
    });
    Int nrad = 0;
    for (auto& p : a_set) {
        Scalar d = max_norm(p - x);
        Int di = rat_ceil(d.finite);
        if (di > nrad) nrad = di;
    }
    Point y = internal_point(c, nrad, cap);
    Point a = y - x;
    for (auto& p : a_set)
        if (!cell_member(c, p + a)) throw err("Internal", "transfer verification failed");
    return a;
}

std::vector<Point> replica_in_lattice(const Cell& c, const BlockedSet& a, long cap) {
    int n = c.dim_ambient();
    bool standard = true;
    for (auto& p : a.points)
        if (!point_standard(p) || !point_integral(p)) standard = false;
    LatticeBasis latt = shell_standard_lattice(c);
    if (standard) {
        for (auto& p : a.points)
            if (!lattice_member(latt, qvec_of(p)))
                throw err("NotInShell", "standard set must lie in Sh(C) cap Z^n");
        return a.points;
    }
    size_t m = a.points.size();
    // Per-block labels of A.
    BlockedSet labels = a;
    int r = int(a.block_dims.size());
    std::vector<std::vector<int>> lab(m, std::vector<int>(r));
    for (int blk = 0; blk < r; ++blk) {
        std::vector<Point> seen;
        for (size_t i = 0; i < m; ++i) {
            Point v = a.block_of(i, blk);
            int id = -1;
            for (size_t j = 0; j < seen.size(); ++j)
                if (seen[j] == v) id = int(j);
            if (id < 0) {
                seen.push_back(v);
                id = int(seen.size()) - 1;
            }
            lab[i][blk] = id;
        }
    }
    (void)labels;
    Point origin(n, Scalar());
    for (Int radius = 2; radius <= Int(cap); radius *= 2) {
        std::vector<Point> pool = lattice_points_in_box(latt, origin, radius);
        std::vector<Point> chosen(m);
        std::vector<bool> used(pool.size(), false);
        // Per-block maps label -> chosen block value.
        std::vector<std::vector<std::optional<Point>>> val(r);
        for (int blk = 0; blk < r; ++blk) val[blk].assign(m, std::nullopt);
        std::function<bool(size_t)> rec = [&](size_t i) -> bool {
            if (i == m) return true;
            for (size_t pi = 0; pi < pool.size(); ++pi) {
                if (used[pi]) continue;
                BlockedSet tmp{a.block_dims, {pool[pi]}};
                bool ok = true;
                std::vector<int> fresh;
                for (int blk = 0; blk < r && ok; ++blk) {
                    Point bv = tmp.block_of(0, blk);
                    int lbl = lab[i][blk];
                    if (val[blk][lbl]) {
                        if (*val[blk][lbl] != bv) ok = false;
                    } else {
                        for (size_t l2 = 0; l2 < m; ++l2)
                            if (val[blk][l2] && *val[blk][l2] == bv) ok = false;
                        if (ok) {
                            val[blk][lbl] = bv;
                            fresh.push_back(blk);
                        }
                    }
                }
                if (ok) {
                    used[pi] = true;
                    chosen[i] = pool[pi];
                    if (rec(i + 1)) return true;
                    used[pi] = false;
                }
                for (int blk : fresh) val[blk][lab[i][blk]] = std::nullopt;
            }
            return false;
        };
        if (rec(0)) return chosen;
    }
    throw err("SearchExhausted", "no standard replica found within the box cap");
}

std::pair<std::vector<Point>, Int> distant_dilate(const std::vector<Point>& a, const Int& n_dist) {
    std::optional<Int> gap;
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = i + 1; j < a.size(); ++j)
            for (size_t k = 0; k < a[i].size(); ++k) {
                Scalar d = (a[i][k] - a[j][k]).abs();
                if (d == zero_s) continue;
                if (!d.integral() || !d.standard()) throw err("NotZVolume", "dilation needs integer points");
                Int di = d.finite.get_num();
                if (!gap || di < *gap) gap = di;
            }
    Int k = 1;
    if (gap) {
        Int q;
        mpz_fdiv_q(q.get_mpz_t(), n_dist.get_mpz_t(), gap->get_mpz_t());
        k = q + 1;
        if (k < 1) k = 1;
    }
    std::vector<Point> out;
    out.reserve(a.size());
    for (auto& p : a) {
        Point q;
        for (auto& c : p) q.push_back(Rat(k) * c);
        out.push_back(std::move(q));
    }
    return {out, k};
}

Grid distant_replica(const Cell& c, const Grid& b, const Int& n_dist, long cap) {
    // Exact intersection of the grid with the cell.
    BlockedSet d;
    d.block_dims = b.block_dims;
    for_each_tuple(b, [&](const Point& t) {
        if (point_integral(t) && point_standard(t) && cell_member(c, t)) d.points.push_back(t);
    });
    if (d.points.empty()) {
        Grid empty;
        empty.block_dims = b.block_dims;
        empty.blocks.resize(b.block_dims.size());
        return empty;
    }
    Point base = cell_basepoint(c);
    Cell c0 = cell_translate(c, base);
    BlockedSet d0 = d;
    for (auto& p : d0.points) p = p - base;
    std::vector<Point> rep = replica_in_lattice(c0, d0, cap);
    auto [dil, kfac] = distant_dilate(rep, n_dist);
    Point shift = transfer_grid(c0, dil, cap);
    BlockedSet moved;
    moved.block_dims = b.block_dims;
    for (auto& p : dil) moved.points.push_back(p + shift + base);
    for (auto& p : moved.points)
        assert(cell_member(c, p));
    return gen_grid(moved);
}

Grid shell_grid(const Subgroup& v, int k) {
    ClassifyResult cls = projection_classify(v);
    if (cls.kind != VerdictKind::GridsForAllK)
        throw err("NotGridFull", "the subgroup has an injective projection");
    Grid g;
    g.block_dims = v.block_dims;
    g.blocks.resize(v.block_dims.size());
    for (size_t l = 0; l < cls.generators.size(); ++l) {
        for (int m = 0; m < k; ++m) {
            Point p;
            for (auto& q : cls.generators[l]) p.push_back(Scalar(Rat(m) * q));
            g.blocks[l].push_back(std::move(p));
        }
    }
    return g;
}

Grid kgrid_in_cell(const Cell& c, int k, const std::vector<int>& block_dims, long cap) {
    Subgroup sh = shell_of_cell(c);
    sh.block_dims = block_dims;
    ClassifyResult cls = projection_classify(sh);
    if (cls.kind != VerdictKind::GridsForAllK)
        throw err("NotGridFull", "shell has an injective projection");
    // Integer block generators (shells of Presburger cells are lattices,
    // but scale defensively).
    std::vector<QVec> gens = cls.generators;
    for (auto& g : gens) {
        Int den = 1;
        for (auto& q : g) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), q.get_den_mpz_t());
        for (auto& q : g) q *= Rat(den);
    }
    // Full tuple set of the grid of multiples; it is Z-volume.
    Grid raw;
    raw.block_dims = block_dims;
    raw.blocks.resize(block_dims.size());
    for (size_t l = 0; l < gens.size(); ++l)
        for (int m = 0; m < k; ++m) {
            Point p;
            for (auto& q : gens[l]) p.push_back(Scalar(Rat(m) * q));
            raw.blocks[l].push_back(std::move(p));
        }
    std::vector<Point> tuples;
    for_each_tuple(raw, [&](const Point& t) { tuples.push_back(t); });
    Point shift = transfer_grid(c, tuples, cap);
    Grid out;
    out.block_dims = block_dims;
    out.blocks.resize(block_dims.size());
    int off = 0;
    for (size_t l = 0; l < gens.size(); ++l) {
        int dl = block_dims[l];
        Point block_shift(shift.begin() + off, shift.begin() + off + dl);
        for (auto& p : raw.blocks[l]) out.blocks[l].push_back(p + block_shift);
        off += dl;
    }
    return out;
}

namespace {

// Does the prefix (size k+1) satisfy level k of the cell?
bool level_ok(const Cell& c, size_t k, const Point& p) {
    const Level& l = c.levels[k];
    if (is_graph(l)) return graph_map(l).eval_prefix(p) == p[k];
    const Band& b = band(l);
    if (b.lower) {
        Scalar lo = b.lower->eval_prefix(p);
        if (b.lower_closed ? p[k] < lo : p[k] <= lo) return false;
    }
    if (b.upper) {
        Scalar hi = b.upper->eval_prefix(p);
        if (b.upper_closed ? p[k] > hi : p[k] >= hi) return false;
    }
    if (c.flavor == Flavor::Integer) {
        if (!p[k].integral()) return false;
        if (p[k].residue(b.mod) != b.res) return false;
    }
    return true;
}

}  // namespace

std::vector<Point> enumerate_cell_box(const Cell& c, const Int& lo, const Int& hi) {
    if (c.flavor != Flavor::Integer) throw err("FlavorMismatch", "box enumeration is integer-side");
    std::vector<Point> out;
    std::function<void(Point&)> rec = [&](Point& p) {
        size_t k = p.size();
        if (int(k) == c.dim_ambient()) {
            out.push_back(p);
            return;
        }
        for (Int t = lo; t <= hi; ++t) {
            p.push_back(Scalar(Rat(t)));
            if (level_ok(c, k, p)) rec(p);
            p.pop_back();
        }
    };
    Point p;
    rec(p);
    return out;
}

std::vector<Point> lattice_points_in_box(const LatticeBasis& l, const Point& center,
                                         const Int& radius) {
    std::vector<Point> out;
    int n = l.ambient;
    std::function<void(Point&)> rec = [&](Point& p) {
        size_t k = p.size();
        if (int(k) == n) {
            if (lattice_member(l, qvec_of(p))) out.push_back(p);
            return;
        }
        Int lo = rat_ceil(center[k].finite - Rat(radius));
        Int hi = rat_floor(center[k].finite + Rat(radius));
        for (Int t = lo; t <= hi; ++t) {
            p.push_back(Scalar(Rat(t)));
            rec(p);
            p.pop_back();
        }
    };
    Point p;
    rec(p);
    std::stable_sort(out.begin(), out.end(), [&](const Point& a, const Point& b) {
        Scalar da = max_norm(a - center), db = max_norm(b - center);
        if (da != db) return da < db;
        return std::lexicographical_compare(
            a.begin(), a.end(), b.begin(), b.end(),
            [](const Scalar& x, const Scalar& y) { return x < y; });
    });
    return out;
}

}  // namespace zarlab
