#include "zarlab/decompose.hpp"

#include <algorithm>
#include <cassert>
#include <functional>
#include <map>

namespace zarlab {

namespace {

struct BoundInstance {
    AffineMap map;
    bool is_upper = false;
    bool strict = false;
};

// Extract the bound maps on `coord` from linear rows. EQ rows
// contribute both sides, closed.
std::vector<BoundInstance> boundary_instances(const ConstraintSystem& s, int coord) {
    std::vector<BoundInstance> out;
    for (auto& r : s.rows) {
        if (r.a[coord] == 0) continue;
        Rat c = r.a[coord];
        AffineMap m(coord);
        for (int j = 0; j < coord; ++j) m.coeffs[j] = -r.a[j] / c;
        m.constant = (1 / c) * r.rhs;
        bool strict = r.rel == Rel::LT;
        if (r.rel == Rel::EQ) {
            out.push_back({m, true, false});
            out.push_back({m, false, false});
        } else if (c > 0) {
            out.push_back({m, true, strict});
        } else {
            out.push_back({m, false, strict});
        }
    }
    // Merge equal maps on the same side, strongest strictness wins.
    std::sort(out.begin(), out.end(), [](const BoundInstance& a, const BoundInstance& b) {
        if (a.is_upper != b.is_upper) return a.is_upper < b.is_upper;
        if (a.map.coeffs != b.map.coeffs) return a.map.coeffs < b.map.coeffs;
        return a.map.constant < b.map.constant;
    });
    std::vector<BoundInstance> merged;
    for (auto& b : out) {
        if (!merged.empty() && merged.back().is_upper == b.is_upper && merged.back().map == b.map)
            merged.back().strict = merged.back().strict || b.strict;
        else
            merged.push_back(b);
    }
    return merged;
}

// Distinct maps among the instances, as a list with instance -> index.
std::vector<AffineMap> distinct_maps(const std::vector<BoundInstance>& inst,
                                     std::vector<int>& idx_of) {
    std::vector<AffineMap> maps;
    idx_of.assign(inst.size(), -1);
    for (size_t i = 0; i < inst.size(); ++i) {
        int found = -1;
        for (size_t j = 0; j < maps.size(); ++j)
            if (maps[j].coeffs == inst[i].map.coeffs && maps[j].constant == inst[i].map.constant) {
                found = int(j);
                break;
            }
        if (found < 0) {
            maps.push_back(inst[i].map);
            found = int(maps.size()) - 1;
        }
        idx_of[i] = found;
    }
    return maps;
}

LinRow sign_row(const AffineMap& diff, int sign) {
    // diff(x) < 0, = 0, > 0 as a row over the base coordinates.
    LinRow r;
    r.a = diff.coeffs;
    if (sign == 0) {
        r.rel = Rel::EQ;
        r.rhs = -diff.constant;
    } else if (sign < 0) {
        r.rel = Rel::LT;
        r.rhs = -diff.constant;
    } else {
        r.rel = Rel::LT;
        for (auto& q : r.a) q = -q;
        r.rhs = diff.constant;
    }
    return r;
}

struct SignBranch {
    ConstraintSystem sys;
    std::map<std::pair<int, int>, int> sign;  // over distinct-map pairs
};

// All feasible sign assignments of the pairwise differences, as
// extended systems. Identical maps never produce a form.
std::vector<SignBranch> split_signs(const ConstraintSystem& base, const std::vector<AffineMap>& maps) {
    std::vector<std::pair<int, int>> pairs;
    for (size_t i = 0; i < maps.size(); ++i)
        for (size_t j = i + 1; j < maps.size(); ++j) pairs.push_back({int(i), int(j)});
    std::vector<SignBranch> leaves;
    std::function<void(size_t, SignBranch)> rec = [&](size_t p, SignBranch cur) {
        if (!feasible_rational(cur.sys)) return;
        if (p == pairs.size()) {
            leaves.push_back(std::move(cur));
            return;
        }
        auto [i, j] = pairs[p];
        AffineMap diff = maps[i] - maps[j];
        for (int sign : {-1, 0, 1}) {
            SignBranch next = cur;
            next.sys.rows.push_back(sign_row(diff, sign));
            next.sign[{i, j}] = sign;
            rec(p + 1, std::move(next));
        }
    };
    SignBranch root;
    root.sys = base;
    rec(0, std::move(root));
    return leaves;
}

int sgn_of(const SignBranch& b, int i, int j) {
    if (i == j) return 0;
    if (i < j) return b.sign.at({i, j});
    return -b.sign.at({j, i});
}

// ---------------------------------------------------------------- real

std::vector<Cell> decomp_real(const ConstraintSystem& s);

void emit_real_fiber(const ConstraintSystem& s, int coord, const SignBranch& br,
                     const std::vector<BoundInstance>& inst, const std::vector<int>& idx_of,
                     const std::vector<AffineMap>& maps, std::vector<Cell>& out) {
    // Pick the max lower bound and min upper bound under the branch order.
    int lo = -1, hi = -1;
    bool lo_strict = false, hi_strict = false;
    for (size_t i = 0; i < inst.size(); ++i) {
        int m = idx_of[i];
        if (inst[i].is_upper) {
            if (hi < 0 || sgn_of(br, m, idx_of[hi]) < 0) {
                hi = int(i);
                hi_strict = inst[i].strict;
            } else if (sgn_of(br, m, idx_of[hi]) == 0) {
                hi_strict = hi_strict || inst[i].strict;
            }
        } else {
            if (lo < 0 || sgn_of(br, m, idx_of[lo]) > 0) {
                lo = int(i);
                lo_strict = inst[i].strict;
            } else if (sgn_of(br, m, idx_of[lo]) == 0) {
                lo_strict = lo_strict || inst[i].strict;
            }
        }
    }
    std::vector<Cell> bases = decomp_real(br.sys);
    for (auto& base : bases) {
        auto widen = [&](const AffineMap& m) { return m.widened(coord); };
        if (lo >= 0 && hi >= 0) {
            int c = sgn_of(br, idx_of[lo], idx_of[hi]);
            if (c > 0) continue;  // empty fiber (branch should be infeasible anyway)
            if (c == 0) {
                if (!lo_strict && !hi_strict) out.push_back(with_graph_level(base, widen(maps[idx_of[lo]])));
                continue;
            }
        }
        if (lo >= 0 && !lo_strict) out.push_back(with_graph_level(base, widen(maps[idx_of[lo]])));
        Band b;
        if (lo >= 0) b.lower = widen(maps[idx_of[lo]]);
        if (hi >= 0) b.upper = widen(maps[idx_of[hi]]);
        out.push_back(with_band_level(base, b));
        if (hi >= 0 && !hi_strict) out.push_back(with_graph_level(base, widen(maps[idx_of[hi]])));
    }
}

std::vector<Cell> decomp_real(const ConstraintSystem& s) {
    ConstraintSystem cur = s;
    normalize_rows(cur);
    if (!feasible_rational(cur)) return {};
    if (cur.n == 0) return {Cell(Flavor::Real, {})};
    int coord = cur.n - 1;
    std::vector<BoundInstance> inst = boundary_instances(cur, coord);
    std::vector<int> idx_of;
    std::vector<AffineMap> maps = distinct_maps(inst, idx_of);
    ConstraintSystem base0 = fm_eliminate(cur, coord);
    std::vector<Cell> out;
    for (auto& br : split_signs(base0, maps))
        emit_real_fiber(cur, coord, br, inst, idx_of, maps, out);
    return out;
}

// ------------------------------------------------------------- integer

std::vector<Cell> decomp_int(const ConstraintSystem& s);

Int lcm_int(const Int& a, const Int& b) {
    Int l;
    mpz_lcm(l.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return l;
}

// Smallest admissible value >= v (or > v when strict) in res + mod Z,
// expressed as the delta to add to v.
Rat ceil_delta(const Rat& v, const Int& mod, const Int& res, bool strict) {
    Int t = rat_ceil(v);
    if (strict && Rat(t) == v) t += 1;
    t += mod_pos(res - t, mod);
    Rat d = Rat(t) - v;
    return d;
}

// Largest admissible value <= v (or < v when strict), as delta to subtract.
Rat floor_delta(const Rat& v, const Int& mod, const Int& res, bool strict) {
    Int t = rat_floor(v);
    if (strict && Rat(t) == v) t -= 1;
    t -= mod_pos(t - res, mod);
    Rat d = v - Rat(t);
    return d;
}

void emit_int_fiber(int coord, const SignBranch& br, const std::vector<BoundInstance>& adj,
                    const std::vector<int>& idx_of, const std::vector<AffineMap>& maps,
                    const Int& mn, const Int& cn, std::vector<Cell>& out) {
    int lo = -1, hi = -1;
    for (size_t i = 0; i < adj.size(); ++i) {
        int m = idx_of[i];
        if (adj[i].is_upper) {
            if (hi < 0 || sgn_of(br, m, idx_of[hi]) < 0) hi = int(i);
        } else {
            if (lo < 0 || sgn_of(br, m, idx_of[lo]) > 0) lo = int(i);
        }
    }
    ConstraintSystem branch_sys = br.sys;
    bool single_point = false;
    if (lo >= 0 && hi >= 0) {
        int c = sgn_of(br, idx_of[lo], idx_of[hi]);
        if (c > 0) return;  // empty
        if (c == 0) single_point = true;
        // Nonempty integer fiber: lower' <= upper'.
        AffineMap diff = maps[idx_of[lo]] - maps[idx_of[hi]];
        LinRow row;
        row.a = diff.coeffs;
        row.rel = Rel::LE;
        row.rhs = -diff.constant;
        branch_sys.rows.push_back(std::move(row));
        // Height < mn also pins the fiber to a single point.
        AffineMap h = maps[idx_of[hi]] - maps[idx_of[lo]];
        if (!single_point && h.is_constant() && h.constant.standard() && h.constant.finite < Rat(mn))
            single_point = true;
    }
    std::vector<Cell> bases = decomp_int(branch_sys);
    for (auto& base : bases) {
        auto widen = [&](const AffineMap& m) { return m.widened(coord); };
        if (single_point) {
            out.push_back(with_graph_level(base, widen(maps[idx_of[lo]])));
            continue;
        }
        Band b;
        b.lower_closed = b.upper_closed = true;
        if (lo >= 0) b.lower = widen(maps[idx_of[lo]]);
        if (hi >= 0) b.upper = widen(maps[idx_of[hi]]);
        if (!b.lower) b.lower_closed = false;
        if (!b.upper) b.upper_closed = false;
        b.mod = mn;
        b.res = mod_pos(cn, mn);
        out.push_back(with_band_level(base, b));
    }
}

std::vector<Cell> decomp_int(const ConstraintSystem& s) {
    ConstraintSystem cur = s;
    normalize_rows(cur);
    if (!feasible_rational(cur)) return {};
    if (cur.n == 0) {
        for (auto& c : cur.congs)
            if (mod_pos(Int(0), c.mod) != c.res) return {};
        return {Cell(Flavor::Integer, {})};
    }
    int coord = cur.n - 1;

    // Congruence rows touching the eliminated coordinate.
    std::vector<CongRow> cong_n;
    ConstraintSystem passthrough = cur;
    passthrough.congs.clear();
    for (auto& c : cur.congs) {
        if (c.a[coord] != 0)
            cong_n.push_back(c);
        else
            passthrough.congs.push_back(c);
    }

    Int mn = 1;
    for (auto& c : cong_n) {
        Int an = c.a[coord].get_num();
        Int g;
        mpz_gcd(g.get_mpz_t(), c.mod.get_mpz_t(), an.get_mpz_t());
        mn = lcm_int(mn, c.mod / g);
    }

    std::vector<BoundInstance> inst = boundary_instances(passthrough, coord);

    // Residue modulus for base coordinates: on a fixed class mod dres,
    // every bound map has a fixed fractional part and residue mod mn,
    // and the base parts of mixed congruence rows are determined.
    Int dens = 1;
    for (auto& bi : inst)
        for (auto& q : bi.map.coeffs) dens = lcm_int(dens, q.get_den());
    Int dres = mn * dens;
    for (auto& c : cong_n)
        for (int j = 0; j < coord; ++j) {
            if (c.a[j] == 0) continue;
            Int aj = c.a[j].get_num();
            Int g;
            mpz_gcd(g.get_mpz_t(), c.mod.get_mpz_t(), aj.get_mpz_t());
            dres = lcm_int(dres, c.mod / g);
        }

    ConstraintSystem base0 = fm_eliminate(passthrough, coord);

    std::vector<Cell> out;
    // Enumerate base residue vectors and the coordinate's class.
    std::vector<Int> rho(coord, Int(0));
    std::function<void(int)> enum_rho = [&](int j) {
        if (j == coord) {
            for (Int cn = 0; cn < mn; ++cn) {
                bool ok = true;
                for (auto& c : cong_n) {
                    Rat v = c.a[coord] * Rat(cn);
                    for (int t = 0; t < coord; ++t) v += c.a[t] * Rat(rho[t]);
                    assert(is_integral(v));
                    if (mod_pos(v.get_num(), c.mod) != c.res) {
                        ok = false;
                        break;
                    }
                }
                if (!ok) continue;
                // Adjust bounds to congruence-aligned Pres-linear maps.
                Point rep;
                for (int t = 0; t < coord; ++t) rep.push_back(Scalar(Rat(rho[t])));
                std::vector<BoundInstance> adj;
                for (auto& bi : inst) {
                    Scalar v = bi.map.eval(rep);
                    if (!v.standard())
                        throw err("OmegaScalar", "decompose needs standard constants");
                    BoundInstance a = bi;
                    if (bi.is_upper) {
                        Rat d = floor_delta(v.finite, mn, mod_pos(cn, mn), bi.strict);
                        a.map = bi.map.plus_const(Scalar(-d));
                    } else {
                        Rat d = ceil_delta(v.finite, mn, mod_pos(cn, mn), bi.strict);
                        a.map = bi.map.plus_const(Scalar(d));
                    }
                    a.strict = false;
                    std::vector<VarCong> dom(coord);
                    for (int t = 0; t < coord; ++t) dom[t] = {dres, mod_pos(rho[t], dres)};
                    a.map.cong_domain = dom;
                    adj.push_back(std::move(a));
                }
                std::vector<int> idx_of;
                std::vector<AffineMap> maps = distinct_maps(adj, idx_of);
                ConstraintSystem base_rho = base0;
                for (int t = 0; t < coord; ++t) {
                    QVec a(coord, Rat(0));
                    a[t] = 1;
                    base_rho.add_cong(std::move(a), dres, mod_pos(rho[t], dres));
                }
                for (auto& br : split_signs(base_rho, maps))
                    emit_int_fiber(coord, br, adj, idx_of, maps, mn, cn, out);
            }
            return;
        }
        for (Int r = 0; r < dres; ++r) {
            rho[j] = r;
            enum_rho(j + 1);
        }
    };
    enum_rho(0);
    return out;
}

}  // namespace

std::vector<Cell> decompose_constraints(const ConstraintSystem& s, Flavor flavor) {
    if (flavor == Flavor::Real) {
        if (!s.congs.empty())
            throw err("FlavorMismatch", "real decomposition forbids congruence rows");
        for (auto& r : s.rows)
            if (!r.rhs.standard()) throw err("OmegaScalar", "decompose needs standard constants");
        return decomp_real(s);
    }
    for (auto& r : s.rows)
        if (!r.rhs.standard()) throw err("OmegaScalar", "decompose needs standard constants");
    return decomp_int(s);
}

}  // namespace zarlab
