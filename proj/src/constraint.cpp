#include "zarlab/constraint.hpp"

#include <algorithm>
#include <cassert>
#include <functional>
#include <map>

namespace zarlab {

void ConstraintSystem::add_cong(QVec a, Int mod, Int res) {
    assert(mod > 0);
    for (auto& q : a) assert(is_integral(q));
    congs.push_back({std::move(a), mod, mod_pos(res, mod)});
}

bool ConstraintSystem::trivially_infeasible() const {
    for (auto& r : rows) {
        bool constant = true;
        for (auto& q : r.a)
            if (q != 0) {
                constant = false;
                break;
            }
        if (!constant) continue;
        Scalar zero;
        bool ok = r.rel == Rel::LT ? (zero < r.rhs) : r.rel == Rel::LE ? (zero <= r.rhs) : (zero == r.rhs);
        if (!ok) return true;
    }
    return false;
}

namespace {

bool row_is_constant(const LinRow& r) {
    for (auto& q : r.a)
        if (q != 0) return false;
    return true;
}

bool constant_row_holds(const LinRow& r) {
    Scalar zero;
    switch (r.rel) {
        case Rel::LT: return zero < r.rhs;
        case Rel::LE: return zero <= r.rhs;
        case Rel::EQ: return zero == r.rhs;
    }
    return false;
}

// Positive scale making the coefficients primitive integers.
Rat primitive_scale(const QVec& a) {
    Int L = 1, G = 0;
    for (auto& q : a) mpz_lcm(L.get_mpz_t(), L.get_mpz_t(), q.get_den_mpz_t());
    for (auto& q : a) {
        Rat s = q * Rat(L);
        mpz_gcd(G.get_mpz_t(), G.get_mpz_t(), s.get_num_mpz_t());
    }
    if (G == 0) return Rat(1);
    Rat f = Rat(L) / Rat(G);
    f.canonicalize();
    return f;
}

}  // namespace

void normalize_rows(ConstraintSystem& s) {
    std::vector<LinRow> kept;
    bool false_seen = false;
    for (auto& r : s.rows) {
        if (row_is_constant(r)) {
            if (!constant_row_holds(r)) false_seen = true;
            continue;
        }
        LinRow n = r;
        Rat f = primitive_scale(n.a);
        int lead = -1;
        for (size_t j = 0; j < n.a.size(); ++j)
            if (n.a[j] != 0) {
                lead = int(j);
                break;
            }
        bool flip = n.a[lead] * f < 0;
        if (flip && n.rel == Rel::EQ) f = -f;
        for (auto& q : n.a) {
            q *= f;
            q.canonicalize();
        }
        n.rhs = f * n.rhs;
        kept.push_back(std::move(n));
    }
    // Group by (coeffs, direction); keep the strongest bound.
    struct Key {
        QVec a;
        bool operator<(const Key& o) const { return a < o.a; }
    };
    std::map<Key, LinRow> upper;  // a.x < / <= rhs with this exact a
    std::vector<LinRow> eqs;
    for (auto& r : kept) {
        if (r.rel == Rel::EQ) {
            eqs.push_back(r);
            continue;
        }
        Key k{r.a};
        auto it = upper.find(k);
        if (it == upper.end()) {
            upper.emplace(k, r);
        } else {
            LinRow& u = it->second;
            if (r.rhs < u.rhs || (r.rhs == u.rhs && r.rel == Rel::LT)) u = r;
        }
    }
    std::sort(eqs.begin(), eqs.end(), [](const LinRow& x, const LinRow& y) {
        if (x.a != y.a) return x.a < y.a;
        return x.rhs < y.rhs;
    });
    eqs.erase(std::unique(eqs.begin(), eqs.end(),
                          [](const LinRow& x, const LinRow& y) {
                              return x.a == y.a && x.rhs == y.rhs;
                          }),
              eqs.end());
    s.rows.clear();
    if (false_seen) {
        LinRow marker;
        marker.a.assign(s.n, Rat(0));
        marker.rel = Rel::LT;
        marker.rhs = Scalar(rat(-1));
        s.rows.push_back(marker);
    }
    for (auto& [k, r] : upper) s.rows.push_back(r);
    for (auto& r : eqs) s.rows.push_back(r);
}

ConstraintSystem fm_eliminate(const ConstraintSystem& s, int coord) {
    assert(coord >= 0 && coord < s.n);
    for (auto& c : s.congs)
        if (c.a[coord] != 0)
            throw err("CongruenceOnEliminatedCoord",
                      "congruence constrains the eliminated coordinate");

    auto drop_coord = [&](const QVec& a) {
        QVec b;
        b.reserve(a.size() - 1);
        for (size_t j = 0; j < a.size(); ++j)
            if (int(j) != coord) b.push_back(a[j]);
        return b;
    };

    ConstraintSystem out(s.n - 1);
    for (auto& c : s.congs) out.congs.push_back({drop_coord(c.a), c.mod, c.res});

    // Substitute through an equality when available.
    int subst = -1;
    for (size_t i = 0; i < s.rows.size(); ++i)
        if (s.rows[i].rel == Rel::EQ && s.rows[i].a[coord] != 0) {
            subst = int(i);
            break;
        }
    if (subst >= 0) {
        const LinRow& e = s.rows[subst];
        for (size_t i = 0; i < s.rows.size(); ++i) {
            if (int(i) == subst) continue;
            const LinRow& r = s.rows[i];
            Rat f = r.a[coord] / e.a[coord];
            LinRow nr;
            nr.a.resize(s.n);
            for (int j = 0; j < s.n; ++j) nr.a[j] = r.a[j] - f * e.a[j];
            nr.rel = r.rel;
            nr.rhs = r.rhs - f * e.rhs;
            nr.a = drop_coord(nr.a);
            out.rows.push_back(std::move(nr));
        }
        normalize_rows(out);
        return out;
    }

    std::vector<LinRow> uppers, lowers;
    for (auto& r : s.rows) {
        if (r.a[coord] == 0) {
            out.rows.push_back({drop_coord(r.a), r.rel, r.rhs});
            continue;
        }
        // Scale to coefficient +-1 on coord.
        Rat f = 1 / (r.a[coord] > 0 ? r.a[coord] : -r.a[coord]);
        LinRow n;
        n.a.resize(s.n);
        for (int j = 0; j < s.n; ++j) n.a[j] = f * r.a[j];
        n.rel = r.rel;
        n.rhs = f * r.rhs;
        (r.a[coord] > 0 ? uppers : lowers).push_back(std::move(n));
    }
    for (auto& lo : lowers)
        for (auto& up : uppers) {
            // lo: -x + l.x' <= bl  =>  x >= l.x' - bl
            // up:  x + u.x' <= bu  =>  x <= bu - u.x'
            LinRow n;
            n.a.resize(s.n);
            for (int j = 0; j < s.n; ++j) n.a[j] = lo.a[j] + up.a[j];
            n.a[coord] = 0;
            n.rel = (lo.rel == Rel::LT || up.rel == Rel::LT) ? Rel::LT : Rel::LE;
            n.rhs = lo.rhs + up.rhs;
            n.a = drop_coord(n.a);
            out.rows.push_back(std::move(n));
        }
    normalize_rows(out);
    return out;
}

bool feasible_rational(const ConstraintSystem& s) {
    ConstraintSystem cur = s;
    cur.congs.clear();
    while (true) {
        normalize_rows(cur);
        if (cur.trivially_infeasible()) return false;
        if (cur.n == 0) return true;
        cur = fm_eliminate(cur, cur.n - 1);
    }
}

BoundingInterval bounding_interval(const ConstraintSystem& s, int i) {
    ConstraintSystem cur = s;
    cur.congs.clear();
    // Eliminate all other coordinates, highest index first; indices at
    // or below j never shift while doing so.
    for (int j = s.n - 1; j >= 0; --j)
        if (j != i) cur = fm_eliminate(cur, j);
    BoundingInterval out;
    if (cur.trivially_infeasible()) {
        out.empty = true;
        return out;
    }
    for (auto& r : cur.rows) {
        if (r.a[0] == 0) continue;
        Rat f = 1 / r.a[0];
        Scalar bound = f * r.rhs;
        if (r.rel == Rel::EQ) {
            if ((out.lo && *out.lo > bound) || (out.hi && *out.hi < bound)) {
                out.empty = true;
                return out;
            }
            out.lo = out.hi = bound;
            out.lo_closed = out.hi_closed = true;
            continue;
        }
        bool is_upper = r.a[0] > 0;
        bool closed = r.rel == Rel::LE;
        if (is_upper) {
            if (!out.hi || bound < *out.hi || (bound == *out.hi && !closed)) {
                out.hi = bound;
                out.hi_closed = closed;
            }
        } else {
            if (!out.lo || bound > *out.lo || (bound == *out.lo && !closed)) {
                out.lo = bound;
                out.lo_closed = closed;
            }
        }
    }
    if (out.lo && out.hi &&
        (*out.lo > *out.hi || (*out.lo == *out.hi && !(out.lo_closed && out.hi_closed))))
        out.empty = true;
    return out;
}

BoundingInterval functional_range(const ConstraintSystem& s, const QVec& coeffs) {
    ConstraintSystem ext(s.n + 1);
    for (auto& r : s.rows) {
        QVec a = r.a;
        a.push_back(Rat(0));
        ext.rows.push_back({std::move(a), r.rel, r.rhs});
    }
    QVec eq = coeffs;
    eq.push_back(Rat(-1));
    ext.rows.push_back({std::move(eq), Rel::EQ, Scalar()});
    return bounding_interval(ext, s.n);
}

bool is_bounded(const ConstraintSystem& s) {
    for (int i = 0; i < s.n; ++i) {
        BoundingInterval b = bounding_interval(s, i);
        if (b.empty) return true;  // empty set is bounded
        if (!b.lo || !b.hi) return false;
    }
    return true;
}

std::vector<QVec> vertex_enumerate(const ConstraintSystem& s) {
    if (!s.congs.empty()) throw err("CongruenceRows", "vertex enumeration needs a pure system");
    for (auto& r : s.rows)
        if (!r.rhs.standard()) throw err("OmegaScalar", "vertex enumeration needs standard scalars");
    if (!is_bounded(s)) throw err("Unbounded", "recession direction exists");

    std::vector<LinRow> closed;
    for (auto& r : s.rows) {
        LinRow c = r;
        if (c.rel == Rel::LT) c.rel = Rel::LE;
        closed.push_back(c);
    }
    int n = s.n;
    std::vector<QVec> verts;
    if (n == 0) return verts;
    std::vector<int> idx(closed.size());
    for (size_t i = 0; i < idx.size(); ++i) idx[i] = int(i);
    std::vector<int> comb(n);
    auto satisfies_closure = [&](const QVec& x) {
        for (auto& r : closed) {
            Rat v = dot(r.a, x);
            if (r.rel == Rel::EQ ? v != r.rhs.finite : v > r.rhs.finite) return false;
        }
        return true;
    };
    // All n-subsets of rows with an invertible coefficient matrix.
    std::vector<int> stack;
    std::function<void(int)> rec = [&](int start) {
        if (int(stack.size()) == n) {
            QMat A(n, n);
            QVec b(n);
            for (int i = 0; i < n; ++i) {
                for (int j = 0; j < n; ++j) A(i, j) = closed[stack[i]].a[j];
                b[i] = closed[stack[i]].rhs.finite;
            }
            auto sol = solve_rational(A, b);
            if (sol && sol->kernel.cols == 0 && satisfies_closure(sol->particular))
                verts.push_back(sol->particular);
            return;
        }
        for (int i = start; i < int(closed.size()); ++i) {
            stack.push_back(i);
            rec(i + 1);
            stack.pop_back();
        }
    };
    rec(0);
    std::sort(verts.begin(), verts.end());
    verts.erase(std::unique(verts.begin(), verts.end()), verts.end());
    return verts;
}

bool satisfies(const ConstraintSystem& s, const Point& x) {
    assert(int(x.size()) == s.n);
    for (auto& r : s.rows) {
        Scalar v;
        for (int j = 0; j < s.n; ++j)
            if (r.a[j] != 0) v += r.a[j] * x[j];
        bool ok = r.rel == Rel::LT ? (v < r.rhs) : r.rel == Rel::LE ? (v <= r.rhs) : (v == r.rhs);
        if (!ok) return false;
    }
    for (auto& c : s.congs) {
        Scalar v;
        for (int j = 0; j < s.n; ++j)
            if (c.a[j] != 0) v += c.a[j] * x[j];
        if (!v.integral()) return false;
        if (v.residue(c.mod) != c.res) return false;
    }
    return true;
}

std::optional<Point> rational_witness(const ConstraintSystem& s) {
    ConstraintSystem cur = s;
    cur.congs.clear();
    normalize_rows(cur);
    if (cur.trivially_infeasible()) return std::nullopt;
    if (cur.n == 0) return Point{};
    int coord = cur.n - 1;
    ConstraintSystem proj = fm_eliminate(cur, coord);
    auto base = rational_witness(proj);
    if (!base) return std::nullopt;
    // Exact 1-D bounds for the last coordinate at the base point.
    std::optional<Scalar> lo, hi;
    bool lo_closed = false, hi_closed = false;
    for (auto& r : cur.rows) {
        if (r.a[coord] == 0) continue;
        Scalar rest;
        for (int j = 0; j < coord; ++j)
            if (r.a[j] != 0) rest += r.a[j] * (*base)[j];
        Scalar bound = (1 / r.a[coord]) * (r.rhs - rest);
        if (r.rel == Rel::EQ) {
            lo = hi = bound;
            lo_closed = hi_closed = true;
            continue;
        }
        bool is_upper = r.a[coord] > 0;
        bool closed = r.rel == Rel::LE;
        if (is_upper) {
            if (!hi || bound < *hi || (bound == *hi && !closed)) {
                hi = bound;
                hi_closed = closed;
            }
        } else {
            if (!lo || bound > *lo || (bound == *lo && !closed)) {
                lo = bound;
                lo_closed = closed;
            }
        }
    }
    Scalar v;
    if (lo && hi) {
        if (lo_closed && hi_closed && *lo == *hi)
            v = *lo;
        else
            v = rat(1, 2) * (*lo + *hi);
    } else if (lo) {
        v = lo_closed ? *lo : *lo + Scalar(rat(1));
    } else if (hi) {
        v = hi_closed ? *hi : *hi - Scalar(rat(1));
    }
    Point p = *base;
    p.push_back(v);
    return p;
}

}  // namespace zarlab
