#pragma once

#include <gmpxx.h>
#include <optional>
#include <string>
#include <vector>

namespace zarlab {

using Int = mpz_class;
using Rat = mpq_class;

inline Rat rat(long num, long den = 1) {
    Rat q(num, den);
    q.canonicalize();
    return q;
}

inline bool is_integral(const Rat& q) { return q.get_den() == 1; }

/// Floor of a rational as an integer.
Int rat_floor(const Rat& q);
Int rat_ceil(const Rat& q);

/// Nonnegative residue a mod m (m > 0).
Int mod_pos(const Int& a, const Int& m);

/// Element of the ordered group Q + Q*w, where w is a single formal
/// infinite unit. Standard scalars have omega == 0. Order is
/// lexicographic on (omega, finite), so w exceeds every rational.
struct Scalar {
    Rat finite;
    Rat omega;

    Scalar() = default;
    Scalar(const Rat& f) : finite(f) {}
    Scalar(long f) : finite(rat(f)) {}
    Scalar(const Rat& f, const Rat& o) : finite(f), omega(o) {}

    bool standard() const { return omega == 0; }
    /// True for a + b*w with a, b both integers (the "omega-integers").
    bool integral() const { return is_integral(finite) && is_integral(omega); }

    Scalar operator-() const { return {-finite, -omega}; }
    Scalar& operator+=(const Scalar& o) {
        finite += o.finite;
        omega += o.omega;
        return *this;
    }
    Scalar& operator-=(const Scalar& o) {
        finite -= o.finite;
        omega -= o.omega;
        return *this;
    }
    friend Scalar operator+(Scalar a, const Scalar& b) { return a += b; }
    friend Scalar operator-(Scalar a, const Scalar& b) { return a -= b; }
    friend Scalar operator*(const Rat& q, const Scalar& s) {
        return {q * s.finite, q * s.omega};
    }

    friend bool operator==(const Scalar& a, const Scalar& b) {
        return a.omega == b.omega && a.finite == b.finite;
    }
    friend bool operator<(const Scalar& a, const Scalar& b) {
        if (a.omega != b.omega) return a.omega < b.omega;
        return a.finite < b.finite;
    }
    friend bool operator!=(const Scalar& a, const Scalar& b) { return !(a == b); }
    friend bool operator>(const Scalar& a, const Scalar& b) { return b < a; }
    friend bool operator<=(const Scalar& a, const Scalar& b) { return !(b < a); }
    friend bool operator>=(const Scalar& a, const Scalar& b) { return !(a < b); }

    Scalar abs() const { return *this < Scalar() ? -*this : *this; }

    /// Residue mod r for omega-integers: w == 0 mod every r, so the
    /// residue is the finite part's.
    Int residue(const Int& r) const;

    std::string str() const;
};

using Point = std::vector<Scalar>;

/// Max-norm of a point.
Scalar max_norm(const Point& p);

Point operator+(const Point& a, const Point& b);
Point operator-(const Point& a, const Point& b);

inline bool point_standard(const Point& p) {
    for (auto& c : p)
        if (!c.standard()) return false;
    return true;
}
inline bool point_integral(const Point& p) {
    for (auto& c : p)
        if (!c.integral()) return false;
    return true;
}

std::string rat_str(const Rat& q);
std::string point_str(const Point& p);

}  // namespace zarlab
