#include "zarlab/scalar.hpp"

#include <stdexcept>

namespace zarlab {

Int rat_floor(const Rat& q) {
    Int f;
    mpz_fdiv_q(f.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
    return f;
}

Int rat_ceil(const Rat& q) {
    Int c;
    mpz_cdiv_q(c.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
    return c;
}

Int mod_pos(const Int& a, const Int& m) {
    Int r;
    mpz_fdiv_r(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t());
    return r;
}

Int Scalar::residue(const Int& r) const {
    if (!integral()) throw std::domain_error("residue of a non-integral scalar");
    return mod_pos(finite.get_num(), r);
}

std::string rat_str(const Rat& q) {
    if (is_integral(q)) return q.get_num().get_str();
    return q.get_num().get_str() + "/" + q.get_den().get_str();
}

std::string Scalar::str() const {
    if (omega == 0) return rat_str(finite);
    std::string s;
    if (finite != 0) s = rat_str(finite) + (omega > 0 ? "+" : "");
    if (omega == 1)
        s += "w";
    else if (omega == -1)
        s += "-w";
    else
        s += rat_str(omega) + "*w";
    return s;
}

Scalar max_norm(const Point& p) {
    Scalar m;
    for (auto& c : p) {
        Scalar a = c.abs();
        if (m < a) m = a;
    }
    return m;
}

Point operator+(const Point& a, const Point& b) {
    Point r(a);
    for (size_t i = 0; i < r.size(); ++i) r[i] += b[i];
    return r;
}

Point operator-(const Point& a, const Point& b) {
    Point r(a);
    for (size_t i = 0; i < r.size(); ++i) r[i] -= b[i];
    return r;
}

std::string point_str(const Point& p) {
    std::string s = "(";
    for (size_t i = 0; i < p.size(); ++i) {
        if (i) s += ", ";
        s += p[i].str();
    }
    return s + ")";
}

}  // namespace zarlab
