#include "zarlab/affine.hpp"

#include <cassert>

namespace zarlab {

Scalar AffineMap::eval(const Point& x) const {
    assert(int(x.size()) == arity());
    Scalar v = constant;
    for (int i = 0; i < arity(); ++i)
        if (coeffs[i] != 0) v += coeffs[i] * x[i];
    return v;
}

Scalar AffineMap::eval_prefix(const Point& x) const {
    assert(int(x.size()) >= arity());
    Scalar v = constant;
    for (int i = 0; i < arity(); ++i)
        if (coeffs[i] != 0) v += coeffs[i] * x[i];
    return v;
}

AffineMap AffineMap::homogeneous() const {
    AffineMap h = *this;
    h.constant = Scalar();
    return h;
}

bool AffineMap::is_constant() const {
    for (auto& c : coeffs)
        if (c != 0) return false;
    return true;
}

Rat AffineMap::lipschitz() const {
    Rat l = 0;
    for (auto& c : coeffs) l += c < 0 ? -c : c;
    return l;
}

bool AffineMap::pres_linear() const {
    if (!cong_domain) return false;
    if (int(cong_domain->size()) != arity()) return false;
    Rat shift = 0;
    for (int i = 0; i < arity(); ++i) {
        const VarCong& vc = (*cong_domain)[i];
        if (vc.mod <= 0) return false;
        Rat ai = coeffs[i] * Rat(vc.mod);
        if (!is_integral(ai)) return false;
        shift += coeffs[i] * Rat(vc.res);
    }
    // Value at an admissible point x: sum coeffs_i x_i + constant with
    // x_i == res_i; integrality reduces to constant + shift integral.
    if (!constant.standard()) return false;
    return is_integral(constant.finite + shift);
}

AffineMap AffineMap::operator+(const AffineMap& o) const {
    assert(arity() == o.arity());
    AffineMap r = *this;
    for (int i = 0; i < arity(); ++i) r.coeffs[i] += o.coeffs[i];
    r.constant += o.constant;
    r.cong_domain = std::nullopt;
    return r;
}

AffineMap AffineMap::operator-(const AffineMap& o) const {
    assert(arity() == o.arity());
    AffineMap r = *this;
    for (int i = 0; i < arity(); ++i) r.coeffs[i] -= o.coeffs[i];
    r.constant -= o.constant;
    r.cong_domain = std::nullopt;
    return r;
}

AffineMap AffineMap::scaled(const Rat& f) const {
    AffineMap r = *this;
    for (auto& c : r.coeffs) c *= f;
    r.constant = f * r.constant;
    r.cong_domain = std::nullopt;
    return r;
}

AffineMap AffineMap::plus_const(const Scalar& c) const {
    AffineMap r = *this;
    r.constant += c;
    return r;
}

AffineMap AffineMap::translated(const Point& v, const Scalar& w) const {
    assert(int(v.size()) >= arity());
    AffineMap r = *this;
    for (int i = 0; i < arity(); ++i)
        if (coeffs[i] != 0) r.constant += coeffs[i] * v[i];
    r.constant -= w;
    if (r.cong_domain)
        for (int i = 0; i < arity(); ++i) {
            VarCong& vc = (*r.cong_domain)[i];
            if (!v[i].integral()) continue;
            vc.res = mod_pos(vc.res - v[i].residue(vc.mod), vc.mod);
        }
    return r;
}

AffineMap AffineMap::widened(int new_arity) const {
    assert(new_arity >= arity());
    AffineMap r = *this;
    r.coeffs.resize(new_arity, Rat(0));
    if (r.cong_domain) r.cong_domain->resize(new_arity, VarCong{});
    return r;
}

AffineMap compose_affine(const AffineMap& outer, const std::vector<AffineMap>& inner) {
    assert(outer.arity() == int(inner.size()));
    int n = inner.empty() ? 0 : inner[0].arity();
    AffineMap r{n};
    r.constant = outer.constant;
    for (int i = 0; i < outer.arity(); ++i) {
        if (outer.coeffs[i] == 0) continue;
        for (int j = 0; j < n; ++j) r.coeffs[j] += outer.coeffs[i] * inner[i].coeffs[j];
        r.constant += outer.coeffs[i] * inner[i].constant;
    }
    return r;
}

Point LinMap::eval(const Point& x) const {
    assert(int(x.size()) == matrix.cols);
    Point y = offset;
    for (int i = 0; i < matrix.rows; ++i)
        for (int j = 0; j < matrix.cols; ++j)
            if (matrix(i, j) != 0) y[i] += matrix(i, j) * x[j];
    return y;
}

}  // namespace zarlab
