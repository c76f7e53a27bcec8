#pragma once

#include <optional>
#include <vector>

#include "zarlab/linalg.hpp"

namespace zarlab {

/// Per-variable admissibility of a Pres-linear map: x_i == res mod mod.
struct VarCong {
    Int mod{1};
    Int res{0};
    friend bool operator==(const VarCong&, const VarCong&) = default;
};

/// Affine map M^arity -> M, x |-> coeffs . x + constant. In the
/// Presburger setting the classical form sum a_i (x_i - c_i)/r_i + g
/// is stored with coeffs_i = a_i / r_i plus the (r_i, c_i) domain in
/// cong_domain, so a_i = coeffs_i * r_i must be an integer and the map
/// sends admissible integer points to integers.
struct AffineMap {
    QVec coeffs;
    Scalar constant;
    std::optional<std::vector<VarCong>> cong_domain;

    AffineMap() = default;
    explicit AffineMap(int arity) : coeffs(arity, Rat(0)) {}
    AffineMap(QVec c, Scalar k) : coeffs(std::move(c)), constant(std::move(k)) {}

    int arity() const { return int(coeffs.size()); }

    Scalar eval(const Point& x) const;
    Scalar eval_prefix(const Point& x) const;  // uses the first arity() coords

    /// Same coefficients, zero constant (the homogeneous part).
    AffineMap homogeneous() const;

    bool is_constant() const;

    /// L with |f(x) - f(y)| <= L * |x - y| in max-norm: sum |coeffs|.
    Rat lipschitz() const;

    /// Pres-linearity: integer a_i = coeffs_i * r_i and integer values on
    /// admissible points.
    bool pres_linear() const;

    AffineMap operator+(const AffineMap& o) const;
    AffineMap operator-(const AffineMap& o) const;
    AffineMap scaled(const Rat& f) const;
    AffineMap plus_const(const Scalar& c) const;

    /// Map with domain translated by v and value shifted by -w:
    /// x |-> f(x + v) - w. Used when translating cells.
    AffineMap translated(const Point& v, const Scalar& w) const;

    /// Extend to a larger arity with zero coefficients on new variables.
    AffineMap widened(int new_arity) const;

    friend bool operator==(const AffineMap&, const AffineMap&) = default;
};

/// outer(inner_1(x), ..., inner_m(x)) as a single affine map; the inner
/// maps share an arity.
AffineMap compose_affine(const AffineMap& outer, const std::vector<AffineMap>& inner);

/// Linear map M^m -> M^k with a constant offset, as rows of AffineMaps
/// sharing the arity.
struct LinMap {
    QMat matrix;  // k x m
    Point offset; // length k

    int domain_dim() const { return matrix.cols; }
    int codomain_dim() const { return matrix.rows; }

    Point eval(const Point& x) const;
    bool homogeneous_at_zero() const {
        for (auto& c : offset)
            if (c != Scalar()) return false;
        return true;
    }
};

}  // namespace zarlab
