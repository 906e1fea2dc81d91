#pragma once

#include <cmath>
#include <optional>
#include <stdexcept>
#include <string>

#include "crooked/tol.hpp"

namespace crooked {

/// A vector of R^{2,1}, the three-dimensional real vector space carrying the
/// signature (2,1) inner product  B(u,v) = u1 v1 + u2 v2 - u3 v3.
struct Vector3 {
    double x1 = 0.0;
    double x2 = 0.0;
    double x3 = 0.0;

    Vector3() = default;
    Vector3(double a, double b, double c) : x1(a), x2(b), x3(c) {
        if (!std::isfinite(a) || !std::isfinite(b) || !std::isfinite(c))
            throw std::invalid_argument("Vector3: non-finite component");
    }

    Vector3 operator+(const Vector3& o) const { return {x1 + o.x1, x2 + o.x2, x3 + o.x3}; }
    Vector3 operator-(const Vector3& o) const { return {x1 - o.x1, x2 - o.x2, x3 - o.x3}; }
    Vector3 operator-() const { return {-x1, -x2, -x3}; }
    Vector3 operator*(double s) const { return {s * x1, s * x2, s * x3}; }
};

inline Vector3 operator*(double s, const Vector3& v) { return v * s; }

/// A point of Minkowski space E.  Points support only displacement
/// arithmetic: q - p is a Vector3 and p + v is a SpacePoint.
struct SpacePoint {
    double x1 = 0.0;
    double x2 = 0.0;
    double x3 = 0.0;

    SpacePoint() = default;
    SpacePoint(double a, double b, double c) : x1(a), x2(b), x3(c) {
        if (!std::isfinite(a) || !std::isfinite(b) || !std::isfinite(c))
            throw std::invalid_argument("SpacePoint: non-finite component");
    }
};

inline constexpr SpacePoint kOrigin{};

inline Vector3 operator-(const SpacePoint& q, const SpacePoint& p) {
    return {q.x1 - p.x1, q.x2 - p.x2, q.x3 - p.x3};
}
inline SpacePoint operator+(const SpacePoint& p, const Vector3& v) {
    return {p.x1 + v.x1, p.x2 + v.x2, p.x3 + v.x3};
}

/// The inner product of R^{2,1}.
inline double bform(const Vector3& u, const Vector3& v) {
    return u.x1 * v.x1 + u.x2 * v.x2 - u.x3 * v.x3;
}

inline double euclid_dot(const Vector3& u, const Vector3& v) {
    return u.x1 * v.x1 + u.x2 * v.x2 + u.x3 * v.x3;
}

inline double euclid_norm(const Vector3& v) { return std::sqrt(euclid_dot(v, v)); }

/// Euclidean distance rho on E.
inline double rho(const SpacePoint& p, const SpacePoint& q) { return euclid_norm(q - p); }

inline double det3(const Vector3& a, const Vector3& b, const Vector3& c) {
    return a.x1 * (b.x2 * c.x3 - b.x3 * c.x2) - b.x1 * (a.x2 * c.x3 - a.x3 * c.x2) +
           c.x1 * (a.x2 * b.x3 - a.x3 * b.x2);
}

/// Lorentzian cross-product, characterized by  B(u ⊠ v, z) = det(u, v, z).
/// It is the Euclidean cross product with the sign of the third component
/// flipped.
inline Vector3 lorentz_cross(const Vector3& u, const Vector3& v) {
    return {u.x2 * v.x3 - u.x3 * v.x2, u.x3 * v.x1 - u.x1 * v.x3, -(u.x1 * v.x2 - u.x2 * v.x1)};
}

enum class Causal { Spacelike, Lightlike, Timelike };
enum class TimeOrientation { Future, Past };

struct CausalClass {
    Causal kind;
    /// Set for timelike and lightlike vectors only.
    std::optional<TimeOrientation> orientation;
};

/// Causal trichotomy by the sign of B(u,u), with a |B| <= tol band mapped to
/// Lightlike.  The zero vector is rejected.
inline CausalClass causal_class(const Vector3& u, double tol = kTol) {
    double n = euclid_norm(u);
    if (n <= tol) throw std::invalid_argument("causal_class: zero vector");
    double b = bform(u, u);
    if (b > tol) return {Causal::Spacelike, std::nullopt};
    TimeOrientation o = u.x3 > 0 ? TimeOrientation::Future : TimeOrientation::Past;
    if (b < -tol) return {Causal::Timelike, o};
    return {Causal::Lightlike, o};
}

inline bool is_future_timelike(const Vector3& u, double tol = kTol) {
    auto c = causal_class(u, tol);
    return c.kind == Causal::Timelike && c.orientation == TimeOrientation::Future;
}

inline bool is_unit_spacelike(const Vector3& u, double tol = kTol) {
    // Relative band: a unit spacelike vector of large Euclidean norm cannot
    // hold B = 1 to an absolute tolerance.
    return std::abs(bform(u, u) - 1.0) <= tol * (1.0 + euclid_dot(u, u));
}

/// Normalize a spacelike vector to B(v,v) = 1.
inline Vector3 spacelike_normalize(const Vector3& v) {
    double b = bform(v, v);
    if (b <= 0.0) throw std::domain_error("spacelike_normalize: vector not spacelike");
    return v * (1.0 / std::sqrt(b));
}

}  // namespace crooked
