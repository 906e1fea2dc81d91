#pragma once

#include <cmath>

#include "crooked/circle.hpp"
#include "crooked/vec.hpp"

namespace crooked {

/// A positively oriented basis (x^-, x^+, x^0) of R^{2,1} with x^± future
/// null on S^1 and x^0 unit spacelike orthogonal to both.
struct NullFrame {
    Vector3 xminus;
    Vector3 xplus;
    Vector3 x0;

    CirclePoint phi_minus() const { return circle_point_of_null(xminus); }
    CirclePoint phi_plus() const { return circle_point_of_null(xplus); }
};

/// Null frame of a unit spacelike vector v.  The two points of S^1 ∩ v^⊥ are
/// u_{psi0 ± alpha} where (v1,v2) = r (cos psi0, sin psi0) and
/// cos(alpha) = v3 / r; the orientation det(x^-, x^+, v) > 0 puts x^+ at
/// psi0 - alpha and x^- at psi0 + alpha.
inline NullFrame null_frame(const Vector3& v, double tol = kTol) {
    if (!is_unit_spacelike(v, tol)) throw std::domain_error("null_frame: not unit spacelike");
    double r = std::hypot(v.x1, v.x2);  // = sqrt(1 + v3^2) for unit spacelike v
    double psi0 = std::atan2(v.x2, v.x1);
    double c = v.x3 / r;
    if (c > 1.0) c = 1.0;
    if (c < -1.0) c = -1.0;
    double alpha = std::acos(c);
    NullFrame f;
    f.xplus = CirclePoint(psi0 - alpha).u();
    f.xminus = CirclePoint(psi0 + alpha).u();
    f.x0 = v;
    return f;
}

/// Hyperbolicity of a unit spacelike vector: the Euclidean distance between
/// the two null-frame directions on S^1.
inline double hyperbolicity(const Vector3& v, double tol = kTol) {
    NullFrame f = null_frame(v, tol);
    return euclid_norm(f.xplus - f.xminus);
}

/// Closed form for the same quantity, 2 sqrt(2 / (1 + ||v||^2)).
inline double hyperbolicity_closed_form(const Vector3& v) {
    double n2 = euclid_dot(v, v);
    return 2.0 * std::sqrt(2.0 / (1.0 + n2));
}

inline bool is_eps_spacelike(const Vector3& v, double eps, double tol = kTol) {
    return hyperbolicity(v, tol) >= eps;
}

/// Euclidean radius of the compact set of eps-spacelike unit vectors,
/// sqrt(8/eps^2 - 1).
inline double eps_spacelike_radius(double eps) {
    if (eps <= 0.0 || eps > 2.0) throw std::domain_error("eps_spacelike_radius: need 0 < eps <= 2");
    return std::sqrt(8.0 / (eps * eps) - 1.0);
}

/// The unit spacelike vector whose null frame bounds the given interval:
/// (x^+(v), x^-(v)) = (u_{phi1}, u_{phi2}).  Computed as the normalized
/// Lorentzian cross-product u_{phi2} ⊠ u_{phi1}.
inline Vector3 spacelike_from_interval(const Interval& a) {
    Vector3 w = lorentz_cross(a.endpoint2().u(), a.endpoint1().u());
    return spacelike_normalize(w);
}

/// The interval bounded by the ordered pair (x^+(v), x^-(v)); the arc where
/// B(u_phi, v) > 0.
inline Interval interval_of_spacelike(const Vector3& v, double tol = kTol) {
    NullFrame f = null_frame(v, tol);
    double p = f.phi_plus().phi;
    double len = canonical_angle(f.phi_minus().phi - p);
    return Interval(p, p + len);
}

enum class PlaneClass { Indefinite, Null, Definite };

/// Trichotomy for 2-planes, read off the causal class of the Lorentzian
/// normal e1 ⊠ e2: spacelike normal means indefinite plane, null means
/// null, timelike means definite.
inline PlaneClass plane_class(const Vector3& e1, const Vector3& e2, double tol = kTol) {
    Vector3 n = lorentz_cross(e1, e2);
    switch (causal_class(n, tol).kind) {
        case Causal::Spacelike: return PlaneClass::Indefinite;
        case Causal::Lightlike: return PlaneClass::Null;
        default: return PlaneClass::Definite;
    }
}

}  // namespace crooked
