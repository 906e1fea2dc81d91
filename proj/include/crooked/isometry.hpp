#pragma once

#include <array>
#include <cstddef>

#include "crooked/frame.hpp"
#include "crooked/vec.hpp"

namespace crooked {

class Rng;

/// Element of SO^0(2,1): preserves B, has determinant one and preserves the
/// future cone.  Stored row-major.
struct LinearIsometry {
    std::array<double, 9> m{1, 0, 0, 0, 1, 0, 0, 0, 1};

    double operator()(std::size_t r, std::size_t c) const { return m[3 * r + c]; }
    double& at(std::size_t r, std::size_t c) { return m[3 * r + c]; }

    Vector3 apply(const Vector3& v) const {
        return {m[0] * v.x1 + m[1] * v.x2 + m[2] * v.x3,
                m[3] * v.x1 + m[4] * v.x2 + m[5] * v.x3,
                m[6] * v.x1 + m[7] * v.x2 + m[8] * v.x3};
    }
    /// Linear isometries fix the origin; on points they act on coordinates.
    SpacePoint apply(const SpacePoint& p) const {
        Vector3 v = apply(Vector3{p.x1, p.x2, p.x3});
        return {v.x1, v.x2, v.x3};
    }

    Vector3 row(std::size_t r) const { return {m[3 * r], m[3 * r + 1], m[3 * r + 2]}; }
    Vector3 col(std::size_t c) const { return {m[c], m[3 + c], m[6 + c]}; }

    double trace() const { return m[0] + m[4] + m[8]; }

    /// Exact inverse for isometries: g^{-1} = J g^T J with J = diag(1,1,-1).
    LinearIsometry inverse() const {
        LinearIsometry r;
        for (std::size_t i = 0; i < 3; ++i)
            for (std::size_t j = 0; j < 3; ++j) {
                double sign = ((i == 2) != (j == 2)) ? -1.0 : 1.0;
                r.at(i, j) = sign * (*this)(j, i);
            }
        return r;
    }

    static LinearIsometry identity() { return {}; }

    static LinearIsometry rotation(double phi) {
        LinearIsometry g;
        double c = std::cos(phi), s = std::sin(phi);
        g.m = {c, -s, 0, s, c, 0, 0, 0, 1};
        return g;
    }

    /// Transvection along the geodesic fixed by (1,0,0): eigenvectors
    /// u_{±pi/2} with eigenvalues e^{±s}.
    static LinearIsometry transvection(double s) {
        LinearIsometry g;
        double ch = std::cosh(s), sh = std::sinh(s);
        g.m = {1, 0, 0, 0, ch, sh, 0, sh, ch};
        return g;
    }

    /// Matrix with the given columns (used to assemble frames).
    static LinearIsometry from_columns(const Vector3& a, const Vector3& b, const Vector3& c) {
        LinearIsometry g;
        g.m = {a.x1, b.x1, c.x1, a.x2, b.x2, c.x2, a.x3, b.x3, c.x3};
        return g;
    }
};

inline LinearIsometry operator*(const LinearIsometry& a, const LinearIsometry& b) {
    LinearIsometry r;
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = 0; j < 3; ++j) {
            double s = 0.0;
            for (std::size_t k = 0; k < 3; ++k) s += a(i, k) * b(k, j);
            r.at(i, j) = s;
        }
    return r;
}

/// Frobenius-style residual of the defining relations g^T J g = J, det g = 1
/// and time orientation.  Zero (to roundoff) for genuine elements.
double isometry_residual(const LinearIsometry& g);
bool is_linear_isometry(const LinearIsometry& g, double tol = kTol);

/// Affine isometry h(p) = g p + t of Minkowski space.
struct AffineIsometry {
    LinearIsometry linear;
    Vector3 translation;

    SpacePoint apply(const SpacePoint& p) const { return SpacePoint{} + (linear.apply(p - SpacePoint{}) + translation); }
    /// Vectors see only the linear part.
    Vector3 apply(const Vector3& v) const { return linear.apply(v); }

    AffineIsometry inverse() const {
        LinearIsometry gi = linear.inverse();
        return {gi, -gi.apply(translation)};
    }

    static AffineIsometry identity() { return {LinearIsometry::identity(), Vector3{}}; }
};

inline AffineIsometry operator*(const AffineIsometry& a, const AffineIsometry& b) {
    return {a.linear * b.linear, a.linear.apply(b.translation) + a.translation};
}

enum class IsometryClass { Identity, Elliptic, Parabolic, Hyperbolic };

/// Trace trichotomy: hyperbolic iff tr > 3, elliptic iff tr < 3, parabolic
/// on the band edge (identity reported separately).
IsometryClass classify(const LinearIsometry& g, double tol = kTol);

/// Eigen-data of a hyperbolic element: eigenvalues lambda < 1 < 1/lambda,
/// null eigenvectors projected to S^1 and the unit spacelike eigenvector
/// oriented so that (x^-, x^+, x^0) is a null frame.
struct HyperbolicData {
    double lambda;
    Vector3 xminus;
    Vector3 xplus;
    Vector3 x0;

    CirclePoint phi_minus() const { return circle_point_of_null(xminus); }
    CirclePoint phi_plus() const { return circle_point_of_null(xplus); }
    double hyperbolicity() const { return euclid_norm(xplus - xminus); }
};

HyperbolicData hyperbolic_data(const LinearIsometry& g, double tol = kTol);

inline bool is_eps_hyperbolic(const LinearIsometry& g, double eps, double tol = kTol) {
    return hyperbolic_data(g, tol).hyperbolicity() >= eps;
}
/// An affine isometry is eps-hyperbolic exactly when its linear part is.
inline bool is_eps_hyperbolic(const AffineIsometry& h, double eps, double tol = kTol) {
    return is_eps_hyperbolic(h.linear, eps, tol);
}

/// Projective action of SO^0(2,1) on S^1.
CirclePoint circle_action(const LinearIsometry& g, const CirclePoint& a);

/// Factors of g = R_theta tau_s R_theta' with s = d(O, g O) >= 0.
struct CartanFactors {
    double theta;
    double s;
    double theta_prime;

    LinearIsometry reassemble() const {
        return LinearIsometry::rotation(theta) * LinearIsometry::transvection(s) *
               LinearIsometry::rotation(theta_prime);
    }
};

CartanFactors cartan_decompose(const LinearIsometry& g);

/// Lipschitz bound K = e^s pi/2 for the action of g on S^1 in the chord
/// metric: K^{-1} <= rho(g a1, g a2) / rho(a1, a2) <= K.
double distortion_bound(const LinearIsometry& g);

/// Weak-unstable plane of a unit spacelike vector or hyperbolic isometry:
/// span of x^0 and x^+ (equivalently the null plane (x^+)^⊥).  Returned as a
/// Euclidean-orthonormal in-plane basis.
struct PlaneBasis {
    Vector3 e1;
    Vector3 e2;
};
PlaneBasis weak_unstable_basis(const Vector3& unit_spacelike, double tol = kTol);
PlaneBasis weak_unstable_basis(const LinearIsometry& g, double tol = kTol);

/// The rectangle spanned inside the weak-unstable plane by the intersection
/// points of the lines R x^0 and R x^+ with the sphere of radius delta.
struct WeakUnstableRectangle {
    double side_short;
    double side_long;
};
WeakUnstableRectangle weak_unstable_rectangle(const Vector3& unit_spacelike, double delta,
                                              double tol = kTol);

/// Compression check: points of B(h(x), delta*eps/4) in the weak-unstable
/// plane at h(x) must pull back under h^{-1} into B(x, delta).  Samples the
/// open disk with a strict interior margin.
struct CompressionReport {
    int samples = 0;
    int violations = 0;
    double eps = 0.0;
    double max_pullback = 0.0;  // largest ||h^{-1}(y) - x|| seen
    bool passed() const { return violations == 0; }
};

CompressionReport compression_check(const AffineIsometry& h, double delta, const SpacePoint& x,
                                    int samples, Rng& rng, double tol = kTol);
CompressionReport compression_check(const LinearIsometry& g, double delta, const SpacePoint& x,
                                    int samples, Rng& rng, double tol = kTol);

}  // namespace crooked
