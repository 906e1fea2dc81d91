#pragma once

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "crooked/vec.hpp"

namespace crooked {

inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

/// Reduce an angle to [0, 2*pi).
inline double canonical_angle(double phi) {
    double r = std::fmod(phi, kTwoPi);
    if (r < 0.0) r += kTwoPi;
    if (r >= kTwoPi) r = 0.0;  // guard against fmod rounding at the seam
    return r;
}

/// Absolute angular distance on the circle, in [0, pi].
inline double angular_distance(double a, double b) {
    double d = std::abs(canonical_angle(a) - canonical_angle(b));
    return d > std::numbers::pi ? kTwoPi - d : d;
}

/// A point u_phi = (cos phi, sin phi, 1) of the circle S^1, the section of
/// the future lightcone at Euclidean radius sqrt(2).
struct CirclePoint {
    double phi = 0.0;

    CirclePoint() = default;
    explicit CirclePoint(double angle) : phi(canonical_angle(angle)) {
        if (!std::isfinite(angle)) throw std::invalid_argument("CirclePoint: non-finite angle");
    }

    Vector3 u() const { return {std::cos(phi), std::sin(phi), 1.0}; }
};

/// Project a future null vector to its S^1 section point (divide by the
/// third coordinate) and read off the angle.
inline CirclePoint circle_point_of_null(const Vector3& w, double tol = kTol) {
    if (w.x3 <= tol) throw std::domain_error("circle_point_of_null: not future-pointing");
    return CirclePoint(std::atan2(w.x2 / w.x3, w.x1 / w.x3));
}

/// Chord length between two points of S^1: 2 sin(Phi/2) for the short arc.
inline double chord_distance(const CirclePoint& a, const CirclePoint& b) {
    return 2.0 * std::abs(std::sin(0.5 * (a.phi - b.phi)));
}

/// An open interval {u_phi : phi1 < phi < phi2} on S^1 with
/// 0 < phi2 - phi1 < 2*pi.  Stored with the left endpoint reduced to
/// [0, 2*pi); the right endpoint may exceed 2*pi.
class Interval {
   public:
    Interval(double phi1, double phi2) {
        if (!(phi1 < phi2) || !(phi2 < phi1 + kTwoPi))
            throw std::invalid_argument("Interval: need phi1 < phi2 < phi1 + 2*pi");
        length_ = phi2 - phi1;
        lo_ = canonical_angle(phi1);
    }

    double lo() const { return lo_; }
    double hi() const { return lo_ + length_; }
    double length() const { return length_; }
    double midpoint() const { return canonical_angle(lo_ + 0.5 * length_); }

    CirclePoint endpoint1() const { return CirclePoint(lo_); }
    CirclePoint endpoint2() const { return CirclePoint(hi()); }

    /// Open membership with a tolerance band excluded at the endpoints.
    bool contains(double phi, double tol = 0.0) const {
        double d = canonical_angle(phi - lo_);
        return d > tol && d < length_ - tol;
    }
    bool contains(const CirclePoint& a, double tol = 0.0) const { return contains(a.phi, tol); }

    /// Angular gap between this interval and another (0 when they overlap or
    /// touch).  Gaps are measured between closures.
    double gap_to(const Interval& other) const {
        // Distance from the end of one interval to the start of the other,
        // going counterclockwise, in both orders; overlap makes both spans
        // negative in the wrap-around sense.
        double a = canonical_angle(other.lo() - hi());  // ccw from our end to their start
        double b = canonical_angle(lo_ - other.hi());   // ccw from their end to our start
        // When the intervals are disjoint, a + b = 2*pi - len - olen and both
        // a, b are the genuine gaps; when they overlap, one of the spans wraps
        // past the other interval.
        if (a + b > kTwoPi - length_ - other.length() + 1e-12) return 0.0;  // overlap
        return std::min(a, b);
    }

   private:
    double lo_ = 0.0;
    double length_ = 0.0;
};

}  // namespace crooked
