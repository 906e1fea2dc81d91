#pragma once

#include <vector>

#include "crooked/affine_schottky.hpp"
#include "crooked/crooked_plane.hpp"
#include "crooked/vec.hpp"

namespace crooked {

/// In-plane coordinates (s, t) of a definite plane.
struct Vec2 {
    double s = 0.0;
    double t = 0.0;

    Vec2 operator+(const Vec2& o) const { return {s + o.s, t + o.t}; }
    Vec2 operator-(const Vec2& o) const { return {s - o.s, t - o.t}; }
    Vec2 operator*(double k) const { return {k * s, k * t}; }
};

inline double dot(const Vec2& a, const Vec2& b) { return a.s * b.s + a.t * b.t; }
inline double norm(const Vec2& a) { return std::sqrt(dot(a, a)); }
inline double cross2(const Vec2& a, const Vec2& b) { return a.s * b.t - a.t * b.s; }

/// A 2-plane of E on which the inner product restricts positive definite,
/// with a Euclidean-orthonormal in-plane basis (e1, e2).
struct DefinitePlane {
    SpacePoint base;
    Vector3 e1;
    Vector3 e2;

    DefinitePlane(const SpacePoint& b, const Vector3& a1, const Vector3& a2, double tol = kTol);

    SpacePoint lift(const Vec2& w) const { return base + w.s * e1 + w.t * e2; }
    Vec2 project(const SpacePoint& q) const {
        Vector3 d = q - base;
        return {euclid_dot(d, e1), euclid_dot(d, e2)};
    }
    /// Euclidean distance from q to the plane.
    double offset(const SpacePoint& q) const;

    /// Horizontal plane {x3 = c}.
    static DefinitePlane horizontal(double c) {
        return DefinitePlane(SpacePoint{0, 0, c}, Vector3{1, 0, 0}, Vector3{0, 1, 0});
    }
};

/// Zigzag: the slice of a crooked plane by a definite plane.  Two rays
/// joined by the stem segment [v0, v1]; the ray at v0 comes from the
/// positive wing, the ray at v1 from the negative wing.
struct Zigzag {
    Vec2 v0;
    Vec2 v1;
    Vec2 d0;  // unit ray direction at v0
    Vec2 d1;  // unit ray direction at v1
};

/// Slice a crooked plane by a definite plane not through its vertex.
Zigzag slice(const CrookedPlane& c, const DefinitePlane& p, double tol = kTol);

/// One component of the complement of a zigzag: the trace of a crooked
/// half-space on the plane.
struct ZigzagRegion {
    Zigzag zigzag;
    CrookedHalfSpace side;
    DefinitePlane plane;

    ZigzagRegion(const CrookedHalfSpace& h, const DefinitePlane& p, double tol = kTol)
        : zigzag(slice(h.boundary(), p, tol)), side(h), plane(p) {}
};

/// Membership via the in-plane trichotomy (tested against the lifted 3-D
/// membership oracle).
bool region_contains(const ZigzagRegion& z, const Vec2& w, double tol = kTol);

struct ZigzagAngles {
    double theta0;  // sector angle at v0
    double theta1;  // sector angle at v1
    double phi;     // angle of the underlying half-space
};

/// Sector angles of the region at the two zigzag vertices; they differ by pi
/// and equal {phi/2, phi/2 + pi}.
ZigzagAngles angles(const ZigzagRegion& z, double tol = kTol);

/// Half-plane approximation of a nested zigzag region: a line L_k
/// perpendicular to the reference direction nu through a zigzag vertex,
/// bounding Pi_k ⊇ (H_k ∩ P).
struct HalfPlaneApprox {
    Vec2 nu;          // unit reference direction (shared by the whole chain)
    double offset;    // Pi = { w : <w, nu> >= offset }
    Vec2 line_point;  // the chosen zigzag vertex on L
    int vertex_pick;  // 0 or 1

    bool contains(const Vec2& w, double tol = 0.0) const { return dot(w, nu) >= offset - tol; }
};

/// Build the chain Pi_0 ⊇ Pi_1 ⊇ ... for a nested sequence of crooked
/// half-spaces.  nu comes from the stem of the first half-space, oriented
/// along the region's rays; requires Phi(H_0) < pi/2.  Containment
/// H_k ∩ P ⊂ Pi_k is verified by sampling.
std::vector<HalfPlaneApprox> approx_half_planes(const std::vector<CrookedHalfSpace>& seq,
                                                const DefinitePlane& p, double tol = kTol);

struct SeparationRow {
    int k;
    double rho;        // distance between L_k and L_{k+1}
    double eps;        // eigen-computed hyperbolicity of gamma_k
    double guarantee;  // audited lower bound for eps (0 when the audit has none)
    bool audit_ok;     // eps respects the audited guarantee
    double bound;      // delta * eps / (4 sqrt 2)
    bool pass;         // rho >= bound - 1e-9
    double wu_angle;   // angle between nu and the weak-unstable trace
    bool wu_pass;      // wu_angle <= pi/4
};

struct SeparationChainReport {
    double delta;
    double delta0;
    std::vector<SeparationRow> rows;
    bool point_containment_ok = false;  // the adjusted point lies in every H_k
    bool nesting_ok = false;            // the Pi_k offsets are monotone
    bool all_pass = false;
};

/// The separation chain: slice a nested sequence, approximate by half-planes
/// and check rho(L_k, L_{k+1}) >= delta * eps_k / (4 sqrt 2) together with
/// the pi/4 weak-unstable angle bound, for every k >= 1.
SeparationChainReport separation_report(const AffineSchottkyConfig& cfg, const NestedSequence& seq,
                                        double delta, double delta0, double tol = kTol);

}  // namespace crooked
