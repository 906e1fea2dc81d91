#pragma once

#include <array>

#include "crooked/frame.hpp"
#include "crooked/isometry.hpp"
#include "crooked/vec.hpp"

namespace crooked {

/// Crooked plane C(u, p): vertex p, stem inside the indefinite plane
/// B(x - p, u) = 0, and two null wings attached along the stem's boundary
/// light rays x^±(u).
struct CrookedPlane {
    Vector3 u;     // unit spacelike direction
    SpacePoint p;  // vertex
    NullFrame frame;

    CrookedPlane(const Vector3& direction, const SpacePoint& vertex, double tol = kTol)
        : u(direction), p(vertex), frame(null_frame(direction, tol)) {}
};

/// Crooked half-space H(u, p): the component of the complement of C(u, p)
/// containing p + H_u.  The closure of the other component is H(-u, p).
struct CrookedHalfSpace {
    Vector3 u;
    SpacePoint p;
    NullFrame frame;

    CrookedHalfSpace(const Vector3& direction, const SpacePoint& vertex, double tol = kTol)
        : u(direction), p(vertex), frame(null_frame(direction, tol)) {}

    CrookedPlane boundary() const { return CrookedPlane(u, p); }
    CrookedHalfSpace opposite() const { return CrookedHalfSpace(-u, p); }
};

enum class Membership { InHalfSpace, OnCrookedPlane, InOppositeHalfSpace };

/// Membership trichotomy for q against H(u, p).  With x = q - p and the
/// null frame (x^-, x^+, u):
///
///     q in H(u,p)   iff  [B(x,u) > 0 and B(x,x^+) < 0]
///                     or [B(x,u) < 0 and B(x,x^-) > 0]
///                     or [B(x,u) = 0 and B(x,x^+) < 0 and B(x,x^-) > 0]
///
/// The three pieces glue along the spacelike quadrant of u^⊥ into the open
/// connected component of E - C(u,p) that contains p + H_u; in the model
/// u = (1,0,0) they are {x1>0, x2+x3>0}, {x1<0, x2>x3} and {x1=0, x2>|x3|}.
/// Values within |B| <= tol of zero count as on the plane.
Membership membership(const SpacePoint& q, const CrookedHalfSpace& h, double tol = kTol);
Membership membership(const SpacePoint& q, const Vector3& u, const SpacePoint& p,
                      double tol = kTol);

/// Closed convex wedge {x : B(x-apex, n) >= 0 for each signed constraint}.
struct ConvexWedge {
    struct Constraint {
        Vector3 normal;  // Lorentzian normal
        int sense;       // +1: B(x-apex, normal) >= 0,  -1: <= 0
    };
    SpacePoint apex;
    std::array<Constraint, 2> constraints;

    bool contains(const SpacePoint& q, double tol = kTol) const {
        Vector3 x = q - apex;
        for (const auto& c : constraints) {
            double b = static_cast<double>(c.sense) * bform(x, c.normal);
            if (b < -tol) return false;
        }
        return true;
    }
};

/// The closure of H(u, p) as the union of two convex wedges:
///   W1 = {B(x,u) >= 0, B(x,x^+) <= 0},  W2 = {B(x,u) <= 0, B(x,x^-) >= 0}.
std::array<ConvexWedge, 2> closure_wedges(const CrookedHalfSpace& h);

/// Transport by an affine isometry: h . H(u,p) = H(L(h) u, h(p)).
CrookedHalfSpace transform(const AffineIsometry& h, const CrookedHalfSpace& H);
CrookedPlane transform(const AffineIsometry& h, const CrookedPlane& C);

/// The angle of the crooked half-space: the length of the interval of H_u.
double angle(const CrookedHalfSpace& h);

}  // namespace crooked
