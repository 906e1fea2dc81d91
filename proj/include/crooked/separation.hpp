#pragma once

#include <optional>
#include <vector>

#include "crooked/crooked_plane.hpp"
#include "crooked/vec.hpp"

namespace crooked {

struct SeparationResult {
    double distance = 0.0;
    bool attained = true;
    /// Set when the realizing pair lies outside the truncation radius of the
    /// configuration (the infimum is approached far from the vertices).
    bool asymptotic = false;
    SpacePoint witness_a;
    SpacePoint witness_b;
};

/// Euclidean distance between the closures of two crooked half-spaces.
/// Each closure is a union of two convex wedges; the minimum over the four
/// wedge pairs is solved exactly by active-set enumeration of the tiny QPs,
/// after a Fourier-Motzkin feasibility test catches intersections.
SeparationResult separation(const CrookedHalfSpace& a, const CrookedHalfSpace& b, double radius,
                            double tol = kTol);

/// Distance between two crooked planes (each four closed planar pieces:
/// two stem cones and two wings).
SeparationResult crooked_plane_separation(const CrookedPlane& a, const CrookedPlane& b,
                                          double radius, double tol = kTol);

namespace detail {

/// A closed convex polyhedral piece of E: equality and one-sided linear
/// constraints with Euclidean normals.
struct LinearConstraint {
    Vector3 n;  // Euclidean normal, unit length
    double c = 0.0;
    bool equality = false;  // n·x = c, otherwise n·x >= c
};

struct ConvexPiece {
    std::vector<LinearConstraint> constraints;
    SpacePoint anchor;  // reference point for the truncation flag

    bool contains(const SpacePoint& q, double tol) const;
};

ConvexPiece piece_of_wedge(const ConvexWedge& w);
std::vector<ConvexPiece> pieces_of_plane(const CrookedPlane& c);

/// Feasibility of a set of linear constraints in three variables via
/// Fourier-Motzkin elimination; on success returns a witness point.
std::optional<SpacePoint> fm_feasible_point(const std::vector<LinearConstraint>& cons, double tol);

struct PieceDistance {
    double distance;
    SpacePoint xa;
    SpacePoint xb;
};

/// Exact distance between two convex pieces.  Polyhedral sets attain their
/// distance, so the active-set enumeration is exhaustive.
PieceDistance piece_distance(const ConvexPiece& a, const ConvexPiece& b, double tol);

/// Euclidean projection of a point onto a convex piece (exact, by active-set
/// enumeration).  Used as a cross-check refinement.
SpacePoint project_onto(const ConvexPiece& piece, const SpacePoint& q, double tol);

}  // namespace detail

}  // namespace crooked
