#pragma once

#include <optional>
#include <string>
#include <vector>

#include "crooked/circle.hpp"
#include "crooked/frame.hpp"
#include "crooked/isometry.hpp"
#include "crooked/word.hpp"

namespace crooked {

class Rng;

/// Half-plane H_v of the hyperbolic plane, encoded by its unit spacelike
/// vector: H_v = P({u timelike future | B(u,v) > 0}).
struct HalfPlane {
    Vector3 v;

    explicit HalfPlane(const Vector3& direction) : v(direction) {
        if (!is_unit_spacelike(v)) throw std::domain_error("HalfPlane: direction not unit spacelike");
    }
};

/// Membership of a future timelike direction in the open half-plane.
bool half_plane_contains(const HalfPlane& h, const Vector3& u, double tol = kTol);

/// Schottky configuration: m >= 2 hyperbolic generators pairing disjoint
/// intervals, g_i(A_i^-) = S^1 - closure(A_i^+).
struct SchottkyConfig {
    int m = 0;
    std::vector<LinearIsometry> generators;  // g_1 .. g_m
    std::vector<Interval> a_plus;
    std::vector<Interval> a_minus;

    const Interval& interval(const GeneratorIndex& l) const {
        return l.sign > 0 ? a_plus.at(l.i - 1) : a_minus.at(l.i - 1);
    }
    LinearIsometry generator(const GeneratorIndex& l) const {
        const LinearIsometry& g = generators.at(l.i - 1);
        return l.sign > 0 ? g : g.inverse();
    }
    LinearIsometry word_isometry(const Word& w) const {
        LinearIsometry g;
        for (const auto& l : w.letters()) g = g * generator(l);
        return g;
    }
    std::vector<GeneratorIndex> alphabet() const {
        std::vector<GeneratorIndex> out;
        for (int i = 1; i <= m; ++i) {
            out.emplace_back(i, +1);
            out.emplace_back(i, -1);
        }
        return out;
    }
};

/// The transvection along the common perpendicular of the two boundary
/// geodesics, translating by d = arccosh|B(v^-, v^+)| and oriented so that
/// g(v^-) = -v^+.  This realizes the interval pairing exactly.
LinearIsometry build_generator(const Interval& a_minus, const Interval& a_plus, double tol = kTol);

struct SchottkyReport {
    bool ok = false;
    double theta0 = 0.0;            // minimum angular gap between interval closures
    double eps0 = 0.0;              // 2 sin(theta0 / 2)
    double smallest_interval = 0.0; // min interval length
    bool small_interval_guarantee = false;  // some interval shorter than pi/2 (needs m >= 2)
    double max_pairing_residual = 0.0;
    /// Discreteness follows from ping-pong; no finite test distinguishes
    /// discrete from indiscrete, so it is recorded as implied, not checked.
    bool discreteness_implied = false;
    std::vector<std::string> failures;
};

/// Checks interval disjointness, the endpoint pairing of each generator,
/// the fixed-point memberships x^+(g_i) in A_i^+ / x^-(g_i) in A_i^-, and
/// the small-interval guarantee.  Failures are reported, never thrown.
SchottkyReport verify_schottky(const SchottkyConfig& cfg, double tol = kTol);

/// Fundamental polygon Delta: complement of the 2m half-planes spanned by
/// the intervals.
struct FundamentalPolygon {
    std::vector<Vector3> normals;  // unit spacelike, one per half-plane

    static FundamentalPolygon from_config(const SchottkyConfig& cfg);
};

/// Strict membership in the open polygon: B(u, v) < 0 against every normal.
bool delta_contains(const FundamentalPolygon& poly, const Vector3& u, double tol = kTol);

/// Sample a future timelike direction of Delta by rejection from the unit
/// disk section.
Vector3 sample_delta(const FundamentalPolygon& poly, Rng& rng, double tol = kTol);

struct PingPongResult {
    bool passed = false;
    bool vacuous = false;  // empty word
    int samples_checked = 0;
};

/// Ping-pong invariant: the image of Delta under a reduced word lies in the
/// half-plane of the word's first letter (checked for every suffix of the
/// word, which is the induction the disjointness proof runs on).
PingPongResult pingpong_check(const SchottkyConfig& cfg, const Word& w, int samples, Rng& rng,
                              double tol = kTol);

/// eps0-hyperbolicity criterion: cyclically reduced words are guaranteed
/// 2 sin(theta0/2)-hyperbolic; other words get no guarantee here.
std::optional<double> word_hyperbolicity_criterion(const SchottkyConfig& cfg, const Word& w,
                                                   double tol = kTol);

struct HyperbolicLocateResult {
    Word word;
    Vector3 final_direction;
};

/// Empirical completeness on the hyperbolic plane: descend a future timelike
/// direction into the polygon closure.  Fails (nullopt) only after
/// max_steps, which the covering property rules out.
std::optional<HyperbolicLocateResult> locate_hyperbolic(const SchottkyConfig& cfg, Vector3 u,
                                                        int max_steps, double tol = kTol);

}  // namespace crooked
