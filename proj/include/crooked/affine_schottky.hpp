#pragma once

#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "crooked/crooked_plane.hpp"
#include "crooked/schottky.hpp"
#include "crooked/separation.hpp"
#include "crooked/word.hpp"

namespace crooked {

/// Affine Schottky configuration: m generators h_i pairing 2m crooked
/// half-spaces, h_i(H_i^-) = E - closure(H_i^+).
struct AffineSchottkyConfig {
    int m = 0;
    std::vector<AffineIsometry> generators;       // h_1 .. h_m
    std::vector<CrookedHalfSpace> hs_plus;        // H_i^+
    std::vector<CrookedHalfSpace> hs_minus;       // H_i^-
    bool validated = false;

    const CrookedHalfSpace& half_space(const GeneratorIndex& l) const {
        return l.sign > 0 ? hs_plus.at(l.i - 1) : hs_minus.at(l.i - 1);
    }
    AffineIsometry generator(const GeneratorIndex& l) const {
        const AffineIsometry& h = generators.at(l.i - 1);
        return l.sign > 0 ? h : h.inverse();
    }
    std::vector<GeneratorIndex> alphabet() const {
        std::vector<GeneratorIndex> out;
        for (int i = 1; i <= m; ++i) {
            out.emplace_back(i, +1);
            out.emplace_back(i, -1);
        }
        return out;
    }

    /// Linear Schottky configuration underneath: linear parts plus the
    /// intervals carried by the half-space directions.
    SchottkyConfig linear_config() const;

    /// Largest vertex norm; sets the scale for separation truncation.
    double scale() const;
};

/// The crooked polyhedron X = E minus the union of the 2m closed
/// half-spaces.
struct CrookedPolyhedron {
    const AffineSchottkyConfig* cfg;
    explicit CrookedPolyhedron(const AffineSchottkyConfig& c) : cfg(&c) {}
};

/// Left-to-right composition of the word's generators (the first letter is
/// the leftmost factor).
AffineIsometry word_to_isometry(const AffineSchottkyConfig& cfg, const Word& w);

struct PairSeparation {
    GeneratorIndex a;
    GeneratorIndex b;
    double distance = 0.0;
    bool asymptotic = false;
};

struct ValidationReport {
    bool ok = false;
    double max_pairing_residual = 0.0;
    std::vector<PairSeparation> halfspace_separations;  // the C(2m,2) closure pairs
    double min_halfspace_separation = 0.0;
    std::vector<PairSeparation> star_separations;  // the 2m(2m-1) pairs behind delta0
    double delta0 = 0.0;
    double theta0 = 0.0;
    double eps0 = 0.0;
    bool x_nonempty = false;
    SpacePoint x_witness;
    SchottkyReport linear_report;
    std::vector<std::string> failures;
};

/// The fundamental-domain hypotheses as finite checks: pairing residuals
/// (L(h_i) u_i^- = -u_i^+ and h_i(p_i^-) = p_i^+), pairwise separation of
/// the 2m closures, the star-neighborhood bound delta0, and the linear
/// Schottky configuration underneath.  Mathematical failures are reported,
/// never thrown.  On success the configuration is marked validated.
ValidationReport validate(AffineSchottkyConfig& cfg, double tol = kTol);

struct InX {};
struct OnBoundary {};
struct InHalfSpaceOf {
    GeneratorIndex index;
};
using XLocation = std::variant<InX, OnBoundary, InHalfSpaceOf>;

/// Locate q against X: strictly inside, on a boundary crooked plane, or in
/// the unique open half-space containing it.
XLocation x_contains(const AffineSchottkyConfig& cfg, const SpacePoint& q, double tol = kTol);

struct LocateResult {
    Word word;           // gamma with gamma^{-1}(q) in the closure of X
    SpacePoint final;    // gamma^{-1}(q)
    bool on_boundary = false;
    int steps = 0;
};

struct NotLocated {
    Word partial_word;
    SpacePoint last_point;
    int steps = 0;
};

/// Point-location descent: pull q back through the half-space containing it
/// until the closure of X is reached.  The emitted word automatically
/// satisfies the nested-sequence side condition (no (i,-j) after (i,j)).
std::variant<LocateResult, NotLocated> locate(const AffineSchottkyConfig& cfg, const SpacePoint& q,
                                              int max_steps, double tol = kTol);

struct Tile {
    Word word;
    AffineIsometry gamma;
    std::vector<CrookedHalfSpace> faces;  // transported families gamma H_i^j
};

/// All tiles gamma(closure of X) for reduced words of length <= depth,
/// ordered length-lexicographically.
std::vector<Tile> enumerate_tiles(const AffineSchottkyConfig& cfg, int depth);

struct NestedTerm {
    GeneratorIndex index;          // (i_k, j_k)
    Word gamma_word;               // gamma_k = first k letters
    AffineIsometry gamma;          // gamma_k
    CrookedHalfSpace half_space;   // H_k = gamma_k H_{i_k}^{j_k}
};

struct NestedSequence {
    AffineIsometry pre;        // gamma with q' = pre(q), ensuring Phi(H_0) < pi/2
    SpacePoint adjusted_point; // q'
    std::vector<NestedTerm> terms;
};

/// The nested half-space sequence witnessing a point that failed to locate:
/// H_0 ⊃ H_1 ⊃ ... all containing the (adjusted) point.  Errors out if the
/// descent terminates, i.e. the point was locatable after all.
NestedSequence nested_sequence(const AffineSchottkyConfig& cfg, const SpacePoint& q, int terms,
                               double tol = kTol);

struct WordAudit {
    Word word;
    bool cyclically_reduced = false;
    std::optional<double> guarantee;   // eps0, or eps0 / K for the tail form
    int k1 = 0;                        // leading run length (tail form only)
    int tail_exponent = 0;             // trailing (i0,-j0) run length
    double distortion = 1.0;           // K used, 1 when cyclically reduced
    double actual = 0.0;               // eigen-computed hyperbolicity
    bool guarantee_holds = true;
};

/// Hyperbolicity audit per word: cyclically reduced words carry the eps0
/// guarantee; words of the special tail form (i0,j0)^{k1} g' (i0,-j0)^t get
/// eps0 / K with K the distortion bound of (i0,j0)^{k1}.  Every guarantee is
/// cross-checked against the actual eigen-data.
std::vector<WordAudit> hyperbolicity_audit(const AffineSchottkyConfig& cfg,
                                           const std::vector<Word>& words, double tol = kTol);

/// The two-generator example: intervals of length pi/3 at gaps pi/6,
/// generators translated along their axes by tau.
AffineSchottkyConfig two_generator_example(double tau = 4.0);

/// General builder: one (A_i^-, A_i^+) interval pair per generator, all 2m
/// intervals pairwise disjoint.  Generator i is the canonical interval
/// pairing translated by tau_i along its own axis direction x0(g_i), with
/// the half-space vertices at ∓ tau_i / 2 on the axis, so the vertex
/// pairing h_i(p_i^-) = p_i^+ holds by construction.  Whether the given
/// tau_i separate the half-spaces is for validate to decide.
AffineSchottkyConfig axis_translated_config(
    const std::vector<std::pair<Interval, Interval>>& interval_pairs,
    const std::vector<double>& taus);

}  // namespace crooked
