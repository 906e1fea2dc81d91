#include <doctest.h>

#include <cmath>
#include <numbers>

#include "crooked/frame.hpp"
#include "crooked/rng.hpp"
#include "crooked/vec.hpp"

using namespace crooked;

namespace {
constexpr double pi = std::numbers::pi;
constexpr double rt2 = std::numbers::sqrt2;
}  // namespace

TEST_CASE("bform basics") {
    CHECK(bform({1, 0, 0}, {1, 0, 0}) == doctest::Approx(1.0));
    CHECK(bform({0, 0, 1}, {0, 0, 1}) == doctest::Approx(-1.0));
    // B(u_0, u_pi) expanded by hand: (1)(-1) + 0 - (1)(1) = -2.
    CHECK(bform(CirclePoint(0.0).u(), CirclePoint(pi).u()) == doctest::Approx(-2.0));
    // Symmetry and bilinearity spot check.
    Vector3 u{0.3, -1.2, 0.7}, v{2.0, 0.5, -0.25};
    CHECK(bform(u, v) == doctest::Approx(bform(v, u)));
    CHECK(bform(u + u, v) == doctest::Approx(2.0 * bform(u, v)));
}

TEST_CASE("causal classification") {
    CHECK(causal_class({1, 0, 0}).kind == Causal::Spacelike);
    CHECK(causal_class({1, 0, 1}).kind == Causal::Lightlike);
    auto past = causal_class({0, 0, -1});
    CHECK(past.kind == Causal::Timelike);
    CHECK(past.orientation == TimeOrientation::Past);
    CHECK_THROWS_AS(causal_class({0, 0, 0}), std::invalid_argument);
}

TEST_CASE("lorentz cross product") {
    // Defining identity against e3.
    Vector3 e1{1, 0, 0}, e2{0, 1, 0}, e3{0, 0, 1};
    Vector3 c = lorentz_cross(e1, e2);
    CHECK(c.x1 == doctest::Approx(0.0));
    CHECK(c.x2 == doctest::Approx(0.0));
    CHECK(c.x3 == doctest::Approx(-1.0));
    CHECK(bform(c, e3) == doctest::Approx(det3(e1, e2, e3)));

    Vector3 u{0.4, -0.9, 1.7};
    Vector3 self = lorentz_cross(u, u);
    CHECK(euclid_norm(self) == doctest::Approx(0.0));

    Vector3 w = lorentz_cross(CirclePoint(pi / 2).u(), CirclePoint(-pi / 2).u());
    CHECK(w.x1 == doctest::Approx(2.0));
    CHECK(w.x2 == doctest::Approx(0.0));
    CHECK(w.x3 == doctest::Approx(0.0));
}

TEST_CASE("cross identity on random triples") {
    Rng rng(7);
    for (int k = 0; k < 10000; ++k) {
        Vector3 u{rng.uniform(-3, 3), rng.uniform(-3, 3), rng.uniform(-3, 3)};
        Vector3 v{rng.uniform(-3, 3), rng.uniform(-3, 3), rng.uniform(-3, 3)};
        Vector3 w{rng.uniform(-3, 3), rng.uniform(-3, 3), rng.uniform(-3, 3)};
        double lhs = bform(lorentz_cross(u, v), w);
        double rhs = det3(u, v, w);
        CHECK(std::abs(lhs - rhs) <= 1e-9 * (1.0 + std::abs(rhs)));
    }
}

TEST_CASE("null frame of coordinate directions") {
    NullFrame f = null_frame({1, 0, 0});
    CHECK(euclid_norm(f.xminus - Vector3{0, 1, 1}) == doctest::Approx(0.0));
    CHECK(euclid_norm(f.xplus - Vector3{0, -1, 1}) == doctest::Approx(0.0));
    CHECK(det3(f.xminus, f.xplus, f.x0) > 0.0);

    // v = (2, 0, sqrt 3): B(u_phi, v) = 2 cos phi - sqrt 3 vanishes at ±pi/6.
    NullFrame g = null_frame({2, 0, std::sqrt(3.0)});
    CHECK(g.phi_plus().phi == doctest::Approx(canonical_angle(-pi / 6)));
    CHECK(g.phi_minus().phi == doctest::Approx(pi / 6));

    NullFrame h = null_frame({rt2, 0, 1});
    CHECK(h.phi_plus().phi == doctest::Approx(canonical_angle(-pi / 4)));
    CHECK(h.phi_minus().phi == doctest::Approx(pi / 4));

    CHECK_THROWS_AS(null_frame({2, 0, 0}), std::domain_error);   // not unit
    CHECK_THROWS_AS(null_frame({0, 0, 1}), std::domain_error);   // not spacelike
}

TEST_CASE("hyperbolicity and the closed form") {
    CHECK(hyperbolicity({1, 0, 0}) == doctest::Approx(2.0));
    CHECK(hyperbolicity({rt2, 0, 1}) == doctest::Approx(rt2));
    // The eps-spacelike set for eps = 2 is the unit ball slice.
    CHECK(eps_spacelike_radius(2.0) == doctest::Approx(1.0));

    Rng rng(11);
    for (int k = 0; k < 10000; ++k) {
        double v3 = rng.uniform(-4.0, 4.0);
        double th = rng.uniform(0.0, kTwoPi);
        double r = std::sqrt(1.0 + v3 * v3);
        Vector3 v{r * std::cos(th), r * std::sin(th), v3};
        CHECK(std::abs(hyperbolicity(v) - hyperbolicity_closed_form(v)) <= 1e-9);
    }
}

TEST_CASE("chord distance") {
    CHECK(chord_distance(CirclePoint(0.0), CirclePoint(pi)) == doctest::Approx(2.0));
    CHECK(chord_distance(CirclePoint(0.0), CirclePoint(0.0)) == doctest::Approx(0.0));
    CHECK(chord_distance(CirclePoint(0.0), CirclePoint(pi / 2)) == doctest::Approx(rt2));
    // Matches the Euclidean distance of the section points.
    CirclePoint a(1.1), b(4.0);
    CHECK(chord_distance(a, b) == doctest::Approx(euclid_norm(a.u() - b.u())));
}

TEST_CASE("spacelike vector of an interval") {
    Vector3 v = spacelike_from_interval(Interval(-pi / 4, pi / 4));
    CHECK(euclid_norm(v - Vector3{rt2, 0, 1}) == doctest::Approx(0.0).epsilon(1e-12));

    // Half-width alpha gives (csc alpha, 0, cot alpha).
    Vector3 w = spacelike_from_interval(Interval(-pi / 6, pi / 6));
    CHECK(euclid_norm(w - Vector3{2, 0, std::sqrt(3.0)}) == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(bform(w, w) == doctest::Approx(1.0));

    Vector3 z = spacelike_from_interval(Interval(3 * pi / 4, 5 * pi / 4));
    CHECK(euclid_norm(z - Vector3{-rt2, 0, 1}) == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("interval round trip") {
    Rng rng(13);
    for (int k = 0; k < 10000; ++k) {
        double lo = rng.uniform(0.0, kTwoPi);
        double len = rng.uniform(1e-3, kTwoPi - 1e-3);
        Interval a(lo, lo + len);
        Interval b = interval_of_spacelike(spacelike_from_interval(a));
        CHECK(angular_distance(a.lo(), b.lo()) <= 1e-9);
        CHECK(angular_distance(a.hi(), b.hi()) <= 1e-9);
    }
}

TEST_CASE("interval gaps") {
    Interval a(0.0, 1.0), b(1.5, 2.0);
    CHECK(a.gap_to(b) == doctest::Approx(0.5));
    CHECK(b.gap_to(a) == doctest::Approx(0.5));
    Interval c(0.5, 1.7);
    CHECK(a.gap_to(c) == doctest::Approx(0.0));  // overlap
    Interval wrap(6.0, 7.0);  // crosses the seam; ends at 7 - 2*pi
    CHECK(wrap.gap_to(b) == doctest::Approx(1.5 - (7.0 - kTwoPi)).epsilon(1e-9));
    CHECK_THROWS_AS(Interval(1.0, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(Interval(0.0, 7.0), std::invalid_argument);
}

TEST_CASE("interval gap against an endpoint oracle") {
    // For disjoint closed arcs the gap is realized at endpoints; overlap is
    // witnessed by an endpoint of one arc inside the other.
    Rng rng(19);
    auto closed_contains = [](const Interval& a, double phi) {
        double d = canonical_angle(phi - a.lo());
        return d <= a.length() + 1e-12;
    };
    for (int k = 0; k < 20000; ++k) {
        double lo1 = rng.uniform(0.0, kTwoPi), len1 = rng.uniform(0.05, 3.0);
        double lo2 = rng.uniform(0.0, kTwoPi), len2 = rng.uniform(0.05, 3.0);
        Interval a(lo1, lo1 + len1), b(lo2, lo2 + len2);
        bool overlap = closed_contains(a, b.lo()) || closed_contains(a, b.hi()) ||
                       closed_contains(b, a.lo()) || closed_contains(b, a.hi());
        double expect = 0.0;
        if (!overlap) {
            expect = std::min(std::min(angular_distance(a.lo(), b.hi()),
                                       angular_distance(a.hi(), b.lo())),
                              std::min(angular_distance(a.lo(), b.lo()),
                                       angular_distance(a.hi(), b.hi())));
        }
        CHECK(a.gap_to(b) == doctest::Approx(expect).epsilon(1e-9));
        CHECK(b.gap_to(a) == doctest::Approx(expect).epsilon(1e-9));
    }
}

TEST_CASE("angle canonicalization edge cases") {
    CHECK(canonical_angle(0.0) == 0.0);
    CHECK(canonical_angle(kTwoPi) == 0.0);
    CHECK(canonical_angle(-1e-18) == 0.0);
    CHECK(canonical_angle(-pi) == doctest::Approx(pi));
    CHECK(canonical_angle(5 * kTwoPi + 1.25) == doctest::Approx(1.25));
    CHECK(angular_distance(0.1, kTwoPi - 0.1) == doctest::Approx(0.2));
}

TEST_CASE("point and vector arithmetic stays typed") {
    SpacePoint p{1, 2, 3}, q{0, 0, 1};
    Vector3 d = p - q;
    CHECK(d.x3 == doctest::Approx(2.0));
    SpacePoint r = q + d;
    CHECK(rho(r, p) == doctest::Approx(0.0));
    CHECK_THROWS_AS(Vector3(0.0, 0.0, std::nan("")), std::invalid_argument);
}
