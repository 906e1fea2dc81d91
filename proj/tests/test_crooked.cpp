#include <doctest.h>

#include <cmath>
#include <numbers>

#include "crooked/crooked_plane.hpp"
#include "crooked/rng.hpp"

using namespace crooked;

namespace {
constexpr double pi = std::numbers::pi;

Vector3 random_unit_spacelike(Rng& rng) {
    double v3 = rng.uniform(-4.0, 4.0);
    double th = rng.uniform(0.0, kTwoPi);
    double r = std::sqrt(1.0 + v3 * v3);
    return {r * std::cos(th), r * std::sin(th), v3};
}

LinearIsometry random_isometry(Rng& rng, double smax) {
    return LinearIsometry::rotation(rng.uniform(0.0, kTwoPi)) *
           LinearIsometry::transvection(rng.uniform(0.0, smax)) *
           LinearIsometry::rotation(rng.uniform(0.0, kTwoPi));
}

// The half-space of the model direction (1,0,0), written straight from the
// piecewise description: {x1>0, x2+x3>0} ∪ {x1=0, x2>|x3|} ∪ {x1<0, x2>x3}.
// Used as an independent oracle below.
bool model_contains(double x1, double x2, double x3) {
    if (x1 > 0) return x2 + x3 > 0;
    if (x1 < 0) return x2 - x3 > 0;
    return x2 > std::abs(x3);
}

int model_side(double x1, double x2, double x3) {
    if (model_contains(x1, x2, x3)) return +1;
    // The opposite half-space is the image under the half-turn (x1,x2) ->
    // (-x1,-x2), which maps C(u) to C(-u) = C(u).
    if (model_contains(-x1, -x2, x3)) return -1;
    return 0;
}
}  // namespace

TEST_CASE("membership on the model half-space") {
    CrookedHalfSpace h(Vector3{1, 0, 0}, SpacePoint{});
    // First piece inequalities.
    CHECK(membership(SpacePoint{1, 5, 0}, h) == Membership::InHalfSpace);
    // Future timelike over the vertex sits inside the stem, i.e. on the
    // crooked plane itself.
    CHECK(membership(SpacePoint{0, 0, 1}, h) == Membership::OnCrookedPlane);
    // A point of the negative stem boundary.
    CHECK(membership(SpacePoint{0, 1, 1}, h) == Membership::OnCrookedPlane);
    // The spacelike quadrant gluing the two open pieces.
    CHECK(membership(SpacePoint{0, 5, 0}, h) == Membership::InHalfSpace);
    CHECK(membership(SpacePoint{0, -5, 0}, h) == Membership::InOppositeHalfSpace);
    // Deep in the third piece.
    CHECK(membership(SpacePoint{-1, 5, 0}, h) == Membership::InHalfSpace);
    CHECK(membership(SpacePoint{-1, -5, 0}, h) == Membership::InOppositeHalfSpace);
    // Wings.
    CHECK(membership(SpacePoint{2, -1, 1}, h) == Membership::OnCrookedPlane);
    CHECK(membership(SpacePoint{-2, 1, 1}, h) == Membership::OnCrookedPlane);
    // p + H_u lies in the half-space (the defining anchor).
    CHECK(membership(SpacePoint{0.3, 0, 2}, h) == Membership::InHalfSpace);
}

TEST_CASE("membership agrees with the explicit model on a dense grid") {
    CrookedHalfSpace h(Vector3{1, 0, 0}, SpacePoint{});
    const int n = 35;
    int checked = 0;
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            for (int c = 0; c < n; ++c) {
                double x1 = -3.4 + 6.8 * a / (n - 1);
                double x2 = -3.4 + 6.8 * b / (n - 1);
                double x3 = -3.4 + 6.8 * c / (n - 1);
                // Stay off the branch boundaries so the oracle is unambiguous.
                if (std::abs(x1) < 1e-6 && a != (n - 1) / 2) continue;
                if (std::abs(x2 + x3) < 1e-6 || std::abs(x2 - x3) < 1e-6) continue;
                if (std::abs(x1) < 1e-6 && std::abs(x2) - std::abs(x3) < 1e-6) continue;
                int expect = model_side(x1, x2, x3);
                Membership m = membership(SpacePoint{x1, x2, x3}, h);
                int got = m == Membership::InHalfSpace ? +1
                          : m == Membership::InOppositeHalfSpace ? -1
                                                                 : 0;
                CHECK(got == expect);
                ++checked;
            }
    CHECK(checked > 20000);
}

TEST_CASE("membership trichotomy and direction flip") {
    Rng rng(53);
    for (int k = 0; k < 100000; ++k) {
        Vector3 u = random_unit_spacelike(rng);
        SpacePoint p{rng.uniform(-3, 3), rng.uniform(-3, 3), rng.uniform(-3, 3)};
        SpacePoint q{rng.uniform(-8, 8), rng.uniform(-8, 8), rng.uniform(-8, 8)};
        CrookedHalfSpace hp(u, p, 1e-7);
        CrookedHalfSpace hn(-u, p, 1e-7);
        Membership a = membership(q, hp);
        Membership b = membership(q, hn);
        switch (a) {
            case Membership::InHalfSpace:
                CHECK(b == Membership::InOppositeHalfSpace);
                break;
            case Membership::InOppositeHalfSpace:
                CHECK(b == Membership::InHalfSpace);
                break;
            case Membership::OnCrookedPlane:
                CHECK(b == Membership::OnCrookedPlane);
                break;
        }
    }
}

TEST_CASE("closure wedges") {
    CrookedHalfSpace h(Vector3{1, 0, 0}, SpacePoint{});
    auto wedges = closure_wedges(h);
    // W1 = {x1 >= 0, x2 + x3 >= 0}: B(x, x^+) <= 0 with x^+ = (0,-1,1).
    CHECK(wedges[0].contains(SpacePoint{2, 1, -0.5}));
    CHECK(!wedges[0].contains(SpacePoint{-1, 5, 0}));
    CHECK(wedges[0].contains(SpacePoint{0, 0, 0}));
    // W2 = {x1 <= 0, x2 - x3 >= 0}: B(x, x^-) >= 0 with x^- = (0,1,1).
    CHECK(wedges[1].contains(SpacePoint{-2, 1, 0.5}));
    CHECK(!wedges[1].contains(SpacePoint{-2, 0, 1}));

    Rng rng(59);
    for (int k = 0; k < 20000; ++k) {
        Vector3 u = random_unit_spacelike(rng);
        SpacePoint p{rng.uniform(-2, 2), rng.uniform(-2, 2), rng.uniform(-2, 2)};
        CrookedHalfSpace hs(u, p, 1e-7);
        auto w = closure_wedges(hs);
        SpacePoint q{rng.uniform(-8, 8), rng.uniform(-8, 8), rng.uniform(-8, 8)};
        Membership m = membership(q, hs);
        if (m == Membership::InHalfSpace) CHECK((w[0].contains(q) || w[1].contains(q)));
        // Strict interior points of a wedge are open-half-space members.
        for (const auto& wedge : w) {
            Vector3 x = q - wedge.apex;
            bool strict = true;
            for (const auto& cst : wedge.constraints)
                if (static_cast<double>(cst.sense) * bform(x, cst.normal) <= 1e-6) strict = false;
            if (strict) CHECK(m == Membership::InHalfSpace);
        }
    }
}

TEST_CASE("transport") {
    CrookedHalfSpace h(Vector3{1, 0, 0}, SpacePoint{});
    SUBCASE("translation moves the vertex") {
        AffineIsometry t{LinearIsometry::identity(), Vector3{1, 2, 3}};
        CrookedHalfSpace moved = transform(t, h);
        CHECK(euclid_norm(moved.u - h.u) <= 1e-12);
        CHECK(rho(moved.p, SpacePoint{1, 2, 3}) <= 1e-12);
    }
    SUBCASE("rotation turns the direction") {
        AffineIsometry r{LinearIsometry::rotation(pi / 2), Vector3{}};
        CrookedHalfSpace moved = transform(r, h);
        CHECK(euclid_norm(moved.u - Vector3{0, 1, 0}) <= 1e-12);
    }
    SUBCASE("membership equivariance under random isometries") {
        Rng rng(61);
        for (int k = 0; k < 1000; ++k) {
            AffineIsometry iso{random_isometry(rng, 2.0),
                               Vector3{rng.uniform(-4, 4), rng.uniform(-4, 4), rng.uniform(-4, 4)}};
            Vector3 u = random_unit_spacelike(rng);
            SpacePoint p{rng.uniform(-2, 2), rng.uniform(-2, 2), rng.uniform(-2, 2)};
            CrookedHalfSpace hs(u, p, 1e-7);
            CrookedHalfSpace moved = transform(iso, hs);
            for (int s = 0; s < 10; ++s) {
                SpacePoint q{rng.uniform(-6, 6), rng.uniform(-6, 6), rng.uniform(-6, 6)};
                CHECK(membership(q, hs) == membership(iso.apply(q), moved));
            }
        }
    }
}

TEST_CASE("angle of a crooked half-space") {
    CHECK(angle(CrookedHalfSpace(Vector3{std::numbers::sqrt2, 0, 1}, SpacePoint{})) ==
          doctest::Approx(pi / 2));
    CHECK(angle(CrookedHalfSpace(Vector3{2, 0, std::sqrt(3.0)}, SpacePoint{})) ==
          doctest::Approx(pi / 3));
    CHECK(angle(CrookedHalfSpace(Vector3{1, 0, 0}, SpacePoint{})) == doctest::Approx(pi));
}
