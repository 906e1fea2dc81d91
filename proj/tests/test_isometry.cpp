#include <doctest.h>

#include <cmath>
#include <numbers>

#include "crooked/isometry.hpp"
#include "crooked/rng.hpp"

using namespace crooked;

namespace {
constexpr double pi = std::numbers::pi;

LinearIsometry random_isometry(Rng& rng, double smax) {
    return LinearIsometry::rotation(rng.uniform(0.0, kTwoPi)) *
           LinearIsometry::transvection(rng.uniform(0.0, smax)) *
           LinearIsometry::rotation(rng.uniform(0.0, kTwoPi));
}
}  // namespace

TEST_CASE("compose, inverse, apply") {
    Rng rng(3);
    for (int k = 0; k < 200; ++k) {
        LinearIsometry g = random_isometry(rng, 2.5);
        CHECK(isometry_residual(g) <= 1e-9);
        CHECK(isometry_residual(g.inverse()) <= 1e-9);
        LinearIsometry e = g * g.inverse();
        for (int r = 0; r < 3; ++r)
            for (int c = 0; c < 3; ++c) CHECK(std::abs(e(r, c) - (r == c ? 1 : 0)) <= 1e-9);
    }
    Vector3 rot = LinearIsometry::rotation(pi / 2).apply(Vector3{1, 0, 0});
    CHECK(euclid_norm(rot - Vector3{0, 1, 0}) <= 1e-12);

    AffineIsometry h{LinearIsometry::identity(), Vector3{1, 2, 3}};
    SpacePoint image = h.apply(SpacePoint{0, 0, 0});
    CHECK(rho(image, SpacePoint{1, 2, 3}) <= 1e-12);
    // Vectors ignore the translation.
    CHECK(euclid_norm(h.apply(Vector3{1, 0, 0}) - Vector3{1, 0, 0}) <= 1e-12);

    AffineIsometry a{LinearIsometry::rotation(0.3), Vector3{0.5, -1, 2}};
    AffineIsometry b{LinearIsometry::transvection(0.7), Vector3{2, 0.25, -1}};
    SpacePoint q{0.1, 0.2, 0.3};
    CHECK(rho((a * b).apply(q), a.apply(b.apply(q))) <= 1e-12);
    CHECK(rho((a * a.inverse()).apply(q), q) <= 1e-12);
}

TEST_CASE("classification by trace") {
    CHECK(classify(LinearIsometry::transvection(1.0)) == IsometryClass::Hyperbolic);
    CHECK(LinearIsometry::transvection(1.0).trace() == doctest::Approx(1 + 2 * std::cosh(1.0)));
    CHECK(classify(LinearIsometry::rotation(pi / 2)) == IsometryClass::Elliptic);
    CHECK(classify(LinearIsometry::identity()) == IsometryClass::Identity);
}

TEST_CASE("hyperbolic eigen-data of a transvection") {
    HyperbolicData d = hyperbolic_data(LinearIsometry::transvection(1.0));
    CHECK(d.lambda == doctest::Approx(std::exp(-1.0)));
    CHECK(euclid_norm(d.xminus - Vector3{0, -1, 1}) <= 1e-9);
    CHECK(euclid_norm(d.xplus - Vector3{0, 1, 1}) <= 1e-9);
    CHECK(euclid_norm(d.x0 - Vector3{-1, 0, 0}) <= 1e-9);
    CHECK(d.hyperbolicity() == doctest::Approx(2.0));
}

TEST_CASE("hyperbolic eigen-data of the interval generator") {
    double s = 2.0 * std::sqrt(2.0);
    LinearIsometry g;
    g.m = {3, 0, s, 0, 1, 0, s, 0, 3};
    HyperbolicData d = hyperbolic_data(g);
    CHECK(d.lambda == doctest::Approx(3.0 - s));
    CHECK(euclid_norm(d.xplus - Vector3{1, 0, 1}) <= 1e-9);
    CHECK(euclid_norm(d.xminus - Vector3{-1, 0, 1}) <= 1e-9);
    CHECK(d.hyperbolicity() == doctest::Approx(2.0));
    // Direct eigenvector check: g (1,0,1) = (3 + 2 sqrt 2)(1,0,1).
    Vector3 img = g.apply(Vector3{1, 0, 1});
    CHECK(euclid_norm(img - (3.0 + s) * Vector3{1, 0, 1}) <= 1e-9);
    CHECK_THROWS_AS(hyperbolic_data(LinearIsometry::rotation(1.0)), std::domain_error);
}

TEST_CASE("conjugation equivariance of eigen-data") {
    Rng rng(17);
    for (int k = 0; k < 100; ++k) {
        LinearIsometry g = LinearIsometry::transvection(rng.uniform(0.3, 2.0));
        LinearIsometry psi = random_isometry(rng, 1.5);
        HyperbolicData d = hyperbolic_data(psi * g * psi.inverse());
        HyperbolicData base = hyperbolic_data(g);
        CirclePoint expect_p = circle_action(psi, base.phi_plus());
        CirclePoint expect_m = circle_action(psi, base.phi_minus());
        CHECK(chord_distance(d.phi_plus(), expect_p) <= 1e-8);
        CHECK(chord_distance(d.phi_minus(), expect_m) <= 1e-8);
    }
}

TEST_CASE("circle action") {
    double s = 0.8;
    CirclePoint fixed(pi / 2);
    CHECK(chord_distance(circle_action(LinearIsometry::transvection(s), fixed), fixed) <= 1e-12);
    CirclePoint moved = circle_action(LinearIsometry::transvection(s), CirclePoint(0.0));
    Vector3 expect{1.0 / std::cosh(s), std::tanh(s), 1.0};
    CHECK(euclid_norm(moved.u() - expect) <= 1e-12);
    CirclePoint rot = circle_action(LinearIsometry::rotation(0.4), CirclePoint(1.1));
    CHECK(rot.phi == doctest::Approx(1.5));
}

TEST_CASE("cartan decomposition") {
    CartanFactors rot = cartan_decompose(LinearIsometry::rotation(0.7));
    CHECK(rot.theta == doctest::Approx(0.7));
    CHECK(rot.s == doctest::Approx(0.0));
    CHECK(rot.theta_prime == doctest::Approx(0.0));

    CartanFactors tv = cartan_decompose(LinearIsometry::transvection(1.3));
    CHECK(tv.s == doctest::Approx(1.3));
    CHECK(std::abs(tv.theta) <= 1e-9);
    CHECK(std::abs(tv.theta_prime) <= 1e-9);

    LinearIsometry psi = LinearIsometry::rotation(pi / 3) * LinearIsometry::transvection(2.0) *
                         LinearIsometry::rotation(pi / 7);
    CartanFactors f = cartan_decompose(psi);
    LinearIsometry back = f.reassemble();
    for (int k = 0; k < 9; ++k) CHECK(std::abs(back.m[k] - psi.m[k]) <= 1e-9);
    // s is the hyperbolic displacement of the origin.
    CHECK(std::cosh(f.s) == doctest::Approx(psi(2, 2)));
}

TEST_CASE("distortion bound") {
    CHECK(distortion_bound(LinearIsometry::identity()) == doctest::Approx(pi / 2));
    // Fixed points of the transvection: ratio 1 within the bound.
    LinearIsometry t = LinearIsometry::transvection(1.0);
    CirclePoint a1(pi / 2), a2(-pi / 2);
    double ratio = chord_distance(circle_action(t, a1), circle_action(t, a2)) /
                   chord_distance(a1, a2);
    CHECK(ratio == doctest::Approx(1.0));
    CHECK(ratio <= distortion_bound(t));

    // Dense-ish sampling keeps the empirical ratio under e^s pi / 2.
    Rng rng(23);
    double k_bound = distortion_bound(t);
    CHECK(k_bound == doctest::Approx(std::exp(1.0) * pi / 2));
    for (int k = 0; k < 2000; ++k) {
        CirclePoint b1(rng.uniform(0.0, kTwoPi)), b2(rng.uniform(0.0, kTwoPi));
        double base = chord_distance(b1, b2);
        if (base < 1e-9) continue;
        double r = chord_distance(circle_action(t, b1), circle_action(t, b2)) / base;
        CHECK(r <= k_bound * (1 + 1e-12));
        CHECK(r >= (1 + 1e-12) / k_bound - 1e-12);
    }
}

TEST_CASE("compression") {
    Rng rng(29);
    LinearIsometry t = LinearIsometry::transvection(1.0);
    CompressionReport rep = compression_check(t, 1.0, SpacePoint{}, 2000, rng);
    CHECK(rep.eps == doctest::Approx(2.0));
    CHECK(rep.violations == 0);
    CHECK(rep.max_pullback < 1.0);

    CHECK_THROWS_AS(compression_check(LinearIsometry::identity(), 1.0, SpacePoint{}, 10, rng),
                    std::domain_error);

    // The inscribed rectangle of the model direction: sides sqrt(2) >= eps/2.
    WeakUnstableRectangle q = weak_unstable_rectangle(Vector3{1, 0, 0}, 1.0);
    CHECK(q.side_short == doctest::Approx(std::numbers::sqrt2));
    CHECK(q.side_long == doctest::Approx(std::numbers::sqrt2));
    CHECK(q.side_short >= 1.0);
}

TEST_CASE("affine compression at a moved basepoint") {
    Rng rng(31);
    for (int k = 0; k < 20; ++k) {
        LinearIsometry psi = random_isometry(rng, 1.5);
        LinearIsometry g = psi * LinearIsometry::transvection(rng.uniform(0.3, 2.5)) * psi.inverse();
        AffineIsometry h{g, Vector3{rng.uniform(-3, 3), rng.uniform(-3, 3), rng.uniform(-3, 3)}};
        SpacePoint x{rng.uniform(-3, 3), rng.uniform(-3, 3), rng.uniform(-3, 3)};
        for (double delta : {0.1, 1.0, 10.0}) {
            CompressionReport rep = compression_check(h, delta, x, 200, rng);
            CHECK(rep.violations == 0);
        }
    }
}
