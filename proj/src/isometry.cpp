#include "crooked/isometry.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "crooked/rng.hpp"

namespace crooked {

double isometry_residual(const LinearIsometry& g) {
    // g^T J g = J entrywise, measured relative to the entry scale so that
    // long products (entries far above 1) are judged fairly.
    double scale = 0.0;
    for (double e : g.m) scale = std::max(scale, std::abs(e));
    double r = 0.0;
    const double J[3] = {1.0, 1.0, -1.0};
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = 0; j < 3; ++j) {
            double s = 0.0;
            for (std::size_t k = 0; k < 3; ++k) s += g(k, i) * J[k] * g(k, j);
            double target = (i == j) ? J[i] : 0.0;
            r = std::max(r, std::abs(s - target) / (1.0 + scale * scale));
        }
    double det = det3(g.col(0), g.col(1), g.col(2));
    r = std::max(r, std::abs(det - 1.0) / (1.0 + scale * scale * scale));
    if (g(2, 2) <= 0.0) r = std::max(r, 1.0);  // time orientation flipped
    return r;
}

bool is_linear_isometry(const LinearIsometry& g, double tol) { return isometry_residual(g) <= tol; }

IsometryClass classify(const LinearIsometry& g, double tol) {
    double off = 0.0;
    LinearIsometry id;
    for (std::size_t k = 0; k < 9; ++k) off = std::max(off, std::abs(g.m[k] - id.m[k]));
    if (off <= tol) return IsometryClass::Identity;
    double t = g.trace();
    if (t > 3.0 + tol) return IsometryClass::Hyperbolic;
    if (t < 3.0 - tol) return IsometryClass::Elliptic;
    return IsometryClass::Parabolic;
}

namespace {

// Null space direction of (g - a I) via the largest cross product of rows.
Vector3 eigenvector_for(const LinearIsometry& g, double a) {
    Vector3 r0 = g.row(0) - Vector3{a, 0, 0};
    Vector3 r1 = g.row(1) - Vector3{0, a, 0};
    Vector3 r2 = g.row(2) - Vector3{0, 0, a};
    Vector3 c01{r0.x2 * r1.x3 - r0.x3 * r1.x2, r0.x3 * r1.x1 - r0.x1 * r1.x3,
                r0.x1 * r1.x2 - r0.x2 * r1.x1};
    Vector3 c02{r0.x2 * r2.x3 - r0.x3 * r2.x2, r0.x3 * r2.x1 - r0.x1 * r2.x3,
                r0.x1 * r2.x2 - r0.x2 * r2.x1};
    Vector3 c12{r1.x2 * r2.x3 - r1.x3 * r2.x2, r1.x3 * r2.x1 - r1.x1 * r2.x3,
                r1.x1 * r2.x2 - r1.x2 * r2.x1};
    Vector3 best = c01;
    if (euclid_dot(c02, c02) > euclid_dot(best, best)) best = c02;
    if (euclid_dot(c12, c12) > euclid_dot(best, best)) best = c12;
    return best;
}

Vector3 to_circle(const Vector3& w) {
    Vector3 v = w;
    if (v.x3 < 0) v = -v;
    return {v.x1 / v.x3, v.x2 / v.x3, 1.0};
}

}  // namespace

HyperbolicData hyperbolic_data(const LinearIsometry& g, double tol) {
    if (classify(g, tol) != IsometryClass::Hyperbolic)
        throw std::domain_error("hyperbolic_data: element is not hyperbolic");
    // Characteristic polynomial (x - 1)(x^2 - (T - 1) x + 1) with T = trace.
    double q = 0.5 * (g.trace() - 1.0);
    double mu = q + std::sqrt(std::max(q * q - 1.0, 0.0));  // eigenvalue > 1
    HyperbolicData d;
    d.lambda = 1.0 / mu;
    d.xplus = to_circle(eigenvector_for(g, mu));
    d.xminus = to_circle(eigenvector_for(g, d.lambda));
    Vector3 w = spacelike_normalize(eigenvector_for(g, 1.0));
    if (det3(d.xminus, d.xplus, w) < 0.0) w = -w;
    d.x0 = w;
    return d;
}

CirclePoint circle_action(const LinearIsometry& g, const CirclePoint& a) {
    return circle_point_of_null(g.apply(a.u()));
}

CartanFactors cartan_decompose(const LinearIsometry& g) {
    Vector3 ge3 = g.col(2);  // image of e3
    double ch = ge3.x3;
    CartanFactors f{};
    f.s = std::acosh(std::max(ch, 1.0));
    if (std::hypot(ge3.x1, ge3.x2) <= 1e-12) {
        // Stabilizer of the origin: pure rotation; take theta' = 0.
        f.theta = std::atan2(g(1, 0), g(0, 0));
        f.theta_prime = 0.0;
        f.s = 0.0;
        return f;
    }
    // tau_s e3 = (0, sinh s, cosh s), so R_theta rotates (0,1) to the
    // direction of the horizontal part of g e3.
    f.theta = std::atan2(-ge3.x1, ge3.x2);
    LinearIsometry rest = LinearIsometry::transvection(-f.s) *
                          LinearIsometry::rotation(-f.theta) * g;
    f.theta_prime = std::atan2(rest(1, 0), rest(0, 0));
    return f;
}

double distortion_bound(const LinearIsometry& g) {
    return std::exp(cartan_decompose(g).s) * std::numbers::pi / 2.0;
}

PlaneBasis weak_unstable_basis(const Vector3& unit_spacelike, double tol) {
    NullFrame f = null_frame(unit_spacelike, tol);
    Vector3 e1 = f.x0 * (1.0 / euclid_norm(f.x0));
    Vector3 w = f.xplus - euclid_dot(f.xplus, e1) * e1;
    Vector3 e2 = w * (1.0 / euclid_norm(w));
    return {e1, e2};
}

PlaneBasis weak_unstable_basis(const LinearIsometry& g, double tol) {
    return weak_unstable_basis(hyperbolic_data(g, tol).x0, tol);
}

WeakUnstableRectangle weak_unstable_rectangle(const Vector3& v, double delta, double tol) {
    NullFrame f = null_frame(v, tol);
    Vector3 y = v * (1.0 / euclid_norm(v));
    Vector3 xp = f.xplus * (1.0 / euclid_norm(f.xplus));
    double s1 = delta * euclid_norm(xp - y);
    double s2 = delta * euclid_norm(xp + y);
    WeakUnstableRectangle r{};
    r.side_short = std::min(s1, s2);
    r.side_long = std::max(s1, s2);
    return r;
}

CompressionReport compression_check(const AffineIsometry& h, double delta, const SpacePoint& x,
                                    int samples, Rng& rng, double tol) {
    HyperbolicData d = hyperbolic_data(h.linear, tol);
    PlaneBasis b = weak_unstable_basis(d.x0, tol);
    CompressionReport rep;
    rep.eps = d.hyperbolicity();
    SpacePoint hx = h.apply(x);
    AffineIsometry hinv = h.inverse();
    double radius = 0.25 * delta * rep.eps * (1.0 - 1e-6);
    for (int k = 0; k < samples; ++k) {
        double r = radius * std::sqrt(rng.uniform());
        double t = rng.uniform(0.0, kTwoPi);
        SpacePoint y = hx + (r * std::cos(t)) * b.e1 + (r * std::sin(t)) * b.e2;
        double back = euclid_norm(hinv.apply(y) - x);
        rep.max_pullback = std::max(rep.max_pullback, back);
        if (!(back < delta)) ++rep.violations;
        ++rep.samples;
    }
    return rep;
}

CompressionReport compression_check(const LinearIsometry& g, double delta, const SpacePoint& x,
                                    int samples, Rng& rng, double tol) {
    return compression_check(AffineIsometry{g, Vector3{}}, delta, x, samples, rng, tol);
}

}  // namespace crooked
