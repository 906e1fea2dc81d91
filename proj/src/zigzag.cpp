#include "crooked/zigzag.hpp"

#include <algorithm>
#include <cmath>

namespace crooked {

DefinitePlane::DefinitePlane(const SpacePoint& b, const Vector3& a1, const Vector3& a2, double tol)
    : base(b), e1(a1), e2(a2) {
    if (std::abs(euclid_norm(e1) - 1.0) > tol || std::abs(euclid_norm(e2) - 1.0) > tol ||
        std::abs(euclid_dot(e1, e2)) > tol)
        throw std::invalid_argument("DefinitePlane: basis not Euclidean-orthonormal");
    // Definite exactly when the Lorentzian normal is timelike.
    if (plane_class(e1, e2, tol) != PlaneClass::Definite)
        throw std::invalid_argument("DefinitePlane: restriction of B not positive definite");
}

double DefinitePlane::offset(const SpacePoint& q) const {
    Vector3 d = q - base;
    Vector3 in_plane = euclid_dot(d, e1) * e1 + euclid_dot(d, e2) * e2;
    return euclid_norm(d - in_plane);
}

namespace {

// Affine functional w -> B(lift(w) - p, n) as  a + <grad, w>.
struct InPlaneAffine {
    double a;
    Vec2 grad;

    double operator()(const Vec2& w) const { return a + grad.s * w.s + grad.t * w.t; }
};

InPlaneAffine restrict_bform(const DefinitePlane& p, const SpacePoint& vertex, const Vector3& n) {
    InPlaneAffine f;
    f.a = bform(p.base - vertex, n);
    f.grad = {bform(p.e1, n), bform(p.e2, n)};
    return f;
}

// Intersection of {f = 0} with {g = 0} in the plane (two affine functionals).
Vec2 line_line(const InPlaneAffine& f, const InPlaneAffine& g) {
    double det = cross2(f.grad, g.grad);
    return Vec2{(-f.a * g.grad.t + g.a * f.grad.t) / det,
                (-g.a * f.grad.s + f.a * g.grad.s) / det};
}

}  // namespace

Zigzag slice(const CrookedPlane& c, const DefinitePlane& p, double tol) {
    if (p.offset(c.p) <= tol) throw std::domain_error("slice: plane passes through the vertex");
    InPlaneAffine b0 = restrict_bform(p, c.p, c.u);
    InPlaneAffine bp = restrict_bform(p, c.p, c.frame.xplus);
    InPlaneAffine bm = restrict_bform(p, c.p, c.frame.xminus);
    // Definiteness of P rules out every degeneracy: the stem line {b0 = 0}
    // and the wing lines {bp = 0}, {bm = 0} are genuine transversal lines.
    Zigzag z;
    z.v0 = line_line(b0, bp);  // stem endpoint on the positive wing fold
    z.v1 = line_line(b0, bm);
    // Ray directions: along the wing line, oriented into the wing half
    // (b0 increasing for the positive wing, decreasing for the negative).
    Vec2 dp{-bp.grad.t, bp.grad.s};
    if (dot(dp, b0.grad) < 0.0) dp = dp * -1.0;
    Vec2 dm{-bm.grad.t, bm.grad.s};
    if (dot(dm, b0.grad) > 0.0) dm = dm * -1.0;
    z.d0 = dp * (1.0 / norm(dp));
    z.d1 = dm * (1.0 / norm(dm));
    return z;
}

bool region_contains(const ZigzagRegion& z, const Vec2& w, double tol) {
    const CrookedHalfSpace& h = z.side;
    const DefinitePlane& p = z.plane;
    double b0 = restrict_bform(p, h.p, h.u)(w);
    double bp = restrict_bform(p, h.p, h.frame.xplus)(w);
    double bm = restrict_bform(p, h.p, h.frame.xminus)(w);
    if (b0 > tol) return bp < -tol;
    if (b0 < -tol) return bm > tol;
    return bp < -tol && bm > tol;
}

namespace {

// Counterclockwise angle from a to b in [0, 2 pi).
double ccw_angle(const Vec2& a, const Vec2& b) {
    double ang = std::atan2(cross2(a, b), dot(a, b));
    if (ang < 0.0) ang += kTwoPi;
    return ang;
}

}  // namespace

ZigzagAngles angles(const ZigzagRegion& z, double tol) {
    const Zigzag& zz = z.zigzag;
    ZigzagAngles out{};
    out.phi = angle(z.side);
    Vec2 stem01 = zz.v1 - zz.v0;
    double stem_len = norm(stem01);
    Vec2 s01 = stem01 * (1.0 / stem_len);
    // Sector at v0 between the ray d0 and the stem direction, measured
    // through the region; pick the side by testing the bisector direction.
    auto sector = [&](const Vec2& vertex, const Vec2& ray, const Vec2& stem_dir) {
        double ccw = ccw_angle(ray, stem_dir);
        Vec2 mid{std::cos(std::atan2(ray.t, ray.s) + 0.5 * ccw),
                 std::sin(std::atan2(ray.t, ray.s) + 0.5 * ccw)};
        double probe = 1e-4 * std::max(1.0, stem_len);
        if (region_contains(z, vertex + mid * probe, tol)) return ccw;
        return kTwoPi - ccw;
    };
    out.theta0 = sector(zz.v0, zz.d0, s01);
    out.theta1 = sector(zz.v1, zz.d1, s01 * -1.0);
    return out;
}

std::vector<HalfPlaneApprox> approx_half_planes(const std::vector<CrookedHalfSpace>& seq,
                                                const DefinitePlane& p, double tol) {
    if (seq.empty()) return {};
    if (!(angle(seq.front()) < std::numbers::pi / 2.0))
        throw std::domain_error("approx_half_planes: Phi(H_0) must be < pi/2");
    // nu: direction of the stem trace of the first boundary, oriented along
    // the region's rays.
    Zigzag z0 = slice(seq.front().boundary(), p, tol);
    Vec2 nu = (z0.v1 - z0.v0) * (1.0 / norm(z0.v1 - z0.v0));
    if (dot(nu, z0.d0) < 0.0) nu = nu * -1.0;
    if (dot(nu, z0.d0) < 0.0 || dot(nu, z0.d1) < 0.0)
        throw std::runtime_error("approx_half_planes: ray orientation inconsistent");

    std::vector<HalfPlaneApprox> out;
    for (const auto& h : seq) {
        Zigzag zk = slice(h.boundary(), p, tol);
        HalfPlaneApprox a;
        a.nu = nu;
        double c0 = dot(zk.v0, nu), c1 = dot(zk.v1, nu);
        a.vertex_pick = c0 <= c1 ? 0 : 1;
        a.offset = std::min(c0, c1);
        a.line_point = a.vertex_pick == 0 ? zk.v0 : zk.v1;
        // Two-candidate test: the boundary polyline must stay inside Pi.
        double other = std::max(c0, c1);
        double ray_slope = std::min(dot(zk.d0, nu), dot(zk.d1, nu));
        if (other < a.offset - tol || ray_slope < -tol)
            throw std::runtime_error("approx_half_planes: no valid bounding vertex");
        out.push_back(a);
    }
    return out;
}

SeparationChainReport separation_report(const AffineSchottkyConfig& cfg, const NestedSequence& seq,
                                        double delta, double delta0, double tol) {
    if (delta > delta0) throw std::invalid_argument("separation_report: delta exceeds delta0");
    SeparationChainReport rep;
    rep.delta = delta;
    rep.delta0 = delta0;
    if (seq.terms.size() < 2) {
        rep.all_pass = true;
        return rep;
    }
    // Slice plane through the adjusted point, nudged off every vertex.
    double c = seq.adjusted_point.x3;
    auto vertex_clear = [&](double height) {
        double clear = std::numeric_limits<double>::infinity();
        for (const auto& t : seq.terms) clear = std::min(clear, std::abs(t.half_space.p.x3 - height));
        return clear;
    };
    for (int k = 0; vertex_clear(c) <= 1e-6 && k < 100; ++k) c += 1e-3 * (k + 1);
    DefinitePlane plane = DefinitePlane::horizontal(c);

    std::vector<CrookedHalfSpace> hs;
    for (const auto& t : seq.terms) hs.push_back(t.half_space);
    auto pis = approx_half_planes(hs, plane, tol);

    rep.point_containment_ok = true;
    for (const auto& h : hs)
        if (membership(seq.adjusted_point, h, tol) != Membership::InHalfSpace)
            rep.point_containment_ok = false;
    rep.nesting_ok = true;
    for (std::size_t k = 0; k + 1 < pis.size(); ++k)
        if (pis[k + 1].offset < pis[k].offset - 1e-9) rep.nesting_ok = false;

    rep.all_pass = rep.point_containment_ok && rep.nesting_ok;

    // Audit the chain elements: nested-sequence words carry either the eps0
    // guarantee or the distorted one, and the eigen-data must respect it.
    std::vector<Word> words;
    for (std::size_t k = 1; k + 1 < pis.size(); ++k) words.push_back(seq.terms[k].gamma_word);
    std::vector<WordAudit> audits = hyperbolicity_audit(cfg, words, tol);

    const double pi4 = std::numbers::pi / 4.0;
    for (std::size_t k = 1; k + 1 < pis.size(); ++k) {
        SeparationRow row{};
        row.k = static_cast<int>(k);
        row.rho = std::abs(pis[k + 1].offset - pis[k].offset);
        const AffineIsometry& gamma = seq.terms[k].gamma;
        const WordAudit& audit = audits[k - 1];
        row.eps = audit.actual;
        row.guarantee = audit.guarantee.value_or(0.0);
        row.audit_ok = audit.guarantee_holds;
        if (!row.audit_ok) rep.all_pass = false;
        row.bound = delta * row.eps / (4.0 * std::sqrt(2.0));
        row.pass = row.rho >= row.bound - 1e-9;
        // Weak-unstable trace on P: direction of E^{wu}(g_k) ∩ P.
        HyperbolicData d = hyperbolic_data(gamma.linear, tol);
        InPlaneAffine f = restrict_bform(plane, SpacePoint{}, d.xplus);
        Vec2 dir{-f.grad.t, f.grad.s};
        dir = dir * (1.0 / norm(dir));
        row.wu_angle = std::acos(std::min(1.0, std::abs(dot(dir, pis[k].nu))));
        row.wu_pass = row.wu_angle <= pi4 + 1e-9;
        if (!row.pass || !row.wu_pass) rep.all_pass = false;
        rep.rows.push_back(row);
    }
    return rep;
}

}  // namespace crooked
