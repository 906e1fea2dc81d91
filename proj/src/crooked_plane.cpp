#include "crooked/crooked_plane.hpp"

namespace crooked {

namespace {
inline int banded_sign(double x, double tol) { return x > tol ? 1 : (x < -tol ? -1 : 0); }
}  // namespace

Membership membership(const SpacePoint& q, const CrookedHalfSpace& h, double tol) {
    Vector3 x = q - h.p;
    int s0 = banded_sign(bform(x, h.u), tol);
    int sp = banded_sign(bform(x, h.frame.xplus), tol);
    int sm = banded_sign(bform(x, h.frame.xminus), tol);
    bool in_pos, in_neg;
    if (s0 > 0) {
        in_pos = sp < 0;
        in_neg = sp > 0;
    } else if (s0 < 0) {
        in_pos = sm > 0;
        in_neg = sm < 0;
    } else {
        in_pos = sp < 0 && sm > 0;
        in_neg = sp > 0 && sm < 0;
    }
    if (in_pos) return Membership::InHalfSpace;
    if (in_neg) return Membership::InOppositeHalfSpace;
    return Membership::OnCrookedPlane;
}

Membership membership(const SpacePoint& q, const Vector3& u, const SpacePoint& p, double tol) {
    return membership(q, CrookedHalfSpace(u, p, tol), tol);
}

std::array<ConvexWedge, 2> closure_wedges(const CrookedHalfSpace& h) {
    ConvexWedge w1{h.p, {{{h.u, +1}, {h.frame.xplus, -1}}}};
    ConvexWedge w2{h.p, {{{h.u, -1}, {h.frame.xminus, +1}}}};
    return {w1, w2};
}

CrookedHalfSpace transform(const AffineIsometry& h, const CrookedHalfSpace& H) {
    if (!is_linear_isometry(h.linear, 1e-7))
        throw std::domain_error("transform: linear part is not in SO^0(2,1)");
    // Renormalize: products of many isometries drift at roundoff scale.
    return CrookedHalfSpace(spacelike_normalize(h.linear.apply(H.u)), h.apply(H.p));
}

CrookedPlane transform(const AffineIsometry& h, const CrookedPlane& C) {
    if (!is_linear_isometry(h.linear, 1e-7))
        throw std::domain_error("transform: linear part is not in SO^0(2,1)");
    return CrookedPlane(spacelike_normalize(h.linear.apply(C.u)), h.apply(C.p));
}

double angle(const CrookedHalfSpace& h) { return interval_of_spacelike(h.u).length(); }

}  // namespace crooked
