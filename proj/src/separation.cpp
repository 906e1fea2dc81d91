#include "crooked/separation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace crooked {
namespace detail {

namespace {

Vector3 lorentz_dual(const Vector3& w) { return {w.x1, w.x2, -w.x3}; }  // J w

LinearConstraint make_constraint(const Vector3& lorentz_normal, const SpacePoint& through,
                                 int sense, bool equality) {
    // B(x - p, w) >= 0  <=>  (J w)·x >= (J w)·p ; sense -1 flips the row.
    Vector3 n = lorentz_dual(lorentz_normal) * static_cast<double>(sense);
    double scale = 1.0 / euclid_norm(n);
    n = n * scale;
    double c = n.x1 * through.x1 + n.x2 * through.x2 + n.x3 * through.x3;
    return {n, c, equality};
}

double dot_point(const Vector3& n, const SpacePoint& q) {
    return n.x1 * q.x1 + n.x2 * q.x2 + n.x3 * q.x3;
}

// Solve the (possibly rank-deficient) linear system A z = b by Gaussian
// elimination with full pivoting; free variables are set to zero.  Returns
// nothing when the system is inconsistent.
std::optional<std::vector<double>> solve_linear(std::vector<std::vector<double>> a,
                                                std::vector<double> b, double tol) {
    const std::size_t rows = a.size();
    const std::size_t cols = rows ? a[0].size() : 0;
    std::vector<std::size_t> col_of_pivot;
    std::vector<std::size_t> perm(cols);
    for (std::size_t j = 0; j < cols; ++j) perm[j] = j;

    std::size_t rank = 0;
    for (std::size_t step = 0; step < std::min(rows, cols); ++step) {
        std::size_t pr = step, pc = step;
        double best = 0.0;
        for (std::size_t r = step; r < rows; ++r)
            for (std::size_t c = step; c < cols; ++c)
                if (std::abs(a[r][c]) > best) {
                    best = std::abs(a[r][c]);
                    pr = r;
                    pc = c;
                }
        if (best <= tol) break;
        std::swap(a[step], a[pr]);
        std::swap(b[step], b[pr]);
        for (std::size_t r = 0; r < rows; ++r) std::swap(a[r][step], a[r][pc]);
        std::swap(perm[step], perm[pc]);
        for (std::size_t r = step + 1; r < rows; ++r) {
            double f = a[r][step] / a[step][step];
            if (f == 0.0) continue;
            for (std::size_t c = step; c < cols; ++c) a[r][c] -= f * a[step][c];
            b[r] -= f * b[step];
        }
        ++rank;
    }
    for (std::size_t r = rank; r < rows; ++r) {
        double row_norm = 0.0;
        for (std::size_t c = 0; c < cols; ++c) row_norm = std::max(row_norm, std::abs(a[r][c]));
        if (std::abs(b[r]) > std::max(tol, row_norm) * 1e3) return std::nullopt;  // inconsistent
    }
    std::vector<double> z(cols, 0.0);
    for (std::size_t r = rank; r-- > 0;) {
        double s = b[r];
        for (std::size_t c = r + 1; c < cols; ++c) s -= a[r][c] * z[c];
        z[r] = s / a[r][r];
    }
    std::vector<double> out(cols, 0.0);
    for (std::size_t c = 0; c < cols; ++c) out[perm[c]] = z[c];
    return out;
}

struct FmRow {
    double a1, a2, a3, b;  // a·z >= b
};

}  // namespace

bool ConvexPiece::contains(const SpacePoint& q, double tol) const {
    for (const auto& c : constraints) {
        double v = dot_point(c.n, q) - c.c;
        if (c.equality ? std::abs(v) > tol : v < -tol) return false;
    }
    return true;
}

ConvexPiece piece_of_wedge(const ConvexWedge& w) {
    ConvexPiece p;
    p.anchor = w.apex;
    for (const auto& c : w.constraints)
        p.constraints.push_back(make_constraint(c.normal, w.apex, c.sense, false));
    return p;
}

std::vector<ConvexPiece> pieces_of_plane(const CrookedPlane& c) {
    std::vector<ConvexPiece> out;
    const Vector3& u = c.u;
    const Vector3& xp = c.frame.xplus;
    const Vector3& xm = c.frame.xminus;
    // Future stem cone: B(x,u) = 0, B(x,x^+) <= 0, B(x,x^-) <= 0.
    ConvexPiece stem_f;
    stem_f.anchor = c.p;
    stem_f.constraints = {make_constraint(u, c.p, +1, true), make_constraint(xp, c.p, -1, false),
                          make_constraint(xm, c.p, -1, false)};
    // Past stem cone: both >= 0.
    ConvexPiece stem_p;
    stem_p.anchor = c.p;
    stem_p.constraints = {make_constraint(u, c.p, +1, true), make_constraint(xp, c.p, +1, false),
                          make_constraint(xm, c.p, +1, false)};
    // Positive wing: B(x,x^+) = 0, B(x,u) >= 0.
    ConvexPiece wing_p;
    wing_p.anchor = c.p;
    wing_p.constraints = {make_constraint(xp, c.p, +1, true), make_constraint(u, c.p, +1, false)};
    // Negative wing: B(x,x^-) = 0, B(x,u) <= 0.
    ConvexPiece wing_m;
    wing_m.anchor = c.p;
    wing_m.constraints = {make_constraint(xm, c.p, +1, true), make_constraint(u, c.p, -1, false)};
    out = {stem_f, stem_p, wing_p, wing_m};
    return out;
}

std::optional<SpacePoint> fm_feasible_point(const std::vector<LinearConstraint>& cons, double tol) {
    std::vector<FmRow> rows;
    for (const auto& c : cons) {
        rows.push_back({c.n.x1, c.n.x2, c.n.x3, c.c});
        if (c.equality) rows.push_back({-c.n.x1, -c.n.x2, -c.n.x3, -c.c});
    }
    const double zero_band = 1e-12;
    std::vector<std::vector<FmRow>> levels;  // rows before eliminating variable k
    std::vector<FmRow> cur = rows;
    auto coef = [](const FmRow& r, int k) { return k == 0 ? r.a1 : (k == 1 ? r.a2 : r.a3); };
    for (int k = 2; k >= 0; --k) {
        levels.push_back(cur);
        std::vector<FmRow> next;
        std::vector<FmRow> lower, upper;
        for (const auto& r : cur) {
            double a = coef(r, k);
            if (std::abs(a) <= zero_band) {
                FmRow keep = r;
                if (k == 0) keep.a1 = 0;
                if (k == 1) keep.a2 = 0;
                if (k == 2) keep.a3 = 0;
                next.push_back(keep);
            } else if (a > 0) {
                lower.push_back(r);
            } else {
                upper.push_back(r);
            }
        }
        for (const auto& lo : lower)
            for (const auto& up : upper) {
                double al = coef(lo, k), au = coef(up, k);
                // z_k >= (b_l - rest_l)/al and z_k <= (b_u - rest_u)/au (au < 0):
                // combine to eliminate z_k.
                FmRow r{};
                double wl = -au, wu = al;  // positive weights
                r.a1 = wl * lo.a1 + wu * up.a1;
                r.a2 = wl * lo.a2 + wu * up.a2;
                r.a3 = wl * lo.a3 + wu * up.a3;
                r.b = wl * lo.b + wu * up.b;
                if (k == 0) r.a1 = 0;
                if (k == 1) r.a2 = 0;
                if (k == 2) r.a3 = 0;
                double norm = std::max({std::abs(r.a1), std::abs(r.a2), std::abs(r.a3), 1.0});
                r.a1 /= norm;
                r.a2 /= norm;
                r.a3 /= norm;
                r.b /= norm;
                next.push_back(r);
            }
        cur = std::move(next);
    }
    for (const auto& r : cur)
        if (r.b > tol) return std::nullopt;  // 0 >= b violated
    // Back-substitute a witness: variable 0 from the fully eliminated rows,
    // then 1 and 2 using the values already fixed.
    double z[3] = {0, 0, 0};
    for (int k = 0; k <= 2; ++k) {
        const auto& lvl = levels[2 - k];  // rows involving variables 0..k only
        double lo = -std::numeric_limits<double>::infinity();
        double hi = std::numeric_limits<double>::infinity();
        for (const auto& r : lvl) {
            double a = coef(r, k);
            if (std::abs(a) <= zero_band) continue;
            double rest = r.b;
            for (int j = 0; j < k; ++j) rest -= coef(r, j) * z[j];
            double bound = rest / a;
            if (a > 0)
                lo = std::max(lo, bound);
            else
                hi = std::min(hi, bound);
        }
        if (std::isinf(lo) && std::isinf(hi))
            z[k] = 0.0;
        else if (std::isinf(lo))
            z[k] = hi;
        else if (std::isinf(hi))
            z[k] = lo;
        else
            z[k] = 0.5 * (lo + hi);
    }
    return SpacePoint{z[0], z[1], z[2]};
}

PieceDistance piece_distance(const ConvexPiece& a, const ConvexPiece& b, double tol) {
    // Intersection means distance zero.
    std::vector<LinearConstraint> joint = a.constraints;
    joint.insert(joint.end(), b.constraints.begin(), b.constraints.end());
    if (auto z = fm_feasible_point(joint, tol)) return {0.0, *z, *z};

    // Active-set enumeration: minimize ||x - y||^2 subject to a's rows on x
    // and b's rows on y.  Equalities are always active; inequality subsets
    // are enumerated.  KKT unknowns: x, y, one multiplier per active row.
    std::vector<const LinearConstraint*> eq_a, in_a, eq_b, in_b;
    for (const auto& c : a.constraints) (c.equality ? eq_a : in_a).push_back(&c);
    for (const auto& c : b.constraints) (c.equality ? eq_b : in_b).push_back(&c);

    double best = std::numeric_limits<double>::infinity();
    SpacePoint bx, by;
    const std::size_t na = in_a.size(), nb = in_b.size();
    for (std::size_t mask = 0; mask < (1ULL << (na + nb)); ++mask) {
        std::vector<const LinearConstraint*> act_a = eq_a, act_b = eq_b;
        std::vector<bool> eq_flag_a(eq_a.size(), true), eq_flag_b(eq_b.size(), true);
        for (std::size_t k = 0; k < na; ++k)
            if (mask & (1ULL << k)) {
                act_a.push_back(in_a[k]);
                eq_flag_a.push_back(false);
            }
        for (std::size_t k = 0; k < nb; ++k)
            if (mask & (1ULL << (na + k))) {
                act_b.push_back(in_b[k]);
                eq_flag_b.push_back(false);
            }
        const std::size_t n = 6 + act_a.size() + act_b.size();
        std::vector<std::vector<double>> m(n, std::vector<double>(n, 0.0));
        std::vector<double> rhs(n, 0.0);
        // Stationarity: 2(x - y) - sum lam_a n_a = 0 ; -2(x - y) - sum lam_b n_b = 0.
        for (int r = 0; r < 3; ++r) {
            m[r][r] = 2.0;
            m[r][3 + r] = -2.0;
            m[3 + r][r] = -2.0;
            m[3 + r][3 + r] = 2.0;
        }
        for (std::size_t j = 0; j < act_a.size(); ++j) {
            const Vector3& nrm = act_a[j]->n;
            double comp[3] = {nrm.x1, nrm.x2, nrm.x3};
            for (int r = 0; r < 3; ++r) m[r][6 + j] = -comp[r];
            for (int c = 0; c < 3; ++c) m[6 + j][c] = comp[c];
            rhs[6 + j] = act_a[j]->c;
        }
        for (std::size_t j = 0; j < act_b.size(); ++j) {
            const Vector3& nrm = act_b[j]->n;
            double comp[3] = {nrm.x1, nrm.x2, nrm.x3};
            for (int r = 0; r < 3; ++r) m[3 + r][6 + act_a.size() + j] = -comp[r];
            for (int c = 0; c < 3; ++c) m[6 + act_a.size() + j][3 + c] = comp[c];
            rhs[6 + act_a.size() + j] = act_b[j]->c;
        }
        auto sol = solve_linear(m, rhs, 1e-11);
        if (!sol) continue;
        SpacePoint x{(*sol)[0], (*sol)[1], (*sol)[2]};
        SpacePoint y{(*sol)[3], (*sol)[4], (*sol)[5]};
        // Dual feasibility for the inequality rows.
        bool ok = true;
        for (std::size_t j = 0; j < act_a.size(); ++j)
            if (!eq_flag_a[j] && (*sol)[6 + j] < -1e-8) ok = false;
        for (std::size_t j = 0; j < act_b.size(); ++j)
            if (!eq_flag_b[j] && (*sol)[6 + act_a.size() + j] < -1e-8) ok = false;
        if (!ok) continue;
        if (!a.contains(x, 1e-7) || !b.contains(y, 1e-7)) continue;
        double d = euclid_norm(x - y);
        if (d < best) {
            best = d;
            bx = x;
            by = y;
        }
    }

    // Alternating-projection refinement; confirms (or slightly improves) the
    // enumeration result in degenerate geometry.
    SpacePoint x = std::isfinite(best) ? bx : a.anchor;
    SpacePoint y = std::isfinite(best) ? by : b.anchor;
    x = project_onto(a, x, tol);
    for (int it = 0; it < 256; ++it) {
        SpacePoint ny = project_onto(b, x, tol);
        SpacePoint nx = project_onto(a, ny, tol);
        double change = euclid_norm(nx - x) + euclid_norm(ny - y);
        x = nx;
        y = ny;
        if (change < 1e-14) break;
    }
    double ap = euclid_norm(x - y);
    if (ap < best) {
        best = ap;
        bx = x;
        by = y;
    }
    return {best, bx, by};
}

SpacePoint project_onto(const ConvexPiece& piece, const SpacePoint& q, double tol) {
    if (piece.contains(q, 0.0)) return q;
    double best = std::numeric_limits<double>::infinity();
    SpacePoint bz = piece.anchor;
    const std::size_t n = piece.constraints.size();
    for (std::size_t mask = 1; mask < (1ULL << n); ++mask) {
        std::vector<const LinearConstraint*> act;
        for (std::size_t k = 0; k < n; ++k)
            if ((mask & (1ULL << k)) || piece.constraints[k].equality)
                act.push_back(&piece.constraints[k]);
        // Projection onto the affine set {n_j·z = c_j}: z = q + N^T mu with
        // (N N^T) mu = c - N q.
        const std::size_t k = act.size();
        std::vector<std::vector<double>> gram(k, std::vector<double>(k, 0.0));
        std::vector<double> rhs(k, 0.0);
        for (std::size_t r = 0; r < k; ++r) {
            for (std::size_t c = 0; c < k; ++c) gram[r][c] = euclid_dot(act[r]->n, act[c]->n);
            rhs[r] = act[r]->c - dot_point(act[r]->n, q);
        }
        auto mu = solve_linear(gram, rhs, 1e-12);
        if (!mu) continue;
        Vector3 shift{0, 0, 0};
        for (std::size_t r = 0; r < k; ++r) shift = shift + (*mu)[r] * act[r]->n;
        SpacePoint z = q + shift;
        if (!piece.contains(z, std::max(tol, 1e-9))) continue;
        double d = euclid_norm(z - q);
        if (d < best) {
            best = d;
            bz = z;
        }
    }
    return bz;
}

}  // namespace detail

namespace {

SeparationResult combine(const std::vector<detail::ConvexPiece>& as,
                         const std::vector<detail::ConvexPiece>& bs, const SpacePoint& anchor_a,
                         const SpacePoint& anchor_b, double radius, double tol) {
    SeparationResult out;
    out.distance = std::numeric_limits<double>::infinity();
    for (const auto& pa : as)
        for (const auto& pb : bs) {
            auto d = detail::piece_distance(pa, pb, tol);
            if (d.distance < out.distance) {
                out.distance = d.distance;
                out.witness_a = d.xa;
                out.witness_b = d.xb;
            }
            if (out.distance == 0.0) break;
        }
    out.attained = true;
    out.asymptotic = euclid_norm(out.witness_a - anchor_a) > radius ||
                     euclid_norm(out.witness_b - anchor_b) > radius;
    return out;
}

}  // namespace

SeparationResult separation(const CrookedHalfSpace& a, const CrookedHalfSpace& b, double radius,
                            double tol) {
    if (radius <= 0.0) throw std::invalid_argument("separation: radius must be positive");
    auto wa = closure_wedges(a);
    auto wb = closure_wedges(b);
    std::vector<detail::ConvexPiece> pa{detail::piece_of_wedge(wa[0]), detail::piece_of_wedge(wa[1])};
    std::vector<detail::ConvexPiece> pb{detail::piece_of_wedge(wb[0]), detail::piece_of_wedge(wb[1])};
    return combine(pa, pb, a.p, b.p, radius, tol);
}

SeparationResult crooked_plane_separation(const CrookedPlane& a, const CrookedPlane& b,
                                          double radius, double tol) {
    if (radius <= 0.0) throw std::invalid_argument("separation: radius must be positive");
    return combine(detail::pieces_of_plane(a), detail::pieces_of_plane(b), a.p, b.p, radius, tol);
}

}  // namespace crooked
