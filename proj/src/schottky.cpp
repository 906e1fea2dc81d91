#include "crooked/schottky.hpp"

#include <algorithm>
#include <cmath>

#include "crooked/rng.hpp"
#include "crooked/word.hpp"

namespace crooked {

std::vector<Word> reduced_words_of_length(int m, int len) {
    std::vector<Word> out;
    if (len == 0) {
        out.emplace_back();
        return out;
    }
    std::vector<GeneratorIndex> alphabet;
    for (int i = 1; i <= m; ++i) {
        alphabet.emplace_back(i, +1);
        alphabet.emplace_back(i, -1);
    }
    std::vector<std::vector<GeneratorIndex>> frontier{{}};
    for (int l = 0; l < len; ++l) {
        std::vector<std::vector<GeneratorIndex>> next;
        for (const auto& w : frontier)
            for (const auto& a : alphabet) {
                if (!w.empty() && a == w.back().inverse()) continue;
                auto e = w;
                e.push_back(a);
                next.push_back(std::move(e));
            }
        frontier = std::move(next);
    }
    out.reserve(frontier.size());
    for (auto& w : frontier) out.emplace_back(std::move(w));
    return out;
}

std::vector<Word> reduced_words_up_to(int m, int maxlen) {
    std::vector<Word> out;
    for (int l = 0; l <= maxlen; ++l) {
        auto ws = reduced_words_of_length(m, l);
        out.insert(out.end(), ws.begin(), ws.end());
    }
    return out;
}

bool half_plane_contains(const HalfPlane& h, const Vector3& u, double tol) {
    if (!is_future_timelike(u, tol)) throw std::domain_error("half_plane_contains: direction not future timelike");
    return bform(u, h.v) > 0.0;
}

namespace {

// Plain 3x3 inverse by the adjugate; the frame matrices inverted here are
// not Lorentz isometries.
LinearIsometry general_inverse(const LinearIsometry& a) {
    double det = det3(a.col(0), a.col(1), a.col(2));
    LinearIsometry r;
    auto minor = [&](std::size_t i, std::size_t j) {
        std::size_t r0 = (i + 1) % 3, r1 = (i + 2) % 3;
        std::size_t c0 = (j + 1) % 3, c1 = (j + 2) % 3;
        return a(r0, c0) * a(r1, c1) - a(r0, c1) * a(r1, c0);
    };
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = 0; j < 3; ++j) r.at(j, i) = minor(i, j) / det;
    return r;
}

}  // namespace

LinearIsometry build_generator(const Interval& a_minus, const Interval& a_plus, double tol) {
    double g1 = a_minus.gap_to(a_plus);
    if (g1 <= tol) throw std::domain_error("build_generator: intervals overlap or touch");
    Vector3 vm = spacelike_from_interval(a_minus);
    Vector3 vp = spacelike_from_interval(a_plus);
    double c = bform(vm, vp);
    if (std::abs(c) <= 1.0 + tol)
        throw std::domain_error("build_generator: boundary geodesics not ultraparallel");
    double d = std::acosh(std::abs(c));
    // Axis of the transvection: the common perpendicular l_w, w ∝ v^- ⊠ v^+.
    Vector3 w = spacelike_normalize(lorentz_cross(vm, vp));
    NullFrame f = null_frame(w, tol);
    LinearIsometry frame = LinearIsometry::from_columns(f.xminus, f.xplus, w);
    LinearIsometry frame_inv = general_inverse(frame);
    for (double mu : {std::exp(d), std::exp(-d)}) {
        LinearIsometry diag;
        diag.m = {1.0 / mu, 0, 0, 0, mu, 0, 0, 0, 1.0};
        LinearIsometry g = frame * diag * frame_inv;
        if (euclid_norm(g.apply(vm) + vp) <= 1e-6 * (1.0 + euclid_norm(vp))) return g;
    }
    throw std::domain_error("build_generator: no orientation maps v^- to -v^+");
}

namespace {

struct Labelled {
    Interval interval;
    GeneratorIndex label;
};

std::vector<Labelled> all_intervals(const SchottkyConfig& cfg) {
    std::vector<Labelled> out;
    for (int i = 1; i <= cfg.m; ++i) {
        out.push_back({cfg.a_plus.at(i - 1), GeneratorIndex(i, +1)});
        out.push_back({cfg.a_minus.at(i - 1), GeneratorIndex(i, -1)});
    }
    return out;
}

}  // namespace

SchottkyReport verify_schottky(const SchottkyConfig& cfg, double tol) {
    SchottkyReport rep;
    if (cfg.m < 1 || static_cast<int>(cfg.generators.size()) != cfg.m ||
        static_cast<int>(cfg.a_plus.size()) != cfg.m ||
        static_cast<int>(cfg.a_minus.size()) != cfg.m) {
        rep.failures.push_back("malformed configuration");
        return rep;
    }
    auto labelled = all_intervals(cfg);

    // (a) pairwise disjointness with a positive angular gap.
    rep.theta0 = kTwoPi;
    for (std::size_t a = 0; a < labelled.size(); ++a)
        for (std::size_t b = a + 1; b < labelled.size(); ++b) {
            double gap = labelled[a].interval.gap_to(labelled[b].interval);
            rep.theta0 = std::min(rep.theta0, gap);
            if (gap <= tol)
                rep.failures.push_back("intervals " + labelled[a].label.str() + " and " +
                                       labelled[b].label.str() + " are not disjoint");
        }
    rep.eps0 = 2.0 * std::sin(0.5 * rep.theta0);

    // (b) endpoint pairing: g_i maps the endpoints of A_i^- onto the
    // endpoints of A_i^+, and the midpoint of A_i^- lands outside A_i^+.
    for (int i = 1; i <= cfg.m; ++i) {
        const Interval& am = cfg.a_minus.at(i - 1);
        const Interval& ap = cfg.a_plus.at(i - 1);
        const LinearIsometry& g = cfg.generators.at(i - 1);
        double e1 = circle_action(g, am.endpoint1()).phi;
        double e2 = circle_action(g, am.endpoint2()).phi;
        double p1 = ap.endpoint1().phi, p2 = canonical_angle(ap.endpoint2().phi);
        double straight = std::max(angular_distance(e1, p1), angular_distance(e2, p2));
        double crossed = std::max(angular_distance(e1, p2), angular_distance(e2, p1));
        double res = std::min(straight, crossed);
        rep.max_pairing_residual = std::max(rep.max_pairing_residual, res);
        if (res > tol)
            rep.failures.push_back("generator " + std::to_string(i) +
                                   ": endpoint pairing residual " + std::to_string(res));
        CirclePoint mid_image = circle_action(g, CirclePoint(am.midpoint()));
        if (ap.contains(mid_image, -tol))
            rep.failures.push_back("generator " + std::to_string(i) +
                                   ": image of A^- midpoint fell inside A^+");
    }

    // (c) fixed points: x^+(g_i) in A_i^+, x^-(g_i) in A_i^-.
    for (int i = 1; i <= cfg.m; ++i) {
        const LinearIsometry& g = cfg.generators.at(i - 1);
        if (classify(g, tol) != IsometryClass::Hyperbolic) {
            rep.failures.push_back("generator " + std::to_string(i) + " is not hyperbolic");
            continue;
        }
        HyperbolicData d = hyperbolic_data(g, tol);
        if (!cfg.a_plus.at(i - 1).contains(d.phi_plus(), -tol))
            rep.failures.push_back("x+(g_" + std::to_string(i) + ") not in A^+");
        if (!cfg.a_minus.at(i - 1).contains(d.phi_minus(), -tol))
            rep.failures.push_back("x-(g_" + std::to_string(i) + ") not in A^-");
    }

    // (d) small interval: for m >= 2 some interval is shorter than pi/2.
    rep.smallest_interval = kTwoPi;
    for (const auto& li : labelled) rep.smallest_interval = std::min(rep.smallest_interval, li.interval.length());
    rep.small_interval_guarantee = cfg.m >= 2 && rep.smallest_interval < std::numbers::pi / 2.0;
    if (cfg.m >= 2 && !rep.small_interval_guarantee)
        rep.failures.push_back("no interval shorter than pi/2 despite m >= 2");

    rep.ok = rep.failures.empty();
    rep.discreteness_implied = rep.ok;
    return rep;
}

FundamentalPolygon FundamentalPolygon::from_config(const SchottkyConfig& cfg) {
    FundamentalPolygon poly;
    for (const auto& li : all_intervals(cfg)) poly.normals.push_back(spacelike_from_interval(li.interval));
    return poly;
}

bool delta_contains(const FundamentalPolygon& poly, const Vector3& u, double tol) {
    if (!is_future_timelike(u, tol)) throw std::domain_error("delta_contains: direction not future timelike");
    for (const auto& v : poly.normals)
        if (bform(u, v) >= -tol) return false;
    return true;
}

Vector3 sample_delta(const FundamentalPolygon& poly, Rng& rng, double tol) {
    for (int attempt = 0; attempt < 100000; ++attempt) {
        double t = rng.uniform(0.0, kTwoPi);
        double r = 0.999 * std::sqrt(rng.uniform());
        Vector3 u{r * std::cos(t), r * std::sin(t), 1.0};
        if (delta_contains(poly, u, tol)) return u;
    }
    throw std::runtime_error("sample_delta: rejection sampling failed (polygon empty?)");
}

PingPongResult pingpong_check(const SchottkyConfig& cfg, const Word& w, int samples, Rng& rng,
                              double tol) {
    PingPongResult res;
    if (w.empty()) {
        res.passed = true;
        res.vacuous = true;
        return res;
    }
    FundamentalPolygon poly = FundamentalPolygon::from_config(cfg);
    // Suffix isometries: gamma_t = g_{l_t} ... g_{l_{n-1}}; the invariant is
    // gamma_t(Delta) ⊂ H of letter l_t.
    std::vector<LinearIsometry> suffix(w.size());
    LinearIsometry acc;
    for (std::size_t k = w.size(); k-- > 0;) {
        acc = cfg.generator(w[k]) * acc;
        suffix[k] = acc;
    }
    res.passed = true;
    // Interior samples: long words contract margins by roughly the product
    // of the generators' derivatives, so start well inside Delta.
    double margin = std::max(tol, 1e-3);
    for (int s = 0; s < samples; ++s) {
        Vector3 u = sample_delta(poly, rng, margin);
        for (std::size_t t = 0; t < w.size(); ++t) {
            Vector3 image = suffix[t].apply(u);
            Vector3 v = spacelike_from_interval(cfg.interval(w[t]));
            if (!(bform(image, v) > 0.0)) res.passed = false;
        }
        ++res.samples_checked;
    }
    return res;
}

std::optional<double> word_hyperbolicity_criterion(const SchottkyConfig& cfg, const Word& w,
                                                   double tol) {
    if (w.empty() || !w.is_cyclically_reduced()) return std::nullopt;
    SchottkyReport rep = verify_schottky(cfg, tol);
    return 2.0 * std::sin(0.5 * rep.theta0);
}

std::optional<HyperbolicLocateResult> locate_hyperbolic(const SchottkyConfig& cfg, Vector3 u,
                                                        int max_steps, double tol) {
    FundamentalPolygon poly = FundamentalPolygon::from_config(cfg);
    auto labelled = all_intervals(cfg);
    Word word;
    for (int step = 0; step < max_steps; ++step) {
        bool inside_closure = true;
        for (std::size_t k = 0; k < labelled.size(); ++k) {
            Vector3 v = poly.normals[k];
            if (bform(u, v) > tol) {
                inside_closure = false;
                word.push_reduce(labelled[k].label);
                u = cfg.generator(labelled[k].label).inverse().apply(u);
                u = u * (1.0 / u.x3);  // renormalize the ray section
                break;
            }
        }
        if (inside_closure) return HyperbolicLocateResult{word, u};
    }
    return std::nullopt;
}

}  // namespace crooked
