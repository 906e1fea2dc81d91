#include "crooked/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

namespace crooked {

namespace {

// Liang-Barsky segment clip against [xmin,xmax]x[ymin,ymax].
bool clip_segment(const SvgScene& s, Vec2 a, Vec2 b, Vec2& ca, Vec2& cb) {
    double t0 = 0.0, t1 = 1.0;
    double dx = b.s - a.s, dy = b.t - a.t;
    auto update = [&](double p, double q) {
        if (p == 0.0) return q >= 0.0;
        double r = q / p;
        if (p < 0.0) {
            if (r > t1) return false;
            if (r > t0) t0 = r;
        } else {
            if (r < t0) return false;
            if (r < t1) t1 = r;
        }
        return true;
    };
    if (!update(-dx, a.s - s.xmin)) return false;
    if (!update(dx, s.xmax - a.s)) return false;
    if (!update(-dy, a.t - s.ymin)) return false;
    if (!update(dy, s.ymax - a.t)) return false;
    ca = {a.s + t0 * dx, a.t + t0 * dy};
    cb = {a.s + t1 * dx, a.t + t1 * dy};
    return t1 > t0;
}

const char* kPalette[] = {"#26547c", "#ef476f", "#ffd166", "#06d6a0", "#7b2cbf",
                          "#e07a2f", "#3a86ff", "#8d5524", "#52b788", "#c9184a"};

std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6f", v);
    return buf;
}

}  // namespace

void SvgScene::add(const std::string& key, int depth, std::vector<Vec2> pts) {
    if (pts.size() < 2) return;
    polylines.push_back({key, depth, std::move(pts)});
}

void SvgScene::add_zigzag(const std::string& key, int depth, const Zigzag& z) {
    // Far endpoints: beyond any viewport corner.
    double diag = std::hypot(xmax - xmin, ymax - ymin);
    double reach = 4.0 * diag + norm(z.v0) + norm(z.v1) + std::abs(xmin) + std::abs(ymax) + 1.0;
    Vec2 chain[4] = {z.v0 + z.d0 * reach, z.v0, z.v1, z.v1 + z.d1 * reach};
    std::vector<Vec2> run;
    int piece = 0;
    for (int k = 0; k < 3; ++k) {
        Vec2 ca, cb;
        if (clip_segment(*this, chain[k], chain[k + 1], ca, cb)) {
            if (!run.empty() && std::abs(run.back().s - ca.s) + std::abs(run.back().t - ca.t) < 1e-12) {
                run.push_back(cb);
            } else {
                if (run.size() >= 2) add(key + "/" + std::to_string(piece++), depth, run);
                run = {ca, cb};
            }
        }
    }
    if (run.size() >= 2) add(key + "/" + std::to_string(piece), depth, run);
}

std::string SvgScene::render() const {
    const double width = 1000.0;
    double aspect = (ymax - ymin) / (xmax - xmin);
    double height = width * aspect;
    auto px = [&](const Vec2& w) {
        return Vec2{(w.s - xmin) / (xmax - xmin) * width, (ymax - w.t) / (ymax - ymin) * height};
    };
    std::vector<const Polyline*> order;
    for (const auto& p : polylines) order.push_back(&p);
    std::stable_sort(order.begin(), order.end(), [](const Polyline* a, const Polyline* b) {
        if (a->depth != b->depth) return a->depth < b->depth;
        return a->sort_key < b->sort_key;
    });
    std::string out;
    out += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    out += "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" + fmt(width) +
           "\" height=\"" + fmt(height) + "\" viewBox=\"0 0 " + fmt(width) + " " + fmt(height) +
           "\">\n";
    out += "<g fill=\"none\" stroke-width=\"1.2\">\n";
    for (const auto* p : order) {
        const char* color = kPalette[p->depth % (sizeof kPalette / sizeof kPalette[0])];
        out += "<polyline class=\"w" + std::to_string(p->depth) + "\" stroke=\"" + color +
               "\" points=\"";
        for (std::size_t k = 0; k < p->points.size(); ++k) {
            Vec2 q = px(p->points[k]);
            if (k) out += " ";
            out += fmt(q.s) + "," + fmt(q.t);
        }
        out += "\"><title>" + p->sort_key + "</title></polyline>\n";
    }
    out += "</g>\n</svg>\n";
    return out;
}

}  // namespace crooked
