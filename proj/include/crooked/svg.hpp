#pragma once

#include <string>
#include <vector>

#include "crooked/zigzag.hpp"

namespace crooked {

/// Deterministic SVG scene: polylines in slice coordinates, stroke class and
/// hue keyed by the word length of the tile a polyline belongs to.
struct SvgScene {
    double xmin, xmax, ymin, ymax;
    struct Polyline {
        std::string sort_key;  // word string, then face label
        int depth;             // word length
        std::vector<Vec2> points;
    };
    std::vector<Polyline> polylines;

    void add(const std::string& key, int depth, std::vector<Vec2> pts);

    /// Clip a zigzag (two rays and a stem) to the viewport and add the
    /// surviving sub-polylines.
    void add_zigzag(const std::string& key, int depth, const Zigzag& z);

    /// Render as SVG 1.1; byte-deterministic for fixed input.
    std::string render() const;
};

}  // namespace crooked
