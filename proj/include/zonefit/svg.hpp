#pragma once

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>
#include <string>
#include <vector>

#include "zonefit/zone_model.hpp"

namespace zonefit {
namespace svg {

namespace detail {

inline std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.3f", v);
    return buf;
}

// maps data coordinates to pixel coordinates (y flipped)
struct Viewport {
    double x_min, x_max, y_min, y_max;
    double width, height, margin;

    double px(double x) const {
        return margin + (x - x_min) / (x_max - x_min) * (width - 2 * margin);
    }
    double py(double y) const {
        return height - margin - (y - y_min) / (y_max - y_min) * (height - 2 * margin);
    }
};

inline std::string rgb(int r, int g, int b) {
    char buf[16];
    std::snprintf(buf, sizeof(buf), "#%02x%02x%02x", r, g, b);
    return buf;
}

// blue-white-red diverging map for values in [-1, 1]
inline std::string diverging_color(double v) {
    v = std::clamp(v, -1.0, 1.0);
    int r, g, b;
    if (v >= 0.0) {
        r = static_cast<int>(244 - 29 * v);
        g = static_cast<int>(244 - 196 * v);
        b = static_cast<int>(244 - 205 * v);
    } else {
        double u = -v;
        r = static_cast<int>(244 - 191 * u);
        g = static_cast<int>(244 - 130 * u);
        b = static_cast<int>(244 - 64 * u);
    }
    return rgb(r, g, b);
}

// white-to-green sequential map for probabilities in [0, 1]
inline std::string sequential_color(double v) {
    v = std::clamp(v, 0.0, 1.0);
    int r = static_cast<int>(247 - 207 * v);
    int g = static_cast<int>(252 - 143 * v);
    int b = static_cast<int>(245 - 201 * v);
    return rgb(r, g, b);
}

} // namespace detail

inline const std::vector<std::string>& level_palette() {
    static const std::vector<std::string> colors = {
        "#1b9e77", "#d95f02", "#7570b3", "#e7298a", "#66a61e", "#e6ab02"};
    return colors;
}

struct ContourLayer {
    std::vector<Point> points;
    std::string label;
    std::string color;
};

// Standalone SVG: contour polylines plus the rule-book rectangle overlay.
inline std::string render_contours(const std::vector<ContourLayer>& layers,
                                   const RulebookZone& z,
                                   double x_min = -1.8, double x_max = 1.8,
                                   double y_min = 0.5, double y_max = 4.5,
                                   int width = 600, int height = 640) {
    detail::Viewport vp{x_min, x_max, y_min, y_max,
                        static_cast<double>(width), static_cast<double>(height), 40.0};
    std::ostringstream os;
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width
       << "\" height=\"" << height << "\" viewBox=\"0 0 " << width << ' ' << height << "\">\n";
    os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";

    // rule-book rectangle
    os << "<rect x=\"" << detail::fmt(vp.px(-z.x_half)) << "\" y=\"" << detail::fmt(vp.py(z.y_high))
       << "\" width=\"" << detail::fmt(vp.px(z.x_half) - vp.px(-z.x_half))
       << "\" height=\"" << detail::fmt(vp.py(z.y_low) - vp.py(z.y_high))
       << "\" fill=\"none\" stroke=\"black\" stroke-width=\"2\"/>\n";

    double ly = 20.0;
    for (const auto& layer : layers) {
        os << "<polygon points=\"";
        for (const auto& p : layer.points)
            os << detail::fmt(vp.px(p.x)) << ',' << detail::fmt(vp.py(p.y)) << ' ';
        os << "\" fill=\"none\" stroke=\"" << layer.color << "\" stroke-width=\"1.5\"/>\n";
        os << "<text x=\"8\" y=\"" << detail::fmt(ly) << "\" font-size=\"12\" fill=\""
           << layer.color << "\">" << layer.label << "</text>\n";
        ly += 16.0;
    }
    os << "</svg>\n";
    return os.str();
}

// Heat map of a grid; diverging=true centers the color scale at zero.
inline std::string render_heatmap(const ProbabilityGrid& g, bool diverging,
                                  const RulebookZone* overlay = nullptr,
                                  int width = 600, int height = 640) {
    detail::Viewport vp{g.extent.x_min, g.extent.x_max, g.extent.y_min, g.extent.y_max,
                        static_cast<double>(width), static_cast<double>(height), 40.0};
    std::ostringstream os;
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width
       << "\" height=\"" << height << "\" viewBox=\"0 0 " << width << ' ' << height << "\">\n";
    os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    for (std::size_t iy = 0; iy < g.ny; ++iy) {
        for (std::size_t ix = 0; ix < g.nx; ++ix) {
            double x0 = g.extent.x_min + ix * g.step;
            double y1 = g.extent.y_min + (iy + 1) * g.step;
            double v = g.at(iy, ix);
            std::string color = diverging ? detail::diverging_color(v)
                                          : detail::sequential_color(v);
            os << "<rect x=\"" << detail::fmt(vp.px(x0)) << "\" y=\"" << detail::fmt(vp.py(y1))
               << "\" width=\"" << detail::fmt(vp.px(x0 + g.step) - vp.px(x0))
               << "\" height=\"" << detail::fmt(vp.py(y1 - g.step) - vp.py(y1))
               << "\" fill=\"" << color << "\"/>\n";
        }
    }
    if (overlay) {
        os << "<rect x=\"" << detail::fmt(vp.px(-overlay->x_half))
           << "\" y=\"" << detail::fmt(vp.py(overlay->y_high))
           << "\" width=\"" << detail::fmt(vp.px(overlay->x_half) - vp.px(-overlay->x_half))
           << "\" height=\"" << detail::fmt(vp.py(overlay->y_low) - vp.py(overlay->y_high))
           << "\" fill=\"none\" stroke=\"black\" stroke-width=\"2\"/>\n";
    }
    os << "</svg>\n";
    return os.str();
}

} // namespace svg
} // namespace zonefit
