#pragma once

#include <cmath>
#include <stdexcept>
#include <utility>
#include <vector>

#include "zonefit/stats.hpp"

namespace zonefit {

// Beyond this exponent the superellipse is numerically a rectangle and
// |.|^r would overflow long before the shape changes.
constexpr double kRectilinearityCap = 64.0;

struct ZoneParams {
    double x0 = 0.0;       // horizontal center, ft
    double y0 = 2.5;       // vertical center, ft
    double alpha = 0.9;    // half-width, ft
    double lambda = 10.0 / 9.0;  // height/width scaling
    double beta = 10.0;    // boundary steepness, 1/ft
    double r = 2.0;        // rectilinearity exponent

    bool valid() const {
        return std::isfinite(x0) && std::isfinite(y0) &&
               std::isfinite(alpha) && alpha > 0.0 &&
               std::isfinite(lambda) && lambda > 0.0 &&
               std::isfinite(beta) && beta > 0.0 &&
               std::isfinite(r) && r >= 1.0 && r <= kRectilinearityCap;
    }
};

struct DerivedMetrics {
    double width;   // 2*alpha
    double height;  // 2*alpha*lambda
    double center_x;
    double center_y;
};

inline DerivedMetrics derived_metrics(const ZoneParams& p) {
    return {2.0 * p.alpha, 2.0 * p.alpha * p.lambda, p.x0, p.y0};
}

// d = (|x-x0|^r + |(y-y0)/lambda|^r)^(1/r), factoring out the max term so
// large r never overflows.
inline double superellipse_distance(const ZoneParams& p, double x, double y) {
    double tx = std::fabs(x - p.x0);
    double ty = std::fabs((y - p.y0) / p.lambda);
    double m = tx > ty ? tx : ty;
    if (m == 0.0) return 0.0;
    double s = std::pow(tx / m, p.r) + std::pow(ty / m, p.r);
    return m * std::pow(s, 1.0 / p.r);
}

inline double strike_probability(const ZoneParams& p, double x, double y) {
    double d = superellipse_distance(p, x, y);
    return logistic(-p.beta * (d - p.alpha));
}

struct RulebookZone {
    double x_half = 0.9;
    double y_low = 1.5;
    double y_high = 3.5;
};

enum class Call { Strike, Ball };

// Open intervals: a pitch exactly on the boundary is a Ball.
inline Call rulebook_call(const RulebookZone& z, double x, double y) {
    bool in = x > -z.x_half && x < z.x_half && y > z.y_low && y < z.y_high;
    return in ? Call::Strike : Call::Ball;
}

struct EmptyContour : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Point {
    double x;
    double y;
};

// Level-set radius for a probability threshold; <= 0 means the threshold
// is unreachable inside the model.
inline double contour_radius(const ZoneParams& p, double prob) {
    return p.alpha - logit(prob) / p.beta;
}

// Analytic superellipse of the level set strike_probability == prob.
inline std::vector<Point> contour(const ZoneParams& p, double prob, int n = 256) {
    if (n < 8) throw std::invalid_argument("contour: need n >= 8");
    if (prob <= 0.0 || prob >= 1.0) throw std::invalid_argument("contour: prob must be in (0,1)");
    double dstar = contour_radius(p, prob);
    if (dstar <= 0.0) throw EmptyContour("contour: threshold unreachable (d* <= 0)");
    std::vector<Point> pts;
    pts.reserve(n);
    double e = 2.0 / p.r;
    for (int i = 0; i < n; ++i) {
        double theta = 2.0 * M_PI * i / n;
        double c = std::cos(theta), s = std::sin(theta);
        double sx = c < 0 ? -1.0 : 1.0;
        double sy = s < 0 ? -1.0 : 1.0;
        double px = p.x0 + dstar * sx * std::pow(std::fabs(c), e);
        double py = p.y0 + p.lambda * dstar * sy * std::pow(std::fabs(s), e);
        pts.push_back({px, py});
    }
    return pts;
}

struct InvalidExtent : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct GridMismatch : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct GridExtent {
    double x_min = -1.5;
    double x_max = 1.5;
    double y_min = 1.0;
    double y_max = 4.0;
};

struct ProbabilityGrid {
    GridExtent extent;
    double step = 0.05;
    std::size_t nx = 0;
    std::size_t ny = 0;
    std::vector<double> values;  // row-major, ny rows of nx

    double& at(std::size_t iy, std::size_t ix) { return values[iy * nx + ix]; }
    double at(std::size_t iy, std::size_t ix) const { return values[iy * nx + ix]; }

    // cell-center coordinates
    double x_of(std::size_t ix) const { return extent.x_min + (ix + 0.5) * step; }
    double y_of(std::size_t iy) const { return extent.y_min + (iy + 0.5) * step; }

    bool same_layout(const ProbabilityGrid& o) const {
        return nx == o.nx && ny == o.ny && step == o.step &&
               extent.x_min == o.extent.x_min && extent.x_max == o.extent.x_max &&
               extent.y_min == o.extent.y_min && extent.y_max == o.extent.y_max;
    }
};

// Samples strike_probability at cell centers.
inline ProbabilityGrid probability_grid(const ZoneParams& p, const GridExtent& e, double step) {
    if (!(step > 0.0) || e.x_max <= e.x_min || e.y_max <= e.y_min)
        throw InvalidExtent("probability_grid: degenerate extent or step");
    ProbabilityGrid g;
    g.extent = e;
    g.step = step;
    g.nx = static_cast<std::size_t>(std::floor((e.x_max - e.x_min) / step + 1e-9));
    g.ny = static_cast<std::size_t>(std::floor((e.y_max - e.y_min) / step + 1e-9));
    if (g.nx == 0 || g.ny == 0) throw InvalidExtent("probability_grid: extent smaller than step");
    g.values.resize(g.nx * g.ny);
    for (std::size_t iy = 0; iy < g.ny; ++iy)
        for (std::size_t ix = 0; ix < g.nx; ++ix)
            g.at(iy, ix) = strike_probability(p, g.x_of(ix), g.y_of(iy));
    return g;
}

inline ProbabilityGrid grid_difference(const ProbabilityGrid& a, const ProbabilityGrid& b) {
    if (!a.same_layout(b)) throw GridMismatch("grid_difference: extent/step mismatch");
    ProbabilityGrid g = a;
    for (std::size_t i = 0; i < g.values.size(); ++i) g.values[i] = a.values[i] - b.values[i];
    return g;
}

} // namespace zonefit
