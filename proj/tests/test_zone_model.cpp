#include <doctest.h>

#include <cmath>

#include "zonefit/rng.hpp"
#include "zonefit/zone_model.hpp"

using namespace zonefit;

namespace {

ZoneParams random_params(SplitMix64& rng) {
    ZoneParams p;
    p.x0 = rng.uniform(-0.3, 0.3);
    p.y0 = rng.uniform(2.0, 3.0);
    p.alpha = rng.uniform(0.5, 1.3);
    p.lambda = rng.uniform(0.7, 1.5);
    p.beta = rng.uniform(2.0, 40.0);
    p.r = rng.uniform(1.0, 30.0);
    return p;
}

} // namespace

TEST_CASE("superellipse distance basics") {
    ZoneParams p;
    p.x0 = 0.1;
    p.y0 = 2.4;
    p.lambda = 1.0;
    p.r = 2.0;
    CHECK(superellipse_distance(p, p.x0, p.y0) == 0.0);
    CHECK(superellipse_distance(p, p.x0 + 0.3, p.y0 + 0.4) == doctest::Approx(0.5).epsilon(1e-12));

    p.r = 64.0;
    double d = superellipse_distance(p, p.x0 + 0.9, p.y0 + 0.9);
    CHECK(d >= 0.9);
    CHECK(d <= 0.9 * std::pow(2.0, 1.0 / 64.0));
}

TEST_CASE("strike probability boundary and saturation") {
    ZoneParams p;
    CHECK(strike_probability(p, p.x0 + p.alpha, p.y0) == doctest::Approx(0.5).epsilon(1e-12));

    // beta=2, d-alpha=0.5 -> 1/(1+e)
    ZoneParams q;
    q.beta = 2.0;
    q.lambda = 1.0;
    q.r = 2.0;
    double prob = strike_probability(q, q.x0 + q.alpha + 0.5, q.y0);
    CHECK(prob == doctest::Approx(1.0 / (1.0 + std::exp(1.0))).epsilon(1e-12));

    // far away: tiny but finite, no overflow
    ZoneParams far;
    far.beta = 50.0;
    double tail = strike_probability(far, far.x0 + far.alpha + 2.0, far.y0);
    CHECK(tail < 1e-40);
    CHECK(std::isfinite(tail));
    CHECK(tail >= 0.0);
}

TEST_CASE("strike probability symmetry and monotonicity") {
    SplitMix64 rng(99);
    for (int trial = 0; trial < 50; ++trial) {
        ZoneParams p = random_params(rng);
        double dx = rng.uniform(0.0, 1.5), dy = rng.uniform(0.0, 1.5);
        CHECK(strike_probability(p, p.x0 + dx, p.y0 + dy) ==
              doctest::Approx(strike_probability(p, p.x0 - dx, p.y0 + dy)).epsilon(1e-12));
        CHECK(strike_probability(p, p.x0 + dx, p.y0 + dy) ==
              doctest::Approx(strike_probability(p, p.x0 + dx, p.y0 - dy)).epsilon(1e-12));

        // non-increasing along a ray from center
        double theta = rng.uniform(0.0, 2.0 * M_PI);
        double prev = 1.1;
        for (double t = 0.0; t <= 2.0; t += 0.05) {
            double prob = strike_probability(p, p.x0 + t * std::cos(theta), p.y0 + t * std::sin(theta));
            CHECK(prob <= prev + 1e-12);
            prev = prob;
        }
    }
}

TEST_CASE("scale coherence: boundary value stays 0.5") {
    ZoneParams p;
    p.alpha = 0.9;
    p.beta = 12.0;
    ZoneParams q = p;
    q.alpha = 2.0 * p.alpha;
    q.beta = 0.5 * p.beta;
    CHECK(strike_probability(p, p.x0 + p.alpha, p.y0) == doctest::Approx(0.5));
    CHECK(strike_probability(q, q.x0 + q.alpha, q.y0) == doctest::Approx(0.5));
}

TEST_CASE("norm limit at r=1 is the diamond") {
    ZoneParams p;
    p.r = 1.0;
    p.lambda = 2.0;
    double dx = 0.3, dy = 0.8;
    CHECK(superellipse_distance(p, p.x0 + dx, p.y0 + dy) ==
          doctest::Approx(dx + dy / p.lambda).epsilon(1e-12));
}

TEST_CASE("contour axis crossings and consistency") {
    SplitMix64 rng(7);
    ZoneParams p = random_params(rng);
    auto pts = contour(p, 0.5, 256);
    REQUIRE(pts.size() == 256);
    // theta=0 -> (x0 + alpha, y0)
    CHECK(pts[0].x == doctest::Approx(p.x0 + p.alpha).epsilon(1e-12));
    CHECK(pts[0].y == doctest::Approx(p.y0).epsilon(1e-9));
    // theta=pi/2 -> (x0, y0 + alpha*lambda)
    CHECK(pts[64].y == doctest::Approx(p.y0 + p.alpha * p.lambda).epsilon(1e-9));

    for (const auto& v : pts)
        CHECK(std::fabs(strike_probability(p, v.x, v.y) - 0.5) < 1e-9);
}

TEST_CASE("contour error paths and nesting") {
    ZoneParams weak;
    weak.beta = 2.0;
    weak.alpha = 0.9;
    // logit(0.9)/2 = 1.0986 > alpha
    CHECK_THROWS_AS(contour(weak, 0.9, 64), EmptyContour);
    CHECK_THROWS_AS(contour(weak, 0.5, 4), std::invalid_argument);

    ZoneParams p;
    CHECK(contour_radius(p, 0.25) > contour_radius(p, 0.5));
    auto outer = contour(p, 0.25, 128);
    auto inner = contour(p, 0.5, 128);
    for (std::size_t i = 0; i < outer.size(); ++i) {
        double ro = superellipse_distance(p, outer[i].x, outer[i].y);
        double ri = superellipse_distance(p, inner[i].x, inner[i].y);
        CHECK(ro > ri);
    }
}

TEST_CASE("rulebook call uses open intervals") {
    RulebookZone z;
    CHECK(rulebook_call(z, 0.0, 2.5) == Call::Strike);
    CHECK(rulebook_call(z, 0.9, 2.5) == Call::Ball);
    CHECK(rulebook_call(z, -0.9, 2.5) == Call::Ball);
    CHECK(rulebook_call(z, 0.0, 1.5) == Call::Ball);
    CHECK(rulebook_call(z, 0.0, 3.5) == Call::Ball);
    CHECK(rulebook_call(z, 0.899999, 3.499999) == Call::Strike);
}

TEST_CASE("probability grid shapes and values") {
    ZoneParams p;
    auto g1 = probability_grid(p, {p.x0 - 0.025, p.x0 + 0.025, p.y0 - 0.025, p.y0 + 0.025}, 0.05);
    REQUIRE(g1.nx == 1);
    REQUIRE(g1.ny == 1);
    CHECK(g1.at(0, 0) == doctest::Approx(strike_probability(p, p.x0, p.y0)).epsilon(1e-12));

    auto g = probability_grid(p, {}, 0.05);
    CHECK(g.nx == 60);
    CHECK(g.ny == 60);
    for (double v : g.values) {
        CHECK(v > 0.0);
        CHECK(v < 1.0);
    }

    CHECK_THROWS_AS(probability_grid(p, {1.0, -1.0, 0.0, 1.0}, 0.05), InvalidExtent);
    CHECK_THROWS_AS(probability_grid(p, {}, -0.1), InvalidExtent);
}

TEST_CASE("grid difference") {
    ZoneParams a, b;
    b.beta = 30.0;
    b.r = 10.0;
    auto ga = probability_grid(a, {}, 0.1);
    auto gb = probability_grid(b, {}, 0.1);

    auto zero = grid_difference(ga, ga);
    for (double v : zero.values) CHECK(v == 0.0);

    auto ab = grid_difference(ga, gb);
    auto ba = grid_difference(gb, ga);
    for (std::size_t i = 0; i < ab.values.size(); ++i)
        CHECK(ab.values[i] + ba.values[i] == doctest::Approx(0.0));

    auto other = probability_grid(a, {}, 0.05);
    CHECK_THROWS_AS(grid_difference(ga, other), GridMismatch);
}

TEST_CASE("derived metrics") {
    ZoneParams p;
    p.alpha = 0.9;
    p.lambda = 10.0 / 9.0;
    auto dm = derived_metrics(p);
    CHECK(dm.width == doctest::Approx(1.8));
    CHECK(dm.height == doctest::Approx(2.0));

    SplitMix64 rng(3);
    for (int i = 0; i < 20; ++i) {
        ZoneParams q = random_params(rng);
        auto m = derived_metrics(q);
        CHECK(m.height / m.width == doctest::Approx(q.lambda).epsilon(1e-12));
    }
}
