#include <doctest.h>

#include "zonefit/synth.hpp"
#include "zonefit/zone_model.hpp"

using namespace zonefit;

TEST_CASE("same seed gives an identical dataset") {
    SynthConfig cfg;
    cfg.n = 1000;
    cfg.seed = 17;
    Dataset a = generate(cfg);
    Dataset b = generate(cfg);
    CHECK(a.pitches == b.pitches);
}

TEST_CASE("rulebook mode labels agree with rulebook_call exactly") {
    SynthConfig cfg;
    cfg.n = 3000;
    cfg.seed = 2;
    cfg.label_mode = LabelMode::RulebookDeterministic;
    Dataset d = generate(cfg);
    for (const auto& p : d.pitches) {
        Call c = rulebook_call(cfg.rulebook, p.x, p.y);
        CHECK(p.outcome == (c == Call::Strike ? Outcome::CalledStrike : Outcome::CalledBall));
    }
}

TEST_CASE("metadata stream is split from the location stream") {
    SynthConfig a;
    a.n = 500;
    a.seed = 9;
    SynthConfig b = a;
    b.left_hand_fraction = 0.9;
    b.pitch_type_mix = {1.0, 0, 0, 0, 0, 0, 0};
    Dataset da = generate(a);
    Dataset db = generate(b);
    for (std::size_t i = 0; i < da.pitches.size(); ++i) {
        CHECK(da.pitches[i].x == db.pitches[i].x);
        CHECK(da.pitches[i].y == db.pitches[i].y);
        CHECK(da.pitches[i].outcome == db.pitches[i].outcome);
    }
}

TEST_CASE("strike fraction higher inside the 50% contour than outside") {
    SynthConfig cfg;
    cfg.n = 20000;
    cfg.seed = 4;
    Dataset d = generate(cfg);
    std::size_t in_n = 0, in_k = 0, out_n = 0, out_k = 0;
    for (const auto& p : d.pitches) {
        bool strike = p.outcome == Outcome::CalledStrike;
        if (superellipse_distance(cfg.true_params, p.x, p.y) < cfg.true_params.alpha) {
            ++in_n;
            in_k += strike;
        } else {
            ++out_n;
            out_k += strike;
        }
    }
    REQUIRE(in_n > 0);
    REQUIRE(out_n > 0);
    CHECK(static_cast<double>(in_k) / in_n > static_cast<double>(out_k) / out_n);
}

TEST_CASE("empirical cell frequencies track the model probability") {
    SynthConfig cfg;
    cfg.true_params.beta = 8.0;
    cfg.n = 60000;
    cfg.seed = 13;
    Dataset d = generate(cfg);
    // coarse 4x4 grid over the location extent; 3-sigma binomial tolerance
    const double x0 = -2.0, y0 = 0.5, cell = 1.0;
    long long n[4][4] = {}, k[4][4] = {};
    for (const auto& p : d.pitches) {
        int ix = std::min(3, static_cast<int>((p.x - x0) / cell));
        int iy = std::min(3, static_cast<int>((p.y - y0) / cell));
        ++n[iy][ix];
        k[iy][ix] += p.outcome == Outcome::CalledStrike;
    }
    for (int iy = 0; iy < 4; ++iy) {
        for (int ix = 0; ix < 4; ++ix) {
            if (n[iy][ix] < 500) continue;
            // expected frequency is the cell-averaged probability
            double expected = 0.0;
            for (int sy = 0; sy < 10; ++sy)
                for (int sx = 0; sx < 10; ++sx)
                    expected += strike_probability(cfg.true_params,
                                                   x0 + ix * cell + (sx + 0.5) * cell / 10,
                                                   y0 + iy * cell + (sy + 0.5) * cell / 10);
            expected /= 100.0;
            double observed = static_cast<double>(k[iy][ix]) / n[iy][ix];
            double sigma = std::sqrt(std::max(expected * (1.0 - expected), 1e-4) / n[iy][ix]);
            CHECK(std::fabs(observed - expected) < 3.0 * sigma + 0.01);
        }
    }
}

TEST_CASE("config validation") {
    SynthConfig bad;
    bad.n = 0;
    CHECK_THROWS_AS(generate(bad), std::invalid_argument);

    SynthConfig mix;
    mix.pitch_type_mix = {0.5, 0, 0, 0, 0, 0, 0};
    CHECK_THROWS_AS(generate(mix), std::invalid_argument);

    SynthConfig ext;
    ext.location.uniform.x_max = ext.location.uniform.x_min;
    CHECK_THROWS_AS(generate(ext), std::invalid_argument);
}
