#include <doctest.h>

#include <cmath>

#include "zonefit/fitter.hpp"
#include "zonefit/rng.hpp"
#include "zonefit/synth.hpp"

using namespace zonefit;

namespace {

Dataset one_called(double x, double y, Outcome o) {
    Dataset d;
    Pitch p;
    p.season = 2023;
    p.x = x;
    p.y = y;
    p.outcome = o;
    d.pitches.push_back(p);
    return d;
}

ZoneParams truth() {
    ZoneParams t;
    t.x0 = 0.0;
    t.y0 = 2.5;
    t.alpha = 0.9;
    t.lambda = 1.11;
    t.beta = 20.0;
    t.r = 8.0;
    return t;
}

} // namespace

TEST_CASE("NLL of one boundary strike is ln 2") {
    ZoneParams p;
    Dataset d = one_called(p.x0 + p.alpha, p.y0, Outcome::CalledStrike);
    CHECK(negative_log_likelihood(p, d) == doctest::Approx(std::log(2.0)).epsilon(1e-12));
}

TEST_CASE("NLL saturates to 0+ for a sure strike at center") {
    ZoneParams p;
    p.beta = 700.0;  // beta*alpha = 630 keeps exp(-z) above double underflow
    Dataset d = one_called(p.x0, p.y0, Outcome::CalledStrike);
    double nll = negative_log_likelihood(p, d);
    CHECK(nll > 0.0);
    CHECK(nll < 1e-40);
    CHECK(std::isfinite(nll));
}

TEST_CASE("NLL requires called pitches and ignores swings") {
    Dataset swings = one_called(0.0, 2.5, Outcome::SwingingStrike);
    CHECK_THROWS_AS(negative_log_likelihood(ZoneParams{}, swings), NoCalledPitches);

    ZoneParams p;
    Dataset mixed = one_called(p.x0 + p.alpha, p.y0, Outcome::CalledStrike);
    Pitch swing;
    swing.outcome = Outcome::Foul;
    swing.x = 0.0;
    swing.y = 2.5;
    mixed.pitches.push_back(swing);
    CHECK(negative_log_likelihood(p, mixed) == doctest::Approx(std::log(2.0)).epsilon(1e-12));
}

TEST_CASE("NLL over concatenated datasets is additive") {
    SynthConfig cfg;
    cfg.true_params = truth();
    cfg.n = 500;
    cfg.seed = 11;
    Dataset a = generate(cfg);
    cfg.seed = 12;
    Dataset b = generate(cfg);
    Dataset both = a;
    both.pitches.insert(both.pitches.end(), b.pitches.begin(), b.pitches.end());
    ZoneParams p = truth();
    CHECK(negative_log_likelihood(p, both) ==
          doctest::Approx(negative_log_likelihood(p, a) + negative_log_likelihood(p, b))
              .epsilon(1e-12));
}

TEST_CASE("parameter transform round trip") {
    SplitMix64 rng(21);
    for (int i = 0; i < 200; ++i) {
        ZoneParams p;
        p.x0 = rng.uniform(-2.0, 2.0);
        p.y0 = rng.uniform(0.5, 4.5);
        p.alpha = rng.uniform(0.05, 3.0);
        p.lambda = rng.uniform(0.1, 5.0);
        p.beta = rng.uniform(0.1, 9000.0);
        p.r = rng.uniform(1.0 + 1e-6, 63.0);
        ZoneParams q = from_transformed(to_transformed(p));
        CHECK(q.x0 == doctest::Approx(p.x0).epsilon(1e-12));
        CHECK(q.y0 == doctest::Approx(p.y0).epsilon(1e-12));
        CHECK(q.alpha == doctest::Approx(p.alpha).epsilon(1e-12));
        CHECK(q.lambda == doctest::Approx(p.lambda).epsilon(1e-12));
        CHECK(q.beta == doctest::Approx(p.beta).epsilon(1e-12));
        CHECK(q.r == doctest::Approx(p.r).epsilon(1e-12));
    }
}

TEST_CASE("fit preconditions") {
    SynthConfig small;
    small.true_params = truth();
    small.n = 30;
    CHECK_THROWS_AS(fit(generate(small)), TooFewPitches);

    Dataset all_strikes;
    SplitMix64 rng(1);
    for (int i = 0; i < 100; ++i) {
        Pitch p;
        p.season = 2023;
        p.x = rng.uniform(-0.5, 0.5);
        p.y = rng.uniform(2.0, 3.0);
        p.outcome = Outcome::CalledStrike;
        all_strikes.pitches.push_back(p);
    }
    CHECK_THROWS_AS(fit(all_strikes), PerfectSeparation);
}

TEST_CASE("fit recovers synthetic truth at moderate n") {
    SynthConfig scfg;
    scfg.true_params = truth();
    scfg.n = 8000;
    scfg.seed = 42;
    Dataset d = generate(scfg);

    FitConfig fcfg;
    fcfg.n_starts = 3;
    fcfg.n_bootstrap = 0;
    fcfg.seed = 42;
    FitResult res = fit(d, fcfg);

    CHECK(res.converged);
    CHECK(res.n_pitches_used == 8000);
    CHECK(!res.capped_beta);
    CHECK(std::fabs(res.params.x0 - 0.0) < 0.05);
    CHECK(std::fabs(res.params.y0 - 2.5) < 0.05);
    CHECK(std::fabs(res.params.alpha - 0.9) < 0.05);
    CHECK(std::fabs(res.params.lambda / 1.11 - 1.0) < 0.05);
    CHECK(std::fabs(res.params.beta / 20.0 - 1.0) < 0.35);
    CHECK(std::fabs(res.params.r / 8.0 - 1.0) < 0.5);

    // optimizer must beat the realized truth on its own sample
    CHECK(res.nll <= negative_log_likelihood(scfg.true_params, d) + 1e-6);
}

TEST_CASE("fit is deterministic given the seed") {
    SynthConfig scfg;
    scfg.true_params = truth();
    scfg.n = 2000;
    scfg.seed = 5;
    Dataset d = generate(scfg);

    FitConfig fcfg;
    fcfg.n_starts = 2;
    fcfg.n_bootstrap = 8;
    fcfg.seed = 99;
    FitResult a = fit(d, fcfg);
    FitResult b = fit(d, fcfg);
    CHECK(a.params.x0 == b.params.x0);
    CHECK(a.params.beta == b.params.beta);
    CHECK(a.nll == b.nll);
    REQUIRE(a.intervals.has_value());
    REQUIRE(b.intervals.has_value());
    CHECK(a.intervals->beta.lo == b.intervals->beta.lo);
    CHECK(a.intervals->r.hi == b.intervals->r.hi);
}

TEST_CASE("rulebook-deterministic labels push beta to the cap and r large") {
    SynthConfig scfg;
    scfg.n = 2000;
    scfg.seed = 1;
    scfg.label_mode = LabelMode::RulebookDeterministic;
    Dataset d = generate(scfg);

    FitConfig fcfg;
    fcfg.n_starts = 3;
    fcfg.n_bootstrap = 0;
    fcfg.seed = 1;
    FitResult res = fit(d, fcfg);
    CHECK(res.capped_beta);
    CHECK(res.params.beta == doctest::Approx(fcfg.beta_cap));
    CHECK(res.params.r > 8.0);
}

TEST_CASE("bootstrap disabled and enabled paths") {
    SynthConfig scfg;
    scfg.true_params = truth();
    scfg.n = 2000;
    scfg.seed = 31;
    Dataset d = generate(scfg);

    FitConfig off;
    off.n_starts = 2;
    off.n_bootstrap = 0;
    CHECK(!fit(d, off).intervals.has_value());

    FitConfig on = off;
    on.n_bootstrap = 12;
    FitResult res = fit(d, on);
    REQUIRE(res.intervals.has_value());
    const auto& iv = *res.intervals;
    CHECK(iv.alpha.contains(res.params.alpha));
    CHECK(iv.beta.contains(res.params.beta));
    CHECK(iv.lambda.contains(res.params.lambda));
    CHECK(iv.width.contains(2.0 * res.params.alpha));
    CHECK(iv.alpha.lo < iv.alpha.hi);
}
