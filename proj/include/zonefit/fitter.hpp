#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <stdexcept>
#include <vector>

#include "zonefit/data_model.hpp"
#include "zonefit/nelder_mead.hpp"
#include "zonefit/rng.hpp"
#include "zonefit/stats.hpp"
#include "zonefit/zone_model.hpp"

namespace zonefit {

struct NoCalledPitches : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct TooFewPitches : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct PerfectSeparation : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct BootstrapFailure : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct FitConfig {
    int n_starts = 8;
    int max_iters = 5000;
    double tol = 1e-8;            // Nelder-Mead value-spread tolerance
    std::uint64_t seed = 0;
    int n_bootstrap = 200;
    double beta_cap = 1e4;
};

struct Interval {
    double lo = 0.0;
    double hi = 0.0;
    bool contains(double v) const { return lo <= v && v <= hi; }
};

struct ParamIntervals {
    Interval x0, y0, alpha, lambda, beta, r;
    Interval width, height, center_x, center_y;
};

struct FitResult {
    ZoneParams params;
    double nll = 0.0;             // sum over called pitches
    bool converged = false;
    std::size_t n_pitches_used = 0;
    bool capped_beta = false;
    std::optional<ParamIntervals> intervals;  // bootstrap percentile, 95%
    int bootstrap_failures = 0;
    FitConfig config;
};

// Unconstrained optimizer coordinates:
//   [x0, y0, log alpha, log lambda, log beta, log(r - 1)]
using TransformedParams = std::array<double, 6>;

inline TransformedParams to_transformed(const ZoneParams& p) {
    return {p.x0, p.y0, std::log(p.alpha), std::log(p.lambda),
            std::log(p.beta), std::log(p.r - 1.0)};
}

inline ZoneParams from_transformed(const TransformedParams& t) {
    ZoneParams p;
    p.x0 = t[0];
    p.y0 = t[1];
    p.alpha = std::exp(t[2]);
    p.lambda = std::exp(t[3]);
    p.beta = std::exp(t[4]);
    p.r = 1.0 + std::exp(t[5]);
    return p;
}

namespace detail {

// Called pitches flattened for fast likelihood sweeps.
struct CalledSample {
    std::vector<double> xs, ys;
    std::vector<std::uint8_t> is_strike;

    std::size_t size() const { return xs.size(); }

    static CalledSample from(const Dataset& d) {
        CalledSample s;
        for (const auto& p : d.pitches) {
            if (!p.is_called()) continue;
            s.xs.push_back(p.x);
            s.ys.push_back(p.y);
            s.is_strike.push_back(p.outcome == Outcome::CalledStrike ? 1 : 0);
        }
        return s;
    }
};

// NLL with optional per-pitch integer weights (bootstrap multiplicities).
inline double nll_sample(const ZoneParams& p, const CalledSample& s,
                         const std::vector<std::uint32_t>* weights = nullptr) {
    const double inv_lambda = 1.0 / p.lambda;
    const double inv_r = 1.0 / p.r;
    double acc = 0.0;
    const std::size_t n = s.size();
    for (std::size_t i = 0; i < n; ++i) {
        const std::uint32_t w = weights ? (*weights)[i] : 1;
        if (w == 0) continue;
        double tx = std::fabs(s.xs[i] - p.x0);
        double ty = std::fabs(s.ys[i] - p.y0) * inv_lambda;
        double m = tx > ty ? tx : ty;
        double d = 0.0;
        if (m > 0.0) {
            d = m * std::pow(std::pow(tx / m, p.r) + std::pow(ty / m, p.r), inv_r);
        }
        double z = -p.beta * (d - p.alpha);
        // strike: -log sigma(z) = softplus(-z); ball: -log(1-sigma(z)) = softplus(z)
        acc += w * softplus(s.is_strike[i] ? -z : z);
    }
    return acc;
}

// Bounds keep exp() finite while leaving the whole sensible domain open.
inline ZoneParams decode_clamped(const std::vector<double>& t, double beta_cap) {
    auto cl = [](double v, double lo, double hi) { return std::min(std::max(v, lo), hi); };
    ZoneParams p;
    p.x0 = cl(t[0], -10.0, 10.0);
    p.y0 = cl(t[1], -10.0, 20.0);
    p.alpha = std::exp(cl(t[2], -10.0, 5.0));
    p.lambda = std::exp(cl(t[3], -10.0, 10.0));
    p.beta = std::min(std::exp(cl(t[4], -10.0, 15.0)), beta_cap);
    p.r = std::min(1.0 + std::exp(cl(t[5], -15.0, 10.0)), kRectilinearityCap);
    return p;
}

struct CoreFit {
    ZoneParams params;
    double nll = 0.0;
    bool converged = false;
    bool capped_beta = false;
    TransformedParams optimum;
};

inline CoreFit fit_core(const CalledSample& sample, const FitConfig& cfg,
                        const std::vector<std::uint32_t>* weights,
                        const std::optional<TransformedParams>& warm_start,
                        int n_starts, std::uint64_t jitter_tag) {
    auto objective = [&](const std::vector<double>& t) {
        return nll_sample(decode_clamped(t, cfg.beta_cap), sample, weights);
    };

    ZoneParams base;  // rule-book geometry prior
    base.x0 = 0.0;
    base.y0 = 2.5;
    base.alpha = 0.9;
    base.lambda = 10.0 / 9.0;
    base.beta = 10.0;
    base.r = 2.0;
    TransformedParams start0 = warm_start ? *warm_start : to_transformed(base);

    CoreFit best;
    bool have_best = false;
    for (int s = 0; s < n_starts; ++s) {
        std::vector<double> x0(start0.begin(), start0.end());
        if (s > 0) {
            auto rng = substream(cfg.seed, jitter_tag + static_cast<std::uint64_t>(s));
            for (double& v : x0) v += rng.uniform(-0.3, 0.3);
        }
        // restart with a re-inflated simplex until it stops helping; plain
        // Nelder-Mead stalls in the flat large-beta valley otherwise
        int budget = cfg.max_iters;
        NelderMeadResult nm;
        double prev_value = std::numeric_limits<double>::infinity();
        bool converged = false;
        for (int restart = 0; restart < 8 && budget > 0; ++restart) {
            auto run = nelder_mead(objective, x0, warm_start ? 0.05 : 0.1, cfg.tol, budget);
            budget -= run.iterations;
            if (restart == 0 || run.value < nm.value) nm = run;
            converged = converged || run.converged;
            if (prev_value - run.value < std::max(cfg.tol, 1e-10)) break;
            prev_value = run.value;
            x0 = run.x;
        }
        if (!have_best || nm.value < best.nll) {
            have_best = true;
            best.nll = nm.value;
            std::copy_n(nm.x.begin(), 6, best.optimum.begin());
            best.params = decode_clamped(nm.x, cfg.beta_cap);
            best.capped_beta = std::exp(std::min(nm.x[4], 15.0)) >= cfg.beta_cap;
        }
        best.converged = best.converged || converged;
    }
    return best;
}

} // namespace detail

// Sum of per-called-pitch Bernoulli negative log likelihoods; non-called
// outcomes are ignored.
inline double negative_log_likelihood(const ZoneParams& p, const Dataset& d) {
    auto sample = detail::CalledSample::from(d);
    if (sample.size() == 0) throw NoCalledPitches("negative_log_likelihood: no called pitches");
    return detail::nll_sample(p, sample);
}

inline FitResult fit(const Dataset& d, const FitConfig& cfg = {}) {
    auto sample = detail::CalledSample::from(d);
    if (sample.size() < 50)
        throw TooFewPitches("fit: need >= 50 called pitches, have " + std::to_string(sample.size()));
    std::size_t strikes = 0;
    for (auto b : sample.is_strike) strikes += b;
    if (strikes == 0 || strikes == sample.size())
        throw PerfectSeparation("fit: all called pitches share one call class");

    auto core = detail::fit_core(sample, cfg, nullptr, std::nullopt, cfg.n_starts, /*jitter_tag=*/1);

    FitResult res;
    res.params = core.params;
    res.nll = core.nll;
    res.converged = core.converged;
    res.capped_beta = core.capped_beta;
    res.n_pitches_used = sample.size();
    res.config = cfg;

    if (cfg.n_bootstrap > 0) {
        const std::size_t n = sample.size();
        std::vector<std::array<double, 10>> draws;  // x0 y0 a l b r w h cx cy
        draws.reserve(cfg.n_bootstrap);
        int failures = 0;
        std::vector<std::uint32_t> counts(n);
        for (int rep = 0; rep < cfg.n_bootstrap; ++rep) {
            auto rng = substream(cfg.seed, 10000 + static_cast<std::uint64_t>(rep));
            std::fill(counts.begin(), counts.end(), 0u);
            for (std::size_t i = 0; i < n; ++i)
                ++counts[static_cast<std::size_t>(rng.next_double() * n)];
            try {
                // warm-started single restart from the full-data optimum
                auto rc = detail::fit_core(sample, cfg, &counts, core.optimum, 1, 0);
                const auto& p = rc.params;
                auto dm = derived_metrics(p);
                draws.push_back({p.x0, p.y0, p.alpha, p.lambda, p.beta, p.r,
                                 dm.width, dm.height, dm.center_x, dm.center_y});
            } catch (const std::exception&) {
                ++failures;
            }
        }
        res.bootstrap_failures = failures;
        if (failures * 10 > cfg.n_bootstrap)
            throw BootstrapFailure("bootstrap_intervals: more than 10% of replicates failed");

        auto percentile = [&](int col, double q) {
            std::vector<double> v;
            v.reserve(draws.size());
            for (const auto& row : draws) v.push_back(row[col]);
            std::sort(v.begin(), v.end());
            double idx = q * (v.size() - 1);
            std::size_t lo = static_cast<std::size_t>(idx);
            std::size_t hi = std::min(lo + 1, v.size() - 1);
            double frac = idx - lo;
            return v[lo] * (1.0 - frac) + v[hi] * frac;
        };
        auto dm = derived_metrics(res.params);
        std::array<double, 10> point = {res.params.x0, res.params.y0, res.params.alpha,
                                        res.params.lambda, res.params.beta, res.params.r,
                                        dm.width, dm.height, dm.center_x, dm.center_y};
        std::array<Interval, 10> iv;
        for (int c = 0; c < 10; ++c) {
            iv[c].lo = std::min(percentile(c, 0.025), point[c]);
            iv[c].hi = std::max(percentile(c, 0.975), point[c]);
        }
        ParamIntervals pi;
        pi.x0 = iv[0];
        pi.y0 = iv[1];
        pi.alpha = iv[2];
        pi.lambda = iv[3];
        pi.beta = iv[4];
        pi.r = iv[5];
        pi.width = iv[6];
        pi.height = iv[7];
        pi.center_x = iv[8];
        pi.center_y = iv[9];
        res.intervals = pi;
    }
    return res;
}

inline ParamIntervals bootstrap_intervals(const Dataset& d, const FitConfig& cfg) {
    if (cfg.n_bootstrap <= 0)
        throw std::invalid_argument("bootstrap_intervals: n_bootstrap must be > 0");
    auto res = fit(d, cfg);
    return *res.intervals;
}

} // namespace zonefit
