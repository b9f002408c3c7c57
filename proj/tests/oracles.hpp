// Test-only oracles, kept independent of the library implementation paths
// they are used to check.
#pragma once

#include <cmath>
#include <cstddef>
#include <vector>

namespace oracles {

// Beta(a, b) quantile via quadrature + bisection, independent of any
// incomplete-beta series/continued-fraction code.
//
// Substitution x = sin^2(t/2) turns the density into
//   g(t) = sin(t/2)^(2a-1) * cos(t/2)^(2b-1),  t in [0, pi],
// which is bounded for a, b >= 1/2, so composite Simpson applies cleanly.
class BetaQuantileOracle {
public:
    explicit BetaQuantileOracle(double a, double b, std::size_t n_intervals = 16384)
        : a_(a), b_(b), n_(n_intervals % 2 ? n_intervals + 1 : n_intervals) {
        double h = M_PI / n_;
        cum_.resize(n_ / 2 + 1, 0.0);
        double g_prev = g(0.0);
        for (std::size_t j = 0; j < n_ / 2; ++j) {
            double t_mid = (2 * j + 1) * h;
            double t_hi = (2 * j + 2) * h;
            double g_hi = g(t_hi);
            cum_[j + 1] = cum_[j] + h / 3.0 * (g_prev + 4.0 * g(t_mid) + g_hi);
            g_prev = g_hi;
        }
        total_ = cum_.back();
    }

    double quantile(double q) const {
        double target = q * total_;
        std::size_t lo = 0, hi = cum_.size() - 1;
        while (hi - lo > 1) {
            std::size_t mid = (lo + hi) / 2;
            if (cum_[mid] < target) lo = mid;
            else hi = mid;
        }
        double h = M_PI / n_;
        double t_lo = 2.0 * lo * h, t_hi = 2.0 * hi * h;
        double c_lo = cum_[lo];
        // bisect inside the bracketing pair-interval
        for (int iter = 0; iter < 60; ++iter) {
            double t_mid = 0.5 * (t_lo + t_hi);
            if (c_lo + integrate(2.0 * lo * h, t_mid) < target) {
                t_lo = t_mid;
            } else {
                t_hi = t_mid;
            }
        }
        double t = 0.5 * (t_lo + t_hi);
        double s = std::sin(0.5 * t);
        return s * s;
    }

private:
    double g(double t) const {
        double ps = 2.0 * a_ - 1.0;
        double pc = 2.0 * b_ - 1.0;
        double s = std::sin(0.5 * t);
        double c = std::cos(0.5 * t);
        double val = 1.0;
        if (ps != 0.0) {
            if (s <= 0.0) return 0.0;
            val *= std::exp(ps * std::log(s));
        }
        if (pc != 0.0) {
            if (c <= 0.0) return 0.0;
            val *= std::exp(pc * std::log(c));
        }
        return val;
    }

    double integrate(double t0, double t1) const {
        constexpr int m = 64;  // even
        double h = (t1 - t0) / m;
        double acc = g(t0) + g(t1);
        for (int i = 1; i < m; ++i) acc += g(t0 + i * h) * (i % 2 ? 4.0 : 2.0);
        return acc * h / 3.0;
    }

    double a_, b_;
    std::size_t n_;
    std::vector<double> cum_;
    double total_ = 0.0;
};

inline std::pair<double, double> jeffreys_oracle(long long k, long long n) {
    BetaQuantileOracle oracle(k + 0.5, n - k + 0.5);
    double lo = (k == 0) ? 0.0 : oracle.quantile(0.025);
    double hi = (k == n) ? 1.0 : oracle.quantile(0.975);
    return {lo, hi};
}

} // namespace oracles
