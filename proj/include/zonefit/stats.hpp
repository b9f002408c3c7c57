#pragma once

#include <cmath>
#include <stdexcept>
#include <utility>

namespace zonefit {

struct InvalidCounts : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// log(1 + e^z) without overflow for large |z|
inline double softplus(double z) {
    if (z > 0.0) return z + std::log1p(std::exp(-z));
    return std::log1p(std::exp(z));
}

// logistic function, saturates cleanly at 0/1
inline double logistic(double z) {
    if (z >= 0.0) {
        return 1.0 / (1.0 + std::exp(-z));
    }
    double e = std::exp(z);
    return e / (1.0 + e);
}

inline double logit(double p) {
    return std::log(p / (1.0 - p));
}

// Regularized incomplete beta I_x(a, b), Lentz continued fraction.
namespace detail {

inline double incbeta_cf(double a, double b, double x) {
    constexpr double tiny = 1e-300;
    constexpr double eps = 1e-15;
    double qab = a + b, qap = a + 1.0, qam = a - 1.0;
    double c = 1.0;
    double d = 1.0 - qab * x / qap;
    if (std::fabs(d) < tiny) d = tiny;
    d = 1.0 / d;
    double h = d;
    for (int m = 1; m <= 300; ++m) {
        double m2 = 2.0 * m;
        double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
        d = 1.0 + aa * d;
        if (std::fabs(d) < tiny) d = tiny;
        c = 1.0 + aa / c;
        if (std::fabs(c) < tiny) c = tiny;
        d = 1.0 / d;
        h *= d * c;
        aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
        d = 1.0 + aa * d;
        if (std::fabs(d) < tiny) d = tiny;
        c = 1.0 + aa / c;
        if (std::fabs(c) < tiny) c = tiny;
        d = 1.0 / d;
        double del = d * c;
        h *= del;
        if (std::fabs(del - 1.0) < eps) break;
    }
    return h;
}

} // namespace detail

inline double regularized_incomplete_beta(double a, double b, double x) {
    if (x <= 0.0) return 0.0;
    if (x >= 1.0) return 1.0;
    double ln_front = std::lgamma(a + b) - std::lgamma(a) - std::lgamma(b)
                    + a * std::log(x) + b * std::log1p(-x);
    double front = std::exp(ln_front);
    if (x < (a + 1.0) / (a + b + 2.0)) {
        return front * detail::incbeta_cf(a, b, x) / a;
    }
    return 1.0 - front * detail::incbeta_cf(b, a, 1.0 - x) / b;
}

// Beta(a, b) quantile by bisection on the regularized incomplete beta.
inline double beta_quantile(double p, double a, double b) {
    if (p <= 0.0) return 0.0;
    if (p >= 1.0) return 1.0;
    double lo = 0.0, hi = 1.0;
    for (int i = 0; i < 200; ++i) {
        double mid = 0.5 * (lo + hi);
        if (regularized_incomplete_beta(a, b, mid) < p) {
            lo = mid;
        } else {
            hi = mid;
        }
        if (hi - lo < 1e-15) break;
    }
    return 0.5 * (lo + hi);
}

// Central 95% Jeffreys interval for a binomial proportion: Beta(k+1/2, n-k+1/2)
// with the conventional endpoint pins at k=0 and k=n.
inline std::pair<double, double> jeffreys_interval(long long k, long long n) {
    if (n < 1 || k < 0 || k > n) throw InvalidCounts("jeffreys_interval: need 0 <= k <= n, n >= 1");
    double a = static_cast<double>(k) + 0.5;
    double b = static_cast<double>(n - k) + 0.5;
    double lo = (k == 0) ? 0.0 : beta_quantile(0.025, a, b);
    double hi = (k == n) ? 1.0 : beta_quantile(0.975, a, b);
    return {lo, hi};
}

inline double normal_sf(double z) {
    return 0.5 * std::erfc(z / std::sqrt(2.0));
}

struct TwoProportionResult {
    double z = 0.0;
    double p_value = 1.0;
    bool degenerate = false;
};

// Pooled two-proportion z-test, two-sided.
inline TwoProportionResult two_proportion_test(long long k1, long long n1,
                                               long long k2, long long n2) {
    if (n1 < 1 || n2 < 1) throw InvalidCounts("two_proportion_test: need n1, n2 >= 1");
    if (k1 < 0 || k1 > n1 || k2 < 0 || k2 > n2) throw InvalidCounts("two_proportion_test: need 0 <= k <= n");
    double p1 = static_cast<double>(k1) / n1;
    double p2 = static_cast<double>(k2) / n2;
    double pooled = static_cast<double>(k1 + k2) / (n1 + n2);
    TwoProportionResult res;
    if (pooled <= 0.0 || pooled >= 1.0) {
        res.degenerate = true;
        return res;
    }
    double se = std::sqrt(pooled * (1.0 - pooled) * (1.0 / n1 + 1.0 / n2));
    res.z = (p1 - p2) / se;
    res.p_value = 2.0 * normal_sf(std::fabs(res.z));
    return res;
}

} // namespace zonefit
