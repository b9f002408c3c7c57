#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>
#include <vector>

namespace zonefit {

struct NelderMeadResult {
    std::vector<double> x;
    double value = 0.0;
    bool converged = false;
    int iterations = 0;
    int evaluations = 0;
};

// Standard Nelder-Mead simplex minimizer. Converged when the value spread
// across the simplex drops below tol.
inline NelderMeadResult nelder_mead(const std::function<double(const std::vector<double>&)>& f,
                                    const std::vector<double>& x0,
                                    double initial_step = 0.1,
                                    double tol = 1e-8,
                                    int max_iters = 5000) {
    const std::size_t n = x0.size();
    const double reflect = 1.0, expand = 2.0, contract = 0.5, shrink = 0.5;

    NelderMeadResult res;
    std::vector<std::vector<double>> simplex(n + 1, x0);
    std::vector<double> fv(n + 1);
    for (std::size_t i = 0; i < n; ++i) simplex[i + 1][i] += initial_step;
    for (std::size_t i = 0; i <= n; ++i) {
        fv[i] = f(simplex[i]);
        ++res.evaluations;
    }

    std::vector<std::size_t> order(n + 1);
    std::vector<double> centroid(n), xr(n), xe(n), xc(n);

    for (int iter = 0; iter < max_iters; ++iter) {
        res.iterations = iter + 1;
        std::iota(order.begin(), order.end(), std::size_t{0});
        std::sort(order.begin(), order.end(),
                  [&](std::size_t a, std::size_t b) { return fv[a] < fv[b]; });
        std::size_t best = order[0], worst = order[n], second_worst = order[n - 1];

        if (fv[worst] - fv[best] < tol) {
            res.converged = true;
            break;
        }

        std::fill(centroid.begin(), centroid.end(), 0.0);
        for (std::size_t i = 0; i <= n; ++i) {
            if (i == worst) continue;
            for (std::size_t j = 0; j < n; ++j) centroid[j] += simplex[i][j];
        }
        for (double& c : centroid) c /= static_cast<double>(n);

        for (std::size_t j = 0; j < n; ++j)
            xr[j] = centroid[j] + reflect * (centroid[j] - simplex[worst][j]);
        double fr = f(xr);
        ++res.evaluations;

        if (fr < fv[best]) {
            for (std::size_t j = 0; j < n; ++j)
                xe[j] = centroid[j] + expand * (xr[j] - centroid[j]);
            double fe = f(xe);
            ++res.evaluations;
            if (fe < fr) {
                simplex[worst] = xe;
                fv[worst] = fe;
            } else {
                simplex[worst] = xr;
                fv[worst] = fr;
            }
        } else if (fr < fv[second_worst]) {
            simplex[worst] = xr;
            fv[worst] = fr;
        } else {
            bool outside = fr < fv[worst];
            const std::vector<double>& towards = outside ? xr : simplex[worst];
            for (std::size_t j = 0; j < n; ++j)
                xc[j] = centroid[j] + contract * (towards[j] - centroid[j]);
            double fc = f(xc);
            ++res.evaluations;
            if (fc < (outside ? fr : fv[worst])) {
                simplex[worst] = xc;
                fv[worst] = fc;
            } else {
                for (std::size_t i = 0; i <= n; ++i) {
                    if (i == best) continue;
                    for (std::size_t j = 0; j < n; ++j)
                        simplex[i][j] = simplex[best][j] + shrink * (simplex[i][j] - simplex[best][j]);
                    fv[i] = f(simplex[i]);
                    ++res.evaluations;
                }
            }
        }
    }

    std::size_t best = 0;
    for (std::size_t i = 1; i <= n; ++i)
        if (fv[i] < fv[best]) best = i;
    res.x = simplex[best];
    res.value = fv[best];
    return res;
}

} // namespace zonefit
