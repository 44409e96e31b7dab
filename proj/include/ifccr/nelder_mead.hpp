#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <numeric>
#include <random>
#include <vector>

namespace ifccr {

struct NelderMeadOptions {
    int max_iterations = 2000;
    double tolerance = 1e-10;  // on function spread and simplex diameter
    double initial_step = 0.2;
    std::uint64_t seed = 0xC0FFEE;
};

struct NelderMeadResult {
    std::vector<double> x;
    double value = 0.0;
    int iterations = 0;
};

/// Minimizes f starting from x0. The seed only picks the orientation of the
/// initial simplex, so runs are reproducible.
inline NelderMeadResult nelder_mead(const std::function<double(const std::vector<double>&)>& f,
                                    std::vector<double> x0, const NelderMeadOptions& opt = {}) {
    const std::size_t n = x0.size();
    std::mt19937_64 rng(opt.seed);
    std::vector<std::vector<double>> pts(n + 1, x0);
    for (std::size_t i = 0; i < n; ++i) {
        const double sign = (rng() & 1u) ? 1.0 : -1.0;
        pts[i + 1][i] += sign * opt.initial_step;
    }
    std::vector<double> vals(n + 1);
    for (std::size_t i = 0; i <= n; ++i) vals[i] = f(pts[i]);

    std::vector<std::size_t> order(n + 1);
    int it = 0;
    for (; it < opt.max_iterations; ++it) {
        std::iota(order.begin(), order.end(), 0);
        std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return vals[a] < vals[b]; });
        const std::size_t best = order.front(), worst = order.back(), second = order[n - 1];

        double diameter = 0.0;
        for (std::size_t i = 0; i <= n; ++i) {
            for (std::size_t d = 0; d < n; ++d) diameter = std::max(diameter, std::abs(pts[i][d] - pts[best][d]));
        }
        if (vals[worst] - vals[best] <= opt.tolerance && diameter <= opt.tolerance) break;
        if (diameter <= opt.tolerance * 1e-2) break;

        std::vector<double> centroid(n, 0.0);
        for (std::size_t i = 0; i <= n; ++i) {
            if (i == worst) continue;
            for (std::size_t d = 0; d < n; ++d) centroid[d] += pts[i][d] / static_cast<double>(n);
        }
        auto along = [&](double t) {
            std::vector<double> p(n);
            for (std::size_t d = 0; d < n; ++d) p[d] = centroid[d] + t * (pts[worst][d] - centroid[d]);
            return p;
        };

        std::vector<double> xr = along(-1.0);
        const double fr = f(xr);
        if (fr < vals[best]) {
            std::vector<double> xe = along(-2.0);
            const double fe = f(xe);
            if (fe < fr) {
                pts[worst] = std::move(xe);
                vals[worst] = fe;
            } else {
                pts[worst] = std::move(xr);
                vals[worst] = fr;
            }
            continue;
        }
        if (fr < vals[second]) {
            pts[worst] = std::move(xr);
            vals[worst] = fr;
            continue;
        }
        const bool outside = fr < vals[worst];
        std::vector<double> xc = along(outside ? -0.5 : 0.5);
        const double fc = f(xc);
        if (fc < (outside ? fr : vals[worst])) {
            pts[worst] = std::move(xc);
            vals[worst] = fc;
            continue;
        }
        for (std::size_t i = 0; i <= n; ++i) {
            if (i == best) continue;
            for (std::size_t d = 0; d < n; ++d) pts[i][d] = pts[best][d] + 0.5 * (pts[i][d] - pts[best][d]);
            vals[i] = f(pts[i]);
        }
    }
    const auto best = static_cast<std::size_t>(std::min_element(vals.begin(), vals.end()) - vals.begin());
    return {pts[best], vals[best], it};
}

}  // namespace ifccr
