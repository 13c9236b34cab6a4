#include "lsii/optim.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "lsii/errors.hpp"

namespace lsii {

double logistic_to_box(double z, const Bounds& b) {
    const double s = 1.0 / (1.0 + std::exp(-z));
    return b.lower + (b.upper - b.lower) * s;
}

double box_to_logistic(double x, const Bounds& b) {
    const double s = std::clamp((x - b.lower) / (b.upper - b.lower), 1e-12, 1.0 - 1e-12);
    return std::log(s / (1.0 - s));
}

ScalarMinimum minimize_scalar(const std::function<double(double)>& f, const Bounds& bounds, int coarse_points,
                              double tolerance, int max_iterations) {
    if (!(bounds.upper > bounds.lower)) throw InvalidArgument("minimize_scalar: empty interval");
    if (coarse_points < 3) throw InvalidArgument("minimize_scalar: need at least 3 coarse points");

    ScalarMinimum best;
    best.value = HUGE_VAL;
    std::vector<double> xs(static_cast<std::size_t>(coarse_points));
    const double step = (bounds.upper - bounds.lower) / (coarse_points - 1);
    std::size_t best_index = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        xs[i] = i + 1 == xs.size() ? bounds.upper : bounds.lower + step * static_cast<double>(i);
        const double v = f(xs[i]);
        ++best.evaluations;
        if (v < best.value || i == 0) {
            best.value = v;
            best.x = xs[i];
            best_index = i;
        }
    }
    if (!std::isfinite(best.value)) return best;

    double a = xs[best_index == 0 ? 0 : best_index - 1];
    double b = xs[std::min(best_index + 1, xs.size() - 1)];
    const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
    double c = b - inv_phi * (b - a);
    double d = a + inv_phi * (b - a);
    double fc = f(c);
    double fd = f(d);
    best.evaluations += 2;
    int iter = 0;
    while (b - a > tolerance && iter < max_iterations) {
        if (fc <= fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - inv_phi * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + inv_phi * (b - a);
            fd = f(d);
        }
        ++best.evaluations;
        ++iter;
    }
    best.converged = b - a <= tolerance;
    const double x_mid = 0.5 * (a + b);
    const double f_mid = f(x_mid);
    ++best.evaluations;
    for (auto [x, v] : {std::pair{c, fc}, std::pair{d, fd}, std::pair{x_mid, f_mid}}) {
        if (v < best.value) {
            best.value = v;
            best.x = x;
        }
    }
    return best;
}

SimplexResult nelder_mead(const std::function<double(std::span<const double>)>& f, std::vector<double> start,
                          const SimplexOptions& options) {
    const std::size_t n = start.size();
    if (n == 0) throw InvalidArgument("nelder_mead: empty start point");

    std::vector<std::vector<double>> pts(n + 1, start);
    std::vector<double> vals(n + 1);
    SimplexResult result;
    for (std::size_t i = 1; i <= n; ++i) pts[i][i - 1] += options.initial_step;
    for (std::size_t i = 0; i <= n; ++i) vals[i] = f(pts[i]);
    result.evaluations = static_cast<int>(n + 1);

    std::vector<std::size_t> order(n + 1);
    std::vector<double> centroid(n), trial(n), trial2(n);
    auto evaluate = [&](const std::vector<double>& x) {
        ++result.evaluations;
        return f(x);
    };

    for (; result.iterations < options.max_iterations; ++result.iterations) {
        std::iota(order.begin(), order.end(), 0);
        std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return vals[a] < vals[b]; });
        const std::size_t best = order.front();
        const std::size_t worst = order.back();
        const std::size_t second = order[n - 1];

        if (!std::isfinite(vals[best])) break;
        double size = 0.0;
        for (std::size_t i = 0; i <= n; ++i) {
            for (std::size_t k = 0; k < n; ++k) size = std::max(size, std::abs(pts[i][k] - pts[best][k]));
        }
        const double spread = vals[worst] - vals[best];
        if (size <= options.tolerance ||
            spread <= options.f_tolerance * (std::abs(vals[best]) + options.f_tolerance)) {
            result.converged = true;
            break;
        }

        std::fill(centroid.begin(), centroid.end(), 0.0);
        for (std::size_t i = 0; i <= n; ++i) {
            if (i == worst) continue;
            for (std::size_t k = 0; k < n; ++k) centroid[k] += pts[i][k] / static_cast<double>(n);
        }
        for (std::size_t k = 0; k < n; ++k) trial[k] = centroid[k] + (centroid[k] - pts[worst][k]);
        const double f_reflect = evaluate(trial);

        if (f_reflect < vals[best]) {
            for (std::size_t k = 0; k < n; ++k) trial2[k] = centroid[k] + 2.0 * (centroid[k] - pts[worst][k]);
            const double f_expand = evaluate(trial2);
            if (f_expand < f_reflect) {
                pts[worst] = trial2;
                vals[worst] = f_expand;
            } else {
                pts[worst] = trial;
                vals[worst] = f_reflect;
            }
            continue;
        }
        if (f_reflect < vals[second]) {
            pts[worst] = trial;
            vals[worst] = f_reflect;
            continue;
        }
        const bool outside = f_reflect < vals[worst];
        for (std::size_t k = 0; k < n; ++k) {
            trial2[k] = outside ? centroid[k] + 0.5 * (trial[k] - centroid[k])
                                : centroid[k] + 0.5 * (pts[worst][k] - centroid[k]);
        }
        const double f_contract = evaluate(trial2);
        if (f_contract < (outside ? f_reflect : vals[worst])) {
            pts[worst] = trial2;
            vals[worst] = f_contract;
            continue;
        }
        for (std::size_t i = 0; i <= n; ++i) {
            if (i == best) continue;
            for (std::size_t k = 0; k < n; ++k) pts[i][k] = pts[best][k] + 0.5 * (pts[i][k] - pts[best][k]);
            vals[i] = evaluate(pts[i]);
        }
    }

    const auto it = std::min_element(vals.begin(), vals.end());
    const auto idx = static_cast<std::size_t>(it - vals.begin());
    result.x = pts[idx];
    result.value = vals[idx];
    return result;
}

}  // namespace lsii
