#include "lsii/param_path.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "lsii/errors.hpp"

namespace lsii {

ParamPath::ParamPath(std::function<double(double)> f, bool constant, std::vector<double> nodes)
    : f_(std::move(f)), constant_(constant), nodes_(std::move(nodes)) {}

ParamPath ParamPath::constant(double value) {
    return ParamPath([value](double) { return value; }, true, {});
}

ParamPath ParamPath::from_function(std::function<double(double)> f) {
    return ParamPath(std::move(f), false, {});
}

ParamPath ParamPath::from_grid(std::vector<double> grid, std::vector<double> values) {
    if (grid.empty() || grid.size() != values.size()) {
        throw InvalidArgument("ParamPath::from_grid: grid and values must be non-empty and equally long");
    }
    for (std::size_t i = 1; i < grid.size(); ++i) {
        if (!(grid[i] > grid[i - 1])) throw InvalidArgument("ParamPath::from_grid: grid must be strictly increasing");
    }
    auto nodes = grid;
    return ParamPath(
        [grid = std::move(grid), values = std::move(values)](double u) { return interpolate_linear(grid, values, u); },
        false, std::move(nodes));
}

double ParamPath::sup_abs() const {
    double best = 0.0;
    if (!nodes_.empty()) {
        for (double u : nodes_) best = std::max(best, std::abs(f_(u)));
        return best;
    }
    for (int i = 0; i <= 1000; ++i) best = std::max(best, std::abs(f_(i / 1000.0)));
    return best;
}

double ParamPath::inf() const {
    double best = std::numeric_limits<double>::infinity();
    if (!nodes_.empty()) {
        for (double u : nodes_) best = std::min(best, f_(u));
        return best;
    }
    for (int i = 0; i <= 1000; ++i) best = std::min(best, f_(i / 1000.0));
    return best;
}

double interpolate_linear(const std::vector<double>& grid, const std::vector<double>& values, double u) {
    if (u <= grid.front()) return values.front();
    if (u >= grid.back()) return values.back();
    const auto it = std::upper_bound(grid.begin(), grid.end(), u);
    const auto hi = static_cast<std::size_t>(it - grid.begin());
    const std::size_t lo = hi - 1;
    const double w = (u - grid[lo]) / (grid[hi] - grid[lo]);
    return values[lo] + w * (values[hi] - values[lo]);
}

}  // namespace lsii
