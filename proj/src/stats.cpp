#include "lsii/stats.hpp"

#include <algorithm>
#include <cmath>

#include "lsii/errors.hpp"

namespace lsii {

double quantile_sorted(std::span<const double> sorted, double p) {
    if (sorted.empty()) throw InvalidArgument("quantile: empty input");
    if (!(p >= 0.0 && p <= 1.0)) throw InvalidArgument("quantile: probability must lie in [0, 1]");
    const double h = (static_cast<double>(sorted.size()) - 1.0) * p;
    const auto lo = static_cast<std::size_t>(std::floor(h));
    const std::size_t hi = std::min(lo + 1, sorted.size() - 1);
    return sorted[lo] + (h - static_cast<double>(lo)) * (sorted[hi] - sorted[lo]);
}

double quantile(std::vector<double> values, double p) {
    std::sort(values.begin(), values.end());
    return quantile_sorted(values, p);
}

double median(std::vector<double> values) { return quantile(std::move(values), 0.5); }

}  // namespace lsii
