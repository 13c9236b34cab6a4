#include "lsii/series.hpp"

#include <cmath>
#include <numeric>

#include "lsii/errors.hpp"

namespace lsii {

Series::Series(std::vector<double> values) : values_(std::move(values)) {
    for (std::size_t i = 0; i < values_.size(); ++i) {
        if (!std::isfinite(values_[i])) {
            throw InvalidArgument("series entry " + std::to_string(i + 1) + " is not finite");
        }
    }
}

double sample_mean(std::span<const double> x) {
    if (x.empty()) return 0.0;
    return std::accumulate(x.begin(), x.end(), 0.0) / static_cast<double>(x.size());
}

double sample_variance(std::span<const double> x) {
    if (x.empty()) return 0.0;
    const double m = sample_mean(x);
    double s = 0.0;
    for (double v : x) s += (v - m) * (v - m);
    return s / static_cast<double>(x.size());
}

}  // namespace lsii
