#pragma once

#include <span>
#include <vector>

namespace lsii {

/// Hyndman-Fan type 7 quantile of already sorted data.
double quantile_sorted(std::span<const double> sorted, double p);
/// Type 7 quantile; copies and sorts.
double quantile(std::vector<double> values, double p);
double median(std::vector<double> values);

}  // namespace lsii
