#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace lsii {

/// One row {Y_{1,T}, ..., Y_{T,T}} of a triangular array. Entries are finite.
class Series {
public:
    Series() = default;
    /// Throws InvalidArgument on NaN or infinite entries.
    explicit Series(std::vector<double> values);

    std::size_t size() const noexcept { return values_.size(); }
    bool empty() const noexcept { return values_.empty(); }
    double operator[](std::size_t i) const { return values_[i]; }
    std::span<const double> values() const noexcept { return values_; }
    const std::vector<double>& vector() const noexcept { return values_; }

    /// Rescaled time of 0-based index i, i.e. (i+1)/T.
    double rescaled_time(std::size_t i) const { return static_cast<double>(i + 1) / static_cast<double>(size()); }

private:
    std::vector<double> values_;
};

double sample_mean(std::span<const double> x);
/// Centered second moment with divisor n.
double sample_variance(std::span<const double> x);

}  // namespace lsii
