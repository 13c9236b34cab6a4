#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <random>
#include <vector>

#include "lsii/errors.hpp"
#include "lsii/series.hpp"

namespace lsii {

/// Local block bootstrap settings. Defaults: b = 10, B = 0.11, R = 999 and
/// pointwise 0.05 / 0.95 bands.
struct LbbConfig {
    std::size_t block_size = 10;
    double window_fraction = 0.11;
    std::size_t replications = 999;
    std::uint64_t seed = 0;
    double level = 0.90;
    int threads = 1;

    void validate() const;
};

struct LbbGeometry {
    std::size_t shift_radius = 0;  ///< T*B rounded to the nearest integer >= 1
    std::size_t q = 0;             ///< blocks are i = 0..q
    double shift_probability = 0;  ///< 1 / (2 T B + 1)
};

/// Throws InvalidArgument when b > T.
LbbGeometry lbb_geometry(std::size_t T, const LbbConfig& config);

struct LbbDraw {
    Series series;
    std::vector<std::size_t> source;  ///< 0-based provenance index of every output value
    std::vector<long> shifts;         ///< k_i for i = 0..q
};

/// Engine for replication r, keyed on (seed, r).
std::mt19937_64 lbb_engine(const LbbConfig& config, std::uint64_t replication);

/// One resample: y*_{j+ib} = y_{j+ib+k_i}. A shift that would reach outside
/// [1, T] is redrawn uniformly from the admissible shifts of that block.
LbbDraw lbb_resample(const Series& series, const LbbConfig& config, std::mt19937_64& rng);

struct BandRow {
    double u = 0.0;
    double estimate = 0.0;
    double lower = 0.0;
    double upper = 0.0;
    double level = 0.0;
};

struct BandTable {
    std::vector<BandRow> rows;
    std::size_t replications_used = 0;
    std::size_t dropped = 0;
};

/// Maps a series to one value per grid point.
using PathEstimator = std::function<std::vector<double>(const Series&)>;

class BootstrapFailure : public Error {
public:
    BootstrapFailure(const std::string& what, std::size_t dropped) : Error(what), dropped_(dropped) {}
    std::size_t dropped() const noexcept { return dropped_; }

private:
    std::size_t dropped_;
};

/// Pointwise type-7 quantile bands of the estimator over R resamples.
/// Replications whose estimator throws are dropped; more than 10% dropped
/// raises BootstrapFailure.
BandTable lbb_confidence_bands(const Series& series, const PathEstimator& estimator,
                               const std::vector<double>& grid, const LbbConfig& config);

}  // namespace lsii
