#include "lsii/bootstrap.hpp"

#include <algorithm>
#include <cmath>
#include <optional>

#include "lsii/noise.hpp"
#include "lsii/parallel.hpp"
#include "lsii/stats.hpp"

namespace lsii {

namespace {
constexpr std::uint64_t kLbbTag = 0x4c4242;
}

void LbbConfig::validate() const {
    if (block_size < 1) throw InvalidArgument("LbbConfig: block size must be >= 1");
    if (!(window_fraction > 0.0 && window_fraction <= 1.0)) {
        throw InvalidArgument("LbbConfig: window fraction must lie in (0, 1]");
    }
    if (replications < 1) throw InvalidArgument("LbbConfig: replications must be >= 1");
    if (!(level > 0.0 && level < 1.0)) throw InvalidArgument("LbbConfig: level must lie in (0, 1)");
}

LbbGeometry lbb_geometry(std::size_t T, const LbbConfig& config) {
    config.validate();
    if (config.block_size > T) throw InvalidArgument("lbb: block size exceeds the sample size");
    LbbGeometry g;
    const double tb = std::round(static_cast<double>(T) * config.window_fraction);
    g.shift_radius = std::max<std::size_t>(1, static_cast<std::size_t>(tb));
    // ceil(TB) - 1 blocks of length b can fall short of T; extend so the
    // resample always has T values.
    const std::size_t by_window = g.shift_radius - 1;
    const std::size_t by_length = (T + config.block_size - 1) / config.block_size - 1;
    g.q = std::max(by_window, by_length);
    g.shift_probability = 1.0 / (2.0 * static_cast<double>(g.shift_radius) + 1.0);
    return g;
}

std::mt19937_64 lbb_engine(const LbbConfig& config, std::uint64_t replication) {
    return make_engine(NoiseKey{config.seed, replication, 0}, kLbbTag);
}

LbbDraw lbb_resample(const Series& series, const LbbConfig& config, std::mt19937_64& rng) {
    const std::size_t T = series.size();
    const auto g = lbb_geometry(T, config);
    const long radius = static_cast<long>(g.shift_radius);
    const long b = static_cast<long>(config.block_size);
    const long n = static_cast<long>(T);

    LbbDraw draw;
    draw.source.reserve(T);
    draw.shifts.reserve(g.q + 1);
    std::vector<double> out;
    out.reserve(T);
    std::uniform_int_distribution<long> full(-radius, radius);
    for (std::size_t i = 0; i <= g.q; ++i) {
        const long start = static_cast<long>(i) * b;
        const long len = std::max(0L, std::min(b, n - start));
        long k = full(rng);
        if (len > 0) {
            const long lo = std::max(-radius, -start);
            const long hi = std::min(radius, n - (start + len));
            if (k < lo || k > hi) k = std::uniform_int_distribution<long>(lo, hi)(rng);
        }
        draw.shifts.push_back(k);
        for (long j = 0; j < len; ++j) {
            const auto s = static_cast<std::size_t>(start + j + k);
            draw.source.push_back(s);
            out.push_back(series[s]);
        }
    }
    draw.series = Series(std::move(out));
    return draw;
}

BandTable lbb_confidence_bands(const Series& series, const PathEstimator& estimator, const std::vector<double>& grid,
                               const LbbConfig& config) {
    lbb_geometry(series.size(), config);
    const auto point = estimator(series);
    if (point.size() != grid.size()) throw InvalidArgument("lbb: estimator output does not match the grid");

    std::vector<std::optional<std::vector<double>>> draws(config.replications);
    parallel_for(config.replications, config.threads, [&](std::size_t r) {
        auto rng = lbb_engine(config, r);
        const auto resample = lbb_resample(series, config, rng);
        try {
            auto values = estimator(resample.series);
            if (values.size() != grid.size()) return;
            for (double v : values) {
                if (!std::isfinite(v)) return;
            }
            draws[r] = std::move(values);
        } catch (const Error&) {
        }
    });

    BandTable table;
    for (const auto& d : draws) table.dropped += d ? 0 : 1;
    table.replications_used = config.replications - table.dropped;
    if (10 * table.dropped > config.replications) {
        throw BootstrapFailure("lbb: more than 10% of the replications failed", table.dropped);
    }
    const double lo_p = (1.0 - config.level) / 2.0;
    std::vector<double> column(table.replications_used);
    for (std::size_t i = 0; i < grid.size(); ++i) {
        std::size_t m = 0;
        for (const auto& d : draws) {
            if (d) column[m++] = (*d)[i];
        }
        std::sort(column.begin(), column.end());
        BandRow row;
        row.u = grid[i];
        row.estimate = point[i];
        row.lower = quantile_sorted(column, lo_p);
        row.upper = quantile_sorted(column, 1.0 - lo_p);
        row.level = config.level;
        table.rows.push_back(row);
    }
    return table;
}

}  // namespace lsii
