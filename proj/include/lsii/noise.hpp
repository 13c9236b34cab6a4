#pragma once

#include <cstddef>
#include <cstdint>
#include <random>
#include <vector>

namespace lsii {

/// Identifies one stream of standard normal variates. Replication r of a
/// study uses path 0 for the observed series and paths 1..H for the
/// simulated series of the matching step.
struct NoiseKey {
    std::uint64_t seed = 0;
    std::uint64_t replication = 0;
    std::uint64_t path = 0;

    friend bool operator==(const NoiseKey&, const NoiseKey&) = default;
};

/// Deterministic stream of N(0,1) draws; equal keys give bit-identical
/// sequences.
class NoiseStream {
public:
    explicit NoiseStream(NoiseKey key);

    double next() { return normal_(engine_); }
    std::vector<double> draw(std::size_t n);
    const NoiseKey& key() const noexcept { return key_; }

private:
    NoiseKey key_;
    std::mt19937_64 engine_;
    std::normal_distribution<double> normal_;
};

/// Engine for non-Gaussian draws (bootstrap offsets) keyed the same way.
std::mt19937_64 make_engine(NoiseKey key, std::uint64_t domain_tag);

}  // namespace lsii
