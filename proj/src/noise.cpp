#include "lsii/noise.hpp"

namespace lsii {

namespace {

std::seed_seq make_seed_seq(NoiseKey key, std::uint64_t tag) {
    auto lo = [](std::uint64_t v) { return static_cast<std::uint32_t>(v & 0xffffffffu); };
    auto hi = [](std::uint64_t v) { return static_cast<std::uint32_t>(v >> 32); };
    return std::seed_seq{lo(key.seed),        hi(key.seed),  lo(key.replication), hi(key.replication),
                         lo(key.path),        hi(key.path),  lo(tag),             hi(tag)};
}

}  // namespace

NoiseStream::NoiseStream(NoiseKey key) : key_(key) {
    auto seq = make_seed_seq(key, 0);
    engine_.seed(seq);
}

std::vector<double> NoiseStream::draw(std::size_t n) {
    std::vector<double> out(n);
    for (double& v : out) v = next();
    return out;
}

std::mt19937_64 make_engine(NoiseKey key, std::uint64_t domain_tag) {
    auto seq = make_seed_seq(key, domain_tag);
    return std::mt19937_64(seq);
}

}  // namespace lsii
