// Serial (threads = 1) against OpenMP (threads = 0: all available workers).
#include <benchmark/benchmark.h>

#include "lsii/bootstrap.hpp"
#include "lsii/montecarlo.hpp"
#include "lsii/noise.hpp"

using namespace lsii;

static void BM_MonteCarloDesignB(benchmark::State& state) {
    auto d = McDesign::named(DesignKind::ls_ma1_b, 32, 1);
    d.threads = static_cast<int>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(run_study(d));
    state.SetLabel(d.threads == 1 ? "serial" : "openmp");
}
BENCHMARK(BM_MonteCarloDesignB)->Arg(1)->Arg(0)->Unit(benchmark::kMillisecond);

static void BM_LbbBands(benchmark::State& state) {
    const std::size_t T = 1000;
    const Series y(NoiseStream({2, 0, 0}).draw(T));
    const std::vector<double> grid{0.25, 0.5, 0.75};
    LbbConfig c;
    c.replications = 999;
    c.threads = static_cast<int>(state.range(0));
    const KernelSpec k(KernelFamily::gaussian, rule_of_thumb_bandwidth(T));
    LiiConfig lii;
    lii.grid = grid;
    auto estimator = [&](const Series& s) {
        std::vector<double> out;
        for (const auto& p : estimate_path(s, ModelKind::ls_ma1, k, lii).points) out.push_back(p.theta_hat.values[0]);
        return out;
    };
    for (auto _ : state) benchmark::DoNotOptimize(lbb_confidence_bands(y, estimator, grid, c));
    state.SetLabel(c.threads == 1 ? "serial" : "openmp");
}
BENCHMARK(BM_LbbBands)->Arg(1)->Arg(0)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
