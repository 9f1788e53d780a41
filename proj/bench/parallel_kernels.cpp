// Serial reference kernels against their OpenMP counterparts.

#include <benchmark/benchmark.h>

#include <cmath>
#include <vector>

#include "vmorl/ccs/ccs.hpp"
#include "vmorl/core/rng.hpp"
#include "vmorl/envs/planning.hpp"
#include "vmorl/envs/tabular.hpp"
#include "vmorl/envs/toy_locomotion.hpp"
#include "vmorl/rl/rollout.hpp"

using namespace vmorl;

namespace {

envs::TabularMomdp instance(std::size_t states) { return envs::TabularMomdp::random(7, states, 4, 2, 0.95); }

// Points on the quarter circle, so every vector is on the convex hull.
std::vector<ValueVector> arc(std::size_t n) {
    std::vector<ValueVector> out;
    for (std::size_t k = 0; k < n; ++k) {
        const double t = 1.5707963267948966 * static_cast<double>(k) / static_cast<double>(n - 1);
        out.push_back(ValueVector{std::cos(t), std::sin(t)});
    }
    return out;
}

void BM_ValueIteration(benchmark::State& state) {
    const auto m = instance(static_cast<std::size_t>(state.range(0)));
    const WeightVector w{0.3, 0.7};
    for (auto _ : state) benchmark::DoNotOptimize(envs::value_iteration(m, w));
}

void BM_ValueIterationSerial(benchmark::State& state) {
    const auto m = instance(static_cast<std::size_t>(state.range(0)));
    const WeightVector w{0.3, 0.7};
    for (auto _ : state) benchmark::DoNotOptimize(envs::reference::value_iteration(m, w));
}

void BM_CornerWeights(benchmark::State& state) {
    const auto set = arc(static_cast<std::size_t>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(ccs::corner_weights(set));
}

void BM_CornerWeightsSerial(benchmark::State& state) {
    const auto set = arc(static_cast<std::size_t>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(ccs::reference::corner_weights(set));
}

void BM_EnumerateCcs(benchmark::State& state) {
    const auto m = instance(static_cast<std::size_t>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(envs::enumerate_ccs(m, 100));
}

void BM_EnumerateCcsSerial(benchmark::State& state) {
    const auto m = instance(static_cast<std::size_t>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(envs::reference::enumerate_ccs(m, 100));
}

template <bool Serial>
void rollouts(benchmark::State& state) {
    const envs::EnvFactory factory = [] { return std::make_unique<envs::ToyLocomotion>(envs::ToyLocomotionConfig{}); };
    Rng rng(3);
    const auto policy = nn::GaussianPolicy::make(4, 2, {64, 64}, rng);
    auto workers = rl::make_workers(factory, static_cast<std::size_t>(state.range(0)), 11);
    for (auto _ : state) {
        if constexpr (Serial)
            benchmark::DoNotOptimize(rl::reference::collect_rollouts(workers, policy, 512));
        else
            benchmark::DoNotOptimize(rl::collect_rollouts(workers, policy, 512));
    }
}

void BM_Rollouts(benchmark::State& state) { rollouts<false>(state); }
void BM_RolloutsSerial(benchmark::State& state) { rollouts<true>(state); }

}  // namespace

BENCHMARK(BM_ValueIteration)->Arg(50)->Arg(400)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ValueIterationSerial)->Arg(50)->Arg(400)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_CornerWeights)->Arg(16)->Arg(64)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_CornerWeightsSerial)->Arg(16)->Arg(64)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_EnumerateCcs)->Arg(20)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_EnumerateCcsSerial)->Arg(20)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Rollouts)->Arg(4)->Arg(8)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_RolloutsSerial)->Arg(4)->Arg(8)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
