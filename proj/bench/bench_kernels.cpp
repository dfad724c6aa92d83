#include "krf/kernels.hpp"
#include "krf/rng.hpp"
#include "krf/spatial_index.hpp"

#include <benchmark/benchmark.h>

#include <vector>

namespace {

std::vector<krf::Vec3> random_points(std::size_t n, std::uint64_t seed) {
    krf::Rng rng(seed);
    std::vector<krf::Vec3> pts(n);
    for (auto& p : pts) p = krf::Vec3(rng.uniform(-0.1, 0.1), rng.uniform(-0.1, 0.1), rng.uniform(-0.1, 0.1));
    return pts;
}

void BM_NearestAllSerial(benchmark::State& state) {
    const auto pts = random_points(static_cast<std::size_t>(state.range(0)), 1);
    const auto queries = random_points(1024, 2);
    for (auto _ : state) benchmark::DoNotOptimize(krf::kernels::serial::nearest_all(pts, queries));
}

void BM_NearestAllOmp(benchmark::State& state) {
    const auto pts = random_points(static_cast<std::size_t>(state.range(0)), 1);
    const auto queries = random_points(1024, 2);
    for (auto _ : state) benchmark::DoNotOptimize(krf::kernels::omp::nearest_all(pts, queries));
}

void BM_NearestAllKdTree(benchmark::State& state) {
    const krf::SpatialIndex index(random_points(static_cast<std::size_t>(state.range(0)), 1));
    const auto queries = random_points(1024, 2);
    for (auto _ : state) benchmark::DoNotOptimize(krf::kernels::omp::nearest_all(index, queries));
}

void BM_MeanNearestSerial(benchmark::State& state) {
    const auto a = random_points(static_cast<std::size_t>(state.range(0)), 3);
    const auto b = random_points(static_cast<std::size_t>(state.range(0)), 4);
    for (auto _ : state) benchmark::DoNotOptimize(krf::kernels::serial::mean_nearest_distance(a, b));
}

void BM_MeanNearestOmp(benchmark::State& state) {
    const auto a = random_points(static_cast<std::size_t>(state.range(0)), 3);
    const auto b = random_points(static_cast<std::size_t>(state.range(0)), 4);
    for (auto _ : state) benchmark::DoNotOptimize(krf::kernels::omp::mean_nearest_distance(a, b));
}

void BM_MaxPairwiseSerial(benchmark::State& state) {
    const auto pts = random_points(static_cast<std::size_t>(state.range(0)), 5);
    for (auto _ : state) benchmark::DoNotOptimize(krf::kernels::serial::max_pairwise_distance(pts));
}

void BM_MaxPairwiseOmp(benchmark::State& state) {
    const auto pts = random_points(static_cast<std::size_t>(state.range(0)), 5);
    for (auto _ : state) benchmark::DoNotOptimize(krf::kernels::omp::max_pairwise_distance(pts));
}

}  // namespace

BENCHMARK(BM_NearestAllSerial)->Arg(2048)->Arg(8192);
BENCHMARK(BM_NearestAllOmp)->Arg(2048)->Arg(8192);
BENCHMARK(BM_NearestAllKdTree)->Arg(2048)->Arg(8192);
BENCHMARK(BM_MeanNearestSerial)->Arg(1024)->Arg(4096);
BENCHMARK(BM_MeanNearestOmp)->Arg(1024)->Arg(4096);
BENCHMARK(BM_MaxPairwiseSerial)->Arg(2048)->Arg(8192);
BENCHMARK(BM_MaxPairwiseOmp)->Arg(2048)->Arg(8192);

BENCHMARK_MAIN();
