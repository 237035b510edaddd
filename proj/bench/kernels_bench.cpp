#include "dimenfix/engine.hpp"
#include "dimenfix/geometry.hpp"
#include "dimenfix/init.hpp"
#include "dimenfix/kernels.hpp"

#include <benchmark/benchmark.h>

#include <random>

using namespace dimenfix;

namespace {

Matrix random_points(std::size_t n, std::size_t f, std::uint64_t seed = 7) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    Matrix m(n, f);
    for (double& v : m.data()) {
        v = u(rng);
    }
    return m;
}

void BM_DistancesSerial(benchmark::State& state) {
    const Matrix pts = random_points(static_cast<std::size_t>(state.range(0)), 30);
    for (auto _ : state) {
        benchmark::DoNotOptimize(kernels::serial::pairwise_distances(pts));
    }
}

void BM_DistancesParallel(benchmark::State& state) {
    const Matrix pts = random_points(static_cast<std::size_t>(state.range(0)), 30);
    for (auto _ : state) {
        benchmark::DoNotOptimize(kernels::parallel::pairwise_distances(pts));
    }
}

void BM_StressSerial(benchmark::State& state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    const auto a = kernels::serial::pairwise_distances(random_points(n, 30, 1));
    const auto b = kernels::serial::pairwise_distances(random_points(n, 3, 2));
    for (auto _ : state) {
        benchmark::DoNotOptimize(kernels::serial::stress_sums(a, b));
    }
}

void BM_StressParallel(benchmark::State& state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    const auto a = kernels::serial::pairwise_distances(random_points(n, 30, 1));
    const auto b = kernels::serial::pairwise_distances(random_points(n, 3, 2));
    for (auto _ : state) {
        benchmark::DoNotOptimize(kernels::parallel::stress_sums(a, b, n));
    }
}

void BM_NeighborsSerial(benchmark::State& state) {
    const Matrix pts = random_points(static_cast<std::size_t>(state.range(0)), 3);
    for (auto _ : state) {
        benchmark::DoNotOptimize(kernels::serial::nearest_neighbors(pts, 1));
    }
}

void BM_NeighborsParallel(benchmark::State& state) {
    const Matrix pts = random_points(static_cast<std::size_t>(state.range(0)), 3);
    for (auto _ : state) {
        benchmark::DoNotOptimize(kernels::parallel::nearest_neighbors(pts, 1));
    }
}

template <class Policy>
void BM_ForceStep(benchmark::State& state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    const Matrix pts = random_points(n, 30);
    const CondensedDistanceMatrix targets = build_distance_matrix(pts);
    ProjectionConfig cfg;
    cfg.target_dims = 3;
    cfg.policy = Policy{};
    Embedding e{random_points(n, 3, 3), std::nullopt};
    if (is_fixing(cfg.policy)) {
        std::vector<double> fixed(n);
        for (std::size_t i = 0; i < n; ++i) {
            fixed[i] = pts(i, 0);
        }
        e = fix_axis(std::move(e), fixed);
    }
    auto rng = make_step_rng(1);
    for (auto _ : state) {
        force_step(e, targets, cfg, rng);
        benchmark::ClobberMemory();
    }
}

} // namespace

BENCHMARK(BM_DistancesSerial)->Arg(500)->Arg(1797);
BENCHMARK(BM_DistancesParallel)->Arg(500)->Arg(1797);
BENCHMARK(BM_StressSerial)->Arg(500)->Arg(1797);
BENCHMARK(BM_StressParallel)->Arg(500)->Arg(1797);
BENCHMARK(BM_NeighborsSerial)->Arg(500)->Arg(1797);
BENCHMARK(BM_NeighborsParallel)->Arg(500)->Arg(1797);
BENCHMARK_TEMPLATE(BM_ForceStep, policy::Vanilla)->Arg(150)->Arg(569);
BENCHMARK_TEMPLATE(BM_ForceStep, policy::Strict)->Arg(150)->Arg(569);

BENCHMARK_MAIN();
