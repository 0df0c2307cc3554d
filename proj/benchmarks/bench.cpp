#include <cstdint>
#include <vector>

#include <benchmark/benchmark.h>

#include "mlrgg/analysis.hpp"
#include "mlrgg/geometry.hpp"
#include "mlrgg/graph.hpp"
#include "mlrgg/rainbow.hpp"

namespace {

mlrgg::MultilayerGraph make_graph(std::uint64_t n, double r, int h) {
    return mlrgg::MultilayerGraph::generate_random(
        mlrgg::GraphParams{n, r, h}, 1);
}

void bm_generate(benchmark::State& state) {
    const auto n = static_cast<std::uint64_t>(state.range(0));
    const double r = mlrgg::threshold_radius(n, 2);
    for (auto _ : state) {
        auto g = make_graph(n, r, 2);
        benchmark::DoNotOptimize(g.layer_edge_counts().front());
    }
    state.SetItemsProcessed(state.iterations() *
                            static_cast<std::int64_t>(n));
}
BENCHMARK(bm_generate)->Arg(1024)->Arg(4096)->Arg(16384);

void bm_ball_queries(benchmark::State& state) {
    const auto n = static_cast<std::uint64_t>(state.range(0));
    const auto g = make_graph(n, 0.05, 1);
    std::uint32_t v = 0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(g.ball(0, v).size());
        v = (v + 1) % static_cast<std::uint32_t>(n);
    }
    state.SetItemsProcessed(state.iterations());
}
BENCHMARK(bm_ball_queries)->Arg(4096)->Arg(65536);

void bm_rainbow_verdict(benchmark::State& state) {
    const auto n = static_cast<std::uint64_t>(state.range(0));
    const int h = static_cast<int>(state.range(1));
    const double r = 1.2 * mlrgg::threshold_radius(n, h);
    const auto g = make_graph(n, r, h);
    for (auto _ : state) {
        const auto report = mlrgg::is_rainbow_connected(g);
        benchmark::DoNotOptimize(report.connected);
    }
}
BENCHMARK(bm_rainbow_verdict)
    ->Args({512, 2})
    ->Args({2048, 2})
    ->Args({512, 3});

void bm_sigma_neighborhoods(benchmark::State& state) {
    const auto n = static_cast<std::uint64_t>(state.range(0));
    const int h = 3;
    const double r = mlrgg::threshold_radius(n, h);
    const auto g = make_graph(n, r, h);
    const std::vector<int> sigma{0, 1, 2};
    std::uint32_t u = 0;
    for (auto _ : state) {
        const auto profile = mlrgg::sigma_neighborhoods(g, u, sigma);
        benchmark::DoNotOptimize(profile.sizes.back());
        u = (u + 1) % static_cast<std::uint32_t>(n);
    }
}
BENCHMARK(bm_sigma_neighborhoods)->Arg(4096)->Arg(16384);

void bm_pair_probability_quadrature(benchmark::State& state) {
    double r = 1.0;
    for (auto _ : state) {
        r += 1e-12;
        benchmark::DoNotOptimize(mlrgg::pair_adjacency_probability(r));
    }
}
BENCHMARK(bm_pair_probability_quadrature);

}  // namespace

BENCHMARK_MAIN();
