#include <benchmark/benchmark.h>

#include <cmath>
#include <string>

#include "d2d/distribution.hpp"
#include "d2d/exact.hpp"
#include "d2d/experiments.hpp"
#include "d2d/generators.hpp"
#include "d2d/greedy.hpp"

namespace {

const d2d::WeightDistribution& dist() {
    static d2d::WeightDistribution d = d2d::WeightDistribution::parse("1:0.5,2:0.5");
    return d;
}

d2d::WeightedGraph instance(const std::string& literal, std::uint64_t seed) {
    d2d::GenSpec spec = d2d::GenSpec::parse(literal);
    d2d::WeightedGraph g = spec.build(seed, 0);
    d2d::assign_weights(g, dist(), d2d::weight_seed(seed, 0));
    return g;
}

void BM_greedy_line(benchmark::State& state) {
    d2d::WeightedGraph g = instance("line:" + std::to_string(state.range(0)), 7);
    for (auto _ : state)
        benchmark::DoNotOptimize(d2d::greedy_match(g).welfare);
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_greedy_line)->Arg(1'000)->Arg(10'000)->Arg(100'000)->Arg(1'000'000);

void BM_greedy_sparse(benchmark::State& state) {
    d2d::WeightedGraph g =
        instance("gnpd:" + std::to_string(state.range(0)) + ",3", 7);
    for (auto _ : state)
        benchmark::DoNotOptimize(d2d::greedy_match(g).welfare);
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_greedy_sparse)->Arg(1'000)->Arg(10'000)->Arg(100'000)->Arg(1'000'000);

void BM_greedy_grid(benchmark::State& state) {
    const std::string side = std::to_string(state.range(0));
    d2d::WeightedGraph g = instance("grid:" + side + "x" + side, 7);
    for (auto _ : state)
        benchmark::DoNotOptimize(d2d::greedy_match(g).welfare);
    state.SetItemsProcessed(state.iterations() * state.range(0) * state.range(0));
}
BENCHMARK(BM_greedy_grid)->Arg(32)->Arg(100)->Arg(320)->Arg(1000);

void BM_gen_sparse(benchmark::State& state) {
    d2d::GenSpec spec =
        d2d::GenSpec::parse("gnpd:" + std::to_string(state.range(0)) + ",3");
    std::uint64_t trial = 0;
    for (auto _ : state)
        benchmark::DoNotOptimize(spec.build(7, trial++).edge_count());
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_gen_sparse)->Arg(10'000)->Arg(100'000)->Arg(1'000'000);

void BM_gen_disk(benchmark::State& state) {
    // density held at one device per 4 m^2, range 4 m
    double radius = std::sqrt(state.range(0) * 4.0 / 3.14159);
    d2d::GenSpec spec = d2d::GenSpec::parse(
        "disk:" + std::to_string(state.range(0)) + "," + std::to_string(radius) + ",4");
    std::uint64_t trial = 0;
    for (auto _ : state)
        benchmark::DoNotOptimize(spec.build(7, trial++).edge_count());
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_gen_disk)->Arg(10'000)->Arg(100'000);

void BM_exact_grid(benchmark::State& state) {
    const std::string side = std::to_string(state.range(0));
    d2d::WeightedGraph g = instance("grid:" + side + "x" + side, 7);
    for (auto _ : state)
        benchmark::DoNotOptimize(d2d::exact_match(g).welfare);
}
BENCHMARK(BM_exact_grid)->Arg(10)->Arg(30)->Arg(60)->Unit(benchmark::kMillisecond);

void BM_exact_general(benchmark::State& state) {
    d2d::WeightedGraph g =
        instance("gnpd:" + std::to_string(state.range(0)) + ",8", 7);
    for (auto _ : state)
        benchmark::DoNotOptimize(d2d::exact_match(g).welfare);
}
BENCHMARK(BM_exact_general)->Arg(50)->Arg(150)->Arg(400)->Unit(benchmark::kMillisecond);

void BM_tree_root_weight(benchmark::State& state) {
    // per-call cost of the tree estimator at its production settings
    std::uint64_t seed = 7;
    for (auto _ : state) {
        d2d::TreeEstimate est =
            d2d::mc_root_weight(dist(), 0.5, 10'000, seed++, 1'000'000, 1);
        benchmark::DoNotOptimize(est.value.mean);
    }
    state.SetItemsProcessed(state.iterations() * 10'000);
}
BENCHMARK(BM_tree_root_weight)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
