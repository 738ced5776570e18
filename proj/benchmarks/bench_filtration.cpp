#include <benchmark/benchmark.h>

#include "tempofilt/filtration.hpp"
#include "tempofilt/generate.hpp"
#include "tempofilt/rng.hpp"

using namespace tempofilt;

namespace {

TemporalGraph graph_with_edges(std::int64_t n_edges) {
  // mean aggregate degree pinned at 50 so the neighborhood term stays flat
  const auto n = static_cast<std::uint32_t>(2 * n_edges / 50);
  RandomGraphSpec spec;
  spec.n_vertices = n;
  spec.sparsity = static_cast<double>(n_edges) /
                  (static_cast<double>(n) * (n - 1) / 2.0);
  return random_temporal_graph(spec, Rng(7));
}

void bm_avg_filtration(benchmark::State& state) {
  const auto g = graph_with_edges(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(avg_filtration(g));
  state.SetItemsProcessed(state.iterations() *
                          static_cast<std::int64_t>(g.edges().size()));
}
BENCHMARK(bm_avg_filtration)->Arg(12500)->Arg(25000)->Arg(50000)->Arg(100000)
    ->Unit(benchmark::kMillisecond);

void bm_min_filtration(benchmark::State& state) {
  const auto g = graph_with_edges(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(min_filtration(g));
  state.SetItemsProcessed(state.iterations() *
                          static_cast<std::int64_t>(g.edges().size()));
}
BENCHMARK(bm_min_filtration)->Arg(12500)->Arg(50000)
    ->Unit(benchmark::kMillisecond);

void bm_avg_filtration_multi(benchmark::State& state) {
  ContactModelSpec spec;
  spec.n_vertices = static_cast<std::uint32_t>(state.range(0)) / 10;
  spec.n_temporal_edges = static_cast<std::size_t>(state.range(0));
  const auto g = synthetic_contact_graph(spec, Rng(8)).graph;
  for (auto _ : state) benchmark::DoNotOptimize(avg_filtration_multi(g));
}
BENCHMARK(bm_avg_filtration_multi)->Arg(5000)->Arg(20000)
    ->Unit(benchmark::kMillisecond);

}  // namespace
