#include <benchmark/benchmark.h>

#include <string>
#include <vector>

#include "tempofilt/experiment.hpp"
#include "tempofilt/filtration.hpp"
#include "tempofilt/generate.hpp"
#include "tempofilt/persistence.hpp"
#include "tempofilt/pss_kernel.hpp"
#include "tempofilt/rng.hpp"

using namespace tempofilt;

namespace {

FilteredGraph filtered_fixture(std::uint32_t n, double sparsity,
                               std::uint64_t seed) {
  RandomGraphSpec spec;
  spec.n_vertices = n;
  spec.sparsity = sparsity;
  return avg_filtration(random_temporal_graph(spec, Rng(seed)));
}

void bm_flag_persistence(benchmark::State& state) {
  const auto g = filtered_fixture(static_cast<std::uint32_t>(state.range(0)),
                                  0.15, 11);
  for (auto _ : state) benchmark::DoNotOptimize(flag_persistence(g, 2));
}
BENCHMARK(bm_flag_persistence)->Arg(60)->Arg(120)->Arg(240)
    ->Unit(benchmark::kMillisecond);

void bm_pss_gram(benchmark::State& state) {
  const auto count = static_cast<std::size_t>(state.range(0));
  std::vector<PersistenceDiagram> diagrams;
  std::vector<std::string> ids;
  for (std::size_t i = 0; i < count; ++i) {
    auto d = flag_persistence(filtered_fixture(80, 0.12, 20 + i), 2);
    const double cap = essential_cap({d}, 1.1);
    diagrams.push_back(substitute_essentials(d, cap));
    ids.push_back("g" + std::to_string(i));
  }
  PssParams params;
  for (auto _ : state)
    benchmark::DoNotOptimize(pss_gram(diagrams, ids, params, 1));
}
BENCHMARK(bm_pss_gram)->Arg(10)->Arg(20)->Arg(40)
    ->Unit(benchmark::kMillisecond);

void bm_experiment_run(benchmark::State& state) {
  ExperimentSpec spec;
  spec.root.kind = RootSpec::Kind::Contact;
  spec.root.contact.n_vertices = 60;
  spec.root.contact.n_temporal_edges = 140;
  spec.classes.resize(2);
  spec.classes[1].rep = ClassPlan::Rep::Cm;
  spec.classes[0].count = spec.classes[1].count =
      static_cast<int>(state.range(0));
  spec.filtration = FiltrationMethod::AvgMulti;
  spec.n_runs = 1;
  spec.seed = 5;
  for (auto _ : state) benchmark::DoNotOptimize(run_experiment(spec, 1));
}
BENCHMARK(bm_experiment_run)->Arg(8)->Arg(16)
    ->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
