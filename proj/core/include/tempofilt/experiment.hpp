#pragma once

#include <cstdint>
#include <functional>
#include <limits>
#include <string>
#include <vector>

#include "tempofilt/filtration.hpp"
#include "tempofilt/generate.hpp"
#include "tempofilt/gram.hpp"
#include "tempofilt/io.hpp"
#include "tempofilt/persistence.hpp"
#include "tempofilt/rng.hpp"
#include "tempofilt/temporal_graph.hpp"

namespace tempofilt {

enum class PipelineKind { PersistentHomology, FiltrationWl };

struct RootSpec {
  enum class Kind { File, Random, Contact };
  Kind kind = Kind::Random;
  std::string path;
  ColumnOrder columns = ColumnOrder::TUV;
  RandomGraphSpec random;
  ContactModelSpec contact;
};

// how one class of the dataset is produced from the root graph
struct ClassPlan {
  enum class Rep { Root, Cm, TpShift };
  enum class Pop { Re, Tp, Ewlss, Cm };
  Rep rep = Rep::Root;
  Pop pop = Pop::Re;
  int count = 20;
  int re_steps = 20;
  int ewlss_swaps = 20;
  double tp_fraction = 0.016;
  double tp_eps_min = 1.0;
  double tp_eps_max = 5.0;
  // representative shift (Rep::TpShift only)
  double rep_fraction = 0.0475;
  double rep_eps_min = 1.0;
  double rep_eps_max = 5.0;
};

struct KernelConfig {
  double sigma = 1.0;
  double gamma = 1.0;
  int wl_depth = 3;
  int n_levels = 10;
  double essential_cap_factor = 1.1;
  double essential_cap_override =
      std::numeric_limits<double>::quiet_NaN();  // NaN: derive from data
  double persistence_threshold = 0.0;
  double degree_weights[3] = {1.0, 1.0, 1.0};
};

struct ExperimentSpec {
  RootSpec root;
  std::vector<ClassPlan> classes;
  PipelineKind pipeline = PipelineKind::PersistentHomology;
  FiltrationMethod filtration = FiltrationMethod::AvgMulti;
  KernelConfig kernel;
  double svm_c = 1.0;
  bool grid_search = false;
  double test_fraction = 0.2;
  int n_runs = 5;
  std::uint64_t seed = 1;
  bool regenerate_per_run = true;
};

ExperimentSpec parse_experiment_spec(const std::string& text,
                                     const std::string& origin = "<spec>");
std::string format_experiment_spec(const ExperimentSpec& spec);

struct LabeledDataset {
  std::vector<TemporalGraph> graphs;
  std::vector<int> labels;
  std::vector<std::string> provenance;  // e.g. "class0/member3"
};

LabeledDataset populate_classes(const TemporalGraph& root,
                                const std::vector<ClassPlan>& plans, Rng rng);

struct ExperimentResult {
  std::vector<double> run_accuracies;
  double mean = 0.0;
  double stdev = 0.0;
  double svm_c = 1.0;       // value actually used (after grid search)
  double kernel_scale = 1.0;  // sigma or gamma actually used
};

using LogFn = std::function<void(const std::string&)>;

ExperimentResult run_experiment(const ExperimentSpec& spec, int threads = 0,
                                const LogFn& log = nullptr);

// pipeline pieces, shared with the CLI
std::vector<FilteredGraph> apply_filtration_all(
    const std::vector<TemporalGraph>& graphs, FiltrationMethod method,
    int threads);

GramMatrix ph_pipeline_gram(const std::vector<FilteredGraph>& filtered,
                            const std::vector<std::string>& ids,
                            const KernelConfig& config, int threads);

GramMatrix fwl_pipeline_gram(const std::vector<FilteredGraph>& filtered,
                             const std::vector<std::string>& ids,
                             const KernelConfig& config, bool sublevel_input,
                             int threads);

}  // namespace tempofilt
