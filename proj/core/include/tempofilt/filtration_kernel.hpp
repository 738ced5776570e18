#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "tempofilt/filtration.hpp"
#include "tempofilt/gram.hpp"

namespace tempofilt {

// descending superlevel thresholds: nearest-rank quantiles of the pooled
// finite edge values plus 0, duplicates removed
std::vector<double> quantile_thresholds(const std::vector<FilteredGraph>& graphs,
                                        int n_levels);

// flip a sublevel filtration into superlevel form: w -> max_value - w,
// edges at +inf are dropped
FilteredGraph to_superlevel(const FilteredGraph& g, double max_value);

double dataset_max_finite_value(const std::vector<FilteredGraph>& graphs);

// shared label table so refinements on different graphs agree
class WlLabelDictionary {
 public:
  int id_of(const std::vector<int>& signature);
  std::size_t size() const { return table_.size(); }

 private:
  std::map<std::vector<int>, int> table_;
};

// feature -> per-threshold occurrence counts; key packs (round, label)
using FeatureHistograms = std::map<std::uint64_t, std::vector<double>>;

inline std::uint64_t feature_key(int round, int label) {
  return (static_cast<std::uint64_t>(round) << 48) |
         static_cast<std::uint64_t>(label);
}

// Weisfeiler-Leman refinement on every superlevel slice. Labels restart
// uniform at each threshold; counts land in the slot of that threshold.
FeatureHistograms wl_filtration_histograms(const FilteredGraph& g,
                                           const std::vector<double>& thresholds,
                                           int depth, WlLabelDictionary& dict);

// 1-Wasserstein distance between histograms over shared locations,
// both normalized to unit mass
double wasserstein_1d(const std::vector<double>& h1,
                      const std::vector<double>& h2,
                      const std::vector<double>& locations);

double filtration_kernel(const FeatureHistograms& h1,
                         const FeatureHistograms& h2,
                         const std::vector<double>& thresholds, double gamma);

struct FwlParams {
  double gamma = 1.0;
  int wl_depth = 3;
  int n_levels = 10;
};

// sublevel_input: map values with the dataset maximum before thresholding
GramMatrix filtration_gram(const std::vector<FilteredGraph>& graphs,
                           const std::vector<std::string>& ids,
                           const FwlParams& params, bool sublevel_input,
                           int threads = 0);

}  // namespace tempofilt
