#include "tempofilt/filtration_kernel.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "tempofilt/errors.hpp"
#include "tempofilt/parallel.hpp"

namespace tempofilt {

std::vector<double> quantile_thresholds(const std::vector<FilteredGraph>& graphs,
                                        int n_levels) {
  if (n_levels < 1) throw ValueError("need at least one threshold level");
  std::vector<double> pool;
  for (const auto& g : graphs)
    for (const auto& e : g.edges)
      if (std::isfinite(e.value)) pool.push_back(e.value);
  std::sort(pool.begin(), pool.end());

  std::vector<double> out;
  if (!pool.empty()) {
    for (int j = n_levels; j >= 1; --j) {
      // nearest-rank quantile at p = j / (levels + 1)
      const double p = static_cast<double>(j) / (n_levels + 1);
      auto r = static_cast<std::size_t>(
          std::ceil(p * static_cast<double>(pool.size())));
      if (r == 0) r = 1;
      out.push_back(pool[r - 1]);
    }
  }
  out.push_back(0.0);
  std::sort(out.begin(), out.end(), std::greater<>());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

FilteredGraph to_superlevel(const FilteredGraph& g, double max_value) {
  FilteredGraph out;
  out.n_vertices = g.n_vertices;
  for (const auto& e : g.edges) {
    if (!std::isfinite(e.value)) continue;  // never enters the filtration
    out.edges.push_back({e.u, e.v, max_value - e.value});
  }
  return out;
}

double dataset_max_finite_value(const std::vector<FilteredGraph>& graphs) {
  double best = 0.0;
  bool seen = false;
  for (const auto& g : graphs) {
    for (const auto& e : g.edges) {
      if (!std::isfinite(e.value)) continue;
      best = seen ? std::max(best, e.value) : e.value;
      seen = true;
    }
  }
  return seen ? best : 0.0;
}

int WlLabelDictionary::id_of(const std::vector<int>& signature) {
  auto it = table_.find(signature);
  if (it != table_.end()) return it->second;
  const int id = static_cast<int>(table_.size());
  table_.emplace(signature, id);
  return id;
}

FeatureHistograms wl_filtration_histograms(const FilteredGraph& g,
                                           const std::vector<double>& thresholds,
                                           int depth, WlLabelDictionary& dict) {
  if (depth < 0) throw ValueError("refinement depth must be non-negative");
  const std::size_t n = g.n_vertices;
  const std::size_t n_levels = thresholds.size();
  FeatureHistograms hist;

  auto bump = [&](int round, int label, std::size_t level) {
    auto [it, fresh] = hist.try_emplace(feature_key(round, label));
    if (fresh) it->second.assign(n_levels, 0.0);
    it->second[level] += 1.0;
  };

  const int uniform = dict.id_of({0});

  for (std::size_t level = 0; level < n_levels; ++level) {
    const double alpha = thresholds[level];

    // adjacency of the superlevel slice
    std::vector<std::vector<std::uint32_t>> adj(n);
    for (const auto& e : g.edges) {
      if (e.value >= alpha) {
        adj[e.u].push_back(e.v);
        adj[e.v].push_back(e.u);
      }
    }

    std::vector<int> label(n, uniform);
    for (std::size_t v = 0; v < n; ++v) bump(0, uniform, level);

    for (int round = 1; round <= depth; ++round) {
      std::vector<int> next(n);
      for (std::size_t v = 0; v < n; ++v) {
        std::vector<int> sig;
        sig.reserve(adj[v].size() + 2);
        sig.push_back(round);
        sig.push_back(label[v]);
        std::vector<int> neigh;
        neigh.reserve(adj[v].size());
        for (auto w : adj[v]) neigh.push_back(label[w]);
        std::sort(neigh.begin(), neigh.end());
        sig.insert(sig.end(), neigh.begin(), neigh.end());
        next[v] = dict.id_of(sig);
      }
      label = std::move(next);
      for (std::size_t v = 0; v < n; ++v) bump(round, label[v], level);
    }
  }
  return hist;
}

double wasserstein_1d(const std::vector<double>& h1,
                      const std::vector<double>& h2,
                      const std::vector<double>& locations) {
  if (h1.size() != h2.size() || h1.size() != locations.size())
    throw ValueError("histogram sizes differ");
  if (h1.empty()) throw ValueError("empty histograms");

  double m1 = 0.0, m2 = 0.0;
  for (double x : h1) m1 += x;
  for (double x : h2) m2 += x;
  if (m1 <= 0.0 || m2 <= 0.0) throw ValueError("histogram has no mass");

  std::vector<std::size_t> order(locations.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return locations[a] < locations[b];
  });

  // transport cost between unit-mass distributions: sum of CDF gaps
  double dist = 0.0, c1 = 0.0, c2 = 0.0;
  for (std::size_t k = 0; k + 1 < order.size(); ++k) {
    c1 += h1[order[k]] / m1;
    c2 += h2[order[k]] / m2;
    dist += std::abs(c1 - c2) * (locations[order[k + 1]] - locations[order[k]]);
  }
  return dist;
}

double filtration_kernel(const FeatureHistograms& h1,
                         const FeatureHistograms& h2,
                         const std::vector<double>& thresholds, double gamma) {
  if (!(gamma > 0.0)) throw ValueError("gamma must be positive");
  double total = 0.0;
  auto it1 = h1.begin();
  auto it2 = h2.begin();
  while (it1 != h1.end() && it2 != h2.end()) {
    if (it1->first < it2->first) {
      ++it1;
    } else if (it2->first < it1->first) {
      ++it2;
    } else {
      double mass1 = 0.0, mass2 = 0.0;
      for (double x : it1->second) mass1 += x;
      for (double x : it2->second) mass2 += x;
      const double w = wasserstein_1d(it1->second, it2->second, thresholds);
      total += std::exp(-gamma * w) * mass1 * mass2;
      ++it1;
      ++it2;
    }
  }
  return total;
}

GramMatrix filtration_gram(const std::vector<FilteredGraph>& graphs,
                           const std::vector<std::string>& ids,
                           const FwlParams& params, bool sublevel_input,
                           int threads) {
  if (graphs.size() != ids.size()) throw ValueError("graph and id counts differ");

  std::vector<FilteredGraph> prepared;
  const std::vector<FilteredGraph>* input = &graphs;
  if (sublevel_input) {
    const double top = dataset_max_finite_value(graphs);
    prepared.reserve(graphs.size());
    for (const auto& g : graphs) prepared.push_back(to_superlevel(g, top));
    input = &prepared;
  }

  const auto thresholds = quantile_thresholds(*input, params.n_levels);

  // shared dictionary: histogram pass stays sequential
  WlLabelDictionary dict;
  std::vector<FeatureHistograms> hists;
  hists.reserve(input->size());
  for (const auto& g : *input)
    hists.push_back(
        wl_filtration_histograms(g, thresholds, params.wl_depth, dict));

  GramMatrix gram = GramMatrix::zeros(ids);
  const std::size_t n = input->size();
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  pairs.reserve(n * (n + 1) / 2);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) pairs.emplace_back(i, j);

  parallel_for(pairs.size(), threads, [&](std::size_t k) {
    const auto [i, j] = pairs[k];
    const double v =
        filtration_kernel(hists[i], hists[j], thresholds, params.gamma);
    gram.at(i, j) = v;
    gram.at(j, i) = v;
  });
  return gram;
}

}  // namespace tempofilt
