// Brute-force reference implementations used to pin down the fast paths.
// Everything here favours obviousness over speed.
#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <map>
#include <numeric>
#include <tuple>
#include <vector>

#include "tempofilt/filtration.hpp"
#include "tempofilt/persistence.hpp"
#include "tempofilt/temporal_graph.hpp"

namespace oracles {

using tempofilt::FilteredEdge;
using tempofilt::FilteredGraph;
using tempofilt::TemporalEdge;
using tempofilt::TemporalGraph;

constexpr double kInf = std::numeric_limits<double>::infinity();

// all-pairs scan over contacts of a single-labeled graph: adjacency means
// sharing an endpoint and not being a parallel contact of the same pair
inline FilteredGraph naive_temporal_filtration(const TemporalGraph& g, bool average) {
  const auto& contacts = g.edges();
  FilteredGraph out;
  out.n_vertices = g.n_vertices();
  for (std::size_t i = 0; i < contacts.size(); ++i) {
    const auto& a = contacts[i];
    double sum = 0.0, best = kInf;
    std::size_t count = 0;
    for (std::size_t j = 0; j < contacts.size(); ++j) {
      if (i == j) continue;
      const auto& b = contacts[j];
      if (a.u == b.u && a.v == b.v) continue;  // same aggregate edge
      if (a.u == b.u || a.u == b.v || a.v == b.u || a.v == b.v) {
        const double d = std::abs(a.t - b.t);
        sum += d;
        best = std::min(best, d);
        ++count;
      }
    }
    const double value =
        count == 0 ? kInf : (average ? sum / static_cast<double>(count) : best);
    out.edges.push_back({a.u, a.v, value});
  }
  std::sort(out.edges.begin(), out.edges.end(),
            [](const FilteredEdge& x, const FilteredEdge& y) {
              return std::tie(x.u, x.v) < std::tie(y.u, y.v);
            });
  return out;
}

// multi-labeled average: every contact of the edge contributes its own sum
inline FilteredGraph naive_avg_multi(const TemporalGraph& g) {
  const auto& contacts = g.edges();
  struct Slot {
    double sum = 0.0;
    std::size_t combos = 0;  // (own contact, adjacent contact) pairs
    std::size_t mult = 0;    // contacts on this vertex pair
  };
  std::map<std::pair<std::uint32_t, std::uint32_t>, Slot> acc;
  for (std::size_t i = 0; i < contacts.size(); ++i) {
    const auto& a = contacts[i];
    auto& slot = acc[{a.u, a.v}];
    slot.mult += 1;
    for (std::size_t j = 0; j < contacts.size(); ++j) {
      if (i == j) continue;
      const auto& b = contacts[j];
      if (a.u == b.u && a.v == b.v) continue;
      if (a.u == b.u || a.u == b.v || a.v == b.u || a.v == b.v) {
        slot.sum += std::abs(a.t - b.t);
        slot.combos += 1;
      }
    }
  }
  FilteredGraph out;
  out.n_vertices = g.n_vertices();
  for (const auto& [key, slot] : acc) {
    // the divisor is the adjacent contact count, not the combination count;
    // combos = mult * adjacent, so the division below is exact
    const auto adjacent = slot.combos / slot.mult;
    const double v =
        adjacent == 0 ? kInf : slot.sum / static_cast<double>(adjacent);
    out.edges.push_back({key.first, key.second, v});
  }
  return out;
}

// Kruskal merge values: the finite H0 deaths of a sublevel edge filtration
inline std::vector<double> mst_merge_values(const FilteredGraph& g) {
  std::vector<std::size_t> parent(g.n_vertices);
  std::iota(parent.begin(), parent.end(), 0);
  std::function<std::size_t(std::size_t)> find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  auto edges = g.edges;
  std::stable_sort(edges.begin(), edges.end(),
                   [](const FilteredEdge& a, const FilteredEdge& b) {
                     return a.value < b.value;
                   });
  std::vector<double> merges;
  for (const auto& e : edges) {
    if (!std::isfinite(e.value)) continue;
    const auto ru = find(e.u), rv = find(e.v);
    if (ru != rv) {
      parent[ru] = rv;
      merges.push_back(e.value);
    }
  }
  std::sort(merges.begin(), merges.end());
  return merges;
}

// textbook column reduction over Z/2, no clearing, low-to-high column order
inline tempofilt::PersistenceDiagram naive_reduction(
    const std::vector<tempofilt::FilteredSimplex>& filt, int max_degree,
    bool drop_zero) {
  using tempofilt::FilteredSimplex;
  const std::size_t n = filt.size();

  auto key_of = [](const FilteredSimplex& s) {
    return std::vector<std::uint32_t>(s.v.begin(), s.v.begin() + s.dim + 1);
  };
  std::map<std::vector<std::uint32_t>, std::size_t> index;
  for (std::size_t i = 0; i < n; ++i) index[key_of(filt[i])] = i;

  std::vector<std::vector<std::size_t>> columns(n);
  for (std::size_t i = 0; i < n; ++i) {
    const auto& s = filt[i];
    if (s.dim == 0) continue;
    for (int drop = 0; drop <= s.dim; ++drop) {
      std::vector<std::uint32_t> face;
      for (int k = 0; k <= s.dim; ++k)
        if (k != drop) face.push_back(s.v[k]);
      columns[i].push_back(index.at(face));
    }
    std::sort(columns[i].begin(), columns[i].end());
  }

  auto xor_cols = [](std::vector<std::size_t>& a, const std::vector<std::size_t>& b) {
    std::vector<std::size_t> out;
    std::set_symmetric_difference(a.begin(), a.end(), b.begin(), b.end(),
                                  std::back_inserter(out));
    a = std::move(out);
  };

  std::vector<std::size_t> owner(n, n);  // pivot row -> column
  std::vector<char> is_pivot_row(n, 0);
  tempofilt::PersistenceDiagram d;
  for (std::size_t j = 0; j < n; ++j) {
    auto col = columns[j];
    while (!col.empty() && owner[col.back()] != n) xor_cols(col, columns[owner[col.back()]]);
    columns[j] = col;
    if (!col.empty()) {
      const std::size_t i = col.back();
      owner[i] = j;
      is_pivot_row[i] = 1;
      const int degree = filt[i].dim;
      if (degree <= max_degree) {
        const double birth = filt[i].value, death = filt[j].value;
        if (!drop_zero || death != birth)
          d.points.push_back({degree, birth, death});
      }
    }
  }
  for (std::size_t j = 0; j < n; ++j) {
    if (!columns[j].empty() || is_pivot_row[j]) continue;
    if (filt[j].dim > max_degree) continue;
    d.points.push_back({filt[j].dim, filt[j].value, kInf});
  }
  std::sort(d.points.begin(), d.points.end(),
            [](const tempofilt::PersistencePoint& a, const tempofilt::PersistencePoint& b) {
              return std::tie(a.degree, a.birth, a.death) <
                     std::tie(b.degree, b.birth, b.death);
            });
  return d;
}

// Pearson correlation of endpoint degrees over aggregate edges
inline double degree_assortativity(const TemporalGraph& g) {
  const auto agg = tempofilt::aggregate(g);
  std::vector<double> xs, ys;
  for (const auto& [u, v] : agg.edges) {
    const auto du = static_cast<double>(agg.degree(u));
    const auto dv = static_cast<double>(agg.degree(v));
    // undirected edge contributes both orientations
    xs.push_back(du); ys.push_back(dv);
    xs.push_back(dv); ys.push_back(du);
  }
  const auto n = static_cast<double>(xs.size());
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) { mx += xs[i]; my += ys[i]; }
  mx /= n; my /= n;
  double sxy = 0, sxx = 0, syy = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sxy += (xs[i] - mx) * (ys[i] - my);
    sxx += (xs[i] - mx) * (xs[i] - mx);
    syy += (ys[i] - my) * (ys[i] - my);
  }
  if (sxx == 0 || syy == 0) return 0.0;
  return sxy / std::sqrt(sxx * syy);
}

// projected-gradient solver for the binary SVM dual, tiny problems only:
// maximise sum(a) - a' Q a / 2 subject to 0 <= a <= C, y'a = 0
inline double svm_dual_objective_pg(const std::vector<std::vector<double>>& k,
                                    const std::vector<double>& y, double c,
                                    int iters = 200000, double lr = 1e-3) {
  const std::size_t n = y.size();
  std::vector<double> a(n, 0.0);
  auto project = [&](std::vector<double>& v) {
    // alternate box clipping with equality-constraint correction
    for (int pass = 0; pass < 50; ++pass) {
      double dot = 0.0;
      for (std::size_t i = 0; i < n; ++i) dot += v[i] * y[i];
      for (std::size_t i = 0; i < n; ++i) v[i] -= dot / static_cast<double>(n) * y[i];
      for (auto& x : v) x = std::clamp(x, 0.0, c);
    }
  };
  for (int it = 0; it < iters; ++it) {
    std::vector<double> grad(n, 1.0);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        grad[i] -= y[i] * y[j] * k[i][j] * a[j];
    for (std::size_t i = 0; i < n; ++i) a[i] += lr * grad[i];
    project(a);
  }
  double obj = 0.0;
  for (std::size_t i = 0; i < n; ++i) obj += a[i];
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      obj -= 0.5 * y[i] * y[j] * k[i][j] * a[i] * a[j];
  return obj;
}

}  // namespace oracles
