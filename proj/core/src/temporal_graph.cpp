#include "tempofilt/temporal_graph.hpp"

#include <algorithm>
#include <tuple>

#include "tempofilt/errors.hpp"

namespace tempofilt {

TemporalGraph TemporalGraph::from_edges(std::uint32_t n_vertices,
                                        std::vector<TemporalEdge> edges,
                                        std::vector<std::string> names) {
  if (!names.empty() && names.size() != n_vertices)
    throw ValueError("vertex name table size does not match vertex count");
  for (auto& e : edges) {
    if (e.u == e.v)
      throw ValueError("self loop on vertex " + std::to_string(e.u));
    if (e.u > e.v) std::swap(e.u, e.v);
    if (e.v >= n_vertices)
      throw ValueError("edge endpoint " + std::to_string(e.v) +
                       " out of range (n = " + std::to_string(n_vertices) + ")");
  }
  std::sort(edges.begin(), edges.end(), [](const TemporalEdge& a, const TemporalEdge& b) {
    return std::tie(a.u, a.v, a.t) < std::tie(b.u, b.v, b.t);
  });
  TemporalGraph g;
  g.n_vertices_ = n_vertices;
  g.names_ = std::move(names);
  g.single_labeled_ = true;
  for (std::size_t i = 1; i < edges.size(); ++i)
    if (edges[i].u == edges[i - 1].u && edges[i].v == edges[i - 1].v) {
      g.single_labeled_ = false;
      break;
    }
  g.edges_ = std::move(edges);
  return g;
}

std::string TemporalGraph::name_of(std::uint32_t v) const {
  if (v >= n_vertices_)
    throw ValueError("vertex " + std::to_string(v) + " out of range");
  return names_.empty() ? std::to_string(v) : names_[v];
}

AggregateGraph aggregate(const TemporalGraph& g) {
  AggregateGraph a;
  a.n_vertices = g.n_vertices();
  const auto& edges = g.edges();
  for (std::size_t i = 0; i < edges.size();) {
    std::size_t j = i;
    while (j < edges.size() && edges[j].u == edges[i].u && edges[j].v == edges[i].v) ++j;
    a.edges.emplace_back(edges[i].u, edges[i].v);
    std::vector<double> ts;
    ts.reserve(j - i);
    for (std::size_t k = i; k < j; ++k) ts.push_back(edges[k].t);  // already ascending
    a.labels.push_back(std::move(ts));
    i = j;
  }
  a.adj.resize(a.n_vertices);
  for (std::uint32_t e = 0; e < a.edges.size(); ++e) {
    auto [u, v] = a.edges[e];
    a.adj[u].emplace_back(v, e);
    a.adj[v].emplace_back(u, e);
  }
  for (auto& list : a.adj)
    std::sort(list.begin(), list.end());
  return a;
}

std::vector<std::uint32_t> temporal_degrees(const TemporalGraph& g) {
  std::vector<std::uint32_t> deg(g.n_vertices(), 0);
  for (const auto& e : g.edges()) {
    ++deg[e.u];
    ++deg[e.v];
  }
  return deg;
}

std::uint32_t temporal_degree(const TemporalGraph& g, std::uint32_t v) {
  if (v >= g.n_vertices())
    throw ValueError("vertex " + std::to_string(v) + " out of range");
  std::uint32_t d = 0;
  for (const auto& e : g.edges())
    if (e.u == v || e.v == v) ++d;
  return d;
}

GraphStats stats(const TemporalGraph& g) {
  GraphStats s;
  s.n_vertices = g.n_vertices();
  s.n_temporal_edges = g.edges().size();
  AggregateGraph a = aggregate(g);
  s.n_static_edges = a.edges.size();
  for (std::size_t e = 0; e < a.edges.size(); ++e)
    s.labels_max = std::max(s.labels_max, a.multiplicity(e));
  s.labels_avg = a.edges.empty() ? 0.0
                                 : static_cast<double>(s.n_temporal_edges) /
                                       static_cast<double>(s.n_static_edges);
  for (std::uint32_t v = 0; v < a.n_vertices; ++v)
    s.degree_max = std::max(s.degree_max, a.degree(v));
  s.degree_avg = s.n_vertices == 0 ? 0.0
                                   : 2.0 * static_cast<double>(s.n_static_edges) /
                                         static_cast<double>(s.n_vertices);
  return s;
}

}  // namespace tempofilt
