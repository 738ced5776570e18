#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace tempofilt {

// One timestamped contact between two distinct vertices. Canonical form keeps
// u < v; timestamps are arbitrary finite reals.
struct TemporalEdge {
  std::uint32_t u = 0;
  std::uint32_t v = 0;
  double t = 0.0;

  friend bool operator==(const TemporalEdge&, const TemporalEdge&) = default;
};

// A contact sequence over a dense vertex id space [0, n). External string ids,
// when the graph came from a file, live in names() with names()[i] naming
// vertex i; an empty names() means vertices are identified by their decimal id.
// Edges are kept sorted by (u, v, t), so parallel contacts (the label set of a
// vertex pair) are contiguous.
class TemporalGraph {
 public:
  TemporalGraph() = default;

  // Canonicalizes (swaps endpoints to u < v, sorts), rejects self loops and
  // out-of-range endpoints. names must be empty or have one entry per vertex.
  static TemporalGraph from_edges(std::uint32_t n_vertices,
                                  std::vector<TemporalEdge> edges,
                                  std::vector<std::string> names = {});

  std::uint32_t n_vertices() const { return n_vertices_; }
  const std::vector<TemporalEdge>& edges() const { return edges_; }
  const std::vector<std::string>& names() const { return names_; }

  // True when no two contacts share the same vertex pair.
  bool single_labeled() const { return single_labeled_; }

  std::string name_of(std::uint32_t v) const;

 private:
  std::uint32_t n_vertices_ = 0;
  std::vector<TemporalEdge> edges_;
  std::vector<std::string> names_;
  bool single_labeled_ = true;
};

// Static view of a contact sequence: one edge per vertex pair carrying the
// ascending list of its contact times.
struct AggregateGraph {
  std::uint32_t n_vertices = 0;
  std::vector<std::pair<std::uint32_t, std::uint32_t>> edges;  // sorted, u < v
  std::vector<std::vector<double>> labels;                     // per edge, ascending
  // per vertex: (neighbor, edge index), ascending by neighbor
  std::vector<std::vector<std::pair<std::uint32_t, std::uint32_t>>> adj;

  std::size_t multiplicity(std::size_t e) const { return labels[e].size(); }
  std::size_t degree(std::uint32_t v) const { return adj[v].size(); }
};

AggregateGraph aggregate(const TemporalGraph& g);

// Number of temporal edges incident to v. Throws ValueError when v is out of
// range. Parallel contacts all count, so this is generally larger than the
// aggregate degree.
std::uint32_t temporal_degree(const TemporalGraph& g, std::uint32_t v);
std::vector<std::uint32_t> temporal_degrees(const TemporalGraph& g);

// Corpus-level summary. degree_* are aggregate (distinct-neighbor) degrees;
// labels_* summarize contacts per vertex pair.
struct GraphStats {
  std::uint32_t n_vertices = 0;
  std::size_t n_temporal_edges = 0;
  std::size_t n_static_edges = 0;
  double labels_avg = 0.0;
  std::size_t labels_max = 0;
  double degree_avg = 0.0;
  std::size_t degree_max = 0;
};

GraphStats stats(const TemporalGraph& g);

}  // namespace tempofilt
