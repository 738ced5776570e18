#pragma once

#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include "tempofilt/temporal_graph.hpp"

namespace tempofilt {

// Static graph whose edges carry a filtration value. Edges with no adjacent
// contact to compare against get kNoNeighborhood (+inf); downstream consumers
// treat such edges as "never present".
struct FilteredEdge {
  std::uint32_t u = 0;
  std::uint32_t v = 0;
  double value = 0.0;

  friend bool operator==(const FilteredEdge&, const FilteredEdge&) = default;
};

struct FilteredGraph {
  std::uint32_t n_vertices = 0;
  std::vector<FilteredEdge> edges;  // sorted by (u, v), one per vertex pair
};

inline constexpr double kNoNeighborhood = std::numeric_limits<double>::infinity();

// Smallest |t - t'| between an edge's contact and any contact on an adjacent
// edge (adjacent = shares exactly one endpoint). Requires a single-labeled
// graph; multi-labeled input is rejected and should go to
// avg_filtration_multi.
FilteredGraph min_filtration(const TemporalGraph& g);

// Mean |t - t'| over all adjacent contacts; the divisor is the neighborhood
// size td_u + td_v - 2. Single-labeled input only.
FilteredGraph avg_filtration(const TemporalGraph& g);

// Multi-label generalization: for a vertex pair with label set tau(e), sums
// |t - t'| over every (own contact, adjacent contact) combination and divides
// by the number of adjacent contacts, td_u + td_v - 2 * |tau(e)|. Contacts on
// the same vertex pair are not adjacent to each other. Coincides with
// avg_filtration on single-labeled graphs.
FilteredGraph avg_filtration_multi(const TemporalGraph& g);

enum class StaticFiltration {
  MaxDegree,      // larger endpoint degree
  CoreNumber,     // larger endpoint k-core number
  TriangleCount,  // half the larger endpoint triangle count
};

FilteredGraph static_filtration(const AggregateGraph& g, StaticFiltration kind);

// All filtrations reachable from a contact sequence, for dispatch from
// configuration and the command line.
enum class FiltrationMethod { Min, Avg, AvgMulti, AddMaxDeg, AddCoreNum, AddTriangle };

FiltrationMethod filtration_method_from_string(const std::string& name);
std::string to_string(FiltrationMethod m);

// True for methods whose natural scale is "small value = tight temporal
// cluster" (the temporal filtrations); such values are flipped before the
// superlevel machinery in the kernel stage.
bool is_sublevel_method(FiltrationMethod m);

FilteredGraph apply_filtration(const TemporalGraph& g, FiltrationMethod m);

}  // namespace tempofilt
