#pragma once

#include <cstddef>
#include <cstdint>

#include "tempofilt/rng.hpp"
#include "tempofilt/temporal_graph.hpp"

namespace tempofilt {

// Uniform single-labeled graph: floor(sparsity * n(n-1)/2) distinct vertex
// pairs chosen uniformly, each with one timestamp drawn uniformly from
// (t_min, t_max].
struct RandomGraphSpec {
  std::uint32_t n_vertices = 100;
  double sparsity = 0.1;
  double t_min = 0.0;
  double t_max = 100.0;
};

TemporalGraph random_temporal_graph(const RandomGraphSpec& spec, Rng rng);

enum class Mixing { Assortative, Disassortative };

Mixing mixing_from_string(const std::string& name);
std::string to_string(Mixing m);

// Contact-network style generator with a heavy-tailed degree profile. A
// weighted recursive tree keeps the aggregate connected whenever
// n_temporal_edges >= n_vertices - 1; remaining contacts pair a
// weight-proportional endpoint with a partner biased by rank similarity
// (assortative) or rank opposition (disassortative). Repeated vertex pairs
// are allowed, so the output can be multi-labeled. Timestamps are uniform on
// (t_min, t_max].
struct ContactModelSpec {
  std::uint32_t n_vertices = 100;
  std::size_t n_temporal_edges = 200;
  Mixing mixing = Mixing::Assortative;
  double mixing_strength = 0.5;  // probability that a contact uses the biased rule
  double t_min = 0.0;
  double t_max = 1000.0;
  int max_connect_retries = 20;
};

struct ContactGraphResult {
  TemporalGraph graph;
  // False only when every retry produced a disconnected aggregate (possible
  // when n_temporal_edges < n_vertices - 1); the last attempt is returned.
  bool aggregate_connected = true;
};

ContactGraphResult synthetic_contact_graph(const ContactModelSpec& spec, Rng rng);

}  // namespace tempofilt
