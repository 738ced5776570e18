#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <map>
#include <set>

#include "tempofilt/errors.hpp"
#include "tempofilt/generate.hpp"
#include "tempofilt/null_models.hpp"
#include "tempofilt/rng.hpp"
#include "tempofilt/temporal_graph.hpp"

using namespace tempofilt;

namespace {

std::multiset<double> timestamps(const TemporalGraph& g) {
  std::multiset<double> out;
  for (const auto& e : g.edges()) out.insert(e.t);
  return out;
}

std::vector<std::size_t> aggregate_degrees(const TemporalGraph& g) {
  const auto a = aggregate(g);
  std::vector<std::size_t> out(a.n_vertices);
  for (std::uint32_t v = 0; v < a.n_vertices; ++v) out[v] = a.degree(v);
  return out;
}

std::multiset<std::size_t> multiplicities(const TemporalGraph& g) {
  const auto a = aggregate(g);
  std::multiset<std::size_t> out;
  for (std::size_t e = 0; e < a.edges.size(); ++e) out.insert(a.multiplicity(e));
  return out;
}

bool simple_aggregate(const TemporalGraph& g) {
  const auto a = aggregate(g);
  std::set<std::pair<std::uint32_t, std::uint32_t>> seen;
  for (const auto& e : a.edges) {
    if (e.first == e.second) return false;
    if (!seen.insert(e).second) return false;
  }
  return true;
}

TemporalGraph sample_graph(std::uint64_t seed, int contacts = 120) {
  ContactModelSpec spec;
  spec.n_vertices = 30;
  spec.n_temporal_edges = contacts;
  return synthetic_contact_graph(spec, Rng(seed)).graph;
}

}  // namespace

TEST_CASE("tp perturbation shifts the requested share of timestamps") {
  RandomGraphSpec spec;
  spec.n_vertices = 40;
  spec.sparsity = 0.15;
  const auto g = random_temporal_graph(spec, Rng(9));
  const double fraction = 0.25, eps = 2.5;
  const auto shifted = tp_perturb(g, fraction, eps, Rng(10));

  REQUIRE(shifted.edges().size() == g.edges().size());
  const auto expect =
      static_cast<std::size_t>(std::ceil(fraction * g.edges().size()));
  std::size_t changed = 0;
  for (std::size_t i = 0; i < g.edges().size(); ++i) {
    const auto& a = g.edges()[i];
    const auto& b = shifted.edges()[i];
    CHECK(a.u == b.u);
    CHECK(a.v == b.v);
    const double d = std::abs(a.t - b.t);
    CHECK(d < eps);
    if (d > 0) ++changed;
  }
  CHECK(changed == expect);
}

TEST_CASE("tp edge cases") {
  const auto g = sample_graph(3);
  CHECK(tp_perturb(g, 0.0, 1.0, Rng(1)).edges() == g.edges());
  CHECK_THROWS_AS(tp_perturb(g, 1.5, 1.0, Rng(1)), ValueError);
  CHECK_THROWS_AS(tp_perturb(g, 0.5, 0.0, Rng(1)), ValueError);
  // full-graph shift touches every contact
  const auto full = tp_perturb(g, 1.0, 0.5, Rng(2));
  for (std::size_t i = 0; i < g.edges().size(); ++i)
    CHECK(g.edges()[i].t != full.edges()[i].t);
}

TEST_CASE("tp is deterministic in the seed") {
  const auto g = sample_graph(4);
  const auto a = tp_perturb(g, 0.3, 2.0, Rng(7, 1));
  const auto b = tp_perturb(g, 0.3, 2.0, Rng(7, 1));
  const auto c = tp_perturb(g, 0.3, 2.0, Rng(7, 2));
  CHECK(a.edges() == b.edges());
  CHECK(a.edges() != c.edges());
}

TEST_CASE("ewlss swaps label sets between equal-count edges") {
  const auto g = sample_graph(5, 160);
  const auto shuffled = ewlss_shuffle(g, 40, Rng(11));

  const auto a0 = aggregate(g);
  const auto a1 = aggregate(shuffled);
  REQUIRE(a0.edges == a1.edges);  // aggregate structure untouched
  CHECK(timestamps(g) == timestamps(shuffled));

  // per-edge label counts survive, and label sets move only within a count class
  std::map<std::size_t, std::multiset<std::vector<double>>> sets_before, sets_after;
  for (std::size_t e = 0; e < a0.edges.size(); ++e) {
    CHECK(a0.labels[e].size() == a1.labels[e].size());
    sets_before[a0.labels[e].size()].insert(a0.labels[e]);
    sets_after[a1.labels[e].size()].insert(a1.labels[e]);
  }
  CHECK(sets_before == sets_after);
}

TEST_CASE("ewlss rejects graphs without swappable pairs") {
  // two edges with different label counts and nothing else
  const auto g = TemporalGraph::from_edges(
      3, {{0, 1, 1.0}, {0, 1, 2.0}, {1, 2, 3.0}});
  CHECK_THROWS_AS(ewlss_shuffle(g, 1, Rng(1)), ValueError);
  CHECK(ewlss_shuffle(g, 0, Rng(1)).edges() == g.edges());
}

TEST_CASE("re exchange keeps degrees, timestamps, and simplicity") {
  const auto g = sample_graph(6, 150);
  const auto r = re_shuffle(g, Rng(13));
  CHECK(r.edges().size() == g.edges().size());
  CHECK(aggregate_degrees(r) == aggregate_degrees(g));
  CHECK(timestamps(r) == timestamps(g));
  CHECK(simple_aggregate(r));
  CHECK(r.edges() != g.edges());  // a full sweep on 100+ edges moves something
}

TEST_CASE("re step variant applies a bounded number of exchanges") {
  const auto g = sample_graph(7, 150);
  const auto r = re_exchange_steps(g, 10, Rng(17));
  CHECK(aggregate_degrees(r) == aggregate_degrees(g));
  CHECK(timestamps(r) == timestamps(g));
  CHECK(simple_aggregate(r));

  // each accepted exchange replaces two aggregate edges, so at most 20 differ
  const auto e0 = aggregate(g).edges;
  const auto e1 = aggregate(r).edges;
  std::set<std::pair<std::uint32_t, std::uint32_t>> s0(e0.begin(), e0.end());
  std::size_t moved = 0;
  for (const auto& e : e1)
    if (!s0.count(e)) ++moved;
  CHECK(moved <= 20);
  CHECK(moved > 0);

  CHECK(re_exchange_steps(g, 0, Rng(17)).edges() == g.edges());
}

TEST_CASE("re is deterministic in the seed") {
  const auto g = sample_graph(8);
  CHECK(re_exchange_steps(g, 15, Rng(3)).edges() ==
        re_exchange_steps(g, 15, Rng(3)).edges());
  CHECK(re_exchange_steps(g, 15, Rng(3)).edges() !=
        re_exchange_steps(g, 15, Rng(4)).edges());
}

TEST_CASE("cm rewire preserves degrees and label structure") {
  const auto g = sample_graph(9, 200);
  const auto c = cm_rewire(g, Rng(19));
  CHECK(c.edges().size() == g.edges().size());
  CHECK(aggregate_degrees(c) == aggregate_degrees(g));
  CHECK(multiplicities(c) == multiplicities(g));
  CHECK(timestamps(c) == timestamps(g));
  CHECK(simple_aggregate(c));
  CHECK(c.edges() != g.edges());
}

TEST_CASE("cm rewire handles dense graphs") {
  // 12 vertices, all 66 pairs present: only permutations are simple matchings
  std::vector<TemporalEdge> edges;
  double t = 1.0;
  for (std::uint32_t u = 0; u < 12; ++u)
    for (std::uint32_t v = u + 1; v < 12; ++v) edges.push_back({u, v, t += 1.0});
  const auto g = TemporalGraph::from_edges(12, std::move(edges));
  const auto c = cm_rewire(g, Rng(23));
  CHECK(aggregate_degrees(c) == aggregate_degrees(g));
  CHECK(simple_aggregate(c));
}

TEST_CASE("cm is deterministic in the seed") {
  const auto g = sample_graph(10);
  CHECK(cm_rewire(g, Rng(5)).edges() == cm_rewire(g, Rng(5)).edges());
}
