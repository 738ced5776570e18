#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>

#include "oracles.hpp"
#include "tempofilt/errors.hpp"
#include "tempofilt/persistence.hpp"
#include "tempofilt/rng.hpp"

using namespace tempofilt;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

FilteredGraph make_graph(std::uint32_t n,
                         std::vector<FilteredEdge> edges) {
  FilteredGraph g;
  g.n_vertices = n;
  g.edges = std::move(edges);
  std::sort(g.edges.begin(), g.edges.end(),
            [](const FilteredEdge& a, const FilteredEdge& b) {
              return std::tie(a.u, a.v) < std::tie(b.u, b.v);
            });
  return g;
}

FilteredGraph random_filtered(Rng& rng, std::uint32_t n, double p) {
  std::vector<FilteredEdge> edges;
  for (std::uint32_t u = 0; u < n; ++u)
    for (std::uint32_t v = u + 1; v < n; ++v)
      if (rng.unit() < p) edges.push_back({u, v, rng.range(0.0, 10.0)});
  return make_graph(n, std::move(edges));
}

std::vector<double> finite_h0_deaths(const PersistenceDiagram& d) {
  std::vector<double> out;
  for (const auto& p : d.points)
    if (p.degree == 0 && !p.essential()) out.push_back(p.death);
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

TEST_CASE("flag filtration enumerates cliques in face-first order") {
  // triangle 0-1-2 plus pendant 3
  const auto g = make_graph(
      4, {{0, 1, 1.0}, {0, 2, 3.0}, {1, 2, 2.0}, {2, 3, 4.0}});
  const auto filt = build_flag_filtration(g, 3);

  // 4 vertices + 4 edges + 1 triangle
  REQUIRE(filt.size() == 9);
  std::size_t by_dim[4] = {0, 0, 0, 0};
  for (const auto& s : filt) ++by_dim[s.dim];
  CHECK(by_dim[0] == 4);
  CHECK(by_dim[1] == 4);
  CHECK(by_dim[2] == 1);

  // triangle appears at its heaviest edge
  const auto tri = std::find_if(filt.begin(), filt.end(),
                                [](const auto& s) { return s.dim == 2; });
  CHECK(tri->value == 3.0);

  // (value, dim, lex) order puts every face before its cofaces
  std::set<std::vector<std::uint32_t>> seen;
  for (const auto& s : filt) {
    std::vector<std::uint32_t> key(s.v.begin(), s.v.begin() + s.dim + 1);
    if (s.dim > 0) {
      for (int drop = 0; drop <= s.dim; ++drop) {
        auto face = key;
        face.erase(face.begin() + drop);
        CHECK(seen.count(face) == 1);
      }
    }
    seen.insert(key);
  }
}

TEST_CASE("flag filtration counts on a clique") {
  std::vector<FilteredEdge> edges;
  double w = 0.0;
  for (std::uint32_t u = 0; u < 6; ++u)
    for (std::uint32_t v = u + 1; v < 6; ++v) edges.push_back({u, v, w += 1.0});
  const auto filt = build_flag_filtration(make_graph(6, std::move(edges)), 3);
  // C(6,1)+C(6,2)+C(6,3)+C(6,4) = 6+15+20+15
  CHECK(filt.size() == 56);
  CHECK(build_flag_filtration(make_graph(1, {}), 3).size() == 1);
}

TEST_CASE("flag filtration guards") {
  const auto g = make_graph(3, {{0, 1, 1.0}, {0, 2, kInf}, {1, 2, 2.0}});
  // the +inf edge is absent, so no triangle forms
  const auto filt = build_flag_filtration(g, 3);
  CHECK(filt.size() == 5);

  std::vector<FilteredEdge> edges;
  for (std::uint32_t u = 0; u < 20; ++u)
    for (std::uint32_t v = u + 1; v < 20; ++v) edges.push_back({u, v, 1.0});
  CHECK_THROWS_AS(
      build_flag_filtration(make_graph(20, std::move(edges)), 3, 1000),
      ResourceError);
}

TEST_CASE("persistence of a path") {
  const auto g = make_graph(4, {{0, 1, 1.0}, {1, 2, 2.0}, {2, 3, 3.0}});
  const auto d = flag_persistence(g, 2);
  // three merges plus one essential component, nothing above degree 0
  REQUIRE(d.points.size() == 4);
  CHECK(finite_h0_deaths(d) == std::vector<double>{1.0, 2.0, 3.0});
  CHECK(d.points.back().essential());
  CHECK(d.points.back().degree == 0);
  for (const auto& p : d.points) CHECK(p.birth == 0.0);
}

TEST_CASE("persistence of a cycle") {
  const auto g = make_graph(
      4, {{0, 1, 1.0}, {1, 2, 2.0}, {2, 3, 3.0}, {0, 3, 4.0}});
  const auto d = flag_persistence(g, 2);
  std::vector<PersistencePoint> h1;
  for (const auto& p : d.points)
    if (p.degree == 1) h1.push_back(p);
  REQUIRE(h1.size() == 1);
  CHECK(h1[0].birth == 4.0);  // loop closes at the heaviest edge
  CHECK(h1[0].essential());   // nothing fills it
}

TEST_CASE("filled triangle has no surviving cycle") {
  const auto g = make_graph(3, {{0, 1, 1.0}, {0, 2, 2.0}, {1, 2, 3.0}});
  const auto d = flag_persistence(g, 2);
  for (const auto& p : d.points) CHECK(p.degree == 0);
  // with zero-persistence retained the killed cycle shows up at (3,3)
  const auto full = flag_persistence(g, 2, false);
  const auto zero = std::count_if(
      full.points.begin(), full.points.end(),
      [](const auto& p) { return p.degree == 1 && p.birth == p.death; });
  CHECK(zero == 1);
}

TEST_CASE("two components give two essentials") {
  const auto g = make_graph(4, {{0, 1, 1.0}, {2, 3, 2.0}});
  const auto d = flag_persistence(g, 2);
  const auto ess = std::count_if(d.points.begin(), d.points.end(),
                                 [](const auto& p) { return p.essential(); });
  CHECK(ess == 2);
}

TEST_CASE("h0 deaths match kruskal merges on random graphs") {
  Rng rng(77);
  for (int trial = 0; trial < 100; ++trial) {
    const auto n = 3 + static_cast<std::uint32_t>(rng.below(28));
    const auto g = random_filtered(rng, n, 0.3);
    const auto d = flag_persistence(g, 0);
    CHECK(finite_h0_deaths(d) == oracles::mst_merge_values(g));
  }
}

TEST_CASE("reduction agrees with the naive algorithm") {
  Rng rng(78);
  for (int trial = 0; trial < 100; ++trial) {
    const auto n = 3 + static_cast<std::uint32_t>(rng.below(10));
    const auto g = random_filtered(rng, n, 0.45);
    const auto filt = build_flag_filtration(g, 3);
    for (const bool drop : {true, false}) {
      const auto fast = compute_persistence(filt, drop);
      const auto slow = oracles::naive_reduction(filt, 2, drop);
      CHECK(fast.points == slow.points);
    }
  }
}

TEST_CASE("reduction rejects malformed input") {
  const auto g = make_graph(3, {{0, 1, 1.0}, {1, 2, 2.0}});
  auto filt = build_flag_filtration(g, 2);
  std::swap(filt.front(), filt.back());  // edge now precedes its vertices
  CHECK_THROWS_AS(compute_persistence(filt), ValueError);

  auto missing = build_flag_filtration(g, 2);
  missing.erase(missing.begin());  // drop vertex 0, its edge remains
  CHECK_THROWS_AS(compute_persistence(missing), ValueError);
}

TEST_CASE("diagram thresholding") {
  PersistenceDiagram d;
  d.points = {{0, 0.0, 0.5}, {0, 0.0, kInf}, {1, 2.0, 2.4}, {1, 3.0, 9.0}};
  const auto t = threshold_diagram(d, 0.45);
  REQUIRE(t.points.size() == 3);
  CHECK(t.points[0].death == 0.5);
  CHECK(t.points[1].essential());
  CHECK(t.points[2].death == 9.0);
  CHECK_THROWS_AS(threshold_diagram(d, -1.0), ValueError);
  CHECK(threshold_diagram(d, 0.0).points == d.points);
}
