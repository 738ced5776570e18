#include <doctest.h>

#include <Eigen/Dense>
#include <cmath>
#include <limits>
#include <numbers>

#include "tempofilt/errors.hpp"
#include "tempofilt/filtration_kernel.hpp"
#include "tempofilt/pss_kernel.hpp"
#include "tempofilt/rng.hpp"

using namespace tempofilt;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::vector<DiagramPoint> random_points(Rng& rng, std::size_t n) {
  std::vector<DiagramPoint> pts;
  for (std::size_t i = 0; i < n; ++i) {
    const double b = rng.range(0.0, 5.0);
    pts.push_back({b, b + rng.range(0.01, 5.0)});
  }
  return pts;
}

double min_eigenvalue(const GramMatrix& g) {
  const auto n = static_cast<Eigen::Index>(g.size());
  Eigen::MatrixXd m(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) m(i, j) = g.at(i, j);
  return Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(m).eigenvalues()(0);
}

FilteredGraph tiny_graph(std::vector<FilteredEdge> edges, std::uint32_t n) {
  FilteredGraph g;
  g.n_vertices = n;
  g.edges = std::move(edges);
  return g;
}

}  // namespace

TEST_CASE("pss kernel closed form on one-point diagrams") {
  const DiagramPoint p{1.0, 3.0}, q{2.0, 5.0};
  for (const double sigma : {1.0, 2.0, 0.5}) {
    const double direct = std::exp(-5.0 / (8.0 * sigma));
    const double mirrored = std::exp(-17.0 / (8.0 * sigma));
    const double expect =
        (direct - mirrored) / (8.0 * std::numbers::pi * sigma * sigma);
    const std::vector<DiagramPoint> a{p}, b{q};
    CHECK(pss_kernel(a, b, sigma) == doctest::Approx(expect).epsilon(1e-12));
    CHECK(pss_kernel(b, a, sigma) == doctest::Approx(expect).epsilon(1e-12));
  }
}

TEST_CASE("pss kernel basics") {
  Rng rng(51);
  const auto a = random_points(rng, 6);
  const auto b = random_points(rng, 9);
  CHECK(pss_kernel(a, b, 1.0) == pss_kernel(b, a, 1.0));
  CHECK(pss_kernel({}, b, 1.0) == 0.0);
  CHECK(pss_kernel(a, {}, 1.0) == 0.0);
  CHECK(pss_kernel(a, a, 1.0) > 0.0);
  CHECK_THROWS_AS(pss_kernel(a, b, 0.0), ValueError);
  CHECK_THROWS_AS(pss_kernel(a, b, -1.0), ValueError);
  CHECK_THROWS_AS(pss_kernel(a, b, kInf), ValueError);
}

TEST_CASE("degree slicing and essential substitution") {
  PersistenceDiagram d;
  d.points = {{0, 0.0, 2.0}, {0, 0.0, kInf}, {1, 1.0, 4.0}, {2, 3.0, 3.5}};
  CHECK_THROWS_AS(degree_slice(d, 0), ValueError);  // essential not handled

  CHECK(essential_cap({d}, 1.1) == doctest::Approx(4.4));
  CHECK(essential_cap({PersistenceDiagram{}}, 2.0) == 1.0);  // nothing finite
  PersistenceDiagram born_late;
  born_late.points = {{0, 3.0, kInf}};
  CHECK(essential_cap({born_late}, 2.0) == 6.0);  // births count as coordinates

  const auto capped = substitute_essentials(d, 4.4);
  const auto h0 = degree_slice(capped, 0);
  REQUIRE(h0.size() == 2);
  CHECK(h0[1].death == doctest::Approx(4.4));
  CHECK(degree_slice(capped, 1).size() == 1);
  CHECK(degree_slice(capped, 2).size() == 1);
  CHECK(degree_slice(capped, 3).empty());

  // a cap below the birth cannot produce death < birth
  PersistenceDiagram late;
  late.points = {{1, 9.0, kInf}};
  CHECK(substitute_essentials(late, 4.4).points[0].death == 9.0);
}

TEST_CASE("pss gram matrices stay positive semidefinite") {
  Rng rng(52);
  for (int trial = 0; trial < 10; ++trial) {
    std::vector<PersistenceDiagram> diagrams;
    std::vector<std::string> ids;
    const auto m = 4 + rng.below(5);
    for (std::uint64_t i = 0; i < m; ++i) {
      PersistenceDiagram d;
      for (const auto& p : random_points(rng, 1 + rng.below(8)))
        d.points.push_back({static_cast<int>(rng.below(3)), p.birth, p.death});
      diagrams.push_back(std::move(d));
      ids.push_back("g" + std::to_string(i));
    }
    PssParams params;
    params.sigma = 0.5 + rng.unit();
    const auto gram = pss_gram(diagrams, ids, params);
    REQUIRE(gram.size() == m);
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = 0; j < i; ++j) CHECK(gram.at(i, j) == gram.at(j, i));
    CHECK(min_eigenvalue(gram) >= -1e-8 * std::max(gram.trace(), 1.0));
  }
}

TEST_CASE("pss gram respects degree weights") {
  PersistenceDiagram a, b;
  a.points = {{0, 0.0, 1.0}, {1, 2.0, 3.0}};
  b.points = {{0, 0.0, 2.0}, {1, 1.0, 4.0}};
  PssParams h0_only;
  h0_only.degree_weights[1] = 0.0;
  h0_only.degree_weights[2] = 0.0;
  const auto gram = pss_gram({a, b}, {"a", "b"}, h0_only);
  const std::vector<DiagramPoint> sa{{0.0, 1.0}}, sb{{0.0, 2.0}};
  CHECK(gram.at(0, 1) == doctest::Approx(pss_kernel(sa, sb, 1.0)).epsilon(1e-12));
}

TEST_CASE("quantile thresholds are descending with a zero floor") {
  std::vector<FilteredGraph> graphs(1);
  graphs[0].n_vertices = 11;
  for (std::uint32_t i = 0; i < 10; ++i)
    graphs[0].edges.push_back({i, i + 1, static_cast<double>(i + 1)});
  CHECK(quantile_thresholds(graphs, 4) ==
        std::vector<double>{8.0, 6.0, 4.0, 2.0, 0.0});

  // constant values collapse to a single level plus the floor
  for (auto& e : graphs[0].edges) e.value = 5.0;
  CHECK(quantile_thresholds(graphs, 6) == std::vector<double>{5.0, 0.0});

  // +inf edges are ignored when pooling
  graphs[0].edges[0].value = kInf;
  const auto t = quantile_thresholds(graphs, 3);
  CHECK(t.front() == 5.0);
  CHECK_THROWS_AS(quantile_thresholds(graphs, 0), ValueError);
}

TEST_CASE("superlevel flip") {
  auto g = tiny_graph({{0, 1, 1.0}, {1, 2, 4.0}, {0, 2, kInf}}, 3);
  const auto s = to_superlevel(g, 4.0);
  REQUIRE(s.edges.size() == 2);  // the unreachable edge disappears
  CHECK(s.edges[0].value == 3.0);
  CHECK(s.edges[1].value == 0.0);
  CHECK(dataset_max_finite_value({g}) == 4.0);
  CHECK(dataset_max_finite_value({tiny_graph({}, 2)}) == 0.0);
}

TEST_CASE("wl histograms count every vertex at the uniform label") {
  const auto g = tiny_graph({{0, 1, 3.0}, {1, 2, 1.0}, {2, 3, 2.0}}, 4);
  const std::vector<double> thresholds{3.0, 2.0, 1.0, 0.0};
  WlLabelDictionary dict;
  const auto hist = wl_filtration_histograms(g, thresholds, 2, dict);

  const auto uniform = hist.find(feature_key(0, 0));
  REQUIRE(uniform != hist.end());
  REQUIRE(uniform->second.size() == thresholds.size());
  for (const double c : uniform->second) CHECK(c == 4.0);

  // deeper rounds produce refined labels beyond the uniform one
  bool has_refined = false;
  for (const auto& [key, counts] : hist)
    if ((key >> 48) > 0) has_refined = true;
  CHECK(has_refined);
  CHECK(dict.size() > 1);
}

TEST_CASE("wl refinement separates structure at the right level") {
  // path 0-1-2: at the top threshold only the heavy edge is present,
  // so vertex 2 keeps a lonely signature while 0 and 1 see each other
  const auto g = tiny_graph({{0, 1, 5.0}, {1, 2, 1.0}}, 3);
  WlLabelDictionary dict;
  const auto hist = wl_filtration_histograms(g, {5.0, 1.0}, 1, dict);
  std::vector<double> round1_level0;
  for (const auto& [key, counts] : hist)
    if ((key >> 48) == 1 && counts[0] > 0) round1_level0.push_back(counts[0]);
  std::sort(round1_level0.begin(), round1_level0.end());
  CHECK(round1_level0 == std::vector<double>{1.0, 2.0});
}

TEST_CASE("wasserstein distance hand values and axioms") {
  const std::vector<double> locations{0.0, 1.0};
  CHECK(wasserstein_1d({1.0, 0.0}, {0.0, 1.0}, locations) == 1.0);
  CHECK(wasserstein_1d({1.0, 1.0}, {1.0, 1.0}, locations) == 0.0);
  // mass normalization: scaling either histogram changes nothing
  CHECK(wasserstein_1d({2.0, 0.0}, {0.0, 3.0}, locations) == 1.0);
  CHECK(wasserstein_1d({3.0, 1.0}, {6.0, 2.0}, locations) == 0.0);

  CHECK_THROWS_AS(wasserstein_1d({1.0}, {1.0, 2.0}, locations), ValueError);
  CHECK_THROWS_AS(wasserstein_1d({0.0, 0.0}, {1.0, 1.0}, locations), ValueError);

  Rng rng(53);
  for (int trial = 0; trial < 500; ++trial) {
    const std::size_t n = 2 + rng.below(5);
    std::vector<double> locs;
    for (std::size_t i = 0; i < n; ++i) locs.push_back(rng.range(0.0, 10.0));
    auto draw = [&] {
      std::vector<double> h;
      for (std::size_t i = 0; i < n; ++i) h.push_back(rng.range(0.001, 1.0));
      return h;
    };
    const auto a = draw(), b = draw(), c = draw();
    const double ab = wasserstein_1d(a, b, locs);
    const double ba = wasserstein_1d(b, a, locs);
    const double ac = wasserstein_1d(a, c, locs);
    const double cb = wasserstein_1d(c, b, locs);
    CHECK(ab == doctest::Approx(ba).epsilon(1e-12));
    CHECK(wasserstein_1d(a, a, locs) == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(ab <= ac + cb + 1e-9);
  }
}

TEST_CASE("filtration kernel self-value equals the squared feature masses") {
  const auto g = tiny_graph({{0, 1, 3.0}, {1, 2, 1.0}, {0, 2, 2.0}}, 3);
  const std::vector<double> thresholds{3.0, 2.0, 1.0, 0.0};
  WlLabelDictionary dict;
  const auto hist = wl_filtration_histograms(g, thresholds, 3, dict);

  double expect = 0.0;
  for (const auto& [key, counts] : hist) {
    double mass = 0.0;
    for (const double c : counts) mass += c;
    expect += mass * mass;
  }
  CHECK(filtration_kernel(hist, hist, thresholds, 2.0) ==
        doctest::Approx(expect).epsilon(1e-12));
  CHECK_THROWS_AS(filtration_kernel(hist, hist, thresholds, 0.0), ValueError);
}

TEST_CASE("filtration gram is symmetric and positive semidefinite") {
  Rng rng(54);
  std::vector<FilteredGraph> graphs;
  std::vector<std::string> ids;
  for (int i = 0; i < 8; ++i) {
    FilteredGraph g;
    g.n_vertices = 6 + static_cast<std::uint32_t>(rng.below(5));
    for (std::uint32_t u = 0; u < g.n_vertices; ++u)
      for (std::uint32_t v = u + 1; v < g.n_vertices; ++v)
        if (rng.unit() < 0.4) g.edges.push_back({u, v, rng.range(0.0, 8.0)});
    graphs.push_back(std::move(g));
    ids.push_back("g" + std::to_string(i));
  }
  FwlParams params;
  params.n_levels = 5;
  params.wl_depth = 2;
  for (const bool sublevel : {false, true}) {
    const auto gram = filtration_gram(graphs, ids, params, sublevel);
    for (std::size_t i = 0; i < gram.size(); ++i) {
      CHECK(gram.at(i, i) > 0.0);
      for (std::size_t j = 0; j < i; ++j) CHECK(gram.at(i, j) == gram.at(j, i));
    }
    CHECK(min_eigenvalue(gram) >= -1e-8 * std::max(gram.trace(), 1.0));
  }
}
