#include "tempofilt/generate.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <unordered_set>

#include "tempofilt/errors.hpp"

namespace tempofilt {

namespace {

// colex index of the pair (i < j) is C(j, 2) + i; invert via the quadratic
std::pair<std::uint32_t, std::uint32_t> pair_from_index(std::uint64_t idx) {
  auto j = static_cast<std::uint64_t>(
      (1.0 + std::sqrt(1.0 + 8.0 * static_cast<double>(idx))) / 2.0);
  while (j * (j - 1) / 2 > idx) --j;
  while ((j + 1) * j / 2 <= idx) ++j;
  const std::uint64_t i = idx - j * (j - 1) / 2;
  return {static_cast<std::uint32_t>(i), static_cast<std::uint32_t>(j)};
}

struct UnionFind {
  std::vector<std::uint32_t> parent;
  explicit UnionFind(std::uint32_t n) : parent(n) {
    std::iota(parent.begin(), parent.end(), 0);
  }
  std::uint32_t find(std::uint32_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  void unite(std::uint32_t a, std::uint32_t b) { parent[find(a)] = find(b); }
};

bool aggregate_connected(const TemporalGraph& g) {
  if (g.n_vertices() == 0) return true;
  UnionFind uf(g.n_vertices());
  for (const auto& e : g.edges()) uf.unite(e.u, e.v);
  const std::uint32_t root = uf.find(0);
  for (std::uint32_t v = 1; v < g.n_vertices(); ++v)
    if (uf.find(v) != root) return false;
  return true;
}

// weight-proportional draw over weights[members[*]]
class WeightedPicker {
 public:
  WeightedPicker(const std::vector<double>& weights) : cumulative_(weights.size()) {
    double total = 0.0;
    for (std::size_t i = 0; i < weights.size(); ++i) {
      total += weights[i];
      cumulative_[i] = total;
    }
  }
  std::uint32_t pick(Rng& rng) const {
    const double r = rng.unit() * cumulative_.back();
    return static_cast<std::uint32_t>(
        std::lower_bound(cumulative_.begin(), cumulative_.end(), r) -
        cumulative_.begin());
  }

 private:
  std::vector<double> cumulative_;
};

}  // namespace

TemporalGraph random_temporal_graph(const RandomGraphSpec& spec, Rng rng) {
  if (spec.n_vertices < 1) throw ValueError("random graph needs at least one vertex");
  if (spec.sparsity < 0.0 || spec.sparsity > 1.0)
    throw ValueError("sparsity must lie in [0, 1]");
  if (!(spec.t_min < spec.t_max)) throw ValueError("empty timestamp range");

  const std::uint64_t n = spec.n_vertices;
  const std::uint64_t total = n * (n - 1) / 2;
  const auto k = static_cast<std::uint64_t>(
      std::floor(spec.sparsity * static_cast<double>(total)));

  // Floyd's subset sampling: k distinct pair indices
  std::unordered_set<std::uint64_t> chosen;
  chosen.reserve(k * 2);
  for (std::uint64_t j = total - k; j < total; ++j) {
    const std::uint64_t r = rng.below(j + 1);
    if (!chosen.insert(r).second) chosen.insert(j);
  }
  std::vector<std::uint64_t> indices(chosen.begin(), chosen.end());
  std::sort(indices.begin(), indices.end());  // fixed order for timestamp draws

  std::vector<TemporalEdge> edges;
  edges.reserve(indices.size());
  for (std::uint64_t idx : indices) {
    auto [u, v] = pair_from_index(idx);
    // t_max - unit * span lies in (t_min, t_max]
    const double t = spec.t_max - rng.unit() * (spec.t_max - spec.t_min);
    edges.push_back({u, v, t});
  }
  return TemporalGraph::from_edges(spec.n_vertices, std::move(edges));
}

Mixing mixing_from_string(const std::string& name) {
  if (name == "assortative") return Mixing::Assortative;
  if (name == "disassortative") return Mixing::Disassortative;
  throw ValueError("unknown mixing mode: " + name);
}

std::string to_string(Mixing m) {
  return m == Mixing::Assortative ? "assortative" : "disassortative";
}

ContactGraphResult synthetic_contact_graph(const ContactModelSpec& spec, Rng rng) {
  if (spec.n_vertices < 2) throw ValueError("contact graph needs at least two vertices");
  if (spec.n_temporal_edges < 1) throw ValueError("contact graph needs at least one contact");
  if (spec.mixing_strength < 0.0 || spec.mixing_strength > 1.0)
    throw ValueError("mixing_strength must lie in [0, 1]");
  if (!(spec.t_min < spec.t_max)) throw ValueError("empty timestamp range");

  const std::uint32_t n = spec.n_vertices;
  TemporalGraph result;
  bool connected = false;

  const int attempts = std::max(1, spec.max_connect_retries);
  for (int attempt = 0; attempt < attempts && !connected; ++attempt) {
    Rng r = rng.derive(static_cast<std::uint64_t>(attempt));

    // heavy-tailed activity weights; rank 0 = heaviest
    std::vector<double> weight(n);
    for (auto& w : weight) w = std::pow(1.0 - r.unit(), -1.0 / 1.5);
    std::vector<std::uint32_t> by_rank(n);
    std::iota(by_rank.begin(), by_rank.end(), 0);
    std::sort(by_rank.begin(), by_rank.end(), [&](std::uint32_t a, std::uint32_t b) {
      return weight[a] > weight[b] || (weight[a] == weight[b] && a < b);
    });
    std::vector<std::uint32_t> rank(n);
    for (std::uint32_t i = 0; i < n; ++i) rank[by_rank[i]] = i;

    const WeightedPicker picker(weight);
    const std::uint32_t window = std::max<std::uint32_t>(1, n / 10);

    // Partner choice: neutral draws follow the weights; biased draws sample a
    // handful of weighted candidates and keep the rank-closest (assortative)
    // or rank-farthest (disassortative) one.
    auto draw_partner = [&](std::uint32_t u, Rng& rr) {
      if (rr.unit() >= spec.mixing_strength) {
        std::uint32_t v;
        do {
          v = picker.pick(rr);
        } while (v == u);
        return v;
      }
      if (spec.mixing == Mixing::Assortative) {
        // any vertex within the rank window around u
        const std::uint32_t ru = rank[u];
        const std::uint32_t lo = ru >= window ? ru - window : 0;
        const std::uint32_t hi = std::min<std::uint32_t>(n - 1, ru + window);
        std::uint32_t pos;
        do {
          pos = lo + static_cast<std::uint32_t>(rr.below(hi - lo + 1));
        } while (pos == ru);
        return by_rank[pos];
      }
      // disassortative: jump to the opposite half of the rank order
      const std::uint32_t half = n / 2;
      const std::uint32_t ru = rank[u];
      std::uint32_t pos;
      if (ru < half) {
        pos = half + static_cast<std::uint32_t>(rr.below(n - half));
      } else {
        pos = static_cast<std::uint32_t>(rr.below(half));
      }
      return by_rank[pos];
    };

    std::vector<TemporalEdge> edges;
    edges.reserve(spec.n_temporal_edges);
    auto draw_time = [&](Rng& rr) {
      return spec.t_max - rr.unit() * (spec.t_max - spec.t_min);
    };

    // connectivity backbone: attach each vertex (in random order) to a
    // biased partner among the vertices already placed
    std::vector<std::uint32_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    r.shuffle(order);
    const std::size_t tree_edges =
        std::min<std::size_t>(spec.n_temporal_edges, n - 1);
    std::vector<std::uint32_t> placed{order[0]};
    std::vector<double> placed_weight{weight[order[0]]};
    for (std::size_t i = 1; i <= tree_edges; ++i) {
      const std::uint32_t u = order[i];
      std::uint32_t v;
      if (r.unit() >= spec.mixing_strength || placed.size() == 1) {
        const WeightedPicker sub(placed_weight);
        v = placed[sub.pick(r)];
      } else {
        // biased attachment: candidates from the placed set, judged by rank
        const WeightedPicker sub(placed_weight);
        const std::size_t tries = std::min<std::size_t>(placed.size(), 12);
        std::uint32_t best = placed[sub.pick(r)];
        for (std::size_t c = 1; c < tries; ++c) {
          const std::uint32_t cand = placed[sub.pick(r)];
          const auto du = static_cast<long long>(rank[u]);
          const auto db = std::llabs(static_cast<long long>(rank[best]) - du);
          const auto dc = std::llabs(static_cast<long long>(rank[cand]) - du);
          const bool better =
              spec.mixing == Mixing::Assortative ? dc < db : dc > db;
          if (better) best = cand;
        }
        v = best;
      }
      edges.push_back({u, v, draw_time(r)});
      placed.push_back(u);
      placed_weight.push_back(weight[u]);
    }

    for (std::size_t e = edges.size(); e < spec.n_temporal_edges; ++e) {
      const std::uint32_t u = picker.pick(r);
      const std::uint32_t v = draw_partner(u, r);
      edges.push_back({u, v, draw_time(r)});
    }

    result = TemporalGraph::from_edges(n, std::move(edges));
    connected = aggregate_connected(result);
  }
  return {std::move(result), connected};
}

}  // namespace tempofilt
