#include "tempofilt/null_models.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <unordered_map>
#include <unordered_set>
#include <utility>

#include "tempofilt/errors.hpp"

namespace tempofilt {

namespace {

std::uint64_t pair_key(std::uint32_t u, std::uint32_t v) {
  if (u > v) std::swap(u, v);
  return (static_cast<std::uint64_t>(u) << 32) | v;
}

TemporalGraph rebuild(const TemporalGraph& original,
                      const std::vector<std::pair<std::uint32_t, std::uint32_t>>& pairs,
                      const std::vector<std::vector<double>>& labels) {
  std::vector<TemporalEdge> edges;
  std::size_t total = 0;
  for (const auto& l : labels) total += l.size();
  edges.reserve(total);
  for (std::size_t e = 0; e < pairs.size(); ++e)
    for (double t : labels[e]) edges.push_back({pairs[e].first, pairs[e].second, t});
  return TemporalGraph::from_edges(original.n_vertices(), std::move(edges),
                                   original.names());
}

// Shared exchange move for the rewire models. Returns true when the exchange
// was applied. `present` tracks the current vertex-pair set.
bool try_exchange(std::vector<std::pair<std::uint32_t, std::uint32_t>>& pairs,
                  std::unordered_set<std::uint64_t>& present, std::size_t s,
                  std::size_t p, bool cross) {
  const auto [u, v] = pairs[s];
  const auto [x, y] = pairs[p];
  std::pair<std::uint32_t, std::uint32_t> n1, n2;
  if (cross) {
    n1 = {u, y};
    n2 = {x, v};
  } else {
    n1 = {u, x};
    n2 = {v, y};
  }
  if (n1.first == n1.second || n2.first == n2.second) return false;  // self loop
  if (n1.first > n1.second) std::swap(n1.first, n1.second);
  if (n2.first > n2.second) std::swap(n2.first, n2.second);
  const std::uint64_t k1 = pair_key(n1.first, n1.second);
  const std::uint64_t k2 = pair_key(n2.first, n2.second);
  if (k1 == k2) return false;  // the two replacements would coincide
  present.erase(pair_key(u, v));
  present.erase(pair_key(x, y));
  if (present.count(k1) || present.count(k2)) {
    present.insert(pair_key(u, v));
    present.insert(pair_key(x, y));
    return false;  // duplicate of an existing pair
  }
  pairs[s] = n1;
  pairs[p] = n2;
  present.insert(k1);
  present.insert(k2);
  return true;
}

}  // namespace

TemporalGraph tp_perturb(const TemporalGraph& g, double fraction, double epsilon,
                         Rng rng) {
  if (fraction < 0.0 || fraction > 1.0)
    throw ValueError("tp_perturb: fraction must lie in [0, 1]");
  if (!(epsilon > 0.0)) throw ValueError("tp_perturb: epsilon must be positive");

  auto edges = g.edges();
  const std::size_t n = edges.size();
  const auto k = static_cast<std::size_t>(
      std::ceil(fraction * static_cast<double>(n)));

  std::vector<std::size_t> idx(n);
  std::iota(idx.begin(), idx.end(), 0);
  for (std::size_t i = 0; i < k; ++i)
    std::swap(idx[i], idx[i + rng.below(n - i)]);

  for (std::size_t i = 0; i < k; ++i) {
    double delta;
    do {
      delta = rng.range(-epsilon, epsilon);
    } while (delta == 0.0 || delta <= -epsilon);  // open interval, no zero shift
    edges[idx[i]].t += delta;
  }
  return TemporalGraph::from_edges(g.n_vertices(), std::move(edges), g.names());
}

TemporalGraph ewlss_shuffle(const TemporalGraph& g, std::size_t steps, Rng rng) {
  AggregateGraph a = aggregate(g);
  auto labels = a.labels;

  // label-set sizes never change under swaps, so the pair classes are fixed
  std::unordered_map<std::size_t, std::vector<std::uint32_t>> by_count;
  for (std::uint32_t e = 0; e < labels.size(); ++e)
    by_count[labels[e].size()].push_back(e);
  std::vector<std::size_t> counts;
  counts.reserve(by_count.size());
  for (const auto& [c, members] : by_count) counts.push_back(c);
  std::sort(counts.begin(), counts.end());  // deterministic class order

  std::vector<const std::vector<std::uint32_t>*> classes;
  std::vector<std::uint64_t> cumulative;
  std::uint64_t total_pairs = 0;
  for (std::size_t c : counts) {
    const auto& members = by_count[c];
    if (members.size() < 2) continue;
    const auto s = static_cast<std::uint64_t>(members.size());
    total_pairs += s * (s - 1) / 2;
    classes.push_back(&members);
    cumulative.push_back(total_pairs);
  }

  if (steps > 0 && total_pairs == 0)
    throw ValueError("ewlss_shuffle: no two aggregate edges share a label count");

  for (std::size_t step = 0; step < steps; ++step) {
    const std::uint64_t r = rng.below(total_pairs);
    const std::size_t c = static_cast<std::size_t>(
        std::upper_bound(cumulative.begin(), cumulative.end(), r) - cumulative.begin());
    const auto& members = *classes[c];
    const std::size_t i = rng.below(members.size());
    std::size_t j = rng.below(members.size() - 1);
    if (j >= i) ++j;
    std::swap(labels[members[i]], labels[members[j]]);
  }
  return rebuild(g, a.edges, labels);
}

TemporalGraph re_shuffle(const TemporalGraph& g, Rng rng) {
  AggregateGraph a = aggregate(g);
  const std::size_t m = a.edges.size();
  if (m < 2) return rebuild(g, a.edges, a.labels);

  auto pairs = a.edges;
  std::unordered_set<std::uint64_t> present;
  present.reserve(m * 2);
  for (auto [u, v] : pairs) present.insert(pair_key(u, v));

  for (std::size_t s = 0; s < m; ++s) {
    std::size_t p = rng.below(m - 1);
    if (p >= s) ++p;
    const bool cross = rng.below(2) == 0;
    try_exchange(pairs, present, s, p, cross);  // rejected moves are skipped
  }
  return rebuild(g, pairs, a.labels);
}

TemporalGraph re_exchange_steps(const TemporalGraph& g, std::size_t steps, Rng rng) {
  AggregateGraph a = aggregate(g);
  const std::size_t m = a.edges.size();
  if (m < 2 || steps == 0) return rebuild(g, a.edges, a.labels);

  auto pairs = a.edges;
  std::unordered_set<std::uint64_t> present;
  present.reserve(m * 2);
  for (auto [u, v] : pairs) present.insert(pair_key(u, v));

  std::size_t accepted = 0;
  const std::size_t attempt_budget = 50 * steps + 100;
  for (std::size_t attempt = 0; attempt < attempt_budget && accepted < steps; ++attempt) {
    const std::size_t s = rng.below(m);
    std::size_t p = rng.below(m - 1);
    if (p >= s) ++p;
    const bool cross = rng.below(2) == 0;
    if (try_exchange(pairs, present, s, p, cross)) ++accepted;
  }
  return rebuild(g, pairs, a.labels);
}

TemporalGraph cm_rewire(const TemporalGraph& g, Rng rng, int max_retries) {
  AggregateGraph a = aggregate(g);
  const std::size_t m = a.edges.size();
  if (m == 0) return rebuild(g, a.edges, a.labels);

  std::vector<std::uint32_t> stubs;
  stubs.reserve(2 * m);
  for (std::uint32_t v = 0; v < a.n_vertices; ++v)
    stubs.insert(stubs.end(), a.degree(v), v);

  std::vector<std::pair<std::uint32_t, std::uint32_t>> pairs;
  std::unordered_set<std::uint64_t> used;
  bool matched = false;
  for (int attempt = 0; attempt < max_retries && !matched; ++attempt) {
    rng.shuffle(stubs);
    pairs.clear();
    used.clear();
    matched = true;
    for (std::size_t e = 0; e < m; ++e) {
      // resample the partner stub of position 2e until the pair is simple
      bool placed = false;
      const std::size_t partner_slots = stubs.size() - (2 * e + 1);
      const std::size_t local_budget = 4 * partner_slots + 32;
      for (std::size_t tries = 0; tries < local_budget; ++tries) {
        const std::size_t q = 2 * e + 1 + rng.below(partner_slots);
        std::swap(stubs[2 * e + 1], stubs[q]);
        const std::uint32_t u = stubs[2 * e], v = stubs[2 * e + 1];
        if (u == v) continue;
        const std::uint64_t key = pair_key(u, v);
        if (used.count(key)) continue;
        used.insert(key);
        pairs.emplace_back(std::min(u, v), std::max(u, v));
        placed = true;
        break;
      }
      if (!placed) {
        matched = false;  // dead end, restart with a fresh shuffle
        break;
      }
    }
  }
  if (!matched)
    throw ResourceError("cm_rewire: no simple stub matching found after " +
                        std::to_string(max_retries) + " attempts");

  // hand the label sets to the new edges in random order
  std::vector<std::uint32_t> perm(m);
  std::iota(perm.begin(), perm.end(), 0);
  rng.shuffle(perm);
  std::vector<std::vector<double>> labels(m);
  for (std::size_t e = 0; e < m; ++e) labels[e] = a.labels[perm[e]];

  // then shuffle every timestamp across the whole graph
  std::vector<double> times;
  times.reserve(g.edges().size());
  for (const auto& l : labels) times.insert(times.end(), l.begin(), l.end());
  rng.shuffle(times);
  std::size_t next = 0;
  for (auto& l : labels)
    for (auto& t : l) t = times[next++];

  return rebuild(g, pairs, labels);
}

}  // namespace tempofilt
