#include "tempofilt/persistence.hpp"

#include <algorithm>
#include <cmath>
#include <tuple>
#include <unordered_map>

#include "tempofilt/errors.hpp"

namespace tempofilt {

namespace {

struct VertexArrayHash {
  std::size_t operator()(const std::array<std::uint32_t, 4>& a) const {
    std::uint64_t h = 0xcbf29ce484222325ull;
    for (std::uint32_t x : a) {
      h ^= x;
      h *= 0x100000001b3ull;
    }
    return static_cast<std::size_t>(h);
  }
};

using IndexMap =
    std::unordered_map<std::array<std::uint32_t, 4>, std::uint32_t, VertexArrayHash>;

// in-place symmetric difference of two ascending index columns
void xor_into(std::vector<std::uint32_t>& a, const std::vector<std::uint32_t>& b,
              std::vector<std::uint32_t>& scratch) {
  scratch.clear();
  std::size_t i = 0, j = 0;
  while (i < a.size() && j < b.size()) {
    if (a[i] < b[j]) scratch.push_back(a[i++]);
    else if (b[j] < a[i]) scratch.push_back(b[j++]);
    else { ++i; ++j; }
  }
  scratch.insert(scratch.end(), a.begin() + i, a.end());
  scratch.insert(scratch.end(), b.begin() + j, b.end());
  a.swap(scratch);
}

}  // namespace

std::vector<FilteredSimplex> build_flag_filtration(const FilteredGraph& g,
                                                   int max_dim,
                                                   std::size_t max_simplices) {
  if (max_dim < 0 || max_dim > 3)
    throw ValueError("flag filtration supports dimensions 0..3");

  std::vector<FilteredSimplex> out;
  auto emit = [&](FilteredSimplex s) {
    if (out.size() >= max_simplices)
      throw ResourceError("clique budget of " + std::to_string(max_simplices) +
                          " simplices exceeded");
    out.push_back(s);
  };

  for (std::uint32_t v = 0; v < g.n_vertices; ++v) {
    FilteredSimplex s;
    s.v[0] = v;
    s.dim = 0;
    s.value = 0.0;
    emit(s);
  }

  // adjacency over finite edges only, ascending neighbor order
  std::vector<std::vector<std::pair<std::uint32_t, double>>> nb(g.n_vertices);
  for (const auto& e : g.edges) {
    if (std::isinf(e.value)) continue;
    if (max_dim >= 1) {
      FilteredSimplex s;
      s.v[0] = e.u;
      s.v[1] = e.v;
      s.dim = 1;
      s.value = e.value;
      emit(s);
    }
    nb[e.u].emplace_back(e.v, e.value);
    nb[e.v].emplace_back(e.u, e.value);
  }
  for (auto& list : nb) std::sort(list.begin(), list.end());

  auto edge_value = [&](std::uint32_t u, std::uint32_t v) {
    auto it = std::lower_bound(nb[u].begin(), nb[u].end(),
                               std::make_pair(v, -std::numeric_limits<double>::infinity()));
    return it->second;  // only called for known edges
  };

  std::vector<std::array<std::uint32_t, 4>> triangles;
  if (max_dim >= 2) {
    for (const auto& e : g.edges) {
      if (std::isinf(e.value)) continue;
      auto iu = std::lower_bound(nb[e.u].begin(), nb[e.u].end(),
                                 std::make_pair(e.v + 1, -std::numeric_limits<double>::infinity()));
      auto iv = std::lower_bound(nb[e.v].begin(), nb[e.v].end(),
                                 std::make_pair(e.v + 1, -std::numeric_limits<double>::infinity()));
      while (iu != nb[e.u].end() && iv != nb[e.v].end()) {
        if (iu->first < iv->first) ++iu;
        else if (iv->first < iu->first) ++iv;
        else {
          FilteredSimplex s;
          s.v[0] = e.u;
          s.v[1] = e.v;
          s.v[2] = iu->first;
          s.dim = 2;
          s.value = std::max({e.value, iu->second, iv->second});
          emit(s);
          triangles.push_back(s.v);
          ++iu;
          ++iv;
        }
      }
    }
  }

  if (max_dim >= 3) {
    for (const auto& t : triangles) {
      // common neighbors of all three vertices, above the largest one
      auto i0 = std::lower_bound(nb[t[0]].begin(), nb[t[0]].end(),
                                 std::make_pair(t[2] + 1, -std::numeric_limits<double>::infinity()));
      auto i1 = std::lower_bound(nb[t[1]].begin(), nb[t[1]].end(),
                                 std::make_pair(t[2] + 1, -std::numeric_limits<double>::infinity()));
      auto i2 = std::lower_bound(nb[t[2]].begin(), nb[t[2]].end(),
                                 std::make_pair(t[2] + 1, -std::numeric_limits<double>::infinity()));
      while (i0 != nb[t[0]].end() && i1 != nb[t[1]].end() && i2 != nb[t[2]].end()) {
        const std::uint32_t m = std::max({i0->first, i1->first, i2->first});
        if (i0->first < m) { ++i0; continue; }
        if (i1->first < m) { ++i1; continue; }
        if (i2->first < m) { ++i2; continue; }
        FilteredSimplex s;
        s.v = {t[0], t[1], t[2], m};
        s.dim = 3;
        s.value = std::max({edge_value(t[0], t[1]), edge_value(t[0], t[2]),
                            edge_value(t[1], t[2]), i0->second, i1->second,
                            i2->second});
        emit(s);
        ++i0;
        ++i1;
        ++i2;
      }
    }
  }

  std::sort(out.begin(), out.end(), [](const FilteredSimplex& a, const FilteredSimplex& b) {
    return std::tie(a.value, a.dim, a.v) < std::tie(b.value, b.dim, b.v);
  });
  return out;
}

PersistenceDiagram compute_persistence(const std::vector<FilteredSimplex>& filt,
                                       bool drop_zero_persistence) {
  const std::size_t n = filt.size();
  constexpr std::uint32_t kNone = 0xffffffffu;
  if (n >= kNone) throw ResourceError("filtration too large for 32-bit indexing");

  for (std::size_t i = 1; i < n; ++i)
    if (std::tie(filt[i].value, filt[i].dim, filt[i].v) <
        std::tie(filt[i - 1].value, filt[i - 1].dim, filt[i - 1].v))
      throw ValueError("filtration is not sorted");

  IndexMap index_of;
  index_of.reserve(n * 2);
  int max_dim = 0;
  for (std::uint32_t i = 0; i < n; ++i) {
    index_of.emplace(filt[i].v, i);
    max_dim = std::max<int>(max_dim, filt[i].dim);
  }

  auto boundary_of = [&](std::uint32_t j) {
    std::vector<std::uint32_t> col;
    const int d = filt[j].dim;
    col.reserve(d + 1);
    for (int skip = 0; skip <= d; ++skip) {
      std::array<std::uint32_t, 4> face{FilteredSimplex::kNoVertex,
                                        FilteredSimplex::kNoVertex,
                                        FilteredSimplex::kNoVertex,
                                        FilteredSimplex::kNoVertex};
      int k = 0;
      for (int t = 0; t <= d; ++t)
        if (t != skip) face[k++] = filt[j].v[t];
      auto it = index_of.find(face);
      if (it == index_of.end()) throw ValueError("filtration is missing a face");
      col.push_back(it->second);
    }
    std::sort(col.begin(), col.end());
    return col;
  };

  std::vector<std::uint32_t> pivot_owner(n, kNone);
  std::vector<char> cleared(n, 0), reduced_empty(n, 0);
  std::vector<std::pair<std::uint32_t, std::uint32_t>> pairs;
  std::vector<std::uint32_t> scratch;

  for (int d = max_dim; d >= 1; --d) {
    std::unordered_map<std::uint32_t, std::vector<std::uint32_t>> reduced;
    for (std::uint32_t j = 0; j < n; ++j) {
      if (filt[j].dim != d || cleared[j]) continue;
      auto col = boundary_of(j);
      for (;;) {
        if (col.empty()) {
          reduced_empty[j] = 1;
          break;
        }
        const std::uint32_t piv = col.back();
        const std::uint32_t owner = pivot_owner[piv];
        if (owner == kNone) {
          pivot_owner[piv] = j;
          pairs.emplace_back(piv, j);
          cleared[piv] = 1;  // the paired creator needs no reduction of its own
          reduced.emplace(j, std::move(col));
          break;
        }
        xor_into(col, reduced.at(owner), scratch);
      }
    }
  }

  PersistenceDiagram diagram;
  for (auto [i, j] : pairs) {
    const int degree = filt[i].dim;
    if (degree > 2) continue;
    const double birth = filt[i].value, death = filt[j].value;
    if (drop_zero_persistence && birth == death) continue;
    diagram.points.push_back({degree, birth, death});
  }
  for (std::uint32_t i = 0; i < n; ++i) {
    if (filt[i].dim > 2 || cleared[i]) continue;
    if (filt[i].dim >= 1 && !reduced_empty[i]) continue;  // a death column
    diagram.points.push_back(
        {filt[i].dim, filt[i].value, std::numeric_limits<double>::infinity()});
  }
  std::sort(diagram.points.begin(), diagram.points.end(),
            [](const PersistencePoint& a, const PersistencePoint& b) {
              return std::tie(a.degree, a.birth, a.death) <
                     std::tie(b.degree, b.birth, b.death);
            });
  return diagram;
}

PersistenceDiagram flag_persistence(const FilteredGraph& g, int max_degree,
                                    bool drop_zero_persistence,
                                    std::size_t max_simplices) {
  if (max_degree < 0 || max_degree > 2)
    throw ValueError("homology degrees 0..2 are supported");
  const auto filt = build_flag_filtration(g, max_degree + 1, max_simplices);
  return compute_persistence(filt, drop_zero_persistence);
}

PersistenceDiagram threshold_diagram(const PersistenceDiagram& d, double min_persistence) {
  if (min_persistence < 0) throw ValueError("min_persistence must be >= 0");
  PersistenceDiagram out;
  for (const auto& p : d.points)
    if (p.essential() || p.persistence() >= min_persistence) out.points.push_back(p);
  return out;
}

}  // namespace tempofilt
