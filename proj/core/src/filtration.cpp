#include "tempofilt/filtration.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>

#include "tempofilt/errors.hpp"

namespace tempofilt {

namespace {

struct Incident {
  double t;
  std::uint32_t edge;  // aggregate edge index
};

// Per-vertex lists of incident contacts. A contact (u, v, t) appears in both
// endpoint lists, so sweeping vertices and pairing list entries visits every
// adjacent contact pair exactly once (pairs sharing two endpoints are the
// parallel class of one aggregate edge and get skipped by edge id).
std::vector<std::vector<Incident>> incident_contacts(const AggregateGraph& a) {
  std::vector<std::vector<Incident>> inc(a.n_vertices);
  for (std::uint32_t e = 0; e < a.edges.size(); ++e) {
    auto [u, v] = a.edges[e];
    for (double t : a.labels[e]) {
      inc[u].push_back({t, e});
      inc[v].push_back({t, e});
    }
  }
  return inc;
}

enum class SweepMode { Sum, Min };

FilteredGraph neighborhood_sweep(const TemporalGraph& g, SweepMode mode) {
  const AggregateGraph a = aggregate(g);
  const auto inc = incident_contacts(a);
  const std::size_t m = a.edges.size();

  std::vector<double> acc(m, mode == SweepMode::Sum ? 0.0 : kNoNeighborhood);
  for (std::uint32_t w = 0; w < a.n_vertices; ++w) {
    const auto& list = inc[w];
    for (std::size_t i = 0; i < list.size(); ++i)
      for (std::size_t j = i + 1; j < list.size(); ++j) {
        if (list[i].edge == list[j].edge) continue;
        const double d = std::abs(list[i].t - list[j].t);
        if (mode == SweepMode::Sum) {
          acc[list[i].edge] += d;
          acc[list[j].edge] += d;
        } else {
          acc[list[i].edge] = std::min(acc[list[i].edge], d);
          acc[list[j].edge] = std::min(acc[list[j].edge], d);
        }
      }
  }

  const auto td = temporal_degrees(g);
  FilteredGraph out;
  out.n_vertices = a.n_vertices;
  out.edges.reserve(m);
  for (std::uint32_t e = 0; e < m; ++e) {
    auto [u, v] = a.edges[e];
    double value;
    if (mode == SweepMode::Min) {
      value = acc[e];
    } else {
      const std::size_t nbh = td[u] + td[v] - 2 * a.multiplicity(e);
      value = nbh == 0 ? kNoNeighborhood : acc[e] / static_cast<double>(nbh);
    }
    out.edges.push_back({u, v, value});
  }
  return out;
}

void require_single_labeled(const TemporalGraph& g, const char* op) {
  if (!g.single_labeled())
    throw ValueError(std::string(op) +
                     ": input is multi-labeled; use avg_filtration_multi");
}

std::vector<std::size_t> core_numbers(const AggregateGraph& a) {
  const std::uint32_t n = a.n_vertices;
  std::vector<std::size_t> deg(n), core(n, 0);
  std::size_t max_deg = 0;
  for (std::uint32_t v = 0; v < n; ++v) {
    deg[v] = a.degree(v);
    max_deg = std::max(max_deg, deg[v]);
  }
  // bucket peeling
  std::vector<std::vector<std::uint32_t>> bucket(max_deg + 1);
  for (std::uint32_t v = 0; v < n; ++v) bucket[deg[v]].push_back(v);
  std::vector<char> removed(n, 0);
  std::size_t k = 0;
  for (std::size_t d = 0; d <= max_deg; ++d) {
    auto& b = bucket[d];
    for (std::size_t idx = 0; idx < b.size(); ++idx) {
      const std::uint32_t v = b[idx];
      if (removed[v] || deg[v] != d) continue;
      removed[v] = 1;
      k = std::max(k, d);
      core[v] = k;
      for (auto [w, e] : a.adj[v]) {
        (void)e;
        if (removed[w] || deg[w] <= d) continue;
        --deg[w];
        if (deg[w] >= d)
          bucket[deg[w]].push_back(w);
      }
    }
  }
  return core;
}

std::vector<std::size_t> triangle_counts(const AggregateGraph& a) {
  std::vector<std::size_t> tri(a.n_vertices, 0);
  std::vector<std::vector<std::uint32_t>> nb(a.n_vertices);
  for (auto [u, v] : a.edges) {
    nb[u].push_back(v);
    nb[v].push_back(u);
  }
  for (auto& list : nb) std::sort(list.begin(), list.end());
  for (auto [u, v] : a.edges) {
    // common neighbors above v, so each triangle is found from its lowest edge
    auto iu = std::lower_bound(nb[u].begin(), nb[u].end(), v + 1);
    auto iv = std::lower_bound(nb[v].begin(), nb[v].end(), v + 1);
    while (iu != nb[u].end() && iv != nb[v].end()) {
      if (*iu < *iv) ++iu;
      else if (*iv < *iu) ++iv;
      else {
        ++tri[u];
        ++tri[v];
        ++tri[*iu];
        ++iu;
        ++iv;
      }
    }
  }
  return tri;
}

}  // namespace

FilteredGraph min_filtration(const TemporalGraph& g) {
  require_single_labeled(g, "min_filtration");
  return neighborhood_sweep(g, SweepMode::Min);
}

FilteredGraph avg_filtration(const TemporalGraph& g) {
  require_single_labeled(g, "avg_filtration");
  return neighborhood_sweep(g, SweepMode::Sum);
}

FilteredGraph avg_filtration_multi(const TemporalGraph& g) {
  return neighborhood_sweep(g, SweepMode::Sum);
}

FilteredGraph static_filtration(const AggregateGraph& a, StaticFiltration kind) {
  std::vector<double> score(a.n_vertices, 0.0);
  double scale = 1.0;
  switch (kind) {
    case StaticFiltration::MaxDegree:
      for (std::uint32_t v = 0; v < a.n_vertices; ++v)
        score[v] = static_cast<double>(a.degree(v));
      break;
    case StaticFiltration::CoreNumber: {
      const auto core = core_numbers(a);
      for (std::uint32_t v = 0; v < a.n_vertices; ++v)
        score[v] = static_cast<double>(core[v]);
      break;
    }
    case StaticFiltration::TriangleCount: {
      const auto tri = triangle_counts(a);
      for (std::uint32_t v = 0; v < a.n_vertices; ++v)
        score[v] = static_cast<double>(tri[v]);
      scale = 0.5;
      break;
    }
  }
  FilteredGraph out;
  out.n_vertices = a.n_vertices;
  out.edges.reserve(a.edges.size());
  for (auto [u, v] : a.edges)
    out.edges.push_back({u, v, scale * std::max(score[u], score[v])});
  return out;
}

FiltrationMethod filtration_method_from_string(const std::string& name) {
  if (name == "min") return FiltrationMethod::Min;
  if (name == "avg") return FiltrationMethod::Avg;
  if (name == "avg-mlt") return FiltrationMethod::AvgMulti;
  if (name == "add-max-deg") return FiltrationMethod::AddMaxDeg;
  if (name == "add-core-num") return FiltrationMethod::AddCoreNum;
  if (name == "add-triangle") return FiltrationMethod::AddTriangle;
  throw ValueError("unknown filtration method: " + name);
}

std::string to_string(FiltrationMethod m) {
  switch (m) {
    case FiltrationMethod::Min: return "min";
    case FiltrationMethod::Avg: return "avg";
    case FiltrationMethod::AvgMulti: return "avg-mlt";
    case FiltrationMethod::AddMaxDeg: return "add-max-deg";
    case FiltrationMethod::AddCoreNum: return "add-core-num";
    case FiltrationMethod::AddTriangle: return "add-triangle";
  }
  throw ValueError("unknown filtration method");
}

bool is_sublevel_method(FiltrationMethod m) {
  return m == FiltrationMethod::Min || m == FiltrationMethod::Avg ||
         m == FiltrationMethod::AvgMulti;
}

FilteredGraph apply_filtration(const TemporalGraph& g, FiltrationMethod m) {
  switch (m) {
    case FiltrationMethod::Min: return min_filtration(g);
    case FiltrationMethod::Avg: return avg_filtration(g);
    case FiltrationMethod::AvgMulti: return avg_filtration_multi(g);
    case FiltrationMethod::AddMaxDeg:
      return static_filtration(aggregate(g), StaticFiltration::MaxDegree);
    case FiltrationMethod::AddCoreNum:
      return static_filtration(aggregate(g), StaticFiltration::CoreNumber);
    case FiltrationMethod::AddTriangle:
      return static_filtration(aggregate(g), StaticFiltration::TriangleCount);
  }
  throw ValueError("unknown filtration method");
}

}  // namespace tempofilt
