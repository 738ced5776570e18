#include "tempofilt/pss_kernel.hpp"

#include <cmath>
#include <numbers>

#include "tempofilt/errors.hpp"
#include "tempofilt/parallel.hpp"

namespace tempofilt {

double pss_kernel(std::span<const DiagramPoint> a,
                  std::span<const DiagramPoint> b, double sigma) {
  if (!(sigma > 0.0) || !std::isfinite(sigma))
    throw ValueError("sigma must be positive and finite");
  for (auto s : {a, b})
    for (const auto& p : s)
      if (!std::isfinite(p.birth) || !std::isfinite(p.death))
        throw ValueError("scale-space kernel needs finite diagram points");
  if (a.empty() || b.empty()) return 0.0;

  // prefactor uses sigma^2, the exponents sigma; kept as published
  const double pre = 1.0 / (8.0 * std::numbers::pi * sigma * sigma);
  const double inv = 1.0 / (8.0 * sigma);
  double sum = 0.0;
  for (const auto& p : a) {
    for (const auto& q : b) {
      const double db = p.birth - q.birth;
      const double dd = p.death - q.death;
      const double dbm = p.birth - q.death;  // mirrored q = (death, birth)
      const double ddm = p.death - q.birth;
      sum += std::exp(-(db * db + dd * dd) * inv) -
             std::exp(-(dbm * dbm + ddm * ddm) * inv);
    }
  }
  return pre * sum;
}

std::vector<DiagramPoint> degree_slice(const PersistenceDiagram& d, int degree) {
  std::vector<DiagramPoint> out;
  for (const auto& p : d.points) {
    if (p.degree != degree) continue;
    if (!std::isfinite(p.death))
      throw ValueError("diagram still has essential classes; substitute a cap first");
    out.push_back({p.birth, p.death});
  }
  return out;
}

double essential_cap(const std::vector<PersistenceDiagram>& diagrams,
                     double factor) {
  if (!(factor > 0.0)) throw ValueError("cap factor must be positive");
  double max_coord = 0.0;
  bool seen = false;
  for (const auto& d : diagrams) {
    for (const auto& p : d.points) {
      if (std::isfinite(p.birth)) {
        max_coord = seen ? std::max(max_coord, p.birth) : p.birth;
        seen = true;
      }
      if (std::isfinite(p.death)) {
        max_coord = seen ? std::max(max_coord, p.death) : p.death;
        seen = true;
      }
    }
  }
  if (!seen) return 1.0;
  return factor * max_coord;
}

PersistenceDiagram substitute_essentials(const PersistenceDiagram& d,
                                         double cap) {
  if (!std::isfinite(cap)) throw ValueError("essential cap must be finite");
  PersistenceDiagram out;
  out.points.reserve(d.points.size());
  for (auto p : d.points) {
    if (!std::isfinite(p.death)) p.death = std::max(cap, p.birth);
    out.points.push_back(p);
  }
  return out;
}

GramMatrix pss_gram(const std::vector<PersistenceDiagram>& diagrams,
                    const std::vector<std::string>& ids,
                    const PssParams& params, int threads) {
  if (diagrams.size() != ids.size())
    throw ValueError("diagram and id counts differ");
  const std::size_t n = diagrams.size();

  std::vector<std::array<std::vector<DiagramPoint>, 3>> slices(n);
  for (std::size_t i = 0; i < n; ++i)
    for (int deg = 0; deg < 3; ++deg)
      slices[i][deg] = degree_slice(diagrams[i], deg);

  GramMatrix gram = GramMatrix::zeros(ids);
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  pairs.reserve(n * (n + 1) / 2);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) pairs.emplace_back(i, j);

  parallel_for(pairs.size(), threads, [&](std::size_t k) {
    const auto [i, j] = pairs[k];
    double value = 0.0;
    for (int deg = 0; deg < 3; ++deg) {
      const double w = params.degree_weights[deg];
      if (w == 0.0) continue;
      value += w * pss_kernel(slices[i][deg], slices[j][deg], params.sigma);
    }
    gram.at(i, j) = value;
    gram.at(j, i) = value;
  });
  return gram;
}

}  // namespace tempofilt
