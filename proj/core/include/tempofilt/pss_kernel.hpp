#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "tempofilt/gram.hpp"
#include "tempofilt/persistence.hpp"

namespace tempofilt {

struct DiagramPoint {
  double birth = 0.0;
  double death = 0.0;
};

// scale-space kernel between two finite diagrams
double pss_kernel(std::span<const DiagramPoint> a,
                  std::span<const DiagramPoint> b, double sigma);

// points of one homology degree; throws if an infinite death survives
std::vector<DiagramPoint> degree_slice(const PersistenceDiagram& d, int degree);

// replacement death for essential classes: factor times the largest finite
// birth/death value across all diagrams (1.0 when nothing is finite)
double essential_cap(const std::vector<PersistenceDiagram>& diagrams,
                     double factor);

PersistenceDiagram substitute_essentials(const PersistenceDiagram& d,
                                         double cap);

struct PssParams {
  double sigma = 1.0;
  double degree_weights[3] = {1.0, 1.0, 1.0};
};

// Gram matrix over diagrams, summing the kernel per homology degree
GramMatrix pss_gram(const std::vector<PersistenceDiagram>& diagrams,
                    const std::vector<std::string>& ids,
                    const PssParams& params, int threads = 0);

}  // namespace tempofilt
