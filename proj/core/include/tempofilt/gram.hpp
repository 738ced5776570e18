#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "tempofilt/errors.hpp"

namespace tempofilt {

// Dense symmetric kernel matrix with one id per row/column.
struct GramMatrix {
  std::vector<std::string> ids;
  std::vector<double> values;  // row-major, size() * size()

  static GramMatrix zeros(std::vector<std::string> ids_) {
    GramMatrix g;
    g.values.assign(ids_.size() * ids_.size(), 0.0);
    g.ids = std::move(ids_);
    return g;
  }

  std::size_t size() const { return ids.size(); }

  double& at(std::size_t i, std::size_t j) { return values[i * size() + j]; }
  double at(std::size_t i, std::size_t j) const { return values[i * size() + j]; }

  double trace() const {
    double t = 0.0;
    for (std::size_t i = 0; i < size(); ++i) t += at(i, i);
    return t;
  }
};

}  // namespace tempofilt
