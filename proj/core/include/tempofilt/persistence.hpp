#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <vector>

#include "tempofilt/filtration.hpp"

namespace tempofilt {

// Simplex of a flag complex, up to dimension 3 (tetrahedra). Unused vertex
// slots are padded with kNoVertex; value is the largest edge value inside.
struct FilteredSimplex {
  static constexpr std::uint32_t kNoVertex = 0xffffffffu;

  std::array<std::uint32_t, 4> v{kNoVertex, kNoVertex, kNoVertex, kNoVertex};
  double value = 0.0;
  std::uint8_t dim = 0;
};

// Expands the finite-valued part of g into its clique complex, ordered by
// (value, dimension, vertex lexicographic) so faces always precede cofaces.
// Vertices enter at value 0; +inf edges are treated as absent. Throws
// ResourceError when more than max_simplices cliques would be emitted.
std::vector<FilteredSimplex> build_flag_filtration(
    const FilteredGraph& g, int max_dim = 3,
    std::size_t max_simplices = 50'000'000);

struct PersistencePoint {
  int degree = 0;
  double birth = 0.0;
  double death = std::numeric_limits<double>::infinity();

  double persistence() const { return death - birth; }
  bool essential() const { return std::numeric_limits<double>::infinity() == death; }

  friend bool operator==(const PersistencePoint&, const PersistencePoint&) = default;
};

struct PersistenceDiagram {
  std::vector<PersistencePoint> points;  // sorted by (degree, birth, death)
};

// Boundary-matrix reduction over Z/2 (processed top dimension first so paired
// creator columns can be skipped). Reports degrees 0..2; points with
// birth == death are dropped unless drop_zero_persistence is false.
PersistenceDiagram compute_persistence(const std::vector<FilteredSimplex>& filtration,
                                       bool drop_zero_persistence = true);

// Convenience: clique complex up to dimension max_degree + 1, then reduction.
PersistenceDiagram flag_persistence(const FilteredGraph& g, int max_degree = 2,
                                    bool drop_zero_persistence = true,
                                    std::size_t max_simplices = 50'000'000);

// Drops finite points with persistence strictly below min_persistence;
// essential points always survive.
PersistenceDiagram threshold_diagram(const PersistenceDiagram& d, double min_persistence);

}  // namespace tempofilt
