#include "hpofla/neighborhood.hpp"

#include <algorithm>

namespace hpofla {

NeighborhoodSpec compute_spec(std::span<const double> dist_to_optima, int c_const) {
  if (dist_to_optima.empty()) throw InvariantError("compute_spec on empty distance list");
  if (c_const < 1) throw InputError("C must be a positive integer");
  NeighborhoodSpec spec;
  spec.c_const = c_const;
  spec.max_dist = *std::max_element(dist_to_optima.begin(), dist_to_optima.end());
  spec.delta = spec.max_dist / static_cast<double>(c_const);
  return spec;
}

std::size_t NeighborhoodIndex::empty_count() const {
  return static_cast<std::size_t>(
      std::count_if(neighbors.begin(), neighbors.end(), [](const auto& n) { return n.empty(); }));
}

NeighborhoodIndex build_neighborhoods(const DistanceMatrix& matrix, const NeighborhoodSpec& spec) {
  NeighborhoodIndex index;
  index.spec = spec;
  const std::size_t n = matrix.size();
  index.neighbors.resize(n);
  // Walking the lower triangle row by row appends j < i to row i and i to
  // row j in ascending order, so no sort is needed.
  for (std::size_t i = 0; i < n; ++i) {
    const auto row = matrix.row_below(i);
    for (std::size_t j = 0; j < i; ++j) {
      if (row[j] < spec.delta) {
        index.neighbors[i].push_back(j);
        index.neighbors[j].push_back(i);
      }
    }
  }
  return index;
}

}  // namespace hpofla
