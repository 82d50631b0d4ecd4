#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "hpofla/gower.hpp"

namespace hpofla {

/// Radius of the neighbourhood relation: delta = max_dist / C, where max_dist
/// is the largest distance of any row to the optima set.
struct NeighborhoodSpec {
  double max_dist = 0.0;
  double delta = 0.0;
  int c_const = 40;
};

NeighborhoodSpec compute_spec(std::span<const double> dist_to_optima, int c_const);

/// N(x) = { y != x : delta(x, y) < radius }. Each row's list is ascending.
struct NeighborhoodIndex {
  std::vector<std::vector<std::size_t>> neighbors;
  NeighborhoodSpec spec;

  std::size_t size() const { return neighbors.size(); }
  std::size_t empty_count() const;
};

NeighborhoodIndex build_neighborhoods(const DistanceMatrix& matrix, const NeighborhoodSpec& spec);

}  // namespace hpofla
