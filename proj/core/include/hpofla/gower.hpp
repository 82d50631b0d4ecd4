#pragma once

// Mixed-type Gower dissimilarity and the pairwise distance matrix.
//
// Per feature j with both cells present (weight 1):
//   numeric:     d_j = |a - b| / (max_j - min_j), or 0 when max_j == min_j
//   categorical: d_j = 0 if labels match, else 1
// A missing cell on either side gives weight 0. The distance is
//   delta(x, y) = sum_j w_j d_j / sum_j w_j
// accumulated in schema feature order.

#include <cstddef>
#include <span>
#include <vector>

#include "hpofla/error.hpp"
#include "hpofla/ingest.hpp"

namespace hpofla {

struct FeatureTerm {
  double distance = 0.0;
  double weight = 0.0;
};

FeatureTerm feature_dissimilarity(const Cell& a, const Cell& b, const FeatureSpec& spec,
                                  const Range& range);

/// Thrown when two rows share no feature with both cells present.
class AllMissingError : public InputError {
 public:
  AllMissingError(std::size_t row_a, std::size_t row_b);

  std::size_t row_a() const { return row_a_; }
  std::size_t row_b() const { return row_b_; }

 private:
  std::size_t row_a_;
  std::size_t row_b_;
};

/// Throws AllMissingError (rows reported as 0, 1) when every weight is zero.
double gower_distance(const Configuration& x, const Configuration& y, const Schema& schema,
                      std::span<const Range> ranges);

/// Symmetric n x n matrix with zero diagonal, stored as the strict lower
/// triangle in row-major order.
class DistanceMatrix {
 public:
  DistanceMatrix() = default;
  explicit DistanceMatrix(std::size_t n) : n_(n), lower_(n < 2 ? 0 : n * (n - 1) / 2, 0.0) {}

  std::size_t size() const { return n_; }

  double operator()(std::size_t i, std::size_t j) const {
    if (i == j) return 0.0;
    return i > j ? lower_[offset(i) + j] : lower_[offset(j) + i];
  }

  void set(std::size_t i, std::size_t j, double value) {
    if (i == j) return;
    if (i > j) {
      lower_[offset(i) + j] = value;
    } else {
      lower_[offset(j) + i] = value;
    }
  }

  /// Strict lower triangle; row i holds entries (i, 0..i-1).
  std::span<const double> lower() const { return lower_; }
  std::span<const double> row_below(std::size_t i) const {
    return std::span<const double>(lower_).subspan(offset(i), i);
  }

  friend bool operator==(const DistanceMatrix&, const DistanceMatrix&) = default;

 private:
  static std::size_t offset(std::size_t i) { return i * (i - 1) / 2; }

  std::size_t n_ = 0;
  std::vector<double> lower_;
};

/// Pairwise distances over the sample. `workers` == 0 picks the hardware
/// concurrency. Output does not depend on the worker count. On an all-missing
/// pair, throws AllMissingError for the lexicographically smallest (i, j),
/// i > j.
DistanceMatrix distance_matrix(const LandscapeSample& sample, unsigned workers = 1);

struct OptimaSet {
  std::vector<std::size_t> indices;  // ascending
  double optimal_fitness = 0.0;
};

/// All rows attaining the best fitness (max, or min when minimising).
OptimaSet find_optima(const LandscapeSample& sample);
OptimaSet find_optima(std::span<const double> fitness, bool maximize);

/// d*(y) = min over optima x* of delta(x*, y).
std::vector<double> distances_to_optima(const DistanceMatrix& matrix, const OptimaSet& optima);

}  // namespace hpofla
