#pragma once

// Detection of "ill" fitness plateaus: fitness bins that hold a large share
// of the sample made of mutually diverse configurations.

#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "hpofla/analyses.hpp"
#include "hpofla/gower.hpp"

namespace hpofla {

struct PlateauFinding {
  std::size_t bin_index = 0;
  double bin_center = 0.0;
  std::size_t count = 0;
  double count_fraction = 0.0;
  /// Mean pairwise distance inside the bin over the whole-sample mean.
  double diversity_ratio = 0.0;
  std::optional<std::string> majority_class_label;
};

struct DiagnosticsParams {
  double min_count_fraction = 0.05;
  double min_diversity_ratio = 0.8;
  std::map<std::string, double> class_priors;

  void validate() const;
};

std::vector<std::size_t> fitness_histogram(std::span<const double> fitness,
                                           const FitnessBinning& binning);

/// Mean of d(i, j) over all unordered pairs of `members`; 0 for fewer than
/// two members. Summation runs over pairs in ascending (i, j) order.
double mean_pairwise_distance(const DistanceMatrix& matrix, std::span<const std::size_t> members);

/// Mean over all pairs of the matrix.
double mean_pairwise_distance(const DistanceMatrix& matrix);

/// Flags bins with count >= 2, count_fraction >= min_count_fraction and
/// diversity_ratio >= min_diversity_ratio. Sorted by count descending, then
/// bin index ascending.
std::vector<PlateauFinding> detect_plateaus(const LandscapeSample& sample,
                                            const DistanceMatrix& matrix,
                                            const FitnessBinning& binning,
                                            const DiagnosticsParams& params);

/// Labels each finding with the prior whose accuracy 100 * p lies within one
/// bin step of the bin centre; the nearest prior wins, ties go to the
/// lexicographically smaller label.
std::vector<PlateauFinding> match_class_priors(std::vector<PlateauFinding> findings,
                                               const std::map<std::string, double>& priors,
                                               const FitnessBinning& binning);

/// Parses the priors JSON document {"label": probability, ...}.
std::map<std::string, double> parse_priors(std::string_view text);

}  // namespace hpofla
