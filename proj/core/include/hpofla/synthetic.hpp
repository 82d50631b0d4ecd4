#pragma once

// Planted landscapes with known ground truth, used as test fixtures and by
// the `generate` command.

#include <cstddef>
#include <cstdint>
#include <vector>

#include "hpofla/ingest.hpp"

namespace hpofla {

enum class LandscapeKind { affine_distance, constant, custom };

struct PlateauInjection {
  double fraction = 0.0;
  double fitness_value = 0.0;
};

struct PlantedSpec {
  std::size_t n_rows = 500;
  std::size_t numeric_features = 3;
  /// One entry per categorical feature: its number of labels (>= 1).
  std::vector<std::size_t> category_arities = {3};
  LandscapeKind kind = LandscapeKind::affine_distance;
  /// Fitness of every row for the constant kind.
  double constant_value = 50.0;
  /// Fitness per row for the custom kind; size must equal n_rows.
  std::vector<double> custom_fitness;
  std::vector<PlateauInjection> plateaus;
  std::uint64_t seed = 0;
  AnalysisParams params;

  void validate() const;
};

/// Numeric features are named x0, x1, ... with declared range [0, 1];
/// categorical features c0, c1, ... take labels "l0", "l1", ...
Schema planted_schema(const PlantedSpec& spec);

/// Draws n_rows configurations uniformly per feature. For affine_distance the
/// final row is the planted optimum x0 and f(y) = 100 * (1 - delta(y, x0)).
/// Plateau injections are applied in order, each with a seed derived from
/// spec.seed.
LandscapeSample planted_landscape(const PlantedSpec& spec);

/// Replaces ceil(fraction * n) uniformly chosen rows by fresh uniformly drawn
/// configurations with fitness `fitness_value`. Rows attaining the sample's
/// optimum are never replaced. Numeric features are drawn over the sample's
/// ranges; categorical features over the labels observed in the sample.
LandscapeSample inject_plateau(const LandscapeSample& sample, double fraction,
                               double fitness_value, std::uint64_t seed);

/// Serialises a sample as a table CSV (feature columns then the fitness
/// column), with 17 significant digits for reals.
std::string sample_to_csv(const LandscapeSample& sample);

}  // namespace hpofla
