#pragma once

// Fitness-distance correlation, locality and neutrality analyses.

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "hpofla/ingest.hpp"
#include "hpofla/neighborhood.hpp"

namespace hpofla {

struct FdcPoint {
  double distance = 0.0;
  double fitness = 0.0;
};

/// Scatter of (distance to optimum, fitness) with an ordinary least-squares
/// line and Pearson coefficient. Coefficient is nullopt when either variable
/// is constant; slope and intercept are nullopt when distance is constant.
struct FdcResult {
  std::vector<FdcPoint> points;
  std::optional<double> slope;
  std::optional<double> intercept;
  std::optional<double> coefficient;
};

FdcResult fdc(const LandscapeSample& sample, std::span<const double> dist_to_optima);

/// Pearson correlation; nullopt when either series is constant or sizes
/// differ or fewer than two points are given.
std::optional<double> pearson(std::span<const double> x, std::span<const double> y);

/// C equal-width bins over [0, max_fitness]; the top bin is closed.
struct FitnessBinning {
  double max_fitness = 0.0;
  double step = 0.0;
  int bins = 40;

  std::size_t bin_of(double fitness) const;
  double lower(std::size_t bin) const { return static_cast<double>(bin) * step; }
  double upper(std::size_t bin) const { return static_cast<double>(bin + 1) * step; }
  double center(std::size_t bin) const { return (static_cast<double>(bin) + 0.5) * step; }
};

/// Throws InputError on negative fitness or a zero maximum.
FitnessBinning make_binning(std::span<const double> fitness, int c_const);

/// Five-number summary. Quartiles interpolate linearly between order
/// statistics at rank p * (count - 1). All values are zero when count == 0.
struct BoxStats {
  std::size_t count = 0;
  double min = 0.0;
  double q1 = 0.0;
  double median = 0.0;
  double q3 = 0.0;
  double max = 0.0;
};

BoxStats box_stats(std::vector<double> values);

/// Quantile of ascending `sorted` by linear interpolation; sorted nonempty.
double quantile_sorted(std::span<const double> sorted, double p);

struct LocalityPoint {
  double fitness = 0.0;
  std::optional<double> neighbor_mean;  // nullopt for an empty neighbourhood
};

struct LocalityProfile {
  std::vector<LocalityPoint> points;  // one per sample row
  std::vector<BoxStats> bins;         // neighbour means grouped by own-fitness bin
  std::size_t excluded_empty = 0;
  /// Pearson correlation of own fitness vs neighbour mean over non-empty rows.
  std::optional<double> correlation;
};

/// Arithmetic mean of `values[i]` over `members`; members nonempty.
double mean_over(std::span<const double> values, std::span<const std::size_t> members);

LocalityProfile locality(const LandscapeSample& sample, const NeighborhoodIndex& nbhd,
                         const FitnessBinning& binning);

struct NeutralityProfile {
  double epsilon = 0.0;
  std::vector<std::size_t> degree;          // N_d per row
  std::vector<std::size_t> neighbor_count;  // |N(x)| per row
  std::vector<BoxStats> bins;               // N_d grouped by own-fitness bin
};

/// Epsilon from params.neutrality_epsilon_override, else max_fitness / C.
double neutrality_epsilon(const FitnessBinning& binning, const AnalysisParams& params);

/// Number of neighbours within |f(x') - f(x)| < epsilon.
std::size_t neutrality_degree(std::span<const double> fitness,
                              std::span<const std::size_t> neighbors, std::size_t row,
                              double epsilon);

NeutralityProfile neutrality(const LandscapeSample& sample, const NeighborhoodIndex& nbhd,
                             const FitnessBinning& binning, const AnalysisParams& params);

}  // namespace hpofla
