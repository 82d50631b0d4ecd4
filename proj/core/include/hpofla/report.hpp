#pragma once

// Report assembly and canonical serialisation. Every real is written with
// 17 significant digits and keys appear in a fixed order, so equal inputs
// give byte-identical files.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "hpofla/analyses.hpp"
#include "hpofla/diagnostics.hpp"
#include "hpofla/gower.hpp"
#include "hpofla/neighborhood.hpp"

namespace hpofla {

inline constexpr std::string_view kToolVersion = "0.1.0";

struct ReportMetadata {
  std::string command;
  std::string input_path;
  std::string schema_path;  // empty when the schema was inferred
  std::string priors_path;
  std::uint64_t seed = 0;
  std::size_t rows_loaded = 0;
  std::size_t rows_dropped = 0;
  std::optional<std::size_t> requested_sample;
  std::size_t sample_size = 0;
  int c_const = 40;
  bool maximize = true;
  std::size_t empty_neighborhood_count = 0;
};

struct AnalysisReport {
  ReportMetadata metadata;
  OptimaSet optima;
  NeighborhoodSpec neighborhood;
  std::optional<FitnessBinning> binning;  // absent when only FDC ran
  std::optional<FdcResult> fdc;
  std::optional<LocalityProfile> locality;
  std::optional<NeutralityProfile> neutrality;
  std::optional<DiagnosticsParams> diagnostics_params;
  std::optional<std::vector<PlateauFinding>> plateaus;

  /// Throws InvariantError when counts do not reconcile with the sample size.
  void check() const;
};

/// printf "%.17g".
std::string format_real(double value);

std::string report_to_json(const AnalysisReport& report);

/// distance,fitness
std::string fdc_points_csv(const FdcResult& fdc);

/// bin_index,bin_lo,bin_hi,count,min,q1,median,q3,max (stats empty when count is 0)
std::string locality_bins_csv(const LocalityProfile& locality, const FitnessBinning& binning);

/// row,fitness,bin_index,nd,neighbor_count
std::string neutrality_csv(const NeutralityProfile& neutrality, std::span<const double> fitness,
                           const FitnessBinning& binning);

/// i,j,distance for i > j
std::string distances_csv(const DistanceMatrix& matrix);

/// row,neighbor for every ordered neighbour pair
std::string neighbors_csv(const NeighborhoodIndex& nbhd);

}  // namespace hpofla
