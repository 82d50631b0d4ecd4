#pragma once

// Benchmark table and schema ingestion, plus seeded row sampling.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace hpofla {

enum class FeatureKind { numeric, categorical };

std::string_view to_string(FeatureKind kind);

struct Range {
  double min = 0.0;
  double max = 0.0;

  friend bool operator==(const Range&, const Range&) = default;
};

struct FeatureSpec {
  std::string name;
  FeatureKind kind = FeatureKind::numeric;
  std::optional<Range> declared_range;  // numeric only

  friend bool operator==(const FeatureSpec&, const FeatureSpec&) = default;
};

struct Schema {
  std::vector<FeatureSpec> features;
  std::string fitness_column = "fitness";

  /// Throws InputError when a Schema invariant is violated.
  void validate() const;

  friend bool operator==(const Schema&, const Schema&) = default;
};

struct Missing {
  friend bool operator==(Missing, Missing) = default;
};

/// One table cell: missing, a real (numeric feature) or a label (categorical).
using Cell = std::variant<Missing, double, std::string>;

inline bool is_missing(const Cell& c) { return std::holds_alternative<Missing>(c); }

struct Configuration {
  std::vector<Cell> values;

  friend bool operator==(const Configuration&, const Configuration&) = default;
};

struct AnalysisParams {
  int c_const = 40;
  bool maximize = true;
  std::optional<double> neutrality_epsilon_override;

  void validate() const;
};

/// The analysed configuration set S with its fitness values f.
struct LandscapeSample {
  Schema schema;
  std::vector<Configuration> configs;
  std::vector<double> fitness;
  /// Per feature; meaningful for numeric features only. Declared range when
  /// the schema has one, otherwise the range observed over `configs`.
  std::vector<Range> ranges;
  AnalysisParams params;
  std::uint64_t seed = 0;
  std::vector<std::size_t> source_rows;

  std::size_t size() const { return configs.size(); }

  /// Throws InvariantError when the sample is malformed.
  void validate() const;
};

/// Parses the JSON schema document.
Schema parse_schema(std::string_view text);

/// Canonical JSON form of a schema; parse_schema(serialize_schema(s)) == s.
std::string serialize_schema(const Schema& schema);

struct Table {
  std::vector<Configuration> configs;
  std::vector<double> fitness;
  /// Zero-based data-row index (header excluded) of every retained row.
  std::vector<std::size_t> source_rows;
  std::size_t dropped_rows = 0;
};

/// Parses a CSV table against `schema`. Columns not named in the schema are
/// ignored. Rows whose fitness is missing or non-finite are dropped and
/// counted.
Table load_table(std::string_view csv_text, const Schema& schema);

/// Builds a schema from the table header when no schema file is available.
/// Every column other than `fitness_column` becomes a feature; a column is
/// numeric iff each non-missing cell parses as a finite real.
Schema infer_schema(std::string_view csv_text, std::string_view fitness_column);

/// Uniform sample without replacement of min(sample_size, configs_count)
/// row indices, returned in ascending order. Partial Fisher-Yates over the
/// identity index array, with draws from Rng(seed).
std::vector<std::size_t> sample_rows(std::size_t configs_count, std::size_t sample_size,
                                     std::uint64_t seed);

/// Assembles a LandscapeSample from a loaded table, optionally subsampling.
LandscapeSample build_sample(const Table& table, const Schema& schema,
                             const AnalysisParams& params, std::uint64_t seed,
                             std::optional<std::size_t> sample_size = std::nullopt);

/// Ranges over `configs`: declared range where present, else observed min/max.
/// Numeric features with no observed value get {0, 0}.
std::vector<Range> effective_ranges(const Schema& schema,
                                    std::span<const Configuration> configs);

/// Splits CSV text into records of fields. Handles double-quoted fields with
/// embedded commas, quotes ("") and newlines; strips a trailing CR.
std::vector<std::vector<std::string>> parse_csv(std::string_view text);

/// Parses a finite real; nullopt for anything else (including inf/nan).
std::optional<double> parse_real(std::string_view text);

}  // namespace hpofla
