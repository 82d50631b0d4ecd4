#include "hpofla/gower.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <string>
#include <thread>

namespace hpofla {

AllMissingError::AllMissingError(std::size_t row_a, std::size_t row_b)
    : InputError("rows " + std::to_string(row_a) + " and " + std::to_string(row_b) +
                 " share no non-missing feature; Gower distance undefined"),
      row_a_(row_a),
      row_b_(row_b) {}

FeatureTerm feature_dissimilarity(const Cell& a, const Cell& b, const FeatureSpec& spec,
                                  const Range& range) {
  if (is_missing(a) || is_missing(b)) return {0.0, 0.0};
  if (spec.kind == FeatureKind::numeric) {
    const double span = range.max - range.min;
    if (!(span > 0.0)) return {0.0, 1.0};
    const double d = std::abs(std::get<double>(a) - std::get<double>(b)) / span;
    return {std::min(d, 1.0), 1.0};
  }
  return {std::get<std::string>(a) == std::get<std::string>(b) ? 0.0 : 1.0, 1.0};
}

namespace {

// Returns a negative value when every weight is zero.
double try_gower(const Configuration& x, const Configuration& y, const Schema& schema,
                 std::span<const Range> ranges) {
  double weighted = 0.0;
  double weights = 0.0;
  for (std::size_t j = 0; j < schema.features.size(); ++j) {
    const auto term = feature_dissimilarity(x.values[j], y.values[j], schema.features[j], ranges[j]);
    weighted += term.weight * term.distance;
    weights += term.weight;
  }
  if (weights == 0.0) return -1.0;
  return weighted / weights;
}

}  // namespace

double gower_distance(const Configuration& x, const Configuration& y, const Schema& schema,
                      std::span<const Range> ranges) {
  if (x.values.size() != schema.features.size() || y.values.size() != schema.features.size() ||
      ranges.size() != schema.features.size()) {
    throw InvariantError("configuration arity does not match schema");
  }
  const double d = try_gower(x, y, schema, ranges);
  if (d < 0.0) throw AllMissingError(0, 1);
  return d;
}

DistanceMatrix distance_matrix(const LandscapeSample& sample, unsigned workers) {
  sample.validate();
  const std::size_t n = sample.size();
  DistanceMatrix matrix(n);
  if (workers == 0) workers = std::max(1u, std::thread::hardware_concurrency());

  // Rows are dealt round-robin so each worker gets a similar share of the
  // triangle. Every entry is computed by exactly one worker.
  const auto fill_rows = [&](unsigned worker, std::exception_ptr& error) {
    try {
      for (std::size_t i = worker; i < n; i += workers) {
        for (std::size_t j = 0; j < i; ++j) {
          const double d = try_gower(sample.configs[i], sample.configs[j], sample.schema,
                                     sample.ranges);
          if (d < 0.0) throw AllMissingError(i, j);
          matrix.set(i, j, d);
        }
      }
    } catch (...) {
      error = std::current_exception();
    }
  };

  std::vector<std::exception_ptr> errors(workers);
  if (workers == 1) {
    fill_rows(0, errors[0]);
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(fill_rows, w, std::ref(errors[w]));
  }

  // Report the smallest offending pair regardless of scheduling.
  std::exception_ptr first;
  std::size_t first_row = n;
  std::size_t first_col = n;
  for (const auto& e : errors) {
    if (!e) continue;
    try {
      std::rethrow_exception(e);
    } catch (const AllMissingError& am) {
      if (am.row_a() < first_row || (am.row_a() == first_row && am.row_b() < first_col)) {
        first_row = am.row_a();
        first_col = am.row_b();
        first = e;
      }
    } catch (...) {
      if (!first) first = e;
    }
  }
  if (first) std::rethrow_exception(first);
  return matrix;
}

OptimaSet find_optima(std::span<const double> fitness, bool maximize) {
  if (fitness.empty()) throw InvariantError("find_optima on empty fitness list");
  OptimaSet optima;
  optima.optimal_fitness = maximize ? *std::max_element(fitness.begin(), fitness.end())
                                    : *std::min_element(fitness.begin(), fitness.end());
  for (std::size_t i = 0; i < fitness.size(); ++i) {
    if (fitness[i] == optima.optimal_fitness) optima.indices.push_back(i);
  }
  return optima;
}

OptimaSet find_optima(const LandscapeSample& sample) {
  return find_optima(sample.fitness, sample.params.maximize);
}

std::vector<double> distances_to_optima(const DistanceMatrix& matrix, const OptimaSet& optima) {
  if (optima.indices.empty()) throw InvariantError("empty optima set");
  const std::size_t n = matrix.size();
  for (const auto o : optima.indices) {
    if (o >= n) throw InvariantError("optimum index out of range");
  }
  std::vector<double> out(n);
  for (std::size_t y = 0; y < n; ++y) {
    double best = matrix(optima.indices.front(), y);
    for (const auto o : optima.indices) best = std::min(best, matrix(o, y));
    out[y] = best;
  }
  return out;
}

}  // namespace hpofla
