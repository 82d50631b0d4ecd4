#include "hpofla/analyses.hpp"

#include <algorithm>
#include <cmath>

#include "hpofla/error.hpp"

namespace hpofla {

namespace {

bool all_equal(std::span<const double> v) {
  return std::adjacent_find(v.begin(), v.end(), std::not_equal_to<>()) == v.end();
}

double mean_of(std::span<const double> v) {
  double sum = 0.0;
  for (const double x : v) sum += x;
  return sum / static_cast<double>(v.size());
}

}  // namespace

std::optional<double> pearson(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size() || x.size() < 2 || all_equal(x) || all_equal(y)) return std::nullopt;
  const double mx = mean_of(x);
  const double my = mean_of(y);
  double sxy = 0.0, sxx = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double dx = x[i] - mx;
    const double dy = y[i] - my;
    sxy += dx * dy;
    sxx += dx * dx;
    syy += dy * dy;
  }
  if (sxx == 0.0 || syy == 0.0) return std::nullopt;
  return std::clamp(sxy / std::sqrt(sxx * syy), -1.0, 1.0);
}

FdcResult fdc(const LandscapeSample& sample, std::span<const double> dist_to_optima) {
  if (sample.size() < 2) throw InvariantError("fdc needs at least 2 rows");
  if (dist_to_optima.size() != sample.size()) {
    throw InvariantError("fdc: distance list does not match sample size");
  }
  FdcResult result;
  result.points.reserve(sample.size());
  for (std::size_t i = 0; i < sample.size(); ++i) {
    result.points.push_back({dist_to_optima[i], sample.fitness[i]});
  }

  const std::span<const double> d = dist_to_optima;
  const std::span<const double> f = sample.fitness;
  const bool flat_distance = all_equal(d);
  const bool flat_fitness = all_equal(f);

  if (!flat_distance) {
    const double md = mean_of(d);
    const double mf = mean_of(f);
    double sdf = 0.0, sdd = 0.0;
    for (std::size_t i = 0; i < d.size(); ++i) {
      sdf += (d[i] - md) * (f[i] - mf);
      sdd += (d[i] - md) * (d[i] - md);
    }
    const double slope = flat_fitness ? 0.0 : sdf / sdd;
    result.slope = slope;
    result.intercept = flat_fitness ? f.front() : mf - slope * md;
  }
  result.coefficient = pearson(d, f);
  return result;
}

std::size_t FitnessBinning::bin_of(double fitness) const {
  const auto top = static_cast<std::size_t>(bins - 1);
  if (!(fitness > 0.0)) return 0;
  const double k = std::floor(fitness / step);
  if (k >= static_cast<double>(top)) return top;
  return static_cast<std::size_t>(k);
}

FitnessBinning make_binning(std::span<const double> fitness, int c_const) {
  if (c_const < 1) throw InputError("C must be a positive integer");
  if (fitness.empty()) throw InvariantError("make_binning on empty fitness list");
  for (const double f : fitness) {
    if (f < 0.0) {
      throw InputError("fitness binning needs nonnegative fitness; found " + std::to_string(f));
    }
  }
  FitnessBinning binning;
  binning.bins = c_const;
  binning.max_fitness = *std::max_element(fitness.begin(), fitness.end());
  if (!(binning.max_fitness > 0.0)) {
    throw InputError("fitness binning needs a positive maximum fitness");
  }
  binning.step = binning.max_fitness / static_cast<double>(c_const);
  return binning;
}

double quantile_sorted(std::span<const double> sorted, double p) {
  const double rank = p * static_cast<double>(sorted.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(rank));
  const auto hi = std::min(lo + 1, sorted.size() - 1);
  const double frac = rank - static_cast<double>(lo);
  if (frac == 0.0) return sorted[lo];
  return sorted[lo] + frac * (sorted[hi] - sorted[lo]);
}

BoxStats box_stats(std::vector<double> values) {
  BoxStats stats;
  stats.count = values.size();
  if (values.empty()) return stats;
  std::sort(values.begin(), values.end());
  stats.min = values.front();
  stats.max = values.back();
  stats.q1 = quantile_sorted(values, 0.25);
  stats.median = quantile_sorted(values, 0.5);
  stats.q3 = quantile_sorted(values, 0.75);
  return stats;
}

double mean_over(std::span<const double> values, std::span<const std::size_t> members) {
  // Shifted by the first member so that equal values average to themselves
  // exactly; clamped so rounding cannot leave the members' range.
  const double ref = values[members.front()];
  double lo = ref, hi = ref, shifted = 0.0;
  for (const auto m : members) {
    shifted += values[m] - ref;
    lo = std::min(lo, values[m]);
    hi = std::max(hi, values[m]);
  }
  return std::clamp(ref + shifted / static_cast<double>(members.size()), lo, hi);
}

LocalityProfile locality(const LandscapeSample& sample, const NeighborhoodIndex& nbhd,
                         const FitnessBinning& binning) {
  if (nbhd.size() != sample.size()) throw InvariantError("locality: neighbourhood size mismatch");
  LocalityProfile profile;
  profile.points.reserve(sample.size());
  std::vector<std::vector<double>> per_bin(static_cast<std::size_t>(binning.bins));
  std::vector<double> own, mean;

  for (std::size_t i = 0; i < sample.size(); ++i) {
    LocalityPoint p{sample.fitness[i], std::nullopt};
    const auto& members = nbhd.neighbors[i];
    if (members.empty()) {
      ++profile.excluded_empty;
    } else {
      p.neighbor_mean = mean_over(sample.fitness, members);
      per_bin[binning.bin_of(p.fitness)].push_back(*p.neighbor_mean);
      own.push_back(p.fitness);
      mean.push_back(*p.neighbor_mean);
    }
    profile.points.push_back(p);
  }
  profile.bins.reserve(per_bin.size());
  for (auto& values : per_bin) profile.bins.push_back(box_stats(std::move(values)));
  profile.correlation = pearson(own, mean);
  return profile;
}

double neutrality_epsilon(const FitnessBinning& binning, const AnalysisParams& params) {
  if (params.neutrality_epsilon_override) return *params.neutrality_epsilon_override;
  return binning.max_fitness / static_cast<double>(params.c_const);
}

std::size_t neutrality_degree(std::span<const double> fitness,
                              std::span<const std::size_t> neighbors, std::size_t row,
                              double epsilon) {
  const double own = fitness[row];
  return static_cast<std::size_t>(std::count_if(neighbors.begin(), neighbors.end(), [&](auto j) {
    return std::abs(fitness[j] - own) < epsilon;
  }));
}

NeutralityProfile neutrality(const LandscapeSample& sample, const NeighborhoodIndex& nbhd,
                             const FitnessBinning& binning, const AnalysisParams& params) {
  if (nbhd.size() != sample.size()) {
    throw InvariantError("neutrality: neighbourhood size mismatch");
  }
  NeutralityProfile profile;
  profile.epsilon = neutrality_epsilon(binning, params);
  profile.degree.reserve(sample.size());
  profile.neighbor_count.reserve(sample.size());
  std::vector<std::vector<double>> per_bin(static_cast<std::size_t>(binning.bins));

  for (std::size_t i = 0; i < sample.size(); ++i) {
    const auto nd = neutrality_degree(sample.fitness, nbhd.neighbors[i], i, profile.epsilon);
    profile.degree.push_back(nd);
    profile.neighbor_count.push_back(nbhd.neighbors[i].size());
    per_bin[binning.bin_of(sample.fitness[i])].push_back(static_cast<double>(nd));
  }
  profile.bins.reserve(per_bin.size());
  for (auto& values : per_bin) profile.bins.push_back(box_stats(std::move(values)));
  return profile;
}

}  // namespace hpofla
