#include "hpofla/synthetic.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <set>

#include "hpofla/error.hpp"
#include "hpofla/gower.hpp"
#include "hpofla/rng.hpp"

namespace hpofla {

namespace {

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) {
  // splitmix64 finaliser over (seed, stream)
  std::uint64_t z = seed + 0x9E3779B97F4A7C15ull * (stream + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

std::string format_real(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string csv_field(std::string_view s) {
  if (s.find_first_of(",\"\n\r") == std::string_view::npos) return std::string(s);
  std::string out = "\"";
  for (const char c : s) {
    if (c == '"') out.push_back('"');
    out.push_back(c);
  }
  out.push_back('"');
  return out;
}

}  // namespace

void PlantedSpec::validate() const {
  if (n_rows < 2) throw InputError("planted landscape needs at least 2 rows");
  if (numeric_features + category_arities.size() == 0) {
    throw InputError("planted landscape needs at least one feature");
  }
  for (const auto a : category_arities) {
    if (a < 1) throw InputError("categorical arity must be at least 1");
  }
  if (kind == LandscapeKind::custom && custom_fitness.size() != n_rows) {
    throw InputError("custom fitness list must have one value per row");
  }
  if (kind == LandscapeKind::constant && !std::isfinite(constant_value)) {
    throw InputError("constant fitness must be finite");
  }
  double total = 0.0;
  for (const auto& p : plateaus) {
    if (!(p.fraction > 0.0 && p.fraction < 1.0)) {
      throw InputError("plateau fraction must lie in (0, 1)");
    }
    if (!std::isfinite(p.fitness_value)) throw InputError("plateau fitness must be finite");
    total += p.fraction;
  }
  if (total > 1.0) throw InputError("plateau fractions sum above 1");
  params.validate();
}

Schema planted_schema(const PlantedSpec& spec) {
  Schema schema;
  schema.fitness_column = "fitness";
  for (std::size_t j = 0; j < spec.numeric_features; ++j) {
    schema.features.push_back({"x" + std::to_string(j), FeatureKind::numeric, Range{0.0, 1.0}});
  }
  for (std::size_t j = 0; j < spec.category_arities.size(); ++j) {
    schema.features.push_back({"c" + std::to_string(j), FeatureKind::categorical, std::nullopt});
  }
  return schema;
}

LandscapeSample planted_landscape(const PlantedSpec& spec) {
  spec.validate();
  LandscapeSample sample;
  sample.schema = planted_schema(spec);
  sample.params = spec.params;
  sample.seed = spec.seed;
  sample.ranges = effective_ranges(sample.schema, {});

  Rng rng(spec.seed);
  sample.configs.reserve(spec.n_rows);
  for (std::size_t i = 0; i < spec.n_rows; ++i) {
    Configuration c;
    c.values.reserve(sample.schema.features.size());
    for (std::size_t j = 0; j < spec.numeric_features; ++j) {
      c.values.emplace_back(rng.uniform_unit());
    }
    for (const auto arity : spec.category_arities) {
      c.values.emplace_back("l" + std::to_string(rng.uniform_index(arity)));
    }
    sample.configs.push_back(std::move(c));
  }
  sample.source_rows.resize(spec.n_rows);
  std::iota(sample.source_rows.begin(), sample.source_rows.end(), std::size_t{0});

  switch (spec.kind) {
    case LandscapeKind::affine_distance: {
      const auto& optimum = sample.configs.back();
      sample.fitness.reserve(spec.n_rows);
      for (const auto& c : sample.configs) {
        sample.fitness.push_back(100.0 *
                                 (1.0 - gower_distance(c, optimum, sample.schema, sample.ranges)));
      }
      break;
    }
    case LandscapeKind::constant:
      sample.fitness.assign(spec.n_rows, spec.constant_value);
      break;
    case LandscapeKind::custom:
      sample.fitness = spec.custom_fitness;
      break;
  }

  for (std::size_t k = 0; k < spec.plateaus.size(); ++k) {
    sample = inject_plateau(sample, spec.plateaus[k].fraction, spec.plateaus[k].fitness_value,
                            derive_seed(spec.seed, k));
  }
  sample.validate();
  return sample;
}

LandscapeSample inject_plateau(const LandscapeSample& sample, double fraction,
                               double fitness_value, std::uint64_t seed) {
  if (!(fraction > 0.0 && fraction < 1.0)) throw InputError("plateau fraction must lie in (0, 1)");
  if (!std::isfinite(fitness_value)) throw InputError("plateau fitness must be finite");
  sample.validate();

  const std::size_t n = sample.size();
  const auto count = static_cast<std::size_t>(std::ceil(fraction * static_cast<double>(n) - 1e-9));

  const double best = sample.params.maximize
                          ? *std::max_element(sample.fitness.begin(), sample.fitness.end())
                          : *std::min_element(sample.fitness.begin(), sample.fitness.end());
  std::vector<std::size_t> candidates;
  for (std::size_t i = 0; i < n; ++i) {
    if (sample.fitness[i] != best) candidates.push_back(i);
  }
  if (count > candidates.size()) {
    throw InputError("plateau needs " + std::to_string(count) + " replaceable rows, sample has " +
                     std::to_string(candidates.size()));
  }

  // Labels available per categorical feature, in sorted order.
  const auto& features = sample.schema.features;
  std::vector<std::vector<std::string>> labels(features.size());
  for (std::size_t j = 0; j < features.size(); ++j) {
    if (features[j].kind != FeatureKind::categorical) continue;
    std::set<std::string> seen;
    for (const auto& c : sample.configs) {
      if (const auto* s = std::get_if<std::string>(&c.values[j])) seen.insert(*s);
    }
    labels[j].assign(seen.begin(), seen.end());
  }

  Rng rng(seed);
  for (std::size_t i = 0; i < count; ++i) {
    const auto j = i + static_cast<std::size_t>(rng.uniform_index(candidates.size() - i));
    std::swap(candidates[i], candidates[j]);
  }
  candidates.resize(count);
  std::sort(candidates.begin(), candidates.end());

  LandscapeSample out = sample;
  for (const auto row : candidates) {
    Configuration c;
    c.values.reserve(features.size());
    for (std::size_t j = 0; j < features.size(); ++j) {
      if (features[j].kind == FeatureKind::numeric) {
        c.values.emplace_back(rng.uniform_real(sample.ranges[j].min, sample.ranges[j].max));
      } else if (labels[j].empty()) {
        c.values.emplace_back(Missing{});
      } else {
        c.values.emplace_back(labels[j][rng.uniform_index(labels[j].size())]);
      }
    }
    out.configs[row] = std::move(c);
    out.fitness[row] = fitness_value;
  }
  out.ranges = effective_ranges(out.schema, out.configs);
  out.validate();
  return out;
}

std::string sample_to_csv(const LandscapeSample& sample) {
  std::string out;
  for (const auto& f : sample.schema.features) {
    out += csv_field(f.name);
    out += ',';
  }
  out += csv_field(sample.schema.fitness_column);
  out += '\n';
  for (std::size_t i = 0; i < sample.size(); ++i) {
    for (const auto& cell : sample.configs[i].values) {
      if (const auto* v = std::get_if<double>(&cell)) {
        out += format_real(*v);
      } else if (const auto* s = std::get_if<std::string>(&cell)) {
        out += csv_field(*s);
      }
      out += ',';
    }
    out += format_real(sample.fitness[i]);
    out += '\n';
  }
  return out;
}

}  // namespace hpofla
