#include "hpofla/ingest.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <numeric>
#include <unordered_map>
#include <unordered_set>

#include "hpofla/error.hpp"
#include "hpofla/rng.hpp"
#include "json.hpp"

namespace hpofla {

namespace {

using nlohmann::json;

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t");
  return s.substr(first, last - first + 1);
}

bool is_blank_record(const std::vector<std::string>& record) {
  return record.size() == 1 && trim(record.front()).empty();
}

// Line-ish location for diagnostics: record 1 is the header.
std::string at_record(std::size_t record_index) {
  return "record " + std::to_string(record_index + 1);
}

std::unordered_map<std::string, std::size_t> index_header(
    const std::vector<std::string>& header) {
  std::unordered_map<std::string, std::size_t> columns;
  for (std::size_t i = 0; i < header.size(); ++i) {
    std::string name(trim(header[i]));
    if (!columns.emplace(name, i).second) {
      throw InputError("duplicate header column '" + name + "'");
    }
  }
  return columns;
}

// Like parse_real but also accepts inf/nan spellings.
std::optional<double> parse_any_real(std::string_view s) {
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (s.empty() || ec != std::errc() || ptr != s.data() + s.size()) return std::nullopt;
  return value;
}

}  // namespace

std::string_view to_string(FeatureKind kind) {
  return kind == FeatureKind::numeric ? "numeric" : "categorical";
}

void Schema::validate() const {
  if (features.empty()) throw InputError("schema declares no features");
  if (fitness_column.empty()) throw InputError("schema fitness_column is empty");
  std::unordered_set<std::string_view> seen;
  for (const auto& f : features) {
    if (f.name.empty()) throw InputError("schema feature with empty name");
    if (!seen.insert(f.name).second) {
      throw InputError("duplicate feature name '" + f.name + "'");
    }
    if (f.name == fitness_column) {
      throw InputError("fitness column '" + f.name + "' is also declared as a feature");
    }
    if (f.declared_range) {
      if (f.kind != FeatureKind::numeric) {
        throw InputError("range given for categorical feature '" + f.name + "'");
      }
      const auto [lo, hi] = *f.declared_range;
      if (!std::isfinite(lo) || !std::isfinite(hi) || lo > hi) {
        throw InputError("invalid range for feature '" + f.name + "': min > max or non-finite");
      }
    }
  }
}

void AnalysisParams::validate() const {
  if (c_const < 1) throw InputError("C must be a positive integer");
  if (neutrality_epsilon_override &&
      !(*neutrality_epsilon_override > 0.0 && std::isfinite(*neutrality_epsilon_override))) {
    throw InputError("neutrality epsilon must be a positive finite real");
  }
}

void LandscapeSample::validate() const {
  if (configs.size() != fitness.size()) {
    throw InvariantError("sample has " + std::to_string(configs.size()) + " configurations but " +
                         std::to_string(fitness.size()) + " fitness values");
  }
  if (configs.size() < 2) throw InvariantError("sample needs at least 2 configurations");
  if (ranges.size() != schema.features.size()) {
    throw InvariantError("sample ranges do not match schema features");
  }
  for (std::size_t i = 0; i < configs.size(); ++i) {
    if (configs[i].values.size() != schema.features.size()) {
      throw InvariantError("configuration " + std::to_string(i) + " has wrong arity");
    }
    if (!std::isfinite(fitness[i])) {
      throw InvariantError("non-finite fitness at sample row " + std::to_string(i));
    }
  }
  for (const auto& r : ranges) {
    if (!(r.min <= r.max)) throw InvariantError("sample range with min > max");
  }
}

Schema parse_schema(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw InputError(std::string("malformed schema document: ") + e.what());
  }
  if (!doc.is_object()) throw InputError("schema document must be a JSON object");

  Schema schema;
  try {
    const auto& fc = doc.at("fitness_column");
    if (!fc.is_string()) throw InputError("schema fitness_column must be a string");
    schema.fitness_column = fc.get<std::string>();

    const auto& features = doc.at("features");
    if (!features.is_array()) throw InputError("schema features must be an array");
    for (const auto& item : features) {
      if (!item.is_object()) throw InputError("schema feature entries must be objects");
      FeatureSpec spec;
      const auto& name = item.at("name");
      if (!name.is_string()) throw InputError("feature name must be a string");
      spec.name = name.get<std::string>();

      const auto& kind = item.at("kind");
      if (!kind.is_string()) throw InputError("feature kind must be a string");
      const auto kind_text = kind.get<std::string>();
      if (kind_text == "numeric") {
        spec.kind = FeatureKind::numeric;
      } else if (kind_text == "categorical") {
        spec.kind = FeatureKind::categorical;
      } else {
        throw InputError("unknown feature kind '" + kind_text + "' for '" + spec.name + "'");
      }

      if (auto it = item.find("range"); it != item.end() && !it->is_null()) {
        if (!it->is_array() || it->size() != 2 || !(*it)[0].is_number() ||
            !(*it)[1].is_number()) {
          throw InputError("range of '" + spec.name + "' must be [min, max]");
        }
        spec.declared_range = Range{(*it)[0].get<double>(), (*it)[1].get<double>()};
      }
      schema.features.push_back(std::move(spec));
    }
  } catch (const json::out_of_range& e) {
    throw InputError(std::string("schema document missing key: ") + e.what());
  }
  schema.validate();
  return schema;
}

std::string serialize_schema(const Schema& schema) {
  json features = json::array();
  for (const auto& f : schema.features) {
    json item = json::object();
    item["name"] = f.name;
    item["kind"] = std::string(to_string(f.kind));
    if (f.declared_range) item["range"] = {f.declared_range->min, f.declared_range->max};
    features.push_back(std::move(item));
  }
  json doc = json::object();
  doc["fitness_column"] = schema.fitness_column;
  doc["features"] = std::move(features);
  return doc.dump(2) + "\n";
}

std::vector<std::vector<std::string>> parse_csv(std::string_view text) {
  std::vector<std::vector<std::string>> records;
  std::vector<std::string> record;
  std::string field;
  bool in_quotes = false;
  bool any = false;

  for (std::size_t i = 0; i < text.size(); ++i) {
    const char c = text[i];
    any = true;
    if (in_quotes) {
      if (c == '"') {
        if (i + 1 < text.size() && text[i + 1] == '"') {
          field.push_back('"');
          ++i;
        } else {
          in_quotes = false;
        }
      } else {
        field.push_back(c);
      }
      continue;
    }
    switch (c) {
      case '"':
        in_quotes = true;
        break;
      case ',':
        record.push_back(std::move(field));
        field.clear();
        break;
      case '\r':
        break;
      case '\n':
        record.push_back(std::move(field));
        field.clear();
        records.push_back(std::move(record));
        record.clear();
        any = false;
        break;
      default:
        field.push_back(c);
    }
  }
  if (in_quotes) throw InputError("unterminated quoted field in CSV");
  if (any) {
    record.push_back(std::move(field));
    records.push_back(std::move(record));
  }
  return records;
}

std::optional<double> parse_real(std::string_view text) {
  const auto value = parse_any_real(trim(text));
  if (!value || !std::isfinite(*value)) return std::nullopt;
  return value;
}

Schema infer_schema(std::string_view csv_text, std::string_view fitness_column) {
  const auto records = parse_csv(csv_text);
  if (records.empty()) throw InputError("table is empty");
  const auto& header = records.front();
  const auto columns = index_header(header);
  if (!columns.contains(std::string(fitness_column))) {
    throw InputError("table header lacks fitness column '" + std::string(fitness_column) + "'");
  }

  Schema schema;
  schema.fitness_column = std::string(fitness_column);
  for (std::size_t col = 0; col < header.size(); ++col) {
    std::string name(trim(header[col]));
    if (name == fitness_column) continue;
    bool numeric = true;
    for (std::size_t r = 1; r < records.size() && numeric; ++r) {
      if (is_blank_record(records[r]) || col >= records[r].size()) continue;
      const auto cell = trim(records[r][col]);
      if (!cell.empty() && !parse_real(cell)) numeric = false;
    }
    schema.features.push_back(
        {std::move(name), numeric ? FeatureKind::numeric : FeatureKind::categorical, {}});
  }
  schema.validate();
  return schema;
}

Table load_table(std::string_view csv_text, const Schema& schema) {
  schema.validate();
  const auto records = parse_csv(csv_text);
  if (records.empty()) throw InputError("table is empty");

  const auto columns = index_header(records.front());
  auto column_of = [&](const std::string& name) {
    auto it = columns.find(name);
    if (it == columns.end()) throw InputError("table header lacks column '" + name + "'");
    return it->second;
  };
  std::vector<std::size_t> feature_cols;
  feature_cols.reserve(schema.features.size());
  for (const auto& f : schema.features) feature_cols.push_back(column_of(f.name));
  const std::size_t fitness_col = column_of(schema.fitness_column);
  const std::size_t width = records.front().size();

  Table table;
  std::size_t data_row = 0;
  for (std::size_t r = 1; r < records.size(); ++r) {
    const auto& rec = records[r];
    if (is_blank_record(rec)) continue;
    const std::size_t row = data_row++;
    if (rec.size() != width) {
      throw InputError(at_record(r) + ": expected " + std::to_string(width) + " fields, got " +
                       std::to_string(rec.size()));
    }

    const auto fitness_cell = trim(rec[fitness_col]);
    if (fitness_cell.empty()) {
      ++table.dropped_rows;
      continue;
    }
    const auto fit = parse_any_real(fitness_cell);
    if (!fit) {
      throw InputError(at_record(r) + ": fitness '" + rec[fitness_col] + "' is not a real");
    }
    if (!std::isfinite(*fit)) {
      ++table.dropped_rows;
      continue;
    }

    Configuration config;
    config.values.reserve(schema.features.size());
    for (std::size_t j = 0; j < schema.features.size(); ++j) {
      const auto& spec = schema.features[j];
      const std::string& raw = rec[feature_cols[j]];
      if (trim(raw).empty()) {
        config.values.emplace_back(Missing{});
      } else if (spec.kind == FeatureKind::numeric) {
        const auto v = parse_real(raw);
        if (!v) {
          throw InputError(at_record(r) + ": column '" + spec.name + "' value '" + raw +
                           "' is not a finite real");
        }
        config.values.emplace_back(*v);
      } else {
        config.values.emplace_back(raw);
      }
    }
    table.configs.push_back(std::move(config));
    table.fitness.push_back(*fit);
    table.source_rows.push_back(row);
  }
  if (table.configs.empty()) throw InputError("table has no usable rows");
  return table;
}

std::vector<std::size_t> sample_rows(std::size_t configs_count, std::size_t sample_size,
                                     std::uint64_t seed) {
  if (sample_size < 2) throw InputError("sample size must be at least 2");
  const std::size_t k = std::min(sample_size, configs_count);
  std::vector<std::size_t> index(configs_count);
  std::iota(index.begin(), index.end(), std::size_t{0});
  Rng rng(seed);
  for (std::size_t i = 0; i < k; ++i) {
    const auto j = i + static_cast<std::size_t>(rng.uniform_index(configs_count - i));
    std::swap(index[i], index[j]);
  }
  index.resize(k);
  std::sort(index.begin(), index.end());
  return index;
}

std::vector<Range> effective_ranges(const Schema& schema, std::span<const Configuration> configs) {
  std::vector<Range> ranges(schema.features.size());
  for (std::size_t j = 0; j < schema.features.size(); ++j) {
    const auto& spec = schema.features[j];
    if (spec.kind != FeatureKind::numeric) continue;
    if (spec.declared_range) {
      ranges[j] = *spec.declared_range;
      continue;
    }
    bool seen = false;
    for (const auto& c : configs) {
      const auto* v = std::get_if<double>(&c.values[j]);
      if (!v) continue;
      if (!seen) {
        ranges[j] = {*v, *v};
        seen = true;
      } else {
        ranges[j].min = std::min(ranges[j].min, *v);
        ranges[j].max = std::max(ranges[j].max, *v);
      }
    }
  }
  return ranges;
}

LandscapeSample build_sample(const Table& table, const Schema& schema,
                             const AnalysisParams& params, std::uint64_t seed,
                             std::optional<std::size_t> sample_size) {
  params.validate();
  schema.validate();
  if (table.configs.size() != table.fitness.size()) {
    throw InvariantError("table configurations and fitness differ in length");
  }

  std::vector<std::size_t> rows;
  if (sample_size) {
    rows = sample_rows(table.configs.size(), *sample_size, seed);
  } else {
    rows.resize(table.configs.size());
    std::iota(rows.begin(), rows.end(), std::size_t{0});
  }
  if (rows.size() < 2) {
    throw InputError("need at least 2 usable rows, got " + std::to_string(rows.size()));
  }

  LandscapeSample sample;
  sample.schema = schema;
  sample.params = params;
  sample.seed = seed;
  sample.configs.reserve(rows.size());
  sample.fitness.reserve(rows.size());
  sample.source_rows.reserve(rows.size());
  for (const auto r : rows) {
    sample.configs.push_back(table.configs[r]);
    sample.fitness.push_back(table.fitness[r]);
    sample.source_rows.push_back(r < table.source_rows.size() ? table.source_rows[r] : r);
  }
  sample.ranges = effective_ranges(schema, sample.configs);

  for (std::size_t j = 0; j < schema.features.size(); ++j) {
    const auto& spec = schema.features[j];
    if (!spec.declared_range) continue;
    for (std::size_t i = 0; i < sample.configs.size(); ++i) {
      const auto* v = std::get_if<double>(&sample.configs[i].values[j]);
      if (v && (*v < spec.declared_range->min || *v > spec.declared_range->max)) {
        throw InputError("data row " + std::to_string(sample.source_rows[i]) + ": value of '" +
                         spec.name + "' lies outside its declared range");
      }
    }
  }
  sample.validate();
  return sample;
}

}  // namespace hpofla
