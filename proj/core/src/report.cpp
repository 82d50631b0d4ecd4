#include "hpofla/report.hpp"

#include <cmath>
#include <cstdio>

#include "hpofla/error.hpp"

namespace hpofla {

namespace {

// Minimal streaming JSON emitter with two-space indentation. Key order is
// the call order.
class JsonWriter {
 public:
  JsonWriter& begin_object() { return open('{'); }
  JsonWriter& end_object() { return close('}'); }
  JsonWriter& begin_array() { return open('['); }
  JsonWriter& end_array() { return close(']'); }

  JsonWriter& key(std::string_view k) {
    separate();
    write_string(k);
    out_ += ": ";
    after_key_ = true;
    return *this;
  }

  JsonWriter& value(std::string_view s) {
    separate();
    write_string(s);
    return *this;
  }
  JsonWriter& value(const char* s) { return value(std::string_view(s)); }
  JsonWriter& value(double d) {
    separate();
    out_ += std::isfinite(d) ? format_real(d) : "null";
    return *this;
  }
  JsonWriter& value(std::size_t n) {
    separate();
    out_ += std::to_string(n);
    return *this;
  }
  JsonWriter& value(int n) {
    separate();
    out_ += std::to_string(n);
    return *this;
  }
  JsonWriter& value(bool b) {
    separate();
    out_ += b ? "true" : "false";
    return *this;
  }
  JsonWriter& null() {
    separate();
    out_ += "null";
    return *this;
  }
  template <typename T>
  JsonWriter& value(const std::optional<T>& v) {
    return v ? value(*v) : null();
  }

  template <typename T>
  JsonWriter& field(std::string_view k, const T& v) {
    key(k);
    return value(v);
  }

  std::string finish() {
    out_ += '\n';
    return std::move(out_);
  }

 private:
  JsonWriter& open(char c) {
    separate();
    out_ += c;
    first_.push_back(true);
    return *this;
  }

  JsonWriter& close(char c) {
    const bool empty = first_.back();
    first_.pop_back();
    if (!empty) newline();
    out_ += c;
    return *this;
  }

  void separate() {
    if (after_key_) {
      after_key_ = false;
      return;
    }
    if (first_.empty()) return;
    if (!first_.back()) out_ += ',';
    first_.back() = false;
    newline();
  }

  void newline() {
    out_ += '\n';
    out_.append(2 * first_.size(), ' ');
  }

  void write_string(std::string_view s) {
    out_ += '"';
    for (const char c : s) {
      switch (c) {
        case '"': out_ += "\\\""; break;
        case '\\': out_ += "\\\\"; break;
        case '\n': out_ += "\\n"; break;
        case '\r': out_ += "\\r"; break;
        case '\t': out_ += "\\t"; break;
        default:
          if (static_cast<unsigned char>(c) < 0x20) {
            char buf[8];
            std::snprintf(buf, sizeof buf, "\\u%04x", c);
            out_ += buf;
          } else {
            out_ += c;
          }
      }
    }
    out_ += '"';
  }

  std::string out_;
  std::vector<bool> first_;
  bool after_key_ = false;
};

void write_box(JsonWriter& w, const BoxStats& s) {
  w.field("count", s.count);
  if (s.count == 0) {
    for (const auto* k : {"min", "q1", "median", "q3", "max"}) w.key(k).null();
    return;
  }
  w.field("min", s.min).field("q1", s.q1).field("median", s.median);
  w.field("q3", s.q3).field("max", s.max);
}

void write_bins(JsonWriter& w, const std::vector<BoxStats>& bins, const FitnessBinning& binning) {
  w.begin_array();
  for (std::size_t k = 0; k < bins.size(); ++k) {
    w.begin_object();
    w.field("bin_index", k).field("bin_lo", binning.lower(k)).field("bin_hi", binning.upper(k));
    write_box(w, bins[k]);
    w.end_object();
  }
  w.end_array();
}

struct Summary {
  double min = 0.0, mean = 0.0, max = 0.0;
};

template <typename Get>
Summary summarize(std::size_t n, Get get) {
  Summary s;
  if (n == 0) return s;
  s.min = s.max = get(0);
  double sum = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double v = get(i);
    s.min = std::min(s.min, v);
    s.max = std::max(s.max, v);
    sum += v;
  }
  s.mean = sum / static_cast<double>(n);
  return s;
}

void write_summary(JsonWriter& w, std::string_view name, const Summary& s) {
  w.key(name).begin_object();
  w.field("min", s.min).field("mean", s.mean).field("max", s.max);
  w.end_object();
}

std::string csv_reals(std::initializer_list<double> values) {
  std::string line;
  for (const double v : values) {
    if (!line.empty()) line += ',';
    line += format_real(v);
  }
  return line;
}

}  // namespace

std::string format_real(double value) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", value);
  return buf;
}

void AnalysisReport::check() const {
  const std::size_t n = metadata.sample_size;
  if (optima.indices.empty()) throw InvariantError("report: empty optima set");
  if (locality) {
    if (locality->points.size() != n) throw InvariantError("report: locality row count mismatch");
    std::size_t total = locality->excluded_empty;
    for (const auto& b : locality->bins) total += b.count;
    if (total != n) throw InvariantError("report: locality bin counts do not reconcile");
    if (locality->excluded_empty != metadata.empty_neighborhood_count) {
      throw InvariantError("report: empty-neighbourhood counts disagree");
    }
  }
  if (neutrality) {
    std::size_t total = 0;
    for (const auto& b : neutrality->bins) total += b.count;
    if (total != n || neutrality->degree.size() != n) {
      throw InvariantError("report: neutrality counts do not reconcile");
    }
    for (std::size_t i = 0; i < n; ++i) {
      if (neutrality->degree[i] > neutrality->neighbor_count[i]) {
        throw InvariantError("report: neutrality degree exceeds neighbourhood size");
      }
    }
  }
  if ((locality || neutrality || plateaus) && !binning) {
    throw InvariantError("report: binned analyses without a binning");
  }
  if (fdc && fdc->points.size() != n) throw InvariantError("report: FDC point count mismatch");
  if (plateaus) {
    for (const auto& p : *plateaus) {
      if (p.count_fraction != static_cast<double>(p.count) / static_cast<double>(n)) {
        throw InvariantError("report: plateau fraction does not match its count");
      }
    }
  }
}

std::string report_to_json(const AnalysisReport& report) {
  const auto& m = report.metadata;
  JsonWriter w;
  w.begin_object();

  w.key("metadata").begin_object();
  w.field("tool", "hpofla").field("version", kToolVersion).field("command", m.command);
  w.field("input", m.input_path);
  w.key("schema");
  m.schema_path.empty() ? w.null() : w.value(m.schema_path);
  w.key("priors");
  m.priors_path.empty() ? w.null() : w.value(m.priors_path);
  w.field("seed", static_cast<std::size_t>(m.seed));
  w.field("rows_loaded", m.rows_loaded).field("rows_dropped", m.rows_dropped);
  w.field("requested_sample", m.requested_sample).field("sample_size", m.sample_size);
  w.field("c_const", m.c_const).field("maximize", m.maximize);
  w.field("empty_neighborhood_count", m.empty_neighborhood_count);
  w.end_object();

  w.key("optima").begin_object();
  w.field("optimal_fitness", report.optima.optimal_fitness);
  w.field("count", report.optima.indices.size());
  w.key("indices").begin_array();
  for (const auto i : report.optima.indices) w.value(i);
  w.end_array();
  w.end_object();

  w.key("neighborhood").begin_object();
  w.field("max_dist", report.neighborhood.max_dist).field("delta", report.neighborhood.delta);
  w.field("c_const", report.neighborhood.c_const);
  w.end_object();

  w.key("binning");
  if (const auto& b = report.binning) {
    w.begin_object();
    w.field("max_fitness", b->max_fitness).field("step", b->step).field("bins", b->bins);
    w.end_object();
  } else {
    w.null();
  }

  w.key("fdc");
  if (const auto& f = report.fdc) {
    w.begin_object();
    w.field("points", f->points.size());
    w.field("slope", f->slope).field("intercept", f->intercept);
    w.field("coefficient", f->coefficient);
    write_summary(w, "distance",
                  summarize(f->points.size(), [&](std::size_t i) { return f->points[i].distance; }));
    write_summary(w, "fitness",
                  summarize(f->points.size(), [&](std::size_t i) { return f->points[i].fitness; }));
    w.end_object();
  } else {
    w.null();
  }

  w.key("locality");
  if (const auto& l = report.locality) {
    w.begin_object();
    w.field("excluded_empty", l->excluded_empty).field("correlation", l->correlation);
    w.key("bins");
    write_bins(w, l->bins, report.binning.value());
    w.end_object();
  } else {
    w.null();
  }

  w.key("neutrality");
  if (const auto& nt = report.neutrality) {
    w.begin_object();
    w.field("epsilon", nt->epsilon);
    const auto nd = summarize(nt->degree.size(),
                              [&](std::size_t i) { return static_cast<double>(nt->degree[i]); });
    write_summary(w, "degree", nd);
    std::size_t with_neutral = 0;
    for (const auto d : nt->degree) with_neutral += d > 0 ? 1 : 0;
    w.field("rows_with_neutral_neighbor", with_neutral);
    w.key("bins");
    write_bins(w, nt->bins, report.binning.value());
    w.end_object();
  } else {
    w.null();
  }

  w.key("diagnostics");
  if (report.plateaus) {
    w.begin_object();
    const auto& p = report.diagnostics_params.value_or(DiagnosticsParams{});
    w.field("min_count_fraction", p.min_count_fraction);
    w.field("min_diversity_ratio", p.min_diversity_ratio);
    w.key("class_priors").begin_object();
    for (const auto& [label, prior] : p.class_priors) w.field(label, prior);
    w.end_object();
    w.key("plateaus").begin_array();
    for (const auto& f : *report.plateaus) {
      w.begin_object();
      w.field("bin_index", f.bin_index).field("bin_center", f.bin_center);
      w.field("count", f.count).field("count_fraction", f.count_fraction);
      w.field("diversity_ratio", f.diversity_ratio);
      w.key("majority_class_label");
      f.majority_class_label ? w.value(*f.majority_class_label) : w.null();
      w.end_object();
    }
    w.end_array();
    w.end_object();
  } else {
    w.null();
  }

  w.end_object();
  return w.finish();
}

std::string fdc_points_csv(const FdcResult& fdc) {
  std::string out = "distance,fitness\n";
  for (const auto& p : fdc.points) {
    out += csv_reals({p.distance, p.fitness});
    out += '\n';
  }
  return out;
}

std::string locality_bins_csv(const LocalityProfile& locality, const FitnessBinning& binning) {
  std::string out = "bin_index,bin_lo,bin_hi,count,min,q1,median,q3,max\n";
  for (std::size_t k = 0; k < locality.bins.size(); ++k) {
    const auto& b = locality.bins[k];
    out += std::to_string(k) + ',' + csv_reals({binning.lower(k), binning.upper(k)}) + ',' +
           std::to_string(b.count) + ',';
    out += b.count == 0 ? std::string(",,,,") : csv_reals({b.min, b.q1, b.median, b.q3, b.max});
    out += '\n';
  }
  return out;
}

std::string neutrality_csv(const NeutralityProfile& neutrality, std::span<const double> fitness,
                           const FitnessBinning& binning) {
  std::string out = "row,fitness,bin_index,nd,neighbor_count\n";
  for (std::size_t i = 0; i < neutrality.degree.size(); ++i) {
    out += std::to_string(i) + ',' + format_real(fitness[i]) + ',' +
           std::to_string(binning.bin_of(fitness[i])) + ',' +
           std::to_string(neutrality.degree[i]) + ',' +
           std::to_string(neutrality.neighbor_count[i]) + '\n';
  }
  return out;
}

std::string distances_csv(const DistanceMatrix& matrix) {
  std::string out = "i,j,distance\n";
  for (std::size_t i = 1; i < matrix.size(); ++i) {
    const auto row = matrix.row_below(i);
    for (std::size_t j = 0; j < i; ++j) {
      out += std::to_string(i) + ',' + std::to_string(j) + ',' + format_real(row[j]) + '\n';
    }
  }
  return out;
}

std::string neighbors_csv(const NeighborhoodIndex& nbhd) {
  std::string out = "row,neighbor\n";
  for (std::size_t i = 0; i < nbhd.size(); ++i) {
    for (const auto j : nbhd.neighbors[i]) {
      out += std::to_string(i) + ',' + std::to_string(j) + '\n';
    }
  }
  return out;
}

}  // namespace hpofla
