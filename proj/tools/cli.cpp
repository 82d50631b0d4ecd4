#include "cli.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "hpofla/analyses.hpp"
#include "hpofla/diagnostics.hpp"
#include "hpofla/error.hpp"
#include "hpofla/gower.hpp"
#include "hpofla/ingest.hpp"
#include "hpofla/neighborhood.hpp"
#include "hpofla/report.hpp"
#include "hpofla/svg.hpp"
#include "hpofla/synthetic.hpp"

namespace hpofla::cli {

namespace fs = std::filesystem;

namespace {

struct AnalyzeOptions {
  std::string input;
  std::string schema;
  std::string fitness_col = "fitness";
  std::optional<std::size_t> sample;
  std::uint64_t seed = 0;
  int c_const = 40;
  bool minimize = false;
  std::optional<double> epsilon;
  std::string priors;
  double min_count_frac = 0.05;
  double min_diversity = 0.8;
  std::string out;
  bool plots = false;
  bool dump_distances = false;
  bool dump_neighbors = false;
  unsigned threads = 1;
};

struct GenerateOptions {
  std::size_t rows = 500;
  std::size_t numeric = 3;
  std::vector<std::size_t> arities{3};
  std::string kind = "affine";
  double constant = 50.0;
  std::vector<std::string> plateaus;
  std::uint64_t seed = 0;
  std::string out;
};

// Ordered so that written files appear in a stable order.
using OutputFiles = std::map<std::string, std::string>;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError(path + ": cannot open file");
  std::ostringstream ss;
  ss << in.rdbuf();
  if (in.bad()) throw InputError(path + ": read failed");
  return ss.str();
}

// Writes every file to a temporary name first and renames only once all
// writes succeeded, so an error leaves no partial outputs behind.
void write_outputs(const std::string& dir, const OutputFiles& files) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw InputError(dir + ": cannot create output directory: " + ec.message());

  std::vector<fs::path> temps;
  auto discard = [&] {
    for (const auto& t : temps) fs::remove(t, ec);
  };
  for (const auto& [name, content] : files) {
    const fs::path tmp = fs::path(dir) / ("." + name + ".tmp");
    temps.push_back(tmp);
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    out << content;
    out.close();
    if (!out) {
      discard();
      throw InputError(tmp.string() + ": write failed");
    }
  }
  std::size_t i = 0;
  for (const auto& [name, content] : files) {
    fs::rename(temps[i++], fs::path(dir) / name, ec);
    if (ec) {
      discard();
      throw InputError((fs::path(dir) / name).string() + ": rename failed: " + ec.message());
    }
  }
}

void add_analysis_options(CLI::App& cmd, AnalyzeOptions& o) {
  cmd.add_option("--input", o.input, "Benchmark table (CSV)")->required();
  cmd.add_option("--schema", o.schema, "Schema document (JSON); inferred when omitted");
  cmd.add_option("--fitness-col", o.fitness_col, "Fitness column when inferring the schema")
      ->capture_default_str();
  cmd.add_option("--sample", o.sample, "Uniformly sample this many rows (default: all)")
      ->check(CLI::Range(std::size_t{2}, std::numeric_limits<std::size_t>::max()));
  cmd.add_option("--seed", o.seed, "Sampling seed")->capture_default_str();
  cmd.add_option("--c", o.c_const, "Binning / neighbourhood constant C")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
  cmd.add_flag("--minimize", o.minimize, "Lower fitness is better");
  cmd.add_option("--epsilon", o.epsilon, "Neutrality threshold (default: max fitness / C)")
      ->check(CLI::PositiveNumber);
  cmd.add_option("--priors", o.priors, "Majority-class priors (JSON label -> probability)");
  cmd.add_option("--min-count-frac", o.min_count_frac, "Plateau count-fraction threshold")
      ->capture_default_str();
  cmd.add_option("--min-diversity", o.min_diversity, "Plateau diversity-ratio threshold")
      ->capture_default_str();
  cmd.add_option("--out", o.out, "Output directory")->required();
  cmd.add_flag("--plots", o.plots, "Also write SVG plots");
  cmd.add_flag("--dump-distances", o.dump_distances, "Write distances.csv (i > j triples)");
  cmd.add_flag("--dump-neighbors", o.dump_neighbors, "Write neighbors.csv");
  cmd.add_option("--threads", o.threads, "Worker threads for the distance matrix (0 = all)")
      ->capture_default_str();
}

OutputFiles analyze(const std::string& command, const AnalyzeOptions& o) {
  const bool want_fdc = command == "fdc" || command == "all";
  const bool want_locality = command == "locality" || command == "all";
  const bool want_neutrality = command == "neutrality" || command == "all";
  const bool want_diagnose = command == "diagnose" || command == "all";
  const bool need_binning = want_locality || want_neutrality || want_diagnose;

  AnalysisParams params;
  params.c_const = o.c_const;
  params.maximize = !o.minimize;
  params.neutrality_epsilon_override = o.epsilon;
  params.validate();

  DiagnosticsParams diag;
  diag.min_count_fraction = o.min_count_frac;
  diag.min_diversity_ratio = o.min_diversity;
  if (!o.priors.empty()) {
    try {
      diag.class_priors = parse_priors(read_file(o.priors));
    } catch (const InputError& e) {
      throw InputError(o.priors + ": " + e.what());
    }
  }
  diag.validate();

  const std::string table_text = read_file(o.input);
  Schema schema;
  try {
    schema = o.schema.empty() ? infer_schema(table_text, o.fitness_col)
                              : parse_schema(read_file(o.schema));
  } catch (const InputError& e) {
    throw InputError((o.schema.empty() ? o.input : o.schema) + ": " + e.what());
  }

  Table table;
  LandscapeSample sample;
  try {
    table = load_table(table_text, schema);
    sample = build_sample(table, schema, params, o.seed, o.sample);
  } catch (const InputError& e) {
    throw InputError(o.input + ": " + e.what());
  }

  DistanceMatrix matrix;
  try {
    matrix = distance_matrix(sample, o.threads);
  } catch (const AllMissingError& e) {
    throw InputError(o.input + ": data rows " + std::to_string(sample.source_rows[e.row_a()]) +
                     " and " + std::to_string(sample.source_rows[e.row_b()]) +
                     " share no non-missing feature");
  }
  const auto optima = find_optima(sample);
  const auto dstar = distances_to_optima(matrix, optima);
  const auto nspec = compute_spec(dstar, params.c_const);
  const auto nbhd = build_neighborhoods(matrix, nspec);

  AnalysisReport report;
  auto& m = report.metadata;
  m.command = command;
  m.input_path = o.input;
  m.schema_path = o.schema;
  m.priors_path = o.priors;
  m.seed = o.seed;
  m.rows_loaded = table.configs.size();
  m.rows_dropped = table.dropped_rows;
  m.requested_sample = o.sample;
  m.sample_size = sample.size();
  m.c_const = params.c_const;
  m.maximize = params.maximize;
  m.empty_neighborhood_count = nbhd.empty_count();
  report.optima = optima;
  report.neighborhood = nspec;

  if (need_binning) {
    try {
      report.binning = make_binning(sample.fitness, params.c_const);
    } catch (const InputError& e) {
      throw InputError(o.input + ": " + e.what());
    }
  }

  OutputFiles files;
  if (want_fdc) {
    report.fdc = fdc(sample, dstar);
    files["fdc_points.csv"] = fdc_points_csv(*report.fdc);
    if (o.plots) files["fdc.svg"] = fdc_svg(*report.fdc);
  }
  if (want_locality) {
    report.locality = locality(sample, nbhd, *report.binning);
    files["locality_bins.csv"] = locality_bins_csv(*report.locality, *report.binning);
    if (o.plots) files["locality.svg"] = locality_svg(*report.locality, *report.binning);
  }
  if (want_neutrality) {
    report.neutrality = neutrality(sample, nbhd, *report.binning, params);
    files["neutrality.csv"] = neutrality_csv(*report.neutrality, sample.fitness, *report.binning);
    if (o.plots) files["neutrality.svg"] = neutrality_svg(*report.neutrality, *report.binning);
  }
  if (want_diagnose) {
    report.diagnostics_params = diag;
    report.plateaus = detect_plateaus(sample, matrix, *report.binning, diag);
  }
  if (o.dump_distances) files["distances.csv"] = distances_csv(matrix);
  if (o.dump_neighbors) files["neighbors.csv"] = neighbors_csv(nbhd);

  report.check();
  files["report.json"] = report_to_json(report);
  return files;
}

PlateauInjection parse_plateau(const std::string& text) {
  const auto colon = text.find(':');
  if (colon == std::string::npos) {
    throw InputError("--plateau expects FRACTION:FITNESS, got '" + text + "'");
  }
  const auto fraction = parse_real(text.substr(0, colon));
  const auto value = parse_real(text.substr(colon + 1));
  if (!fraction || !value) throw InputError("--plateau expects FRACTION:FITNESS, got '" + text + "'");
  return {*fraction, *value};
}

OutputFiles generate(const GenerateOptions& o) {
  PlantedSpec spec;
  spec.n_rows = o.rows;
  spec.numeric_features = o.numeric;
  spec.category_arities = o.arities;
  spec.seed = o.seed;
  spec.constant_value = o.constant;
  if (o.kind == "affine") {
    spec.kind = LandscapeKind::affine_distance;
  } else if (o.kind == "constant") {
    spec.kind = LandscapeKind::constant;
  } else {
    throw InputError("--kind must be 'affine' or 'constant'");
  }
  for (const auto& p : o.plateaus) spec.plateaus.push_back(parse_plateau(p));

  const auto sample = planted_landscape(spec);
  return {{"table.csv", sample_to_csv(sample)}, {"schema.json", serialize_schema(sample.schema)}};
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Fitness landscape analysis of tabular hyperparameter benchmarks", "hpofla"};
  app.set_version_flag("--version", std::string(kToolVersion));
  app.require_subcommand(1);

  AnalyzeOptions analyze_opts;
  const std::vector<std::pair<std::string, std::string>> analyses = {
      {"fdc", "Fitness-distance correlation"},
      {"locality", "Average neighbour fitness per fitness bin"},
      {"neutrality", "Neutrality degree per row and per fitness bin"},
      {"diagnose", "Detect fitness plateaus made of diverse configurations"},
      {"all", "Run every analysis"},
  };
  for (const auto& [name, help] : analyses) {
    add_analysis_options(*app.add_subcommand(name, help), analyze_opts);
  }

  GenerateOptions gen;
  auto* gen_cmd = app.add_subcommand("generate", "Write a planted landscape as table.csv + schema.json");
  gen_cmd->add_option("--rows", gen.rows, "Number of rows")->capture_default_str();
  gen_cmd->add_option("--numeric", gen.numeric, "Numeric features")->capture_default_str();
  gen_cmd->add_option("--arities", gen.arities, "Label count of each categorical feature")
      ->delimiter(',');
  gen_cmd->add_option("--kind", gen.kind, "affine | constant")->capture_default_str();
  gen_cmd->add_option("--constant", gen.constant, "Fitness of the constant kind");
  gen_cmd->add_option("--plateau", gen.plateaus, "Inject FRACTION:FITNESS (repeatable)");
  gen_cmd->add_option("--seed", gen.seed, "Generator seed")->capture_default_str();
  gen_cmd->add_option("--out", gen.out, "Output directory")->required();

  std::vector<const char*> argv{"hpofla"};
  for (const auto& a : args) argv.push_back(a.c_str());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitInputError;
  }

  try {
    if (gen_cmd->parsed()) {
      write_outputs(gen.out, generate(gen));
    } else {
      const auto* cmd = app.get_subcommands().front();
      write_outputs(analyze_opts.out, analyze(cmd->get_name(), analyze_opts));
    }
  } catch (const InputError& e) {
    err << "hpofla: error: " << e.what() << '\n';
    return kExitInputError;
  } catch (const InvariantError& e) {
    err << "hpofla: internal error: " << e.what() << '\n';
    return kExitInternalError;
  } catch (const std::exception& e) {
    err << "hpofla: internal error: " << e.what() << '\n';
    return kExitInternalError;
  }
  return kExitOk;
}

}  // namespace hpofla::cli
