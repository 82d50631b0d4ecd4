#include "hpofla/diagnostics.hpp"

#include <algorithm>
#include <cmath>

#include "hpofla/error.hpp"
#include "json.hpp"

namespace hpofla {

void DiagnosticsParams::validate() const {
  const auto in_unit = [](double v) { return v > 0.0 && v <= 1.0; };
  if (!in_unit(min_count_fraction)) throw InputError("min count fraction must be in (0, 1]");
  if (!in_unit(min_diversity_ratio)) throw InputError("min diversity ratio must be in (0, 1]");
  for (const auto& [label, p] : class_priors) {
    if (!(p >= 0.0 && p <= 1.0)) {
      throw InputError("prior for '" + label + "' must lie in [0, 1]");
    }
  }
}

std::vector<std::size_t> fitness_histogram(std::span<const double> fitness,
                                           const FitnessBinning& binning) {
  std::vector<std::size_t> counts(static_cast<std::size_t>(binning.bins), 0);
  for (const double f : fitness) ++counts[binning.bin_of(f)];
  return counts;
}

double mean_pairwise_distance(const DistanceMatrix& matrix, std::span<const std::size_t> members) {
  if (members.size() < 2) return 0.0;
  double sum = 0.0;
  for (std::size_t a = 1; a < members.size(); ++a) {
    for (std::size_t b = 0; b < a; ++b) sum += matrix(members[a], members[b]);
  }
  const double pairs = static_cast<double>(members.size()) *
                       static_cast<double>(members.size() - 1) / 2.0;
  return sum / pairs;
}

double mean_pairwise_distance(const DistanceMatrix& matrix) {
  const auto lower = matrix.lower();
  if (lower.empty()) return 0.0;
  double sum = 0.0;
  for (const double d : lower) sum += d;
  return sum / static_cast<double>(lower.size());
}

std::vector<PlateauFinding> detect_plateaus(const LandscapeSample& sample,
                                            const DistanceMatrix& matrix,
                                            const FitnessBinning& binning,
                                            const DiagnosticsParams& params) {
  params.validate();
  if (matrix.size() != sample.size()) throw InvariantError("detect_plateaus: matrix size mismatch");

  std::vector<std::vector<std::size_t>> members(static_cast<std::size_t>(binning.bins));
  for (std::size_t i = 0; i < sample.size(); ++i) {
    members[binning.bin_of(sample.fitness[i])].push_back(i);
  }
  const double overall = mean_pairwise_distance(matrix);
  const double n = static_cast<double>(sample.size());

  std::vector<PlateauFinding> findings;
  for (std::size_t k = 0; k < members.size(); ++k) {
    const auto& rows = members[k];
    if (rows.size() < 2) continue;
    PlateauFinding finding;
    finding.bin_index = k;
    finding.bin_center = binning.center(k);
    finding.count = rows.size();
    finding.count_fraction = static_cast<double>(rows.size()) / n;
    finding.diversity_ratio = overall > 0.0 ? mean_pairwise_distance(matrix, rows) / overall : 0.0;
    if (finding.count_fraction >= params.min_count_fraction &&
        finding.diversity_ratio >= params.min_diversity_ratio) {
      findings.push_back(std::move(finding));
    }
  }
  std::stable_sort(findings.begin(), findings.end(), [](const auto& a, const auto& b) {
    return a.count != b.count ? a.count > b.count : a.bin_index < b.bin_index;
  });
  if (!params.class_priors.empty()) {
    findings = match_class_priors(std::move(findings), params.class_priors, binning);
  }
  return findings;
}

std::vector<PlateauFinding> match_class_priors(std::vector<PlateauFinding> findings,
                                               const std::map<std::string, double>& priors,
                                               const FitnessBinning& binning) {
  for (auto& finding : findings) {
    finding.majority_class_label.reset();
    double best = 0.0;
    // std::map iterates labels in ascending order; strict < keeps the first on ties.
    for (const auto& [label, prior] : priors) {
      const double gap = std::abs(finding.bin_center - 100.0 * prior);
      if (gap > binning.step) continue;
      if (!finding.majority_class_label || gap < best) {
        finding.majority_class_label = label;
        best = gap;
      }
    }
  }
  return findings;
}

std::map<std::string, double> parse_priors(std::string_view text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw InputError(std::string("malformed priors document: ") + e.what());
  }
  if (!doc.is_object()) throw InputError("priors document must be a JSON object");
  std::map<std::string, double> priors;
  for (const auto& [label, value] : doc.items()) {
    if (!value.is_number()) throw InputError("prior for '" + label + "' must be a number");
    const double p = value.get<double>();
    if (!(p >= 0.0 && p <= 1.0)) throw InputError("prior for '" + label + "' must lie in [0, 1]");
    priors.emplace(label, p);
  }
  return priors;
}

}  // namespace hpofla
