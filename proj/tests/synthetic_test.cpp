#include <gtest/gtest.h>

#include <cmath>

#include "hpofla/analyses.hpp"
#include "hpofla/diagnostics.hpp"
#include "hpofla/error.hpp"
#include "hpofla/synthetic.hpp"

namespace hpofla {
namespace {

TEST(PlantedLandscape, AffineHasUniqueOptimumAtLastRow) {
  PlantedSpec spec;
  spec.n_rows = 500;
  spec.seed = 17;
  const auto s = planted_landscape(spec);
  ASSERT_EQ(s.size(), 500u);
  const auto optima = find_optima(s);
  EXPECT_EQ(optima.indices, (std::vector<std::size_t>{499}));
  EXPECT_EQ(optima.optimal_fitness, 100.0);

  const auto m = distance_matrix(s);
  const auto d = distances_to_optima(m, optima);
  const auto r = fdc(s, d);
  EXPECT_NEAR(*r.coefficient, -1.0, 1e-9);
  EXPECT_NEAR(*r.slope, -100.0, 1e-6);
  EXPECT_NEAR(*r.intercept, 100.0, 1e-6);
}

TEST(PlantedLandscape, ConstantHitsDegenerateBranches) {
  PlantedSpec spec;
  spec.n_rows = 60;
  spec.kind = LandscapeKind::constant;
  spec.constant_value = 37.5;
  const auto s = planted_landscape(spec);
  const auto m = distance_matrix(s);
  const auto optima = find_optima(s);
  EXPECT_EQ(optima.indices.size(), 60u);
  const auto d = distances_to_optima(m, optima);
  EXPECT_FALSE(fdc(s, d).coefficient);

  // All rows are optimal so the derived radius is 0; use a fixed one instead.
  const auto nb = build_neighborhoods(m, {0.4, 0.4, 1});
  const auto n = neutrality(s, nb, make_binning(s.fitness, 40), s.params);
  for (std::size_t i = 0; i < s.size(); ++i) EXPECT_EQ(n.degree[i], nb.neighbors[i].size());
}

TEST(PlantedLandscape, Deterministic) {
  PlantedSpec spec;
  spec.n_rows = 200;
  spec.seed = 99;
  spec.plateaus = {{0.1, 20.0}};
  const auto a = planted_landscape(spec);
  const auto b = planted_landscape(spec);
  EXPECT_EQ(a.configs, b.configs);
  EXPECT_EQ(a.fitness, b.fitness);
  spec.seed = 100;
  EXPECT_NE(planted_landscape(spec).fitness, a.fitness);
}

TEST(PlantedLandscape, RejectsBadSpec) {
  PlantedSpec spec;
  spec.n_rows = 1;
  EXPECT_THROW(planted_landscape(spec), InputError);
  spec.n_rows = 10;
  spec.plateaus = {{0.6, 1.0}, {0.6, 2.0}};
  EXPECT_THROW(planted_landscape(spec), InputError);
  spec.plateaus.clear();
  spec.kind = LandscapeKind::custom;
  EXPECT_THROW(planted_landscape(spec), InputError);
}

TEST(InjectPlateau, ReplacesCeilFractionRows) {
  PlantedSpec spec;
  spec.n_rows = 1000;
  spec.numeric_features = 2;
  spec.category_arities = {3, 2};
  spec.seed = 5;
  const auto base = planted_landscape(spec);
  const auto s = inject_plateau(base, 0.1, 12.0, 77);
  std::vector<std::size_t> rows;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s.fitness[i] == 12.0) rows.push_back(i);
  }
  EXPECT_EQ(rows.size(), 100u);
  EXPECT_EQ(s.fitness.back(), 100.0);  // optimum kept

  const auto m = distance_matrix(s);
  EXPECT_GE(mean_pairwise_distance(m, rows) / mean_pairwise_distance(m), 0.8);

  const auto again = inject_plateau(base, 0.1, 12.0, 77);
  EXPECT_EQ(again.configs, s.configs);
  EXPECT_EQ(again.fitness, s.fitness);

  EXPECT_EQ(inject_plateau(base, 0.0015, 12.0, 1).fitness.size(), 1000u);
  EXPECT_THROW(inject_plateau(base, 0.0, 12.0, 1), InputError);
  EXPECT_THROW(inject_plateau(base, 1.0, 12.0, 1), InputError);
}

TEST(SampleToCsv, ReloadsThroughTheIngestPath) {
  PlantedSpec spec;
  spec.n_rows = 30;
  spec.seed = 4;
  const auto s = planted_landscape(spec);
  const auto table = load_table(sample_to_csv(s), s.schema);
  EXPECT_EQ(table.configs, s.configs);
  EXPECT_EQ(table.fitness, s.fitness);
}

}  // namespace
}  // namespace hpofla
