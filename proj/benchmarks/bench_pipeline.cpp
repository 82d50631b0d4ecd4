#include <benchmark/benchmark.h>

#include "hpofla/analyses.hpp"
#include "hpofla/diagnostics.hpp"
#include "hpofla/gower.hpp"
#include "hpofla/neighborhood.hpp"
#include "hpofla/synthetic.hpp"

namespace {

hpofla::LandscapeSample paper_scale(std::size_t rows) {
  hpofla::PlantedSpec spec;
  spec.n_rows = rows;
  spec.numeric_features = 10;
  spec.category_arities = {2, 3, 4, 5, 6};
  spec.seed = 1;
  return hpofla::planted_landscape(spec);
}

void BM_DistanceMatrix(benchmark::State& state) {
  const auto s = paper_scale(static_cast<std::size_t>(state.range(0)));
  const auto workers = static_cast<unsigned>(state.range(1));
  for (auto _ : state) benchmark::DoNotOptimize(hpofla::distance_matrix(s, workers));
}
BENCHMARK(BM_DistanceMatrix)
    ->Args({250, 1})
    ->Args({500, 1})
    ->Args({1000, 1})
    ->Args({1000, 4})
    ->Unit(benchmark::kMillisecond);

void BM_FullPipeline(benchmark::State& state) {
  const auto s = paper_scale(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) {
    const auto m = hpofla::distance_matrix(s);
    const auto optima = hpofla::find_optima(s);
    const auto d = hpofla::distances_to_optima(m, optima);
    const auto nb = hpofla::build_neighborhoods(m, hpofla::compute_spec(d, s.params.c_const));
    const auto b = hpofla::make_binning(s.fitness, s.params.c_const);
    benchmark::DoNotOptimize(hpofla::fdc(s, d));
    benchmark::DoNotOptimize(hpofla::locality(s, nb, b));
    benchmark::DoNotOptimize(hpofla::neutrality(s, nb, b, s.params));
    benchmark::DoNotOptimize(hpofla::detect_plateaus(s, m, b, {}));
  }
}
BENCHMARK(BM_FullPipeline)->Arg(1000)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
