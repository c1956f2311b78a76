#include <benchmark/benchmark.h>

#include "jroc/jroc_analysis.hpp"
#include "jroc/lattice_search.hpp"
#include "jroc/predictors.hpp"
#include "jroc/rng.hpp"

namespace {

using namespace jroc;

Dataset synthetic_dataset(std::size_t m, std::size_t n, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<FeatureMeta> features(m);
  for (std::size_t j = 0; j < m; ++j) {
    features[j].name = "f" + std::to_string(j);
    features[j].kind = FeatureKind::Numeric;
  }
  std::vector<Row> rows(n);
  for (std::size_t i = 0; i < n; ++i) {
    double score = 0.0;
    for (std::size_t j = 0; j < m; ++j) {
      const double v = rng.next_unit();
      rows[i].cells.push_back(FeatureValue::numeric(v));
      score += (j % 2 == 0 ? v : -v);
    }
    rows[i].label = score > 0.0 ? 1 : 0;
  }
  rows[0].label = 0;
  rows[n - 1].label = 1;
  return Dataset(std::move(features), {"neg", "pos"}, std::move(rows));
}

void BM_FullEnumeration(benchmark::State& state) {
  const std::size_t m = static_cast<std::size_t>(state.range(0));
  const Dataset d = synthetic_dataset(m, 120, 1);
  const CostContext ctx = uniform_context(m, 2);
  const auto p = train_tree(d, 4);
  for (auto _ : state) {
    benchmark::DoNotOptimize(full_enumeration(*p, d, ctx, 20));
  }
  state.SetComplexityN(static_cast<std::int64_t>(1) << m);
}
BENCHMARK(BM_FullEnumeration)->DenseRange(4, 10, 2)->Complexity(benchmark::oN);

void BM_BackwardGuided(benchmark::State& state) {
  const std::size_t m = static_cast<std::size_t>(state.range(0));
  const Dataset d = synthetic_dataset(m, 120, 1);
  const CostContext ctx = uniform_context(m, 2);
  const auto p = train_tree(d, 4);
  for (auto _ : state) {
    benchmark::DoNotOptimize(backward_guided(*p, d, ctx, BackwardGuide::JC));
  }
}
BENCHMARK(BM_BackwardGuided)->DenseRange(4, 16, 4);

void BM_KnnPredict(benchmark::State& state) {
  const Dataset train = synthetic_dataset(8, static_cast<std::size_t>(state.range(0)), 2);
  const Dataset probe = synthetic_dataset(8, 64, 3);
  const auto p = train_knn(train, 5);
  for (auto _ : state) {
    for (const Row& r : probe.rows()) benchmark::DoNotOptimize(p->predict(r.cells));
  }
}
BENCHMARK(BM_KnnPredict)->Range(64, 1024);

void BM_ConvexHull(benchmark::State& state) {
  Rng rng(7);
  std::vector<CostPoint> points;
  const auto count = static_cast<std::size_t>(state.range(0));
  points.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    points.push_back(CostPoint{rng.next_unit(), rng.next_unit(), "m",
                               FeatureConfig::from_bits(i & 0xffff, 16)});
  }
  for (auto _ : state) {
    benchmark::DoNotOptimize(convex_hull(points));
  }
}
BENCHMARK(BM_ConvexHull)->Range(16, 16384);

}  // namespace

BENCHMARK_MAIN();
