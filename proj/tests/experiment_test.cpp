#include "jroc/experiment.hpp"

#include <gtest/gtest.h>

#include <cmath>

#include "jroc/cost_context.hpp"
#include "jroc/points_io.hpp"
#include "jroc/rng.hpp"
#include "test_util.hpp"

namespace jroc {
namespace {

const std::vector<std::string> kTwoModels{"majority", "tree:depth=3"};

Dataset small_dataset(std::uint64_t seed, std::size_t m = 3, std::size_t n = 36) {
  Rng rng(seed);
  return testing::random_dataset(rng, m, n, 2);
}

TEST(RunSingle, DeterministicAndFinite) {
  const Dataset d = small_dataset(1);
  const CostContext ctx = uniform_context(3, 2);
  const auto a = run_single(d, kTwoModels, ctx, 0.5, 42);
  const auto b = run_single(d, kTwoModels, ctx, 0.5, 42);
  EXPECT_EQ(a, b);
  for (double v : a) {
    EXPECT_TRUE(std::isfinite(v));
    EXPECT_GE(v, 0.0);
  }
  const auto c = run_single(d, kTwoModels, ctx, 0.5, 43);
  EXPECT_TRUE(std::isfinite(c[0]));
}

// With m=2 the default Monte Carlo sample size m(m+1)/2+1 = 4 equals 2^m,
// so RND explores the full lattice and must match Full exactly.
TEST(RunSingle, RndCoveringLatticeEqualsFull) {
  const Dataset d = small_dataset(2, 2, 30);
  const CostContext ctx = uniform_context(2, 2);
  for (std::uint64_t seed : {1ull, 9ull, 77ull}) {
    const auto r = run_single(d, kTwoModels, ctx, 0.3, seed);
    EXPECT_DOUBLE_EQ(r[0], r[4]);
  }
}

TEST(RunSingle, HandlesNominalFeatures) {
  std::string csv = "size,colour,cls\n";
  const char* colours[] = {"red", "green", "blue"};
  Rng rng(99);
  for (int i = 0; i < 36; ++i) {
    const int c = static_cast<int>(rng.next_below(3));
    const double size = rng.next_unit() * 10.0 + (c == 2 ? 5.0 : 0.0);
    csv += std::to_string(size) + "," + colours[c] + "," + (c == 2 ? "big" : "small") +
           "\n";
  }
  const Dataset d = parse_dataset_csv(csv);
  ASSERT_EQ(d.feature(1).kind, FeatureKind::Nominal);
  const auto result =
      run_single(d, {"majority", "knn:k=3", "tree:depth=3"}, uniform_context(2, 2), 0.5, 3);
  for (double v : result) {
    EXPECT_TRUE(std::isfinite(v));
    EXPECT_GE(v, 0.0);
  }
}

TEST(RunSingle, RejectsTinyDatasetsAndEmptyModelList) {
  const Dataset tiny = testing::make_numeric_dataset({{1.0}, {2.0}}, {0, 1}, 2);
  const CostContext ctx = uniform_context(1, 2);
  EXPECT_THROW(run_single(tiny, kTwoModels, ctx, 0.5, 1), std::invalid_argument);
  const Dataset d = small_dataset(3);
  EXPECT_THROW(run_single(d, {}, uniform_context(3, 2), 0.5, 1), std::invalid_argument);
}

TEST(RunPlan, ShapeAndLabels) {
  ExperimentPlan plan;
  plan.predictor_specs = kTwoModels;
  plan.alphas = {0.1, 0.9};
  plan.repetitions = 2;
  plan.master_seed = 7;
  const std::vector<Dataset> datasets{small_dataset(4), small_dataset(5)};
  const MethodResultMatrix mrm = run_plan_on(plan, datasets, {"d0", "d1"});
  EXPECT_EQ(mrm.run_count(), 8u);  // 2 datasets x 2 alphas x 2 reps
  EXPECT_EQ(mrm.labels[0].dataset, "d0");
  EXPECT_EQ(mrm.labels[0].alpha, 0.1);
  EXPECT_EQ(mrm.labels[0].repetition, 1);
  EXPECT_EQ(mrm.labels[1].repetition, 2);
  EXPECT_EQ(mrm.labels[2].alpha, 0.9);
  EXPECT_EQ(mrm.labels.back().dataset, "d1");
}

TEST(RunPlan, SingleCellPlan) {
  ExperimentPlan plan;
  plan.predictor_specs = {"majority"};
  plan.alphas = {0.5};
  plan.repetitions = 1;
  const MethodResultMatrix mrm = run_plan_on(plan, {small_dataset(6)}, {"d"});
  EXPECT_EQ(mrm.run_count(), 1u);
}

TEST(RunPlan, DeterministicAcrossJobCounts) {
  ExperimentPlan plan;
  plan.predictor_specs = kTwoModels;
  plan.alphas = {0.3, 0.7};
  plan.repetitions = 2;
  plan.master_seed = 11;
  plan.context.kind = ContextSpec::Kind::Random;
  plan.context.beta = 10.0;
  const std::vector<Dataset> datasets{small_dataset(8), small_dataset(9)};
  plan.jobs = 1;
  const MethodResultMatrix serial = run_plan_on(plan, datasets, {"a", "b"});
  plan.jobs = 4;
  const MethodResultMatrix parallel = run_plan_on(plan, datasets, {"a", "b"});
  EXPECT_EQ(serial.columns, parallel.columns);
  EXPECT_EQ(mdat_to_csv(serial), mdat_to_csv(parallel));
}

TEST(RunPlan, ContextRedrawModes) {
  ExperimentPlan plan;
  plan.predictor_specs = {"majority"};
  plan.alphas = {0.5};
  plan.repetitions = 3;
  plan.context.kind = ContextSpec::Kind::Random;
  plan.redraw = ContextRedraw::PerRepetition;
  const std::vector<Dataset> datasets{small_dataset(10)};
  const auto per_rep = run_plan_on(plan, datasets, {"d"});
  plan.redraw = ContextRedraw::PerPlan;
  const auto per_plan = run_plan_on(plan, datasets, {"d"});
  EXPECT_EQ(per_rep.run_count(), per_plan.run_count());
  // both modes are deterministic
  plan.redraw = ContextRedraw::PerRepetition;
  EXPECT_EQ(run_plan_on(plan, datasets, {"d"}).columns, per_rep.columns);
}

MethodResultMatrix hand_matrix() {
  // 1 dataset x 2 alphas x 2 reps with fabricated values
  MethodResultMatrix mrm;
  auto add = [&mrm](double alpha, std::size_t alpha_index, int rep,
                    std::array<double, 5> vals) {
    MethodResultMatrix::ColumnLabel label;
    label.dataset = "d";
    label.alpha = alpha;
    label.repetition = rep;
    label.dataset_index = 0;
    label.alpha_index = alpha_index;
    mrm.labels.push_back(label);
    mrm.columns.push_back(vals);
  };
  add(0.1, 0, 1, {0.1, 0.2, 0.3, 0.4, 0.5});
  add(0.1, 0, 2, {0.3, 0.2, 0.3, 0.4, 0.5});
  add(0.9, 1, 1, {0.5, 0.6, 0.7, 0.8, 0.9});
  add(0.9, 1, 2, {0.5, 0.6, 0.7, 0.8, 0.9});
  return mrm;
}

TEST(Aggregates, ByDatasetMeanAndSd) {
  const auto rows = aggregate_by_dataset(hand_matrix());
  ASSERT_EQ(rows.size(), 1u);
  EXPECT_DOUBLE_EQ(rows[0].mean[0], (0.1 + 0.3 + 0.5 + 0.5) / 4.0);
  // constant column group
  EXPECT_DOUBLE_EQ(rows[0].sd[1], std::sqrt(((0.2 - 0.4) * (0.2 - 0.4) * 2 +
                                             (0.6 - 0.4) * (0.6 - 0.4) * 2) /
                                            3.0));
}

TEST(Aggregates, ByAlphaGroupsCorrectly) {
  const auto rows = aggregate_by_alpha(hand_matrix());
  ASSERT_EQ(rows.size(), 2u);
  EXPECT_EQ(rows[0].key, "0.1");
  EXPECT_DOUBLE_EQ(rows[0].mean[0], 0.2);
  // sample sd of {0.1, 0.3} with n-1 denominator
  EXPECT_NEAR(rows[0].sd[0], 0.1414213562373095, 1e-12);
  EXPECT_EQ(rows[1].key, "0.9");
  EXPECT_DOUBLE_EQ(rows[1].sd[0], 0.0);
}

TEST(Aggregates, ConstantGroupHasZeroSd) {
  const auto rows = aggregate_by_alpha(hand_matrix());
  EXPECT_DOUBLE_EQ(rows[1].sd[4], 0.0);
}

TEST(PerCellMeans, RowsAndAvg) {
  const CellTable table = per_cell_means(hand_matrix());
  ASSERT_EQ(table.rows.size(), 2u);
  EXPECT_DOUBLE_EQ(table.rows[0].means[0], 0.2);  // mean over reps
  EXPECT_DOUBLE_EQ(table.rows[1].means[0], 0.5);
  EXPECT_DOUBLE_EQ(table.avg_row[0], 0.35);
  // single repetition leaves cells untouched
  MethodResultMatrix single = hand_matrix();
  single.columns.resize(1);
  single.labels.resize(1);
  EXPECT_DOUBLE_EQ(per_cell_means(single).rows[0].means[2], 0.3);
}

TEST(Aggregates, GrandMeanConsistency) {
  const auto mrm = hand_matrix();
  const CellTable cells = per_cell_means(mrm);
  for (std::size_t method = 0; method < 5; ++method) {
    double matrix_mean = 0.0;
    for (const auto& col : mrm.columns) matrix_mean += col[method];
    matrix_mean /= static_cast<double>(mrm.columns.size());
    EXPECT_NEAR(cells.avg_row[method], matrix_mean, 1e-12);
  }
}

}  // namespace
}  // namespace jroc
