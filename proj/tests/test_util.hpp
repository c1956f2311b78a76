#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "jroc/dataset.hpp"
#include "jroc/predictors.hpp"
#include "jroc/rng.hpp"

namespace jroc::testing {

/// Numeric-only dataset from a value grid; std::nullopt marks a missing cell.
inline Dataset make_numeric_dataset(
    const std::vector<std::vector<std::optional<double>>>& grid,
    const std::vector<int>& labels, std::size_t class_count) {
  std::vector<FeatureMeta> features(grid[0].size());
  for (std::size_t j = 0; j < features.size(); ++j) {
    features[j].name = "f" + std::to_string(j);
    features[j].kind = FeatureKind::Numeric;
  }
  std::vector<std::string> class_labels;
  for (std::size_t i = 0; i < class_count; ++i)
    class_labels.push_back("c" + std::to_string(i));
  std::vector<Row> rows;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    Row row;
    for (const auto& cell : grid[i]) {
      row.cells.push_back(cell ? FeatureValue::numeric(*cell) : FeatureValue::missing());
    }
    row.label = labels[i];
    rows.push_back(std::move(row));
  }
  return Dataset(std::move(features), std::move(class_labels), std::move(rows));
}

/// Prediction function fixed at construction; lets tests drive the search
/// and analysis modules without a real trainer.
class StubPredictor final : public Predictor {
 public:
  using Fn = std::function<int(std::span<const FeatureValue>)>;

  StubPredictor(PredictorSchema schema, int fixed_class, std::string id = "stub")
      : schema_(std::move(schema)),
        fn_([fixed_class](std::span<const FeatureValue>) { return fixed_class; }),
        id_(std::move(id)) {}
  StubPredictor(PredictorSchema schema, Fn fn, std::string id = "stub")
      : schema_(std::move(schema)), fn_(std::move(fn)), id_(std::move(id)) {}

  int predict(std::span<const FeatureValue> cells) const override { return fn_(cells); }
  const std::string& model_id() const override { return id_; }
  const PredictorSchema& schema() const override { return schema_; }

 private:
  PredictorSchema schema_;
  Fn fn_;
  std::string id_;
};

/// Random numeric dataset whose labels correlate with a random linear score
/// of the features, so real trainers have signal to pick up.
inline Dataset random_dataset(Rng& rng, std::size_t m, std::size_t n, std::size_t c,
                              double missing_rate = 0.0) {
  std::vector<std::vector<std::optional<double>>> grid(
      n, std::vector<std::optional<double>>(m));
  std::vector<double> weights(m);
  for (auto& w : weights) w = rng.next_unit() * 2.0 - 1.0;
  std::vector<int> labels(n);
  std::vector<double> scores(n);
  for (std::size_t i = 0; i < n; ++i) {
    double score = 0.0;
    for (std::size_t j = 0; j < m; ++j) {
      const double v = rng.next_unit();
      grid[i][j] = v;
      score += weights[j] * v;
    }
    scores[i] = score + 0.2 * (rng.next_unit() - 0.5);
  }
  // threshold-by-quantile keeps every class populated
  std::vector<double> sorted = scores;
  std::sort(sorted.begin(), sorted.end());
  for (std::size_t i = 0; i < n; ++i) {
    std::size_t cls = 0;
    for (std::size_t k = 1; k < c; ++k) {
      if (scores[i] >= sorted[k * n / c]) cls = k;
    }
    labels[i] = static_cast<int>(cls);
  }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < m; ++j)
      if (rng.next_unit() < missing_rate) grid[i][j] = std::nullopt;
  // guarantee at least two classes appear
  labels[0] = 0;
  labels[n - 1] = static_cast<int>(c - 1);
  return make_numeric_dataset(grid, labels, c);
}

}  // namespace jroc::testing
