#pragma once

#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "jroc/dataset.hpp"

namespace jroc {

/// Schema captured at training time, used to reject evaluation against a
/// dataset the model was not trained for.
struct PredictorSchema {
  std::size_t feature_count = 0;
  std::size_t class_count = 0;
  std::vector<FeatureKind> kinds;

  bool operator==(const PredictorSchema&) const = default;
  static PredictorSchema of(const Dataset& d);
};

/// A trained crisp classifier. Implementations must tolerate any pattern of
/// missing values at prediction time (including all-missing) and must be
/// deterministic once trained. Trained predictors are immutable; concurrent
/// predict() calls are safe.
class Predictor {
 public:
  virtual ~Predictor() = default;

  /// Returns a class index in [0, class_count). Never fails on missing cells.
  virtual int predict(std::span<const FeatureValue> cells) const = 0;

  virtual const std::string& model_id() const = 0;
  virtual const PredictorSchema& schema() const = 0;
};

/// c x c prediction counts; rows = predicted class, columns = actual class.
class ConfusionMatrix {
 public:
  explicit ConfusionMatrix(std::size_t class_count);

  void add(int predicted, int actual);
  long long count(std::size_t predicted, std::size_t actual) const {
    return counts_[predicted * c_ + actual];
  }
  std::size_t class_count() const { return c_; }
  long long total() const { return total_; }

 private:
  std::size_t c_;
  std::vector<long long> counts_;
  long long total_ = 0;
};

/// Always predicts the most frequent training class (ties to the lowest
/// class index).
std::unique_ptr<Predictor> train_majority(const Dataset& d);

/// k-nearest neighbours with a missing-aware distance: numeric dimensions
/// are min-max scaled by the training range, nominal dimensions contribute
/// 0/1, dimensions missing on either side are skipped, and the sum is
/// rescaled by m/used so sparse instances are not favoured. Neighbour ties
/// break to the lower training-row index, vote ties to the lowest class
/// index. A query sharing no usable dimension with any training row falls
/// back to the training majority class.
std::unique_ptr<Predictor> train_knn(const Dataset& d, int k);

/// Greedy information-gain decision tree; numeric attributes split at value
/// midpoints, nominal attributes split multiway. Rows with a missing split
/// value follow the branch that received the most training rows, and so do
/// prediction-time instances missing the split attribute.
std::unique_ptr<Predictor> train_tree(const Dataset& d, int max_depth);

/// Bagged depth-capped trees on bootstrap resamples of size n. Round r uses
/// the seed derive_seed(seed, {r}); prediction is a plurality vote with ties
/// to the lowest class index.
std::unique_ptr<Predictor> train_bagging(const Dataset& d, int rounds, int max_depth,
                                         std::uint64_t seed);

/// Same as train_bagging but with explicit per-round bootstrap seeds.
std::unique_ptr<Predictor> train_bagging_with_seeds(const Dataset& d,
                                                    std::span<const std::uint64_t> round_seeds,
                                                    int max_depth,
                                                    const std::string& model_id);

/// Builds a predictor from a CLI spec string: "majority", "knn:k=<int>",
/// "tree:depth=<int>", "bag:rounds=<int>,depth=<int>". The spec string is
/// the resulting model_id. `seed` feeds the stochastic trainers.
std::unique_ptr<Predictor> train_from_spec(const Dataset& d, const std::string& spec,
                                           std::uint64_t seed);

/// Counts predictions of `p` over every row of `d`. Throws on schema
/// mismatch.
ConfusionMatrix evaluate_confusion(const Predictor& p, const Dataset& d);

}  // namespace jroc
