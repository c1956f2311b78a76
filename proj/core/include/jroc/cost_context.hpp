#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "jroc/dataset.hpp"

namespace jroc {

class ConfusionMatrix;

/// An operating context: per-attribute test costs, a misclassification cost
/// matrix (rows = predicted class, columns = actual class, zero diagonal),
/// and the trade-off weight alpha in [0,1]. Immutable once validated.
struct CostContext {
  std::vector<double> test_costs;               // length m, each >= 0
  std::vector<std::vector<double>> misclass;    // c x c, rows = predicted
  double alpha = 0.5;

  std::size_t feature_count() const { return test_costs.size(); }
  std::size_t class_count() const { return misclass.size(); }

  /// Throws std::invalid_argument on any violated invariant.
  void validate() const;
};

/// One evaluated (test cost, misclassification cost) pair with its
/// provenance: which model and which feature configuration produced it.
struct CostPoint {
  double tc = 0.0;
  double mc = 0.0;
  std::string model_id;
  FeatureConfig config;
};

/// Test costs all 1/m, off-diagonal misclassification costs all c/(c-1),
/// zero diagonal, alpha = 0.5.
CostContext uniform_context(std::size_t m, std::size_t c);

/// Starts from the uniform context and multiplies every test cost and every
/// off-diagonal matrix entry by an independent k = exp(beta*(u-0.5)) with
/// u ~ Uniform(0,1). Draw order: the m test-cost multipliers in index order,
/// then one multiplier per off-diagonal matrix entry in row-major order.
/// Afterwards the test costs are normalised to sum 1 and the matrix to sum
/// c^2. beta = 0 returns the uniform context exactly.
CostContext random_context(std::size_t m, std::size_t c, double beta,
                           std::uint64_t seed);

/// Frobenius product of the confusion matrix and the cost matrix, divided by
/// the number of evaluated instances.
double avg_misclassification_cost(const ConfusionMatrix& cm, const CostContext& ctx);

/// Sum of the test costs of the active features.
double test_cost_of_config(const FeatureConfig& cfg, const CostContext& ctx);

/// alpha*mc + (1-alpha)*tc.
double joint_cost(double mc, double tc, double alpha);

/// JSON context file: {"test_costs":[...], "misclass":[[...],...], "alpha":0.5}
CostContext load_context(const std::filesystem::path& path);
std::string serialize_context(const CostContext& ctx);

/// Builds a context from a CLI spec: "uniform", "random:beta=B,seed=S"
/// (seed optional, falls back to `default_seed`), or "file:PATH".
CostContext context_from_spec(const std::string& spec, std::size_t m, std::size_t c,
                              std::uint64_t default_seed);

}  // namespace jroc
