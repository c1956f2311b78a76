#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "jroc/cost_context.hpp"
#include "jroc/dataset.hpp"
#include "jroc/predictors.hpp"

namespace jroc {

enum class SearchMethodKind { Full, BMC, BTC, BJC, RND };

/// Metric steering a backward elimination pass.
enum class BackwardGuide { MC, TC, JC };

const char* search_method_name(SearchMethodKind kind);
SearchMethodKind search_method_from_name(const std::string& name);

/// Evaluated configurations for one model under one context.
struct PointSet {
  std::vector<CostPoint> points;
  SearchMethodKind method = SearchMethodKind::Full;
  std::string model_id;
};

/// Number of configurations the backward methods evaluate: m(m+1)/2 + 1.
/// Also the default Monte Carlo sample size, which never exceeds 2^m.
std::uint64_t quadratic_point_count(std::size_t m);

/// mc = average misclassification cost of `p` on the masked validation set,
/// tc = test cost of the active attributes. Pure: identical inputs give
/// identical points.
CostPoint evaluate_config(const Predictor& p, const Dataset& validation,
                          const FeatureConfig& cfg, const CostContext& ctx);

/// Every one of the 2^m configurations, ordered by number of removed
/// attributes ascending and lexicographically within each level (the
/// all-active configuration comes first). `jobs` bounds concurrent
/// evaluations; the output order never depends on it.
PointSet full_enumeration(const Predictor& p, const Dataset& validation,
                          const CostContext& ctx, std::size_t max_features = 20,
                          int jobs = 1);

/// Greedy backward elimination: starting from the all-active pivot, each of
/// the m rounds evaluates every configuration that deactivates exactly one
/// currently-active attribute and moves the pivot to the one minimising the
/// guide metric (ties deactivate the lowest attribute index). All evaluated
/// points are returned: m(m+1)/2 + 1 of them.
PointSet backward_guided(const Predictor& p, const Dataset& validation,
                         const CostContext& ctx, BackwardGuide guide);

/// `sample_size` distinct configurations drawn uniformly without replacement
/// from the full lattice by a seeded generator.
PointSet monte_carlo(const Predictor& p, const Dataset& validation,
                     const CostContext& ctx, std::uint64_t sample_size,
                     std::uint64_t seed);

}  // namespace jroc
