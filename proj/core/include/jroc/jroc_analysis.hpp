#pragma once

#include <span>
#include <string>
#include <utility>
#include <vector>

#include "jroc/cost_context.hpp"

namespace jroc {

/// Lower-left convex frontier of a point cloud in (tc, mc) space, ordered by
/// ascending tc and descending mc. Every vertex is one of the input points;
/// no input point lies strictly below-left of the frontier.
struct Hull {
  std::vector<CostPoint> vertices;
};

/// Maximal alpha interval on which one model attains the minimum joint cost.
struct DominanceRegion {
  double alpha_lo = 0.0;
  double alpha_hi = 1.0;
  std::string model_id;
};

/// Signed slope -(1-alpha)/alpha of the equal-joint-cost lines in (tc, mc)
/// coordinates, for alpha in (0,1]. alpha = 0 signals a vertical isometric
/// by returning -infinity; callers special-case it.
double isometric_slope(double alpha);

/// The point minimising joint_cost(mc, tc, alpha); equivalently the leftmost
/// intercept of the isometric family. Ties resolve to the smaller tc, then
/// the lexicographically smaller config bitstring, then the smaller model_id.
const CostPoint& best_point_for_alpha(std::span<const CostPoint> points, double alpha);

/// Convenience: the joint cost of the selected point.
double best_joint_cost(std::span<const CostPoint> points, double alpha);

/// Lower-left convex hull. Computed as a planar convex hull over the points
/// plus three far sentinels (at 1e4 times the largest coordinate), trimmed
/// back to the chain between the sentinels; sentinels are never emitted.
Hull convex_hull(std::span<const CostPoint> points);

/// Partition of alpha in [0,1] into maximal intervals where a single model's
/// hull attains the minimum joint cost. At boundary alphas (simultaneous
/// minima) the lexicographically smaller model_id wins.
std::vector<DominanceRegion> dominance_regions(
    const std::vector<std::pair<std::string, Hull>>& hulls);

/// The winning model at one alpha, with the boundary tie rule above.
const std::string& best_model_at(const std::vector<std::pair<std::string, Hull>>& hulls,
                                 double alpha);

}  // namespace jroc
