#include "jroc/jroc_analysis.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <limits>

#include "jroc/rng.hpp"
#include "test_util.hpp"

namespace jroc {
namespace {

CostPoint pt(double tc, double mc, std::string id = "m",
             const std::string& bits = "") {
  CostPoint p;
  p.tc = tc;
  p.mc = mc;
  p.model_id = std::move(id);
  p.config = bits.empty() ? FeatureConfig::all_active(2)
                          : FeatureConfig::from_bitstring(bits);
  return p;
}

std::vector<CostPoint> random_points(Rng& rng, std::size_t count) {
  std::vector<CostPoint> points;
  points.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    CostPoint p;
    p.tc = rng.next_unit() * 3.0;
    p.mc = rng.next_unit() * 3.0;
    p.model_id = "m";
    p.config = FeatureConfig::from_bits(i, 8);
    points.push_back(std::move(p));
  }
  return points;
}

// independent oracle for hull checks
double brute_force_min_jc(std::span<const CostPoint> points, double alpha) {
  double best = std::numeric_limits<double>::infinity();
  for (const auto& p : points) best = std::min(best, joint_cost(p.mc, p.tc, alpha));
  return best;
}

TEST(IsometricSlope, KnownValues) {
  EXPECT_DOUBLE_EQ(isometric_slope(0.5), -1.0);
  EXPECT_DOUBLE_EQ(isometric_slope(1.0), 0.0);
  EXPECT_TRUE(std::isinf(isometric_slope(0.0)));
  EXPECT_LT(isometric_slope(0.0), 0.0);
  EXPECT_THROW(isometric_slope(-0.1), std::invalid_argument);
  EXPECT_THROW(isometric_slope(1.1), std::invalid_argument);
}

TEST(IsometricSlope, MagnitudeDecreasesInAlpha) {
  double prev = std::abs(isometric_slope(0.05));
  for (double alpha = 0.1; alpha <= 1.0; alpha += 0.05) {
    const double cur = std::abs(isometric_slope(alpha));
    EXPECT_LT(cur, prev);
    prev = cur;
  }
}

TEST(BestPoint, ThreePointExample) {
  // brute-force JC at alpha=0.5: {0.5, 0.5, 0.2}
  const std::vector<CostPoint> points{pt(0, 1), pt(1, 0), pt(0.2, 0.2)};
  const CostPoint& best = best_point_for_alpha(points, 0.5);
  EXPECT_DOUBLE_EQ(best.tc, 0.2);
  EXPECT_DOUBLE_EQ(best.mc, 0.2);
}

TEST(BestPoint, AlphaExtremes) {
  const std::vector<CostPoint> points{pt(0.1, 5), pt(3, 0.3), pt(1, 1)};
  EXPECT_DOUBLE_EQ(best_point_for_alpha(points, 1.0).mc, 0.3);
  EXPECT_DOUBLE_EQ(best_point_for_alpha(points, 0.0).tc, 0.1);
}

TEST(BestPoint, TieRules) {
  // equal JC at alpha=0.5; smaller tc wins
  const std::vector<CostPoint> a{pt(1.0, 0.0), pt(0.0, 1.0)};
  EXPECT_DOUBLE_EQ(best_point_for_alpha(a, 0.5).tc, 0.0);
  // identical coordinates; lexicographically smaller bitstring wins
  const std::vector<CostPoint> b{pt(1, 1, "m", "10"), pt(1, 1, "m", "01")};
  EXPECT_EQ(best_point_for_alpha(b, 0.5).config.bitstring(), "01");
  EXPECT_THROW(best_point_for_alpha({}, 0.5), std::invalid_argument);
}

TEST(BestPoint, ScalingInvariance) {
  Rng rng(7);
  for (int iter = 0; iter < 30; ++iter) {
    const auto points = random_points(rng, 20);
    const double alpha = rng.next_unit();
    const double lambda = 0.5 + 4.0 * rng.next_unit();
    std::vector<CostPoint> scaled = points;
    for (auto& p : scaled) {
      p.tc *= lambda;
      p.mc *= lambda;
    }
    const CostPoint& chosen = best_point_for_alpha(points, alpha);
    const CostPoint& chosen_scaled = best_point_for_alpha(scaled, alpha);
    EXPECT_EQ(chosen.config, chosen_scaled.config);
  }
}

TEST(ConvexHull, CollinearPointsKeepEndpoints) {
  const std::vector<CostPoint> points{pt(0, 2), pt(1, 1), pt(2, 0)};
  const Hull hull = convex_hull(points);
  ASSERT_EQ(hull.vertices.size(), 2u);
  EXPECT_DOUBLE_EQ(hull.vertices[0].tc, 0.0);
  EXPECT_DOUBLE_EQ(hull.vertices[1].tc, 2.0);
}

TEST(ConvexHull, DominatedPointExcluded) {
  const std::vector<CostPoint> points{pt(0, 1), pt(1, 0), pt(1, 1)};
  const Hull hull = convex_hull(points);
  ASSERT_EQ(hull.vertices.size(), 2u);
  EXPECT_DOUBLE_EQ(hull.vertices[0].tc, 0.0);
  EXPECT_DOUBLE_EQ(hull.vertices[0].mc, 1.0);
  EXPECT_DOUBLE_EQ(hull.vertices[1].tc, 1.0);
  EXPECT_DOUBLE_EQ(hull.vertices[1].mc, 0.0);
}

TEST(ConvexHull, SingletonAndOrder) {
  const std::vector<CostPoint> one{pt(0.4, 0.7)};
  EXPECT_EQ(convex_hull(one).vertices.size(), 1u);

  Rng rng(11);
  const auto points = random_points(rng, 40);
  const Hull hull = convex_hull(points);
  for (std::size_t i = 1; i < hull.vertices.size(); ++i) {
    EXPECT_LT(hull.vertices[i - 1].tc, hull.vertices[i].tc);
    EXPECT_GT(hull.vertices[i - 1].mc, hull.vertices[i].mc);
  }
}

TEST(ConvexHull, VerticesAreInputPoints) {
  Rng rng(13);
  const auto points = random_points(rng, 50);
  for (const CostPoint& v : convex_hull(points).vertices) {
    bool found = false;
    for (const CostPoint& p : points)
      if (p.tc == v.tc && p.mc == v.mc && p.config == v.config) found = true;
    EXPECT_TRUE(found);
  }
}

TEST(ConvexHull, SelectionMatchesBruteForce) {
  Rng rng(17);
  for (int iter = 0; iter < 200; ++iter) {
    const auto points = random_points(rng, 1 + rng.next_below(64));
    const Hull hull = convex_hull(points);
    for (int a = 0; a <= 20; ++a) {
      const double alpha = a / 20.0;
      EXPECT_NEAR(best_joint_cost(hull.vertices, alpha), brute_force_min_jc(points, alpha),
                  1e-12);
    }
  }
}

TEST(DominanceRegions, SingleModelCoversEverything) {
  const Hull h{{pt(0.5, 0.5, "only")}};
  const auto regions = dominance_regions({{"only", h}});
  ASSERT_EQ(regions.size(), 1u);
  EXPECT_DOUBLE_EQ(regions[0].alpha_lo, 0.0);
  EXPECT_DOUBLE_EQ(regions[0].alpha_hi, 1.0);
  EXPECT_EQ(regions[0].model_id, "only");
}

TEST(DominanceRegions, TwoModelCrossover) {
  // JC_A(alpha) = alpha, JC_B(alpha) = 1 - alpha; they cross at 0.5
  const Hull a{{pt(0, 1, "A")}};
  const Hull b{{pt(1, 0, "B")}};
  const auto regions = dominance_regions({{"A", a}, {"B", b}});
  ASSERT_EQ(regions.size(), 2u);
  EXPECT_EQ(regions[0].model_id, "A");
  EXPECT_DOUBLE_EQ(regions[0].alpha_lo, 0.0);
  EXPECT_DOUBLE_EQ(regions[0].alpha_hi, 0.5);
  EXPECT_EQ(regions[1].model_id, "B");
  EXPECT_DOUBLE_EQ(regions[1].alpha_hi, 1.0);
  // boundary tie goes to the lexicographically smaller id
  EXPECT_EQ(best_model_at({{"A", a}, {"B", b}}, 0.5), "A");
}

TEST(DominanceRegions, IdenticalHullsTieToSmallerId) {
  const Hull h{{pt(0.3, 0.4, "x")}};
  const auto regions = dominance_regions({{"zeta", h}, {"alpha", h}});
  ASSERT_EQ(regions.size(), 1u);
  EXPECT_EQ(regions[0].model_id, "alpha");
}

TEST(DominanceRegions, PartitionCoversUnitInterval) {
  Rng rng(23);
  for (int iter = 0; iter < 25; ++iter) {
    std::vector<std::pair<std::string, Hull>> hulls;
    const std::size_t n_models = 2 + rng.next_below(3);
    for (std::size_t i = 0; i < n_models; ++i) {
      const auto points = random_points(rng, 5 + rng.next_below(15));
      hulls.emplace_back("model" + std::to_string(i), convex_hull(points));
    }
    const auto regions = dominance_regions(hulls);
    ASSERT_FALSE(regions.empty());
    EXPECT_DOUBLE_EQ(regions.front().alpha_lo, 0.0);
    EXPECT_DOUBLE_EQ(regions.back().alpha_hi, 1.0);
    for (std::size_t i = 1; i < regions.size(); ++i) {
      EXPECT_DOUBLE_EQ(regions[i - 1].alpha_hi, regions[i].alpha_lo);
      EXPECT_NE(regions[i - 1].model_id, regions[i].model_id);
    }
    // winner at each midpoint is really the JC minimiser
    for (const auto& region : regions) {
      const double mid = (region.alpha_lo + region.alpha_hi) / 2.0;
      double best = std::numeric_limits<double>::infinity();
      std::string best_id;
      for (const auto& [id, hull] : hulls) {
        const double jc = best_joint_cost(hull.vertices, mid);
        if (jc < best) {
          best = jc;
          best_id = id;
        }
      }
      EXPECT_EQ(region.model_id, best_id);
    }
  }
}

}  // namespace
}  // namespace jroc
