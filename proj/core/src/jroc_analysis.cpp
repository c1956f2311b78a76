#include "jroc/jroc_analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>

#include "jroc/errors.hpp"

namespace jroc {

namespace {

struct Pt {
  double x, y;
  int source;  // index into the input span, -1/-2/-3 for sentinels
};

double cross(const Pt& o, const Pt& a, const Pt& b) {
  return (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x);
}

// Monotone chain; returns vertices in counter-clockwise order, collinear
// points dropped.
std::vector<Pt> planar_hull(std::vector<Pt> pts) {
  std::sort(pts.begin(), pts.end(), [](const Pt& a, const Pt& b) {
    return a.x != b.x ? a.x < b.x : a.y < b.y;
  });
  pts.erase(std::unique(pts.begin(), pts.end(),
                        [](const Pt& a, const Pt& b) { return a.x == b.x && a.y == b.y; }),
            pts.end());
  const std::size_t n = pts.size();
  if (n <= 2) return pts;
  std::vector<Pt> hull(2 * n);
  std::size_t k = 0;
  for (std::size_t i = 0; i < n; ++i) {  // lower chain
    while (k >= 2 && cross(hull[k - 2], hull[k - 1], pts[i]) <= 0) --k;
    hull[k++] = pts[i];
  }
  const std::size_t lower = k + 1;
  for (std::size_t i = n - 1; i-- > 0;) {  // upper chain
    while (k >= lower && cross(hull[k - 2], hull[k - 1], pts[i]) <= 0) --k;
    hull[k++] = pts[i];
  }
  hull.resize(k - 1);
  return hull;
}

bool point_preferred(const CostPoint& a, const CostPoint& b) {
  if (a.tc != b.tc) return a.tc < b.tc;
  const std::string abits = a.config.bitstring();
  const std::string bbits = b.config.bitstring();
  if (abits != bbits) return abits < bbits;
  return a.model_id < b.model_id;
}

// joint cost of a point as a line in alpha: tc + alpha*(mc - tc)
double jc_at(const CostPoint& p, double alpha) {
  return joint_cost(p.mc, p.tc, alpha);
}

double hull_jc_at(const Hull& h, double alpha) {
  double best = std::numeric_limits<double>::infinity();
  for (const CostPoint& p : h.vertices) best = std::min(best, jc_at(p, alpha));
  return best;
}

}  // namespace

double isometric_slope(double alpha) {
  if (!(alpha >= 0.0 && alpha <= 1.0))
    throw std::invalid_argument("alpha must be in [0,1]");
  if (alpha == 0.0) return -std::numeric_limits<double>::infinity();
  return -(1.0 - alpha) / alpha;
}

const CostPoint& best_point_for_alpha(std::span<const CostPoint> points, double alpha) {
  if (points.empty()) throw std::invalid_argument("cannot select from an empty point set");
  if (!(alpha >= 0.0 && alpha <= 1.0))
    throw std::invalid_argument("alpha must be in [0,1]");
  const CostPoint* best = &points[0];
  double best_jc = jc_at(*best, alpha);
  for (const CostPoint& p : points.subspan(1)) {
    const double jc = jc_at(p, alpha);
    if (jc < best_jc || (jc == best_jc && point_preferred(p, *best))) {
      best = &p;
      best_jc = jc;
    }
  }
  return *best;
}

double best_joint_cost(std::span<const CostPoint> points, double alpha) {
  const CostPoint& p = best_point_for_alpha(points, alpha);
  return jc_at(p, alpha);
}

Hull convex_hull(std::span<const CostPoint> points) {
  if (points.empty()) throw std::invalid_argument("cannot hull an empty point set");

  // Duplicate coordinates collapse to the tie-rule-preferred point so the
  // emitted vertices are deterministic.
  std::map<std::pair<double, double>, int> dedup;
  for (std::size_t i = 0; i < points.size(); ++i) {
    const auto key = std::make_pair(points[i].tc, points[i].mc);
    auto [it, inserted] = dedup.try_emplace(key, static_cast<int>(i));
    if (!inserted && point_preferred(points[i], points[static_cast<std::size_t>(it->second)]))
      it->second = static_cast<int>(i);
  }

  double max_coord = 1.0;
  for (const CostPoint& p : points) max_coord = std::max({max_coord, p.tc, p.mc});
  const double big = 1e4 * max_coord;

  std::vector<Pt> pts;
  pts.reserve(dedup.size() + 3);
  for (const auto& [key, idx] : dedup) pts.push_back(Pt{key.first, key.second, idx});
  pts.push_back(Pt{0.0, big, -1});
  pts.push_back(Pt{big, big, -2});
  pts.push_back(Pt{big, 0.0, -3});

  const std::vector<Pt> hull = planar_hull(std::move(pts));

  // Counter-clockwise, the chain runs (0,big) -> frontier -> (big,0); the
  // frontier vertices come out in ascending tc / descending mc order.
  std::size_t start = 0;
  for (std::size_t i = 0; i < hull.size(); ++i)
    if (hull[i].source == -1) start = i;

  Hull out;
  for (std::size_t step = 1; step < hull.size(); ++step) {
    const Pt& v = hull[(start + step) % hull.size()];
    if (v.source < 0) break;
    out.vertices.push_back(points[static_cast<std::size_t>(v.source)]);
  }
  return out;
}

const std::string& best_model_at(const std::vector<std::pair<std::string, Hull>>& hulls,
                                 double alpha) {
  if (hulls.empty()) throw std::invalid_argument("need at least one hull");
  const std::string* best = nullptr;
  double best_jc = std::numeric_limits<double>::infinity();
  for (const auto& [id, hull] : hulls) {
    const double jc = hull_jc_at(hull, alpha);
    if (best == nullptr || jc < best_jc || (jc == best_jc && id < *best)) {
      best = &id;
      best_jc = jc;
    }
  }
  return *best;
}

std::vector<DominanceRegion> dominance_regions(
    const std::vector<std::pair<std::string, Hull>>& hulls) {
  if (hulls.empty()) throw std::invalid_argument("need at least one hull");

  // Breakpoint candidates: intersections of every pair of vertex lines
  // jc(alpha) = tc + alpha*(mc - tc).
  std::vector<std::pair<double, double>> lines;  // (intercept tc, slope mc-tc)
  for (const auto& [id, hull] : hulls)
    for (const CostPoint& p : hull.vertices) lines.emplace_back(p.tc, p.mc - p.tc);

  std::vector<double> cuts{0.0, 1.0};
  for (std::size_t i = 0; i < lines.size(); ++i) {
    for (std::size_t j = i + 1; j < lines.size(); ++j) {
      const double dslope = lines[i].second - lines[j].second;
      if (dslope == 0.0) continue;
      const double a = (lines[j].first - lines[i].first) / dslope;
      if (a > 0.0 && a < 1.0) cuts.push_back(a);
    }
  }
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

  std::vector<DominanceRegion> regions;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    const double mid = (cuts[i] + cuts[i + 1]) / 2.0;
    const std::string& winner = best_model_at(hulls, mid);
    if (!regions.empty() && regions.back().model_id == winner) {
      regions.back().alpha_hi = cuts[i + 1];
    } else {
      regions.push_back(DominanceRegion{cuts[i], cuts[i + 1], winner});
    }
  }
  return regions;
}

}  // namespace jroc
