#include "jroc/lattice_search.hpp"

#include <algorithm>
#include <atomic>
#include <cctype>
#include <functional>
#include <thread>
#include <unordered_set>

#include "jroc/errors.hpp"
#include "jroc/rng.hpp"

namespace jroc {

namespace {

// All size-k subsets of {0..m-1} in lexicographic order.
void for_each_combination(std::size_t m, std::size_t k,
                          const std::function<void(const std::vector<std::size_t>&)>& fn) {
  std::vector<std::size_t> idx(k);
  for (std::size_t i = 0; i < k; ++i) idx[i] = i;
  for (;;) {
    fn(idx);
    std::size_t i = k;
    while (i > 0 && idx[i - 1] == m - k + i - 1) --i;
    if (i == 0) break;
    ++idx[i - 1];
    for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
}

std::vector<FeatureConfig> lattice_order_configs(std::size_t m) {
  std::vector<FeatureConfig> configs;
  configs.reserve(static_cast<std::size_t>(1) << m);
  for (std::size_t removed = 0; removed <= m; ++removed) {
    if (removed == 0) {
      configs.push_back(FeatureConfig::all_active(m));
      continue;
    }
    for_each_combination(m, removed, [&](const std::vector<std::size_t>& drop) {
      FeatureConfig cfg = FeatureConfig::all_active(m);
      for (std::size_t j : drop) cfg = cfg.with_inactive(j);
      configs.push_back(std::move(cfg));
    });
  }
  return configs;
}

double guide_value(const CostPoint& pt, BackwardGuide guide, double alpha) {
  switch (guide) {
    case BackwardGuide::MC: return pt.mc;
    case BackwardGuide::TC: return pt.tc;
    case BackwardGuide::JC: return joint_cost(pt.mc, pt.tc, alpha);
  }
  return 0.0;
}

void parallel_evaluate(const Predictor& p, const Dataset& validation,
                       const CostContext& ctx, const std::vector<FeatureConfig>& configs,
                       std::vector<CostPoint>& out, int jobs) {
  out.resize(configs.size());
  if (jobs <= 1 || configs.size() < 2) {
    for (std::size_t i = 0; i < configs.size(); ++i)
      out[i] = evaluate_config(p, validation, configs[i], ctx);
    return;
  }
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= configs.size()) return;
      out[i] = evaluate_config(p, validation, configs[i], ctx);
    }
  };
  const std::size_t n_threads =
      std::min<std::size_t>(static_cast<std::size_t>(jobs), configs.size());
  std::vector<std::thread> pool;
  pool.reserve(n_threads);
  for (std::size_t t = 0; t < n_threads; ++t) pool.emplace_back(worker);
  for (auto& th : pool) th.join();
}

}  // namespace

const char* search_method_name(SearchMethodKind kind) {
  switch (kind) {
    case SearchMethodKind::Full: return "Full";
    case SearchMethodKind::BMC: return "BMC";
    case SearchMethodKind::BTC: return "BTC";
    case SearchMethodKind::BJC: return "BJC";
    case SearchMethodKind::RND: return "RND";
  }
  return "?";
}

SearchMethodKind search_method_from_name(const std::string& name) {
  std::string lower(name);
  std::transform(lower.begin(), lower.end(), lower.begin(),
                 [](unsigned char ch) { return static_cast<char>(std::tolower(ch)); });
  if (lower == "full") return SearchMethodKind::Full;
  if (lower == "bmc") return SearchMethodKind::BMC;
  if (lower == "btc") return SearchMethodKind::BTC;
  if (lower == "bjc") return SearchMethodKind::BJC;
  if (lower == "rnd") return SearchMethodKind::RND;
  throw std::invalid_argument("unknown search method: " + name);
}

std::uint64_t quadratic_point_count(std::size_t m) {
  const std::uint64_t mm = static_cast<std::uint64_t>(m);
  return mm * (mm + 1) / 2 + 1;
}

CostPoint evaluate_config(const Predictor& p, const Dataset& validation,
                          const FeatureConfig& cfg, const CostContext& ctx) {
  const Dataset masked = mask_features(validation, cfg);
  CostPoint pt;
  pt.mc = avg_misclassification_cost(evaluate_confusion(p, masked), ctx);
  pt.tc = test_cost_of_config(cfg, ctx);
  pt.model_id = p.model_id();
  pt.config = cfg;
  return pt;
}

PointSet full_enumeration(const Predictor& p, const Dataset& validation,
                          const CostContext& ctx, std::size_t max_features, int jobs) {
  const std::size_t m = validation.feature_count();
  if (m > max_features)
    throw std::invalid_argument(
        "full enumeration over " + std::to_string(m) + " attributes exceeds the cap of " +
        std::to_string(max_features) +
        "; use an approximation method (bmc/btc/bjc/rnd) instead");
  PointSet set;
  set.method = SearchMethodKind::Full;
  set.model_id = p.model_id();
  parallel_evaluate(p, validation, ctx, lattice_order_configs(m), set.points, jobs);
  return set;
}

PointSet backward_guided(const Predictor& p, const Dataset& validation,
                         const CostContext& ctx, BackwardGuide guide) {
  const std::size_t m = validation.feature_count();
  PointSet set;
  set.method = guide == BackwardGuide::MC   ? SearchMethodKind::BMC
               : guide == BackwardGuide::TC ? SearchMethodKind::BTC
                                            : SearchMethodKind::BJC;
  set.model_id = p.model_id();

  FeatureConfig pivot = FeatureConfig::all_active(m);
  set.points.push_back(evaluate_config(p, validation, pivot, ctx));

  for (std::size_t round = 0; round < m; ++round) {
    FeatureConfig best_cfg;
    double best_value = 0.0;
    bool have_best = false;
    // candidates in ascending attribute order; strict < keeps the first
    // (lowest-index) minimum
    for (std::size_t j = 0; j < m; ++j) {
      if (!pivot.active(j)) continue;
      const FeatureConfig candidate = pivot.with_inactive(j);
      CostPoint pt = evaluate_config(p, validation, candidate, ctx);
      const double value = guide_value(pt, guide, ctx.alpha);
      set.points.push_back(std::move(pt));
      if (!have_best || value < best_value) {
        best_value = value;
        best_cfg = candidate;
        have_best = true;
      }
    }
    pivot = best_cfg;
  }
  return set;
}

PointSet monte_carlo(const Predictor& p, const Dataset& validation,
                     const CostContext& ctx, std::uint64_t sample_size,
                     std::uint64_t seed) {
  const std::size_t m = validation.feature_count();
  if (m > 63) throw std::invalid_argument("monte carlo supports at most 63 attributes");
  const std::uint64_t lattice = static_cast<std::uint64_t>(1) << m;
  if (sample_size < 1 || sample_size > lattice)
    throw std::invalid_argument("sample size must be in [1, 2^m]");

  Rng rng(seed);
  std::vector<std::uint64_t> chosen;
  chosen.reserve(sample_size);
  if (lattice <= (1u << 20)) {
    // partial Fisher-Yates over the whole lattice
    std::vector<std::uint64_t> all(lattice);
    for (std::uint64_t i = 0; i < lattice; ++i) all[i] = i;
    for (std::uint64_t i = 0; i < sample_size; ++i) {
      const std::uint64_t j = i + rng.next_below(lattice - i);
      std::swap(all[i], all[j]);
      chosen.push_back(all[i]);
    }
  } else {
    std::unordered_set<std::uint64_t> seen;
    while (chosen.size() < sample_size) {
      const std::uint64_t bits = rng.next_below(lattice);
      if (seen.insert(bits).second) chosen.push_back(bits);
    }
  }

  PointSet set;
  set.method = SearchMethodKind::RND;
  set.model_id = p.model_id();
  set.points.reserve(sample_size);
  for (std::uint64_t bits : chosen)
    set.points.push_back(evaluate_config(p, validation, FeatureConfig::from_bits(bits, m), ctx));
  return set;
}

}  // namespace jroc
