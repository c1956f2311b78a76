#include "jroc/cost_context.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "jroc/errors.hpp"
#include "jroc/predictors.hpp"
#include "jroc/rng.hpp"

namespace jroc {

void CostContext::validate() const {
  if (test_costs.empty()) throw std::invalid_argument("context needs test costs");
  if (misclass.size() < 2) throw std::invalid_argument("context needs at least 2 classes");
  for (double t : test_costs) {
    if (!(t >= 0.0) || !std::isfinite(t))
      throw std::invalid_argument("test costs must be finite and >= 0");
  }
  const std::size_t c = misclass.size();
  for (std::size_t p = 0; p < c; ++p) {
    if (misclass[p].size() != c)
      throw std::invalid_argument("misclassification cost matrix must be square");
    for (std::size_t a = 0; a < c; ++a) {
      const double v = misclass[p][a];
      if (!std::isfinite(v)) throw std::invalid_argument("cost matrix entries must be finite");
      if (p == a && v != 0.0)
        throw std::invalid_argument("cost matrix diagonal must be zero");
      if (p != a && v < 0.0)
        throw std::invalid_argument("cost matrix entries must be >= 0");
    }
  }
  if (!(alpha >= 0.0 && alpha <= 1.0))
    throw std::invalid_argument("alpha must be in [0,1]");
}

CostContext uniform_context(std::size_t m, std::size_t c) {
  if (m < 1) throw std::invalid_argument("uniform_context: m must be >= 1");
  if (c < 2) throw std::invalid_argument("uniform_context: c must be >= 2");
  CostContext ctx;
  ctx.test_costs.assign(m, 1.0 / static_cast<double>(m));
  const double off = static_cast<double>(c) / static_cast<double>(c - 1);
  ctx.misclass.assign(c, std::vector<double>(c, off));
  for (std::size_t i = 0; i < c; ++i) ctx.misclass[i][i] = 0.0;
  ctx.alpha = 0.5;
  return ctx;
}

CostContext random_context(std::size_t m, std::size_t c, double beta,
                           std::uint64_t seed) {
  if (beta < 0.0) throw std::invalid_argument("random_context: beta must be >= 0");
  CostContext ctx = uniform_context(m, c);
  if (beta == 0.0) return ctx;  // k = e^0 = 1 everywhere, normalisation is identity

  Rng rng(seed);
  for (std::size_t j = 0; j < m; ++j) {
    ctx.test_costs[j] *= std::exp(beta * (rng.next_unit() - 0.5));
  }
  for (std::size_t p = 0; p < c; ++p) {
    for (std::size_t a = 0; a < c; ++a) {
      if (p == a) continue;  // diagonal stays 0, no draw consumed
      ctx.misclass[p][a] *= std::exp(beta * (rng.next_unit() - 0.5));
    }
  }

  double t_sum = 0.0;
  for (double t : ctx.test_costs) t_sum += t;
  for (double& t : ctx.test_costs) t /= t_sum;

  double m_sum = 0.0;
  for (const auto& row : ctx.misclass)
    for (double v : row) m_sum += v;
  const double target = static_cast<double>(c) * static_cast<double>(c);
  for (auto& row : ctx.misclass)
    for (double& v : row) v *= target / m_sum;
  return ctx;
}

double avg_misclassification_cost(const ConfusionMatrix& cm, const CostContext& ctx) {
  if (cm.class_count() != ctx.class_count())
    throw std::invalid_argument("confusion matrix and context disagree on class count");
  if (cm.total() < 1) throw std::invalid_argument("confusion matrix is empty");
  double sum = 0.0;
  for (std::size_t p = 0; p < cm.class_count(); ++p)
    for (std::size_t a = 0; a < cm.class_count(); ++a)
      sum += static_cast<double>(cm.count(p, a)) * ctx.misclass[p][a];
  return sum / static_cast<double>(cm.total());
}

double test_cost_of_config(const FeatureConfig& cfg, const CostContext& ctx) {
  if (cfg.size() != ctx.feature_count())
    throw std::invalid_argument("feature config length does not match context");
  double sum = 0.0;
  for (std::size_t j = 0; j < cfg.size(); ++j)
    if (cfg.active(j)) sum += ctx.test_costs[j];
  return sum;
}

double joint_cost(double mc, double tc, double alpha) {
  if (!(alpha >= 0.0 && alpha <= 1.0))
    throw std::invalid_argument("alpha must be in [0,1]");
  return alpha * mc + (1.0 - alpha) * tc;
}

CostContext load_context(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open context file: " + path.string());
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError("context file " + path.string() + ": " + e.what());
  }
  CostContext ctx;
  try {
    ctx.test_costs = j.at("test_costs").get<std::vector<double>>();
    ctx.misclass = j.at("misclass").get<std::vector<std::vector<double>>>();
    ctx.alpha = j.value("alpha", 0.5);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError("context file " + path.string() + ": " + e.what());
  }
  try {
    ctx.validate();
  } catch (const std::invalid_argument& e) {
    throw ParseError("context file " + path.string() + ": " + e.what());
  }
  return ctx;
}

std::string serialize_context(const CostContext& ctx) {
  nlohmann::ordered_json j;
  j["test_costs"] = ctx.test_costs;
  j["misclass"] = ctx.misclass;
  j["alpha"] = ctx.alpha;
  return j.dump(2) + "\n";
}

CostContext context_from_spec(const std::string& spec, std::size_t m, std::size_t c,
                              std::uint64_t default_seed) {
  if (spec == "uniform") return uniform_context(m, c);
  if (spec.rfind("file:", 0) == 0) return load_context(spec.substr(5));
  if (spec.rfind("random", 0) == 0) {
    double beta = 10.0;
    std::uint64_t seed = default_seed;
    if (spec.size() > 6) {
      if (spec[6] != ':') throw std::invalid_argument("bad context spec: " + spec);
      std::stringstream ss(spec.substr(7));
      std::string kv;
      while (std::getline(ss, kv, ',')) {
        auto eq = kv.find('=');
        if (eq == std::string::npos) throw std::invalid_argument("bad context spec: " + spec);
        const std::string key = kv.substr(0, eq);
        const std::string val = kv.substr(eq + 1);
        if (key == "beta") {
          beta = std::stod(val);
        } else if (key == "seed") {
          seed = std::stoull(val);
        } else {
          throw std::invalid_argument("unknown context option '" + key + "' in: " + spec);
        }
      }
    }
    return random_context(m, c, beta, seed);
  }
  throw std::invalid_argument("unknown context spec: " + spec);
}

}  // namespace jroc
