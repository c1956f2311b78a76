#include "jroc/predictors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "jroc/rng.hpp"

namespace jroc {

namespace {

int majority_class(const std::vector<long long>& counts) {
  int best = 0;
  for (std::size_t i = 1; i < counts.size(); ++i)
    if (counts[i] > counts[static_cast<std::size_t>(best)]) best = static_cast<int>(i);
  return best;
}

std::vector<long long> label_counts(const Dataset& d) {
  std::vector<long long> counts(d.class_count(), 0);
  for (const Row& r : d.rows()) counts[static_cast<std::size_t>(r.label)]++;
  return counts;
}

class PredictorBase : public Predictor {
 public:
  PredictorBase(std::string model_id, PredictorSchema schema)
      : model_id_(std::move(model_id)), schema_(std::move(schema)) {}
  const std::string& model_id() const override { return model_id_; }
  const PredictorSchema& schema() const override { return schema_; }

 private:
  std::string model_id_;
  PredictorSchema schema_;
};

// ---------------------------------------------------------------------------
// majority
// ---------------------------------------------------------------------------

class MajorityPredictor final : public PredictorBase {
 public:
  MajorityPredictor(const Dataset& d)
      : PredictorBase("majority", PredictorSchema::of(d)),
        class_(majority_class(label_counts(d))) {}

  int predict(std::span<const FeatureValue>) const override { return class_; }

 private:
  int class_;
};

// ---------------------------------------------------------------------------
// k-nearest neighbours
// ---------------------------------------------------------------------------

class KnnPredictor final : public PredictorBase {
 public:
  KnnPredictor(const Dataset& d, int k, std::string model_id)
      : PredictorBase(std::move(model_id), PredictorSchema::of(d)),
        k_(k),
        rows_(d.rows()),
        fallback_(majority_class(label_counts(d))),
        class_count_(d.class_count()) {
    const std::size_t m = d.feature_count();
    lo_.assign(m, std::numeric_limits<double>::infinity());
    hi_.assign(m, -std::numeric_limits<double>::infinity());
    for (const Row& r : rows_) {
      for (std::size_t j = 0; j < m; ++j) {
        if (r.cells[j].is_numeric()) {
          lo_[j] = std::min(lo_[j], r.cells[j].numeric_value());
          hi_[j] = std::max(hi_[j], r.cells[j].numeric_value());
        }
      }
    }
  }

  int predict(std::span<const FeatureValue> cells) const override {
    const std::size_t m = schema().feature_count;
    std::vector<std::pair<double, std::size_t>> neighbours;  // (distance, row index)
    neighbours.reserve(rows_.size());
    for (std::size_t i = 0; i < rows_.size(); ++i) {
      const Row& r = rows_[i];
      double sum = 0.0;
      std::size_t used = 0;
      for (std::size_t j = 0; j < m; ++j) {
        const FeatureValue& a = cells[j];
        const FeatureValue& b = r.cells[j];
        if (a.is_missing() || b.is_missing()) continue;
        double dj = 0.0;
        if (schema().kinds[j] == FeatureKind::Numeric) {
          const double range = hi_[j] - lo_[j];
          if (range > 0.0) dj = std::abs(a.numeric_value() - b.numeric_value()) / range;
        } else {
          dj = a.category() == b.category() ? 0.0 : 1.0;
        }
        sum += dj;
        ++used;
      }
      if (used == 0) continue;  // no shared dimension, row unusable
      neighbours.emplace_back(sum * (static_cast<double>(m) / static_cast<double>(used)), i);
    }
    if (neighbours.empty()) return fallback_;

    const std::size_t take = std::min(static_cast<std::size_t>(k_), neighbours.size());
    std::partial_sort(neighbours.begin(), neighbours.begin() + static_cast<std::ptrdiff_t>(take),
                      neighbours.end());
    std::vector<long long> votes(class_count_, 0);
    for (std::size_t i = 0; i < take; ++i)
      votes[static_cast<std::size_t>(rows_[neighbours[i].second].label)]++;
    return majority_class(votes);
  }

 private:
  int k_;
  std::vector<Row> rows_;
  std::vector<double> lo_, hi_;  // per-feature training range (numeric only)
  int fallback_;
  std::size_t class_count_;
};

// ---------------------------------------------------------------------------
// information-gain decision tree
// ---------------------------------------------------------------------------

struct TreeNode {
  bool leaf = true;
  int leaf_class = 0;
  std::size_t feature = 0;
  bool numeric_split = true;
  double threshold = 0.0;
  std::vector<int> children;      // numeric: {left, right}; nominal: per category
  int majority_child = 0;         // index into children
};

class TreeBuilder {
 public:
  TreeBuilder(const Dataset& d, int max_depth) : d_(d), max_depth_(max_depth) {}

  std::vector<TreeNode> build() {
    std::vector<std::size_t> all(d_.row_count());
    for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
    grow(all, 0);
    return std::move(nodes_);
  }

 private:
  static double entropy(const std::vector<long long>& counts, long long total) {
    if (total == 0) return 0.0;
    double h = 0.0;
    for (long long c : counts) {
      if (c == 0) continue;
      const double p = static_cast<double>(c) / static_cast<double>(total);
      h -= p * std::log2(p);
    }
    return h;
  }

  std::vector<long long> counts_of(const std::vector<std::size_t>& rows) const {
    std::vector<long long> counts(d_.class_count(), 0);
    for (std::size_t i : rows) counts[static_cast<std::size_t>(d_.row(i).label)]++;
    return counts;
  }

  int make_leaf(const std::vector<long long>& counts) {
    TreeNode node;
    node.leaf = true;
    node.leaf_class = majority_class(counts);
    nodes_.push_back(node);
    return static_cast<int>(nodes_.size() - 1);
  }

  struct Split {
    double gain = 0.0;
    std::size_t feature = 0;
    bool numeric = true;
    double threshold = 0.0;
  };

  // Gain is computed over the rows where the candidate attribute is present;
  // rows with a missing value join the biggest branch afterwards.
  bool best_split(const std::vector<std::size_t>& rows, Split& best) const {
    bool found = false;
    for (std::size_t j = 0; j < d_.feature_count(); ++j) {
      std::vector<std::size_t> present;
      present.reserve(rows.size());
      for (std::size_t i : rows)
        if (!d_.row(i).cells[j].is_missing()) present.push_back(i);
      if (present.size() < 2) continue;

      const auto base_counts = counts_of(present);
      const double base = entropy(base_counts, static_cast<long long>(present.size()));

      if (d_.feature(j).kind == FeatureKind::Numeric) {
        std::vector<std::pair<double, int>> vals;
        vals.reserve(present.size());
        for (std::size_t i : present)
          vals.emplace_back(d_.row(i).cells[j].numeric_value(), d_.row(i).label);
        std::sort(vals.begin(), vals.end());

        std::vector<long long> left(d_.class_count(), 0);
        std::vector<long long> right = base_counts;
        const long long total = static_cast<long long>(vals.size());
        long long nl = 0;
        for (std::size_t i = 0; i + 1 < vals.size(); ++i) {
          left[static_cast<std::size_t>(vals[i].second)]++;
          right[static_cast<std::size_t>(vals[i].second)]--;
          ++nl;
          if (vals[i].first == vals[i + 1].first) continue;
          const double t = (vals[i].first + vals[i + 1].first) / 2.0;
          const double h = (static_cast<double>(nl) * entropy(left, nl) +
                            static_cast<double>(total - nl) * entropy(right, total - nl)) /
                           static_cast<double>(total);
          const double gain = base - h;
          // iteration order (feature index, then threshold) makes the first
          // maximum the lowest-index, lowest-threshold one
          if (!found || gain > best.gain) {
            best = {gain, j, true, t};
            found = true;
          }
        }
      } else {
        const std::size_t ncat = d_.feature(j).categories.size();
        std::vector<std::vector<long long>> parts(ncat,
                                                  std::vector<long long>(d_.class_count(), 0));
        std::vector<long long> part_sizes(ncat, 0);
        for (std::size_t i : present) {
          const auto cat = static_cast<std::size_t>(d_.row(i).cells[j].category());
          parts[cat][static_cast<std::size_t>(d_.row(i).label)]++;
          part_sizes[cat]++;
        }
        std::size_t nonempty = 0;
        for (long long s : part_sizes)
          if (s > 0) ++nonempty;
        if (nonempty < 2) continue;
        double h = 0.0;
        for (std::size_t cat = 0; cat < ncat; ++cat) {
          if (part_sizes[cat] == 0) continue;
          h += static_cast<double>(part_sizes[cat]) * entropy(parts[cat], part_sizes[cat]);
        }
        h /= static_cast<double>(present.size());
        const double gain = base - h;
        if (!found || gain > best.gain) {
          best = {gain, j, false, 0.0};
          found = true;
        }
      }
    }
    return found && best.gain > 0.0;
  }

  int grow(const std::vector<std::size_t>& rows, int depth) {
    const auto counts = counts_of(rows);
    const bool pure =
        std::count_if(counts.begin(), counts.end(), [](long long c) { return c > 0; }) <= 1;
    Split split;
    if (pure || depth >= max_depth_ || !best_split(rows, split)) return make_leaf(counts);

    std::vector<std::vector<std::size_t>> branches;
    if (split.numeric) {
      branches.resize(2);
      for (std::size_t i : rows) {
        const FeatureValue& v = d_.row(i).cells[split.feature];
        if (v.is_missing()) continue;
        branches[v.numeric_value() <= split.threshold ? 0 : 1].push_back(i);
      }
    } else {
      branches.resize(d_.feature(split.feature).categories.size());
      for (std::size_t i : rows) {
        const FeatureValue& v = d_.row(i).cells[split.feature];
        if (v.is_missing()) continue;
        branches[static_cast<std::size_t>(v.category())].push_back(i);
      }
    }

    std::size_t majority_branch = 0;
    for (std::size_t b = 1; b < branches.size(); ++b)
      if (branches[b].size() > branches[majority_branch].size()) majority_branch = b;
    for (std::size_t i : rows)
      if (d_.row(i).cells[split.feature].is_missing())
        branches[majority_branch].push_back(i);

    const int node_id = static_cast<int>(nodes_.size());
    nodes_.emplace_back();
    nodes_[static_cast<std::size_t>(node_id)].leaf = false;
    nodes_[static_cast<std::size_t>(node_id)].feature = split.feature;
    nodes_[static_cast<std::size_t>(node_id)].numeric_split = split.numeric;
    nodes_[static_cast<std::size_t>(node_id)].threshold = split.threshold;

    std::vector<int> children(branches.size(), -1);
    const int fallback_leaf_class = majority_class(counts);
    for (std::size_t b = 0; b < branches.size(); ++b) {
      if (branches[b].empty()) continue;  // filled below with the majority child
      children[b] = grow(branches[b], depth + 1);
    }
    int majority_child = children[majority_branch];
    if (majority_child < 0) {
      // All rows were missing the attribute; should not happen since
      // best_split requires two present rows, but keep a safe leaf.
      TreeNode leaf;
      leaf.leaf_class = fallback_leaf_class;
      nodes_.push_back(leaf);
      majority_child = static_cast<int>(nodes_.size() - 1);
    }
    for (int& ch : children)
      if (ch < 0) ch = majority_child;

    nodes_[static_cast<std::size_t>(node_id)].children = std::move(children);
    nodes_[static_cast<std::size_t>(node_id)].majority_child =
        static_cast<int>(majority_branch);
    return node_id;
  }

  const Dataset& d_;
  int max_depth_;
  std::vector<TreeNode> nodes_;
};

int tree_predict(const std::vector<TreeNode>& nodes, std::span<const FeatureValue> cells) {
  std::size_t at = 0;
  for (;;) {
    const TreeNode& node = nodes[at];
    if (node.leaf) return node.leaf_class;
    const FeatureValue& v = cells[node.feature];
    int next;
    if (v.is_missing()) {
      next = node.children[static_cast<std::size_t>(node.majority_child)];
    } else if (node.numeric_split) {
      next = node.children[v.numeric_value() <= node.threshold ? 0 : 1];
    } else {
      const auto cat = static_cast<std::size_t>(v.category());
      next = cat < node.children.size()
                 ? node.children[cat]
                 : node.children[static_cast<std::size_t>(node.majority_child)];
    }
    at = static_cast<std::size_t>(next);
  }
}

class TreePredictor final : public PredictorBase {
 public:
  TreePredictor(const Dataset& d, int max_depth, std::string model_id)
      : PredictorBase(std::move(model_id), PredictorSchema::of(d)),
        nodes_(TreeBuilder(d, max_depth).build()) {}

  int predict(std::span<const FeatureValue> cells) const override {
    return tree_predict(nodes_, cells);
  }

 private:
  std::vector<TreeNode> nodes_;
};

// ---------------------------------------------------------------------------
// bagging
// ---------------------------------------------------------------------------

Dataset bootstrap_sample(const Dataset& d, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<Row> rows;
  rows.reserve(d.row_count());
  for (std::size_t i = 0; i < d.row_count(); ++i)
    rows.push_back(d.row(static_cast<std::size_t>(rng.next_below(d.row_count()))));
  return Dataset(d.features(), d.class_labels(), std::move(rows), d.class_name());
}

class BaggingPredictor final : public PredictorBase {
 public:
  BaggingPredictor(const Dataset& d, std::span<const std::uint64_t> round_seeds,
                   int max_depth, std::string model_id)
      : PredictorBase(std::move(model_id), PredictorSchema::of(d)),
        class_count_(d.class_count()) {
    members_.reserve(round_seeds.size());
    for (std::uint64_t s : round_seeds)
      members_.push_back(TreeBuilder(bootstrap_sample(d, s), max_depth).build());
  }

  int predict(std::span<const FeatureValue> cells) const override {
    std::vector<long long> votes(class_count_, 0);
    for (const auto& member : members_)
      votes[static_cast<std::size_t>(tree_predict(member, cells))]++;
    return majority_class(votes);
  }

 private:
  std::vector<std::vector<TreeNode>> members_;
  std::size_t class_count_;
};

}  // namespace

PredictorSchema PredictorSchema::of(const Dataset& d) {
  PredictorSchema s;
  s.feature_count = d.feature_count();
  s.class_count = d.class_count();
  s.kinds.reserve(d.feature_count());
  for (const auto& f : d.features()) s.kinds.push_back(f.kind);
  return s;
}

ConfusionMatrix::ConfusionMatrix(std::size_t class_count)
    : c_(class_count), counts_(class_count * class_count, 0) {
  if (class_count == 0) throw std::invalid_argument("confusion matrix needs classes");
}

void ConfusionMatrix::add(int predicted, int actual) {
  if (predicted < 0 || actual < 0 || static_cast<std::size_t>(predicted) >= c_ ||
      static_cast<std::size_t>(actual) >= c_)
    throw std::invalid_argument("class index out of range in confusion matrix");
  counts_[static_cast<std::size_t>(predicted) * c_ + static_cast<std::size_t>(actual)]++;
  total_++;
}

std::unique_ptr<Predictor> train_majority(const Dataset& d) {
  return std::make_unique<MajorityPredictor>(d);
}

std::unique_ptr<Predictor> train_knn(const Dataset& d, int k) {
  if (k < 1) throw std::invalid_argument("knn: k must be >= 1");
  if (static_cast<std::size_t>(k) > d.row_count())
    throw std::invalid_argument("knn: k exceeds the number of training rows");
  return std::make_unique<KnnPredictor>(d, k, "knn:k=" + std::to_string(k));
}

std::unique_ptr<Predictor> train_tree(const Dataset& d, int max_depth) {
  if (max_depth < 1) throw std::invalid_argument("tree: depth must be >= 1");
  return std::make_unique<TreePredictor>(d, max_depth,
                                         "tree:depth=" + std::to_string(max_depth));
}

std::unique_ptr<Predictor> train_bagging(const Dataset& d, int rounds, int max_depth,
                                         std::uint64_t seed) {
  if (rounds < 1) throw std::invalid_argument("bagging: rounds must be >= 1");
  std::vector<std::uint64_t> seeds;
  seeds.reserve(static_cast<std::size_t>(rounds));
  for (int r = 0; r < rounds; ++r)
    seeds.push_back(derive_seed(seed, {static_cast<std::uint64_t>(r)}));
  return train_bagging_with_seeds(
      d, seeds, max_depth,
      "bag:rounds=" + std::to_string(rounds) + ",depth=" + std::to_string(max_depth));
}

std::unique_ptr<Predictor> train_bagging_with_seeds(const Dataset& d,
                                                    std::span<const std::uint64_t> round_seeds,
                                                    int max_depth,
                                                    const std::string& model_id) {
  if (round_seeds.empty()) throw std::invalid_argument("bagging: need at least one round");
  if (max_depth < 1) throw std::invalid_argument("bagging: depth must be >= 1");
  return std::make_unique<BaggingPredictor>(d, round_seeds, max_depth, model_id);
}

std::unique_ptr<Predictor> train_from_spec(const Dataset& d, const std::string& spec,
                                           std::uint64_t seed) {
  auto parse_options = [&spec](const std::string& body) {
    std::vector<std::pair<std::string, int>> opts;
    std::stringstream ss(body);
    std::string kv;
    while (std::getline(ss, kv, ',')) {
      auto eq = kv.find('=');
      if (eq == std::string::npos)
        throw std::invalid_argument("bad model spec: " + spec);
      try {
        opts.emplace_back(kv.substr(0, eq), std::stoi(kv.substr(eq + 1)));
      } catch (const std::exception&) {
        throw std::invalid_argument("bad model spec: " + spec);
      }
    }
    return opts;
  };
  auto name_end = spec.find(':');
  const std::string name = spec.substr(0, name_end);
  const std::string body = name_end == std::string::npos ? "" : spec.substr(name_end + 1);

  if (name == "majority") {
    if (!body.empty()) throw std::invalid_argument("bad model spec: " + spec);
    return train_majority(d);
  }
  if (name == "knn") {
    int k = -1;
    for (auto& [key, val] : parse_options(body)) {
      if (key == "k") k = val;
      else throw std::invalid_argument("unknown option '" + key + "' in: " + spec);
    }
    if (k < 1) throw std::invalid_argument("model spec needs k>=1: " + spec);
    return train_knn(d, k);
  }
  if (name == "tree") {
    int depth = -1;
    for (auto& [key, val] : parse_options(body)) {
      if (key == "depth") depth = val;
      else throw std::invalid_argument("unknown option '" + key + "' in: " + spec);
    }
    if (depth < 1) throw std::invalid_argument("model spec needs depth>=1: " + spec);
    return train_tree(d, depth);
  }
  if (name == "bag") {
    int rounds = -1, depth = -1;
    for (auto& [key, val] : parse_options(body)) {
      if (key == "rounds") rounds = val;
      else if (key == "depth") depth = val;
      else throw std::invalid_argument("unknown option '" + key + "' in: " + spec);
    }
    if (rounds < 1 || depth < 1)
      throw std::invalid_argument("model spec needs rounds>=1,depth>=1: " + spec);
    return train_bagging(d, rounds, depth, seed);
  }
  throw std::invalid_argument("unknown model spec: " + spec);
}

ConfusionMatrix evaluate_confusion(const Predictor& p, const Dataset& d) {
  if (p.schema() != PredictorSchema::of(d))
    throw std::invalid_argument("dataset schema does not match the trained predictor");
  ConfusionMatrix cm(d.class_count());
  for (const Row& r : d.rows()) cm.add(p.predict(r.cells), r.label);
  return cm;
}

}  // namespace jroc
