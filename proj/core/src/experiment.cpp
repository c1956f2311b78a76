#include "jroc/experiment.hpp"

#include <atomic>
#include <cmath>
#include <map>
#include <mutex>
#include <thread>

#include "jroc/errors.hpp"
#include "jroc/format.hpp"
#include "jroc/jroc_analysis.hpp"
#include "jroc/rng.hpp"

namespace jroc {

namespace {

// seed-path tags so run seeds, context seeds and trainer seeds never collide
constexpr std::uint64_t kTagRun = 0x52;       // 'R'
constexpr std::uint64_t kTagContext = 0x43;   // 'C'
constexpr std::uint64_t kTagWorkSplit = 1;
constexpr std::uint64_t kTagTrainSplit = 2;
constexpr std::uint64_t kTagRnd = 3;
constexpr std::uint64_t kTagTrainer = 4;

}  // namespace

std::array<double, 5> run_single(const Dataset& dataset,
                                 const std::vector<std::string>& predictor_specs,
                                 const CostContext& ctx, double alpha,
                                 std::uint64_t seed) {
  if (predictor_specs.empty())
    throw std::invalid_argument("run_single needs at least one predictor spec");
  if (dataset.row_count() < 3)
    throw std::invalid_argument("dataset too small for a work/test split");

  auto [work, test] = split_dataset(dataset, 2.0 / 3.0, derive_seed(seed, {kTagWorkSplit}));
  if (work.row_count() < 2)
    throw std::invalid_argument("dataset too small: the work part cannot be split");
  auto [train, validation] =
      split_dataset(work, 0.5, derive_seed(seed, {kTagTrainSplit}));

  std::vector<std::unique_ptr<Predictor>> predictors;
  predictors.reserve(predictor_specs.size());
  for (std::size_t i = 0; i < predictor_specs.size(); ++i) {
    predictors.push_back(train_from_spec(
        train, predictor_specs[i], derive_seed(seed, {kTagTrainer, i})));
  }

  // Candidate points on the validation part, pooled across models per method.
  std::array<std::vector<CostPoint>, 5> pools;
  const std::uint64_t rnd_size = quadratic_point_count(dataset.feature_count());
  for (std::size_t i = 0; i < predictors.size(); ++i) {
    const Predictor& p = *predictors[i];
    auto append = [&pools](std::size_t method, PointSet set) {
      auto& pool = pools[method];
      pool.insert(pool.end(), std::make_move_iterator(set.points.begin()),
                  std::make_move_iterator(set.points.end()));
    };
    append(0, full_enumeration(p, validation, ctx));
    append(1, backward_guided(p, validation, ctx, BackwardGuide::MC));
    append(2, backward_guided(p, validation, ctx, BackwardGuide::TC));
    append(3, backward_guided(p, validation, ctx, BackwardGuide::JC));
    append(4, monte_carlo(p, validation, ctx, rnd_size, derive_seed(seed, {kTagRnd, i})));
  }

  std::map<std::string, const Predictor*> by_id;
  for (const auto& p : predictors) {
    if (!by_id.emplace(p->model_id(), p.get()).second)
      throw std::invalid_argument("duplicate model spec: " + p->model_id());
  }

  const double full_validation_jc = best_joint_cost(pools[0], alpha);

  std::array<double, 5> result{};
  for (std::size_t method = 0; method < 5; ++method) {
    const CostPoint& choice = best_point_for_alpha(pools[method], alpha);
    const double validation_jc = joint_cost(choice.mc, choice.tc, alpha);
    if (validation_jc < full_validation_jc) {
      throw InternalError(
          "exhaustive search beaten on its own validation set; evaluate_config "
          "is not pure");
    }
    const Predictor& chosen_model = *by_id.at(choice.model_id);
    const Dataset masked_test = mask_features(test, choice.config);
    const double mc = avg_misclassification_cost(evaluate_confusion(chosen_model, masked_test), ctx);
    const double tc = test_cost_of_config(choice.config, ctx);
    result[method] = joint_cost(mc, tc, alpha);
  }
  return result;
}

MethodResultMatrix run_plan_on(const ExperimentPlan& plan,
                               const std::vector<Dataset>& datasets,
                               const std::vector<std::string>& dataset_names) {
  if (datasets.empty()) throw std::invalid_argument("plan needs at least one dataset");
  if (datasets.size() != dataset_names.size())
    throw std::invalid_argument("dataset/name count mismatch");
  if (plan.repetitions < 1) throw std::invalid_argument("repetitions must be >= 1");
  for (double a : plan.alphas)
    if (!(a >= 0.0 && a <= 1.0)) throw std::invalid_argument("alphas must lie in [0,1]");

  MethodResultMatrix mrm;
  for (std::size_t di = 0; di < datasets.size(); ++di) {
    for (std::size_t ai = 0; ai < plan.alphas.size(); ++ai) {
      for (int rep = 0; rep < plan.repetitions; ++rep) {
        MethodResultMatrix::ColumnLabel label;
        label.dataset = dataset_names[di];
        label.alpha = plan.alphas[ai];
        label.repetition = rep + 1;
        label.dataset_index = di;
        label.alpha_index = ai;
        mrm.labels.push_back(std::move(label));
      }
    }
  }
  mrm.columns.resize(mrm.labels.size());

  // Contexts depend only on (dataset, repetition) -- or dataset alone for
  // per-plan redraw -- never on iteration order.
  auto context_for = [&plan, &datasets](std::size_t di, int rep) {
    const Dataset& d = datasets[di];
    if (plan.context.kind == ContextSpec::Kind::Uniform)
      return uniform_context(d.feature_count(), d.class_count());
    const std::uint64_t ctx_seed =
        plan.redraw == ContextRedraw::PerRepetition
            ? derive_seed(plan.master_seed, {kTagContext, di, static_cast<std::uint64_t>(rep)})
            : derive_seed(plan.master_seed, {kTagContext, di});
    return random_context(d.feature_count(), d.class_count(), plan.context.beta, ctx_seed);
  };

  auto run_column = [&](std::size_t col) {
    const auto& label = mrm.labels[col];
    CostContext ctx = context_for(label.dataset_index, label.repetition - 1);
    ctx.alpha = label.alpha;
    const std::uint64_t run_seed =
        derive_seed(plan.master_seed,
                    {kTagRun, label.dataset_index, label.alpha_index,
                     static_cast<std::uint64_t>(label.repetition - 1)});
    try {
      mrm.columns[col] = run_single(datasets[label.dataset_index], plan.predictor_specs,
                                    ctx, label.alpha, run_seed);
    } catch (const std::exception& e) {
      throw std::runtime_error("run (dataset=" + label.dataset + ", alpha=" +
                               std::to_string(label.alpha) + ", rep=" +
                               std::to_string(label.repetition) + ") failed: " + e.what());
    }
  };

  if (plan.jobs <= 1 || mrm.columns.size() < 2) {
    for (std::size_t col = 0; col < mrm.columns.size(); ++col) run_column(col);
  } else {
    std::atomic<std::size_t> next{0};
    std::atomic<bool> failed{false};
    std::exception_ptr first_error;
    std::mutex error_mutex;
    auto worker = [&] {
      for (;;) {
        const std::size_t col = next.fetch_add(1);
        if (col >= mrm.columns.size() || failed.load()) return;
        try {
          run_column(col);
        } catch (...) {
          std::lock_guard<std::mutex> lock(error_mutex);
          if (!first_error) first_error = std::current_exception();
          failed.store(true);
          return;
        }
      }
    };
    const std::size_t n_threads = std::min<std::size_t>(
        static_cast<std::size_t>(plan.jobs), mrm.columns.size());
    std::vector<std::thread> pool;
    for (std::size_t t = 0; t < n_threads; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
    if (first_error) std::rethrow_exception(first_error);
  }
  return mrm;
}

MethodResultMatrix run_plan(const ExperimentPlan& plan) {
  std::vector<Dataset> datasets;
  std::vector<std::string> names;
  datasets.reserve(plan.dataset_paths.size());
  for (const auto& path : plan.dataset_paths) {
    datasets.push_back(load_dataset(path));
    names.push_back(std::filesystem::path(path).stem().string());
  }
  return run_plan_on(plan, datasets, names);
}

namespace {

struct Welford {
  // plain two-pass mean/sd over a small group
  std::vector<double> values;
  double mean() const {
    double s = 0.0;
    for (double v : values) s += v;
    return s / static_cast<double>(values.size());
  }
  double sample_sd() const {
    if (values.size() < 2) return 0.0;
    const double m = mean();
    double s = 0.0;
    for (double v : values) s += (v - m) * (v - m);
    return std::sqrt(s / static_cast<double>(values.size() - 1));
  }
};

std::vector<AggregateRow> aggregate_by(const MethodResultMatrix& mrm,
                                       bool group_by_dataset) {
  // group keys in first-appearance order (dataset-major layout keeps this
  // equal to plan order)
  std::vector<std::string> keys;
  std::vector<std::array<Welford, 5>> groups;
  auto key_of = [&](const MethodResultMatrix::ColumnLabel& label) {
    return group_by_dataset ? label.dataset : format_double(label.alpha);
  };
  for (std::size_t col = 0; col < mrm.columns.size(); ++col) {
    const std::string key = key_of(mrm.labels[col]);
    std::size_t gi = keys.size();
    for (std::size_t i = 0; i < keys.size(); ++i)
      if (keys[i] == key) gi = i;
    if (gi == keys.size()) {
      keys.push_back(key);
      groups.emplace_back();
    }
    for (std::size_t method = 0; method < 5; ++method)
      groups[gi][method].values.push_back(mrm.columns[col][method]);
  }
  std::vector<AggregateRow> rows;
  rows.reserve(keys.size());
  for (std::size_t i = 0; i < keys.size(); ++i) {
    AggregateRow row;
    row.key = keys[i];
    for (std::size_t method = 0; method < 5; ++method) {
      row.mean[method] = groups[i][method].mean();
      row.sd[method] = groups[i][method].sample_sd();
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace

std::vector<AggregateRow> aggregate_by_dataset(const MethodResultMatrix& mrm) {
  return aggregate_by(mrm, true);
}

std::vector<AggregateRow> aggregate_by_alpha(const MethodResultMatrix& mrm) {
  return aggregate_by(mrm, false);
}

CellTable per_cell_means(const MethodResultMatrix& mrm) {
  CellTable table;
  std::map<std::pair<std::size_t, std::size_t>, std::size_t> cell_index;
  for (std::size_t col = 0; col < mrm.columns.size(); ++col) {
    const auto& label = mrm.labels[col];
    const auto key = std::make_pair(label.dataset_index, label.alpha_index);
    auto [it, inserted] = cell_index.try_emplace(key, table.rows.size());
    if (inserted) {
      CellTable::CellRow row;
      row.dataset = label.dataset;
      row.alpha = label.alpha;
      table.rows.push_back(std::move(row));
    }
  }
  std::vector<std::array<long long, 5>> counts(table.rows.size(), {0, 0, 0, 0, 0});
  for (std::size_t col = 0; col < mrm.columns.size(); ++col) {
    const auto& label = mrm.labels[col];
    const std::size_t ri = cell_index.at({label.dataset_index, label.alpha_index});
    for (std::size_t method = 0; method < 5; ++method) {
      table.rows[ri].means[method] += mrm.columns[col][method];
      counts[ri][method]++;
    }
  }
  for (std::size_t ri = 0; ri < table.rows.size(); ++ri)
    for (std::size_t method = 0; method < 5; ++method)
      table.rows[ri].means[method] /= static_cast<double>(counts[ri][method]);

  for (std::size_t method = 0; method < 5; ++method) {
    double s = 0.0;
    for (const auto& row : table.rows) s += row.means[method];
    table.avg_row[method] = s / static_cast<double>(table.rows.size());
  }
  return table;
}

}  // namespace jroc
