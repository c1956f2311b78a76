#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "jroc/cost_context.hpp"
#include "jroc/dataset.hpp"
#include "jroc/lattice_search.hpp"

namespace jroc {

inline constexpr std::array<const char*, 5> kMethodNames{"Full", "BMC", "BTC", "BJC",
                                                         "RND"};

/// How the cost context is produced for each run.
struct ContextSpec {
  enum class Kind { Uniform, Random } kind = Kind::Uniform;
  double beta = 10.0;
};

/// Whether a random context is drawn once per (dataset, repetition) or once
/// per dataset for the whole plan.
enum class ContextRedraw { PerRepetition, PerPlan };

struct ExperimentPlan {
  std::vector<std::string> dataset_paths;
  std::vector<std::string> predictor_specs;
  std::vector<double> alphas{0.1, 0.3, 0.5, 0.7, 0.9};
  int repetitions = 4;
  ContextSpec context;
  ContextRedraw redraw = ContextRedraw::PerRepetition;
  std::uint64_t master_seed = 2;
  int jobs = 1;
};

/// Joint-cost outcomes: 5 method rows, one column per
/// (dataset, alpha, repetition) run, dataset-major then alpha then
/// repetition.
struct MethodResultMatrix {
  struct ColumnLabel {
    std::string dataset;
    double alpha = 0.0;
    int repetition = 0;  // 1-based
    std::size_t dataset_index = 0;
    std::size_t alpha_index = 0;
  };
  std::vector<std::array<double, 5>> columns;  // columns[i][method]
  std::vector<ColumnLabel> labels;

  std::size_t run_count() const { return columns.size(); }
};

/// One experiment run: split into work (2n/3) and test (n/3), split the work
/// set into train and validation halves, train every predictor on the train
/// part, search the lattice on the validation part with each of the five
/// methods, select the best (model, configuration) for `alpha`, then measure
/// that choice's joint cost on the held-out test part. Returns the five test
/// joint costs in method order Full, BMC, BTC, BJC, RND.
///
/// Sanity check enforced during the run: the Full method's selected
/// validation joint cost never exceeds any approximation's (the approximate
/// candidate sets are subsets of the lattice).
std::array<double, 5> run_single(const Dataset& dataset,
                                 const std::vector<std::string>& predictor_specs,
                                 const CostContext& ctx, double alpha,
                                 std::uint64_t seed);

/// Runs the full plan over pre-loaded datasets. Per-run seeds are derived
/// deterministically from the master seed and the (dataset, alpha,
/// repetition) indices, so iteration order and `jobs` never change any cell.
MethodResultMatrix run_plan_on(const ExperimentPlan& plan,
                               const std::vector<Dataset>& datasets,
                               const std::vector<std::string>& dataset_names);

/// Loads plan.dataset_paths and calls run_plan_on. Dataset names are the
/// file stems.
MethodResultMatrix run_plan(const ExperimentPlan& plan);

struct AggregateRow {
  std::string key;  // dataset name or alpha value
  std::array<double, 5> mean{};
  std::array<double, 5> sd{};
};

/// Mean and sample standard deviation (n-1) per (dataset, method).
std::vector<AggregateRow> aggregate_by_dataset(const MethodResultMatrix& mrm);

/// Mean and sample standard deviation (n-1) per (alpha, method).
std::vector<AggregateRow> aggregate_by_alpha(const MethodResultMatrix& mrm);

struct CellTable {
  struct CellRow {
    std::string dataset;
    double alpha = 0.0;
    std::array<double, 5> means{};
  };
  std::vector<CellRow> rows;        // dataset-major, then alpha
  std::array<double, 5> avg_row{};  // column means over rows
};

/// Mean over repetitions per (dataset, alpha) cell plus the appended Avg row.
CellTable per_cell_means(const MethodResultMatrix& mrm);

}  // namespace jroc
