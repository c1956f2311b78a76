// jroc -- reframe trained classifiers to new cost contexts by masking
// attributes, search the feature-configuration lattice, and pick the best
// (model, configuration) per operating condition.
//
// Subcommands: search, choose, hull, experiment, stats, plot.
// Exit codes: 0 success, 1 usage error, 2 data error, 3 internal error.

#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "jroc/errors.hpp"
#include "jroc/rng.hpp"
#include "jroc/experiment.hpp"
#include "jroc/format.hpp"
#include "jroc/jroc_analysis.hpp"
#include "jroc/lattice_search.hpp"
#include "jroc/plot_emitter.hpp"
#include "jroc/points_io.hpp"
#include "jroc/rank_stats.hpp"

namespace {

namespace fs = std::filesystem;

std::uint64_t resolve_seed(const std::optional<std::uint64_t>& flag) {
  if (flag) return *flag;
  if (const char* env = std::getenv("JROC_SEED")) {
    try {
      return std::stoull(env);
    } catch (const std::exception&) {
      throw std::invalid_argument("JROC_SEED is not a valid integer: " + std::string(env));
    }
  }
  return 2;
}

std::vector<std::string> split_commas(const std::string& s) {
  std::vector<std::string> out;
  std::string cur;
  for (char ch : s) {
    if (ch == ',') {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += ch;
    }
  }
  out.push_back(cur);
  return out;
}

// Model lists are comma separated, but a spec like bag:rounds=10,depth=6
// itself contains commas; a token continues the previous spec when it is a
// bare key=value pair.
std::vector<std::string> parse_model_list(const std::string& s) {
  std::vector<std::string> specs;
  for (const std::string& token : split_commas(s)) {
    if (token.empty()) throw std::invalid_argument("empty model spec in: " + s);
    const bool continuation = !specs.empty() && token.find('=') != std::string::npos &&
                              token.find(':') == std::string::npos;
    if (continuation) {
      specs.back() += "," + token;
    } else {
      specs.push_back(token);
    }
  }
  if (specs.empty()) throw std::invalid_argument("no model specs given");
  return specs;
}

std::vector<double> parse_double_list(const std::string& s, const char* what) {
  std::vector<double> out;
  for (const std::string& token : split_commas(s)) {
    try {
      out.push_back(std::stod(token));
    } catch (const std::exception&) {
      throw std::invalid_argument(std::string("bad ") + what + " value: " + token);
    }
  }
  return out;
}

std::vector<jroc::PointSet> group_by_model(const std::vector<jroc::CostPoint>& points) {
  std::vector<jroc::PointSet> groups;
  for (const jroc::CostPoint& p : points) {
    jroc::PointSet* group = nullptr;
    for (auto& g : groups)
      if (g.model_id == p.model_id) group = &g;
    if (group == nullptr) {
      groups.emplace_back();
      groups.back().model_id = p.model_id;
      group = &groups.back();
    }
    group->points.push_back(p);
  }
  return groups;
}

// ---------------------------------------------------------------------------
// search
// ---------------------------------------------------------------------------

struct SearchArgs {
  std::string data;
  std::string models = "majority,knn:k=5,tree:depth=6,bag:rounds=10,depth=6";
  std::string method;
  std::string context = "uniform";
  std::string out = "points.csv";
  std::optional<std::uint64_t> seed;
  std::optional<std::uint64_t> sample_size;
  std::size_t full_cap = 20;
  int jobs = 1;
};

int cmd_search(const SearchArgs& args) {
  const std::uint64_t seed = resolve_seed(args.seed);
  const jroc::Dataset d = jroc::load_dataset(args.data);
  const jroc::CostContext ctx =
      jroc::context_from_spec(args.context, d.feature_count(), d.class_count(), seed);
  const auto method = jroc::search_method_from_name(args.method);

  auto [train, eval] = jroc::split_dataset(d, 2.0 / 3.0, seed);
  std::vector<jroc::CostPoint> all_points;
  const auto specs = parse_model_list(args.models);
  for (std::size_t i = 0; i < specs.size(); ++i) {
    const auto p = jroc::train_from_spec(train, specs[i], jroc::derive_seed(seed, {i}));
    jroc::PointSet set;
    switch (method) {
      case jroc::SearchMethodKind::Full:
        set = jroc::full_enumeration(*p, eval, ctx, args.full_cap, args.jobs);
        break;
      case jroc::SearchMethodKind::BMC:
        set = jroc::backward_guided(*p, eval, ctx, jroc::BackwardGuide::MC);
        break;
      case jroc::SearchMethodKind::BTC:
        set = jroc::backward_guided(*p, eval, ctx, jroc::BackwardGuide::TC);
        break;
      case jroc::SearchMethodKind::BJC:
        set = jroc::backward_guided(*p, eval, ctx, jroc::BackwardGuide::JC);
        break;
      case jroc::SearchMethodKind::RND: {
        const std::uint64_t size =
            args.sample_size.value_or(jroc::quadratic_point_count(d.feature_count()));
        set = jroc::monte_carlo(*p, eval, ctx, size, jroc::derive_seed(seed, {0x5244, i}));
        break;
      }
    }
    all_points.insert(all_points.end(), set.points.begin(), set.points.end());
  }
  jroc::write_points_csv(args.out, all_points);
  std::cout << "wrote " << all_points.size() << " points to " << args.out << "\n";
  return 0;
}

// ---------------------------------------------------------------------------
// choose / hull
// ---------------------------------------------------------------------------

int cmd_choose(const std::string& points_path, double alpha) {
  const auto points = jroc::read_points_csv(points_path);
  const jroc::CostPoint& best = jroc::best_point_for_alpha(points, alpha);
  const double jc = jroc::joint_cost(best.mc, best.tc, alpha);
  std::cout << best.model_id << "," << best.config.bitstring() << ","
            << jroc::format_double(best.tc) << "," << jroc::format_double(best.mc) << ","
            << jroc::format_double(jc) << "\n";
  return 0;
}

int cmd_hull(const std::string& points_path, const std::string& out) {
  const auto points = jroc::read_points_csv(points_path);
  std::vector<jroc::CostPoint> vertices;
  for (const auto& group : group_by_model(points)) {
    const jroc::Hull hull = jroc::convex_hull(group.points);
    vertices.insert(vertices.end(), hull.vertices.begin(), hull.vertices.end());
  }
  jroc::write_points_csv(out, vertices);
  std::cout << "wrote " << vertices.size() << " hull vertices to " << out << "\n";
  return 0;
}

// ---------------------------------------------------------------------------
// experiment
// ---------------------------------------------------------------------------

struct ExperimentArgs {
  std::string data;
  std::string models = "majority,knn:k=5,tree:depth=6,bag:rounds=10,depth=6";
  std::string alphas = "0.1,0.3,0.5,0.7,0.9";
  int reps = 4;
  std::string context = "uniform";
  std::string redraw = "per-rep";
  std::string out = "results";
  std::optional<std::uint64_t> seed;
  int jobs = 1;
};

int cmd_experiment(const ExperimentArgs& args) {
  jroc::ExperimentPlan plan;
  plan.dataset_paths = split_commas(args.data);
  plan.predictor_specs = parse_model_list(args.models);
  plan.alphas = parse_double_list(args.alphas, "alpha");
  plan.repetitions = args.reps;
  plan.master_seed = resolve_seed(args.seed);
  plan.jobs = args.jobs;

  if (args.context == "uniform") {
    plan.context.kind = jroc::ContextSpec::Kind::Uniform;
  } else if (args.context.rfind("random", 0) == 0) {
    plan.context.kind = jroc::ContextSpec::Kind::Random;
    if (args.context.size() > 6) {
      if (args.context[6] != ':')
        throw std::invalid_argument("bad context spec: " + args.context);
      for (const std::string& kv : split_commas(args.context.substr(7))) {
        const auto eq = kv.find('=');
        if (eq == std::string::npos || kv.substr(0, eq) != "beta")
          throw std::invalid_argument("experiment contexts accept only beta: " + args.context);
        plan.context.beta = std::stod(kv.substr(eq + 1));
      }
    }
  } else {
    throw std::invalid_argument("experiment context must be uniform or random[:beta=B]");
  }
  if (args.redraw == "per-rep") {
    plan.redraw = jroc::ContextRedraw::PerRepetition;
  } else if (args.redraw == "per-plan") {
    plan.redraw = jroc::ContextRedraw::PerPlan;
  } else {
    throw std::invalid_argument("--context-redraw must be per-rep or per-plan");
  }

  const jroc::MethodResultMatrix mrm = jroc::run_plan(plan);

  fs::create_directories(args.out);
  const fs::path out_dir(args.out);
  jroc::write_file_atomic(out_dir / "mdat.csv", jroc::mdat_to_csv(mrm));
  jroc::write_file_atomic(out_dir / "by_dataset.csv",
                          jroc::aggregates_to_csv(jroc::aggregate_by_dataset(mrm), "dataset"));
  jroc::write_file_atomic(out_dir / "by_alpha.csv",
                          jroc::aggregates_to_csv(jroc::aggregate_by_alpha(mrm), "alpha"));
  jroc::write_file_atomic(out_dir / "cells.csv",
                          jroc::cells_to_csv(jroc::per_cell_means(mrm)));
  std::cout << "ran " << mrm.run_count() << " runs; results in " << args.out << "/\n";
  return 0;
}

// ---------------------------------------------------------------------------
// stats
// ---------------------------------------------------------------------------

struct StatsArgs {
  std::string cells;
  std::optional<double> q;
  double significance = 0.05;
  std::optional<double> critical;
  std::string out;
};

int cmd_stats(const StatsArgs& args) {
  const jroc::CellsFile file = jroc::read_cells_csv(args.cells);
  const double q =
      args.q ? *args.q
             : jroc::nemenyi_q(static_cast<int>(file.method_names.size()), args.significance);
  const jroc::SignificanceReport report =
      jroc::significance_report(file.values, file.method_names, q);
  std::cout << jroc::format_report_text(report, args.critical);
  if (!args.out.empty()) {
    jroc::write_file_atomic(args.out, jroc::format_report_csv(report));
    std::cout << "wrote " << args.out << "\n";
  }
  return 0;
}

// ---------------------------------------------------------------------------
// plot
// ---------------------------------------------------------------------------

struct PlotArgs {
  std::string points;
  std::string kind = "jroc";
  bool hulls = false;
  std::string iso;
  double alpha = 0.5;
  std::string out = "plot.svg";
};

int cmd_plot(const PlotArgs& args) {
  const auto points = jroc::read_points_csv(args.points);
  std::string svg;
  if (args.kind == "jroc") {
    const auto groups = group_by_model(points);
    std::vector<jroc::Hull> hulls;
    if (args.hulls) {
      hulls.reserve(groups.size());
      for (const auto& g : groups) hulls.push_back(jroc::convex_hull(g.points));
    }
    const auto alphas = args.iso.empty() ? std::vector<double>{}
                                         : parse_double_list(args.iso, "iso alpha");
    svg = jroc::render_jroc(groups, args.hulls ? &hulls : nullptr, alphas);
  } else if (args.kind == "evolution") {
    const auto groups = group_by_model(points);
    if (groups.size() != 1)
      throw std::invalid_argument("evolution plots need points from exactly one model");
    std::vector<std::string> labels;
    labels.reserve(points.size());
    for (const auto& p : points) labels.push_back(jroc::config_label(p.config));
    jroc::CostContext ctx = jroc::uniform_context(points[0].config.size(), 2);
    ctx.alpha = args.alpha;
    svg = jroc::render_cost_evolution(points, ctx, labels);
  } else {
    throw std::invalid_argument("--kind must be jroc or evolution");
  }
  jroc::write_file_atomic(args.out, svg);
  std::cout << "wrote " << args.out << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"JROC: joint-cost model/configuration selection by masking attributes"};
  app.require_subcommand(1);

  SearchArgs search_args;
  auto* search = app.add_subcommand("search", "evaluate lattice configurations to a points CSV");
  search->add_option("--data", search_args.data, "dataset CSV path")->required();
  search->add_option("--models", search_args.models,
                     "comma-separated model specs (majority | knn:k=K | tree:depth=D | "
                     "bag:rounds=R,depth=D)")->capture_default_str();
  search->add_option("--method", search_args.method, "full | bmc | btc | bjc | rnd")
      ->required();
  search->add_option("--context", search_args.context,
                     "uniform | random:beta=B[,seed=S] | file:PATH")->capture_default_str();
  search->add_option("--seed", search_args.seed, "seed (fallback: JROC_SEED, then 2)");
  search->add_option("--sample-size", search_args.sample_size,
                     "rnd sample size (default m(m+1)/2+1)");
  search->add_option("--full-cap", search_args.full_cap,
                     "largest m allowed for --method full")->capture_default_str();
  search->add_option("--jobs", search_args.jobs, "concurrent config evaluations")->capture_default_str();
  search->add_option("--out", search_args.out, "output points CSV")->capture_default_str();

  std::string choose_points;
  double choose_alpha = 0.5;
  auto* choose = app.add_subcommand("choose", "pick the best point for an alpha");
  choose->add_option("--points", choose_points, "points CSV path")->required();
  choose->add_option("--alpha", choose_alpha, "operating condition in [0,1]")->required();

  std::string hull_points, hull_out = "hull.csv";
  auto* hull = app.add_subcommand("hull", "per-model lower-left convex hulls");
  hull->add_option("--points", hull_points, "points CSV path")->required();
  hull->add_option("--out", hull_out, "output hull CSV")->capture_default_str();

  ExperimentArgs exp_args;
  auto* experiment = app.add_subcommand("experiment", "run the full method-comparison protocol");
  experiment->add_option("--data", exp_args.data, "comma-separated dataset CSV paths")
      ->required();
  experiment->add_option("--models", exp_args.models, "model specs")->capture_default_str();
  experiment->add_option("--alphas", exp_args.alphas, "alpha values")->capture_default_str();
  experiment->add_option("--reps", exp_args.reps, "repetitions per (dataset, alpha)")->capture_default_str();
  experiment->add_option("--context", exp_args.context, "uniform | random[:beta=B]")->capture_default_str();
  experiment->add_option("--context-redraw", exp_args.redraw, "per-rep | per-plan")->capture_default_str();
  experiment->add_option("--seed", exp_args.seed, "master seed (fallback: JROC_SEED, then 2)");
  experiment->add_option("--jobs", exp_args.jobs, "concurrent runs")->capture_default_str();
  experiment->add_option("--out", exp_args.out, "output directory")->capture_default_str();

  StatsArgs stats_args;
  auto* stats = app.add_subcommand("stats", "Friedman + Nemenyi report over a cells CSV");
  stats->add_option("--cells", stats_args.cells, "cells CSV from `jroc experiment`")
      ->required();
  stats->add_option("--q", stats_args.q, "Nemenyi q quantile (overrides --significance)");
  stats->add_option("--significance", stats_args.significance,
                    "0.05 or 0.10, used with the bundled q table")->capture_default_str();
  stats->add_option("--critical", stats_args.critical,
                    "Friedman critical value to compare the statistic against");
  stats->add_option("--out", stats_args.out, "also write a machine-readable CSV report");

  PlotArgs plot_args;
  auto* plot = app.add_subcommand("plot", "render an SVG chart from a points CSV");
  plot->add_option("--points", plot_args.points, "points CSV path")->required();
  plot->add_option("--kind", plot_args.kind, "jroc | evolution")->capture_default_str();
  plot->add_flag("--hulls", plot_args.hulls, "draw per-model hulls");
  plot->add_option("--iso", plot_args.iso, "comma-separated isometric alphas");
  plot->add_option("--alpha", plot_args.alpha, "alpha for evolution JC")->capture_default_str();
  plot->add_option("--out", plot_args.out, "output SVG path")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;
  }

  try {
    if (search->parsed()) return cmd_search(search_args);
    if (choose->parsed()) return cmd_choose(choose_points, choose_alpha);
    if (hull->parsed()) return cmd_hull(hull_points, hull_out);
    if (experiment->parsed()) return cmd_experiment(exp_args);
    if (stats->parsed()) return cmd_stats(stats_args);
    if (plot->parsed()) return cmd_plot(plot_args);
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const jroc::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 3;
  }
  return 0;
}
