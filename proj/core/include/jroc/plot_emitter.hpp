#pragma once

#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "jroc/cost_context.hpp"
#include "jroc/jroc_analysis.hpp"
#include "jroc/lattice_search.hpp"

namespace jroc {

/// Affine mapping between data coordinates and SVG canvas units. Exposed so
/// emitted coordinates can be mapped back in tests.
struct Viewport {
  double x_min = 0.0, x_max = 1.0;
  double y_min = 0.0, y_max = 1.0;
  double px_left = 0.0, px_right = 1.0;
  double px_top = 0.0, px_bottom = 1.0;  // px_top maps y_max (SVG y grows down)

  double to_px_x(double x) const {
    return px_left + (x - x_min) / (x_max - x_min) * (px_right - px_left);
  }
  double to_px_y(double y) const {
    return px_bottom - (y - y_min) / (y_max - y_min) * (px_bottom - px_top);
  }
  double from_px_x(double px) const {
    return x_min + (px - px_left) / (px_right - px_left) * (x_max - x_min);
  }
  double from_px_y(double px) const {
    return y_min + (px_bottom - px) / (px_bottom - px_top) * (y_max - y_min);
  }
};

struct PlotSeries {
  std::string label;
  std::vector<std::pair<double, double>> points;  // (x, y)
  bool draw_line = false;
  bool draw_markers = true;
};

/// Everything a render needs; rendering is a pure function of this value.
struct PlotSpec {
  enum class Kind { CostEvolution, JrocScatter } kind = Kind::JrocScatter;
  std::vector<PlotSeries> series;
  std::vector<PlotSeries> hull_lines;
  std::vector<double> isometric_alphas;
  std::vector<std::string> x_tick_labels;  // cost-evolution config labels
  std::string x_label;
  std::string y_label;
  std::string title;
  double width = 720.0;
  double height = 520.0;
};

/// The viewport a spec will render with (also used by the renderer itself).
Viewport plot_viewport(const PlotSpec& spec);

/// Renders SVG 1.1 text. Byte-identical output for identical specs.
std::string render_svg(const PlotSpec& spec);

/// "ALL" for the all-active configuration, otherwise "-i-j" listing the
/// removed attributes (1-based).
std::string config_label(const FeatureConfig& cfg);

/// Three polylines (MC, TC, JC at the context alpha) over configuration
/// index, with config labels as x ticks. `lattice_points` must be a single
/// model's points in full-enumeration order and `labels` must align.
std::string render_cost_evolution(std::span<const CostPoint> lattice_points,
                                  const CostContext& ctx,
                                  std::span<const std::string> labels);

/// Per-model scatter with distinct glyphs, optional hull polylines and
/// isometric lines anchored at each alpha's leftmost intercept.
std::string render_jroc(const std::vector<PointSet>& per_model,
                        const std::vector<Hull>* hulls,
                        std::span<const double> isometric_alphas);

/// Writes via a temp file in the target directory plus an atomic rename.
void write_file_atomic(const std::filesystem::path& path, const std::string& content);

}  // namespace jroc
