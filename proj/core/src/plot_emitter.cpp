#include "jroc/plot_emitter.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

#include "jroc/errors.hpp"
#include "jroc/format.hpp"

namespace jroc {

namespace {

// mirrors the classic seven-colour palette of the reference plots
constexpr const char* kPalette[7] = {"green",  "red",    "blue", "orange",
                                     "yellow", "violet", "pink"};
constexpr const char* kIsoColour = "darkgrey";

const char* palette(std::size_t i) { return kPalette[i % 7]; }

std::string fmt(double v) { return format_fixed(v, 2); }

std::string xml_escape(const std::string& s) {
  std::string out;
  out.reserve(s.size());
  for (char ch : s) {
    switch (ch) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += ch;
    }
  }
  return out;
}

// marker glyphs by series order: circle, square, triangle, diamond, x, plus, star
void append_marker(std::string& svg, std::size_t style, double cx, double cy,
                   const char* colour) {
  const double r = 3.5;
  switch (style % 7) {
    case 0:
      svg += "<circle class=\"pt\" cx=\"" + fmt(cx) + "\" cy=\"" + fmt(cy) + "\" r=\"" +
             fmt(r) + "\" fill=\"" + colour + "\"/>\n";
      break;
    case 1:
      svg += "<rect class=\"pt\" x=\"" + fmt(cx - r) + "\" y=\"" + fmt(cy - r) +
             "\" width=\"" + fmt(2 * r) + "\" height=\"" + fmt(2 * r) + "\" fill=\"" +
             colour + "\"/>\n";
      break;
    case 2:
      svg += "<polygon class=\"pt\" points=\"" + fmt(cx) + "," + fmt(cy - r) + " " +
             fmt(cx - r) + "," + fmt(cy + r) + " " + fmt(cx + r) + "," + fmt(cy + r) +
             "\" fill=\"" + colour + "\"/>\n";
      break;
    case 3:
      svg += "<polygon class=\"pt\" points=\"" + fmt(cx) + "," + fmt(cy - r) + " " +
             fmt(cx + r) + "," + fmt(cy) + " " + fmt(cx) + "," + fmt(cy + r) + " " +
             fmt(cx - r) + "," + fmt(cy) + "\" fill=\"" + colour + "\"/>\n";
      break;
    case 4:
      svg += "<path class=\"pt\" d=\"M" + fmt(cx - r) + " " + fmt(cy - r) + "L" +
             fmt(cx + r) + " " + fmt(cy + r) + "M" + fmt(cx - r) + " " + fmt(cy + r) +
             "L" + fmt(cx + r) + " " + fmt(cy - r) + "\" stroke=\"" + colour +
             "\" stroke-width=\"1.5\" fill=\"none\"/>\n";
      break;
    case 5:
      svg += "<path class=\"pt\" d=\"M" + fmt(cx - r) + " " + fmt(cy) + "L" +
             fmt(cx + r) + " " + fmt(cy) + "M" + fmt(cx) + " " + fmt(cy - r) + "L" +
             fmt(cx) + " " + fmt(cy + r) + "\" stroke=\"" + colour +
             "\" stroke-width=\"1.5\" fill=\"none\"/>\n";
      break;
    default:
      svg += "<path class=\"pt\" d=\"M" + fmt(cx) + " " + fmt(cy - r) + "L" + fmt(cx) +
             " " + fmt(cy + r) + "M" + fmt(cx - r) + " " + fmt(cy) + "L" + fmt(cx + r) +
             " " + fmt(cy) + "M" + fmt(cx - 0.7 * r) + " " + fmt(cy - 0.7 * r) + "L" +
             fmt(cx + 0.7 * r) + " " + fmt(cy + 0.7 * r) + "M" + fmt(cx - 0.7 * r) +
             " " + fmt(cy + 0.7 * r) + "L" + fmt(cx + 0.7 * r) + " " +
             fmt(cy - 0.7 * r) + "\" stroke=\"" + colour +
             "\" stroke-width=\"1.2\" fill=\"none\"/>\n";
  }
}

std::pair<double, double> data_extent(const PlotSpec& spec, bool x_axis) {
  double lo = std::numeric_limits<double>::infinity();
  double hi = -std::numeric_limits<double>::infinity();
  auto visit = [&](const std::vector<PlotSeries>& list) {
    for (const auto& s : list) {
      for (const auto& [x, y] : s.points) {
        const double v = x_axis ? x : y;
        lo = std::min(lo, v);
        hi = std::max(hi, v);
      }
    }
  };
  visit(spec.series);
  visit(spec.hull_lines);
  if (!std::isfinite(lo)) return {0.0, 1.0};
  return {lo, hi};
}

void append_axes(std::string& svg, const PlotSpec& spec, const Viewport& vp) {
  svg += "<g class=\"axes\" stroke=\"black\" stroke-width=\"1\">\n";
  svg += "<line x1=\"" + fmt(vp.px_left) + "\" y1=\"" + fmt(vp.px_bottom) + "\" x2=\"" +
         fmt(vp.px_right) + "\" y2=\"" + fmt(vp.px_bottom) + "\"/>\n";
  svg += "<line x1=\"" + fmt(vp.px_left) + "\" y1=\"" + fmt(vp.px_bottom) + "\" x2=\"" +
         fmt(vp.px_left) + "\" y2=\"" + fmt(vp.px_top) + "\"/>\n";
  svg += "</g>\n";

  // y ticks: 5 evenly spaced values
  svg += "<g class=\"yticks\" font-size=\"11\" text-anchor=\"end\">\n";
  for (int t = 0; t <= 4; ++t) {
    const double v = vp.y_min + (vp.y_max - vp.y_min) * t / 4.0;
    const double py = vp.to_px_y(v);
    svg += "<line x1=\"" + fmt(vp.px_left - 4) + "\" y1=\"" + fmt(py) + "\" x2=\"" +
           fmt(vp.px_left) + "\" y2=\"" + fmt(py) + "\" stroke=\"black\"/>\n";
    svg += "<text x=\"" + fmt(vp.px_left - 7) + "\" y=\"" + fmt(py + 3.5) + "\">" +
           format_fixed(v, 3) + "</text>\n";
  }
  svg += "</g>\n";

  if (spec.kind == PlotSpec::Kind::CostEvolution) {
    svg += "<g class=\"xticks\" font-size=\"10\">\n";
    for (std::size_t i = 0; i < spec.x_tick_labels.size(); ++i) {
      const double px = vp.to_px_x(static_cast<double>(i));
      svg += "<line x1=\"" + fmt(px) + "\" y1=\"" + fmt(vp.px_bottom) + "\" x2=\"" +
             fmt(px) + "\" y2=\"" + fmt(vp.px_bottom + 4) + "\" stroke=\"black\"/>\n";
      svg += "<text x=\"" + fmt(px) + "\" y=\"" + fmt(vp.px_bottom + 8) +
             "\" transform=\"rotate(60 " + fmt(px) + " " + fmt(vp.px_bottom + 8) +
             ")\">" + xml_escape(spec.x_tick_labels[i]) + "</text>\n";
    }
    svg += "</g>\n";
  } else {
    svg += "<g class=\"xticks\" font-size=\"11\" text-anchor=\"middle\">\n";
    for (int t = 0; t <= 4; ++t) {
      const double v = vp.x_min + (vp.x_max - vp.x_min) * t / 4.0;
      const double px = vp.to_px_x(v);
      svg += "<line x1=\"" + fmt(px) + "\" y1=\"" + fmt(vp.px_bottom) + "\" x2=\"" +
             fmt(px) + "\" y2=\"" + fmt(vp.px_bottom + 4) + "\" stroke=\"black\"/>\n";
      svg += "<text x=\"" + fmt(px) + "\" y=\"" + fmt(vp.px_bottom + 18) + "\">" +
             format_fixed(v, 3) + "</text>\n";
    }
    svg += "</g>\n";
  }

  svg += "<text class=\"xlabel\" font-size=\"13\" text-anchor=\"middle\" x=\"" +
         fmt((vp.px_left + vp.px_right) / 2) + "\" y=\"" + fmt(spec.height - 8) + "\">" +
         xml_escape(spec.x_label) + "</text>\n";
  svg += "<text class=\"ylabel\" font-size=\"13\" text-anchor=\"middle\" transform=\"rotate(-90 14 " +
         fmt((vp.px_top + vp.px_bottom) / 2) + ")\" x=\"14\" y=\"" +
         fmt((vp.px_top + vp.px_bottom) / 2) + "\">" + xml_escape(spec.y_label) +
         "</text>\n";
  if (!spec.title.empty()) {
    svg += "<text class=\"title\" font-size=\"15\" text-anchor=\"middle\" x=\"" +
           fmt(spec.width / 2) + "\" y=\"18\">" + xml_escape(spec.title) + "</text>\n";
  }
}

void append_polyline(std::string& svg, const PlotSeries& s, const Viewport& vp,
                     const char* colour, const char* cls, const char* dash) {
  if (s.points.empty()) return;
  svg += "<polyline class=\"";
  svg += cls;
  svg += "\" fill=\"none\" stroke=\"";
  svg += colour;
  svg += "\" stroke-width=\"1.5\"";
  if (dash != nullptr) {
    svg += " stroke-dasharray=\"";
    svg += dash;
    svg += "\"";
  }
  svg += " points=\"";
  bool first = true;
  for (const auto& [x, y] : s.points) {
    if (!first) svg += ' ';
    svg += fmt(vp.to_px_x(x)) + "," + fmt(vp.to_px_y(y));
    first = false;
  }
  svg += "\"/>\n";
}

void append_legend(std::string& svg, const PlotSpec& spec, const Viewport& vp) {
  if (spec.series.empty()) return;
  double y = vp.px_top + 6.0;
  svg += "<g class=\"legend\" font-size=\"11\">\n";
  for (std::size_t i = 0; i < spec.series.size(); ++i) {
    const double x = vp.px_right - 120.0;
    append_marker(svg, i, x, y, palette(i));
    svg += "<text x=\"" + fmt(x + 8) + "\" y=\"" + fmt(y + 3.5) + "\">" +
           xml_escape(spec.series[i].label) + "</text>\n";
    y += 14.0;
  }
  svg += "</g>\n";
}

void append_isometrics(std::string& svg, const PlotSpec& spec, const Viewport& vp) {
  if (spec.isometric_alphas.empty()) return;
  svg += "<g class=\"isometrics\" font-size=\"10\" fill=\"" + std::string(kIsoColour) +
         "\">\n";
  for (double alpha : spec.isometric_alphas) {
    // leftmost intercept over every plotted point
    double best = std::numeric_limits<double>::infinity();
    double min_x = std::numeric_limits<double>::infinity();
    const double slope = isometric_slope(alpha);
    for (const auto& s : spec.series) {
      for (const auto& [x, y] : s.points) {
        min_x = std::min(min_x, x);
        if (std::isfinite(slope)) best = std::min(best, y - slope * x);
      }
    }
    if (!std::isfinite(min_x)) continue;
    std::string label = "a=" + format_double(alpha);
    if (!std::isfinite(slope)) {
      const double px = vp.to_px_x(min_x);
      svg += "<line class=\"iso\" x1=\"" + fmt(px) + "\" y1=\"" + fmt(vp.px_top) +
             "\" x2=\"" + fmt(px) + "\" y2=\"" + fmt(vp.px_bottom) + "\" stroke=\"" +
             kIsoColour + "\" stroke-dasharray=\"5,4\"/>\n";
      svg += "<text x=\"" + fmt(px + 3) + "\" y=\"" + fmt(vp.px_top + 10) + "\">" +
             label + "</text>\n";
      continue;
    }
    // clip y = slope*x + best to the viewport x-range
    const double x1 = vp.x_min, x2 = vp.x_max;
    const double y1 = slope * x1 + best, y2 = slope * x2 + best;
    svg += "<line class=\"iso\" x1=\"" + fmt(vp.to_px_x(x1)) + "\" y1=\"" +
           fmt(vp.to_px_y(y1)) + "\" x2=\"" + fmt(vp.to_px_x(x2)) + "\" y2=\"" +
           fmt(vp.to_px_y(y2)) + "\" stroke=\"" + kIsoColour +
           "\" stroke-dasharray=\"5,4\"/>\n";
    svg += "<text x=\"" + fmt(vp.to_px_x(x1) + 3) + "\" y=\"" +
           fmt(vp.to_px_y(y1) - 4) + "\">" + label + "</text>\n";
  }
  svg += "</g>\n";
}

}  // namespace

Viewport plot_viewport(const PlotSpec& spec) {
  Viewport vp;
  const auto [x_lo, x_hi] = data_extent(spec, true);
  const auto [y_lo, y_hi] = data_extent(spec, false);
  vp.x_min = 0.0;
  vp.x_max = x_hi > 0.0 ? x_hi * 1.05 : 1.0;
  vp.y_min = 0.0;
  vp.y_max = y_hi > 0.0 ? y_hi * 1.05 : 1.0;
  if (spec.kind == PlotSpec::Kind::CostEvolution) {
    vp.x_min = -0.5;
    vp.x_max = std::max(static_cast<double>(spec.x_tick_labels.size()) - 0.5, 0.5);
  }
  vp.px_left = 56.0;
  vp.px_right = spec.width - 16.0;
  vp.px_top = 26.0;
  vp.px_bottom = spec.height - (spec.kind == PlotSpec::Kind::CostEvolution ? 76.0 : 46.0);
  (void)x_lo;
  (void)y_lo;
  return vp;
}

std::string render_svg(const PlotSpec& spec) {
  const Viewport vp = plot_viewport(spec);
  std::string svg;
  svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" +
         fmt(spec.width) + "\" height=\"" + fmt(spec.height) + "\" viewBox=\"0 0 " +
         fmt(spec.width) + " " + fmt(spec.height) + "\">\n";
  svg += "<rect width=\"" + fmt(spec.width) + "\" height=\"" + fmt(spec.height) +
         "\" fill=\"white\"/>\n";
  append_axes(svg, spec, vp);
  append_isometrics(svg, spec, vp);
  for (std::size_t i = 0; i < spec.hull_lines.size(); ++i)
    append_polyline(svg, spec.hull_lines[i], vp, palette(i), "hull", "2,3");
  for (std::size_t i = 0; i < spec.series.size(); ++i) {
    const PlotSeries& s = spec.series[i];
    if (s.draw_line) append_polyline(svg, s, vp, palette(i), "line", nullptr);
    if (s.draw_markers) {
      svg += "<g class=\"series\">\n";
      for (const auto& [x, y] : s.points)
        append_marker(svg, i, vp.to_px_x(x), vp.to_px_y(y), palette(i));
      svg += "</g>\n";
    }
  }
  append_legend(svg, spec, vp);
  svg += "</svg>\n";
  return svg;
}

std::string config_label(const FeatureConfig& cfg) {
  if (cfg.active_count() == cfg.size()) return "ALL";
  std::string label;
  for (std::size_t j = 0; j < cfg.size(); ++j)
    if (!cfg.active(j)) label += "-" + std::to_string(j + 1);
  return label;
}

std::string render_cost_evolution(std::span<const CostPoint> lattice_points,
                                  const CostContext& ctx,
                                  std::span<const std::string> labels) {
  if (lattice_points.empty())
    throw std::invalid_argument("cost evolution needs at least one point");
  if (lattice_points.size() != labels.size())
    throw std::invalid_argument("cost evolution labels do not align with points");

  PlotSpec spec;
  spec.kind = PlotSpec::Kind::CostEvolution;
  spec.x_label = "feature configuration";
  spec.y_label = "cost";
  spec.title = "MC / TC / JC evolution";
  spec.x_tick_labels.assign(labels.begin(), labels.end());

  PlotSeries mc{"MC", {}, true, true};
  PlotSeries tc{"TC", {}, true, true};
  PlotSeries jc{"JC", {}, true, true};
  for (std::size_t i = 0; i < lattice_points.size(); ++i) {
    const double x = static_cast<double>(i);
    mc.points.emplace_back(x, lattice_points[i].mc);
    tc.points.emplace_back(x, lattice_points[i].tc);
    jc.points.emplace_back(x, joint_cost(lattice_points[i].mc, lattice_points[i].tc,
                                         ctx.alpha));
  }
  spec.series = {std::move(mc), std::move(tc), std::move(jc)};
  return render_svg(spec);
}

std::string render_jroc(const std::vector<PointSet>& per_model,
                        const std::vector<Hull>* hulls,
                        std::span<const double> isometric_alphas) {
  PlotSpec spec;
  spec.kind = PlotSpec::Kind::JrocScatter;
  spec.x_label = "TC";
  spec.y_label = "MC";
  spec.title = "JROC";
  spec.isometric_alphas.assign(isometric_alphas.begin(), isometric_alphas.end());
  for (const PointSet& set : per_model) {
    PlotSeries s;
    s.label = set.model_id;
    s.draw_markers = true;
    for (const CostPoint& p : set.points) s.points.emplace_back(p.tc, p.mc);
    spec.series.push_back(std::move(s));
  }
  if (hulls != nullptr) {
    for (const Hull& h : *hulls) {
      PlotSeries s;
      s.draw_line = true;
      s.draw_markers = false;
      for (const CostPoint& p : h.vertices) s.points.emplace_back(p.tc, p.mc);
      spec.hull_lines.push_back(std::move(s));
    }
  }
  return render_svg(spec);
}

void write_file_atomic(const std::filesystem::path& path, const std::string& content) {
  namespace fs = std::filesystem;
  const fs::path dir = path.has_parent_path() ? path.parent_path() : fs::path(".");
  const fs::path tmp = dir / (path.filename().string() + ".tmp");
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw ParseError("cannot write file: " + tmp.string());
    out << content;
    out.flush();
    if (!out) throw ParseError("short write to: " + tmp.string());
  }
  fs::rename(tmp, path);
}

}  // namespace jroc
