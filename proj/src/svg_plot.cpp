#include "repligame/svg_plot.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <stdexcept>
#include <vector>

#include "repligame/csv_export.hpp"
#include "repligame/dynamics.hpp"

namespace repligame {

namespace {

constexpr int kWidth = 900;
constexpr int kHeight = 540;
constexpr int kMarginLeft = 70;
constexpr int kMarginRight = 160;
constexpr int kMarginTop = 50;
constexpr int kMarginBottom = 55;
constexpr size_t kMaxPointsPerCurve = 2000;

const char* kPalette[] = {"#1f77b4", "#ff7f0e", "#2ca02c", "#d62728",
                          "#9467bd", "#8c564b", "#e377c2", "#7f7f7f"};

struct Curve {
  std::string label;
  std::vector<double> values;  // one per sample
};

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.6g", v);
  return buf;
}

std::vector<Curve> collect_curves(const Trajectory& traj, PlotKind kind) {
  const size_t n = traj.samples.front().x.size();
  std::vector<Curve> curves;
  auto add = [&](const std::string& label) -> Curve& {
    curves.push_back(Curve{label, {}});
    curves.back().values.reserve(traj.samples.size());
    return curves.back();
  };
  switch (kind) {
    case PlotKind::kStrategies:
      for (size_t i = 0; i < n; ++i) add("x" + std::to_string(i + 1));
      for (size_t i = 0; i < n; ++i) add("y" + std::to_string(i + 1));
      for (const JointState& s : traj.samples) {
        for (size_t i = 0; i < n; ++i) curves[i].values.push_back(s.x[i]);
        for (size_t i = 0; i < n; ++i) curves[n + i].values.push_back(s.y[i]);
      }
      break;
    case PlotKind::kPayoffDifferences:
      if (!traj.annotated()) {
        throw std::invalid_argument("plot_svg: payoff-differences plot needs an annotated trajectory");
      }
      for (size_t i = 0; i < n; ++i) add("pd x" + std::to_string(i + 1));
      for (size_t i = 0; i < n; ++i) add("pd y" + std::to_string(i + 1));
      for (const LyapunovSample& m : traj.monitors) {
        for (size_t i = 0; i < n; ++i) curves[i].values.push_back(m.pd_row[i]);
        for (size_t i = 0; i < n; ++i) curves[n + i].values.push_back(m.pd_col[i]);
      }
      break;
    case PlotKind::kLyapunov:
      if (!traj.annotated()) {
        throw std::invalid_argument("plot_svg: lyapunov plot needs an annotated trajectory");
      }
      add("V_kl");
      add("V_quad");
      for (const LyapunovSample& m : traj.monitors) {
        curves[0].values.push_back(m.v_kl);
        curves[1].values.push_back(m.v_quad);
      }
      break;
  }
  return curves;
}

}  // namespace

PlotKind plot_kind_from_string(const std::string& name) {
  if (name == "strategies") return PlotKind::kStrategies;
  if (name == "payoff-differences") return PlotKind::kPayoffDifferences;
  if (name == "lyapunov") return PlotKind::kLyapunov;
  throw std::invalid_argument("unknown plot kind: " + name);
}

std::string to_string(PlotKind kind) {
  switch (kind) {
    case PlotKind::kStrategies: return "strategies";
    case PlotKind::kPayoffDifferences: return "payoff-differences";
    case PlotKind::kLyapunov: return "lyapunov";
  }
  return "unknown";
}

std::string plot_svg(const Trajectory& traj, PlotKind kind, const std::string& title) {
  if (traj.samples.empty()) throw std::invalid_argument("plot_svg: empty trajectory");
  const std::vector<Curve> curves = collect_curves(traj, kind);

  const double t0 = traj.samples.front().t;
  const double t1 = traj.samples.back().t;
  double vmin = 0.0, vmax = 0.0;
  bool first = true;
  for (const Curve& c : curves) {
    for (double v : c.values) {
      if (!std::isfinite(v)) continue;
      if (first) {
        vmin = vmax = v;
        first = false;
      } else {
        vmin = std::min(vmin, v);
        vmax = std::max(vmax, v);
      }
    }
  }
  if (first) throw std::invalid_argument("plot_svg: no finite values to plot");
  if (vmax - vmin < 1e-12) {
    vmax += 0.5e-12;
    vmin -= 0.5e-12;
  }
  const double pad = 0.05 * (vmax - vmin);
  vmin -= pad;
  vmax += pad;

  const double plot_w = kWidth - kMarginLeft - kMarginRight;
  const double plot_h = kHeight - kMarginTop - kMarginBottom;
  auto sx = [&](double t) {
    return kMarginLeft + plot_w * (t1 > t0 ? (t - t0) / (t1 - t0) : 0.5);
  };
  auto sy = [&](double v) { return kMarginTop + plot_h * (1.0 - (v - vmin) / (vmax - vmin)); };

  const size_t total = traj.samples.size();
  const size_t stride = std::max<size_t>(1, total / kMaxPointsPerCurve);

  std::string svg;
  svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + std::to_string(kWidth) +
         "\" height=\"" + std::to_string(kHeight) + "\" viewBox=\"0 0 " + std::to_string(kWidth) +
         " " + std::to_string(kHeight) + "\">\n";
  svg += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  svg += "<text x=\"" + std::to_string(kWidth / 2) +
         "\" y=\"28\" font-family=\"sans-serif\" font-size=\"17\" text-anchor=\"middle\">" + title +
         "</text>\n";

  // axes
  svg += "<rect x=\"" + std::to_string(kMarginLeft) + "\" y=\"" + std::to_string(kMarginTop) +
         "\" width=\"" + fmt(plot_w) + "\" height=\"" + fmt(plot_h) +
         "\" fill=\"none\" stroke=\"#333\"/>\n";
  for (int tick = 0; tick <= 5; ++tick) {
    const double tv = t0 + (t1 - t0) * tick / 5.0;
    const double vv = vmin + (vmax - vmin) * tick / 5.0;
    svg += "<text x=\"" + fmt(sx(tv)) + "\" y=\"" + std::to_string(kHeight - kMarginBottom + 20) +
           "\" font-family=\"sans-serif\" font-size=\"12\" text-anchor=\"middle\">" + fmt(tv) +
           "</text>\n";
    svg += "<text x=\"" + std::to_string(kMarginLeft - 8) + "\" y=\"" + fmt(sy(vv) + 4) +
           "\" font-family=\"sans-serif\" font-size=\"12\" text-anchor=\"end\">" + fmt(vv) +
           "</text>\n";
    svg += "<line x1=\"" + std::to_string(kMarginLeft) + "\" y1=\"" + fmt(sy(vv)) + "\" x2=\"" +
           fmt(kMarginLeft + plot_w) + "\" y2=\"" + fmt(sy(vv)) +
           "\" stroke=\"#ddd\" stroke-width=\"0.5\"/>\n";
  }
  svg += "<text x=\"" + std::to_string(kMarginLeft + static_cast<int>(plot_w) / 2) + "\" y=\"" +
         std::to_string(kHeight - 12) +
         "\" font-family=\"sans-serif\" font-size=\"13\" text-anchor=\"middle\">t</text>\n";

  // zero line when it falls inside the range
  if (vmin < 0.0 && vmax > 0.0) {
    svg += "<line x1=\"" + std::to_string(kMarginLeft) + "\" y1=\"" + fmt(sy(0.0)) + "\" x2=\"" +
           fmt(kMarginLeft + plot_w) + "\" y2=\"" + fmt(sy(0.0)) +
           "\" stroke=\"#888\" stroke-dasharray=\"4 3\"/>\n";
  }

  for (size_t ci = 0; ci < curves.size(); ++ci) {
    const Curve& c = curves[ci];
    std::string pts;
    for (size_t i = 0; i < total; i += stride) {
      const double v = c.values[i];
      if (!std::isfinite(v)) continue;
      pts += fmt(sx(traj.samples[i].t));
      pts += ',';
      pts += fmt(sy(v));
      pts += ' ';
    }
    // always include the final sample
    if (std::isfinite(c.values.back())) {
      pts += fmt(sx(traj.samples.back().t));
      pts += ',';
      pts += fmt(sy(c.values.back()));
    }
    const char* color = kPalette[ci % (sizeof(kPalette) / sizeof(kPalette[0]))];
    svg += "<polyline fill=\"none\" stroke=\"";
    svg += color;
    svg += "\" stroke-width=\"1.3\" points=\"" + pts + "\"/>\n";

    const double ly = kMarginTop + 16.0 * static_cast<double>(ci);
    svg += "<line x1=\"" + fmt(kWidth - kMarginRight + 12) + "\" y1=\"" + fmt(ly) + "\" x2=\"" +
           fmt(kWidth - kMarginRight + 34) + "\" y2=\"" + fmt(ly) + "\" stroke=\"";
    svg += color;
    svg += "\" stroke-width=\"2\"/>\n";
    svg += "<text x=\"" + fmt(kWidth - kMarginRight + 40) + "\" y=\"" + fmt(ly + 4) +
           "\" font-family=\"sans-serif\" font-size=\"12\">" + c.label + "</text>\n";
  }

  svg += "</svg>\n";
  return svg;
}

std::string emit_plot(const Trajectory& trajectory, PlotKind kind, const std::string& title,
                      const std::string& path) {
  const std::string body = plot_svg(trajectory, kind, title);
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("emit_plot: cannot open " + path);
  f.write(body.data(), static_cast<std::streamsize>(body.size()));
  if (!f) throw std::runtime_error("emit_plot: write failed for " + path);
  return content_digest(body);
}

}  // namespace repligame
