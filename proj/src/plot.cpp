#include <algorithm>
#include <cstdio>
#include <sstream>
#include <string>

#include "star/experiment.hpp"

namespace star {
namespace {

struct Series {
  std::string label;
  std::string color;
  bool dashed = false;
  std::vector<double> ys;
};

constexpr double kPanelW = 420, kPanelH = 260, kMargin = 48;

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

void panel(std::ostringstream& os, double x0, const std::string& title,
           const std::vector<Series>& series, double y_max) {
  std::size_t n = 0;
  for (const auto& s : series) n = std::max(n, s.ys.size());
  if (y_max <= 0) y_max = 1;
  const auto px = [&](std::size_t i) {
    return x0 + kMargin + (n <= 1 ? 0.0 : (kPanelW - kMargin - 10) * i / double(n - 1));
  };
  const auto py = [&](double y) { return 30 + (kPanelH - 30 - kMargin) * (1 - y / y_max); };

  os << "<text x=\"" << fmt(x0 + kPanelW / 2) << "\" y=\"18\" text-anchor=\"middle\">" << title
     << "</text>\n";
  os << "<line x1=\"" << fmt(x0 + kMargin) << "\" y1=\"" << fmt(py(0)) << "\" x2=\""
     << fmt(x0 + kPanelW - 10) << "\" y2=\"" << fmt(py(0)) << "\" stroke=\"black\"/>\n";
  os << "<line x1=\"" << fmt(x0 + kMargin) << "\" y1=\"" << fmt(py(0)) << "\" x2=\""
     << fmt(x0 + kMargin) << "\" y2=\"" << fmt(py(y_max)) << "\" stroke=\"black\"/>\n";
  for (int t = 0; t <= 4; ++t) {
    const double y = y_max * t / 4;
    os << "<text x=\"" << fmt(x0 + kMargin - 4) << "\" y=\"" << fmt(py(y) + 4)
       << "\" text-anchor=\"end\" font-size=\"10\">" << fmt(y) << "</text>\n";
  }
  for (std::size_t i = 0; i < n; ++i) {
    os << "<text x=\"" << fmt(px(i)) << "\" y=\"" << fmt(py(0) + 14)
       << "\" text-anchor=\"middle\" font-size=\"10\">" << i + 1 << "</text>\n";
  }
  for (const auto& s : series) {
    if (s.ys.empty()) continue;
    os << "<polyline fill=\"none\" stroke=\"" << s.color << "\" stroke-width=\"2\""
       << (s.dashed ? " stroke-dasharray=\"6,4\"" : "") << " points=\"";
    for (std::size_t i = 0; i < s.ys.size(); ++i) os << fmt(px(i)) << ',' << fmt(py(s.ys[i])) << ' ';
    os << "\"/>\n";
  }
}

const char* design_color(DesignKind d) {
  switch (d) {
    case DesignKind::Parallel: return "#1f77b4";
    case DesignKind::EffectivenessAlone: return "#d62728";
    case DesignKind::SocialAlone: return "#2ca02c";
    case DesignKind::Blended: return "#ff7f0e";
  }
  return "black";
}

}  // namespace

std::string render_curves_svg(const MetricsTable& table, SocialCodeKind code) {
  const auto agg = aggregate_over_seeds(table);
  std::vector<Series> pct, rows;
  std::vector<double> bound;
  double rows_max = 0;
  for (DesignKind d : kDesigns) {
    Series p{std::string(to_string(d)), design_color(d), false, {}};
    Series r = p;
    for (const auto& a : agg) {
      if (a.code != code || a.design != d) continue;
      p.ys.push_back(a.pct_mean);
      r.ys.push_back(a.rows_mean);
      rows_max = std::max(rows_max, a.rows_mean);
      if (bound.size() < r.ys.size()) bound.push_back(a.bound_mean);
    }
    if (!p.ys.empty()) {
      pct.push_back(std::move(p));
      rows.push_back(std::move(r));
    }
  }
  for (double b : bound) rows_max = std::max(rows_max, b);
  rows.push_back({"upper bound", "black", true, bound});

  std::ostringstream os;
  const double width = 2 * kPanelW + 20;
  const double height = kPanelH + 20 + 16 * static_cast<double>(rows.size());
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << fmt(width) << "\" height=\""
     << fmt(height) << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
  os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  panel(os, 0, "% permissible actions (" + std::string(to_string(code)) + ")", pct, 100);
  panel(os, kPanelW + 20, "rows cleared (" + std::string(to_string(code)) + ")", rows,
        rows_max * 1.1);
  double ly = kPanelH + 10;
  for (const auto& s : rows) {
    os << "<line x1=\"" << fmt(kMargin) << "\" y1=\"" << fmt(ly) << "\" x2=\"" << fmt(kMargin + 24)
       << "\" y2=\"" << fmt(ly) << "\" stroke=\"" << s.color << "\" stroke-width=\"2\""
       << (s.dashed ? " stroke-dasharray=\"6,4\"" : "") << "/>\n";
    os << "<text x=\"" << fmt(kMargin + 30) << "\" y=\"" << fmt(ly + 4) << "\">" << s.label
       << "</text>\n";
    ly += 16;
  }
  os << "</svg>\n";
  return os.str();
}

}  // namespace star
