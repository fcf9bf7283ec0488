#include "gadmp/svg_plot.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <optional>
#include <sstream>

#include "gadmp/format.hpp"
#include "gadmp/trajectory_io.hpp"

namespace gadmp::plot {

namespace {

constexpr double kWidth = 800.0;
constexpr double kChartHeight = 360.0;
constexpr double kGlyphHeight = 140.0;
constexpr double kMargin = 50.0;
constexpr const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd",
                                    "#8c564b", "#e377c2", "#7f7f7f", "#bcbd22", "#17becf"};

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3f", v);
  return buf;
}

std::string escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

struct Range {
  double lo = std::numeric_limits<double>::infinity();
  double hi = -std::numeric_limits<double>::infinity();

  void add(double v) {
    if (!std::isfinite(v)) return;
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  void pad() {
    if (!(lo <= hi)) lo = 0.0, hi = 1.0;
    if (hi - lo < 1e-12) lo -= 0.5, hi += 0.5;
  }
};

void chart_body(std::ostringstream& os, const std::vector<double>& times,
                const std::vector<Series>& series, double top) {
  Range tx, vy;
  for (double t : times) tx.add(t);
  for (const auto& s : series) {
    for (double v : s.values) vy.add(v);
  }
  tx.pad();
  vy.pad();
  const double plot_w = kWidth - 2 * kMargin - 120.0;
  const double plot_h = kChartHeight - 2 * kMargin;
  const auto px = [&](double t) { return kMargin + (t - tx.lo) / (tx.hi - tx.lo) * plot_w; };
  const auto py = [&](double v) { return top + kMargin + (vy.hi - v) / (vy.hi - vy.lo) * plot_h; };

  os << "<rect x=\"" << fmt(kMargin) << "\" y=\"" << fmt(top + kMargin) << "\" width=\""
     << fmt(plot_w) << "\" height=\"" << fmt(plot_h)
     << "\" fill=\"none\" stroke=\"#444\" stroke-width=\"1\"/>\n";
  for (int i = 0; i <= 4; ++i) {
    const double v = vy.lo + (vy.hi - vy.lo) * i / 4.0;
    const double t = tx.lo + (tx.hi - tx.lo) * i / 4.0;
    os << "<text x=\"" << fmt(kMargin - 4) << "\" y=\"" << fmt(py(v) + 4)
       << "\" font-size=\"10\" text-anchor=\"end\">" << escape(format_number(v).substr(0, 8))
       << "</text>\n";
    os << "<text x=\"" << fmt(px(t)) << "\" y=\"" << fmt(top + kMargin + plot_h + 14)
       << "\" font-size=\"10\" text-anchor=\"middle\">" << escape(format_number(t).substr(0, 6))
       << "</text>\n";
  }
  for (std::size_t k = 0; k < series.size(); ++k) {
    const char* color = kPalette[k % std::size(kPalette)];
    os << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.2\" points=\"";
    const std::size_t n = std::min(times.size(), series[k].values.size());
    for (std::size_t i = 0; i < n; ++i) {
      if (!std::isfinite(series[k].values[i])) continue;
      os << fmt(px(times[i])) << ',' << fmt(py(series[k].values[i])) << (i + 1 < n ? " " : "");
    }
    os << "\"/>\n";
    const double ly = top + kMargin + 12.0 + 14.0 * static_cast<double>(k);
    os << "<text x=\"" << fmt(kMargin + plot_w + 10) << "\" y=\"" << fmt(ly)
       << "\" font-size=\"11\" fill=\"" << color << "\">" << escape(series[k].name) << "</text>\n";
  }
}

// Offset of the first SPD(2) block inside the ambient layout, if any.
std::optional<int> spd2_offset(const manifolds::Descriptor& d) {
  if (d.kind() == manifolds::Kind::Spd && d.dimension() == 2) return 0;
  if (d.kind() != manifolds::Kind::Product) return std::nullopt;
  for (std::size_t i = 0; i < d.parts().size(); ++i) {
    if (auto inner = spd2_offset(d.parts()[i])) return d.ambient_offsets()[i] + *inner;
  }
  return std::nullopt;
}

void ellipse_row(std::ostringstream& os, const ManifoldTrajectory& traj, int offset, double top) {
  const std::size_t n = traj.size();
  const std::size_t stride = std::max<std::size_t>(1, n / 10);
  std::vector<std::size_t> picks;
  for (std::size_t i = 0; i < n; i += stride) picks.push_back(i);
  if (picks.back() != n - 1) picks.push_back(n - 1);

  double largest = 0.0;
  std::vector<Eigen::SelfAdjointEigenSolver<Eigen::Matrix2d>> eig;
  for (std::size_t i : picks) {
    Eigen::Matrix2d k;
    k << traj.points[i](offset), traj.points[i](offset + 1), traj.points[i](offset + 2),
        traj.points[i](offset + 3);
    eig.emplace_back(0.5 * (k + k.transpose()));
    largest = std::max(largest, std::sqrt(std::max(eig.back().eigenvalues()(1), 0.0)));
  }
  const double slot = (kWidth - 2 * kMargin) / static_cast<double>(picks.size());
  const double radius = 0.45 * std::min(slot, kGlyphHeight - 30.0);
  os << "<text x=\"" << fmt(kMargin) << "\" y=\"" << fmt(top + 12)
     << "\" font-size=\"11\">SPD(2) ellipses (radii ∝ √eigenvalue)</text>\n";
  for (std::size_t k = 0; k < picks.size(); ++k) {
    const auto& e = eig[k];
    const double cx = kMargin + slot * (static_cast<double>(k) + 0.5);
    const double cy = top + 20 + 0.5 * (kGlyphHeight - 30.0);
    const double r1 = radius * std::sqrt(std::max(e.eigenvalues()(1), 0.0)) / largest;
    const double r2 = radius * std::sqrt(std::max(e.eigenvalues()(0), 0.0)) / largest;
    const Eigen::Vector2d axis = e.eigenvectors().col(1);
    // SVG y grows downward, so the angle is mirrored.
    const double angle = -std::atan2(axis.y(), axis.x()) * 180.0 / 3.14159265358979323846;
    os << "<ellipse cx=\"" << fmt(cx) << "\" cy=\"" << fmt(cy) << "\" rx=\"" << fmt(r1)
       << "\" ry=\"" << fmt(r2) << "\" transform=\"rotate(" << fmt(angle) << ' ' << fmt(cx) << ' '
       << fmt(cy) << ")\" fill=\"#1f77b4\" fill-opacity=\"0.25\" stroke=\"#1f77b4\"/>\n";
    os << "<text x=\"" << fmt(cx) << "\" y=\"" << fmt(top + kGlyphHeight - 2)
       << "\" font-size=\"10\" text-anchor=\"middle\">t="
       << escape(format_number(traj.times[picks[k]]).substr(0, 6)) << "</text>\n";
  }
}

std::string open_svg(double height, const std::string& title) {
  std::ostringstream os;
  os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
     << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << fmt(kWidth) << "\" height=\""
     << fmt(height) << "\" viewBox=\"0 0 " << fmt(kWidth) << ' ' << fmt(height) << "\">\n"
     << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
     << "<text x=\"" << fmt(kWidth / 2) << "\" y=\"24\" font-size=\"14\" text-anchor=\"middle\">"
     << escape(title) << "</text>\n";
  return os.str();
}

}  // namespace

std::string line_chart(const std::vector<double>& times, const std::vector<Series>& series,
                       const std::string& title) {
  std::ostringstream os;
  os << open_svg(kChartHeight, title);
  chart_body(os, times, series, 0.0);
  os << "</svg>\n";
  return os.str();
}

std::string trajectory_chart(const ManifoldTrajectory& traj, const std::string& title) {
  std::vector<Series> series;
  const auto names = io::column_names(traj.descriptor);
  for (std::size_t c = 0; c < names.size(); ++c) {
    Series s{names[c], {}};
    for (const auto& p : traj.points) s.values.push_back(p(static_cast<Eigen::Index>(c)));
    series.push_back(std::move(s));
  }
  const auto offset = traj.empty() ? std::nullopt : spd2_offset(traj.descriptor);
  const double height = kChartHeight + (offset ? kGlyphHeight : 0.0);
  std::ostringstream os;
  os << open_svg(height, title);
  chart_body(os, traj.times, series, 0.0);
  if (offset) ellipse_row(os, traj, *offset, kChartHeight);
  os << "</svg>\n";
  return os.str();
}

}  // namespace gadmp::plot
