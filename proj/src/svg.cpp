#include "binfar/svg.hpp"

#include <algorithm>
#include <cstdio>
#include <sstream>

namespace binfar::svg {

namespace {

constexpr int kWidth = 640;
constexpr int kHeight = 480;
constexpr int kMargin = 50;

const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b"};

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.2f", v);
  return buf;
}

double map_x(double frac) { return kMargin + frac * (kWidth - 2 * kMargin); }
double map_y(double frac) { return kHeight - kMargin - frac * (kHeight - 2 * kMargin); }

void open_svg(std::ostringstream& out, const std::string& title) {
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\""
      << kHeight << "\" viewBox=\"0 0 " << kWidth << ' ' << kHeight << "\">\n";
  out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  out << "<text x=\"" << kWidth / 2 << "\" y=\"24\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"15\">"
      << title << "</text>\n";
}

void axes(std::ostringstream& out, const std::string& xlabel, const std::string& ylabel) {
  out << "<rect x=\"" << kMargin << "\" y=\"" << kMargin << "\" width=\"" << kWidth - 2 * kMargin
      << "\" height=\"" << kHeight - 2 * kMargin
      << "\" fill=\"none\" stroke=\"#333\" stroke-width=\"1\"/>\n";
  out << "<text x=\"" << kWidth / 2 << "\" y=\"" << kHeight - 12
      << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"12\">" << xlabel
      << "</text>\n";
  out << "<text x=\"14\" y=\"" << kHeight / 2
      << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"12\" transform=\"rotate(-90 14 "
      << kHeight / 2 << ")\">" << ylabel << "</text>\n";
}

void polyline(std::ostringstream& out, const std::vector<std::pair<double, double>>& pts,
              const char* color) {
  out << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.5\" points=\"";
  for (const auto& [x, y] : pts) out << num(x) << ',' << num(y) << ' ';
  out << "\"/>\n";
}

}  // namespace

std::string roc_plot(const std::vector<std::pair<std::string, RocCurve>>& curves,
                     const std::string& title) {
  std::ostringstream out;
  open_svg(out, title);
  axes(out, "false positive rate", "true positive rate");
  out << "<line x1=\"" << num(map_x(0)) << "\" y1=\"" << num(map_y(0)) << "\" x2=\""
      << num(map_x(1)) << "\" y2=\"" << num(map_y(1))
      << "\" stroke=\"#999\" stroke-dasharray=\"4 3\"/>\n";
  int color = 0;
  int legend_y = kMargin + 16;
  for (const auto& [label, curve] : curves) {
    std::vector<std::pair<double, double>> pts;
    for (Eigen::Index i = 0; i < curve.fp_rate.size(); ++i) {
      pts.emplace_back(map_x(curve.fp_rate(i)), map_y(curve.tp_rate(i)));
    }
    const char* c = kPalette[color % 6];
    polyline(out, pts, c);
    out << "<text x=\"" << kWidth - kMargin - 8 << "\" y=\"" << legend_y
        << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"11\" fill=\"" << c
        << "\">" << label << " (AUC " << num(curve.auc) << ")</text>\n";
    legend_y += 15;
    ++color;
  }
  out << "</svg>\n";
  return out.str();
}

std::string probability_plot(const ShadedSeries& series) {
  std::ostringstream out;
  open_svg(out, series.title);
  const std::size_t n = series.dates.size();
  if (n >= 2) {
    const auto frac = [&](std::size_t i) {
      return static_cast<double>(i) / static_cast<double>(n - 1);
    };
    for (std::size_t i = 0; i < n; ++i) {
      if (series.shade[i] == 0) continue;
      std::size_t j = i;
      while (j + 1 < n && series.shade[j + 1] == 1) ++j;
      const double x0 = map_x(frac(i));
      const double x1 = map_x(frac(j) + (j + 1 < n ? 0.5 / static_cast<double>(n - 1) : 0.0));
      out << "<rect x=\"" << num(x0) << "\" y=\"" << kMargin << "\" width=\"" << num(x1 - x0)
          << "\" height=\"" << kHeight - 2 * kMargin << "\" fill=\"#cccccc\" opacity=\"0.6\"/>\n";
      i = j;
    }
    std::vector<std::pair<double, double>> pts;
    for (std::size_t i = 0; i < n; ++i) {
      pts.emplace_back(map_x(frac(i)), map_y(std::clamp(series.values[i], 0.0, 1.0)));
    }
    polyline(out, pts, kPalette[0]);
    out << "<text x=\"" << num(map_x(0)) << "\" y=\"" << kHeight - kMargin + 16
        << "\" font-family=\"sans-serif\" font-size=\"11\">" << to_string(series.dates.front())
        << "</text>\n";
    out << "<text x=\"" << num(map_x(1)) << "\" y=\"" << kHeight - kMargin + 16
        << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"11\">"
        << to_string(series.dates.back()) << "</text>\n";
  }
  axes(out, "", "probability");
  out << "</svg>\n";
  return out.str();
}

}  // namespace binfar::svg
