#pragma once

/// CSV and minimal SVG writers. Numbers are printed with %.17g so output is
/// byte-stable for identical inputs.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace fractal {

/// Columns sharing one x axis.
struct Table {
  std::vector<double> xs;
  std::vector<std::vector<double>> columns;
  std::vector<std::string> names;  // one per column

  void validate() const {
    if (columns.size() != names.size()) {
      throw std::invalid_argument("Table: one name per column required");
    }
    for (const auto& c : columns) {
      if (c.size() != xs.size()) throw std::invalid_argument("Table: column length mismatch");
    }
  }
};

inline std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

inline void write_csv(std::ostream& os, const Table& t) {
  t.validate();
  os << "x";
  for (const auto& n : t.names) os << ',' << n;
  os << '\n';
  for (std::size_t i = 0; i < t.xs.size(); ++i) {
    os << format_double(t.xs[i]);
    for (const auto& c : t.columns) os << ',' << format_double(c[i]);
    os << '\n';
  }
}

inline std::string to_csv(const Table& t) {
  std::ostringstream os;
  write_csv(os, t);
  return os.str();
}

enum class PlotStyle { Line, Step };

/// Self-contained SVG with one polyline per column and the data ranges in
/// the corner labels. Non-finite samples break the line.
inline void write_svg(std::ostream& os, const Table& t, const std::string& title = {},
                      PlotStyle style = PlotStyle::Line) {
  t.validate();
  constexpr double width = 640.0;
  constexpr double height = 400.0;
  constexpr double margin = 48.0;
  double xmin = HUGE_VAL, xmax = -HUGE_VAL, ymin = HUGE_VAL, ymax = -HUGE_VAL;
  for (double x : t.xs) {
    xmin = std::min(xmin, x);
    xmax = std::max(xmax, x);
  }
  for (const auto& c : t.columns) {
    for (double y : c) {
      if (!std::isfinite(y)) continue;
      ymin = std::min(ymin, y);
      ymax = std::max(ymax, y);
    }
  }
  if (!(xmax > xmin)) xmax = xmin + 1.0;
  if (!(ymax > ymin)) ymax = ymin + 1.0;
  if (!std::isfinite(ymin)) ymin = 0.0, ymax = 1.0;
  const auto px = [&](double x) { return margin + (x - xmin) / (xmax - xmin) * (width - 2 * margin); };
  const auto py = [&](double y) {
    return height - margin - (y - ymin) / (ymax - ymin) * (height - 2 * margin);
  };
  static const char* colours[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e"};
  char buf[96];

  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"640\" height=\"400\" "
        "viewBox=\"0 0 640 400\">\n";
  os << "<rect x=\"48\" y=\"48\" width=\"544\" height=\"304\" fill=\"none\" stroke=\"#444\"/>\n";
  if (!title.empty()) os << "<text x=\"320\" y=\"28\" text-anchor=\"middle\">" << title << "</text>\n";
  std::snprintf(buf, sizeof buf, "<text x=\"48\" y=\"372\">%.4g</text>\n", xmin);
  os << buf;
  std::snprintf(buf, sizeof buf, "<text x=\"592\" y=\"372\" text-anchor=\"end\">%.4g</text>\n", xmax);
  os << buf;
  std::snprintf(buf, sizeof buf, "<text x=\"44\" y=\"352\" text-anchor=\"end\">%.4g</text>\n", ymin);
  os << buf;
  std::snprintf(buf, sizeof buf, "<text x=\"44\" y=\"56\" text-anchor=\"end\">%.4g</text>\n", ymax);
  os << buf;

  for (std::size_t c = 0; c < t.columns.size(); ++c) {
    const auto& col = t.columns[c];
    const char* colour = colours[c % 5];
    std::string pts;
    auto flush = [&] {
      if (!pts.empty()) {
        os << "<polyline fill=\"none\" stroke=\"" << colour << "\" points=\"" << pts << "\"/>\n";
        pts.clear();
      }
    };
    for (std::size_t i = 0; i < t.xs.size(); ++i) {
      if (!std::isfinite(col[i])) {
        flush();
        continue;
      }
      if (style == PlotStyle::Step && !pts.empty()) {
        std::snprintf(buf, sizeof buf, "%.2f,%.2f ", px(t.xs[i]), py(col[i - 1]));
        pts += buf;
      }
      std::snprintf(buf, sizeof buf, "%.2f,%.2f ", px(t.xs[i]), py(col[i]));
      pts += buf;
    }
    flush();
    std::snprintf(buf, sizeof buf, "<text x=\"600\" y=\"%d\" fill=\"%s\">", 64 + 16 * static_cast<int>(c),
                  colour);
    os << buf << t.names[c] << "</text>\n";
  }
  os << "</svg>\n";
}

/// Writes text to a file in binary mode (LF line endings on every platform).
inline void write_file(const std::string& path, const std::string& content) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open '" + path + "' for writing");
  f << content;
  if (!f) throw std::runtime_error("write to '" + path + "' failed");
}

}  // namespace fractal
