#include "sentalpha/plot.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <fmt/format.h>

namespace sentalpha::plot {

namespace {

constexpr double kWidth = 720;
constexpr double kHeight = 420;
constexpr double kLeft = 70;
constexpr double kRight = 150;
constexpr double kTop = 40;
constexpr double kBottom = 50;
constexpr const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd", "#8c564b"};

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
  void finish() {
    if (!std::isfinite(lo)) lo = 0.0, hi = 1.0;
    if (hi - lo < 1e-12) lo -= 0.5, hi += 0.5;
    const double pad = 0.05 * (hi - lo);
    lo -= pad;
    hi += pad;
  }
};

class Canvas {
 public:
  Canvas(const Axes& axes, Range x, Range y) : x_(x), y_(y) {
    svg_ = fmt::format(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{0}\" height=\"{1}\" viewBox=\"0 0 {0} {1}\" "
        "font-family=\"sans-serif\" font-size=\"12\">\n<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n",
        kWidth, kHeight);
    svg_ += fmt::format("<text x=\"{}\" y=\"22\" text-anchor=\"middle\" font-size=\"15\">{}</text>\n",
                        (kLeft + kWidth - kRight) / 2, escape(axes.title));
    svg_ += fmt::format("<text x=\"{}\" y=\"{}\" text-anchor=\"middle\">{}</text>\n", (kLeft + kWidth - kRight) / 2,
                        kHeight - 10, escape(axes.x_label));
    svg_ += fmt::format("<text x=\"16\" y=\"{0}\" text-anchor=\"middle\" transform=\"rotate(-90 16 {0})\">{1}</text>\n",
                        (kTop + kHeight - kBottom) / 2, escape(axes.y_label));
    svg_ += fmt::format("<rect x=\"{}\" y=\"{}\" width=\"{}\" height=\"{}\" fill=\"none\" stroke=\"#444\"/>\n", kLeft,
                        kTop, kWidth - kLeft - kRight, kHeight - kTop - kBottom);
    for (int i = 0; i <= 4; ++i) {
      const double v = y_.lo + (y_.hi - y_.lo) * i / 4.0;
      svg_ += fmt::format("<text x=\"{}\" y=\"{:.1f}\" text-anchor=\"end\">{:.3g}</text>\n", kLeft - 6, py(v) + 4, v);
      svg_ += fmt::format("<line x1=\"{}\" x2=\"{}\" y1=\"{:.1f}\" y2=\"{:.1f}\" stroke=\"#ddd\"/>\n", kLeft,
                          kWidth - kRight, py(v), py(v));
    }
  }

  [[nodiscard]] double px(double v) const { return kLeft + (v - x_.lo) / (x_.hi - x_.lo) * (kWidth - kLeft - kRight); }
  [[nodiscard]] double py(double v) const {
    return kHeight - kBottom - (v - y_.lo) / (y_.hi - y_.lo) * (kHeight - kTop - kBottom);
  }

  void x_tick(double v, const std::string& label) {
    svg_ += fmt::format("<text x=\"{:.1f}\" y=\"{}\" text-anchor=\"middle\">{}</text>\n", px(v), kHeight - kBottom + 16,
                        escape(label));
  }
  void legend(std::size_t i, const std::string& name) {
    const double y = kTop + 10 + 18.0 * static_cast<double>(i);
    svg_ += fmt::format("<rect x=\"{}\" y=\"{}\" width=\"12\" height=\"12\" fill=\"{}\"/>\n", kWidth - kRight + 10,
                        y - 10, kPalette[i % 6]);
    svg_ += fmt::format("<text x=\"{}\" y=\"{}\">{}</text>\n", kWidth - kRight + 28, y, escape(name));
  }
  void raw(const std::string& s) { svg_ += s; }
  std::string finish() { return svg_ + "</svg>\n"; }

 private:
  Range x_;
  Range y_;
  std::string svg_;
};

}  // namespace

std::string line_chart(const Axes& axes, const std::vector<Series>& series) {
  Range xr;
  Range yr;
  for (const auto& s : series) {
    for (double v : s.x) xr.add(v);
    for (double v : s.y) yr.add(v);
  }
  xr.finish();
  yr.finish();
  Canvas canvas(axes, xr, yr);
  for (int i = 0; i <= 4; ++i) {
    const double v = xr.lo + (xr.hi - xr.lo) * i / 4.0;
    canvas.x_tick(v, fmt::format("{:.4g}", v));
  }
  for (std::size_t k = 0; k < series.size(); ++k) {
    std::string points;
    for (std::size_t i = 0; i < series[k].x.size() && i < series[k].y.size(); ++i) {
      if (!std::isfinite(series[k].y[i])) continue;
      points += fmt::format("{:.1f},{:.1f} ", canvas.px(series[k].x[i]), canvas.py(series[k].y[i]));
    }
    canvas.raw(fmt::format("<polyline fill=\"none\" stroke=\"{}\" stroke-width=\"1.5\" points=\"{}\"/>\n",
                           kPalette[k % 6], points));
    canvas.legend(k, series[k].name);
  }
  return canvas.finish();
}

std::string bar_chart(const Axes& axes, const std::vector<std::string>& labels, const std::vector<double>& values) {
  Range xr;
  xr.lo = -0.5;
  xr.hi = static_cast<double>(values.size()) - 0.5;
  Range yr;
  yr.add(0.0);
  for (double v : values) yr.add(v);
  yr.finish();
  Canvas canvas(axes, xr, yr);
  const double half = 0.35 * (canvas.px(1.0) - canvas.px(0.0));
  for (std::size_t i = 0; i < values.size(); ++i) {
    const double c = canvas.px(static_cast<double>(i));
    if (std::isfinite(values[i])) {
      const double top = std::min(canvas.py(values[i]), canvas.py(0.0));
      const double h = std::abs(canvas.py(values[i]) - canvas.py(0.0));
      canvas.raw(fmt::format("<rect x=\"{:.1f}\" y=\"{:.1f}\" width=\"{:.1f}\" height=\"{:.1f}\" fill=\"{}\"/>\n",
                             c - half, top, 2 * half, h, kPalette[0]));
    }
    if (i < labels.size()) canvas.x_tick(static_cast<double>(i), labels[i]);
  }
  return canvas.finish();
}

std::string box_chart(const Axes& axes, const std::vector<std::string>& labels, const std::vector<BoxStats>& boxes) {
  Range xr;
  xr.lo = -0.5;
  xr.hi = static_cast<double>(boxes.size()) - 0.5;
  Range yr;
  for (const auto& b : boxes) {
    yr.add(b.min);
    yr.add(b.max);
  }
  yr.finish();
  Canvas canvas(axes, xr, yr);
  const double half = 0.25 * (canvas.px(1.0) - canvas.px(0.0));
  for (std::size_t i = 0; i < boxes.size(); ++i) {
    const auto& b = boxes[i];
    const double c = canvas.px(static_cast<double>(i));
    const char* color = kPalette[i % 6];
    canvas.raw(fmt::format("<line x1=\"{0:.1f}\" x2=\"{0:.1f}\" y1=\"{1:.1f}\" y2=\"{2:.1f}\" stroke=\"{3}\"/>\n", c,
                           canvas.py(b.min), canvas.py(b.max), color));
    canvas.raw(fmt::format("<rect x=\"{:.1f}\" y=\"{:.1f}\" width=\"{:.1f}\" height=\"{:.1f}\" fill=\"white\" "
                           "stroke=\"{}\"/>\n",
                           c - half, canvas.py(b.q3), 2 * half, canvas.py(b.q1) - canvas.py(b.q3), color));
    for (double v : {b.min, b.median, b.max}) {
      canvas.raw(fmt::format("<line x1=\"{0:.1f}\" x2=\"{1:.1f}\" y1=\"{2:.1f}\" y2=\"{2:.1f}\" stroke=\"{3}\"/>\n",
                             c - half, c + half, canvas.py(v), color));
    }
    if (i < labels.size()) canvas.x_tick(static_cast<double>(i), labels[i]);
  }
  return canvas.finish();
}

}  // namespace sentalpha::plot
