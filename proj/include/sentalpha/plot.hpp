#pragma once

#include <string>
#include <vector>

#include "sentalpha/backtest.hpp"

namespace sentalpha::plot {

struct Series {
  std::string name;
  std::vector<double> x;
  std::vector<double> y;
};

struct Axes {
  std::string title;
  std::string x_label;
  std::string y_label;
};

// Minimal standalone SVG documents.
std::string line_chart(const Axes& axes, const std::vector<Series>& series);
std::string bar_chart(const Axes& axes, const std::vector<std::string>& labels, const std::vector<double>& values);
std::string box_chart(const Axes& axes, const std::vector<std::string>& labels, const std::vector<BoxStats>& boxes);

}  // namespace sentalpha::plot
