#include "sentalpha/correlation.hpp"

#include <algorithm>
#include <cmath>

#include <fmt/format.h>

#include "sentalpha/csv.hpp"
#include "sentalpha/error.hpp"

namespace sentalpha {

namespace {

double mean(std::span<const double> x) {
  double s = 0.0;
  for (double v : x) s += v;
  return s / static_cast<double>(x.size());
}

}  // namespace

double pearson(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) {
    throw Error(ErrorCode::LengthMismatch, fmt::format("{} vs {} samples", x.size(), y.size()));
  }
  if (x.size() < 2) throw Error(ErrorCode::InvalidArgument, "pearson needs at least two samples");
  const double mx = mean(x);
  const double my = mean(y);
  double sxy = 0.0;
  double sxx = 0.0;
  double syy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double dx = x[i] - mx;
    const double dy = y[i] - my;
    sxy += dx * dy;
    sxx += dx * dx;
    syy += dy * dy;
  }
  if (sxx == 0.0 || syy == 0.0) throw Error(ErrorCode::ConstantSeries, "correlation undefined for a constant series");
  const double r = sxy / std::sqrt(sxx * syy);
  return std::clamp(r, -1.0, 1.0);
}

std::vector<double> lagged_correlation(std::span<const double> x, std::span<const double> y, std::size_t max_lag) {
  if (x.size() != y.size()) {
    throw Error(ErrorCode::LengthMismatch, fmt::format("{} vs {} samples", x.size(), y.size()));
  }
  if (x.size() <= max_lag + 1) {
    throw Error(ErrorCode::InvalidArgument, fmt::format("{} samples too short for lag {}", x.size(), max_lag));
  }
  std::vector<double> out;
  out.reserve(max_lag + 1);
  const std::size_t n = x.size();
  for (std::size_t lag = 0; lag <= max_lag; ++lag) {
    out.push_back(pearson(x.subspan(0, n - lag), y.subspan(lag, n - lag)));
  }
  return out;
}

std::vector<double> acf(std::span<const double> x, std::size_t max_lag) {
  if (x.size() <= max_lag + 1) {
    throw Error(ErrorCode::InvalidArgument, fmt::format("{} samples too short for lag {}", x.size(), max_lag));
  }
  const double m = mean(x);
  std::vector<double> centered(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) centered[i] = x[i] - m;
  double denom = 0.0;
  for (double c : centered) denom += c * c;
  if (denom == 0.0) throw Error(ErrorCode::ConstantSeries, "autocorrelation undefined for a constant series");
  std::vector<double> out(max_lag + 1);
  for (std::size_t lag = 0; lag <= max_lag; ++lag) {
    double s = 0.0;
    for (std::size_t t = 0; t + lag < x.size(); ++t) s += centered[t] * centered[t + lag];
    out[lag] = s / denom;
  }
  out[0] = 1.0;
  return out;
}

CorrelationEntry try_pearson(std::string a, std::string b, std::span<const double> x, std::span<const double> y) {
  CorrelationEntry e{std::move(a), std::move(b), 0, std::nullopt};
  try {
    e.r = pearson(x, y);
  } catch (const Error& err) {
    if (err.code() != ErrorCode::ConstantSeries) throw;
  }
  return e;
}

void write_table(std::ostream& out, std::span<const CorrelationEntry> entries) {
  out << "series_a,series_b,lag,r\n";
  for (const auto& e : entries) {
    csv::write_row(out, {e.series_a, e.series_b, std::to_string(e.lag), e.r ? csv::format_double(*e.r) : std::string()});
  }
}

}  // namespace sentalpha
