#pragma once

#include <cstddef>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <vector>

namespace sentalpha {

// Sample Pearson coefficient. Throws ConstantSeries / LengthMismatch.
double pearson(std::span<const double> x, std::span<const double> y);

// Entry l correlates x[0, n-l) with y[l, n): x leads y by l steps.
std::vector<double> lagged_correlation(std::span<const double> x, std::span<const double> y, std::size_t max_lag);

// Global-mean autocorrelation, entries 0..max_lag.
std::vector<double> acf(std::span<const double> x, std::size_t max_lag);

struct CorrelationEntry {
  std::string series_a;
  std::string series_b;
  std::size_t lag = 0;
  // Empty when the coefficient is undefined (a constant input).
  std::optional<double> r;
};

struct CorrelationReport {
  std::vector<CorrelationEntry> pairs;
  std::vector<CorrelationEntry> lag_profile;
  std::vector<CorrelationEntry> acf;
};

// pearson() that records an undefined cell instead of throwing on constant input.
CorrelationEntry try_pearson(std::string a, std::string b, std::span<const double> x, std::span<const double> y);

// `series_a,series_b,lag,r` rows; undefined cells are left empty.
void write_table(std::ostream& out, std::span<const CorrelationEntry> entries);

}  // namespace sentalpha
