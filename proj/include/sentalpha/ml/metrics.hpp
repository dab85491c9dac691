#pragma once

#include <cstddef>
#include <span>

namespace sentalpha::ml {

// Binary metrics with +1 as the positive class.
struct MetricsReport {
  std::size_t tp = 0;
  std::size_t fp = 0;
  std::size_t tn = 0;
  std::size_t fn = 0;
  double accuracy = 0.0;
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;

  [[nodiscard]] std::size_t total() const noexcept { return tp + fp + tn + fn; }
};

// Ratios with an empty denominator are 0.
MetricsReport metrics_from_counts(std::size_t tp, std::size_t fp, std::size_t tn, std::size_t fn) noexcept;

MetricsReport classification_metrics(std::span<const int> y_true, std::span<const int> y_pred);

}  // namespace sentalpha::ml
