#include "sentalpha/ml/metrics.hpp"

#include <fmt/format.h>

#include "sentalpha/error.hpp"

namespace sentalpha::ml {

MetricsReport metrics_from_counts(std::size_t tp, std::size_t fp, std::size_t tn, std::size_t fn) noexcept {
  const auto ratio = [](std::size_t num, std::size_t den) {
    return den == 0 ? 0.0 : static_cast<double>(num) / static_cast<double>(den);
  };
  MetricsReport m{tp, fp, tn, fn};
  m.accuracy = ratio(tp + tn, tp + fp + tn + fn);
  m.precision = ratio(tp, tp + fp);
  m.recall = ratio(tp, tp + fn);
  // 2pr/(p+r) written on counts so it stays exact: 2TP / (2TP + FP + FN).
  m.f1 = ratio(2 * tp, 2 * tp + fp + fn);
  return m;
}

MetricsReport classification_metrics(std::span<const int> y_true, std::span<const int> y_pred) {
  if (y_true.size() != y_pred.size()) {
    throw Error(ErrorCode::LengthMismatch, fmt::format("{} labels vs {} predictions", y_true.size(), y_pred.size()));
  }
  if (y_true.empty()) throw Error(ErrorCode::InvalidArgument, "metrics need at least one sample");
  std::size_t tp = 0, fp = 0, tn = 0, fn = 0;
  for (std::size_t i = 0; i < y_true.size(); ++i) {
    const int t = y_true[i];
    const int p = y_pred[i];
    if ((t != 1 && t != -1) || (p != 1 && p != -1)) {
      throw Error(ErrorCode::InvalidArgument, "labels must be +1/-1");
    }
    if (p == 1) {
      (t == 1 ? tp : fp)++;
    } else {
      (t == -1 ? tn : fn)++;
    }
  }
  return metrics_from_counts(tp, fp, tn, fn);
}

}  // namespace sentalpha::ml
