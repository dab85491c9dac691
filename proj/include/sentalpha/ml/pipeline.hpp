#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "sentalpha/ml/bagging.hpp"
#include "sentalpha/ml/matrix.hpp"
#include "sentalpha/ml/standardizer.hpp"

namespace sentalpha::ml {

// standardize -> SMOTE balance -> bagged RBF SVMs.
struct PipelineConfig {
  double C = 1.0;
  // RBF width; unset selects 1 / (P * variance of the balanced training matrix).
  std::optional<double> gamma;
  std::size_t members = 9;
  std::size_t smote_k = 5;
  double tol = 1e-3;
  int max_passes = 100;
};

struct PipelineModel {
  Standardizer scaler;
  std::optional<EnsembleModel> ensemble;
  // Used when the training window holds one class only.
  int constant_label = 1;
  double gamma = 0.0;
  std::size_t features = 0;

  [[nodiscard]] std::vector<int> predict(const Matrix& X) const;
};

double scale_gamma(const Matrix& X) noexcept;

PipelineModel fit_pipeline(const Matrix& X, std::span<const int> y, const PipelineConfig& config, std::uint64_t seed);

}  // namespace sentalpha::ml
