#include "sentalpha/ml/pipeline.hpp"

#include <fmt/format.h>

#include "sentalpha/error.hpp"
#include "sentalpha/ml/rng.hpp"
#include "sentalpha/ml/smote.hpp"

namespace sentalpha::ml {

double scale_gamma(const Matrix& X) noexcept {
  const auto data = X.data();
  const double p = static_cast<double>(X.cols());
  if (data.empty() || X.cols() == 0) return 1.0;
  double mean = 0.0;
  for (double v : data) mean += v;
  mean /= static_cast<double>(data.size());
  double var = 0.0;
  for (double v : data) var += (v - mean) * (v - mean);
  var /= static_cast<double>(data.size());
  return var > 0.0 ? 1.0 / (p * var) : 1.0 / p;
}

std::vector<int> PipelineModel::predict(const Matrix& X) const {
  if (X.cols() != features) {
    throw Error(ErrorCode::DimensionMismatch, fmt::format("pipeline expects {} features, got {}", features, X.cols()));
  }
  if (!ensemble) return std::vector<int>(X.rows(), constant_label);
  return bagging_predict(*ensemble, apply_standardizer(X, scaler));
}

PipelineModel fit_pipeline(const Matrix& X, std::span<const int> y, const PipelineConfig& config, std::uint64_t seed) {
  if (X.rows() != y.size()) {
    throw Error(ErrorCode::LengthMismatch, fmt::format("{} rows vs {} labels", X.rows(), y.size()));
  }
  if (X.rows() == 0) throw Error(ErrorCode::InvalidArgument, "pipeline needs training rows");
  PipelineModel model;
  model.features = X.cols();
  model.scaler = fit_standardizer(X);
  bool pos = false;
  bool neg = false;
  for (int v : y) (v == 1 ? pos : neg) = true;
  if (!pos || !neg) {
    model.constant_label = pos ? 1 : -1;
    return model;
  }
  const Matrix Z = apply_standardizer(X, model.scaler);
  const Balanced balanced = smote_balance(Z, y, config.smote_k, derive_seed(seed, "smote"));
  model.gamma = config.gamma.value_or(scale_gamma(balanced.X));
  const SvmParams params{config.C, model.gamma, config.tol, config.max_passes};
  model.ensemble = bagging_train(balanced.X, balanced.y, config.members, params, derive_seed(seed, "bagging"));
  return model;
}

}  // namespace sentalpha::ml
