#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "sentalpha/ml/matrix.hpp"

namespace sentalpha::ml {

double rbf_kernel(std::span<const double> a, std::span<const double> b, double gamma);

struct SvmParams {
  double C = 1.0;
  double gamma = 1.0;  // RBF width
  double tol = 1e-3;   // stop once the maximal KKT violation drops below this
  int max_passes = 100;
};

// Soft-margin RBF classifier in dual form:
// f(x) = sum_i coef_i * k(sv_i, x) + bias, coef_i = alpha_i * y_i.
struct SvmModel {
  Matrix support_vectors;
  std::vector<double> coef;
  double bias = 0.0;
  double C = 1.0;
  double gamma = 1.0;
  std::size_t features = 0;

  bool converged = false;
  double kkt_residual = 0.0;
  std::size_t iterations = 0;
  // Dual objective sum(alpha) - 1/2 alpha'Q alpha at the end of every sweep of n steps.
  std::vector<double> dual_objective;

  [[nodiscard]] double decision(std::span<const double> x) const;
  [[nodiscard]] int predict(std::span<const double> x) const { return decision(x) >= 0.0 ? 1 : -1; }
};

// Pairwise dual coordinate ascent with maximal-violating-pair / second-order
// working-set selection over a precomputed Gram matrix. A run that hits the
// iteration cap (max_passes sweeps of n steps) returns with converged = false.
SvmModel svm_train(const Matrix& X, std::span<const int> y, const SvmParams& params);

std::vector<int> svm_predict(const SvmModel& model, const Matrix& X);

}  // namespace sentalpha::ml
