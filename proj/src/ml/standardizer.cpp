#include "sentalpha/ml/standardizer.hpp"

#include <cmath>

#include "sentalpha/error.hpp"

namespace sentalpha::ml {

Standardizer fit_standardizer(const Matrix& train) {
  const std::size_t n = train.rows();
  const std::size_t p = train.cols();
  Standardizer s{std::vector<double>(p, 0.0), std::vector<double>(p, 0.0)};
  if (n == 0) return s;
  for (std::size_t j = 0; j < p; ++j) {
    double sum = 0.0;
    for (std::size_t i = 0; i < n; ++i) sum += train(i, j);
    const double mean = sum / static_cast<double>(n);
    double ss = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double d = train(i, j) - mean;
      ss += d * d;
    }
    s.means[j] = mean;
    s.stds[j] = n > 1 ? std::sqrt(ss / static_cast<double>(n - 1)) : 0.0;
  }
  return s;
}

Matrix apply_standardizer(const Matrix& m, const Standardizer& params) {
  if (m.cols() != params.means.size()) {
    throw Error(ErrorCode::DimensionMismatch, "standardizer fitted on a different column count");
  }
  Matrix out(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) {
      const double sd = params.stds[j];
      out(i, j) = sd > 0.0 ? (m(i, j) - params.means[j]) / sd : 0.0;
    }
  }
  return out;
}

}  // namespace sentalpha::ml
