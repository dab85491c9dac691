#include "sentalpha/gp.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include "sentalpha/error.hpp"

namespace sentalpha::bo {

double matern52(double r) noexcept {
  const double s = std::sqrt(5.0) * r;
  return (1.0 + s + s * s / 3.0) * std::exp(-s);
}

double GaussianProcess::kernel(const Point& a, const Point& b) const noexcept {
  double r2 = 0.0;
  for (std::size_t d = 0; d < a.size(); ++d) {
    const double z = (a[d] - b[d]) / hp_.length_scales[d];
    r2 += z * z;
  }
  return hp_.signal_variance * matern52(std::sqrt(r2));
}

bool GaussianProcess::factorize() {
  const auto n = static_cast<Eigen::Index>(x_.size());
  Eigen::MatrixXd K(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j <= i; ++j) {
      const double k = kernel(x_[static_cast<std::size_t>(i)], x_[static_cast<std::size_t>(j)]);
      K(i, j) = k;
      K(j, i) = k;
    }
    K(i, i) += hp_.noise_variance;
  }
  llt_.compute(K);
  if (llt_.info() != Eigen::Success) return false;
  alpha_ = llt_.solve(y_);
  const Eigen::MatrixXd L = llt_.matrixL();
  lml_ = -0.5 * y_.dot(alpha_) - L.diagonal().array().log().sum() -
         0.5 * static_cast<double>(n) * std::log(2.0 * std::numbers::pi);
  return true;
}

void GaussianProcess::fit(std::vector<Point> x, std::vector<double> y, const GpHyperparameters& hp) {
  if (x.empty() || x.size() != y.size()) throw Error(ErrorCode::InvalidArgument, "GP needs matching, non-empty data");
  x_ = std::move(x);
  y_raw_ = std::move(y);
  const auto n = static_cast<double>(y_raw_.size());
  offset_ = 0.0;
  for (double v : y_raw_) offset_ += v;
  offset_ /= n;
  double var = 0.0;
  for (double v : y_raw_) var += (v - offset_) * (v - offset_);
  scale_ = y_raw_.size() > 1 && var > 0.0 ? std::sqrt(var / n) : 1.0;
  y_.resize(static_cast<Eigen::Index>(y_raw_.size()));
  for (std::size_t i = 0; i < y_raw_.size(); ++i) y_[static_cast<Eigen::Index>(i)] = (y_raw_[i] - offset_) / scale_;
  hp_ = hp;
  if (!factorize()) throw Error(ErrorCode::InvalidArgument, "GP covariance is not positive definite");
}

void GaussianProcess::fit(std::vector<Point> x, std::vector<double> y) {
  static constexpr double kScales[] = {0.05, 0.1, 0.2, 0.4, 0.8, 1.6};
  static constexpr double kNoise[] = {1e-6, 1e-3, 1e-2, 0.1, 0.3};
  fit(std::move(x), std::move(y), GpHyperparameters{});
  double best = -std::numeric_limits<double>::infinity();
  GpHyperparameters best_hp = hp_;
  for (double l0 : kScales) {
    for (double l1 : kScales) {
      for (double noise : kNoise) {
        hp_ = GpHyperparameters{{l0, l1}, 1.0, noise};
        if (factorize() && lml_ > best) {
          best = lml_;
          best_hp = hp_;
        }
      }
    }
  }
  hp_ = best_hp;
  if (!factorize()) throw Error(ErrorCode::InvalidArgument, "GP covariance is not positive definite");
}

GaussianProcess::Posterior GaussianProcess::predict(const Point& x) const {
  const auto n = static_cast<Eigen::Index>(x_.size());
  Eigen::VectorXd k(n);
  for (Eigen::Index i = 0; i < n; ++i) k[i] = kernel(x_[static_cast<std::size_t>(i)], x);
  const double mean = k.dot(alpha_);
  const Eigen::VectorXd v = llt_.matrixL().solve(k);
  const double var = std::max(0.0, hp_.signal_variance - v.squaredNorm());
  return {offset_ + scale_ * mean, var * scale_ * scale_};
}

double expected_improvement(double mean, double sd, double best) noexcept {
  const double gain = mean - best;
  if (!(sd > 0.0)) return std::max(0.0, gain);
  const double z = gain / sd;
  const double cdf = 0.5 * std::erfc(-z / std::numbers::sqrt2);
  const double pdf = std::exp(-0.5 * z * z) / std::sqrt(2.0 * std::numbers::pi);
  return std::max(0.0, gain * cdf + sd * pdf);
}

}  // namespace sentalpha::bo
