#pragma once

#include <array>
#include <vector>

#include <Eigen/Cholesky>
#include <Eigen/Core>

namespace sentalpha::bo {

using Point = std::array<double, 2>;

double matern52(double scaled_distance) noexcept;

struct GpHyperparameters {
  Point length_scales{0.2, 0.2};
  double signal_variance = 1.0;
  double noise_variance = 1e-3;
};

// Zero-mean GP on standardized observations with an anisotropic Matern-5/2
// kernel. fit() without hyperparameters picks the grid point of largest log
// marginal likelihood.
class GaussianProcess {
 public:
  struct Posterior {
    double mean = 0.0;
    double variance = 0.0;
  };

  void fit(std::vector<Point> x, std::vector<double> y);
  void fit(std::vector<Point> x, std::vector<double> y, const GpHyperparameters& hp);

  [[nodiscard]] Posterior predict(const Point& x) const;
  [[nodiscard]] const GpHyperparameters& hyperparameters() const noexcept { return hp_; }
  [[nodiscard]] double log_marginal_likelihood() const noexcept { return lml_; }
  // Noise variance in the units of the observations.
  [[nodiscard]] double observation_noise_variance() const noexcept { return hp_.noise_variance * scale_ * scale_; }

 private:
  double kernel(const Point& a, const Point& b) const noexcept;
  bool factorize();

  std::vector<Point> x_;
  std::vector<double> y_raw_;
  Eigen::VectorXd y_;  // standardized
  double offset_ = 0.0;
  double scale_ = 1.0;
  GpHyperparameters hp_;
  Eigen::LLT<Eigen::MatrixXd> llt_;
  Eigen::VectorXd alpha_;
  double lml_ = 0.0;
};

// EI for maximization; 0 when sd <= 0 and mean <= best.
double expected_improvement(double mean, double sd, double best) noexcept;

}  // namespace sentalpha::bo
