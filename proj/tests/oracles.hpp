#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "sentalpha/ml/matrix.hpp"

namespace oracle {

// Pairwise form: sum_ij (x_i - x_j)(y_i - y_j) never touches a mean.
inline double pearson(std::span<const double> x, std::span<const double> y) {
  double sxy = 0.0;
  double sxx = 0.0;
  double syy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    for (std::size_t j = 0; j < x.size(); ++j) {
      const double dx = x[i] - x[j];
      const double dy = y[i] - y[j];
      sxy += dx * dy;
      sxx += dx * dx;
      syy += dy * dy;
    }
  }
  return sxy / std::sqrt(sxx * syy);
}

inline double lagged(std::span<const double> x, std::span<const double> y, std::size_t lag) {
  const std::size_t n = x.size() - lag;
  return pearson(x.subspan(0, n), y.subspan(lag, n));
}

inline double acf(std::span<const double> x, std::size_t lag) {
  long double m = 0.0;
  for (double v : x) m += v;
  m /= static_cast<long double>(x.size());
  long double num = 0.0;
  long double den = 0.0;
  for (std::size_t t = 0; t < x.size(); ++t) {
    den += (x[t] - m) * (x[t] - m);
    if (t + lag < x.size()) num += (x[t] - m) * (x[t + lag] - m);
  }
  return static_cast<double>(num / den);
}

inline double rbf(std::span<const double> a, std::span<const double> b, double gamma) {
  double d = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) d += (a[i] - b[i]) * (a[i] - b[i]);
  return std::exp(-gamma * d);
}

struct QpSolution {
  std::vector<double> alpha;
  double objective = -INFINITY;
};

// Soft-margin dual by exhaustive active-set enumeration: every alpha_i is
// pinned at 0, pinned at C or free; the free block solves the equality-
// constrained stationarity system. The best feasible candidate is optimal
// because the dual is concave.
inline QpSolution svm_dual(const sentalpha::ml::Matrix& X, std::span<const int> y, double C, double gamma) {
  const std::size_t n = X.rows();
  Eigen::MatrixXd Q(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) Q(i, j) = y[i] * y[j] * rbf(X.row(i), X.row(j), gamma);
  }
  QpSolution best;
  std::size_t states = 1;
  for (std::size_t i = 0; i < n; ++i) states *= 3;
  for (std::size_t s = 0; s < states; ++s) {
    std::vector<int> state(n);
    std::size_t code = s;
    std::vector<std::size_t> free;
    Eigen::VectorXd alpha = Eigen::VectorXd::Zero(n);
    for (std::size_t i = 0; i < n; ++i) {
      state[i] = static_cast<int>(code % 3);
      code /= 3;
      if (state[i] == 1) alpha(i) = C;
      if (state[i] == 2) free.push_back(i);
    }
    const std::size_t f = free.size();
    Eigen::MatrixXd A = Eigen::MatrixXd::Zero(f + 1, f + 1);
    Eigen::VectorXd b(f + 1);
    double ysum = 0.0;
    for (std::size_t i = 0; i < n; ++i) ysum += y[i] * alpha(i);
    for (std::size_t a = 0; a < f; ++a) {
      double rhs = 1.0;
      for (std::size_t j = 0; j < n; ++j) rhs -= Q(free[a], j) * alpha(j);
      b(a) = rhs;
      for (std::size_t c = 0; c < f; ++c) A(a, c) = Q(free[a], free[c]);
      A(a, f) = y[free[a]];
      A(f, a) = y[free[a]];
    }
    b(f) = -ysum;
    if (f == 0) {
      if (std::abs(ysum) > 1e-12) continue;
    } else {
      Eigen::FullPivLU<Eigen::MatrixXd> lu(A);
      if (!lu.isInvertible()) continue;
      const Eigen::VectorXd sol = lu.solve(b);
      bool ok = true;
      for (std::size_t a = 0; a < f; ++a) {
        if (sol(a) < -1e-12 || sol(a) > C + 1e-12) ok = false;
        alpha(free[a]) = sol(a);
      }
      if (!ok) continue;
    }
    const double obj = alpha.sum() - 0.5 * alpha.dot(Q * alpha);
    if (obj > best.objective) {
      best.objective = obj;
      best.alpha.assign(alpha.data(), alpha.data() + n);
    }
  }
  return best;
}

// Two Gaussian blobs centred at +-(sep, sep).
inline void blobs(std::uint64_t seed, std::size_t n, double sep, double sd, sentalpha::ml::Matrix& X,
                  std::vector<int>& y) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g(0.0, sd);
  X = sentalpha::ml::Matrix(n, 2);
  y.assign(n, 1);
  for (std::size_t i = 0; i < n; ++i) {
    y[i] = i % 2 == 0 ? 1 : -1;
    X(i, 0) = y[i] * sep + g(rng);
    X(i, 1) = y[i] * sep + g(rng);
  }
}

// y = sign of a weighted sum of a few columns of standard normal noise.
inline void planted(std::uint64_t seed, std::size_t n, std::size_t p, std::span<const std::size_t> informative,
                    double noise, sentalpha::ml::Matrix& X, std::vector<int>& y) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g(0.0, 1.0);
  X = sentalpha::ml::Matrix(n, p);
  y.assign(n, 1);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < p; ++j) X(i, j) = g(rng);
    double z = noise * g(rng);
    for (std::size_t j : informative) z += X(i, j);
    y[i] = z >= 0.0 ? 1 : -1;
  }
}

}  // namespace oracle
