#include "sentalpha/ml/svm.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include <fmt/format.h>

#include "sentalpha/error.hpp"

namespace sentalpha::ml {

namespace {

constexpr double kTau = 1e-12;

void check_labels(std::span<const int> y) {
  bool pos = false;
  bool neg = false;
  for (int v : y) {
    if (v == 1) {
      pos = true;
    } else if (v == -1) {
      neg = true;
    } else {
      throw Error(ErrorCode::InvalidArgument, fmt::format("label {} is not +1/-1", v));
    }
  }
  if (!pos || !neg) throw Error(ErrorCode::SingleClass, "training labels contain a single class");
}

}  // namespace

double rbf_kernel(std::span<const double> a, std::span<const double> b, double gamma) {
  if (a.size() != b.size()) {
    throw Error(ErrorCode::DimensionMismatch, fmt::format("{} vs {} dimensions", a.size(), b.size()));
  }
  double d2 = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double d = a[i] - b[i];
    d2 += d * d;
  }
  return std::exp(-gamma * d2);
}

double SvmModel::decision(std::span<const double> x) const {
  if (x.size() != features) {
    throw Error(ErrorCode::DimensionMismatch, fmt::format("model expects {} features, got {}", features, x.size()));
  }
  double f = bias;
  for (std::size_t i = 0; i < coef.size(); ++i) f += coef[i] * rbf_kernel(support_vectors.row(i), x, gamma);
  return f;
}

SvmModel svm_train(const Matrix& X, std::span<const int> y, const SvmParams& params) {
  const std::size_t n = X.rows();
  if (y.size() != n) throw Error(ErrorCode::LengthMismatch, fmt::format("{} rows vs {} labels", n, y.size()));
  if (n < 2) throw Error(ErrorCode::InvalidArgument, "svm_train needs at least two samples");
  if (!(params.C > 0.0) || !(params.gamma > 0.0)) {
    throw Error(ErrorCode::InvalidArgument, "C and gamma must be positive");
  }
  check_labels(y);
  const double C = params.C;

  // Q_ij = y_i y_j k(x_i, x_j)
  std::vector<double> Q(n * n);
  for (std::size_t i = 0; i < n; ++i) {
    Q[i * n + i] = 1.0;
    for (std::size_t j = i + 1; j < n; ++j) {
      const double k = rbf_kernel(X.row(i), X.row(j), params.gamma) * y[i] * y[j];
      Q[i * n + j] = k;
      Q[j * n + i] = k;
    }
  }

  std::vector<double> alpha(n, 0.0);
  std::vector<double> G(n, -1.0);  // gradient of 1/2 a'Qa - e'a
  const auto dual = [&] {
    double f = 0.0;
    for (std::size_t i = 0; i < n; ++i) f += alpha[i] * (G[i] - 1.0);
    return -0.5 * f;
  };
  const auto up_free = [&](std::size_t t) { return y[t] == 1 ? alpha[t] < C : alpha[t] > 0.0; };
  const auto low_free = [&](std::size_t t) { return y[t] == 1 ? alpha[t] > 0.0 : alpha[t] < C; };

  SvmModel model;
  model.C = C;
  model.gamma = params.gamma;
  model.features = X.cols();

  const std::size_t max_iter = static_cast<std::size_t>(std::max(params.max_passes, 1)) * n;
  double last_objective = 0.0;
  const auto record_sweep = [&] {
    const double w = dual();
    if (w < last_objective - 1e-9 * std::max(1.0, std::abs(last_objective))) {
      throw std::logic_error(fmt::format("dual objective decreased from {} to {}", last_objective, w));
    }
    model.dual_objective.push_back(w);
    last_objective = w;
  };

  std::size_t iter = 0;
  for (;;) {
    // i: maximal violator in I_up.
    double gmax = -std::numeric_limits<double>::infinity();
    std::size_t i = n;
    for (std::size_t t = 0; t < n; ++t) {
      if (up_free(t) && -y[t] * G[t] >= gmax) {
        gmax = -y[t] * G[t];
        i = t;
      }
    }
    // j: second-order choice in I_low; gmax2 tracks the violation bound.
    double gmax2 = -std::numeric_limits<double>::infinity();
    double best = std::numeric_limits<double>::infinity();
    std::size_t j = n;
    for (std::size_t t = 0; t < n; ++t) {
      if (!low_free(t)) continue;
      const double v = y[t] * G[t];
      gmax2 = std::max(gmax2, v);
      if (i == n) continue;
      const double grad_diff = gmax + v;
      if (grad_diff > 0.0) {
        double quad = Q[i * n + i] + Q[t * n + t] - 2.0 * y[i] * y[t] * Q[i * n + t];
        if (quad <= 0.0) quad = kTau;
        const double obj = -(grad_diff * grad_diff) / quad;
        if (obj <= best) {
          best = obj;
          j = t;
        }
      }
    }
    model.kkt_residual = gmax + gmax2;
    if (i == n || j == n || model.kkt_residual < params.tol) {
      model.converged = true;
      break;
    }
    if (iter >= max_iter) break;

    const double ai_old = alpha[i];
    const double aj_old = alpha[j];
    const double* Qi = &Q[i * n];
    const double* Qj = &Q[j * n];
    if (y[i] != y[j]) {
      double quad = Qi[i] + Qj[j] + 2.0 * Qi[j];
      if (quad <= 0.0) quad = kTau;
      const double delta = (-G[i] - G[j]) / quad;
      const double diff = alpha[i] - alpha[j];
      alpha[i] += delta;
      alpha[j] += delta;
      if (diff > 0.0) {
        if (alpha[j] < 0.0) {
          alpha[j] = 0.0;
          alpha[i] = diff;
        }
      } else if (alpha[i] < 0.0) {
        alpha[i] = 0.0;
        alpha[j] = -diff;
      }
      if (diff > 0.0) {
        if (alpha[i] > C) {
          alpha[i] = C;
          alpha[j] = C - diff;
        }
      } else if (alpha[j] > C) {
        alpha[j] = C;
        alpha[i] = C + diff;
      }
    } else {
      double quad = Qi[i] + Qj[j] - 2.0 * Qi[j];
      if (quad <= 0.0) quad = kTau;
      const double delta = (G[i] - G[j]) / quad;
      const double sum = alpha[i] + alpha[j];
      alpha[i] -= delta;
      alpha[j] += delta;
      if (sum > C) {
        if (alpha[i] > C) {
          alpha[i] = C;
          alpha[j] = sum - C;
        }
      } else if (alpha[j] < 0.0) {
        alpha[j] = 0.0;
        alpha[i] = sum;
      }
      if (sum > C) {
        if (alpha[j] > C) {
          alpha[j] = C;
          alpha[i] = sum - C;
        }
      } else if (alpha[i] < 0.0) {
        alpha[i] = 0.0;
        alpha[j] = sum;
      }
    }
    const double dai = alpha[i] - ai_old;
    const double daj = alpha[j] - aj_old;
    for (std::size_t t = 0; t < n; ++t) G[t] += Qi[t] * dai + Qj[t] * daj;

    ++iter;
    if (iter % n == 0) record_sweep();
  }
  model.iterations = iter;
  record_sweep();

  // Bias from free vectors, else the midpoint of the feasible interval.
  double ub = std::numeric_limits<double>::infinity();
  double lb = -std::numeric_limits<double>::infinity();
  double free_sum = 0.0;
  std::size_t free_count = 0;
  for (std::size_t t = 0; t < n; ++t) {
    const double yg = y[t] * G[t];
    if (alpha[t] >= C) {
      if (y[t] == -1) ub = std::min(ub, yg); else lb = std::max(lb, yg);
    } else if (alpha[t] <= 0.0) {
      if (y[t] == 1) ub = std::min(ub, yg); else lb = std::max(lb, yg);
    } else {
      free_sum += yg;
      ++free_count;
    }
  }
  const double rho = free_count > 0 ? free_sum / static_cast<double>(free_count) : 0.5 * (ub + lb);
  model.bias = -rho;

  for (std::size_t t = 0; t < n; ++t) {
    if (alpha[t] > 0.0) {
      model.support_vectors.append_row(X.row(t));
      model.coef.push_back(alpha[t] * y[t]);
    }
  }
  if (model.support_vectors.empty()) model.support_vectors = Matrix(0, X.cols());
  return model;
}

std::vector<int> svm_predict(const SvmModel& model, const Matrix& X) {
  if (X.cols() != model.features) {
    throw Error(ErrorCode::DimensionMismatch,
                fmt::format("model expects {} features, got {}", model.features, X.cols()));
  }
  std::vector<int> out(X.rows());
  for (std::size_t i = 0; i < X.rows(); ++i) out[i] = model.predict(X.row(i));
  return out;
}

}  // namespace sentalpha::ml
