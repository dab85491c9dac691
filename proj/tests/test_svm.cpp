#include <doctest.h>

#include <cmath>

#include "oracles.hpp"
#include "sentalpha/error.hpp"
#include "sentalpha/ml/serialize.hpp"
#include "sentalpha/ml/svm.hpp"

using namespace sentalpha;
using namespace sentalpha::ml;

namespace {

double dual_of(const SvmModel& m) {
  double s = 0.0;
  for (std::size_t i = 0; i < m.coef.size(); ++i) {
    s += std::abs(m.coef[i]);
    for (std::size_t j = 0; j < m.coef.size(); ++j) {
      s -= 0.5 * m.coef[i] * m.coef[j] * rbf_kernel(m.support_vectors.row(i), m.support_vectors.row(j), m.gamma);
    }
  }
  return s;
}

}  // namespace

TEST_CASE("rbf kernel") {
  const std::vector<double> a{1.0, 2.0};
  const std::vector<double> b{0.0, 0.0};
  CHECK(rbf_kernel(a, b, 0.5) == doctest::Approx(std::exp(-2.5)).epsilon(1e-15));
  CHECK(rbf_kernel(a, a, 3.0) == 1.0);
  CHECK_THROWS_AS(rbf_kernel(a, std::vector<double>{1.0}, 1.0), Error);
}

TEST_CASE("dual optimum matches exhaustive active-set enumeration") {
  Matrix X(4, 2);
  const double pts[4][2] = {{0.0, 0.0}, {1.0, 0.2}, {0.3, 1.1}, {1.4, 1.3}};
  for (int i = 0; i < 4; ++i) {
    X(i, 0) = pts[i][0];
    X(i, 1) = pts[i][1];
  }
  const std::vector<int> y{1, -1, -1, 1};
  for (double C : {0.5, 1.0, 10.0}) {
    SvmParams p;
    p.C = C;
    p.gamma = 0.7;
    p.tol = 1e-10;
    p.max_passes = 10000;
    const SvmModel m = svm_train(X, y, p);
    const oracle::QpSolution opt = oracle::svm_dual(X, y, C, 0.7);
    CHECK(m.converged);
    CHECK(dual_of(m) == doctest::Approx(opt.objective).epsilon(1e-8));
  }
}

TEST_CASE("XOR is separated with an RBF kernel") {
  Matrix X(4, 2);
  const std::vector<int> y{1, -1, -1, 1};
  const double pts[4][2] = {{1, 1}, {1, -1}, {-1, 1}, {-1, -1}};
  for (int i = 0; i < 4; ++i) {
    X(i, 0) = pts[i][0];
    X(i, 1) = pts[i][1];
  }
  SvmParams p;
  p.C = 10.0;
  p.gamma = 1.0;
  const SvmModel m = svm_train(X, y, p);
  CHECK(svm_predict(m, X) == y);
}

TEST_CASE("separable blobs: exact fit, small KKT residual, monotone dual") {
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    Matrix X;
    std::vector<int> y;
    oracle::blobs(seed, 40, 1.5, 0.5, X, y);
    SvmParams p;
    p.gamma = 0.5;
    const SvmModel m = svm_train(X, y, p);
    CHECK(m.converged);
    CHECK(m.kkt_residual <= 1e-3);
    CHECK(svm_predict(m, X) == y);
    for (std::size_t k = 1; k < m.dual_objective.size(); ++k) CHECK(m.dual_objective[k] >= m.dual_objective[k - 1]);
  }
}

TEST_CASE("bad training input") {
  Matrix X(3, 1);
  CHECK_THROWS_AS(svm_train(X, std::vector<int>{1, 1, 1}, {}), Error);
  CHECK_THROWS_AS(svm_train(X, std::vector<int>{1, -1}, {}), Error);
  CHECK_THROWS_AS(svm_train(X, std::vector<int>{1, -1, 2}, {}), Error);
}

TEST_CASE("a serialized model predicts bit-identically") {
  Matrix X;
  std::vector<int> y;
  oracle::blobs(3, 30, 0.4, 0.7, X, y);
  const SvmModel m = svm_train(X, y, {});
  const SvmModel back = svm_from_json(nlohmann::json::parse(to_json(m).dump()));
  for (std::size_t i = 0; i < X.rows(); ++i) CHECK(back.decision(X.row(i)) == m.decision(X.row(i)));
}
