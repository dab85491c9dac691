#include <doctest.h>

#include <algorithm>

#include "oracles.hpp"
#include "sentalpha/ml/bagging.hpp"
#include "sentalpha/ml/metrics.hpp"
#include "sentalpha/ml/pipeline.hpp"
#include "sentalpha/ml/rng.hpp"
#include "sentalpha/ml/serialize.hpp"
#include "sentalpha/ml/standardizer.hpp"

using namespace sentalpha::ml;

TEST_CASE("majority vote breaks ties to +1") {
  CHECK(majority_vote(std::vector<int>{1, -1}) == 1);
  CHECK(majority_vote(std::vector<int>{-1, -1, 1}) == -1);
  CHECK(majority_vote(std::vector<int>{1, 1, -1}) == 1);
}

TEST_CASE("bootstraps keep both classes") {
  std::vector<int> y(20, 1);
  y[7] = -1;
  for (std::uint64_t s = 0; s < 50; ++s) {
    const auto idx = bootstrap_indices(y, s);
    CHECK(idx.size() == 20);
    CHECK(std::any_of(idx.begin(), idx.end(), [](std::size_t i) { return i == 7; }));
  }
}

TEST_CASE("derived seeds differ by stream and index") {
  CHECK(derive_seed(1, "smote") != derive_seed(1, "bagging"));
  CHECK(derive_seed(1, "bootstrap", 0) != derive_seed(1, "bootstrap", 1));
  CHECK(derive_seed(1, "x") == derive_seed(1, "x"));
}

TEST_CASE("standardizer uses n - 1 and zeroes constant columns") {
  Matrix X(3, 2);
  X(0, 0) = 1;
  X(1, 0) = 2;
  X(2, 0) = 3;
  for (std::size_t i = 0; i < 3; ++i) X(i, 1) = 5;
  const Standardizer s = fit_standardizer(X);
  CHECK(s.means[0] == 2.0);
  CHECK(s.stds[0] == 1.0);
  const Matrix Z = apply_standardizer(X, s);
  CHECK(Z(0, 0) == -1.0);
  CHECK(Z(2, 1) == 0.0);
}

TEST_CASE("pipeline learns a planted rule and is reproducible") {
  Matrix X;
  std::vector<int> y;
  const std::vector<std::size_t> informative{0};
  oracle::planted(2, 200, 3, informative, 0.1, X, y);
  const PipelineModel a = fit_pipeline(X, y, {}, 10);
  const PipelineModel b = fit_pipeline(X, y, {}, 10);
  CHECK(a.predict(X) == b.predict(X));
  CHECK(classification_metrics(y, a.predict(X)).accuracy > 0.9);
  REQUIRE(a.ensemble);
  CHECK(a.ensemble->members.size() == 9);
  const EnsembleModel back = ensemble_from_json(nlohmann::json::parse(to_json(*a.ensemble).dump()));
  CHECK(bagging_predict(back, apply_standardizer(X, a.scaler)) == bagging_predict(*a.ensemble, apply_standardizer(X, a.scaler)));
}

TEST_CASE("a single-class window predicts that class") {
  Matrix X(12, 2, 1.0);
  for (std::size_t i = 0; i < 12; ++i) X(i, 0) = static_cast<double>(i);
  const PipelineModel m = fit_pipeline(X, std::vector<int>(12, -1), {}, 0);
  CHECK_FALSE(m.ensemble);
  CHECK(m.predict(X) == std::vector<int>(12, -1));
}

TEST_CASE("gamma defaults to 1 / (P * variance)") {
  Matrix X(2, 2);
  X(0, 0) = 1;
  X(1, 0) = -1;
  X(0, 1) = 1;
  X(1, 1) = -1;
  CHECK(scale_gamma(X) == doctest::Approx(0.5));
}
