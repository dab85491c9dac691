#include <doctest.h>

#include <algorithm>
#include <set>

#include "fixtures.hpp"
#include "oracles.hpp"
#include "sentalpha/bo_rfe.hpp"
#include "sentalpha/ml/metrics.hpp"
#include "sentalpha/ml/rng.hpp"

using namespace sentalpha;

namespace {

FeatureMatrix planted_matrix(std::uint64_t seed, std::size_t n = 300) {
  ml::Matrix X;
  std::vector<int> y;
  const std::vector<std::size_t> informative{0, 3};
  oracle::planted(seed, n, 10, informative, 0.3, X, y);
  return fixture::matrix_of(X, y);
}

}  // namespace

TEST_CASE("rfe keeps everything at gamma = P and the signal at gamma = 1") {
  ml::Matrix X;
  std::vector<int> y;
  const std::vector<std::size_t> informative{0};
  oracle::planted(3, 200, 5, informative, 0.0, X, y);
  CHECK(rfe(X, y, 5, 10, 1) == std::vector<std::size_t>{0, 1, 2, 3, 4});
  CHECK(rfe(X, y, 1, 20, 1) == std::vector<std::size_t>{0});
  const auto kept = rfe(X, y, 3, 10, 2);
  CHECK(std::is_sorted(kept.begin(), kept.end()));
  CHECK(kept.size() == 3);
  CHECK_THROWS(rfe(X, y, 0, 10, 1));
}

TEST_CASE("objective is deterministic and reduces to the plain pipeline at gamma = P") {
  const FeatureMatrix m = planted_matrix(5);
  BoRfeConfig cfg;
  cfg.seed = 9;
  const ObjectiveResult a = objective(m, 2, 20, cfg);
  const ObjectiveResult b = objective(m, 2, 20, cfg);
  CHECK(a.f1 == b.f1);
  CHECK(a.kept == b.kept);

  const ObjectiveResult all = objective(m, 10, 7, cfg);
  const std::size_t begin = m.rows() - 252;
  const FeatureMatrix train = m.slice_rows(begin, begin + 222);
  const FeatureMatrix test = m.slice_rows(begin + 222, m.rows());
  const auto model = ml::fit_pipeline(train.values, train.labels, cfg.pipeline,
                                      ml::derive_seed(objective_seed(cfg.seed, 10, 7), "pipeline"));
  CHECK(all.f1 == ml::classification_metrics(test.labels, model.predict(test.values)).f1);

  CHECK_THROWS(objective(m.slice_rows(0, 200), 2, 20, cfg));
}

TEST_CASE("objective prefers the planted pair over noise columns") {
  const FeatureMatrix m = planted_matrix(8);
  BoRfeConfig cfg;
  const ObjectiveResult planted = objective(m, 2, 20, cfg);
  CHECK(planted.kept == std::vector<std::size_t>{0, 3});
  const ObjectiveResult noise = objective(m, 2, 20, cfg, std::vector<std::size_t>{5, 8});
  CHECK(planted.f1 >= noise.f1 + 0.15);
}

TEST_CASE("bo_rfe_run bookkeeping") {
  const FeatureMatrix m = planted_matrix(2, 260);
  BoRfeConfig cfg;
  cfg.seed = 4;
  cfg.iterations = 1;
  const SelectionResult one = bo_rfe_run(m, cfg);
  REQUIRE(one.history.size() == 1);
  CHECK(one.best_f1 == one.history[0].f1);
  CHECK(one.gamma == one.history[0].gamma);

  cfg.iterations = 12;
  cfg.theta_max = 30;
  const SelectionResult r = bo_rfe_run(m, cfg);
  CHECK(r.history.size() == 12);
  CHECK(static_cast<int>(r.features.size()) == r.gamma);
  const auto f1 = r.f1_history();
  CHECK(r.best_f1 == *std::max_element(f1.begin(), f1.end()));
  const auto names = feature_names(m.specs);
  for (const auto& f : r.features) CHECK(std::find(names.begin(), names.end(), f) != names.end());
  std::set<std::pair<int, int>> points;
  for (const auto& e : r.history) points.emplace(e.gamma, e.theta);
  CHECK(points.size() == r.history.size());

  const SelectionResult again = bo_rfe_run(m, cfg);
  CHECK(to_json(again) == to_json(r));
  CHECK(to_json(selection_from_json(to_json(r))) == to_json(r));
}
