#include <doctest.h>

#include <vector>

#include "sentalpha/error.hpp"
#include "sentalpha/ml/metrics.hpp"

using namespace sentalpha::ml;

TEST_CASE("metrics on a hand-counted example") {
  const std::vector<int> t{1, 1, 1, -1, -1, 1, -1, 1};
  const std::vector<int> p{1, -1, 1, 1, -1, 1, -1, -1};
  const MetricsReport m = classification_metrics(t, p);
  CHECK(m.tp == 3);
  CHECK(m.fn == 2);
  CHECK(m.fp == 1);
  CHECK(m.tn == 2);
  CHECK(m.accuracy == 5.0 / 8.0);
  CHECK(m.precision == 3.0 / 4.0);
  CHECK(m.recall == 3.0 / 5.0);
  CHECK(m.f1 == doctest::Approx(2.0 * 0.75 * 0.6 / 1.35).epsilon(1e-15));
}

TEST_CASE("empty denominators give zero") {
  const std::vector<int> t{-1, -1};
  const std::vector<int> p{-1, -1};
  const MetricsReport m = classification_metrics(t, p);
  CHECK(m.accuracy == 1.0);
  CHECK(m.precision == 0.0);
  CHECK(m.recall == 0.0);
  CHECK(m.f1 == 0.0);
  CHECK_THROWS_AS(classification_metrics(t, std::vector<int>{1}), sentalpha::Error);
}
