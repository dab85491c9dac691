#include <doctest.h>

#include <sstream>

#include "sentalpha/error.hpp"
#include "sentalpha/features.hpp"

using namespace sentalpha;

namespace {

// 20 consecutive days; close = 100 + day, sentiment counts vary by day.
FeatureSources sample_sources() {
  std::vector<DailyBar> bars;
  std::vector<SessionCounts> counts;
  const Date first = parse_date("2021-03-01");
  for (int i = 0; i < 20; ++i) {
    const Date d = add_days(first, i);
    const double c = 100.0 + i;
    bars.push_back({d, c - 0.5, c + 1, c - 1, c, 1000.0 + i, c * (1000.0 + i), is_weekend(d)});
    long long day_p = 0, day_n = 0, day_u = 0;
    for (Session s : {Session::PreMarket, Session::IntraMarket, Session::PostMarket}) {
      const auto k = static_cast<long long>(s);
      const SessionCounts sc{d, s, i + k, 2 * k + 1, 5};
      day_p += sc.positive;
      day_n += sc.negative;
      day_u += sc.neutral;
      counts.push_back(sc);
    }
    counts.push_back({d, Session::FullDay, day_p, day_n, day_u});
  }
  return FeatureSources(bars, counts);
}

}  // namespace

TEST_CASE("canonical names parse back to the same spec") {
  for (Strategy s : {Strategy::Literature, Strategy::BoRfe2, Strategy::BoRfe5}) {
    for (const auto& f : canonical_set(s)) CHECK(FeatureSpec::parse(f.name()) == f);
  }
  CHECK(canonical_set(Strategy::Literature).size() == 10);
  CHECK(feature_names(canonical_set(Strategy::BoRfe5)) ==
        std::vector<std::string>{"R[t-1]", "S_pre[t-0]", "S_intra[t-7]", "S_post[t-7]", "N[t-7]"});
}

TEST_CASE("lag rules") {
  CHECK_NOTHROW(FeatureSpec::parse("S_pre[t-0]"));
  CHECK_THROWS_AS(FeatureSpec::parse("S_intra[t-0]"), Error);
  CHECK_THROWS_AS(FeatureSpec::parse("R[t-0]"), Error);
  CHECK_THROWS_AS(FeatureSpec::parse("N[t-0]"), Error);
  CHECK_THROWS_AS(FeatureSpec::parse("Close[t-x]"), Error);
  CHECK_THROWS_AS(FeatureSpec::parse("Bogus[t-1]"), Error);
  CHECK(FeatureSpec::parse("N[t-7]").is_sentiment());
  CHECK_FALSE(FeatureSpec::parse("Volume[t-1]").is_sentiment());
}

TEST_CASE("build_matrix looks values up at t - lag") {
  const FeatureSources src = sample_sources();
  const auto specs = parse_feature_list(std::vector<std::string>{"R[t-1]", "S_pre[t-0]", "S_post[t-7]", "N[t-7]",
                                                                 "Close[t-1]"});
  const FeatureMatrix m = build_matrix(src, specs, src.span());
  // R[t-1] needs two earlier days, lag 7 needs seven.
  REQUIRE(m.rows() == 13);
  CHECK(m.dates.front() == add_days(src.span().first, 7));
  for (std::size_t r = 0; r < m.rows(); ++r) {
    const Date t = m.dates[r];
    const int i = static_cast<int>(days_between(src.span().first, t));
    CHECK(m.values(r, 0) == doctest::Approx((100.0 + i - 1) / (100.0 + i - 2) - 1.0));
    CHECK(m.values(r, 1) == doctest::Approx((i - 1.0) / (i + 6.0)));
    CHECK(m.values(r, 2) == doctest::Approx((i - 7 + 2.0 - 5.0) / (i - 7 + 2.0 + 5.0 + 5.0)));
    CHECK(m.values(r, 3) == 9.0);
    CHECK(m.values(r, 4) == 100.0 + i - 1);
    CHECK(m.labels[r] == 1);
    CHECK(m.trading_day[r] == !is_weekend(t));
  }
  CHECK_THROWS_AS(build_matrix(src, parse_feature_list(std::vector<std::string>{"N[t-25]"}), src.span()), Error);
}

TEST_CASE("split at floor(rows * fraction)") {
  const FeatureSources src = sample_sources();
  const FeatureMatrix m = build_matrix(src, canonical_set(Strategy::BoRfe2), src.span());
  REQUIRE(m.rows() == 18);
  const auto [train, test] = split(m, 0.84);
  CHECK(train.rows() == 15);
  CHECK(test.rows() == 3);
  CHECK(test.dates.front() == m.dates[15]);
  CHECK_THROWS_AS(split(m, 0.01), Error);
}

TEST_CASE("matrix csv leads with the date") {
  const FeatureSources src = sample_sources();
  const FeatureMatrix m = build_matrix(src, canonical_set(Strategy::BoRfe2), src.span());
  std::ostringstream out;
  write_matrix(out, m);
  CHECK(out.str().rfind("date,R[t-1],S_pre[t-0],label\n", 0) == 0);
}
