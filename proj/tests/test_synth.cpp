#include <doctest.h>

#include <algorithm>
#include <sstream>

#include "fixtures.hpp"
#include "sentalpha/correlation.hpp"
#include "sentalpha/error.hpp"
#include "sentalpha/synth.hpp"

using namespace sentalpha;

namespace {

SynthConfig only(const std::string& feature, double weight, std::uint64_t seed, long days = 730) {
  SynthConfig c;
  c.seed = seed;
  c.n_days = days;
  c.signals = {{FeatureSpec::parse(feature), weight}};
  return c;
}

// Pearson of a feature column with the label-day return over trading days.
double trading_day_corr(const SynthDataset& data, const std::string& feature) {
  const FeatureSources src = fixture::sources_of(data);
  const std::vector<FeatureSpec> specs{FeatureSpec::parse(feature)};
  const FeatureMatrix m = build_matrix(src, specs, src.span());
  std::vector<double> x;
  std::vector<double> r;
  for (std::size_t i = 0; i < m.rows(); ++i) {
    if (!m.trading_day[i]) continue;
    x.push_back(m.values(i, 0));
    r.push_back(*src.returns().at(m.dates[i]));
  }
  return pearson(x, r);
}

}  // namespace

TEST_CASE("config bounds") {
  SynthConfig c;
  c.n_days = 59;
  CHECK_THROWS_AS(generate(c), Error);
  c.n_days = 60;
  c.neutral_fraction = 1.2;
  CHECK_THROWS_AS(generate(c), Error);
  c.neutral_fraction = 0.8;
  c.signals = {{FeatureSpec::parse("Close[t-1]"), 1.0}};
  CHECK_THROWS_AS(generate(c), Error);
  c.signals = {{FeatureSpec::parse("N[t-7]"), -1.0}};
  CHECK_THROWS_AS(generate(c), Error);
}

TEST_CASE("generation is seed-deterministic and emits valid files") {
  SynthConfig c;
  c.seed = 3;
  c.n_days = 61;
  c.signals = default_signals();
  const SynthDataset a = generate(c);
  const SynthDataset b = generate(c);
  CHECK(a.bars == b.bars);
  CHECK(a.counts == b.counts);
  CHECK(is_weekend(a.span.first) == false);
  CHECK(is_weekend(a.span.last) == false);
  CHECK(a.span.days() == 61);

  std::stringstream bars;
  write_bars(bars, a);
  const auto parsed = parse_bars(bars);
  CHECK(parsed == a.bars);

  std::stringstream tweets;
  write_tweets(tweets, a, c.seed);
  const auto records = parse_tweets_csv(tweets);
  CHECK(daily_counts(records, a.span) == a.counts);
  for (std::size_t i = 0; i < a.counts.size(); i += 4) {
    const auto& day = a.counts[i + 3];
    CHECK(day.total() >= c.volume_min);
    CHECK(day.total() <= c.volume_max);
  }
}

TEST_CASE("no signal leaves a coin flip") {
  SynthConfig c;
  c.seed = 5;
  c.signals.clear();
  const SynthDataset d = generate(c);
  CHECK(d.bayes_accuracy == doctest::Approx(0.5).epsilon(0.1));
}

TEST_CASE("a strong pre-market signal shows in the returns") {
  const SynthDataset d = generate(only("S_pre[t-0]", 3.0, 1));
  CHECK(trading_day_corr(d, "S_pre[t-0]") > 0.5);
  CHECK(d.bayes_accuracy > 0.8);
}

TEST_CASE("negative counts have weekly seasonality") {
  SynthConfig c;
  c.seed = 2;
  const SynthDataset d = generate(c);
  std::vector<double> neg;
  for (const auto& s : d.counts) {
    if (s.session == Session::FullDay) neg.push_back(static_cast<double>(s.negative));
  }
  const auto a = acf(neg, 10);
  CHECK(std::max_element(a.begin() + 1, a.end()) - a.begin() == 7);
}

TEST_CASE("stronger planted weight, larger measured correlation") {
  double previous = -1.0;
  for (double w : {0.1, 0.4, 1.0, 2.5}) {
    double mean = 0.0;
    for (std::uint64_t seed = 0; seed < 4; ++seed) mean += trading_day_corr(generate(only("N[t-7]", w, seed)), "N[t-7]");
    mean /= 4.0;
    CHECK(mean > previous);
    previous = mean;
  }
}
