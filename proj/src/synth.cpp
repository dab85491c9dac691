#include "sentalpha/synth.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <random>

#include <fmt/format.h>

#include "sentalpha/csv.hpp"
#include "sentalpha/error.hpp"
#include "sentalpha/ml/rng.hpp"

namespace sentalpha {

namespace {

constexpr std::array<double, 3> kSessionShare{0.3, 0.5, 0.2};
// Session bounds in seconds after midnight.
constexpr std::array<std::pair<long, long>, 3> kSessionBounds{
    {{0, 9 * 3600 + 30 * 60}, {9 * 3600 + 30 * 60, 16 * 3600}, {16 * 3600, 24 * 3600}}};

bool plantable(const FeatureSpec& f) {
  switch (f.kind) {
    case FeatureKind::Return:
    case FeatureKind::NegativeCount:
      return true;
    case FeatureKind::SentimentIndex:
      return f.session != Session::FullDay;
    default:
      return false;
  }
}

// Rounds through the decimal text so written values read back bit-identically.
double round_to(double x, int decimals) { return std::stod(fmt::format("{:.{}f}", x, decimals)); }

void standardize(std::vector<double>& v) {
  double mean = 0.0;
  for (double x : v) mean += x;
  mean /= static_cast<double>(v.size());
  double var = 0.0;
  for (double x : v) var += (x - mean) * (x - mean);
  const double sd = std::sqrt(var / static_cast<double>(v.size()));
  for (double& x : v) x = sd > 0.0 ? (x - mean) / sd : 0.0;
}

}  // namespace

void SynthConfig::validate() const {
  const auto bad = [](const std::string& msg) { throw Error(ErrorCode::InvalidArgument, msg); };
  if (n_days < kMinSynthDays) bad(fmt::format("n_days {} below the minimum {}", n_days, kMinSynthDays));
  if (!(neutral_fraction >= 0.0 && neutral_fraction <= 1.0)) bad("neutral fraction must lie in [0, 1]");
  if (!(noise >= 0.0)) bad("noise must be >= 0");
  if (!(weekly_amplitude >= 0.0 && weekly_amplitude < 1.0)) bad("weekly amplitude must lie in [0, 1)");
  if (volume_min < 1 || volume_max < volume_min) bad("volume range must satisfy 1 <= min <= max");
  if (!(volatility > 0.0) || !(start_price > 0.0)) bad("volatility and start price must be positive");
  double total = noise * noise;
  for (const auto& s : signals) {
    s.feature.validate();
    if (!plantable(s.feature)) bad(fmt::format("cannot plant signal in {}", s.feature.name()));
    if (s.feature.kind == FeatureKind::Return && s.feature.lag < 1) bad("return signals need lag >= 1");
    if (!(s.weight >= 0.0)) bad(fmt::format("signal strength for {} must be >= 0", s.feature.name()));
    if (s.feature.lag >= n_days / 2) bad(fmt::format("lag of {} too long for {} days", s.feature.name(), n_days));
    total += s.weight * s.weight;
  }
  if (!(total > 0.0)) bad("noise and every signal strength are zero");
}

std::vector<SynthSignal> default_signals() {
  return {{FeatureSpec::parse("R[t-1]"), 0.6},
          {FeatureSpec::parse("S_pre[t-0]"), 1.0},
          {FeatureSpec::parse("S_intra[t-7]"), 0.5},
          {FeatureSpec::parse("S_post[t-7]"), 0.5},
          {FeatureSpec::parse("N[t-7]"), 0.5}};
}

SynthDataset generate(const SynthConfig& config) {
  config.validate();
  using namespace std::chrono;
  const long remainder = (config.n_days - 1) % 7;
  const Date start = sys_days{year{2019} / January / (remainder <= 4 ? 7 : 9)};
  SynthDataset out;
  out.span = {start, add_days(start, config.n_days - 1)};
  out.signals = config.signals;
  const auto n = static_cast<std::size_t>(config.n_days);

  // Pass 1: tweet counts.
  ml::Rng rng = ml::make_rng(config.seed, "tweets");
  std::normal_distribution<double> normal(0.0, 1.0);
  const double center = std::sqrt(static_cast<double>(config.volume_min) * static_cast<double>(config.volume_max));
  const double sigma = std::log(static_cast<double>(config.volume_max) / config.volume_min) / 4.0;
  std::vector<long long> day_total(n);
  std::array<std::vector<double>, 3> session_s;
  std::vector<double> negatives(n);
  for (auto& v : session_s) v.resize(n);
  out.counts.reserve(4 * n);
  for (std::size_t d = 0; d < n; ++d) {
    const double season = 1.0 + config.weekly_amplitude * std::cos(2.0 * std::numbers::pi * static_cast<double>(d) / 7.0);
    const double volume = std::clamp(std::round(center * season * std::exp(sigma * normal(rng))),
                                     static_cast<double>(config.volume_min), static_cast<double>(config.volume_max));
    auto remaining = static_cast<long long>(volume);
    SessionCounts day{add_days(start, static_cast<long>(d)), Session::FullDay};
    for (std::size_t s = 0; s < 3; ++s) {
      long long v = remaining;
      if (s < 2) {
        const double share = kSessionShare[s] / (s == 0 ? 1.0 : 1.0 - kSessionShare[0]);
        v = std::binomial_distribution<long long>(remaining, share)(rng);
      }
      remaining -= v;
      const long long neutral = std::binomial_distribution<long long>(v, config.neutral_fraction)(rng);
      const double p = 1.0 / (1.0 + std::exp(-normal(rng)));
      const long long pos = std::binomial_distribution<long long>(v - neutral, p)(rng);
      const SessionCounts c{day.date, kAllSessions[s], pos, v - neutral - pos, neutral};
      out.counts.push_back(c);
      day.positive += c.positive;
      day.negative += c.negative;
      day.neutral += c.neutral;
      session_s[s][d] = sentiment_score(c).score;
    }
    out.counts.push_back(day);
    day_total[d] = day.total();
    negatives[d] = static_cast<double>(day.negative);
  }

  // Standardized sentiment regressors by calendar day.
  std::vector<std::vector<double>> scaled(config.signals.size());
  for (std::size_t k = 0; k < config.signals.size(); ++k) {
    const auto& f = config.signals[k].feature;
    if (f.kind == FeatureKind::NegativeCount) {
      scaled[k] = negatives;
    } else if (f.kind == FeatureKind::SentimentIndex) {
      scaled[k] = session_s[static_cast<std::size_t>(*f.session)];
    } else {
      continue;
    }
    standardize(scaled[k]);
  }

  // Pass 2: returns on weekdays.
  ml::Rng mrng = ml::make_rng(config.seed, "market");
  double norm = config.noise * config.noise;
  for (const auto& s : config.signals) norm += s.weight * s.weight;
  norm = std::sqrt(norm);
  std::vector<double> trading_returns;
  std::size_t agree = 0;
  double close = config.start_price;
  const double vol = config.volatility;
  for (std::size_t d = 0; d < n; ++d) {
    const Date date = add_days(start, static_cast<long>(d));
    if (is_weekend(date)) continue;
    const bool first = out.bars.empty();
    double signal = 0.0;
    for (std::size_t k = 0; k < config.signals.size(); ++k) {
      const auto& s = config.signals[k];
      double x = 0.0;
      if (s.feature.kind == FeatureKind::Return) {
        const auto lag = static_cast<std::size_t>(s.feature.lag);
        if (trading_returns.size() >= lag) x = trading_returns[trading_returns.size() - lag] / vol;
      } else if (d >= static_cast<std::size_t>(s.feature.lag)) {
        x = scaled[k][d - static_cast<std::size_t>(s.feature.lag)];
      }
      signal += s.weight * x;
    }
    const double eps = normal(mrng);
    const double z = signal + config.noise * eps;
    const double ret = first ? 0.0 : vol * z / norm;
    const double prev = close;
    close = round_to(prev * (1.0 + ret), 4);
    if (!first) {
      const double realized = close / prev - 1.0;
      trading_returns.push_back(realized);
      if (return_sign(signal) == return_sign(realized)) ++agree;
    }
    const double open = round_to(prev * (1.0 + 0.25 * vol * normal(mrng)), 4);
    const double high = round_to(std::max(open, close) * (1.0 + 0.3 * vol * std::abs(normal(mrng))), 4);
    const double low = round_to(std::min(open, close) * (1.0 - 0.3 * vol * std::abs(normal(mrng))), 4);
    const double volume = std::round(4.0e7 * static_cast<double>(day_total[d]) / center);
    out.bars.push_back(DailyBar{date, open, high, low, close, volume, round_to(volume * (open + close) / 2.0, 2),
                                false});
  }
  out.trading_days = trading_returns.size();
  out.bayes_accuracy = out.trading_days ? static_cast<double>(agree) / static_cast<double>(out.trading_days) : 0.0;
  return out;
}

void write_tweets(std::ostream& out, const SynthDataset& data, std::uint64_t seed) {
  out << "timestamp,label\n";
  ml::Rng rng = ml::make_rng(seed, "tweet_times");
  std::vector<std::pair<long, SentimentLabel>> day;
  for (const auto& c : data.counts) {
    if (c.session == Session::FullDay) continue;
    const auto [lo, hi] = kSessionBounds[static_cast<std::size_t>(c.session)];
    day.clear();
    const auto add = [&](long long count, SentimentLabel label) {
      for (long long i = 0; i < count; ++i) {
        day.emplace_back(lo + static_cast<long>(ml::uniform_index(rng, static_cast<std::size_t>(hi - lo))), label);
      }
    };
    add(c.positive, SentimentLabel::Positive);
    add(c.negative, SentimentLabel::Negative);
    add(c.neutral, SentimentLabel::Neutral);
    std::stable_sort(day.begin(), day.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    const std::string date = format_date(c.date);
    for (const auto& [sec, label] : day) {
      out << fmt::format("{} {:02}:{:02}:{:02},{}\n", date, sec / 3600, sec / 60 % 60, sec % 60, to_string(label));
    }
  }
}

void write_bars(std::ostream& out, const SynthDataset& data) {
  out << "date,open,high,low,close,volume,trade_value\n";
  for (const auto& b : data.bars) {
    csv::write_row(out, {format_date(b.date), csv::format_double(b.open), csv::format_double(b.high),
                         csv::format_double(b.low), csv::format_double(b.close), csv::format_double(b.volume),
                         csv::format_double(b.trade_value)});
  }
}

nlohmann::json ground_truth(const SynthConfig& config, const SynthDataset& data) {
  nlohmann::json signals = nlohmann::json::array();
  std::vector<std::string> informative;
  for (const auto& s : data.signals) {
    signals.push_back({{"feature", s.feature.name()}, {"weight", s.weight}});
    if (s.weight > 0.0) informative.push_back(s.feature.name());
  }
  return {{"format", "sentalpha.ground_truth"},
          {"version", 1},
          {"seed", config.seed},
          {"n_days", config.n_days},
          {"first_date", format_date(data.span.first)},
          {"last_date", format_date(data.span.last)},
          {"trading_days", data.trading_days},
          {"signals", std::move(signals)},
          {"informative_features", std::move(informative)},
          {"noise", config.noise},
          {"neutral_fraction", config.neutral_fraction},
          {"weekly_amplitude", config.weekly_amplitude},
          {"volume_range", {config.volume_min, config.volume_max}},
          {"volatility", config.volatility},
          {"bayes_accuracy", data.bayes_accuracy}};
}

}  // namespace sentalpha
