#pragma once

#include <cstdint>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "sentalpha/features.hpp"
#include "sentalpha/market_data.hpp"
#include "sentalpha/sentiment.hpp"

namespace sentalpha {

inline constexpr long kMinSynthDays = 60;

struct SynthSignal {
  FeatureSpec feature;
  double weight = 0.0;
};

struct SynthConfig {
  std::uint64_t seed = 0;
  long n_days = 730;
  // Supported kinds: R[t-k], S_pre/S_intra/S_post[t-k], N[t-k].
  std::vector<SynthSignal> signals;
  double noise = 1.0;
  double neutral_fraction = 0.8;
  double weekly_amplitude = 0.35;
  long volume_min = 800;
  long volume_max = 2000;
  double volatility = 0.01;
  double start_price = 250.0;

  void validate() const;
};

// R[t-1], S_pre[t-0], S_intra[t-7], S_post[t-7], N[t-7].
std::vector<SynthSignal> default_signals();

struct SynthDataset {
  std::vector<DailyBar> bars;          // weekdays only
  std::vector<SessionCounts> counts;   // every grid day, sessions pre, intra, post, day
  DateRange span;
  std::vector<SynthSignal> signals;
  double bayes_accuracy = 0.0;         // share of trading days where sign(signal) = sign(latent)
  std::size_t trading_days = 0;
};

// The grid starts on a Monday or Wednesday so both ends are weekdays.
SynthDataset generate(const SynthConfig& config);

// Expands the counts into individual labeled tweets with times inside their session.
void write_tweets(std::ostream& out, const SynthDataset& data, std::uint64_t seed);
// Raw `date,open,high,low,close,volume,trade_value` bars.
void write_bars(std::ostream& out, const SynthDataset& data);
nlohmann::json ground_truth(const SynthConfig& config, const SynthDataset& data);

}  // namespace sentalpha
