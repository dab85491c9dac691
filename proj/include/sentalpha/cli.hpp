#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "sentalpha/calendar.hpp"
#include "sentalpha/features.hpp"

namespace sentalpha::cli {

namespace fs = std::filesystem;

inline constexpr int kExitOk = 0;
inline constexpr int kExitInternal = 1;
inline constexpr int kExitUser = 2;

struct GlobalOptions {
  std::uint64_t seed = 0;
  unsigned threads = 0;
  fs::path out;
  bool timestamps = false;
};

struct IngestOptions {
  fs::path bars;
  fs::path tweets;
};

struct AnalyzeOptions {
  fs::path data;
  std::size_t max_lag = 10;
};

struct SelectOptions {
  fs::path data;
  std::string base = "literature";
  std::vector<std::string> features;  // overrides base when non-empty
  std::size_t bo_iters = 50;
  int theta_max = 100;
  std::size_t train_rows = 222;
  std::size_t test_rows = 30;
  double train_fraction = 0.84;
};

struct StrategyOption {
  std::string name;
  std::size_t window = 0;
  std::vector<std::string> features;
};

struct BacktestOptions {
  fs::path data;
  std::vector<std::string> strategies;     // built-in names
  std::vector<StrategyOption> custom;      // from the config file
  std::optional<fs::path> selection;
  std::size_t selection_window = 40;
  std::vector<std::size_t> windows;        // W sweep
  double train_fraction = 0.84;
  std::size_t batch_size = 10;
  double notional = 10000.0;
  double C = 1.0;
  std::size_t members = 9;
};

struct SynthOptions {
  long days = 730;
  std::vector<std::string> signals;  // NAME=WEIGHT; empty selects the defaults, "none" plants nothing
  double noise = 1.0;
  double neutral = 0.8;
  double amplitude = 0.35;
  long volume_min = 800;
  long volume_max = 2000;
  double volatility = 0.01;
};

// Grid days carrying a return, split at floor(n * fraction); returns the test span.
DateRange test_span(const FeatureSources& sources, double train_fraction);
FeatureSources load_dataset(const fs::path& dir);

void cmd_ingest(const IngestOptions& o, const GlobalOptions& g);
void cmd_analyze(const AnalyzeOptions& o, const GlobalOptions& g);
void cmd_select(const SelectOptions& o, const GlobalOptions& g);
void cmd_backtest(const BacktestOptions& o, const GlobalOptions& g);
void cmd_synth(const SynthOptions& o, const GlobalOptions& g);

// Parses argv and dispatches; returns the process exit code.
int run(int argc, char** argv);

}  // namespace sentalpha::cli
