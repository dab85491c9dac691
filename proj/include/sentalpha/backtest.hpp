#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "sentalpha/calendar.hpp"
#include "sentalpha/features.hpp"
#include "sentalpha/market_data.hpp"
#include "sentalpha/ml/metrics.hpp"
#include "sentalpha/ml/pipeline.hpp"

namespace sentalpha {

inline constexpr double kDefaultNotional = 10000.0;
inline constexpr std::size_t kDefaultBatchSize = 10;
inline constexpr std::size_t kMinWindow = 10;

struct StrategyConfig {
  std::string name;
  std::vector<FeatureSpec> features;
  std::size_t window = 240;  // W
  ml::PipelineConfig pipeline;
  std::uint64_t seed = 0;

  // Throws InvalidArgument for W < 10 or an empty feature list.
  void validate() const;
};

// literature (W=240), borfe2 (W=40), borfe5 (W=210).
StrategyConfig builtin_strategy(std::string_view name);
std::vector<std::string> builtin_strategy_names();

struct DayRecord {
  Date date;
  int y_true = 1;
  int y_pred = 1;
  double ret = 0.0;
  bool trading_day = false;
};

// Retrains on the W matrix rows before each test-span row and predicts that
// row. Every test-span row gets a prediction; non-trading rows stay on the
// grid but are ignored by metrics and trading.
std::vector<DayRecord> walk_forward(const FeatureMatrix& matrix, DateRange test_span, const StrategyConfig& config);

// Seed of the refit that predicts day d.
std::uint64_t day_seed(std::uint64_t strategy_seed, Date d) noexcept;

std::vector<DayRecord> trading_days_only(std::span<const DayRecord> records);

struct BatchScore {
  std::size_t first = 0;  // index into the trading-day records
  std::size_t size = 0;
  double f1 = 0.0;
  bool partial = false;
};

// Consecutive chronological batches over trading-day records; a short final batch is kept and flagged.
std::vector<BatchScore> batch_f1(std::span<const DayRecord> trading_records, std::size_t batch_size);

struct PnlSeries {
  std::vector<Date> dates;
  std::vector<double> daily;
  std::vector<double> cumulative;
};

// notional * R_t * y_pred on trading days, 0 elsewhere. R_t comes from `returns`.
PnlSeries trade_sim(std::span<const DayRecord> records, const ReturnSeries& returns, double notional = kDefaultNotional);

struct BacktestReport {
  std::string strategy;
  std::size_t window = 0;
  std::vector<std::string> features;
  std::vector<DayRecord> records;  // every test-span grid day
  ml::MetricsReport metrics;       // trading days only
  std::vector<BatchScore> batches;
  PnlSeries pnl;                   // trading days only

  [[nodiscard]] double final_pnl() const noexcept { return pnl.cumulative.empty() ? 0.0 : pnl.cumulative.back(); }
};

BacktestReport run_backtest(const FeatureMatrix& matrix, DateRange test_span, const StrategyConfig& config,
                            const ReturnSeries& returns, std::size_t batch_size = kDefaultBatchSize,
                            double notional = kDefaultNotional);

struct BoxStats {
  double min = 0.0;
  double q1 = 0.0;
  double median = 0.0;
  double q3 = 0.0;
  double max = 0.0;
};

// Quartiles by linear interpolation between order statistics.
BoxStats box_stats(std::span<const double> values);

struct Comparison {
  std::vector<std::string> strategies;
  std::vector<ml::MetricsReport> metrics;
  std::vector<BoxStats> batch_box;
  std::vector<double> final_pnl;
};

// Throws SpanMismatch unless every report covers the same test days.
Comparison compare_strategies(std::span<const BacktestReport> reports);

// `date,y_true,y_pred,return,pnl,cum_pnl` over trading days.
void write_records(std::ostream& out, const BacktestReport& report);
// `strategy,accuracy,precision,recall,f1,final_pnl,batch_min,batch_q1,batch_median,batch_q3,batch_max`.
void write_comparison(std::ostream& out, const Comparison& comparison);
// `strategy,batch,first_date,size,partial,f1`.
void write_batches(std::ostream& out, std::span<const BacktestReport> reports);
nlohmann::json metrics_summary(const BacktestReport& report);

}  // namespace sentalpha
