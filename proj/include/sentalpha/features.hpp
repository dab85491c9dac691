#pragma once

#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "sentalpha/calendar.hpp"
#include "sentalpha/market_data.hpp"
#include "sentalpha/ml/matrix.hpp"
#include "sentalpha/sentiment.hpp"

namespace sentalpha {

enum class FeatureKind { Return, SentimentIndex, NegativeCount, Open, Close, High, Low, Volume, TradeValue };

// A lagged regressor. Canonical names look like "R[t-1]", "S_pre[t-0]",
// "S_intra[t-7]", "N[t-7]", "Close[t-1]" and identify features across runs.
struct FeatureSpec {
  FeatureKind kind = FeatureKind::Return;
  int lag = 1;
  // Set only for SentimentIndex. Negative counts are always full-day.
  std::optional<Session> session;

  [[nodiscard]] std::string name() const;
  [[nodiscard]] bool is_sentiment() const noexcept;
  // Throws Error(InvalidArgument) when the lag/session rules are broken.
  void validate() const;

  static FeatureSpec parse(std::string_view name);
  friend bool operator==(const FeatureSpec&, const FeatureSpec&) = default;
};

std::vector<FeatureSpec> parse_feature_list(std::span<const std::string> names);
std::vector<std::string> feature_names(std::span<const FeatureSpec> specs);

enum class Strategy { Literature, BoRfe2, BoRfe5 };

std::vector<FeatureSpec> canonical_set(Strategy strategy);

// Aligned market and sentiment series on one calendar grid.
class FeatureSources {
 public:
  FeatureSources(std::vector<DailyBar> aligned_bars, std::vector<SessionCounts> counts);

  [[nodiscard]] const std::vector<DailyBar>& bars() const noexcept { return bars_; }
  [[nodiscard]] const ReturnSeries& returns() const noexcept { return returns_; }
  [[nodiscard]] const std::vector<SessionCounts>& counts() const noexcept { return counts_; }
  [[nodiscard]] DateRange span() const noexcept { return {bars_.front().date, bars_.back().date}; }

  // Value of `spec`'s series on day d (no lag applied); nullopt if undefined there.
  [[nodiscard]] std::optional<double> value(const FeatureSpec& spec, Date d) const;
  [[nodiscard]] bool is_trading_day(Date d) const;

 private:
  std::vector<DailyBar> bars_;
  ReturnSeries returns_;
  std::vector<SessionCounts> counts_;
  // counts_[slot_[day offset] * 4 + session], or npos when the day has no counts.
  std::vector<std::size_t> slot_;
};

struct FeatureMatrix {
  std::vector<Date> dates;
  std::vector<FeatureSpec> specs;
  ml::Matrix values;
  std::vector<int> labels;
  std::vector<bool> trading_day;

  [[nodiscard]] std::size_t rows() const noexcept { return dates.size(); }
  [[nodiscard]] std::size_t cols() const noexcept { return specs.size(); }
  // First row at or after d.
  [[nodiscard]] std::size_t lower_bound(Date d) const;
  [[nodiscard]] FeatureMatrix slice_rows(std::size_t begin, std::size_t end) const;
  [[nodiscard]] FeatureMatrix select_columns(std::span<const std::size_t> columns) const;
};

// Rows are the days t in span whose every lagged lookup t - lag also lies in
// span and is defined; the label is the sign of R_t.
FeatureMatrix build_matrix(const FeatureSources& sources, std::span<const FeatureSpec> specs, DateRange span);

// Chronological split at floor(rows * train_fraction).
std::pair<FeatureMatrix, FeatureMatrix> split(const FeatureMatrix& matrix, double train_fraction);

void write_matrix(std::ostream& out, const FeatureMatrix& matrix);

}  // namespace sentalpha
