#pragma once

#include <istream>
#include <optional>
#include <ostream>
#include <span>
#include <vector>

#include "sentalpha/calendar.hpp"

namespace sentalpha {

struct DailyBar {
  Date date;
  double open = 0.0;
  double high = 0.0;
  double low = 0.0;
  double close = 0.0;
  double volume = 0.0;
  double trade_value = 0.0;
  bool interpolated = false;

  friend bool operator==(const DailyBar&, const DailyBar&) = default;
};

// Close-to-close returns on the aligned grid. Entry i belongs to dates[i];
// the first grid day has no return and is not represented.
struct ReturnSeries {
  std::vector<Date> dates;
  std::vector<double> returns;
  std::vector<bool> trading_day;

  [[nodiscard]] std::size_t size() const noexcept { return dates.size(); }
  [[nodiscard]] std::optional<std::size_t> index_of(Date d) const;
  [[nodiscard]] std::optional<double> at(Date d) const;
};

// Zero returns count as "up" so every day gets a definite label.
constexpr int return_sign(double r) noexcept { return r >= 0.0 ? 1 : -1; }

// Largest run of consecutive missing calendar days align_calendar will fill.
inline constexpr long kMaxFillableGap = 4;

// Reads `date,open,high,low,close,volume[,trade_value]` (header required,
// extra columns ignored). Rejects rows violating the bar invariants.
std::vector<DailyBar> parse_bars(std::istream& in);

// One bar per calendar day of `span`, filling non-trading days by linear
// interpolation between the bracketing trading days.
std::vector<DailyBar> align_calendar(std::span<const DailyBar> bars, DateRange span);

ReturnSeries compute_returns(std::span<const DailyBar> aligned);

// Aligned bars with `interpolated` and `return` columns appended.
void write_aligned_bars(std::ostream& out, std::span<const DailyBar> aligned, const ReturnSeries& returns);
std::vector<DailyBar> read_aligned_bars(std::istream& in);

}  // namespace sentalpha
