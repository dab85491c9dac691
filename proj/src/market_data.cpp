#include "sentalpha/market_data.hpp"

#include <algorithm>
#include <cmath>

#include <fmt/format.h>

#include "sentalpha/csv.hpp"
#include "sentalpha/error.hpp"

namespace sentalpha {

std::optional<std::size_t> ReturnSeries::index_of(Date d) const {
  const auto it = std::lower_bound(dates.begin(), dates.end(), d);
  if (it == dates.end() || *it != d) return std::nullopt;
  return static_cast<std::size_t>(it - dates.begin());
}

std::optional<double> ReturnSeries::at(Date d) const {
  if (auto i = index_of(d)) return returns[*i];
  return std::nullopt;
}

namespace {

void check_bar(const DailyBar& b, std::size_t line) {
  const auto fail = [&](const char* what) {
    throw Error(ErrorCode::MalformedRecord, fmt::format("line {}: {}", line, what));
  };
  if (b.low > std::min(b.open, b.close)) fail("low above min(open, close)");
  if (b.high < std::max(b.open, b.close)) fail("high below max(open, close)");
  if (b.volume < 0.0) fail("negative volume");
  if (b.trade_value < 0.0) fail("negative trade value");
}

}  // namespace

std::vector<DailyBar> parse_bars(std::istream& in) {
  csv::Reader reader(in);
  const std::size_t c_date = reader.require_column("date");
  const std::size_t c_open = reader.require_column("open");
  const std::size_t c_high = reader.require_column("high");
  const std::size_t c_low = reader.require_column("low");
  const std::size_t c_close = reader.require_column("close");
  const std::size_t c_volume = reader.require_column("volume");
  const auto c_value = reader.column("trade_value");
  const auto c_interp = reader.column("interpolated");

  std::vector<DailyBar> bars;
  std::vector<std::string> f;
  while (reader.next(f)) {
    const std::size_t line = reader.line_number();
    if (f.size() != reader.header().size()) {
      throw Error(ErrorCode::MalformedRecord,
                  fmt::format("line {}: expected {} fields, got {}", line, reader.header().size(), f.size()));
    }
    DailyBar b;
    try {
      b.date = parse_date(f[c_date]);
      b.open = csv::parse_double(f[c_open]);
      b.high = csv::parse_double(f[c_high]);
      b.low = csv::parse_double(f[c_low]);
      b.close = csv::parse_double(f[c_close]);
      b.volume = csv::parse_double(f[c_volume]);
      b.trade_value = (c_value && !f[*c_value].empty()) ? csv::parse_double(f[*c_value]) : b.close * b.volume;
      if (c_interp) b.interpolated = csv::parse_int(f[*c_interp]) != 0;
    } catch (const Error& e) {
      throw Error(ErrorCode::MalformedRecord, fmt::format("line {}: {}", line, e.what()));
    }
    check_bar(b, line);
    if (!bars.empty() && b.date <= bars.back().date) {
      throw Error(ErrorCode::NonMonotonicDates,
                  fmt::format("line {}: date {} does not follow {}", line, format_date(b.date),
                              format_date(bars.back().date)));
    }
    bars.push_back(b);
  }
  return bars;
}

std::vector<DailyBar> align_calendar(std::span<const DailyBar> bars, DateRange span) {
  if (bars.empty()) throw Error(ErrorCode::InvalidArgument, "no bars to align");
  if (bars.front().date != span.first || bars.back().date != span.last) {
    throw Error(ErrorCode::InvalidArgument,
                fmt::format("span {}..{} must start and end on a bar ({}..{})", format_date(span.first),
                            format_date(span.last), format_date(bars.front().date),
                            format_date(bars.back().date)));
  }
  std::vector<DailyBar> out;
  out.reserve(static_cast<std::size_t>(span.days()));
  out.push_back(bars.front());
  for (std::size_t i = 1; i < bars.size(); ++i) {
    const DailyBar& a = bars[i - 1];
    const DailyBar& b = bars[i];
    if (b.date <= a.date) {
      throw Error(ErrorCode::NonMonotonicDates, fmt::format("bar {} out of order", format_date(b.date)));
    }
    const long steps = days_between(a.date, b.date);
    if (steps - 1 > kMaxFillableGap) {
      throw Error(ErrorCode::GapTooWide, fmt::format("{} consecutive days missing after {}", steps - 1,
                                                     format_date(a.date)));
    }
    for (long k = 1; k < steps; ++k) {
      const double w = static_cast<double>(k) / static_cast<double>(steps);
      const auto lerp = [w](double x, double y) { return x + w * (y - x); };
      DailyBar fill;
      fill.date = add_days(a.date, k);
      fill.open = lerp(a.open, b.open);
      fill.high = lerp(a.high, b.high);
      fill.low = lerp(a.low, b.low);
      fill.close = lerp(a.close, b.close);
      fill.volume = lerp(a.volume, b.volume);
      fill.trade_value = lerp(a.trade_value, b.trade_value);
      fill.interpolated = true;
      out.push_back(fill);
    }
    out.push_back(b);
  }
  return out;
}

ReturnSeries compute_returns(std::span<const DailyBar> aligned) {
  if (aligned.size() < 2) throw Error(ErrorCode::InvalidArgument, "need at least two bars for returns");
  ReturnSeries rs;
  rs.dates.reserve(aligned.size() - 1);
  rs.returns.reserve(aligned.size() - 1);
  rs.trading_day.reserve(aligned.size() - 1);
  for (std::size_t i = 1; i < aligned.size(); ++i) {
    const double prev = aligned[i - 1].close;
    if (prev == 0.0) {
      throw Error(ErrorCode::ZeroPrice, fmt::format("zero close on {}", format_date(aligned[i - 1].date)));
    }
    rs.dates.push_back(aligned[i].date);
    rs.returns.push_back((aligned[i].close - prev) / prev);
    rs.trading_day.push_back(!aligned[i].interpolated);
  }
  return rs;
}

void write_aligned_bars(std::ostream& out, std::span<const DailyBar> aligned, const ReturnSeries& returns) {
  out << "date,open,high,low,close,volume,trade_value,interpolated,return\n";
  for (const DailyBar& b : aligned) {
    const auto r = returns.at(b.date);
    out << format_date(b.date) << ',' << csv::format_double(b.open) << ',' << csv::format_double(b.high) << ','
        << csv::format_double(b.low) << ',' << csv::format_double(b.close) << ','
        << csv::format_double(b.volume) << ',' << csv::format_double(b.trade_value) << ','
        << (b.interpolated ? 1 : 0) << ',' << (r ? csv::format_double(*r) : std::string()) << '\n';
  }
}

std::vector<DailyBar> read_aligned_bars(std::istream& in) { return parse_bars(in); }

}  // namespace sentalpha
