#pragma once

#include <chrono>
#include <string>
#include <string_view>

namespace sentalpha {

using Date = std::chrono::sys_days;

// Inclusive calendar-day range.
struct DateRange {
  Date first;
  Date last;

  [[nodiscard]] bool contains(Date d) const noexcept { return first <= d && d <= last; }
  [[nodiscard]] long days() const noexcept { return (last - first).count() + 1; }
  friend bool operator==(const DateRange&, const DateRange&) = default;
};

// Parses YYYY-MM-DD. Throws Error(InvalidArgument) on anything else.
Date parse_date(std::string_view text);
std::string format_date(Date d);

inline Date add_days(Date d, long n) { return d + std::chrono::days{n}; }
inline long days_between(Date from, Date to) { return (to - from).count(); }

inline bool is_weekend(Date d) {
  const std::chrono::weekday wd{d};
  return wd == std::chrono::Saturday || wd == std::chrono::Sunday;
}

}  // namespace sentalpha
