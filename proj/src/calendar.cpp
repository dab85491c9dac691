#include "sentalpha/calendar.hpp"

#include <charconv>

#include <fmt/format.h>

#include "sentalpha/error.hpp"

namespace sentalpha {

namespace {

int parse_fixed(std::string_view text, std::size_t pos, std::size_t len) {
  int value = 0;
  const char* begin = text.data() + pos;
  const auto [ptr, ec] = std::from_chars(begin, begin + len, value);
  if (ec != std::errc{} || ptr != begin + len) {
    throw Error(ErrorCode::InvalidArgument, fmt::format("bad date '{}'", text));
  }
  return value;
}

}  // namespace

Date parse_date(std::string_view text) {
  if (text.size() != 10 || text[4] != '-' || text[7] != '-') {
    throw Error(ErrorCode::InvalidArgument, fmt::format("bad date '{}'", text));
  }
  const std::chrono::year_month_day ymd{std::chrono::year{parse_fixed(text, 0, 4)},
                                        std::chrono::month{static_cast<unsigned>(parse_fixed(text, 5, 2))},
                                        std::chrono::day{static_cast<unsigned>(parse_fixed(text, 8, 2))}};
  if (!ymd.ok()) {
    throw Error(ErrorCode::InvalidArgument, fmt::format("invalid calendar date '{}'", text));
  }
  return Date{ymd};
}

std::string format_date(Date d) {
  const std::chrono::year_month_day ymd{d};
  return fmt::format("{:04d}-{:02d}-{:02d}", static_cast<int>(ymd.year()),
                     static_cast<unsigned>(ymd.month()), static_cast<unsigned>(ymd.day()));
}

}  // namespace sentalpha
