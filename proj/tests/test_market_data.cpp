#include <doctest.h>

#include <sstream>

#include "sentalpha/error.hpp"
#include "sentalpha/market_data.hpp"

using namespace sentalpha;

namespace {

std::vector<DailyBar> parse(const std::string& text) {
  std::istringstream in(text);
  return parse_bars(in);
}

ErrorCode code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("no error thrown");
  return ErrorCode::InvalidArgument;
}

// Fri 2021-01-08 .. Mon 2021-01-11
const std::string kWeekend =
    "date,open,high,low,close,volume\n"
    "2021-01-07,10,11,9,10,100\n"
    "2021-01-08,10,12,9,11,100\n"
    "2021-01-11,11,15,10,14,400\n";

}  // namespace

TEST_CASE("parse_bars reads columns by name and defaults trade value") {
  const auto bars = parse("volume,date,close,open,low,high\n5,2021-01-04,2,1,0.5,3\n");
  REQUIRE(bars.size() == 1);
  CHECK(bars[0].open == 1.0);
  CHECK(bars[0].high == 3.0);
  CHECK(bars[0].trade_value == 10.0);
}

TEST_CASE("parse_bars rejects broken rows") {
  CHECK(code_of([] { parse("date,open,high,low,close,volume\n2021-01-04,1,0.5,0.4,1,1\n"); }) ==
        ErrorCode::MalformedRecord);
  CHECK(code_of([] { parse("date,open,high,low,close,volume\n2021-01-04,1,2,0.5,1,-1\n"); }) ==
        ErrorCode::MalformedRecord);
  CHECK(code_of([] { parse("date,open,high,low,close\n2021-01-04,1,2,0.5,1\n"); }) == ErrorCode::MalformedRecord);
  CHECK(code_of([] {
          parse("date,open,high,low,close,volume\n2021-01-05,1,2,0.5,1,1\n2021-01-05,1,2,0.5,1,1\n");
        }) == ErrorCode::NonMonotonicDates);
  try {
    parse("date,open,high,low,close,volume\n2021-01-04,1,2,0.5,1,1\n2021-01-05,x,2,0.5,1,1\n");
    FAIL("expected error");
  } catch (const Error& e) {
    CHECK(std::string(e.what()).find("line 3") != std::string::npos);
  }
}

TEST_CASE("align_calendar interpolates the weekend linearly") {
  const auto bars = parse(kWeekend);
  const auto aligned = align_calendar(bars, {bars.front().date, bars.back().date});
  REQUIRE(aligned.size() == 5);
  CHECK(aligned[2].interpolated);
  CHECK(aligned[3].interpolated);
  CHECK_FALSE(aligned[4].interpolated);
  CHECK(aligned[2].close == doctest::Approx(12.0));
  CHECK(aligned[3].close == doctest::Approx(13.0));
  CHECK(aligned[3].volume == doctest::Approx(300.0));
}

TEST_CASE("align_calendar refuses gaps over four days") {
  const auto ok = parse(
      "date,open,high,low,close,volume\n2021-01-01,1,1,1,1,1\n2021-01-06,1,1,1,1,1\n");
  CHECK(align_calendar(ok, {ok.front().date, ok.back().date}).size() == 6);
  const auto wide = parse(
      "date,open,high,low,close,volume\n2021-01-01,1,1,1,1,1\n2021-01-07,1,1,1,1,1\n");
  CHECK(code_of([&] { align_calendar(wide, {wide.front().date, wide.back().date}); }) == ErrorCode::GapTooWide);
}

TEST_CASE("compute_returns is close to close and labels zero as up") {
  const auto bars = parse(kWeekend);
  const auto aligned = align_calendar(bars, {bars.front().date, bars.back().date});
  const ReturnSeries r = compute_returns(aligned);
  REQUIRE(r.size() == 4);
  CHECK(r.returns[0] == doctest::Approx(0.1));
  CHECK(r.returns[3] == doctest::Approx(14.0 / 13.0 - 1.0));
  CHECK(r.trading_day[0]);
  CHECK_FALSE(r.trading_day[1]);
  CHECK(return_sign(0.0) == 1);
  CHECK(return_sign(-1e-300) == -1);
}

TEST_CASE("aligned bars survive a write/read round trip") {
  const auto bars = parse(kWeekend);
  const auto aligned = align_calendar(bars, {bars.front().date, bars.back().date});
  std::ostringstream out;
  write_aligned_bars(out, aligned, compute_returns(aligned));
  std::istringstream in(out.str());
  CHECK(read_aligned_bars(in) == aligned);
}
