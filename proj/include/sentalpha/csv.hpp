#pragma once

#include <cstddef>
#include <istream>
#include <map>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

namespace sentalpha::csv {

// Splits one delimited line; double-quoted fields may contain commas and "" escapes.
std::vector<std::string> split_line(std::string_view line, char delimiter = ',');

// Reader over a header-led delimited stream. Line numbers are 1-based and
// count the header, so diagnostics match what an editor shows.
class Reader {
 public:
  explicit Reader(std::istream& in, char delimiter = ',');

  [[nodiscard]] const std::vector<std::string>& header() const noexcept { return header_; }
  [[nodiscard]] std::optional<std::size_t> column(std::string_view name) const;
  [[nodiscard]] std::size_t require_column(std::string_view name) const;

  // Next non-empty record; false at end of stream.
  bool next(std::vector<std::string>& fields);
  [[nodiscard]] std::size_t line_number() const noexcept { return line_; }

 private:
  std::istream& in_;
  char delimiter_;
  std::vector<std::string> header_;
  std::map<std::string, std::size_t, std::less<>> index_;
  std::size_t line_ = 0;
};

double parse_double(std::string_view text);
long long parse_int(std::string_view text);

// Shortest text that round-trips to the same double.
std::string format_double(double value);

std::string quote(std::string_view field);

void write_row(std::ostream& out, const std::vector<std::string>& fields);

}  // namespace sentalpha::csv
