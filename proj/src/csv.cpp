#include "sentalpha/csv.hpp"

#include <charconv>
#include <cmath>

#include <fmt/format.h>

#include "sentalpha/error.hpp"

namespace sentalpha::csv {

std::vector<std::string> split_line(std::string_view line, char delimiter) {
  std::vector<std::string> fields;
  std::string current;
  bool in_quotes = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (in_quotes) {
      if (c == '"') {
        if (i + 1 < line.size() && line[i + 1] == '"') {
          current.push_back('"');
          ++i;
        } else {
          in_quotes = false;
        }
      } else {
        current.push_back(c);
      }
    } else if (c == '"') {
      in_quotes = true;
    } else if (c == delimiter) {
      fields.push_back(std::move(current));
      current.clear();
    } else {
      current.push_back(c);
    }
  }
  if (in_quotes) {
    throw Error(ErrorCode::MalformedRecord, "unterminated quoted field");
  }
  fields.push_back(std::move(current));
  return fields;
}

Reader::Reader(std::istream& in, char delimiter) : in_(in), delimiter_(delimiter) {
  std::vector<std::string> fields;
  if (!next(fields)) {
    throw Error(ErrorCode::MalformedRecord, "missing header row");
  }
  header_ = fields;
  for (std::size_t i = 0; i < header_.size(); ++i) {
    index_.emplace(header_[i], i);
  }
}

std::optional<std::size_t> Reader::column(std::string_view name) const {
  const auto it = index_.find(name);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::size_t Reader::require_column(std::string_view name) const {
  if (auto c = column(name)) return *c;
  throw Error(ErrorCode::MalformedRecord, fmt::format("header lacks column '{}'", name));
}

bool Reader::next(std::vector<std::string>& fields) {
  std::string line;
  while (std::getline(in_, line)) {
    ++line_;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    try {
      fields = split_line(line, delimiter_);
    } catch (const Error& e) {
      throw Error(ErrorCode::MalformedRecord, fmt::format("line {}: {}", line_, e.what()));
    }
    return true;
  }
  return false;
}

double parse_double(std::string_view text) {
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc{} || ptr != text.data() + text.size() || !std::isfinite(value)) {
    throw Error(ErrorCode::MalformedRecord, fmt::format("not a finite number: '{}'", text));
  }
  return value;
}

long long parse_int(std::string_view text) {
  long long value = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc{} || ptr != text.data() + text.size()) {
    throw Error(ErrorCode::MalformedRecord, fmt::format("not an integer: '{}'", text));
  }
  return value;
}

std::string format_double(double value) { return fmt::format("{}", value); }

std::string quote(std::string_view field) {
  if (field.find_first_of(",\"\n") == std::string_view::npos) return std::string(field);
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out.push_back('"');
    out.push_back(c);
  }
  out.push_back('"');
  return out;
}

void write_row(std::ostream& out, const std::vector<std::string>& fields) {
  for (std::size_t i = 0; i < fields.size(); ++i) {
    if (i) out << ',';
    out << quote(fields[i]);
  }
  out << '\n';
}

}  // namespace sentalpha::csv
