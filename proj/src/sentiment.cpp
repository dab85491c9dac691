#include "sentalpha/sentiment.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>

#include <fmt/format.h>
#include <json.hpp>

#include "sentalpha/csv.hpp"
#include "sentalpha/error.hpp"

namespace sentalpha {

namespace {

std::string lower(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(), [](unsigned char c) { return std::tolower(c); });
  return out;
}

int two_digits(std::string_view text, std::size_t pos) {
  if (pos + 2 > text.size() || !std::isdigit(static_cast<unsigned char>(text[pos])) ||
      !std::isdigit(static_cast<unsigned char>(text[pos + 1]))) {
    throw Error(ErrorCode::MalformedRecord, fmt::format("bad timestamp '{}'", text));
  }
  return (text[pos] - '0') * 10 + (text[pos + 1] - '0');
}

constexpr std::size_t session_slot(Session s) noexcept { return static_cast<std::size_t>(s); }

}  // namespace

SentimentLabel parse_label(std::string_view text) {
  const std::string l = lower(text);
  if (l == "positive") return SentimentLabel::Positive;
  if (l == "negative") return SentimentLabel::Negative;
  if (l == "neutral") return SentimentLabel::Neutral;
  throw Error(ErrorCode::MalformedRecord, fmt::format("unknown sentiment label '{}'", text));
}

std::string_view to_string(SentimentLabel label) noexcept {
  switch (label) {
    case SentimentLabel::Positive: return "positive";
    case SentimentLabel::Negative: return "negative";
    case SentimentLabel::Neutral: return "neutral";
  }
  return "neutral";
}

std::string_view to_string(Session session) noexcept {
  switch (session) {
    case Session::PreMarket: return "pre";
    case Session::IntraMarket: return "intra";
    case Session::PostMarket: return "post";
    case Session::FullDay: return "day";
  }
  return "day";
}

Session parse_session(std::string_view text) {
  for (Session s : kAllSessions) {
    if (to_string(s) == text) return s;
  }
  throw Error(ErrorCode::MalformedRecord, fmt::format("unknown session '{}'", text));
}

Timestamp parse_timestamp(std::string_view text) {
  if (text.size() < 16 || (text[10] != 'T' && text[10] != ' ') || text[13] != ':') {
    throw Error(ErrorCode::MalformedRecord, fmt::format("bad timestamp '{}'", text));
  }
  Timestamp ts;
  try {
    ts.date = parse_date(text.substr(0, 10));
  } catch (const Error&) {
    throw Error(ErrorCode::MalformedRecord, fmt::format("bad timestamp '{}'", text));
  }
  const int hh = two_digits(text, 11);
  const int mm = two_digits(text, 14);
  int ss = 0;
  std::size_t pos = 16;
  if (pos < text.size() && text[pos] == ':') {
    ss = two_digits(text, pos + 1);
    pos += 3;
    // Fractional seconds are truncated.
    if (pos < text.size() && text[pos] == '.') {
      ++pos;
      while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
    }
  }
  if (hh > 23 || mm > 59 || ss > 60) {
    throw Error(ErrorCode::MalformedRecord, fmt::format("bad time of day in '{}'", text));
  }
  ts.time_of_day = std::chrono::seconds{hh * 3600 + mm * 60 + std::min(ss, 59)};
  if (pos < text.size()) {
    if (text[pos] == 'Z' && pos + 1 == text.size()) {
      ts.utc_offset = std::chrono::minutes{0};
    } else if ((text[pos] == '+' || text[pos] == '-') && pos + 6 == text.size() && text[pos + 3] == ':') {
      const int sign = text[pos] == '-' ? -1 : 1;
      ts.utc_offset = std::chrono::minutes{sign * (two_digits(text, pos + 1) * 60 + two_digits(text, pos + 4))};
    } else {
      throw Error(ErrorCode::MalformedRecord, fmt::format("bad UTC offset in '{}'", text));
    }
  }
  return ts;
}

std::string format_timestamp(const Timestamp& ts) {
  const long secs = ts.time_of_day.count();
  std::string out = fmt::format("{}T{:02d}:{:02d}:{:02d}", format_date(ts.date), secs / 3600, (secs / 60) % 60,
                                secs % 60);
  if (ts.utc_offset) {
    const long m = ts.utc_offset->count();
    const long a = m < 0 ? -m : m;
    out += fmt::format("{}{:02d}:{:02d}", m < 0 ? '-' : '+', a / 60, a % 60);
  }
  return out;
}

SentimentLabel IdentityLabeler::classify(std::string_view) const {
  throw Error(ErrorCode::UnlabeledText, "identity labeler cannot classify raw text");
}

std::vector<TweetRecord> label_tweets(std::vector<TweetRecord> tweets, const SentimentLabeler& labeler) {
  for (std::size_t i = 0; i < tweets.size(); ++i) {
    TweetRecord& t = tweets[i];
    if (t.label) continue;
    if (!t.text) {
      throw Error(ErrorCode::InvalidArgument, fmt::format("tweet {} has neither label nor text", i));
    }
    t.label = labeler.classify(*t.text);
  }
  return tweets;
}

Session bucket_session(const Timestamp& ts) noexcept {
  using namespace std::chrono_literals;
  if (ts.time_of_day < 9h + 30min) return Session::PreMarket;
  if (ts.time_of_day < 16h) return Session::IntraMarket;
  return Session::PostMarket;
}

std::vector<SessionCounts> daily_counts(std::span<const TweetRecord> tweets, DateRange span) {
  const auto days = static_cast<std::size_t>(span.days());
  std::vector<SessionCounts> counts(days * kAllSessions.size());
  for (std::size_t d = 0; d < days; ++d) {
    for (Session s : kAllSessions) {
      SessionCounts& c = counts[d * kAllSessions.size() + session_slot(s)];
      c.date = add_days(span.first, static_cast<long>(d));
      c.session = s;
    }
  }
  for (const TweetRecord& t : tweets) {
    if (!t.label) throw Error(ErrorCode::UnlabeledText, "daily_counts requires labeled tweets");
    if (!span.contains(t.timestamp.date)) {
      throw Error(ErrorCode::InvalidArgument,
                  fmt::format("tweet at {} outside span", format_timestamp(t.timestamp)));
    }
    const auto d = static_cast<std::size_t>(days_between(span.first, t.timestamp.date));
    for (Session s : {bucket_session(t.timestamp), Session::FullDay}) {
      SessionCounts& c = counts[d * kAllSessions.size() + session_slot(s)];
      switch (*t.label) {
        case SentimentLabel::Positive: ++c.positive; break;
        case SentimentLabel::Negative: ++c.negative; break;
        case SentimentLabel::Neutral: ++c.neutral; break;
      }
    }
  }
  return counts;
}

SentimentIndex sentiment_score(const SessionCounts& counts) noexcept {
  SentimentIndex idx{counts.date, counts.session, 0.0, false};
  const long long total = counts.total();
  if (total == 0) {
    idx.imputed = true;
    return idx;
  }
  idx.score = static_cast<double>(counts.positive - counts.negative) / static_cast<double>(total);
  return idx;
}

std::vector<TweetRecord> parse_tweets_csv(std::istream& in) {
  csv::Reader reader(in);
  const std::size_t c_ts = reader.require_column("timestamp");
  const auto c_label = reader.column("label");
  const auto c_text = reader.column("text");
  if (!c_label && !c_text) {
    throw Error(ErrorCode::MalformedRecord, "tweet header needs a label or text column");
  }
  std::vector<TweetRecord> tweets;
  std::vector<std::string> f;
  while (reader.next(f)) {
    const std::size_t line = reader.line_number();
    if (f.size() != reader.header().size()) {
      throw Error(ErrorCode::MalformedRecord,
                  fmt::format("line {}: expected {} fields, got {}", line, reader.header().size(), f.size()));
    }
    TweetRecord t;
    try {
      t.timestamp = parse_timestamp(f[c_ts]);
      if (c_label && !f[*c_label].empty()) t.label = parse_label(f[*c_label]);
    } catch (const Error& e) {
      throw Error(ErrorCode::MalformedRecord, fmt::format("line {}: {}", line, e.what()));
    }
    if (c_text && !f[*c_text].empty()) t.text = f[*c_text];
    if (!t.label && !t.text) {
      throw Error(ErrorCode::MalformedRecord, fmt::format("line {}: tweet has neither label nor text", line));
    }
    tweets.push_back(std::move(t));
  }
  return tweets;
}

std::vector<TweetRecord> parse_tweets_jsonl(std::istream& in) {
  std::vector<TweetRecord> tweets;
  std::string line;
  std::size_t n = 0;
  while (std::getline(in, line)) {
    ++n;
    if (line.empty() || line == "\r") continue;
    try {
      const auto j = nlohmann::json::parse(line);
      TweetRecord t;
      t.timestamp = parse_timestamp(j.at("timestamp").get<std::string>());
      if (j.contains("label") && !j["label"].is_null()) t.label = parse_label(j["label"].get<std::string>());
      if (j.contains("text") && !j["text"].is_null()) t.text = j["text"].get<std::string>();
      if (!t.label && !t.text) throw Error(ErrorCode::MalformedRecord, "tweet has neither label nor text");
      tweets.push_back(std::move(t));
    } catch (const nlohmann::json::exception& e) {
      throw Error(ErrorCode::MalformedRecord, fmt::format("line {}: {}", n, e.what()));
    } catch (const Error& e) {
      throw Error(ErrorCode::MalformedRecord, fmt::format("line {}: {}", n, e.what()));
    }
  }
  return tweets;
}

void write_counts(std::ostream& out, std::span<const SessionCounts> counts) {
  out << "date,session,P,N,n,T,S,imputed\n";
  for (const SessionCounts& c : counts) {
    const SentimentIndex idx = sentiment_score(c);
    out << format_date(c.date) << ',' << to_string(c.session) << ',' << c.positive << ',' << c.negative << ','
        << c.neutral << ',' << c.total() << ',' << csv::format_double(idx.score) << ',' << (idx.imputed ? 1 : 0)
        << '\n';
  }
}

std::vector<SessionCounts> read_counts(std::istream& in) {
  csv::Reader reader(in);
  const std::size_t c_date = reader.require_column("date");
  const std::size_t c_session = reader.require_column("session");
  const std::size_t c_p = reader.require_column("P");
  const std::size_t c_n = reader.require_column("N");
  const std::size_t c_neu = reader.require_column("n");
  const std::size_t c_t = reader.require_column("T");
  std::vector<SessionCounts> out;
  std::vector<std::string> f;
  while (reader.next(f)) {
    const std::size_t line = reader.line_number();
    try {
      if (f.size() != reader.header().size()) throw Error(ErrorCode::MalformedRecord, "wrong field count");
      SessionCounts c;
      c.date = parse_date(f[c_date]);
      c.session = parse_session(f[c_session]);
      c.positive = csv::parse_int(f[c_p]);
      c.negative = csv::parse_int(f[c_n]);
      c.neutral = csv::parse_int(f[c_neu]);
      if (c.positive < 0 || c.negative < 0 || c.neutral < 0) {
        throw Error(ErrorCode::MalformedRecord, "negative count");
      }
      if (csv::parse_int(f[c_t]) != c.total()) throw Error(ErrorCode::MalformedRecord, "T != P + N + n");
      out.push_back(c);
    } catch (const Error& e) {
      throw Error(ErrorCode::MalformedRecord, fmt::format("line {}: {}", line, e.what()));
    }
  }
  return out;
}

}  // namespace sentalpha
