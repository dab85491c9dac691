#pragma once

#include <array>
#include <chrono>
#include <istream>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "sentalpha/calendar.hpp"

namespace sentalpha {

enum class SentimentLabel { Positive, Negative, Neutral };

enum class Session { PreMarket, IntraMarket, PostMarket, FullDay };

inline constexpr std::array<Session, 4> kAllSessions{Session::PreMarket, Session::IntraMarket,
                                                     Session::PostMarket, Session::FullDay};

// Case-insensitive positive/negative/neutral.
SentimentLabel parse_label(std::string_view text);
std::string_view to_string(SentimentLabel label) noexcept;

// "pre", "intra", "post", "day".
std::string_view to_string(Session session) noexcept;
Session parse_session(std::string_view text);

// Exchange-local wall-clock time. The UTC offset is kept when the source
// carries one but is never used to shift the wall clock.
struct Timestamp {
  Date date;
  std::chrono::seconds time_of_day{0};
  std::optional<std::chrono::minutes> utc_offset;
};

// Accepts `YYYY-MM-DD[T| ]HH:MM[:SS][Z|±HH:MM]`.
Timestamp parse_timestamp(std::string_view text);
std::string format_timestamp(const Timestamp& ts);

struct TweetRecord {
  Timestamp timestamp;
  std::optional<SentimentLabel> label;
  std::optional<std::string> text;
};

// Seam where a text classifier plugs in.
class SentimentLabeler {
 public:
  virtual ~SentimentLabeler() = default;
  [[nodiscard]] virtual SentimentLabel classify(std::string_view text) const = 0;
};

// Accepts only tweets that already carry a label.
class IdentityLabeler final : public SentimentLabeler {
 public:
  [[nodiscard]] SentimentLabel classify(std::string_view text) const override;
};

std::vector<TweetRecord> label_tweets(std::vector<TweetRecord> tweets, const SentimentLabeler& labeler);

Session bucket_session(const Timestamp& ts) noexcept;

struct SessionCounts {
  Date date;
  Session session = Session::FullDay;
  long long positive = 0;
  long long negative = 0;
  long long neutral = 0;

  [[nodiscard]] long long total() const noexcept { return positive + negative + neutral; }
  friend bool operator==(const SessionCounts&, const SessionCounts&) = default;
};

struct SentimentIndex {
  Date date;
  Session session = Session::FullDay;
  double score = 0.0;
  bool imputed = false;
};

// One entry per (day, session) in span, sessions ordered pre, intra, post, day.
// Every tweet must be labeled and fall inside span.
std::vector<SessionCounts> daily_counts(std::span<const TweetRecord> tweets, DateRange span);

SentimentIndex sentiment_score(const SessionCounts& counts) noexcept;

// `timestamp,label[,text]` with a header row.
std::vector<TweetRecord> parse_tweets_csv(std::istream& in);
// One JSON object per line with keys timestamp, label and/or text.
std::vector<TweetRecord> parse_tweets_jsonl(std::istream& in);

void write_counts(std::ostream& out, std::span<const SessionCounts> counts);
std::vector<SessionCounts> read_counts(std::istream& in);

}  // namespace sentalpha
