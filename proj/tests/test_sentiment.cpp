#include <doctest.h>

#include <sstream>

#include "sentalpha/error.hpp"
#include "sentalpha/sentiment.hpp"

using namespace sentalpha;

TEST_CASE("sentiment_score is (P - N) / T") {
  const Date d = parse_date("2021-03-01");
  const SentimentIndex s = sentiment_score({d, Session::FullDay, 30, 10, 60});
  CHECK(s.score == 0.2);
  CHECK_FALSE(s.imputed);
  const SentimentIndex all_neg = sentiment_score({d, Session::PreMarket, 0, 7, 0});
  CHECK(all_neg.score == -1.0);
  const SentimentIndex empty = sentiment_score({d, Session::PreMarket, 0, 0, 0});
  CHECK(empty.score == 0.0);
  CHECK(empty.imputed);
}

TEST_CASE("session buckets split at 09:30 and 16:00") {
  CHECK(bucket_session(parse_timestamp("2021-03-01 09:29:59")) == Session::PreMarket);
  CHECK(bucket_session(parse_timestamp("2021-03-01T09:30")) == Session::IntraMarket);
  CHECK(bucket_session(parse_timestamp("2021-03-01 15:59:59")) == Session::IntraMarket);
  CHECK(bucket_session(parse_timestamp("2021-03-01 16:00:00")) == Session::PostMarket);
  CHECK(bucket_session(parse_timestamp("2021-03-01 00:00:00")) == Session::PreMarket);
}

TEST_CASE("timestamps keep their offset without shifting the clock") {
  const Timestamp ts = parse_timestamp("2021-03-01T10:15:00-05:00");
  CHECK(ts.time_of_day == std::chrono::seconds(10 * 3600 + 15 * 60));
  REQUIRE(ts.utc_offset);
  CHECK(ts.utc_offset->count() == -300);
  CHECK_THROWS_AS(parse_timestamp("2021-03-01 25:00"), Error);
}

TEST_CASE("daily_counts fills every day and session") {
  std::istringstream in(
      "timestamp,label\n"
      "2021-03-01 08:00:00,positive\n"
      "2021-03-01 10:00:00,negative\n"
      "2021-03-01 17:00:00,neutral\n"
      "2021-03-03 12:00:00,Positive\n");
  const auto tweets = parse_tweets_csv(in);
  const auto counts = daily_counts(tweets, {parse_date("2021-03-01"), parse_date("2021-03-03")});
  REQUIRE(counts.size() == 12);
  CHECK(counts[0].session == Session::PreMarket);
  CHECK(counts[0].positive == 1);
  CHECK(counts[1].negative == 1);
  CHECK(counts[2].neutral == 1);
  CHECK(counts[3].session == Session::FullDay);
  CHECK(counts[3].total() == 3);
  CHECK(counts[7].total() == 0);
  CHECK(sentiment_score(counts[7]).imputed);
  CHECK(counts[9].positive == 1);
  for (std::size_t d = 0; d < 3; ++d) {
    long long sum = 0;
    for (std::size_t s = 0; s < 3; ++s) sum += counts[d * 4 + s].total();
    CHECK(sum == counts[d * 4 + 3].total());
  }
  CHECK_THROWS_AS(daily_counts(tweets, {parse_date("2021-03-02"), parse_date("2021-03-03")}), Error);
}

TEST_CASE("malformed tweet rows report their line") {
  std::istringstream in("timestamp,label\n2021-03-01 08:00:00,positive\n2021-03-01 08:00:00,maybe\n");
  try {
    parse_tweets_csv(in);
    FAIL("expected error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::MalformedRecord);
    CHECK(std::string(e.what()).find("line 3") != std::string::npos);
  }
}

TEST_CASE("jsonl tweets and unlabeled text") {
  std::istringstream in(
      "{\"timestamp\": \"2021-03-01 08:00\", \"label\": \"negative\"}\n"
      "{\"timestamp\": \"2021-03-01 09:00\", \"text\": \"to the moon\"}\n");
  auto tweets = parse_tweets_jsonl(in);
  REQUIRE(tweets.size() == 2);
  CHECK(tweets[0].label == SentimentLabel::Negative);
  CHECK_FALSE(tweets[1].label);
  CHECK_THROWS_AS(label_tweets(tweets, IdentityLabeler{}), Error);
}

TEST_CASE("counts round trip") {
  const Date d = parse_date("2021-03-01");
  const std::vector<SessionCounts> counts{{d, Session::PreMarket, 1, 2, 3},
                                          {d, Session::IntraMarket, 0, 0, 0},
                                          {d, Session::PostMarket, 4, 0, 1},
                                          {d, Session::FullDay, 5, 2, 4}};
  std::ostringstream out;
  write_counts(out, counts);
  std::istringstream in(out.str());
  CHECK(read_counts(in) == counts);
  std::istringstream bad("date,session,P,N,n,T,S,imputed\n2021-03-01,pre,1,1,1,4,0,0\n");
  CHECK_THROWS_AS(read_counts(bad), Error);
}
