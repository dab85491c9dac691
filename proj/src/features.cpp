#include "sentalpha/features.hpp"

#include <algorithm>
#include <charconv>
#include <limits>

#include <fmt/format.h>

#include "sentalpha/csv.hpp"
#include "sentalpha/error.hpp"

namespace sentalpha {

namespace {

constexpr std::size_t kNoSlot = std::numeric_limits<std::size_t>::max();

struct KindName {
  FeatureKind kind;
  std::optional<Session> session;
  std::string_view base;
};

constexpr KindName kKindNames[] = {
    {FeatureKind::Return, std::nullopt, "R"},
    {FeatureKind::SentimentIndex, Session::PreMarket, "S_pre"},
    {FeatureKind::SentimentIndex, Session::IntraMarket, "S_intra"},
    {FeatureKind::SentimentIndex, Session::PostMarket, "S_post"},
    {FeatureKind::SentimentIndex, Session::FullDay, "S_day"},
    {FeatureKind::NegativeCount, std::nullopt, "N"},
    {FeatureKind::Open, std::nullopt, "Open"},
    {FeatureKind::Close, std::nullopt, "Close"},
    {FeatureKind::High, std::nullopt, "High"},
    {FeatureKind::Low, std::nullopt, "Low"},
    {FeatureKind::Volume, std::nullopt, "Volume"},
    {FeatureKind::TradeValue, std::nullopt, "TradeValue"},
};

FeatureSpec make(FeatureKind kind, int lag, std::optional<Session> session = std::nullopt) {
  return FeatureSpec{kind, lag, session};
}

}  // namespace

std::string FeatureSpec::name() const {
  for (const KindName& k : kKindNames) {
    if (k.kind == kind && k.session == session) return fmt::format("{}[t-{}]", k.base, lag);
  }
  throw Error(ErrorCode::InvalidArgument, "feature kind/session combination has no canonical name");
}

bool FeatureSpec::is_sentiment() const noexcept {
  return kind == FeatureKind::SentimentIndex || kind == FeatureKind::NegativeCount;
}

void FeatureSpec::validate() const {
  if (kind == FeatureKind::SentimentIndex && !session) {
    throw Error(ErrorCode::InvalidArgument, "sentiment index feature needs a session");
  }
  if (kind != FeatureKind::SentimentIndex && session) {
    throw Error(ErrorCode::InvalidArgument, "only sentiment index features carry a session");
  }
  const bool same_day_ok = kind == FeatureKind::SentimentIndex && session == Session::PreMarket;
  if (lag < (same_day_ok ? 0 : 1)) {
    throw Error(ErrorCode::InvalidArgument,
                fmt::format("lag {} would leak same-day information for {}", lag, name()));
  }
}

FeatureSpec FeatureSpec::parse(std::string_view text) {
  const auto open = text.find('[');
  if (open == std::string_view::npos || text.size() < open + 5 || text.substr(open, 3) != "[t-" ||
      text.back() != ']') {
    throw Error(ErrorCode::InvalidArgument, fmt::format("bad feature name '{}'", text));
  }
  const std::string_view base = text.substr(0, open);
  const std::string_view digits = text.substr(open + 3, text.size() - open - 4);
  int lag = 0;
  const auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), lag);
  if (ec != std::errc{} || ptr != digits.data() + digits.size()) {
    throw Error(ErrorCode::InvalidArgument, fmt::format("bad lag in feature name '{}'", text));
  }
  for (const KindName& k : kKindNames) {
    if (k.base == base) {
      FeatureSpec spec{k.kind, lag, k.session};
      spec.validate();
      return spec;
    }
  }
  throw Error(ErrorCode::InvalidArgument, fmt::format("unknown feature '{}'", text));
}

std::vector<FeatureSpec> parse_feature_list(std::span<const std::string> names) {
  std::vector<FeatureSpec> specs;
  specs.reserve(names.size());
  for (const auto& n : names) specs.push_back(FeatureSpec::parse(n));
  return specs;
}

std::vector<std::string> feature_names(std::span<const FeatureSpec> specs) {
  std::vector<std::string> names;
  names.reserve(specs.size());
  for (const auto& s : specs) names.push_back(s.name());
  return names;
}

std::vector<FeatureSpec> canonical_set(Strategy strategy) {
  switch (strategy) {
    case Strategy::Literature:
      return {make(FeatureKind::Return, 1),
              make(FeatureKind::SentimentIndex, 0, Session::PreMarket),
              make(FeatureKind::SentimentIndex, 1, Session::IntraMarket),
              make(FeatureKind::SentimentIndex, 1, Session::PostMarket),
              make(FeatureKind::Open, 1),
              make(FeatureKind::Close, 1),
              make(FeatureKind::High, 1),
              make(FeatureKind::Low, 1),
              make(FeatureKind::Volume, 1),
              make(FeatureKind::TradeValue, 1)};
    case Strategy::BoRfe2:
      return {make(FeatureKind::Return, 1), make(FeatureKind::SentimentIndex, 0, Session::PreMarket)};
    case Strategy::BoRfe5:
      return {make(FeatureKind::Return, 1),
              make(FeatureKind::SentimentIndex, 0, Session::PreMarket),
              make(FeatureKind::SentimentIndex, 7, Session::IntraMarket),
              make(FeatureKind::SentimentIndex, 7, Session::PostMarket),
              make(FeatureKind::NegativeCount, 7)};
  }
  return {};
}

FeatureSources::FeatureSources(std::vector<DailyBar> aligned_bars, std::vector<SessionCounts> counts)
    : bars_(std::move(aligned_bars)), counts_(std::move(counts)) {
  if (bars_.size() < 2) throw Error(ErrorCode::SpanTooShort, "need at least two aligned bars");
  for (std::size_t i = 1; i < bars_.size(); ++i) {
    if (days_between(bars_[i - 1].date, bars_[i].date) != 1) {
      throw Error(ErrorCode::InvalidArgument,
                  fmt::format("bars are not calendar-aligned at {}", format_date(bars_[i].date)));
    }
  }
  returns_ = compute_returns(bars_);
  const DateRange grid = span();
  slot_.assign(static_cast<std::size_t>(grid.days()) * kAllSessions.size(), kNoSlot);
  for (std::size_t i = 0; i < counts_.size(); ++i) {
    const SessionCounts& c = counts_[i];
    if (!grid.contains(c.date)) continue;
    const auto off = static_cast<std::size_t>(days_between(grid.first, c.date));
    slot_[off * kAllSessions.size() + static_cast<std::size_t>(c.session)] = i;
  }
}

std::optional<double> FeatureSources::value(const FeatureSpec& spec, Date d) const {
  const DateRange grid = span();
  if (!grid.contains(d)) return std::nullopt;
  const auto off = static_cast<std::size_t>(days_between(grid.first, d));
  const DailyBar& bar = bars_[off];
  const auto counts_for = [&](Session s) -> const SessionCounts* {
    const std::size_t i = slot_[off * kAllSessions.size() + static_cast<std::size_t>(s)];
    return i == kNoSlot ? nullptr : &counts_[i];
  };
  switch (spec.kind) {
    case FeatureKind::Return: return returns_.at(d);
    case FeatureKind::SentimentIndex: {
      const SessionCounts* c = counts_for(*spec.session);
      if (!c) return std::nullopt;
      return sentiment_score(*c).score;
    }
    case FeatureKind::NegativeCount: {
      const SessionCounts* c = counts_for(Session::FullDay);
      if (!c) return std::nullopt;
      return static_cast<double>(c->negative);
    }
    case FeatureKind::Open: return bar.open;
    case FeatureKind::Close: return bar.close;
    case FeatureKind::High: return bar.high;
    case FeatureKind::Low: return bar.low;
    case FeatureKind::Volume: return bar.volume;
    case FeatureKind::TradeValue: return bar.trade_value;
  }
  return std::nullopt;
}

bool FeatureSources::is_trading_day(Date d) const {
  const DateRange grid = span();
  if (!grid.contains(d)) return false;
  return !bars_[static_cast<std::size_t>(days_between(grid.first, d))].interpolated;
}

std::size_t FeatureMatrix::lower_bound(Date d) const {
  return static_cast<std::size_t>(std::lower_bound(dates.begin(), dates.end(), d) - dates.begin());
}

FeatureMatrix FeatureMatrix::slice_rows(std::size_t begin, std::size_t end) const {
  FeatureMatrix out;
  out.specs = specs;
  out.values = ml::Matrix(end - begin, specs.size());
  for (std::size_t r = begin; r < end; ++r) {
    out.dates.push_back(dates[r]);
    out.labels.push_back(labels[r]);
    out.trading_day.push_back(trading_day[r]);
    const auto src = values.row(r);
    std::copy(src.begin(), src.end(), out.values.row(r - begin).begin());
  }
  return out;
}

FeatureMatrix FeatureMatrix::select_columns(std::span<const std::size_t> columns) const {
  FeatureMatrix out;
  out.dates = dates;
  out.labels = labels;
  out.trading_day = trading_day;
  for (std::size_t c : columns) out.specs.push_back(specs.at(c));
  out.values = values.select_columns(columns);
  return out;
}

FeatureMatrix build_matrix(const FeatureSources& sources, std::span<const FeatureSpec> specs, DateRange span) {
  for (const auto& s : specs) s.validate();
  FeatureMatrix m;
  m.specs.assign(specs.begin(), specs.end());
  std::vector<double> row(specs.size());
  for (Date t = span.first; t <= span.last; t = add_days(t, 1)) {
    const auto r = sources.returns().at(t);
    if (!r) continue;
    bool complete = true;
    for (std::size_t j = 0; j < specs.size() && complete; ++j) {
      const Date d = add_days(t, -specs[j].lag);
      const auto v = span.contains(d) ? sources.value(specs[j], d) : std::nullopt;
      if (v) {
        row[j] = *v;
      } else {
        complete = false;
      }
    }
    if (!complete) continue;
    m.dates.push_back(t);
    m.values.append_row(row);
    m.labels.push_back(return_sign(*r));
    m.trading_day.push_back(sources.is_trading_day(t));
  }
  if (m.dates.empty()) {
    throw Error(ErrorCode::SpanTooShort,
                fmt::format("no complete feature row in {}..{}", format_date(span.first), format_date(span.last)));
  }
  if (m.values.cols() != specs.size()) m.values = ml::Matrix(m.dates.size(), specs.size());
  return m;
}

std::pair<FeatureMatrix, FeatureMatrix> split(const FeatureMatrix& matrix, double train_fraction) {
  if (!(train_fraction > 0.0 && train_fraction < 1.0)) {
    throw Error(ErrorCode::InvalidArgument, "train fraction must lie in (0, 1)");
  }
  const auto boundary = static_cast<std::size_t>(static_cast<double>(matrix.rows()) * train_fraction);
  if (boundary == 0 || boundary >= matrix.rows()) {
    throw Error(ErrorCode::DegenerateSplit,
                fmt::format("{} rows at fraction {} leaves an empty side", matrix.rows(), train_fraction));
  }
  return {matrix.slice_rows(0, boundary), matrix.slice_rows(boundary, matrix.rows())};
}

void write_matrix(std::ostream& out, const FeatureMatrix& matrix) {
  std::vector<std::string> header{"date"};
  for (const auto& s : matrix.specs) header.push_back(s.name());
  header.emplace_back("label");
  csv::write_row(out, header);
  for (std::size_t r = 0; r < matrix.rows(); ++r) {
    out << format_date(matrix.dates[r]);
    for (double v : matrix.values.row(r)) out << ',' << csv::format_double(v);
    out << ',' << matrix.labels[r] << '\n';
  }
}

}  // namespace sentalpha
