#include "sentalpha/backtest.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include <fmt/format.h>

#include "sentalpha/csv.hpp"
#include "sentalpha/error.hpp"
#include "sentalpha/ml/rng.hpp"
#include "sentalpha/parallel.hpp"

namespace sentalpha {

void StrategyConfig::validate() const {
  if (window < kMinWindow) {
    throw Error(ErrorCode::InvalidArgument, fmt::format("strategy {}: window {} below {}", name, window, kMinWindow));
  }
  if (features.empty()) throw Error(ErrorCode::InvalidArgument, fmt::format("strategy {}: no features", name));
  for (const auto& f : features) f.validate();
}

StrategyConfig builtin_strategy(std::string_view name) {
  StrategyConfig c;
  c.name = std::string(name);
  if (name == "literature") {
    c.features = canonical_set(Strategy::Literature);
    c.window = 240;
  } else if (name == "borfe2") {
    c.features = canonical_set(Strategy::BoRfe2);
    c.window = 40;
  } else if (name == "borfe5") {
    c.features = canonical_set(Strategy::BoRfe5);
    c.window = 210;
  } else {
    throw Error(ErrorCode::InvalidArgument, fmt::format("unknown strategy '{}'", name));
  }
  return c;
}

std::vector<std::string> builtin_strategy_names() { return {"literature", "borfe2", "borfe5"}; }

std::uint64_t day_seed(std::uint64_t strategy_seed, Date d) noexcept {
  return ml::derive_seed(strategy_seed, "day", static_cast<std::uint64_t>(d.time_since_epoch().count()));
}

std::vector<DayRecord> walk_forward(const FeatureMatrix& matrix, DateRange test_span, const StrategyConfig& config) {
  config.validate();
  const std::size_t begin = matrix.lower_bound(test_span.first);
  std::size_t end = begin;
  while (end < matrix.rows() && matrix.dates[end] <= test_span.last) ++end;
  if (begin == end) {
    throw Error(ErrorCode::InsufficientHistory,
                fmt::format("no matrix rows inside {}..{}", format_date(test_span.first), format_date(test_span.last)));
  }
  if (begin < config.window) {
    throw Error(ErrorCode::InsufficientHistory,
                fmt::format("strategy {} needs {} rows before {}, have {}", config.name, config.window,
                            format_date(matrix.dates[begin]), begin));
  }
  const std::size_t w = config.window;
  const bool contiguous = days_between(matrix.dates[begin - w], matrix.dates[end - 1]) ==
                          static_cast<long>(end - 1 - (begin - w));
  if (!contiguous) throw Error(ErrorCode::InsufficientHistory, "matrix rows have calendar holes inside the window");

  std::vector<DayRecord> out(end - begin);
  parallel_for(out.size(), [&](std::size_t i) {
    const std::size_t t = begin + i;
    std::vector<std::size_t> rows(w);
    std::iota(rows.begin(), rows.end(), t - w);
    const ml::Matrix X = matrix.values.select_rows(rows);
    const std::span<const int> y(matrix.labels.data() + (t - w), w);
    const ml::PipelineModel model = ml::fit_pipeline(X, y, config.pipeline, day_seed(config.seed, matrix.dates[t]));
    ml::Matrix row(0, matrix.cols());
    row.append_row(matrix.values.row(t));
    out[i] = DayRecord{matrix.dates[t], matrix.labels[t], model.predict(row).front(), 0.0,
                       static_cast<bool>(matrix.trading_day[t])};
  });
  return out;
}

std::vector<DayRecord> trading_days_only(std::span<const DayRecord> records) {
  std::vector<DayRecord> out;
  for (const auto& r : records) {
    if (r.trading_day) out.push_back(r);
  }
  return out;
}

std::vector<BatchScore> batch_f1(std::span<const DayRecord> trading_records, std::size_t batch_size) {
  if (batch_size < 1) throw Error(ErrorCode::InvalidArgument, "batch size must be at least 1");
  std::vector<BatchScore> out;
  for (std::size_t first = 0; first < trading_records.size(); first += batch_size) {
    const std::size_t size = std::min(batch_size, trading_records.size() - first);
    std::vector<int> t;
    std::vector<int> p;
    for (std::size_t i = first; i < first + size; ++i) {
      t.push_back(trading_records[i].y_true);
      p.push_back(trading_records[i].y_pred);
    }
    out.push_back(BatchScore{first, size, ml::classification_metrics(t, p).f1, size < batch_size});
  }
  return out;
}

PnlSeries trade_sim(std::span<const DayRecord> records, const ReturnSeries& returns, double notional) {
  PnlSeries out;
  double cum = 0.0;
  for (const auto& r : records) {
    double pnl = 0.0;
    if (r.trading_day) {
      const auto ret = returns.at(r.date);
      if (!ret) throw Error(ErrorCode::MissingReturn, fmt::format("no return for {}", format_date(r.date)));
      pnl = notional * *ret * static_cast<double>(r.y_pred);
    }
    cum += pnl;
    out.dates.push_back(r.date);
    out.daily.push_back(pnl);
    out.cumulative.push_back(cum);
  }
  return out;
}

BacktestReport run_backtest(const FeatureMatrix& matrix, DateRange test_span, const StrategyConfig& config,
                            const ReturnSeries& returns, std::size_t batch_size, double notional) {
  BacktestReport report;
  report.strategy = config.name;
  report.window = config.window;
  report.features = feature_names(config.features);
  report.records = walk_forward(matrix, test_span, config);
  for (auto& r : report.records) {
    if (const auto ret = returns.at(r.date)) r.ret = *ret;
  }
  const std::vector<DayRecord> trading = trading_days_only(report.records);
  std::vector<int> t;
  std::vector<int> p;
  for (const auto& r : trading) {
    t.push_back(r.y_true);
    p.push_back(r.y_pred);
  }
  report.metrics = ml::classification_metrics(t, p);
  report.batches = batch_f1(trading, batch_size);
  report.pnl = trade_sim(trading, returns, notional);
  return report;
}

BoxStats box_stats(std::span<const double> values) {
  if (values.empty()) throw Error(ErrorCode::InvalidArgument, "box statistics of an empty list");
  std::vector<double> v(values.begin(), values.end());
  std::sort(v.begin(), v.end());
  const auto q = [&](double p) {
    const double pos = p * static_cast<double>(v.size() - 1);
    const auto lo = static_cast<std::size_t>(std::floor(pos));
    const std::size_t hi = std::min(lo + 1, v.size() - 1);
    return v[lo] + (pos - static_cast<double>(lo)) * (v[hi] - v[lo]);
  };
  return {v.front(), q(0.25), q(0.5), q(0.75), v.back()};
}

Comparison compare_strategies(std::span<const BacktestReport> reports) {
  Comparison out;
  for (const auto& r : reports) {
    const auto& ref = reports.front().records;
    const bool same = r.records.size() == ref.size() &&
                      std::equal(r.records.begin(), r.records.end(), ref.begin(),
                                 [](const DayRecord& a, const DayRecord& b) { return a.date == b.date; });
    if (!same) {
      throw Error(ErrorCode::SpanMismatch,
                  fmt::format("strategy {} covers different test days than {}", r.strategy, reports.front().strategy));
    }
    std::vector<double> f1s;
    for (const auto& b : r.batches) f1s.push_back(b.f1);
    out.strategies.push_back(r.strategy);
    out.metrics.push_back(r.metrics);
    out.batch_box.push_back(f1s.empty() ? BoxStats{} : box_stats(f1s));
    out.final_pnl.push_back(r.final_pnl());
  }
  return out;
}

void write_records(std::ostream& out, const BacktestReport& report) {
  out << "date,y_true,y_pred,return,pnl,cum_pnl\n";
  for (std::size_t i = 0; i < report.pnl.dates.size(); ++i) {
    const Date d = report.pnl.dates[i];
    const auto it = std::find_if(report.records.begin(), report.records.end(),
                                 [&](const DayRecord& r) { return r.date == d; });
    out << format_date(d) << ',' << it->y_true << ',' << it->y_pred << ',' << csv::format_double(it->ret) << ','
        << csv::format_double(report.pnl.daily[i]) << ',' << csv::format_double(report.pnl.cumulative[i]) << '\n';
  }
}

void write_comparison(std::ostream& out, const Comparison& c) {
  out << "strategy,accuracy,precision,recall,f1,final_pnl,batch_min,batch_q1,batch_median,batch_q3,batch_max\n";
  for (std::size_t i = 0; i < c.strategies.size(); ++i) {
    const auto& m = c.metrics[i];
    const auto& b = c.batch_box[i];
    csv::write_row(out, {c.strategies[i], csv::format_double(m.accuracy), csv::format_double(m.precision),
                         csv::format_double(m.recall), csv::format_double(m.f1), csv::format_double(c.final_pnl[i]),
                         csv::format_double(b.min), csv::format_double(b.q1), csv::format_double(b.median),
                         csv::format_double(b.q3), csv::format_double(b.max)});
  }
}

void write_batches(std::ostream& out, std::span<const BacktestReport> reports) {
  out << "strategy,batch,first_date,size,partial,f1\n";
  for (const auto& r : reports) {
    for (std::size_t i = 0; i < r.batches.size(); ++i) {
      const auto& b = r.batches[i];
      csv::write_row(out, {r.strategy, std::to_string(i + 1), format_date(r.pnl.dates[b.first]),
                           std::to_string(b.size), b.partial ? "1" : "0", csv::format_double(b.f1)});
    }
  }
}

nlohmann::json metrics_summary(const BacktestReport& r) {
  nlohmann::json batches = nlohmann::json::array();
  for (const auto& b : r.batches) batches.push_back({{"size", b.size}, {"partial", b.partial}, {"f1", b.f1}});
  const auto& m = r.metrics;
  return {{"strategy", r.strategy},
          {"window", r.window},
          {"features", r.features},
          {"trading_days", m.total()},
          {"confusion", {{"tp", m.tp}, {"fp", m.fp}, {"tn", m.tn}, {"fn", m.fn}}},
          {"accuracy", m.accuracy},
          {"precision", m.precision},
          {"recall", m.recall},
          {"f1", m.f1},
          {"batch_f1", std::move(batches)},
          {"final_pnl", r.final_pnl()}};
}

}  // namespace sentalpha
