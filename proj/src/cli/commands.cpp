#include <algorithm>
#include <cmath>
#include <fstream>
#include <iostream>
#include <map>

#include <fmt/format.h>
#include <json.hpp>

#include "sentalpha/backtest.hpp"
#include "sentalpha/bo_rfe.hpp"
#include "sentalpha/cli.hpp"
#include "sentalpha/correlation.hpp"
#include "sentalpha/csv.hpp"
#include "sentalpha/error.hpp"
#include "sentalpha/manifest.hpp"
#include "sentalpha/market_data.hpp"
#include "sentalpha/ml/rng.hpp"
#include "sentalpha/plot.hpp"
#include "sentalpha/sentiment.hpp"
#include "sentalpha/synth.hpp"

namespace sentalpha::cli {

namespace {

std::ifstream open_in(const fs::path& p) {
  std::ifstream in(p);
  if (!in) throw Error(ErrorCode::Io, fmt::format("cannot open {}", p.string()));
  return in;
}

class OutputDir {
 public:
  OutputDir(const GlobalOptions& g, std::string command, nlohmann::json config)
      : dir_(g.out), timestamps_(g.timestamps) {
    if (dir_.empty()) throw Error(ErrorCode::InvalidArgument, "--out is required");
    fs::create_directories(dir_);
    manifest_.command = std::move(command);
    manifest_.config = std::move(config);
    manifest_.seed = g.seed;
    if (timestamps_) manifest_.started = utc_now();
  }

  std::ofstream open(const std::string& name) {
    fs::create_directories((dir_ / name).parent_path());
    std::ofstream out(dir_ / name);
    if (!out) throw Error(ErrorCode::Io, fmt::format("cannot write {}", (dir_ / name).string()));
    manifest_.outputs.push_back(name);
    return out;
  }
  void write(const std::string& name, const std::string& content) { open(name) << content; }
  void input(const fs::path& p) { manifest_.inputs.push_back(p); }

  void finish() {
    if (timestamps_) manifest_.finished = utc_now();
    std::sort(manifest_.outputs.begin(), manifest_.outputs.end());
    write_manifest(dir_, manifest_);
  }

 private:
  fs::path dir_;
  bool timestamps_;
  RunManifest manifest_;
};

}  // namespace

FeatureSources load_dataset(const fs::path& dir) {
  const fs::path bars_path = dir / "bars.csv";
  const fs::path counts_path = dir / "sentiment.csv";
  if (!fs::exists(bars_path) || !fs::exists(counts_path)) {
    throw Error(ErrorCode::Io, fmt::format("{} is not an ingested dataset (needs bars.csv and sentiment.csv)",
                                           dir.string()));
  }
  auto bars_in = open_in(bars_path);
  auto counts_in = open_in(counts_path);
  return FeatureSources(read_aligned_bars(bars_in), read_counts(counts_in));
}

DateRange test_span(const FeatureSources& sources, double train_fraction) {
  if (!(train_fraction > 0.0 && train_fraction < 1.0)) {
    throw Error(ErrorCode::InvalidArgument, "train fraction must lie in (0, 1)");
  }
  const auto& dates = sources.returns().dates;
  const auto boundary = static_cast<std::size_t>(std::floor(static_cast<double>(dates.size()) * train_fraction));
  if (boundary == 0 || boundary >= dates.size()) {
    throw Error(ErrorCode::DegenerateSplit, fmt::format("split of {} days at {} leaves an empty side", dates.size(),
                                                        train_fraction));
  }
  return {dates[boundary], dates.back()};
}

void cmd_ingest(const IngestOptions& o, const GlobalOptions& g) {
  auto bars_in = open_in(o.bars);
  const std::vector<DailyBar> raw = parse_bars(bars_in);
  if (raw.empty()) throw Error(ErrorCode::SpanTooShort, "no bars in input");
  const DateRange span{raw.front().date, raw.back().date};
  const std::vector<DailyBar> aligned = align_calendar(raw, span);
  const ReturnSeries returns = compute_returns(aligned);

  auto tweets_in = open_in(o.tweets);
  std::vector<TweetRecord> tweets =
      o.tweets.extension() == ".jsonl" ? parse_tweets_jsonl(tweets_in) : parse_tweets_csv(tweets_in);
  tweets = label_tweets(std::move(tweets), IdentityLabeler{});
  const auto outside = std::erase_if(tweets, [&](const TweetRecord& t) { return !span.contains(t.timestamp.date); });
  if (outside > 0) std::cerr << fmt::format("note: dropped {} tweets outside the bar span\n", outside);
  const std::vector<SessionCounts> counts = daily_counts(tweets, span);

  OutputDir out(g, "ingest",
                {{"bars", o.bars.filename().string()},
                 {"tweets", o.tweets.filename().string()},
                 {"first_date", format_date(span.first)},
                 {"last_date", format_date(span.last)},
                 {"tweets_outside_span", outside}});
  out.input(o.bars);
  out.input(o.tweets);
  auto bars_out = out.open("bars.csv");
  write_aligned_bars(bars_out, aligned, returns);
  bars_out.close();
  auto counts_out = out.open("sentiment.csv");
  write_counts(counts_out, counts);
  counts_out.close();
  out.finish();
}

void cmd_analyze(const AnalyzeOptions& o, const GlobalOptions& g) {
  const FeatureSources sources = load_dataset(o.data);
  const std::vector<Date>& dates = sources.returns().dates;
  const std::vector<double>& ret = sources.returns().returns;
  std::vector<double> volume;
  std::vector<double> pos, neg, neu, tot;
  const auto grid_first = sources.span().first;
  std::map<Date, const SessionCounts*> day_counts;
  for (const auto& c : sources.counts()) {
    if (c.session == Session::FullDay) day_counts[c.date] = &c;
  }
  for (Date d : dates) {
    volume.push_back(sources.bars()[static_cast<std::size_t>(days_between(grid_first, d))].volume);
    const auto it = day_counts.find(d);
    const SessionCounts c = it == day_counts.end() ? SessionCounts{d} : *it->second;
    pos.push_back(static_cast<double>(c.positive));
    neg.push_back(static_cast<double>(c.negative));
    neu.push_back(static_cast<double>(c.neutral));
    tot.push_back(static_cast<double>(c.total()));
  }

  CorrelationReport report;
  const std::vector<std::pair<std::string, const std::vector<double>*>> count_series{
      {"P", &pos}, {"N", &neg}, {"n", &neu}, {"T", &tot}};
  for (const auto& [name, series] : count_series) {
    report.pairs.push_back(try_pearson(name, "R", *series, ret));
    report.pairs.push_back(try_pearson(name, "V", *series, volume));
  }
  for (const auto& e : report.pairs) {
    if (!e.r) std::cerr << fmt::format("ConstantSeries: correlation {} vs {} undefined\n", e.series_a, e.series_b);
  }
  const std::size_t max_lag = std::min(o.max_lag, dates.size() - 2);
  try {
    const auto lags = lagged_correlation(neg, ret, max_lag);
    for (std::size_t l = 0; l < lags.size(); ++l) report.lag_profile.push_back({"N", "R", l, lags[l]});
  } catch (const Error& e) {
    if (e.code() != ErrorCode::ConstantSeries) throw;
    std::cerr << e.what() << '\n';
    for (std::size_t l = 0; l <= max_lag; ++l) report.lag_profile.push_back({"N", "R", l, std::nullopt});
  }
  try {
    const auto a = acf(neg, max_lag);
    for (std::size_t l = 0; l < a.size(); ++l) report.acf.push_back({"N", "N", l, a[l]});
  } catch (const Error& e) {
    if (e.code() != ErrorCode::ConstantSeries) throw;
    std::cerr << e.what() << '\n';
    for (std::size_t l = 0; l <= max_lag; ++l) report.acf.push_back({"N", "N", l, std::nullopt});
  }

  OutputDir out(g, "analyze", {{"data", o.data.filename().string()}, {"max_lag", o.max_lag}});
  out.input(o.data / "bars.csv");
  out.input(o.data / "sentiment.csv");
  auto t1 = out.open("pearson.csv");
  write_table(t1, report.pairs);
  auto t2 = out.open("lag_profile.csv");
  write_table(t2, report.lag_profile);
  auto t3 = out.open("acf.csv");
  write_table(t3, report.acf);

  const auto nan = std::nan("");
  std::vector<std::string> pair_labels;
  std::vector<double> pair_values;
  for (const auto& e : report.pairs) {
    pair_labels.push_back(e.series_a + "~" + e.series_b);
    pair_values.push_back(e.r.value_or(nan));
  }
  out.write("pearson.svg", plot::bar_chart({"Count correlations", "pair", "Pearson r"}, pair_labels, pair_values));
  plot::Series lag_series{"N vs R", {}, {}};
  for (const auto& e : report.lag_profile) {
    lag_series.x.push_back(static_cast<double>(e.lag));
    lag_series.y.push_back(e.r.value_or(nan));
  }
  out.write("lag_profile.svg", plot::line_chart({"Lagged correlation", "lag [days]", "r"}, {lag_series}));
  std::vector<std::string> acf_labels;
  std::vector<double> acf_values;
  for (const auto& e : report.acf) {
    acf_labels.push_back(std::to_string(e.lag));
    acf_values.push_back(e.r.value_or(nan));
  }
  out.write("acf.svg", plot::bar_chart({"Negative count ACF", "lag [days]", "acf"}, acf_labels, acf_values));
  out.finish();
}

void cmd_select(const SelectOptions& o, const GlobalOptions& g) {
  const FeatureSources sources = load_dataset(o.data);
  std::vector<FeatureSpec> specs;
  if (!o.features.empty()) {
    specs = parse_feature_list(o.features);
  } else {
    specs = builtin_strategy(o.base).features;
  }
  const DateRange test = test_span(sources, o.train_fraction);
  const FeatureMatrix full = build_matrix(sources, specs, sources.span());
  const FeatureMatrix candidate = full.slice_rows(0, full.lower_bound(test.first));

  BoRfeConfig config;
  config.iterations = o.bo_iters;
  config.theta_max = o.theta_max;
  config.train_rows = o.train_rows;
  config.test_rows = o.test_rows;
  config.seed = g.seed;
  const SelectionResult result = bo_rfe_run(candidate, config);

  OutputDir out(g, "select",
                {{"data", o.data.filename().string()},
                 {"base", o.features.empty() ? o.base : "custom"},
                 {"features", feature_names(specs)},
                 {"bo_iters", o.bo_iters},
                 {"theta_range", {config.theta_min, config.theta_max}},
                 {"gamma_range", {config.gamma_min, static_cast<int>(specs.size())}},
                 {"train_rows", o.train_rows},
                 {"test_rows", o.test_rows},
                 {"train_fraction", o.train_fraction},
                 {"candidate_rows", candidate.rows()}});
  out.input(o.data / "bars.csv");
  out.input(o.data / "sentiment.csv");
  auto hist = out.open("selection.csv");
  write_history(hist, result);
  out.write("selection.json", to_json(result).dump(2) + "\n");
  plot::Series f1{"F1", {}, {}};
  plot::Series best{"running max", {}, {}};
  double running = -1.0;
  for (const auto& e : result.history) {
    running = std::max(running, e.f1);
    f1.x.push_back(static_cast<double>(e.k));
    f1.y.push_back(e.f1);
    best.x.push_back(static_cast<double>(e.k));
    best.y.push_back(running);
  }
  out.write("f1_trace.svg", plot::line_chart({"BO-RFE objective", "iteration k", "F1"}, {f1, best}));
  out.finish();
}

void cmd_backtest(const BacktestOptions& o, const GlobalOptions& g) {
  const FeatureSources sources = load_dataset(o.data);
  const DateRange test = test_span(sources, o.train_fraction);

  std::vector<StrategyConfig> configs;
  for (const auto& name : o.strategies) configs.push_back(builtin_strategy(name));
  for (const auto& c : o.custom) {
    StrategyConfig s;
    s.name = c.name;
    s.window = c.window;
    s.features = parse_feature_list(c.features);
    configs.push_back(std::move(s));
  }
  if (o.selection) {
    auto in = open_in(*o.selection);
    nlohmann::json doc;
    try {
      doc = nlohmann::json::parse(in);
    } catch (const nlohmann::json::exception& e) {
      throw Error(ErrorCode::MalformedRecord, fmt::format("{}: {}", o.selection->string(), e.what()));
    }
    const SelectionResult sel = selection_from_json(doc);
    StrategyConfig s;
    s.name = "selected";
    s.window = o.selection_window;
    s.features = parse_feature_list(sel.features);
    configs.push_back(std::move(s));
  }
  if (configs.empty()) throw Error(ErrorCode::InvalidArgument, "no strategies to run");
  for (auto& c : configs) {
    c.pipeline.C = o.C;
    c.pipeline.members = o.members;
    c.seed = ml::derive_seed(g.seed, c.name);
    c.validate();
  }

  nlohmann::json cfg_strategies = nlohmann::json::array();
  for (const auto& c : configs) {
    cfg_strategies.push_back({{"name", c.name}, {"window", c.window}, {"features", feature_names(c.features)}});
  }
  OutputDir out(g, "backtest",
                {{"data", o.data.filename().string()},
                 {"strategies", cfg_strategies},
                 {"windows", o.windows},
                 {"train_fraction", o.train_fraction},
                 {"test_first", format_date(test.first)},
                 {"test_last", format_date(test.last)},
                 {"batch_size", o.batch_size},
                 {"notional", o.notional},
                 {"C", o.C},
                 {"members", o.members}});
  out.input(o.data / "bars.csv");
  out.input(o.data / "sentiment.csv");
  if (o.selection) out.input(*o.selection);

  std::vector<BacktestReport> reports;
  for (const auto& c : configs) {
    const FeatureMatrix m = build_matrix(sources, c.features, sources.span());
    reports.push_back(run_backtest(m, test, c, sources.returns(), o.batch_size, o.notional));
    const auto& r = reports.back();
    auto rec = out.open(c.name + "/records.csv");
    write_records(rec, r);
    out.write(c.name + "/metrics.json", metrics_summary(r).dump(2) + "\n");
  }
  const Comparison cmp = compare_strategies(reports);
  auto cmp_out = out.open("comparison.csv");
  write_comparison(cmp_out, cmp);
  auto batch_out = out.open("batches.csv");
  write_batches(batch_out, reports);

  auto pnl_out = out.open("pnl.csv");
  pnl_out << "date";
  for (const auto& r : reports) pnl_out << ',' << csv::quote(r.strategy);
  pnl_out << '\n';
  const auto& dates = reports.front().pnl.dates;
  for (std::size_t i = 0; i < dates.size(); ++i) {
    pnl_out << format_date(dates[i]);
    for (const auto& r : reports) pnl_out << ',' << csv::format_double(r.pnl.cumulative[i]);
    pnl_out << '\n';
  }
  std::vector<plot::Series> curves;
  for (const auto& r : reports) {
    plot::Series s{r.strategy, {}, r.pnl.cumulative};
    for (std::size_t i = 0; i < r.pnl.cumulative.size(); ++i) s.x.push_back(static_cast<double>(i + 1));
    curves.push_back(std::move(s));
  }
  out.write("pnl.svg", plot::line_chart({"Cumulative P&L", "test trading day", "P&L"}, curves));
  out.write("batch_f1.svg", plot::box_chart({"Batch F1", "strategy", "F1"}, cmp.strategies, cmp.batch_box));

  if (!o.windows.empty()) {
    auto sweep = out.open("sweep.csv");
    sweep << "strategy,window,accuracy,f1,final_pnl\n";
    for (auto c : configs) {
      const FeatureMatrix m = build_matrix(sources, c.features, sources.span());
      for (std::size_t w : o.windows) {
        c.window = w;
        const BacktestReport r = run_backtest(m, test, c, sources.returns(), o.batch_size, o.notional);
        csv::write_row(sweep, {c.name, std::to_string(w), csv::format_double(r.metrics.accuracy),
                               csv::format_double(r.metrics.f1), csv::format_double(r.final_pnl())});
      }
    }
  }
  out.finish();
}

void cmd_synth(const SynthOptions& o, const GlobalOptions& g) {
  SynthConfig config;
  config.seed = g.seed;
  config.n_days = o.days;
  config.noise = o.noise;
  config.neutral_fraction = o.neutral;
  config.weekly_amplitude = o.amplitude;
  config.volume_min = o.volume_min;
  config.volume_max = o.volume_max;
  config.volatility = o.volatility;
  if (o.signals.empty()) {
    config.signals = default_signals();
  } else if (!(o.signals.size() == 1 && o.signals.front() == "none")) {
    for (const auto& s : o.signals) {
      const auto eq = s.find('=');
      if (eq == std::string::npos) throw Error(ErrorCode::InvalidArgument, fmt::format("--signal '{}' is not NAME=WEIGHT", s));
      config.signals.push_back({FeatureSpec::parse(s.substr(0, eq)), csv::parse_double(s.substr(eq + 1))});
    }
  }
  const SynthDataset data = generate(config);
  OutputDir out(g, "synth", ground_truth(config, data));
  auto bars = out.open("bars.csv");
  write_bars(bars, data);
  auto tweets = out.open("tweets.csv");
  write_tweets(tweets, data, g.seed);
  out.write("ground_truth.json", ground_truth(config, data).dump(2) + "\n");
  bars.close();
  tweets.close();
  out.finish();
}

}  // namespace sentalpha::cli
