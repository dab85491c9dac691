#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <json.hpp>

#include "fixtures.hpp"
#include "sentalpha/cli.hpp"

namespace fs = std::filesystem;

namespace {

struct Run {
  int code = 0;
  std::string err;
};

Run run(std::vector<std::string> args) {
  args.insert(args.begin(), "sentalpha");
  std::vector<char*> argv;
  for (auto& a : args) argv.push_back(a.data());
  std::ostringstream err;
  std::streambuf* old = std::cerr.rdbuf(err.rdbuf());
  const int code = sentalpha::cli::run(static_cast<int>(argv.size()), argv.data());
  std::cerr.rdbuf(old);
  return {code, err.str()};
}

fs::path scratch(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("sentalpha_cli_test") / name;
  fs::remove_all(p);
  fs::create_directories(p.parent_path());
  return p;
}

// Small dataset shared by the tests below.
fs::path dataset() {
  static const fs::path dir = [] {
    const fs::path syn = scratch("syn");
    const fs::path ds = scratch("ds");
    REQUIRE(run({"--seed", "7", "--out", syn.string(), "synth", "--days", "400"}).code == 0);
    REQUIRE(run({"--out", ds.string(), "ingest", "--bars", (syn / "bars.csv").string(), "--tweets",
                 (syn / "tweets.csv").string()})
                .code == 0);
    return ds;
  }();
  return dir;
}

}  // namespace

TEST_CASE("synth validates and reruns identically") {
  CHECK(run({"--out", scratch("bad").string(), "synth", "--days", "59"}).code == 2);
  CHECK(run({"--out", scratch("bad").string(), "synth", "--signal", "Close[t-1]=1"}).code == 2);
  const fs::path a = scratch("s7a");
  const fs::path b = scratch("s7b");
  REQUIRE(run({"--seed", "7", "--out", a.string(), "synth", "--days", "90"}).code == 0);
  REQUIRE(run({"--seed", "7", "--out", b.string(), "synth", "--days", "90"}).code == 0);
  for (const char* f : {"bars.csv", "tweets.csv", "ground_truth.json", "manifest.json"}) {
    CHECK(fixture::slurp((a / f).string()) == fixture::slurp((b / f).string()));
  }
  const auto truth = nlohmann::json::parse(fixture::slurp((a / "ground_truth.json").string()));
  CHECK(truth["neutral_fraction"] == 0.8);
  CHECK(truth["n_days"] == 90);
}

TEST_CASE("ingest reports malformed rows with their line") {
  const fs::path dir = scratch("malformed");
  fs::create_directories(dir);
  std::ofstream(dir / "bars.csv") << "date,open,high,low,close,volume\n2021-01-04,1,2,0.5,1,10\n2021-01-05,1,2,0.5,1,10\n";
  std::ofstream(dir / "tweets.csv") << "timestamp,label\n2021-01-04 10:00,positive\n2021-01-04 11:00,sideways\n";
  const Run r = run({"--out", (dir / "out").string(), "ingest", "--bars", (dir / "bars.csv").string(), "--tweets",
                     (dir / "tweets.csv").string()});
  CHECK(r.code == 2);
  CHECK(r.err.find("line 3") != std::string::npos);
}

TEST_CASE("ingest output is byte-identical on rerun") {
  const fs::path syn = dataset().parent_path() / "syn";
  const fs::path again = scratch("ds_again");
  REQUIRE(run({"--out", again.string(), "ingest", "--bars", (syn / "bars.csv").string(), "--tweets",
               (syn / "tweets.csv").string()})
              .code == 0);
  for (const char* f : {"bars.csv", "sentiment.csv", "manifest.json"}) {
    CHECK(fixture::slurp((dataset() / f).string()) == fixture::slurp((again / f).string()));
  }
}

TEST_CASE("analyze with max lag 0 and with a constant volume column") {
  const fs::path out = scratch("an0");
  REQUIRE(run({"--out", out.string(), "analyze", "--data", dataset().string(), "--max-lag", "0"}).code == 0);
  for (const char* f : {"lag_profile.csv", "acf.csv"}) {
    std::istringstream in(fixture::slurp((out / f).string()));
    std::string line;
    std::getline(in, line);
    std::size_t rows = 0;
    while (std::getline(in, line)) {
      ++rows;
      CHECK(line.find(",0,") != std::string::npos);
    }
    CHECK(rows == 1);
  }
  CHECK(fs::exists(out / "acf.svg"));

  const fs::path flat = scratch("flat");
  fs::create_directories(flat);
  fs::copy_file(dataset() / "sentiment.csv", flat / "sentiment.csv");
  std::istringstream in(fixture::slurp((dataset() / "bars.csv").string()));
  std::ofstream bars(flat / "bars.csv");
  std::string line;
  std::getline(in, line);
  bars << line << '\n';
  while (std::getline(in, line)) {
    std::vector<std::string> f;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) f.push_back(cell);
    if (line.back() == ',') f.emplace_back();
    f[5] = "1000";
    for (std::size_t i = 0; i < f.size(); ++i) bars << (i ? "," : "") << f[i];
    bars << '\n';
  }
  bars.close();
  const fs::path out2 = scratch("an_flat");
  const Run r = run({"--out", out2.string(), "analyze", "--data", flat.string()});
  CHECK(r.code == 0);
  CHECK(r.err.find("ConstantSeries") != std::string::npos);
  CHECK(fixture::slurp((out2 / "pearson.csv").string()).find("N,V,0,\n") != std::string::npos);
}

TEST_CASE("select honours the iteration count and reports row shortfalls") {
  const fs::path out = scratch("sel1");
  REQUIRE(run({"--seed", "3", "--out", out.string(), "select", "--data", dataset().string(), "--bo-iters", "1"}).code ==
          0);
  const auto sel = nlohmann::json::parse(fixture::slurp((out / "selection.json").string()));
  CHECK(sel["history"].size() == 1);
  const Run r = run({"--out", scratch("sel_short").string(), "select", "--data", dataset().string(), "--train-rows",
                     "400"});
  CHECK(r.code == 2);
  CHECK(r.err.find("rows") != std::string::npos);
}

TEST_CASE("backtest resolves built-in windows and splits at 84%") {
  const fs::path out = scratch("bt");
  REQUIRE(run({"--seed", "1", "--out", out.string(), "backtest", "--data", dataset().string(), "--strategy",
               "borfe2,borfe5"})
              .code == 0);
  const auto manifest = nlohmann::json::parse(fixture::slurp((out / "manifest.json").string()));
  CHECK(manifest["config"]["strategies"][1]["window"] == 210);
  CHECK(manifest["config"]["train_fraction"] == 0.84);
  // 400 grid days carry 399 returns; floor(399 * 0.84) = 335.
  CHECK(manifest["config"]["test_first"] == sentalpha::format_date(sentalpha::add_days(
                                                sentalpha::parse_date("2019-01-07"), 336)));
  const Run lit = run({"--out", scratch("bt_long").string(), "backtest", "--data", dataset().string(), "--custom",
                       "long:360:R[t-1];S_pre[t-0]"});
  CHECK(lit.code == 2);
  CHECK(lit.err.find("InsufficientHistory") != std::string::npos);
}
