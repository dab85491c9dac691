#include <iostream>

#include <CLI11.hpp>
#include <fmt/format.h>
#include <json.hpp>

#include "sentalpha/cli.hpp"
#include "sentalpha/error.hpp"
#include "sentalpha/manifest.hpp"
#include "sentalpha/parallel.hpp"

namespace sentalpha::cli {

int run(int argc, char** argv) {
  CLI::App app{"Sentiment-augmented return-sign prediction toolkit"};
  app.set_version_flag("--version", kToolVersion);
  app.require_subcommand(1);
  app.set_config("--config", "", "TOML config file; flags override its values");

  GlobalOptions g;
  std::string out_dir;
  app.add_option("--seed", g.seed, "Run seed")->capture_default_str();
  app.add_option("--threads", g.threads, "Worker thread cap (0 = all cores)")->capture_default_str();
  app.add_option("--out", out_dir, "Output directory");
  app.add_flag("--timestamps", g.timestamps, "Record wall-clock times in the manifest");

  IngestOptions ingest;
  auto* c_ingest = app.add_subcommand("ingest", "Align bars and aggregate labeled tweets");
  c_ingest->add_option("--bars", ingest.bars, "Daily bars CSV")->required()->check(CLI::ExistingFile);
  c_ingest->add_option("--tweets", ingest.tweets, "Labeled tweets (.csv or .jsonl)")->required()->check(CLI::ExistingFile);

  AnalyzeOptions analyze;
  auto* c_analyze = app.add_subcommand("analyze", "Correlation and autocorrelation report");
  c_analyze->add_option("--data", analyze.data, "Ingested dataset directory")->required();
  c_analyze->add_option("--max-lag", analyze.max_lag, "Largest lag in days")->capture_default_str();

  SelectOptions select;
  auto* c_select = app.add_subcommand("select", "BO-RFE feature selection");
  c_select->add_option("--data", select.data, "Ingested dataset directory")->required();
  c_select->add_option("--base", select.base, "Built-in base feature set")
      ->check(CLI::IsMember({"literature", "borfe2", "borfe5"}))
      ->capture_default_str();
  c_select->add_option("--features", select.features, "Explicit base feature names")->delimiter(',');
  c_select->add_option("--bo-iters", select.bo_iters, "BO iterations K")->check(CLI::PositiveNumber)->capture_default_str();
  c_select->add_option("--theta-max", select.theta_max, "Largest forest size")->check(CLI::PositiveNumber)->capture_default_str();
  c_select->add_option("--train-rows", select.train_rows, "Objective training rows")->capture_default_str();
  c_select->add_option("--test-rows", select.test_rows, "Objective test rows")->capture_default_str();
  c_select->add_option("--train-fraction", select.train_fraction, "Train/validation share of the grid")
      ->capture_default_str();

  BacktestOptions backtest;
  std::vector<std::string> custom;
  auto* c_backtest = app.add_subcommand("backtest", "Walk-forward backtest and trading simulation");
  c_backtest->add_option("--data", backtest.data, "Ingested dataset directory")->required();
  c_backtest->add_option("--strategy", backtest.strategies, "Built-in strategies (literature, borfe2, borfe5)")
      ->delimiter(',');
  c_backtest->add_option("--custom", custom, "Custom strategy NAME:W:FEATURE;FEATURE;...");
  c_backtest->add_option("--selection", backtest.selection, "selection.json from the select command");
  c_backtest->add_option("--selection-window", backtest.selection_window, "Window for the selected strategy")
      ->capture_default_str();
  c_backtest->add_option("--windows", backtest.windows, "Window sweep list")->delimiter(',');
  c_backtest->add_option("--train-fraction", backtest.train_fraction, "Train share of the grid")->capture_default_str();
  c_backtest->add_option("--batch-size", backtest.batch_size, "Trading days per F1 batch")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  c_backtest->add_option("--notional", backtest.notional, "Position size per trade")->capture_default_str();
  c_backtest->add_option("--C", backtest.C, "SVM box constraint")->check(CLI::PositiveNumber)->capture_default_str();
  c_backtest->add_option("--members", backtest.members, "Bagged SVMs")->check(CLI::PositiveNumber)->capture_default_str();

  SynthOptions synth;
  auto* c_synth = app.add_subcommand("synth", "Generate a synthetic dataset with planted signal");
  c_synth->add_option("--days", synth.days, "Calendar days")->capture_default_str();
  c_synth->add_option("--signal", synth.signals, "Planted signal NAME=WEIGHT, or 'none'");
  c_synth->add_option("--noise", synth.noise, "Latent noise level")->capture_default_str();
  c_synth->add_option("--neutral", synth.neutral, "Neutral tweet fraction")->capture_default_str();
  c_synth->add_option("--amplitude", synth.amplitude, "Weekly volume seasonality amplitude")->capture_default_str();
  c_synth->add_option("--volume-min", synth.volume_min, "Smallest daily tweet count")->capture_default_str();
  c_synth->add_option("--volume-max", synth.volume_max, "Largest daily tweet count")->capture_default_str();
  c_synth->add_option("--volatility", synth.volatility, "Daily return scale")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUser;
  }

  g.out = out_dir;
  set_max_threads(g.threads);
  try {
    if (*c_ingest) {
      cmd_ingest(ingest, g);
    } else if (*c_analyze) {
      cmd_analyze(analyze, g);
    } else if (*c_select) {
      cmd_select(select, g);
    } else if (*c_backtest) {
      for (const auto& spec : custom) {
        const auto a = spec.find(':');
        const auto b = a == std::string::npos ? a : spec.find(':', a + 1);
        if (b == std::string::npos) {
          throw Error(ErrorCode::InvalidArgument, fmt::format("--custom '{}' is not NAME:W:FEATURES", spec));
        }
        StrategyOption s{spec.substr(0, a), std::stoul(spec.substr(a + 1, b - a - 1)), {}};
        std::string rest = spec.substr(b + 1);
        for (std::size_t p = 0; p <= rest.size();) {
          const std::size_t q = std::min(rest.find(';', p), rest.size());
          if (q > p) s.features.push_back(rest.substr(p, q - p));
          p = q + 1;
        }
        backtest.custom.push_back(std::move(s));
      }
      if (backtest.strategies.empty() && backtest.custom.empty() && !backtest.selection) {
        backtest.strategies = {"literature", "borfe2", "borfe5"};
      }
      cmd_backtest(backtest, g);
    } else if (*c_synth) {
      cmd_synth(synth, g);
    }
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUser;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUser;
  } catch (const std::filesystem::filesystem_error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUser;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return kExitInternal;
  }
  return kExitOk;
}

}  // namespace sentalpha::cli
