#include "sentalpha/bo_rfe.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <set>

#include <fmt/format.h>

#include "sentalpha/csv.hpp"
#include "sentalpha/error.hpp"
#include "sentalpha/gp.hpp"
#include "sentalpha/ml/forest.hpp"
#include "sentalpha/ml/metrics.hpp"
#include "sentalpha/ml/rng.hpp"

namespace sentalpha {

namespace {

double halton(std::uint64_t index, unsigned base) {
  double f = 1.0;
  double r = 0.0;
  while (index > 0) {
    f /= base;
    r += f * static_cast<double>(index % base);
    index /= base;
  }
  return r;
}

int to_grid(double u, int lo, int hi) {
  const int v = lo + static_cast<int>(std::floor(u * (hi - lo + 1)));
  return std::clamp(v, lo, hi);
}

double to_unit(int v, int lo, int hi) { return hi > lo ? static_cast<double>(v - lo) / (hi - lo) : 0.0; }

}  // namespace

std::vector<double> SelectionResult::f1_history() const {
  std::vector<double> out;
  out.reserve(history.size());
  for (const auto& e : history) out.push_back(e.f1);
  return out;
}

std::vector<std::size_t> rfe(const ml::Matrix& X, std::span<const int> y, std::size_t target, std::size_t trees,
                             std::uint64_t seed) {
  if (target < 1 || target > X.cols()) {
    throw Error(ErrorCode::InvalidArgument, fmt::format("target {} outside 1..{}", target, X.cols()));
  }
  std::vector<std::size_t> kept(X.cols());
  std::iota(kept.begin(), kept.end(), 0);
  for (std::uint64_t round = 0; kept.size() > target; ++round) {
    const ml::ForestModel forest = ml::forest_train(X.select_columns(kept), y, ml::ForestParams{trees},
                                                    ml::derive_seed(seed, "rfe", round));
    std::size_t worst = 0;
    for (std::size_t j = 1; j < kept.size(); ++j) {
      if (forest.importances[j] <= forest.importances[worst]) worst = j;
    }
    kept.erase(kept.begin() + static_cast<std::ptrdiff_t>(worst));
  }
  return kept;
}

std::uint64_t objective_seed(std::uint64_t run_seed, int gamma, int theta) noexcept {
  return ml::derive_seed(ml::derive_seed(run_seed, "objective", static_cast<std::uint64_t>(gamma)), "theta",
                         static_cast<std::uint64_t>(theta));
}

ObjectiveResult objective(const FeatureMatrix& candidate, int gamma, int theta, const BoRfeConfig& config,
                          std::optional<std::vector<std::size_t>> kept_override) {
  const std::size_t need = config.train_rows + config.test_rows;
  if (config.train_rows < 2 || config.test_rows < 1) {
    throw Error(ErrorCode::InvalidArgument, "objective needs train rows >= 2 and test rows >= 1");
  }
  if (candidate.rows() < need) {
    throw Error(ErrorCode::SpanTooShort,
                fmt::format("objective needs {} rows ({} train + {} test), have {}", need, config.train_rows,
                            config.test_rows, candidate.rows()));
  }
  const std::size_t begin = candidate.rows() - need;
  const FeatureMatrix train = candidate.slice_rows(begin, begin + config.train_rows);
  const FeatureMatrix test = candidate.slice_rows(begin + config.train_rows, candidate.rows());
  const std::uint64_t seed = objective_seed(config.seed, gamma, theta);

  ObjectiveResult out;
  if (kept_override) {
    out.kept = std::move(*kept_override);
  } else {
    if (gamma < 1 || static_cast<std::size_t>(gamma) > candidate.cols() || theta < 1) {
      throw Error(ErrorCode::InvalidArgument, fmt::format("invalid (gamma, theta) = ({}, {})", gamma, theta));
    }
    out.kept = rfe(train.values, train.labels, static_cast<std::size_t>(gamma), static_cast<std::size_t>(theta),
                   ml::derive_seed(seed, "rfe"));
  }
  const ml::Matrix Xtr = train.values.select_columns(out.kept);
  const ml::Matrix Xte = test.values.select_columns(out.kept);
  const ml::PipelineModel model = ml::fit_pipeline(Xtr, train.labels, config.pipeline, ml::derive_seed(seed, "pipeline"));
  out.f1 = ml::classification_metrics(test.labels, model.predict(Xte)).f1;
  return out;
}

SelectionResult bo_rfe_run(const FeatureMatrix& candidate, const BoRfeConfig& config) {
  if (config.iterations < 1) throw Error(ErrorCode::InvalidArgument, "BO needs at least one iteration");
  const int p = static_cast<int>(candidate.cols());
  const int gmin = config.gamma_min;
  const int gmax = config.gamma_max > 0 ? config.gamma_max : p;
  const int tmin = config.theta_min;
  const int tmax = config.theta_max;
  if (gmin < 1 || gmax > p || gmin > gmax || tmin < 1 || tmin > tmax) {
    throw Error(ErrorCode::InvalidArgument,
                fmt::format("bad search box gamma {}..{} (P={}), theta {}..{}", gmin, gmax, p, tmin, tmax));
  }
  if (candidate.rows() < config.train_rows + config.test_rows) {
    throw Error(ErrorCode::SpanTooShort, fmt::format("BO-RFE needs {} rows, have {}",
                                                     config.train_rows + config.test_rows, candidate.rows()));
  }

  SelectionResult result;
  std::set<std::pair<int, int>> seen;
  std::vector<bo::Point> xs;
  std::vector<double> ys;
  const auto evaluate = [&](int gamma, int theta) {
    const ObjectiveResult r = objective(candidate, gamma, theta, config);
    std::vector<std::string> names;
    for (std::size_t c : r.kept) names.push_back(candidate.specs[c].name());
    result.history.push_back(Evaluation{result.history.size() + 1, gamma, theta, r.f1, std::move(names)});
    seen.emplace(gamma, theta);
    xs.push_back({to_unit(gamma, gmin, gmax), to_unit(theta, tmin, tmax)});
    ys.push_back(r.f1);
  };

  const auto grid_size = static_cast<std::size_t>(gmax - gmin + 1) * static_cast<std::size_t>(tmax - tmin + 1);
  std::uint64_t halton_index = 1 + ml::derive_seed(config.seed, "halton") % 1024;
  while (result.history.size() < std::min(config.initial_points, config.iterations) && seen.size() < grid_size) {
    const int gamma = to_grid(halton(halton_index, 2), gmin, gmax);
    const int theta = to_grid(halton(halton_index, 3), tmin, tmax);
    ++halton_index;
    if (!seen.contains({gamma, theta})) evaluate(gamma, theta);
  }

  bo::GaussianProcess gp;
  while (result.history.size() < config.iterations && seen.size() < grid_size) {
    gp.fit(xs, ys);
    const double incumbent = *std::max_element(ys.begin(), ys.end());
    double best_ei = -1.0;
    std::pair<int, int> next{0, 0};
    for (int g = gmin; g <= gmax; ++g) {
      for (int t = tmin; t <= tmax; ++t) {
        if (seen.contains({g, t})) continue;
        const auto post = gp.predict({to_unit(g, gmin, gmax), to_unit(t, tmin, tmax)});
        const double ei = bo::expected_improvement(post.mean, std::sqrt(post.variance), incumbent);
        if (ei > best_ei) {
          best_ei = ei;
          next = {g, t};
        }
      }
    }
    evaluate(next.first, next.second);
  }

  const Evaluation* best = &result.history.front();
  for (const auto& e : result.history) {
    if (e.f1 > best->f1 || (e.f1 == best->f1 && e.gamma < best->gamma)) best = &e;
  }
  result.gamma = best->gamma;
  result.theta = best->theta;
  result.features = best->features;
  result.best_f1 = best->f1;
  return result;
}

void write_history(std::ostream& out, const SelectionResult& result) {
  out << "k,gamma,theta,f1\n";
  for (const auto& e : result.history) {
    out << e.k << ',' << e.gamma << ',' << e.theta << ',' << csv::format_double(e.f1) << '\n';
  }
}

nlohmann::json to_json(const SelectionResult& result) {
  nlohmann::json history = nlohmann::json::array();
  for (const auto& e : result.history) {
    history.push_back({{"k", e.k}, {"gamma", e.gamma}, {"theta", e.theta}, {"f1", e.f1}, {"features", e.features}});
  }
  return {{"format", "sentalpha.selection"},
          {"version", 1},
          {"gamma", result.gamma},
          {"theta", result.theta},
          {"best_f1", result.best_f1},
          {"features", result.features},
          {"history", std::move(history)}};
}

SelectionResult selection_from_json(const nlohmann::json& doc) {
  try {
    if (doc.at("format").get<std::string>() != "sentalpha.selection") {
      throw Error(ErrorCode::MalformedRecord, "not a selection document");
    }
    SelectionResult r;
    r.gamma = doc.at("gamma").get<int>();
    r.theta = doc.at("theta").get<int>();
    r.best_f1 = doc.at("best_f1").get<double>();
    r.features = doc.at("features").get<std::vector<std::string>>();
    for (const auto& h : doc.at("history")) {
      r.history.push_back(Evaluation{h.at("k").get<std::size_t>(), h.at("gamma").get<int>(), h.at("theta").get<int>(),
                                     h.at("f1").get<double>(), h.at("features").get<std::vector<std::string>>()});
    }
    if (static_cast<std::size_t>(r.gamma) != r.features.size()) {
      throw Error(ErrorCode::MalformedRecord, "gamma does not match the feature list");
    }
    return r;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::MalformedRecord, e.what());
  }
}

}  // namespace sentalpha
