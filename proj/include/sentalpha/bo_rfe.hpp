#pragma once

#include <cstdint>
#include <istream>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "sentalpha/features.hpp"
#include "sentalpha/ml/matrix.hpp"
#include "sentalpha/ml/pipeline.hpp"

namespace sentalpha {

struct BoRfeConfig {
  std::size_t iterations = 50;  // K
  int gamma_min = 1;
  int gamma_max = 0;            // 0 means the candidate feature count
  int theta_min = 1;
  int theta_max = 100;
  std::size_t train_rows = 222;
  std::size_t test_rows = 30;
  std::size_t initial_points = 5;
  std::uint64_t seed = 0;
  ml::PipelineConfig pipeline;
};

struct Evaluation {
  std::size_t k = 0;  // 1-based iteration
  int gamma = 0;
  int theta = 0;
  double f1 = 0.0;
  std::vector<std::string> features;
};

struct SelectionResult {
  int gamma = 0;
  std::vector<std::string> features;
  int theta = 0;
  double best_f1 = 0.0;
  std::vector<Evaluation> history;

  [[nodiscard]] std::vector<double> f1_history() const;
};

// Recursive feature elimination: retrain a Gini forest of `trees` trees and
// drop the least important column (ties drop the later column) until `target`
// remain. Returns the kept column indices in their original order.
std::vector<std::size_t> rfe(const ml::Matrix& X, std::span<const int> y, std::size_t target, std::size_t trees,
                             std::uint64_t seed);

struct ObjectiveResult {
  double f1 = 0.0;
  std::vector<std::size_t> kept;
};

// F1 of the prediction pipeline trained on the train_rows rows preceding the
// final test_rows rows of `candidate`, restricted to rfe(gamma, theta) of the
// training rows, or to `kept_override` when given.
ObjectiveResult objective(const FeatureMatrix& candidate, int gamma, int theta, const BoRfeConfig& config,
                          std::optional<std::vector<std::size_t>> kept_override = std::nullopt);

// Seed used for one (gamma, theta) evaluation; repeated points reuse it.
std::uint64_t objective_seed(std::uint64_t run_seed, int gamma, int theta) noexcept;

// GP-EI search over the integer (gamma, theta) grid. The best evaluation
// wins; ties go to fewer features, then to the earlier iteration.
SelectionResult bo_rfe_run(const FeatureMatrix& candidate, const BoRfeConfig& config);

// `k,gamma,theta,f1` rows.
void write_history(std::ostream& out, const SelectionResult& result);
nlohmann::json to_json(const SelectionResult& result);
SelectionResult selection_from_json(const nlohmann::json& doc);

}  // namespace sentalpha
