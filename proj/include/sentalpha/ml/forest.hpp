#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "sentalpha/ml/matrix.hpp"

namespace sentalpha::ml {

struct TreeNode {
  int feature = -1;  // -1 marks a leaf
  double threshold = 0.0;
  int left = -1;     // x[feature] <= threshold
  int right = -1;
  int label = 1;
};

struct DecisionTree {
  std::vector<TreeNode> nodes;
  // Gini decrease per feature weighted by node share of the tree's samples.
  std::vector<double> impurity_decrease;

  [[nodiscard]] int predict(std::span<const double> x) const;
};

struct ForestParams {
  std::size_t trees = 100;
  // Features tried per split; 0 means floor(sqrt(P)).
  std::size_t max_features = 0;
  bool bootstrap = true;
};

struct ForestModel {
  std::vector<DecisionTree> trees;
  std::vector<double> importances;  // non-negative, sums to 1
  std::size_t features = 0;
};

// Fully grown CART tree on the given sample rows (duplicates allowed).
DecisionTree train_tree(const Matrix& X, std::span<const int> y, std::span<const std::size_t> rows,
                        std::size_t max_features, std::uint64_t seed);

// Tree i uses seed derive_seed(seed, "forest", i) for its bootstrap and feature draws.
ForestModel forest_train(const Matrix& X, std::span<const int> y, const ForestParams& params, std::uint64_t seed);

std::vector<int> forest_predict(const ForestModel& model, const Matrix& X);

inline const std::vector<double>& forest_importances(const ForestModel& model) noexcept { return model.importances; }

}  // namespace sentalpha::ml
