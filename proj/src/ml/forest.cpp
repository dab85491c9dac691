#include "sentalpha/ml/forest.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>
#include <utility>

#include <fmt/format.h>

#include "sentalpha/error.hpp"
#include "sentalpha/ml/bagging.hpp"
#include "sentalpha/ml/rng.hpp"
#include "sentalpha/parallel.hpp"

namespace sentalpha::ml {

namespace {

double gini(double pos, double neg) {
  const double n = pos + neg;
  if (n <= 0.0) return 0.0;
  const double p = pos / n;
  const double q = neg / n;
  return 1.0 - p * p - q * q;
}

struct Split {
  int feature = -1;
  double threshold = 0.0;
  double gain = 0.0;  // n*g - nl*gl - nr*gr
};

std::vector<std::uint64_t> column_keys(const Matrix& X) {
  std::vector<std::uint64_t> keys(X.cols(), 0xcbf29ce484222325ULL);
  for (std::size_t r = 0; r < X.rows(); ++r) {
    for (std::size_t c = 0; c < X.cols(); ++c) keys[c] = (keys[c] ^ std::bit_cast<std::uint64_t>(X(r, c))) * 0x100000001b3ULL;
  }
  return keys;
}

struct Builder {
  const Matrix& X;
  std::span<const int> y;
  std::size_t max_features;
  Rng rng;
  DecisionTree tree;
  double root_size = 0.0;
  std::vector<std::pair<double, int>> scratch;
  std::vector<std::size_t> feature_order;
  std::vector<std::uint64_t> column_key;

  Split best_split(const std::vector<std::size_t>& rows, double pos, double neg) {
    const std::size_t p = X.cols();
    // Feature order keyed on column content, so permuting columns permutes the tree.
    const std::uint64_t salt = rng();
    std::iota(feature_order.begin(), feature_order.end(), 0);
    std::sort(feature_order.begin(), feature_order.end(), [&](std::size_t a, std::size_t b) {
      const std::uint64_t ka = splitmix64(salt ^ column_key[a]);
      const std::uint64_t kb = splitmix64(salt ^ column_key[b]);
      return ka != kb ? ka < kb : a < b;
    });
    const double n = pos + neg;
    const double parent = n * gini(pos, neg);
    Split best;
    std::size_t tried = 0;
    // Constant features do not count toward max_features.
    for (std::size_t k = 0; k < p && tried < max_features; ++k) {
      const std::size_t f = feature_order[k];
      scratch.clear();
      for (std::size_t r : rows) scratch.emplace_back(X(r, f), y[r]);
      std::sort(scratch.begin(), scratch.end());
      if (scratch.front().first == scratch.back().first) continue;
      ++tried;
      double lpos = 0.0;
      double lneg = 0.0;
      for (std::size_t i = 0; i + 1 < scratch.size(); ++i) {
        (scratch[i].second == 1 ? lpos : lneg) += 1.0;
        if (scratch[i].first == scratch[i + 1].first) continue;
        const double nl = lpos + lneg;
        const double gain = parent - nl * gini(lpos, lneg) - (n - nl) * gini(pos - lpos, neg - lneg);
        if (gain > best.gain) {
          best.feature = static_cast<int>(f);
          best.threshold = 0.5 * (scratch[i].first + scratch[i + 1].first);
          if (!(best.threshold < scratch[i + 1].first)) best.threshold = scratch[i].first;
          best.gain = gain;
        }
      }
    }
    return best;
  }

  int grow(std::vector<std::size_t> rows) {
    double pos = 0.0;
    double neg = 0.0;
    for (std::size_t r : rows) (y[r] == 1 ? pos : neg) += 1.0;
    const int id = static_cast<int>(tree.nodes.size());
    tree.nodes.push_back(TreeNode{-1, 0.0, -1, -1, pos >= neg ? 1 : -1});
    if (pos == 0.0 || neg == 0.0 || rows.size() < 2) return id;
    const Split s = best_split(rows, pos, neg);
    if (s.feature < 0) return id;
    tree.impurity_decrease[static_cast<std::size_t>(s.feature)] += s.gain / root_size;
    std::vector<std::size_t> left;
    std::vector<std::size_t> right;
    for (std::size_t r : rows) (X(r, static_cast<std::size_t>(s.feature)) <= s.threshold ? left : right).push_back(r);
    rows.clear();
    rows.shrink_to_fit();
    const int l = grow(std::move(left));
    const int r = grow(std::move(right));
    TreeNode& node = tree.nodes[static_cast<std::size_t>(id)];
    node.feature = s.feature;
    node.threshold = s.threshold;
    node.left = l;
    node.right = r;
    return id;
  }
};

}  // namespace

int DecisionTree::predict(std::span<const double> x) const {
  std::size_t i = 0;
  while (nodes[i].feature >= 0) {
    const TreeNode& n = nodes[i];
    i = static_cast<std::size_t>(x[static_cast<std::size_t>(n.feature)] <= n.threshold ? n.left : n.right);
  }
  return nodes[i].label;
}

DecisionTree train_tree(const Matrix& X, std::span<const int> y, std::span<const std::size_t> rows,
                        std::size_t max_features, std::uint64_t seed) {
  if (rows.empty()) throw Error(ErrorCode::InvalidArgument, "tree needs at least one sample");
  Builder b{X, y, std::clamp<std::size_t>(max_features, 1, X.cols()), Rng{seed}, {}, static_cast<double>(rows.size()),
            {}, std::vector<std::size_t>(X.cols()), column_keys(X)};
  b.tree.impurity_decrease.assign(X.cols(), 0.0);
  b.scratch.reserve(rows.size());
  b.grow(std::vector<std::size_t>(rows.begin(), rows.end()));
  return std::move(b.tree);
}

ForestModel forest_train(const Matrix& X, std::span<const int> y, const ForestParams& params, std::uint64_t seed) {
  if (params.trees < 1) throw Error(ErrorCode::InvalidArgument, "forest needs at least one tree");
  if (X.rows() != y.size()) {
    throw Error(ErrorCode::LengthMismatch, fmt::format("{} rows vs {} labels", X.rows(), y.size()));
  }
  if (X.cols() == 0) throw Error(ErrorCode::InvalidArgument, "forest needs at least one feature");
  bool pos = false;
  bool neg = false;
  for (int v : y) (v == 1 ? pos : neg) = true;
  if (!pos || !neg) throw Error(ErrorCode::SingleClass, "forest training labels contain a single class");

  const std::size_t p = X.cols();
  const std::size_t mtry =
      params.max_features > 0 ? params.max_features
                              : std::max<std::size_t>(1, static_cast<std::size_t>(std::sqrt(static_cast<double>(p))));
  ForestModel model;
  model.features = p;
  model.trees.resize(params.trees);
  parallel_for(params.trees, [&](std::size_t t) {
    const std::uint64_t tree_seed = derive_seed(seed, "forest", t);
    std::vector<std::size_t> rows(X.rows());
    if (params.bootstrap) {
      Rng rng{derive_seed(tree_seed, "rows")};
      for (auto& r : rows) r = uniform_index(rng, X.rows());
    } else {
      std::iota(rows.begin(), rows.end(), 0);
    }
    model.trees[t] = train_tree(X, y, rows, mtry, tree_seed);
  });

  // Per-tree normalized decreases, averaged, renormalized.
  model.importances.assign(p, 0.0);
  for (const auto& tree : model.trees) {
    const double total = std::accumulate(tree.impurity_decrease.begin(), tree.impurity_decrease.end(), 0.0);
    if (total <= 0.0) continue;
    for (std::size_t j = 0; j < p; ++j) model.importances[j] += tree.impurity_decrease[j] / total;
  }
  const double sum = std::accumulate(model.importances.begin(), model.importances.end(), 0.0);
  for (auto& v : model.importances) v = sum > 0.0 ? v / sum : 1.0 / static_cast<double>(p);
  return model;
}

std::vector<int> forest_predict(const ForestModel& model, const Matrix& X) {
  if (X.cols() != model.features) {
    throw Error(ErrorCode::DimensionMismatch,
                fmt::format("forest expects {} features, got {}", model.features, X.cols()));
  }
  std::vector<int> out(X.rows());
  std::vector<int> votes(model.trees.size());
  for (std::size_t r = 0; r < X.rows(); ++r) {
    for (std::size_t t = 0; t < model.trees.size(); ++t) votes[t] = model.trees[t].predict(X.row(r));
    out[r] = majority_vote(votes);
  }
  return out;
}

}  // namespace sentalpha::ml
