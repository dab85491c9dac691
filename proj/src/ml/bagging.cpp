#include "sentalpha/ml/bagging.hpp"

#include <fmt/format.h>

#include "sentalpha/error.hpp"
#include "sentalpha/ml/rng.hpp"
#include "sentalpha/parallel.hpp"

namespace sentalpha::ml {

std::vector<std::size_t> bootstrap_indices(std::span<const int> y, std::uint64_t seed) {
  const std::size_t n = y.size();
  Rng rng{seed};
  std::vector<std::size_t> idx(n);
  for (int attempt = 0; attempt < 64; ++attempt) {
    bool pos = false;
    bool neg = false;
    for (auto& i : idx) {
      i = uniform_index(rng, n);
      (y[i] == 1 ? pos : neg) = true;
    }
    if (pos && neg) return idx;
  }
  throw Error(ErrorCode::SingleClass, "bootstrap could not draw both classes");
}

int majority_vote(std::span<const int> votes) noexcept {
  long sum = 0;
  for (int v : votes) sum += v;
  return sum >= 0 ? 1 : -1;
}

EnsembleModel bagging_train(const Matrix& X, std::span<const int> y, std::size_t members, const SvmParams& params,
                            std::uint64_t seed) {
  if (members < 1) throw Error(ErrorCode::InvalidArgument, "bagging needs at least one member");
  if (X.rows() != y.size()) {
    throw Error(ErrorCode::LengthMismatch, fmt::format("{} rows vs {} labels", X.rows(), y.size()));
  }
  EnsembleModel model;
  model.members.resize(members);
  model.seeds.resize(members);
  for (std::size_t m = 0; m < members; ++m) model.seeds[m] = derive_seed(seed, "bootstrap", m);
  parallel_for(members, [&](std::size_t m) {
    const auto idx = bootstrap_indices(y, model.seeds[m]);
    std::vector<int> yb(idx.size());
    for (std::size_t i = 0; i < idx.size(); ++i) yb[i] = y[idx[i]];
    model.members[m] = svm_train(X.select_rows(idx), yb, params);
  });
  return model;
}

std::vector<int> bagging_predict(const EnsembleModel& model, const Matrix& X) {
  std::vector<int> out(X.rows());
  std::vector<int> votes(model.members.size());
  for (std::size_t r = 0; r < X.rows(); ++r) {
    for (std::size_t m = 0; m < model.members.size(); ++m) votes[m] = model.members[m].predict(X.row(r));
    out[r] = majority_vote(votes);
  }
  return out;
}

}  // namespace sentalpha::ml
