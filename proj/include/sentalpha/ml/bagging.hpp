#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "sentalpha/ml/matrix.hpp"
#include "sentalpha/ml/svm.hpp"

namespace sentalpha::ml {

struct EnsembleModel {
  std::vector<SvmModel> members;
  std::vector<std::uint64_t> seeds;  // bootstrap seed per member
};

// n draws with replacement from the rows of `y`. Draws that miss one class are
// repeated from the same stream (the SVM cannot train on a single class).
std::vector<std::size_t> bootstrap_indices(std::span<const int> y, std::uint64_t seed);

// Majority of +1/-1 votes; an even split goes to +1.
int majority_vote(std::span<const int> votes) noexcept;

// L members, member i trained on bootstrap_indices(y, derive_seed(seed, "bootstrap", i)).
EnsembleModel bagging_train(const Matrix& X, std::span<const int> y, std::size_t members, const SvmParams& params,
                            std::uint64_t seed);

std::vector<int> bagging_predict(const EnsembleModel& model, const Matrix& X);

}  // namespace sentalpha::ml
