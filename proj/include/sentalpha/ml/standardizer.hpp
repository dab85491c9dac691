#pragma once

#include <vector>

#include "sentalpha/ml/matrix.hpp"

namespace sentalpha::ml {

// Column means and sample (n-1) standard deviations of a training matrix.
struct Standardizer {
  std::vector<double> means;
  std::vector<double> stds;
};

Standardizer fit_standardizer(const Matrix& train);

// (x - mean) / std per column; zero-variance columns become 0.
Matrix apply_standardizer(const Matrix& m, const Standardizer& params);

}  // namespace sentalpha::ml
