#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "sentalpha/ml/matrix.hpp"

namespace sentalpha::ml {

struct SmoteResult {
  Matrix rows;
  // For synthetic row s: rows[s] = base + u * (neighbor - base), indices into the minority input.
  std::vector<std::size_t> base;
  std::vector<std::size_t> neighbor;
  std::vector<double> u;
};

// Draws n_synthetic points on segments between minority rows and one of their
// k nearest minority neighbours (Euclidean; ties to the lower index).
// k is clamped to rows - 1. Throws TooFewMinority below two rows.
SmoteResult smote(const Matrix& minority, std::size_t k_neighbors, std::size_t n_synthetic, std::uint64_t seed);

struct Balanced {
  Matrix X;
  std::vector<int> y;
};

// Appends exactly enough SMOTE rows to equalize the two classes. A minority of
// one row is replicated instead; a single-class input is returned unchanged.
Balanced smote_balance(const Matrix& X, std::span<const int> y, std::size_t k_neighbors, std::uint64_t seed);

}  // namespace sentalpha::ml
