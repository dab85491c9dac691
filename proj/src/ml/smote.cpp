#include "sentalpha/ml/smote.hpp"

#include <algorithm>
#include <numeric>

#include <fmt/format.h>

#include "sentalpha/error.hpp"
#include "sentalpha/ml/rng.hpp"

namespace sentalpha::ml {

namespace {

double squared_distance(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double d = a[i] - b[i];
    s += d * d;
  }
  return s;
}

}  // namespace

SmoteResult smote(const Matrix& minority, std::size_t k_neighbors, std::size_t n_synthetic, std::uint64_t seed) {
  const std::size_t m = minority.rows();
  if (m < 2) throw Error(ErrorCode::TooFewMinority, fmt::format("SMOTE needs two minority rows, got {}", m));
  if (k_neighbors < 1) throw Error(ErrorCode::InvalidArgument, "SMOTE needs k >= 1");
  const std::size_t k = std::min(k_neighbors, m - 1);

  std::vector<std::vector<std::size_t>> neighbors(m);
  std::vector<std::size_t> order(m);
  std::vector<double> dist(m);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < m; ++j) dist[j] = squared_distance(minority.row(i), minority.row(j));
    std::iota(order.begin(), order.end(), 0);
    std::erase(order, i);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return dist[a] < dist[b]; });
    neighbors[i].assign(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(k));
    order.resize(m);
  }

  SmoteResult out;
  out.rows = Matrix(n_synthetic, minority.cols());
  out.base.reserve(n_synthetic);
  out.neighbor.reserve(n_synthetic);
  out.u.reserve(n_synthetic);
  Rng rng{seed};
  for (std::size_t s = 0; s < n_synthetic; ++s) {
    const std::size_t b = uniform_index(rng, m);
    const std::size_t nb = neighbors[b][uniform_index(rng, k)];
    const double u = uniform01(rng);
    const auto xb = minority.row(b);
    const auto xn = minority.row(nb);
    auto dst = out.rows.row(s);
    for (std::size_t c = 0; c < dst.size(); ++c) dst[c] = xb[c] + u * (xn[c] - xb[c]);
    out.base.push_back(b);
    out.neighbor.push_back(nb);
    out.u.push_back(u);
  }
  return out;
}

Balanced smote_balance(const Matrix& X, std::span<const int> y, std::size_t k_neighbors, std::uint64_t seed) {
  std::vector<std::size_t> pos;
  std::vector<std::size_t> neg;
  for (std::size_t i = 0; i < y.size(); ++i) (y[i] == 1 ? pos : neg).push_back(i);
  Balanced out{X, std::vector<int>(y.begin(), y.end())};
  if (pos.empty() || neg.empty() || pos.size() == neg.size()) return out;

  const bool pos_minor = pos.size() < neg.size();
  const auto& minor = pos_minor ? pos : neg;
  const int minor_label = pos_minor ? 1 : -1;
  const std::size_t deficit = (pos_minor ? neg.size() : pos.size()) - minor.size();
  const Matrix minority = X.select_rows(minor);
  if (minority.rows() == 1) {
    for (std::size_t s = 0; s < deficit; ++s) {
      out.X.append_row(minority.row(0));
      out.y.push_back(minor_label);
    }
    return out;
  }
  const SmoteResult synth = smote(minority, k_neighbors, deficit, seed);
  for (std::size_t s = 0; s < deficit; ++s) {
    out.X.append_row(synth.rows.row(s));
    out.y.push_back(minor_label);
  }
  return out;
}

}  // namespace sentalpha::ml
