#pragma once

#include <fstream>
#include <iterator>
#include <sstream>
#include <string>

#include "sentalpha/features.hpp"
#include "sentalpha/market_data.hpp"
#include "sentalpha/synth.hpp"

namespace fixture {

// Wraps a raw design matrix as consecutive calendar days named R[t-1], R[t-2], ...
inline sentalpha::FeatureMatrix matrix_of(const sentalpha::ml::Matrix& X, const std::vector<int>& y,
                                          const std::string& first = "2020-01-01") {
  using namespace sentalpha;
  FeatureMatrix m;
  m.values = X;
  m.labels = y;
  for (std::size_t c = 0; c < X.cols(); ++c) m.specs.push_back({FeatureKind::Return, static_cast<int>(c + 1), {}});
  for (std::size_t r = 0; r < X.rows(); ++r) {
    m.dates.push_back(add_days(parse_date(first), static_cast<long>(r)));
    m.trading_day.push_back(true);
  }
  return m;
}

inline sentalpha::FeatureSources sources_of(const sentalpha::SynthDataset& data) {
  return sentalpha::FeatureSources(sentalpha::align_calendar(data.bars, data.span), data.counts);
}

inline std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

}  // namespace fixture
