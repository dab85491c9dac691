#pragma once

#include <json.hpp>

#include "sentalpha/ml/bagging.hpp"
#include "sentalpha/ml/svm.hpp"

namespace sentalpha::ml {

inline constexpr int kModelFormatVersion = 1;

// Versioned JSON documents. Doubles are written in shortest round-trip form,
// so a reloaded model replays predictions bit for bit.
nlohmann::json to_json(const SvmModel& model);
nlohmann::json to_json(const EnsembleModel& model);

SvmModel svm_from_json(const nlohmann::json& doc);
EnsembleModel ensemble_from_json(const nlohmann::json& doc);

}  // namespace sentalpha::ml
