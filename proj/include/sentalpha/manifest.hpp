#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

namespace sentalpha {

inline constexpr const char* kToolVersion = "0.1.0";

std::string sha256_file(const std::filesystem::path& path);

struct RunManifest {
  std::string command;
  nlohmann::json config;
  std::uint64_t seed = 0;
  std::vector<std::filesystem::path> inputs;
  std::vector<std::string> outputs;  // names relative to the output directory
  // Wall-clock start/end; omitted unless requested so reruns stay byte-identical.
  std::optional<std::string> started;
  std::optional<std::string> finished;

  [[nodiscard]] nlohmann::json to_json() const;
};

// Writes manifest.json into `dir`.
void write_manifest(const std::filesystem::path& dir, const RunManifest& manifest);

std::string utc_now();

}  // namespace sentalpha
