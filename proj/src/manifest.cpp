#include "sentalpha/manifest.hpp"

#include <array>
#include <chrono>
#include <fstream>

#include <fmt/format.h>
#include <openssl/evp.h>

#include "sentalpha/error.hpp"

namespace sentalpha {

std::string sha256_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::Io, fmt::format("cannot read {}", path.string()));
  EVP_MD_CTX* ctx = EVP_MD_CTX_new();
  EVP_DigestInit_ex(ctx, EVP_sha256(), nullptr);
  std::array<char, 1 << 16> buf{};
  while (in) {
    in.read(buf.data(), buf.size());
    EVP_DigestUpdate(ctx, buf.data(), static_cast<std::size_t>(in.gcount()));
  }
  std::array<unsigned char, EVP_MAX_MD_SIZE> md{};
  unsigned len = 0;
  EVP_DigestFinal_ex(ctx, md.data(), &len);
  EVP_MD_CTX_free(ctx);
  std::string hex;
  for (unsigned i = 0; i < len; ++i) hex += fmt::format("{:02x}", md[i]);
  return hex;
}

nlohmann::json RunManifest::to_json() const {
  nlohmann::json in = nlohmann::json::array();
  for (const auto& p : inputs) in.push_back({{"file", p.filename().string()}, {"sha256", sha256_file(p)}});
  nlohmann::json j{{"tool", "sentalpha"},     {"version", kToolVersion}, {"command", command}, {"seed", seed},
                   {"config", config},        {"inputs", std::move(in)}, {"outputs", outputs}};
  if (started) j["started"] = *started;
  if (finished) j["finished"] = *finished;
  return j;
}

void write_manifest(const std::filesystem::path& dir, const RunManifest& manifest) {
  std::ofstream out(dir / "manifest.json");
  if (!out) throw Error(ErrorCode::Io, fmt::format("cannot write {}", (dir / "manifest.json").string()));
  out << manifest.to_json().dump(2) << '\n';
}

std::string utc_now() {
  const auto now = std::chrono::floor<std::chrono::seconds>(std::chrono::system_clock::now());
  const auto day = std::chrono::floor<std::chrono::days>(now);
  const std::chrono::year_month_day ymd{day};
  const std::chrono::hh_mm_ss hms{now - day};
  return fmt::format("{:04}-{:02}-{:02}T{:02}:{:02}:{:02}Z", static_cast<int>(ymd.year()),
                     static_cast<unsigned>(ymd.month()), static_cast<unsigned>(ymd.day()), hms.hours().count(),
                     hms.minutes().count(), hms.seconds().count());
}

}  // namespace sentalpha
