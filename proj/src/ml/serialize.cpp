#include "sentalpha/ml/serialize.hpp"

#include <fmt/format.h>

#include "sentalpha/error.hpp"

namespace sentalpha::ml {

namespace {

using nlohmann::json;

json svm_body(const SvmModel& m) {
  json sv = json::array();
  for (std::size_t i = 0; i < m.support_vectors.rows(); ++i) {
    const auto r = m.support_vectors.row(i);
    sv.push_back(std::vector<double>(r.begin(), r.end()));
  }
  return json{{"C", m.C},       {"gamma", m.gamma},         {"features", m.features},
              {"bias", m.bias}, {"coef", m.coef},           {"support_vectors", std::move(sv)},
              {"converged", m.converged}, {"kkt_residual", m.kkt_residual}, {"iterations", m.iterations}};
}

SvmModel svm_from_body(const json& j) {
  SvmModel m;
  m.C = j.at("C").get<double>();
  m.gamma = j.at("gamma").get<double>();
  m.features = j.at("features").get<std::size_t>();
  m.bias = j.at("bias").get<double>();
  m.coef = j.at("coef").get<std::vector<double>>();
  m.converged = j.at("converged").get<bool>();
  m.kkt_residual = j.at("kkt_residual").get<double>();
  m.iterations = j.at("iterations").get<std::size_t>();
  m.support_vectors = Matrix(0, m.features);
  for (const auto& row : j.at("support_vectors")) {
    const auto v = row.get<std::vector<double>>();
    if (v.size() != m.features) throw Error(ErrorCode::MalformedRecord, "support vector width mismatch");
    m.support_vectors.append_row(v);
  }
  if (m.support_vectors.rows() != m.coef.size()) {
    throw Error(ErrorCode::MalformedRecord, "coefficient count does not match support vectors");
  }
  return m;
}

void check_header(const json& doc, std::string_view kind) {
  try {
    if (doc.at("format").get<std::string>() != kind) {
      throw Error(ErrorCode::MalformedRecord, fmt::format("expected a {} document", kind));
    }
    if (doc.at("version").get<int>() != kModelFormatVersion) {
      throw Error(ErrorCode::MalformedRecord, fmt::format("unsupported {} version", kind));
    }
  } catch (const json::exception& e) {
    throw Error(ErrorCode::MalformedRecord, e.what());
  }
}

}  // namespace

json to_json(const SvmModel& model) {
  json doc = svm_body(model);
  doc["format"] = "sentalpha.svm";
  doc["version"] = kModelFormatVersion;
  return doc;
}

json to_json(const EnsembleModel& model) {
  json members = json::array();
  for (const auto& m : model.members) members.push_back(svm_body(m));
  return json{{"format", "sentalpha.ensemble"},
              {"version", kModelFormatVersion},
              {"vote", "majority, ties to +1"},
              {"seeds", model.seeds},
              {"members", std::move(members)}};
}

SvmModel svm_from_json(const json& doc) {
  check_header(doc, "sentalpha.svm");
  try {
    return svm_from_body(doc);
  } catch (const json::exception& e) {
    throw Error(ErrorCode::MalformedRecord, e.what());
  }
}

EnsembleModel ensemble_from_json(const json& doc) {
  check_header(doc, "sentalpha.ensemble");
  try {
    EnsembleModel m;
    m.seeds = doc.at("seeds").get<std::vector<std::uint64_t>>();
    for (const auto& body : doc.at("members")) m.members.push_back(svm_from_body(body));
    if (m.seeds.size() != m.members.size()) throw Error(ErrorCode::MalformedRecord, "seed count mismatch");
    return m;
  } catch (const json::exception& e) {
    throw Error(ErrorCode::MalformedRecord, e.what());
  }
}

}  // namespace sentalpha::ml
