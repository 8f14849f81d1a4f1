#include "carnot/group_spec_io.hpp"

#include <json.hpp>

#include <algorithm>
#include <fstream>
#include <sstream>

namespace carnot {

namespace {

using nlohmann::json;

Rational rational_field(const json& j, const std::string& key, const std::string& origin) {
  if (!j.contains(key)) throw SpecError(origin + ": missing field '" + key + "'");
  const auto& v = j.at(key);
  try {
    if (v.is_string()) return parse_rational(v.get<std::string>());
    if (v.is_number_integer()) return Rational(v.get<long>());
  } catch (const std::invalid_argument& e) {
    throw SpecError(origin + ": field '" + key + "': " + e.what());
  }
  throw SpecError(origin + ": field '" + key + "' must be a rational string or integer");
}

}  // namespace

GradedLieAlgebra parse_group_spec(const std::string& json_text, const std::string& origin) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw SpecError(origin + ": JSON parse error: " + e.what());
  }
  if (!doc.is_object()) throw SpecError(origin + ": top level must be an object");
  if (!doc.contains("dim") || !doc.at("dim").is_number_integer()) {
    throw SpecError(origin + ": missing integer field 'dim'");
  }
  const int n = doc.at("dim").get<int>();
  if (n <= 0) throw SpecError(origin + ": 'dim' must be positive");

  std::string name = doc.value("name", origin);

  if (!doc.contains("weights") || !doc.at("weights").is_array() ||
      static_cast<int>(doc.at("weights").size()) != n) {
    throw SpecError(origin + ": 'weights' must be an array of length dim");
  }
  std::vector<Rational> weights;
  for (const auto& w : doc.at("weights")) {
    if (w.is_string()) {
      weights.push_back(parse_rational(w.get<std::string>()));
    } else if (w.is_number_integer()) {
      weights.push_back(Rational(w.get<long>()));
    } else {
      throw SpecError(origin + ": weights must be rational strings or integers");
    }
    if (sgn(weights.back()) <= 0) throw SpecError(origin + ": weights must be positive");
  }
  // Normalize so the smallest weight is 1.
  Rational qmin = weights[0];
  for (const auto& w : weights) qmin = std::min(qmin, w);
  if (qmin != 1) {
    for (auto& w : weights) w /= qmin;
  }

  std::vector<std::string> labels;
  if (doc.contains("basis")) {
    if (!doc.at("basis").is_array() || static_cast<int>(doc.at("basis").size()) != n) {
      throw SpecError(origin + ": 'basis' must be an array of length dim");
    }
    for (const auto& b : doc.at("basis")) labels.push_back(b.get<std::string>());
  }

  GradedLieAlgebra::BracketMap brackets;
  if (doc.contains("brackets")) {
    if (!doc.at("brackets").is_array()) throw SpecError(origin + ": 'brackets' must be an array");
    for (const auto& entry : doc.at("brackets")) {
      if (!entry.is_object()) throw SpecError(origin + ": bracket entries must be objects");
      for (const char* key : {"i", "j", "k"}) {
        if (!entry.contains(key) || !entry.at(key).is_number_integer()) {
          throw SpecError(origin + ": bracket entry missing integer field '" + std::string(key) +
                          "'");
        }
      }
      int i = entry.at("i").get<int>() - 1;
      int j = entry.at("j").get<int>() - 1;
      const int k = entry.at("k").get<int>() - 1;
      if (i < 0 || j < 0 || k < 0 || i >= n || j >= n || k >= n) {
        throw SpecError(origin + ": bracket index out of range (indices are 1-based)");
      }
      if (i == j) throw SpecError(origin + ": bracket with i == j");
      Rational c = rational_field(entry, "c", origin);
      if (i > j) {
        std::swap(i, j);
        c = -c;
      }
      auto& slot = brackets[{i, j}][k];
      if (slot != 0 && slot != c) {
        std::ostringstream msg;
        msg << origin << ": conflicting duplicate bracket entries for (i,j,k) = (" << i + 1 << ","
            << j + 1 << "," << k + 1 << ")";
        throw SpecError(msg.str());
      }
      slot = c;
    }
    // Drop explicit zeros.
    for (auto it = brackets.begin(); it != brackets.end();) {
      for (auto jt = it->second.begin(); jt != it->second.end();) {
        jt = (jt->second == 0) ? it->second.erase(jt) : std::next(jt);
      }
      it = it->second.empty() ? brackets.erase(it) : std::next(it);
    }
  }

  return GradedLieAlgebra(std::move(name), std::move(weights), std::move(brackets),
                          std::move(labels));
}

GradedLieAlgebra load_group_spec(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot read group spec file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_group_spec(buf.str(), path);
}

}  // namespace carnot
