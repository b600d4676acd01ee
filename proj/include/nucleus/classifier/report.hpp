#pragma once

// Human and JSON renderings of a classification.

#include "nucleus/classifier/classify.hpp"

#include <json.hpp>

#include <sstream>
#include <string>

namespace nucleus {

inline constexpr const char* classify_schema = "nucleus.classify/1";

struct ClassifyReport {
  std::string model;
  Prime prime{2};
  int hurewicz_dim = 0;
  int max_degree = 0;
  std::vector<Verdict> verdicts;

  friend bool operator==(const ClassifyReport&, const ClassifyReport&) = default;
};

inline ClassifyReport make_report(const SpectrumModel& m, int N, const std::vector<Rule>& order = default_rule_order()) {
  return {m.name, m.prime, m.hurewicz_dim, N, classify(m, N, order)};
}

/// "minimalAtomic: yes [R1: monogenic; cyclic cohomology] degrees 0..38"
inline std::string verdict_line(const Verdict& v) {
  std::string s = to_string(v.property) + ": " + to_string(v.value);
  if (v.value == Value::unknown) return s;
  s += " [" + ModelInconsistency::join(v.provenance) + "]";
  s += " degrees " + std::to_string(v.range.lo) + ".." + std::to_string(v.range.hi);
  return s;
}

inline std::string to_text(const ClassifyReport& r) {
  std::ostringstream os;
  os << "model: " << r.model << " (p = " << r.prime.value() << ", n0 = " << r.hurewicz_dim << ", N = " << r.max_degree
     << ")\n";
  for (const auto& v : r.verdicts) os << "  " << verdict_line(v) << "\n";
  return os.str();
}

inline nlohmann::json to_json(const ClassifyReport& r) {
  nlohmann::json verdicts = nlohmann::json::array();
  for (const auto& v : r.verdicts) {
    verdicts.push_back({{"property", to_string(v.property)},
                        {"value", to_string(v.value)},
                        {"range", {v.range.lo, v.range.hi}},
                        {"provenance", v.provenance}});
  }
  return {{"schema", classify_schema},
          {"model", r.model},
          {"prime", r.prime.value()},
          {"hurewicz_dim", r.hurewicz_dim},
          {"max_degree", r.max_degree},
          {"verdicts", verdicts}};
}

inline ClassifyReport report_from_json(const nlohmann::json& j) {
  if (j.at("schema") != classify_schema) throw std::invalid_argument("unexpected schema " + j.at("schema").dump());
  ClassifyReport r;
  r.model = j.at("model").get<std::string>();
  r.prime = Prime(j.at("prime").get<unsigned>());
  r.hurewicz_dim = j.at("hurewicz_dim").get<int>();
  r.max_degree = j.at("max_degree").get<int>();
  for (const auto& v : j.at("verdicts")) {
    r.verdicts.push_back({parse_property(v.at("property").get<std::string>()),
                          parse_value(v.at("value").get<std::string>()),
                          {v.at("range").at(0).get<int>(), v.at("range").at(1).get<int>()},
                          v.at("provenance").get<std::vector<std::string>>()});
  }
  return r;
}

}  // namespace nucleus
