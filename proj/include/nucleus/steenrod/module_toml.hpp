#pragma once

// TOML module specs:
//   [module]
//   prime = 2
//   generators = [ { name = "g0", degree = 0 } ]
//   relations = [ "Sq1 g0", "Sq2 g0" ]

#include "nucleus/steenrod/module.hpp"

#include <toml.hpp>

#include <sstream>
#include <string>

namespace nucleus {

/// A parse failure with the source position, when toml++ knows it.
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline std::string toml_where(const toml::source_region& r) {
  if (!r.begin) return "";
  std::ostringstream os;
  if (r.path) os << *r.path << ":";
  os << r.begin.line << ":" << r.begin.column << ": ";
  return os.str();
}

inline toml::table parse_toml_file(const std::string& path) {
  try {
    return toml::parse_file(path);
  } catch (const toml::parse_error& e) {
    throw ParseError(toml_where(e.source()) + std::string(e.description()));
  }
}

inline toml::table parse_toml_text(std::string_view text, std::string_view name = "<input>") {
  try {
    return toml::parse(text, name);
  } catch (const toml::parse_error& e) {
    throw ParseError(toml_where(e.source()) + std::string(e.description()));
  }
}

template <class T>
T toml_required(const toml::node_view<const toml::node>& v, const std::string& what) {
  if (auto x = v.value<T>()) return *x;
  throw ParseError(v.node() ? toml_where(v.node()->source()) + what + " has the wrong type" : "missing " + what);
}

/// Reads the [module] table of a parsed document.
inline FPModuleSpec module_spec_from_toml(const toml::table& doc, std::optional<Prime> default_prime = std::nullopt) {
  const auto mod = doc["module"];
  if (!mod.is_table()) throw ParseError("missing [module] table");
  const Prime p = mod["prime"] ? Prime(static_cast<unsigned>(toml_required<std::int64_t>(mod["prime"], "module.prime")))
                  : default_prime ? *default_prime
                                  : throw ParseError("missing module.prime");
  FPModuleSpec spec{p, {}, {}};
  const auto* gens = mod["generators"].as_array();
  if (!gens || gens->empty()) throw ParseError("module.generators must be a non-empty array");
  for (const auto& g : *gens) {
    const auto* t = g.as_table();
    if (!t) throw ParseError(toml_where(g.source()) + "each generator must be a table {name, degree}");
    const toml::node_view<const toml::node> view(t);
    spec.generators.push_back({toml_required<std::string>(view["name"], "generator name"),
                               static_cast<int>(toml_required<std::int64_t>(view["degree"], "generator degree"))});
  }
  const SteenrodAlgebra A(p);
  if (const auto* rels = mod["relations"].as_array()) {
    for (const auto& r : *rels) {
      const auto text = r.value<std::string>();
      if (!text) throw ParseError(toml_where(r.source()) + "relations must be strings");
      try {
        spec.relations.push_back(parse_relation(A, spec.generators, *text));
        relation_degree(A, spec, spec.relations.back());
      } catch (const std::invalid_argument& e) {
        throw ParseError(toml_where(r.source()) + e.what());
      }
    }
  }
  return spec;
}

}  // namespace nucleus
