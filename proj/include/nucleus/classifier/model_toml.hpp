#pragma once

// TOML spectrum models:
//
//   [spectrum]   name, prime, hurewicz_dim, note
//   [homology]   known_through, bounded, degrees = { "3" = ["Z/4"] },
//                periodic = [ { start, step, summand } ]
//   [cohomology] one of quotient = "A(1)" | "E(inf)" | "A", projective = "RP",
//                thom = "CP", file = "m.toml", module = { generators, relations };
//                optional shift
//   [hurewicz]   family = "CP" (r for W), degrees = { "3" = "nonzero-mod-p", "4" = 2 }
//   [homotopy]   vanishes_above
//   [chain]      file = "c.json"
//   [[skeletal.attaching]] degree, generators, relations, attaching
//   [[skeletal.hurewicz]]  degree, generators, relations, h

#include "nucleus/chain_json.hpp"
#include "nucleus/classifier/model.hpp"
#include "nucleus/steenrod/module_toml.hpp"

#include <filesystem>
#include <fstream>

namespace nucleus {

namespace detail {

using View = toml::node_view<const toml::node>;

inline std::string where(const View& v) { return v.node() ? toml_where(v.node()->source()) : ""; }

inline int toml_int(const View& v, const std::string& what) {
  return static_cast<int>(toml_required<std::int64_t>(v, what));
}

inline int degree_from_key(const toml::key& k) {
  try {
    return degree_key(std::string(k.str()));
  } catch (const std::exception&) {
    throw ParseError(toml_where(k.source()) + "degree keys must be integers, got '" + std::string(k.str()) + "'");
  }
}

inline LocalScalar toml_scalar(Prime p, const toml::node& n) {
  if (auto i = n.value<std::int64_t>()) return LocalScalar(p, BigInt(*i));
  if (auto s = n.value<std::string>()) {
    try {
      return LocalScalar::parse(p, *s);
    } catch (const std::exception& e) {
      throw ParseError(toml_where(n.source()) + e.what());
    }
  }
  throw ParseError(toml_where(n.source()) + "matrix entries must be integers or strings like \"1/3\"");
}

/// Row-major array of arrays; `rows` fixes the height so empty matrices keep their shape.
inline LocalMatrix toml_matrix(Prime p, const View& v, std::size_t rows, const std::string& what) {
  if (!v) return LocalMatrix(p, rows, 0);
  const auto* a = v.as_array();
  if (!a) throw ParseError(where(v) + what + " must be an array of rows");
  if (a->size() != rows) {
    throw ParseError(where(v) + what + " has " + std::to_string(a->size()) + " rows, expected " + std::to_string(rows));
  }
  std::size_t cols = 0;
  for (std::size_t i = 0; i < a->size(); ++i) {
    const auto* row = (*a)[i].as_array();
    if (!row) throw ParseError(toml_where((*a)[i].source()) + what + " rows must be arrays");
    if (i == 0) cols = row->size();
    if (row->size() != cols) throw ParseError(toml_where((*a)[i].source()) + what + " is ragged");
  }
  LocalMatrix m(p, rows, cols);
  for (std::size_t i = 0; i < rows; ++i) {
    const auto& row = *(*a)[i].as_array();
    for (std::size_t j = 0; j < cols; ++j) m(i, j) = toml_scalar(p, row[j]);
  }
  return m;
}

inline Presentation toml_presentation(Prime p, const View& t) {
  const int g = toml_int(t["generators"], "generators");
  if (g < 0) throw ParseError(where(t["generators"]) + "generators must be >= 0");
  return {static_cast<std::size_t>(g), toml_matrix(p, t["relations"], static_cast<std::size_t>(g), "relations")};
}

inline void read_homology(SpectrumModel& m, const View& h) {
  m.homology = GradedModule(m.prime);
  if (!h) throw ParseError("missing [homology] table");
  m.homology_known_through = h["known_through"] ? toml_int(h["known_through"], "homology.known_through") : m.hurewicz_dim;
  m.homology_bounded = h["bounded"].value_or(false);
  if (const auto* degrees = h["degrees"].as_table()) {
    for (const auto& [k, v] : *degrees) {
      const int d = degree_from_key(k);
      const auto* list = v.as_array();
      if (!list) throw ParseError(toml_where(v.source()) + "homology entries must be arrays of summands");
      m.homology.groups[d];
      for (const auto& s : *list) {
        const auto text = s.value<std::string>();
        if (!text) throw ParseError(toml_where(s.source()) + "summands are strings like \"Z\" or \"Z/4\"");
        try {
          m.homology.add(d, CyclicSummand::parse(m.prime, *text));
        } catch (const std::invalid_argument& e) {
          throw ParseError(toml_where(s.source()) + e.what());
        }
      }
    }
  }
  if (const auto* periodic = h["periodic"].as_array()) {
    for (const auto& e : *periodic) {
      const auto* t = e.as_table();
      if (!t) throw ParseError(toml_where(e.source()) + "periodic entries are tables {start, step, summand}");
      const View v(t);
      const int start = toml_int(v["start"], "periodic.start");
      const int step = toml_int(v["step"], "periodic.step");
      if (step <= 0) throw ParseError(where(v["step"]) + "periodic.step must be positive");
      const auto text = toml_required<std::string>(v["summand"], "periodic.summand");
      CyclicSummand s = CyclicSummand::free();
      try {
        s = CyclicSummand::parse(m.prime, text);
      } catch (const std::invalid_argument& ex) {
        throw ParseError(where(v["summand"]) + ex.what());
      }
      for (int d = start; d <= m.homology_known_through; d += step) m.homology.add(d, s);
    }
  }
}

inline void read_cohomology(SpectrumModel& m, const View& c, const std::filesystem::path& dir) {
  CohomologySource src;
  int choices = 0;
  if (auto q = c["quotient"].value<std::string>()) {
    ++choices;
    if (*q == "A") {
      src.kind = CohomologySource::Kind::ground_field;
    } else if (*q == "E(inf)") {
      src.kind = CohomologySource::Kind::exterior_all;
    } else {
      try {
        const auto [family, n] = parse_subalgebra(*q);
        src.kind = CohomologySource::Kind::subalgebra;
        src.family = family;
        src.index = n;
      } catch (const std::invalid_argument& e) {
        throw ParseError(where(c["quotient"]) + e.what());
      }
      if (src.family == SubalgebraFamily::A && m.prime.value() != 2) {
        throw ParseError(where(c["quotient"]) + "A(n) quotients need p = 2");
      }
    }
  }
  for (const char* key : {"projective", "thom"}) {
    if (auto s = c[key].value<std::string>()) {
      ++choices;
      try {
        src.space = parse_projective_kind(*s);
      } catch (const std::invalid_argument& e) {
        throw ParseError(where(c[key]) + e.what());
      }
      src.kind = std::string(key) == "thom" ? CohomologySource::Kind::thom : CohomologySource::Kind::projective;
      if (m.prime.value() != 2) throw ParseError(where(c[key]) + "projective and Thom cohomology need p = 2");
    }
  }
  if (auto f = c["file"].value<std::string>()) {
    ++choices;
    src.kind = CohomologySource::Kind::presentation;
    src.spec = module_spec_from_toml(parse_toml_file((dir / *f).string()), m.prime);
  }
  if (const auto* inline_module = c["module"].as_table()) {
    ++choices;
    toml::table wrapper;
    wrapper.insert("module", *inline_module);
    src.kind = CohomologySource::Kind::presentation;
    src.spec = module_spec_from_toml(wrapper, m.prime);
  }
  if (choices != 1) {
    throw ParseError(where(c) + "[cohomology] needs exactly one of quotient, projective, thom, file, module");
  }
  if (src.spec && src.spec->prime != m.prime) throw ModelError("model '" + m.name + "': cohomology is over a different prime");
  src.shift = c["shift"] ? toml_int(c["shift"], "cohomology.shift") : 0;
  m.cohomology = std::move(src);
}

inline void read_hurewicz(SpectrumModel& m, const View& h) {
  HurewiczImages img;
  if (auto fam = h["family"].value<std::string>()) {
    try {
      img.family = parse_hurewicz_family(*fam);
    } catch (const std::invalid_argument& e) {
      throw ParseError(where(h["family"]) + e.what());
    }
    img.r = h["r"] ? toml_int(h["r"], "hurewicz.r") : 0;
  }
  if (const auto* degrees = h["degrees"].as_table()) {
    for (const auto& [k, v] : *degrees) {
      const int d = degree_from_key(k);
      if (auto i = v.value<std::int64_t>()) {
        img.entries.emplace(d, HurewiczEntry::from_index(BigInt(*i)));
      } else if (auto s = v.value<std::string>()) {
        if (*s == "zero-mod-p") img.entries.emplace(d, HurewiczEntry::from_flag(HurewiczFlag::zero_mod_p));
        else if (*s == "nonzero-mod-p") img.entries.emplace(d, HurewiczEntry::from_flag(HurewiczFlag::nonzero_mod_p));
        else if (*s == "unknown") img.entries.emplace(d, HurewiczEntry::from_flag(HurewiczFlag::unknown));
        else {
          try {
            img.entries.emplace(d, HurewiczEntry::from_index(BigInt(*s)));
          } catch (const std::exception&) {
            throw ParseError(toml_where(v.source()) + "Hurewicz entries are an index or one of zero-mod-p, "
                                                      "nonzero-mod-p, unknown");
          }
        }
      } else {
        throw ParseError(toml_where(v.source()) + "Hurewicz entries are an index or a flag string");
      }
    }
  }
  m.hurewicz = std::move(img);
}

inline void read_skeletal(SpectrumModel& m, const View& sk) {
  if (const auto* att = sk["attaching"].as_array()) {
    for (const auto& e : *att) {
      const auto* t = e.as_table();
      if (!t) throw ParseError(toml_where(e.source()) + "skeletal.attaching entries are tables");
      const View v(t);
      const Presentation pres = toml_presentation(m.prime, v);
      m.skeletal.attaching.push_back(
          {toml_int(v["degree"], "degree"), pres, toml_matrix(m.prime, v["attaching"], pres.generators, "attaching")});
    }
  }
  if (const auto* hur = sk["hurewicz"].as_array()) {
    for (const auto& e : *hur) {
      const auto* t = e.as_table();
      if (!t) throw ParseError(toml_where(e.source()) + "skeletal.hurewicz entries are tables");
      const View v(t);
      const Presentation pres = toml_presentation(m.prime, v);
      const auto* rows = v["h"].as_array();
      if (!rows) throw ParseError(where(v) + "skeletal.hurewicz needs h");
      FpMatrix h(m.prime.value(), rows->size(), pres.generators);
      for (std::size_t i = 0; i < rows->size(); ++i) {
        const auto* row = (*rows)[i].as_array();
        if (!row || row->size() != pres.generators) {
          throw ParseError(toml_where((*rows)[i].source()) + "h rows must have one entry per generator");
        }
        for (std::size_t j = 0; j < row->size(); ++j) {
          const auto x = (*row)[j].value<std::int64_t>();
          if (!x) throw ParseError(toml_where((*row)[j].source()) + "h entries are integers");
          h.set(i, j, *x);
        }
      }
      m.skeletal.hurewicz.push_back({toml_int(v["degree"], "degree"), pres, std::move(h)});
    }
  }
}

}  // namespace detail

/// `dir` resolves file references.
inline SpectrumModel model_from_toml(const toml::table& doc, const std::filesystem::path& dir) {
  using detail::View;
  const View root(&doc);
  const View sp = root["spectrum"];
  if (!sp.is_table()) throw ParseError("missing [spectrum] table");
  SpectrumModel m;
  m.name = toml_required<std::string>(sp["name"], "spectrum.name");
  const int p = detail::toml_int(sp["prime"], "spectrum.prime");
  try {
    m.prime = Prime(static_cast<unsigned>(p));
  } catch (const std::invalid_argument& e) {
    throw ParseError(detail::where(sp["prime"]) + e.what());
  }
  m.hurewicz_dim = detail::toml_int(sp["hurewicz_dim"], "spectrum.hurewicz_dim");
  m.note = sp["note"].value_or(std::string());

  detail::read_homology(m, root["homology"]);
  if (root["cohomology"]) detail::read_cohomology(m, root["cohomology"], dir);
  if (root["hurewicz"]) detail::read_hurewicz(m, root["hurewicz"]);
  if (root["homotopy"]) m.homotopy_vanishes_above = detail::toml_int(root["homotopy"]["vanishes_above"], "homotopy.vanishes_above");
  if (auto f = root["chain"]["file"].value<std::string>()) {
    std::ifstream in(dir / *f);
    if (!in) throw ParseError(detail::where(root["chain"]["file"]) + "cannot open chain file '" + *f + "'");
    try {
      m.chain = complex_from_json(nlohmann::json::parse(in));
    } catch (const nlohmann::json::exception& e) {
      throw ParseError(*f + ": " + e.what());
    }
  }
  if (root["skeletal"]) detail::read_skeletal(m, root["skeletal"]);
  m.validate();
  return m;
}

inline SpectrumModel load_model(const std::filesystem::path& path) {
  return model_from_toml(parse_toml_file(path.string()), path.parent_path());
}

inline SpectrumModel model_from_text(std::string_view text, std::string_view name = "<input>",
                                     const std::filesystem::path& dir = ".") {
  return model_from_toml(parse_toml_text(text, name), dir);
}

}  // namespace nucleus
