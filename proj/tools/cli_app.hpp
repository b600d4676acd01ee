#pragma once

// The nucleus command line, kept out of main() so tests can drive it with
// string streams. Exit codes: 0 success, 1 domain error, 2 parse error.

#include "nucleus/chain_json.hpp"
#include "nucleus/classifier/model_toml.hpp"
#include "nucleus/classifier/report.hpp"
#include "nucleus/ko/brackets.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

namespace nucleus::cli {

namespace fs = std::filesystem;

inline constexpr int default_max_degree = 40;

/// Bad input text (as opposed to well-formed input with no answer).
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

inline int max_degree_from_env() {
  const char* v = std::getenv("NUCLEUS_MAX_DEGREE");
  if (!v || !*v) return default_max_degree;
  try {
    std::size_t used = 0;
    const int n = std::stoi(v, &used);
    if (used == std::string(v).size()) return n;
  } catch (const std::exception&) {
  }
  throw UsageError(std::string("NUCLEUS_MAX_DEGREE must be an integer, got '") + v + "'");
}

inline fs::path fixture_dir() {
  if (const char* v = std::getenv("NUCLEUS_FIXTURE_DIR"); v && *v) return v;
#ifdef NUCLEUS_FIXTURE_DIR
  return NUCLEUS_FIXTURE_DIR;
#else
  return "fixtures";
#endif
}

template <class F>
auto as_usage(F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
}

inline bool has_spectrum_table(const fs::path& p) {
  try {
    return parse_toml_file(p.string())["spectrum"].is_table();
  } catch (const ParseError&) {
    return true;  // let load_model report it
  }
}

// ---- classify ---------------------------------------------------------------

inline int cmd_classify(const std::string& path, int N, bool json, std::ostream& out, std::ostream& err) {
  std::vector<fs::path> files;
  if (fs::is_directory(path)) {
    for (const auto& e : fs::directory_iterator(path))
      if (e.is_regular_file() && e.path().extension() == ".toml") files.push_back(e.path());
    std::sort(files.begin(), files.end());
    files.erase(std::remove_if(files.begin(), files.end(), [](const fs::path& p) { return !has_spectrum_table(p); }),
                files.end());
  } else {
    files.push_back(path);
  }
  const bool batch = fs::is_directory(path);
  int status = 0;
  nlohmann::json reports = nlohmann::json::array();
  for (const auto& f : files) {
    try {
      const ClassifyReport r = make_report(load_model(f), N);
      if (json) reports.push_back(to_json(r));
      else out << to_text(r);
    } catch (const ParseError& e) {
      err << "error: " << e.what() << "\n";
      status = std::max(status, 2);
    } catch (const std::exception& e) {
      err << "error: " << f.filename().string() << ": " << e.what() << "\n";
      status = std::max(status, 1);
    }
  }
  if (json) {
    if (batch) out << reports.dump(2) << "\n";
    else if (!reports.empty()) out << reports.front().dump(2) << "\n";
  }
  return status;
}

// ---- minimalize -------------------------------------------------------------

inline CellComplex read_complex(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open '" + path + "'");
  try {
    return as_usage([&] { return complex_from_json(nlohmann::json::parse(in)); });
  } catch (const nlohmann::json::exception& e) {
    throw UsageError(path + ": " + e.what());
  }
}

inline int cmd_minimalize(const std::string& path, const std::string& out_path, std::ostream& out) {
  const CellComplex C = read_complex(path);
  const MinimalModel m = minimalize_with_map(C);
  const bool minimal = is_minimal(m.complex);
  const bool preserved = homology(m.complex) == homology(C);
  nlohmann::json doc{{"complex", to_json(m.complex)}, {"map", to_json(m.map)}};
  if (out_path.empty()) {
    out << doc.dump(2) << "\n";
  } else {
    std::ofstream f(out_path);
    if (!f) throw std::runtime_error("cannot write '" + out_path + "'");
    f << doc.dump(2) << "\n";
  }
  out << "cells: " << C.cell_count() << " -> " << m.complex.cell_count() << "\n";
  out << "homology: " << homology(m.complex).to_string() << "\n";
  out << "is_minimal: " << (minimal ? "true" : "false") << ", homology preserved: " << (preserved ? "true" : "false")
      << "\n";
  return minimal && preserved ? 0 : 1;
}

// ---- ext0 -------------------------------------------------------------------

/// Accepts a [module] file or a spectrum model with a [cohomology] table.
inline TruncatedAModule read_module(const std::string& path, int N) {
  const toml::table doc = parse_toml_file(path);
  if (doc["module"].is_table()) return realize(module_spec_from_toml(doc), N);
  const SpectrumModel m = load_model(path);
  if (!m.cohomology) throw std::invalid_argument("model '" + m.name + "' has no cohomology");
  return m.cohomology->realize(m.prime, N);
}

inline int cmd_ext0(const std::string& path, int N, std::ostream& out) {
  const auto r = minimal_generators(read_module(path, N));
  out << "generators:";
  if (r.dims.empty()) out << " none";
  bool first = true;
  for (const auto& [t, d] : r.dims) {
    out << (first ? " " : ", ") << "degree " << t << " (dim " << d << ")";
    first = false;
  }
  out << "\nreliable through degree " << r.reliable_through << "\n";
  return 0;
}

// ---- steenrod ---------------------------------------------------------------

inline int cmd_steenrod_reduce(const std::string& word, unsigned p, std::ostream& out) {
  const SteenrodAlgebra A(as_usage([&] { return Prime(p); }));
  const auto x = as_usage([&] { return A.parse(word); });
  out << A.to_string(A.reduce(x)) << "\n";
  return 0;
}

// ---- ko ---------------------------------------------------------------------

inline BracketSlot parse_slot(const std::string& text) {
  if (text.rfind("x:", 0) == 0) {
    return FormalSlot{as_usage([&] { return degree_key(text.substr(2)); })};
  }
  return as_usage([&] { return parse_ko_element(text); });
}

inline int cmd_ko_group(int n, std::ostream& out) {
  if (n < 0) throw std::domain_error("ko has no homotopy in negative degrees");
  out << ko_group(n).to_string() << "\n";
  return 0;
}

inline int cmd_ko_mul(const std::vector<std::string>& factors, std::ostream& out) {
  KoElement acc = KoElement::unit();
  for (const auto& f : factors) acc = ko_mul(acc, as_usage([&] { return parse_ko_element(f); }));
  out << acc.to_string() << " (degree " << acc.degree() << ")\n";
  return 0;
}

inline int cmd_ko_bracket(const std::string& a_text, const std::string& b_text, const std::string& c_text,
                          std::ostream& out, std::ostream& err) {
  const StemElement a = as_usage([&] { return parse_stem(a_text); });
  const StemElement b = as_usage([&] { return parse_stem(b_text); });
  const BracketSlot c = parse_slot(c_text);
  const int degree = a.degree + b.degree + slot_degree(c) + 1;
  const std::string name = "<" + a_text + ", " + b_text + ", " + c_text + ">";
  const auto check = bracket_defined(a, b, c);
  if (!check.defined) {
    err << name << " is not defined: " << check.reason << "\n";
    return 1;
  }
  out << name << " in degree " << degree << ": defined (" << check.reason << ")\n";
  if (const auto* x = std::get_if<KoElement>(&c)) {
    const BracketRecord r = bracket_indeterminacy(a, b, *x);
    out << "indeterminacy: " << r.left.to_string() << " + " << r.right.to_string() << " = "
        << r.indeterminacy.to_string() << "\n";
    out << "contained in 2 pi_" << degree << "(ko): " << (r.indeterminacy.contained_in_twice() ? "yes" : "no") << "\n";
  } else {
    out << "indeterminacy: lives in pi_" << degree << "(X); only definedness is checked for formal slots\n";
  }
  return 0;
}

inline int cmd_ko_coverage(int max, std::ostream& out) {
  const auto r = generator_coverage_check(max);
  for (const auto& e : r.entries) {
    out << "degree " << e.degree << ": " << e.family;
    if (!e.bracket.empty()) out << " in " << e.bracket;
    out << " -> " << e.image.to_string() << "\n";
  }
  out << "gaps: ";
  if (r.gaps.empty()) out << "none";
  for (std::size_t i = 0; i < r.gaps.size(); ++i) out << (i ? ", " : "") << r.gaps[i];
  out << "\n";
  for (const auto& p : r.problems) out << "problem: " << p << "\n";
  return r.complete() ? 0 : 1;
}

// ---- fixtures ---------------------------------------------------------------

inline std::vector<fs::path> fixture_files(const fs::path& dir) {
  std::vector<fs::path> files;
  if (!fs::is_directory(dir)) throw std::runtime_error("fixture directory '" + dir.string() + "' not found");
  for (const auto& e : fs::recursive_directory_iterator(dir)) {
    if (!e.is_regular_file()) continue;
    const auto ext = e.path().extension();
    if (ext == ".toml" || ext == ".json") files.push_back(fs::relative(e.path(), dir));
  }
  std::sort(files.begin(), files.end());
  return files;
}

inline int cmd_fixtures_list(const fs::path& dir, std::ostream& out) {
  for (const auto& f : fixture_files(dir)) {
    const fs::path full = dir / f;
    std::string what;
    if (f.extension() == ".json") {
      what = "chain complex";
    } else {
      const toml::table doc = parse_toml_file(full.string());
      if (doc["spectrum"].is_table()) {
        const SpectrumModel m = load_model(full);
        what = m.name + " (p = " + std::to_string(m.prime.value()) + ", n0 = " + std::to_string(m.hurewicz_dim) + ")";
      } else if (doc["module"].is_table()) {
        what = "A-module presentation";
      } else {
        what = "data";
      }
    }
    out << f.generic_string() << ": " << what << "\n";
  }
  return 0;
}

inline int cmd_fixtures_show(const fs::path& dir, const std::string& name, std::ostream& out) {
  fs::path p = dir / name;
  if (!fs::is_regular_file(p) && fs::is_regular_file(dir / (name + ".toml"))) p = dir / (name + ".toml");
  if (!fs::is_regular_file(p)) throw std::domain_error("no fixture named '" + name + "'");
  std::ifstream in(p);
  if (!in) throw std::domain_error("no fixture named '" + name + "'");
  out << in.rdbuf();
  return 0;
}

// ---- entry point ------------------------------------------------------------

inline int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"nucleus: minimal atomic and nuclear complexes, computed"};
  app.require_subcommand(1);

  std::string path, out_path, word, a, b, c, fixture_name;
  std::optional<int> max_degree;
  bool json = false;
  unsigned prime = 2;
  int n = 0, coverage_max = 32;
  std::vector<std::string> factors;

  auto* classify = app.add_subcommand("classify", "classify a model file, or every model in a directory");
  classify->add_option("path", path, "model .toml or directory")->required();
  classify->add_option("--max-degree", max_degree, "truncation degree N (default NUCLEUS_MAX_DEGREE or 40)");
  classify->add_flag("--json", json, "machine-readable report");

  auto* minimalize_cmd = app.add_subcommand("minimalize", "minimal complex with the same homology");
  minimalize_cmd->add_option("path", path, "chain complex .json")->required();
  minimalize_cmd->add_option("--out", out_path, "write the minimal complex and chain map here");

  auto* ext0 = app.add_subcommand("ext0", "minimal generators of a cohomology module");
  ext0->add_option("path", path, "[module] file or model with [cohomology]")->required();
  ext0->add_option("--max-degree", max_degree, "truncation degree");

  auto* steenrod = app.add_subcommand("steenrod", "Steenrod algebra arithmetic");
  steenrod->require_subcommand(1);
  auto* reduce = steenrod->add_subcommand("reduce", "admissible normal form of a word");
  reduce->add_option("word", word, "e.g. \"Sq2 Sq2\"")->required();
  reduce->add_option("--prime", prime, "prime (default 2)");

  auto* ko = app.add_subcommand("ko", "arithmetic in pi_*(ko)");
  ko->require_subcommand(1);
  auto* group = ko->add_subcommand("group", "pi_n(ko)");
  group->add_option("n", n)->required();
  auto* mul = ko->add_subcommand("mul", "product of elements, e.g. \"a*a\"");
  mul->add_option("factors", factors)->required();
  auto* bracket = ko->add_subcommand("bracket", "definedness and indeterminacy of <a, b, c>");
  bracket->add_option("a", a)->required();
  bracket->add_option("b", b)->required();
  bracket->add_option("c", c, "element of pi_*(ko), or x:DEG for a formal even-degree class")->required();
  auto* coverage = ko->add_subcommand("coverage", "bracket families against the generators of pi_*(ko)");
  coverage->add_option("--max", coverage_max, "largest degree checked");

  auto* fixtures = app.add_subcommand("fixtures", "shipped fixture library");
  fixtures->require_subcommand(1);
  std::string dir_override;
  fixtures->add_option("--dir", dir_override, "fixture directory");
  auto* list = fixtures->add_subcommand("list", "list fixtures");
  auto* show = fixtures->add_subcommand("show", "print a fixture");
  show->add_option("name", fixture_name)->required();

  std::vector<const char*> argv{"nucleus"};
  for (const auto& s : args) argv.push_back(s.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp& e) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }

  try {
    auto N = [&] { return max_degree ? *max_degree : max_degree_from_env(); };
    if (*classify) return cmd_classify(path, N(), json, out, err);
    if (*minimalize_cmd) return cmd_minimalize(path, out_path, out);
    if (*ext0) return cmd_ext0(path, N(), out);
    if (*reduce) return cmd_steenrod_reduce(word, prime, out);
    if (*group) return cmd_ko_group(n, out);
    if (*mul) return cmd_ko_mul(factors, out);
    if (*bracket) return cmd_ko_bracket(a, b, c, out, err);
    if (*coverage) return cmd_ko_coverage(coverage_max, out);
    const fs::path dir = dir_override.empty() ? fixture_dir() : fs::path(dir_override);
    if (*list) return cmd_fixtures_list(dir, out);
    if (*show) return cmd_fixtures_show(dir, fixture_name, out);
  } catch (const ParseError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}

}  // namespace nucleus::cli
