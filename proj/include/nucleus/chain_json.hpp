#pragma once

// JSON chain-complex format:
//   { "prime": p, "hurewicz_dim": n0, "top_degree": N, "truncated": bool,
//     "cells": { "<degree>": [labels] },
//     "differentials": { "<degree>": [[ "num/den", ... ], ...] } }
// differentials["n"] is d_n : C_n -> C_{n-1} with one row per (n-1)-cell.

#include "nucleus/chain_complex.hpp"

#include <json.hpp>

#include <string>

namespace nucleus {

inline nlohmann::json matrix_to_json(const LocalMatrix& m) {
  auto rows = nlohmann::json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    auto row = nlohmann::json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(m(i, j).to_string());
    rows.push_back(std::move(row));
  }
  return rows;
}

/// Entries may be "num/den" strings or plain integers. rows/cols are needed
/// for empty shapes that JSON cannot express.
inline LocalMatrix matrix_from_json(Prime p, const nlohmann::json& j, std::size_t rows, std::size_t cols) {
  if (!j.is_array()) throw std::invalid_argument("matrix must be an array of rows");
  if (j.size() != rows) {
    throw std::invalid_argument("matrix has " + std::to_string(j.size()) + " rows, expected " + std::to_string(rows));
  }
  LocalMatrix m(p, rows, cols);
  for (std::size_t i = 0; i < rows; ++i) {
    if (!j[i].is_array() || j[i].size() != cols) {
      throw std::invalid_argument("matrix row " + std::to_string(i) + " must have " + std::to_string(cols) +
                                  " entries");
    }
    for (std::size_t k = 0; k < cols; ++k) {
      const auto& e = j[i][k];
      if (e.is_string()) {
        m(i, k) = LocalScalar::parse(p, e.get<std::string>());
      } else if (e.is_number_integer()) {
        m(i, k) = LocalScalar(p, e.get<long long>());
      } else {
        throw std::invalid_argument("matrix entries must be strings or integers");
      }
    }
  }
  return m;
}

inline nlohmann::json to_json(const CellComplex& C) {
  nlohmann::json j;
  j["prime"] = C.prime().value();
  j["hurewicz_dim"] = C.hurewicz_dim();
  j["top_degree"] = C.top_degree();
  j["truncated"] = C.truncated();
  auto cells = nlohmann::json::object();
  auto diffs = nlohmann::json::object();
  for (const auto& [n, c] : C.all_cells()) {
    if (c.empty()) continue;
    cells[std::to_string(n)] = c;
    if (C.rank(n - 1) > 0) diffs[std::to_string(n)] = matrix_to_json(C.differential(n));
  }
  j["cells"] = cells;
  j["differentials"] = diffs;
  return j;
}

inline int degree_key(const std::string& key) {
  try {
    std::size_t pos = 0;
    int d = std::stoi(key, &pos);
    if (pos != key.size()) throw std::invalid_argument(key);
    return d;
  } catch (const std::exception&) {
    throw std::invalid_argument("degree key '" + key + "' is not an integer");
  }
}

inline CellComplex complex_from_json(const nlohmann::json& j) {
  for (const char* field : {"prime", "hurewicz_dim", "top_degree", "cells"}) {
    if (!j.contains(field)) throw std::invalid_argument(std::string("chain complex is missing '") + field + "'");
  }
  const Prime p(j.at("prime").get<unsigned>());
  std::map<int, std::vector<std::string>> cells;
  for (const auto& [key, labels] : j.at("cells").items()) {
    cells[degree_key(key)] = labels.get<std::vector<std::string>>();
  }
  auto rank = [&](int n) {
    auto it = cells.find(n);
    return it == cells.end() ? std::size_t{0} : it->second.size();
  };
  std::map<int, LocalMatrix> d;
  if (j.contains("differentials")) {
    for (const auto& [key, mat] : j.at("differentials").items()) {
      const int n = degree_key(key);
      d.emplace(n, matrix_from_json(p, mat, rank(n - 1), rank(n)));
    }
  }
  return CellComplex(p, j.at("hurewicz_dim").get<int>(), j.at("top_degree").get<int>(),
                     j.value("truncated", false), std::move(cells), std::move(d));
}

inline nlohmann::json to_json(const ChainMap& f) {
  nlohmann::json j;
  auto comps = nlohmann::json::object();
  for (const auto& [n, m] : f.components()) {
    if (m.rows() == 0 || m.cols() == 0) continue;
    comps[std::to_string(n)] = matrix_to_json(m);
  }
  j["components"] = comps;
  return j;
}

inline nlohmann::json to_json(const GradedModule& H) {
  nlohmann::json j;
  j["prime"] = H.prime.value();
  auto groups = nlohmann::json::object();
  for (const auto& [n, g] : H.groups) {
    if (g.empty()) continue;
    auto list = nlohmann::json::array();
    for (const auto& s : g) list.push_back(s.to_string(H.prime));
    groups[std::to_string(n)] = list;
  }
  j["groups"] = groups;
  j["unreliable"] = H.unreliable;
  return j;
}

}  // namespace nucleus
