#pragma once

#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "bits.hpp"
#include "errors.hpp"
#include "simplicial_complex.hpp"

namespace posethom {

/// {"m":M,"facets":[[...],...]} with 1-based vertices, maximal faces only.
inline std::string to_json_string(const SimplicialComplex& k) {
  nlohmann::ordered_json j;
  j["m"] = k.m();
  auto facets = nlohmann::ordered_json::array();
  for (Mask f : k.maximal_faces()) facets.push_back(vertices_of(f));
  j["facets"] = std::move(facets);
  return j.dump();
}

inline SimplicialComplex complex_from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("m") || !j.contains("facets"))
    throw InputError("complex JSON needs keys \"m\" and \"facets\"");
  if (!j["m"].is_number_integer()) throw InputError("\"m\" must be an integer");
  if (!j["facets"].is_array()) throw InputError("\"facets\" must be an array");
  const int m = j["m"].get<int>();
  std::vector<std::vector<int>> facets;
  for (const auto& f : j["facets"]) {
    if (!f.is_array()) throw InputError("each facet must be an array of integers");
    std::vector<int> face;
    for (const auto& v : f) {
      if (!v.is_number_integer()) throw InputError("vertex labels must be integers");
      face.push_back(v.get<int>());
    }
    facets.push_back(std::move(face));
  }
  return SimplicialComplex::from_facets(m, facets);
}

inline SimplicialComplex parse_complex_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw InputError(std::string("JSON parse error: ") + e.what());
  }
  return complex_from_json(j);
}

/// One facet per line, vertices separated by whitespace. Blank lines and
/// lines starting with '#' are skipped. m is the largest label present.
inline SimplicialComplex parse_complex_text(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  std::vector<std::vector<int>> facets;
  int m = 0;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    std::istringstream ls(line);
    std::vector<int> face;
    std::string tok;
    while (ls >> tok) {
      std::size_t used = 0;
      int v = 0;
      try {
        v = std::stoi(tok, &used);
      } catch (const std::exception&) {
        used = 0;
      }
      if (used != tok.size() || used == 0)
        throw InputError("line " + std::to_string(lineno) + ": bad vertex '" + tok + "'");
      if (v < 1) throw InputError("line " + std::to_string(lineno) + ": vertices are 1-based");
      m = std::max(m, v);
      face.push_back(v);
    }
    facets.push_back(std::move(face));
  }
  if (m == 0) throw InputError("no vertices in text input");
  return SimplicialComplex::from_facets(m, facets);
}

/// Dispatch on the first non-space character: '{' means JSON.
inline SimplicialComplex parse_complex(const std::string& text) {
  auto first = text.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && text[first] == '{') return parse_complex_json(text);
  return parse_complex_text(text);
}

inline SimplicialComplex load_complex(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_complex(buf.str());
}

}  // namespace posethom
