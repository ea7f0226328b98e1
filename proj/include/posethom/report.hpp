#pragma once

#include <iomanip>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "integer_matrix.hpp"
#include "theories.hpp"

namespace posethom {

namespace detail {

inline nlohmann::ordered_json integer_json(const Integer& v) {
  if (v.fits_slong_p()) return v.get_si();
  return v.get_str();  // beyond 64 bits
}

}  // namespace detail

/**
 * {"theory", "coeffs", "m", ["functor",] "entries": [{"q", "l", "free_rank",
 * "torsion", ["bidegree"]}]}. Entries are sorted by (q, l); "q" is null for
 * functors without a homological degree.
 */
inline nlohmann::ordered_json to_json(const BigradedTable& t) {
  nlohmann::ordered_json j;
  j["theory"] = theory_name(t.theory);
  j["coeffs"] = t.coeffs.to_string();
  j["m"] = t.m;
  if (t.theory == Theory::Poset) j["functor"] = t.functor;
  auto entries = nlohmann::ordered_json::array();
  for (const auto& [key, g] : t.entries) {
    nlohmann::ordered_json e;
    if (t.graded) e["q"] = key.first;
    else e["q"] = nullptr;
    e["l"] = key.second;
    e["free_rank"] = g.free_rank;
    auto tors = nlohmann::ordered_json::array();
    for (const auto& d : g.torsion) tors.push_back(detail::integer_json(d));
    e["torsion"] = tors;
    if (t.theory == Theory::DoubleHomology) {
      const auto [a, b] = dh_bidegree(key.first, key.second);
      e["bidegree"] = {a, b};
    }
    entries.push_back(std::move(e));
  }
  j["entries"] = std::move(entries);
  return j;
}

inline std::string to_json_string(const BigradedTable& t) { return to_json(t).dump(); }

/// Rows per q, columns per l; dh rows also list the bidegree of each cell.
inline std::string to_table(const BigradedTable& t) {
  std::ostringstream out;
  out << theory_name(t.theory) << " over " << t.coeffs.to_string() << ", m = " << t.m;
  if (t.theory == Theory::Poset) out << ", functor " << t.functor;
  out << "\n";
  std::vector<std::vector<std::string>> rows;
  std::vector<std::string> header{t.graded ? "q \\ l" : "l"};
  for (int l = 0; l <= t.m; ++l) header.push_back(std::to_string(l));
  rows.push_back(header);
  for (int q = t.q_min(); q <= t.q_max(); ++q) {
    std::vector<std::string> row{t.graded ? std::to_string(q) : ""};
    for (int l = 0; l <= t.m; ++l) {
      // Over a field the entry is a dimension.
      std::string cell = t.coeffs.is_field() ? std::to_string(t.at(q, l).free_rank) : t.at(q, l).to_string();
      if (t.theory == Theory::DoubleHomology) {
        const auto [a, b] = dh_bidegree(q, l);
        cell += " (" + std::to_string(a) + "," + std::to_string(b) + ")";
      }
      row.push_back(cell);
    }
    rows.push_back(row);
  }
  std::vector<std::size_t> width(rows.front().size(), 0);
  for (const auto& r : rows)
    for (std::size_t c = 0; c < r.size(); ++c) width[c] = std::max(width[c], r[c].size());
  for (const auto& r : rows) {
    for (std::size_t c = 0; c < r.size(); ++c) {
      out << std::left << std::setw(static_cast<int>(width[c])) << r[c];
      out << (c + 1 < r.size() ? "  " : "");
    }
    out << "\n";
  }
  return out.str();
}

}  // namespace posethom
