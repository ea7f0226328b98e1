#pragma once

#include <algorithm>
#include <charconv>
#include <cstdint>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "bits.hpp"
#include "errors.hpp"
#include "simplicial_complex.hpp"

namespace posethom {

/// The cycle C^m: edges {i,i+1} for i < m, then {1,m}.
inline SimplicialComplex cycle(int m) {
  if (m < 3) throw InputError("cycle requires m >= 3");
  std::vector<std::vector<int>> facets;
  for (int i = 1; i < m; ++i) facets.push_back({i, i + 1});
  facets.push_back({1, m});
  return SimplicialComplex::from_facets(m, facets);
}

/// Full simplex on [m] (dimension m-1).
inline SimplicialComplex simplex(int m) {
  return SimplicialComplex::from_facet_masks(m, {full_mask(m)});
}

/// All faces of the simplex on [m] of dimension <= k. The (-1)-skeleton
/// {empty} would leave every vertex a ghost, so k must be at least 0.
inline SimplicialComplex skeleton(int m, int k) {
  if (k == -1) throw InputError("skeleton with k = -1 has ghost vertices; complexes keep every vertex");
  if (k < 0 || k > m - 1) throw InputError("skeleton requires 0 <= k <= m-1");
  return SimplicialComplex::from_facet_masks(m, subsets_of_size(m, k + 1));
}

/// Keeps each dim-dimensional face of the simplex on [m] independently
/// with probability p, then closes downward. Singletons are always present.
/// Draws come straight from mt19937_64 so the output is identical across
/// standard library implementations.
inline SimplicialComplex random_complex(int m, int dim, double p, std::uint64_t seed) {
  if (m < 1 || m > kMaxVertices) throw InputError("random: m out of range");
  if (dim < 0 || dim > m - 1) throw InputError("random requires 0 <= dim <= m-1");
  if (!(p >= 0.0 && p <= 1.0)) throw InputError("random requires 0 <= p <= 1");
  std::mt19937_64 rng(seed);
  std::vector<Mask> kept;
  for (Mask s : subsets_of_size(m, dim + 1)) {
    const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
    if (u < p) kept.push_back(s);
  }
  auto closed = SimplicialComplex::from_facet_masks(m, kept);
  // Reorder maximal faces lexicographically for stable output.
  std::vector<Mask> maximal = closed.maximal_faces();
  std::sort(maximal.begin(), maximal.end(),
            [](Mask a, Mask b) { return vertices_of(a) < vertices_of(b); });
  return SimplicialComplex::from_facet_masks(m, maximal);
}

namespace detail {

inline std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    auto pos = s.find(sep, start);
    out.push_back(s.substr(start, pos == std::string_view::npos ? pos : pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

template <class T>
T parse_number(std::string_view s, const char* what) {
  T value{};
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc() || ptr != s.data() + s.size())
    throw InputError(std::string("bad ") + what + ": '" + std::string(s) + "'");
  return value;
}

inline double parse_double(std::string_view s, const char* what) {
  std::string copy(s);
  std::size_t used = 0;
  double v = 0;
  try {
    v = std::stod(copy, &used);
  } catch (const std::exception&) {
    throw InputError(std::string("bad ") + what + ": '" + copy + "'");
  }
  if (used != copy.size()) throw InputError(std::string("bad ") + what + ": '" + copy + "'");
  return v;
}

}  // namespace detail

/**
 * Parse a generator spec and build the complex:
 *
 *   cycle:M            simplex:M          skeleton:M,K
 *   random:M,DIM,P[,seed=S]               (seed defaults to 0)
 */
inline SimplicialComplex generate(std::string_view spec) {
  auto colon = spec.find(':');
  if (colon == std::string_view::npos) throw InputError("generator spec needs 'family:args'");
  auto family = spec.substr(0, colon);
  auto args = detail::split(spec.substr(colon + 1), ',');
  auto need = [&](std::size_t lo, std::size_t hi) {
    if (args.size() < lo || args.size() > hi)
      throw InputError("wrong number of arguments for '" + std::string(family) + "'");
  };
  if (family == "cycle") {
    need(1, 1);
    return cycle(detail::parse_number<int>(args[0], "m"));
  }
  if (family == "simplex") {
    need(1, 1);
    return simplex(detail::parse_number<int>(args[0], "m"));
  }
  if (family == "skeleton") {
    need(2, 2);
    return skeleton(detail::parse_number<int>(args[0], "m"), detail::parse_number<int>(args[1], "k"));
  }
  if (family == "random") {
    need(3, 4);
    std::uint64_t seed = 0;
    if (args.size() == 4) {
      auto s = args[3];
      if (s.substr(0, 5) == "seed=") s = s.substr(5);
      seed = detail::parse_number<std::uint64_t>(s, "seed");
    }
    return random_complex(detail::parse_number<int>(args[0], "m"),
                          detail::parse_number<int>(args[1], "dim"),
                          detail::parse_double(args[2], "p"), seed);
  }
  throw InputError("unknown generator family '" + std::string(family) + "'");
}

}  // namespace posethom
