#pragma once

#include <bit>
#include <cstdint>
#include <string>
#include <vector>

#include "errors.hpp"

namespace posethom {

/// Subset of [m] = {1..m}; vertex i lives in bit i-1.
using Mask = std::uint32_t;

inline constexpr int kMaxVertices = 24;

constexpr Mask vertex_bit(int v) { return Mask{1} << (v - 1); }
constexpr Mask full_mask(int m) { return m >= 32 ? ~Mask{0} : (Mask{1} << m) - 1; }
constexpr int cardinality(Mask s) { return std::popcount(s); }
constexpr bool is_subset(Mask a, Mask b) { return (a & ~b) == 0; }
constexpr int min_vertex(Mask s) { return std::countr_zero(s) + 1; }

inline std::vector<int> vertices_of(Mask s) {
  std::vector<int> out;
  out.reserve(cardinality(s));
  while (s) {
    out.push_back(min_vertex(s));
    s &= s - 1;
  }
  return out;
}

inline Mask mask_of(const std::vector<int>& vs) {
  Mask s = 0;
  for (int v : vs) s |= vertex_bit(v);
  return s;
}

/// "{1,3}" style; "{}" for the empty set.
inline std::string mask_to_string(Mask s) {
  std::string out = "{";
  bool first = true;
  for (int v : vertices_of(s)) {
    if (!first) out += ",";
    out += std::to_string(v);
    first = false;
  }
  return out + "}";
}

/// Number of elements of J strictly below x. Sign exponent of the cover J -> J+x.
inline int epsilon(Mask j, int x) {
  if (j & vertex_bit(x)) throw ContractError("epsilon: x is already in J");
  return cardinality(j & (vertex_bit(x) - 1));
}

/// All subsets of [m] of cardinality k, in increasing bitmask order.
inline std::vector<Mask> subsets_of_size(int m, int k) {
  std::vector<Mask> out;
  if (k < 0 || k > m) return out;
  if (k == 0) return {0};
  // Gosper's hack enumerates same-popcount masks in increasing order.
  Mask s = full_mask(k);
  const Mask limit = Mask{1} << m;
  while (s < limit) {
    out.push_back(s);
    Mask c = s & (~s + 1);
    Mask r = s + c;
    s = (((r ^ s) >> 2) / c) | r;
  }
  return out;
}

inline std::uint64_t binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  std::uint64_t r = 1;
  for (int i = 1; i <= k; ++i) r = r * static_cast<std::uint64_t>(n - k + i) / i;
  return r;
}

}  // namespace posethom
