#pragma once

#include <algorithm>
#include <cstdio>
#include <numeric>
#include <string>
#include <vector>

#include "bits.hpp"
#include "errors.hpp"
#include "generators.hpp"
#include "simplicial_complex.hpp"

namespace posethom {

struct CorpusEntry {
  std::string name;
  SimplicialComplex complex;
};

namespace detail {

/// Recursively decides membership of each subset of size >= 2, in order of
/// size, keeping only families closed under taking faces.
inline void enumerate_downsets(const std::vector<Mask>& candidates, std::size_t i, std::vector<Mask>& chosen,
                               std::vector<char>& member, const auto& emit) {
  if (i == candidates.size()) {
    emit(chosen);
    return;
  }
  const Mask s = candidates[i];
  enumerate_downsets(candidates, i + 1, chosen, member, emit);
  for (Mask rest = s; rest; rest &= rest - 1)
    if (!member[s & ~(rest & (~rest + 1))]) return;
  member[s] = 1;
  chosen.push_back(s);
  enumerate_downsets(candidates, i + 1, chosen, member, emit);
  chosen.pop_back();
  member[s] = 0;
}

inline Mask permute_mask(Mask s, const std::vector<int>& perm) {
  Mask out = 0;
  for (int v : vertices_of(s)) out |= vertex_bit(perm[v - 1]);
  return out;
}

}  // namespace detail

/// Every complex on exactly the vertex set [n], labelled (n <= 5).
inline std::vector<SimplicialComplex> labelled_complexes(int n) {
  if (n < 1 || n > 5) throw InputError("exhaustive enumeration supports 1 <= n <= 5");
  std::vector<Mask> candidates;
  for (int k = 2; k <= n; ++k)
    for (Mask s : subsets_of_size(n, k)) candidates.push_back(s);
  std::vector<Mask> chosen;
  std::vector<char> member(std::size_t{1} << n, 0);
  member[0] = 1;
  for (int v = 1; v <= n; ++v) member[vertex_bit(v)] = 1;
  std::vector<SimplicialComplex> out;
  detail::enumerate_downsets(candidates, 0, chosen, member, [&](const std::vector<Mask>& faces) {
    out.push_back(SimplicialComplex::from_facet_masks(n, faces));
  });
  return out;
}

/// Smallest sorted face list over all relabellings.
inline std::vector<Mask> canonical_form(const SimplicialComplex& k) {
  std::vector<int> perm(k.m());
  std::iota(perm.begin(), perm.end(), 1);
  std::vector<Mask> best;
  bool first = true;
  do {
    std::vector<Mask> image;
    for (const auto& f : k.faces()) image.push_back(detail::permute_mask(f.vertices, perm));
    std::sort(image.begin(), image.end());
    if (first || image < best) best = std::move(image);
    first = false;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best;
}

/// One representative per isomorphism class of complexes on [n], in
/// enumeration order.
inline std::vector<SimplicialComplex> complexes_up_to_isomorphism(int n) {
  std::vector<SimplicialComplex> reps;
  std::vector<std::vector<Mask>> seen;
  for (auto& k : labelled_complexes(n)) {
    auto key = canonical_form(k);
    auto it = std::lower_bound(seen.begin(), seen.end(), key);
    if (it != seen.end() && *it == key) continue;
    seen.insert(it, std::move(key));
    reps.push_back(std::move(k));
  }
  return reps;
}

/// Parameters of the i-th random corpus member (i = 0..199).
struct RandomSpec {
  int m, dim;
  double p;
  std::uint64_t seed;
};

inline RandomSpec standard_random_spec(int i) {
  const int m = 2 + i % 7;
  const int dim = (i / 7) % std::min(3, m);
  const double p = 0.3 + 0.1 * ((i / 3) % 6);
  return {m, dim, p, static_cast<std::uint64_t>(1000 + i)};
}

/**
 * Cycles C^3..C^8, simplexes and all skeleta on up to 6 vertices, 200
 * seeded random complexes with m <= 8, and every labelled complex on up to
 * 4 vertices.
 */
inline std::vector<CorpusEntry> standard_corpus() {
  std::vector<CorpusEntry> out;
  for (int m = 3; m <= 8; ++m) out.push_back({"cycle:" + std::to_string(m), cycle(m)});
  for (int m = 1; m <= 6; ++m) {
    out.push_back({"simplex:" + std::to_string(m), simplex(m)});
    for (int k = 0; k < m - 1; ++k)
      out.push_back({"skeleton:" + std::to_string(m) + "," + std::to_string(k), skeleton(m, k)});
  }
  for (int i = 0; i < 200; ++i) {
    const auto s = standard_random_spec(i);
    char p[16];
    std::snprintf(p, sizeof p, "%.1f", s.p);
    out.push_back({"random:" + std::to_string(s.m) + "," + std::to_string(s.dim) + "," + p +
                       ",seed=" + std::to_string(s.seed),
                   random_complex(s.m, s.dim, s.p, s.seed)});
  }
  for (int n = 1; n <= 4; ++n) {
    int idx = 0;
    for (auto& k : labelled_complexes(n))
      out.push_back({"labelled:" + std::to_string(n) + "#" + std::to_string(idx++), std::move(k)});
  }
  return out;
}

/// "standard" or "all-complexes:N" (isomorphism classes on exactly N vertices).
inline std::vector<CorpusEntry> corpus(const std::string& spec) {
  if (spec == "standard") return standard_corpus();
  const std::string prefix = "all-complexes:";
  if (spec.rfind(prefix, 0) == 0) {
    const int n = detail::parse_number<int>(std::string_view(spec).substr(prefix.size()), "vertex count");
    if (n < 1 || n > 5) throw InputError("all-complexes:N supports 1 <= N <= 5");
    std::vector<CorpusEntry> out;
    int idx = 0;
    for (auto& k : complexes_up_to_isomorphism(n))
      out.push_back({"iso:" + std::to_string(n) + "#" + std::to_string(idx++), std::move(k)});
    return out;
  }
  throw InputError("unknown corpus '" + spec + "' (expected standard or all-complexes:N)");
}

}  // namespace posethom
