#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <memory>
#include <mutex>
#include <numeric>
#include <optional>
#include <unordered_map>
#include <vector>

#include "bits.hpp"
#include "coefficients.hpp"
#include "errors.hpp"
#include "integer_matrix.hpp"
#include "prime_field.hpp"
#include "simplicial_complex.hpp"
#include "smith.hpp"

namespace posethom {

/**
 * Simplicial chain complex of a full subcomplex K_J over Z.
 *
 * Degree q has basis the q-faces of K_J sorted by bitmask. A face with
 * vertices v_0 < ... < v_q has boundary sum_i (-1)^i (face minus v_i). The
 * reduced variant carries the empty face in degree -1, and the boundary of
 * a vertex is the empty face (augmentation).
 */
struct ChainComplexZ {
  bool reduced = false;
  int min_degree = 0;
  int max_degree = -1;
  std::vector<std::vector<Mask>> bases;  // index q - min_degree
  std::vector<IntMatrix> boundaries;     // boundary q: C_q -> C_{q-1}

  const std::vector<Mask>& basis(int q) const {
    static const std::vector<Mask> empty;
    if (q < min_degree || q > max_degree) return empty;
    return bases[q - min_degree];
  }

  /// Shape |C_{q-1}| x |C_q|; empty outside the supported range.
  IntMatrix boundary(int q) const {
    if (q < min_degree || q > max_degree) return IntMatrix(basis(q - 1).size(), basis(q).size());
    return boundaries[q - min_degree];
  }
};

namespace detail {

inline std::size_t index_of(const std::vector<Mask>& basis, Mask s) {
  auto it = std::lower_bound(basis.begin(), basis.end(), s);
  if (it == basis.end() || *it != s) throw InvariantViolation("face missing from basis");
  return static_cast<std::size_t>(it - basis.begin());
}

/// Boundary matrix |lower| x |upper| between consecutive face lists.
inline IntMatrix boundary_matrix(const std::vector<Mask>& lower, const std::vector<Mask>& upper,
                                 bool to_empty_face) {
  IntMatrix d(lower.size(), upper.size());
  for (std::size_t j = 0; j < upper.size(); ++j) {
    const Mask s = upper[j];
    if (cardinality(s) == 1) {
      if (to_empty_face) d(0, j) = 1;
      continue;
    }
    int position = 0;
    for (Mask rest = s; rest; rest &= rest - 1, ++position) {
      const Mask low = s & ~(rest & (~rest + 1));
      d(index_of(lower, low), j) = (position % 2 == 0) ? 1 : -1;
    }
  }
  return d;
}

}  // namespace detail

/// Faces of K_J grouped by dimension; z = degree offset (dim + 1).
inline std::vector<std::vector<Mask>> faces_by_dimension(const SimplicialComplex& k, Mask j) {
  std::vector<std::vector<Mask>> out(static_cast<std::size_t>(k.dimension() + 2));
  for (const auto& f : k.faces())
    if (is_subset(f.vertices, j)) out[cardinality(f.vertices)].push_back(f.vertices);
  while (out.size() > 1 && out.back().empty()) out.pop_back();
  return out;
}

inline ChainComplexZ chain_complex(const SimplicialComplex& k, Mask j, bool reduced) {
  auto by_dim = faces_by_dimension(k, j);
  ChainComplexZ c;
  c.reduced = reduced;
  c.min_degree = reduced ? -1 : 0;
  c.max_degree = static_cast<int>(by_dim.size()) - 2;
  for (int q = c.min_degree; q <= c.max_degree; ++q) c.bases.push_back(by_dim[q + 1]);
  for (int q = c.min_degree; q <= c.max_degree; ++q) {
    if (q == c.min_degree) {
      c.boundaries.emplace_back(0, c.basis(q).size());
      continue;
    }
    c.boundaries.push_back(detail::boundary_matrix(c.basis(q - 1), c.basis(q), reduced));
  }
  return c;
}

/**
 * H_q(K_J) with an explicit basis.
 *
 * Representatives are cycles in the degree-q face basis, one column per
 * generator: free generators first, then torsion generators. The coordinate
 * matrix sends any cycle to its class in those generators (torsion
 * coordinates are defined modulo the generator's order, recorded in
 * `moduli`; 0 marks a free generator). Over F_p everything is reduced into
 * [0, p) and all moduli are 0.
 *
 * For q = 0 the basis is pinned to components ordered by smallest vertex:
 * unreduced generators are the smallest vertex of each component, reduced
 * generators are (min of c_i) - (min of c_0) for i >= 1.
 */
struct BasedHomology {
  Mask subset = 0;
  int q = 0;
  bool reduced = false;
  Coefficients ring = Coefficients::integers();
  AbelianGroup group;
  std::vector<Mask> basis;
  IntMatrix representatives;  // |basis| x generators
  IntMatrix coordinates;      // generators x |basis|
  std::vector<Integer> moduli;

  std::size_t generators() const { return moduli.size(); }
  std::size_t free_generators() const { return group.free_rank; }

  /// Class of a cycle given in the degree-q face basis.
  IntVector coordinates_of(const IntVector& cycle) const {
    IntVector c = coordinates * cycle;
    for (std::size_t i = 0; i < c.size(); ++i) {
      if (ring.is_prime_field()) {
        mpz_fdiv_r_ui(c[i].get_mpz_t(), c[i].get_mpz_t(), ring.p);
      } else if (moduli[i] != 0) {
        mpz_fdiv_r(c[i].get_mpz_t(), c[i].get_mpz_t(), moduli[i].get_mpz_t());
      }
    }
    return c;
  }
};

/// Map H_q(K_J) -> H_q(K_L) induced by inclusion, J subset of L. Column i
/// holds the target coordinates of source generator i.
struct InducedMap {
  Mask source = 0, target = 0;
  int q = 0;
  IntMatrix matrix;
};

namespace detail {

inline std::vector<std::vector<int>> components(const std::vector<Mask>& vertices,
                                                const std::vector<Mask>& edges) {
  // Union-find over vertex labels.
  std::array<int, kMaxVertices + 1> parent{};
  for (Mask v : vertices) parent[min_vertex(v)] = min_vertex(v);
  auto find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (Mask e : edges) {
    auto vs = vertices_of(e);
    int a = find(vs[0]), b = find(vs[1]);
    if (a != b) parent[std::max(a, b)] = std::min(a, b);
  }
  std::vector<std::vector<int>> comps;
  std::array<int, kMaxVertices + 1> slot{};
  slot.fill(-1);
  for (Mask v : vertices) {  // increasing label, so roots appear first
    int root = find(min_vertex(v));
    if (slot[root] < 0) {
      slot[root] = static_cast<int>(comps.size());
      comps.emplace_back();
    }
    comps[slot[root]].push_back(min_vertex(v));
  }
  return comps;
}

inline BasedHomology degree_zero(Mask j, bool reduced, const Coefficients& ring,
                                 const std::vector<Mask>& vertices, const std::vector<Mask>& edges) {
  BasedHomology h;
  h.subset = j;
  h.q = 0;
  h.reduced = reduced;
  h.ring = ring;
  h.basis = vertices;
  const auto comps = components(vertices, edges);
  const std::size_t c = comps.size();
  const std::size_t g = reduced ? (c == 0 ? 0 : c - 1) : c;
  const std::size_t first = reduced ? 1 : 0;
  const std::size_t n = vertices.size();
  h.representatives = IntMatrix(n, g);
  h.coordinates = IntMatrix(g, n);
  h.moduli.assign(g, 0);
  h.group.free_rank = g;
  auto idx = [&](int v) { return index_of(vertices, vertex_bit(v)); };
  for (std::size_t i = first; i < c; ++i) {
    const std::size_t col = i - first;
    h.representatives(idx(comps[i].front()), col) = 1;
    if (reduced) {
      // -1 is p - 1 over F_p.
      h.representatives(idx(comps[0].front()), col) = ring.is_prime_field() ? Integer(ring.p - 1) : Integer(-1);
    }
    for (int v : comps[i]) h.coordinates(col, idx(v)) = 1;
  }
  return h;
}

/// General integral path through two Smith decompositions.
inline BasedHomology integral_homology(Mask j, int q, bool reduced, std::vector<Mask> basis,
                                       const IntMatrix& d_q, const IntMatrix& d_q1) {
  BasedHomology h;
  h.subset = j;
  h.q = q;
  h.reduced = reduced;
  h.ring = Coefficients::integers();
  const std::size_t n = basis.size();
  h.basis = std::move(basis);

  const auto sq = smith(d_q);
  const std::size_t r = sq.rank, k = n - r;
  const IntMatrix kernel_basis = sq.V.col_block(r, n);    // n x k
  const IntMatrix kernel_coords = sq.V_inv.row_block(r, n);  // k x n
  const IntMatrix presentation = kernel_coords * d_q1;       // k x n_{q+1}
  if (!(kernel_basis * presentation == d_q1))
    throw InvariantViolation("boundaries not inside the cycle lattice");

  const auto sp = smith(presentation);
  const IntMatrix projector = sp.U * kernel_coords;  // k x n
  std::vector<std::size_t> free_ids, torsion_ids;
  for (std::size_t t = 0; t < k; ++t) {
    if (t >= sp.rank) free_ids.push_back(t);
    else if (sp.D(t, t) != 1) torsion_ids.push_back(t);
  }
  std::vector<std::size_t> order = free_ids;
  order.insert(order.end(), torsion_ids.begin(), torsion_ids.end());
  const std::size_t g = order.size();
  h.representatives = IntMatrix(n, g);
  h.coordinates = IntMatrix(g, n);
  h.moduli.assign(g, 0);
  const IntMatrix lifts = kernel_basis * sp.U_inv;  // n x k
  std::vector<Integer> torsion;
  for (std::size_t col = 0; col < g; ++col) {
    const std::size_t t = order[col];
    for (std::size_t i = 0; i < n; ++i) h.representatives(i, col) = lifts(i, t);
    for (std::size_t i = 0; i < n; ++i) h.coordinates(col, i) = projector(t, i);
    if (t < sp.rank) {
      h.moduli[col] = sp.D(t, t);
      torsion.push_back(sp.D(t, t));
    }
  }
  h.group = AbelianGroup::from_invariant_factors(free_ids.size(), torsion);
  return h;
}

/// Row-reduced echelon form mod p, in place. Returns pivot columns.
inline std::vector<std::size_t> rref_mod_p(std::vector<std::uint32_t>& m, std::size_t rows,
                                           std::size_t cols, const PrimeField& f) {
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t piv = r;
    while (piv < rows && m[piv * cols + c] == 0) ++piv;
    if (piv == rows) continue;
    if (piv != r)
      for (std::size_t x = 0; x < cols; ++x) std::swap(m[piv * cols + x], m[r * cols + x]);
    const std::uint32_t inv = f.inv(m[r * cols + c]);
    for (std::size_t x = 0; x < cols; ++x) m[r * cols + x] = f.mul(m[r * cols + x], inv);
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r) continue;
      const std::uint32_t factor = m[i * cols + c];
      if (factor == 0) continue;
      for (std::size_t x = c; x < cols; ++x)
        if (m[r * cols + x]) m[i * cols + x] = f.sub(m[i * cols + x], f.mul(factor, m[r * cols + x]));
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

/// General F_p path: kernel from the reduced echelon form of d_q, then a
/// complement of the boundaries in kernel coordinates.
inline BasedHomology prime_field_homology(Mask j, int q, bool reduced, std::uint32_t p,
                                          std::vector<Mask> basis, const IntMatrix& d_q,
                                          const IntMatrix& d_q1) {
  const PrimeField f(p);
  BasedHomology h;
  h.subset = j;
  h.q = q;
  h.reduced = reduced;
  h.ring = Coefficients::prime(p);
  const std::size_t n = basis.size();
  h.basis = std::move(basis);

  const std::size_t lower = d_q.rows();
  std::vector<std::uint32_t> a(lower * n);
  for (std::size_t i = 0; i < lower; ++i)
    for (std::size_t c = 0; c < n; ++c) a[i * n + c] = f.reduce(d_q(i, c));
  const auto pivots = rref_mod_p(a, lower, n, f);
  std::vector<std::size_t> free_cols;
  {
    std::size_t pi = 0;
    for (std::size_t c = 0; c < n; ++c) {
      if (pi < pivots.size() && pivots[pi] == c) ++pi;
      else free_cols.push_back(c);
    }
  }
  const std::size_t k = free_cols.size();

  // Boundaries restricted to the free columns, transposed: rows are the
  // images of (q+1)-faces in kernel coordinates.
  const std::size_t upper = d_q1.cols();
  std::vector<std::uint32_t> bt(upper * k);
  for (std::size_t b = 0; b < upper; ++b)
    for (std::size_t t = 0; t < k; ++t) bt[b * k + t] = f.reduce(d_q1(free_cols[t], b));
  const auto bpiv = rref_mod_p(bt, upper, k, f);
  std::vector<std::size_t> quotient;
  {
    std::size_t pi = 0;
    for (std::size_t t = 0; t < k; ++t) {
      if (pi < bpiv.size() && bpiv[pi] == t) ++pi;
      else quotient.push_back(t);
    }
  }
  const std::size_t g = quotient.size();
  h.representatives = IntMatrix(n, g);
  h.coordinates = IntMatrix(g, n);
  h.moduli.assign(g, 0);
  h.group.free_rank = g;
  for (std::size_t col = 0; col < g; ++col) {
    const std::size_t t = quotient[col];
    const std::size_t fc = free_cols[t];
    // Kernel vector with a 1 at free column fc.
    h.representatives(fc, col) = 1;
    for (std::size_t i = 0; i < pivots.size(); ++i)
      h.representatives(pivots[i], col) = f.neg(a[i * n + fc]);
    // coord(z) = z_fc - sum_i R'[i][t] z_{free_cols[bpiv_i]}
    std::uint32_t here = 1;
    h.coordinates(col, fc) = here;
    for (std::size_t i = 0; i < bpiv.size(); ++i) {
      const std::uint32_t coef = bt[i * k + t];
      if (coef == 0) continue;
      auto& slot = h.coordinates(col, free_cols[bpiv[i]]);
      slot = f.sub(f.reduce(slot), coef);
    }
  }
  return h;
}

}  // namespace detail

/**
 * Lazily computed homology of all full subcomplexes of one complex.
 *
 * Results are cached by (J, q, reduced). The cache is split into shards
 * behind their own mutexes; two threads racing on the same key both compute
 * and the first insert wins, so every caller sees the same object.
 *
 * The ring is Z or F_p. Rational homology is read off the free part of the
 * integral result.
 */
class HomologyEngine {
 public:
  HomologyEngine(SimplicialComplex k, Coefficients ring) : k_(std::move(k)), ring_(ring) {
    if (ring_.is_rationals()) ring_ = Coefficients::integers();
    faces_by_dim_.resize(static_cast<std::size_t>(k_.dimension() + 2));
    for (const auto& f : k_.faces()) faces_by_dim_[cardinality(f.vertices)].push_back(f.vertices);
  }

  const SimplicialComplex& complex() const { return k_; }
  const Coefficients& ring() const { return ring_; }

  /// H_q(K_J) (or reduced) with a pinned basis.
  std::shared_ptr<const BasedHomology> homology(Mask j, int q, bool reduced) {
    if (q < -1) throw ContractError("homology degree must be >= -1");
    if (q == -1 && !reduced) throw ContractError("degree -1 homology requires the reduced complex");
    const std::uint64_t key = (static_cast<std::uint64_t>(j) << 32) |
                              (static_cast<std::uint64_t>(q + 1) << 1) | (reduced ? 1u : 0u);
    auto& shard = shards_[key % kShards];
    {
      std::lock_guard lock(shard.mutex);
      auto it = shard.map.find(key);
      if (it != shard.map.end()) return it->second;
    }
    auto computed = std::make_shared<const BasedHomology>(compute(j, q, reduced));
    std::lock_guard lock(shard.mutex);
    auto [it, inserted] = shard.map.emplace(key, std::move(computed));
    return it->second;
  }

  /// Map in homology induced by K_J into K_L.
  InducedMap induced_map(Mask j, Mask l, int q, bool reduced) {
    if (!is_subset(j, l)) throw ContractError("induced_map needs J subset of L");
    const auto src = homology(j, q, reduced);
    const auto dst = homology(l, q, reduced);
    InducedMap map;
    map.source = j;
    map.target = l;
    map.q = q;
    map.matrix = IntMatrix(dst->generators(), src->generators());
    IntVector image(dst->basis.size());
    for (std::size_t g = 0; g < src->generators(); ++g) {
      std::fill(image.begin(), image.end(), 0);
      for (std::size_t i = 0; i < src->basis.size(); ++i) {
        const Integer& v = src->representatives(i, g);
        if (v != 0) image[detail::index_of(dst->basis, src->basis[i])] = v;
      }
      const IntVector c = dst->coordinates_of(image);
      for (std::size_t t = 0; t < c.size(); ++t) map.matrix(t, g) = c[t];
    }
    return map;
  }

  /// Boundary of degree q+1 in K_J, used to test membership in the
  /// boundary module.
  IntMatrix boundary(Mask j, int q, bool reduced) const {
    const auto lower = faces(j, q), upper = faces(j, q + 1);
    return detail::boundary_matrix(lower, upper, reduced && q == -1);
  }

  std::vector<Mask> faces(Mask j, int q) const {
    std::vector<Mask> out;
    const std::size_t idx = static_cast<std::size_t>(q + 1);
    if (q < -1 || idx >= faces_by_dim_.size()) return out;
    for (Mask s : faces_by_dim_[idx])
      if (is_subset(s, j)) out.push_back(s);
    return out;
  }

 private:
  BasedHomology compute(Mask j, int q, bool reduced) const {
    if (q == 0) return detail::degree_zero(j, reduced, ring_, faces(j, 0), faces(j, 1));
    std::vector<Mask> basis = faces(j, q);
    const auto lower = faces(j, q - 1);
    const bool to_empty = reduced && q == 0;
    IntMatrix d_q = (q == -1) ? IntMatrix(0, basis.size())
                              : detail::boundary_matrix(lower, basis, to_empty);
    IntMatrix d_q1 = detail::boundary_matrix(basis, faces(j, q + 1), reduced && q == -1);
    if (ring_.is_prime_field())
      return detail::prime_field_homology(j, q, reduced, ring_.p, std::move(basis), d_q, d_q1);
    return detail::integral_homology(j, q, reduced, std::move(basis), d_q, d_q1);
  }

  static constexpr std::size_t kShards = 16;
  struct Shard {
    std::mutex mutex;
    std::unordered_map<std::uint64_t, std::shared_ptr<const BasedHomology>> map;
  };

  SimplicialComplex k_;
  Coefficients ring_;
  std::vector<std::vector<Mask>> faces_by_dim_;
  std::array<Shard, kShards> shards_;
};

/// One-shot helpers over a fresh engine.
inline BasedHomology based_homology(const SimplicialComplex& k, Mask j, int q, bool reduced,
                                    Coefficients ring = Coefficients::integers()) {
  HomologyEngine engine(k, ring);
  return *engine.homology(j, q, reduced);
}

inline InducedMap induced_map(const SimplicialComplex& k, Mask j, Mask l, int q, bool reduced,
                              Coefficients ring = Coefficients::integers()) {
  HomologyEngine engine(k, ring);
  return engine.induced_map(j, l, q, reduced);
}

/**
 * Target coordinates of the image of source generator g, obtained by
 * solving [representatives | boundaries] x = image over Z. This is the
 * slow reference route for induced maps; torsion coordinates are reduced
 * modulo their orders.
 */
inline IntVector induced_coordinates_by_solve(HomologyEngine& engine, Mask j, Mask l, int q,
                                              bool reduced, std::size_t g) {
  const auto src = engine.homology(j, q, reduced);
  const auto dst = engine.homology(l, q, reduced);
  const IntMatrix bnd = engine.boundary(l, q, reduced);
  const std::size_t n = dst->basis.size(), gens = dst->generators();
  IntMatrix stacked(n, gens + bnd.cols());
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t c = 0; c < gens; ++c) stacked(i, c) = dst->representatives(i, c);
    for (std::size_t c = 0; c < bnd.cols(); ++c) stacked(i, gens + c) = bnd(i, c);
  }
  IntVector image(n);
  for (std::size_t i = 0; i < src->basis.size(); ++i)
    if (src->representatives(i, g) != 0)
      image[detail::index_of(dst->basis, src->basis[i])] = src->representatives(i, g);
  auto x = solve_integer(stacked, image);
  if (!x) throw InvariantViolation("image of a cycle is not a combination of generators and boundaries");
  IntVector out(x->begin(), x->begin() + static_cast<std::ptrdiff_t>(gens));
  for (std::size_t c = 0; c < gens; ++c)
    if (dst->moduli[c] != 0) mpz_fdiv_r(out[c].get_mpz_t(), out[c].get_mpz_t(), dst->moduli[c].get_mpz_t());
  return out;
}

/// Reduced simplicial cohomology H~^p(K; Z) for p = -1..dim K, computed
/// straight from coboundary matrices (transposed boundaries).
inline std::vector<AbelianGroup> reduced_simplicial_cohomology(const SimplicialComplex& k) {
  const auto c = chain_complex(k, k.vertex_set(), true);
  std::vector<AbelianGroup> out;
  for (int p = -1; p <= c.max_degree; ++p) {
    // delta^{p-1}: C^{p-1} -> C^p is boundary(p)^T, delta^p is boundary(p+1)^T.
    const IntMatrix d_in = c.boundary(p).transpose();
    const IntMatrix d_out = c.boundary(p + 1).transpose();
    out.push_back(cohomology_at(d_in, d_out));
  }
  return out;
}

}  // namespace posethom
