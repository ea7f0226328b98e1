#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "bits.hpp"
#include "coefficients.hpp"
#include "errors.hpp"
#include "integer_matrix.hpp"
#include "parallel.hpp"
#include "smith.hpp"
#include "sparse.hpp"

namespace posethom {

/// Functors store one matrix per cover relation, m * 2^(m-1) of them.
inline constexpr int kMaxFunctorVertices = 16;

/**
 * A functor 2^[m] -> Ab with free values, given by bases.
 *
 * dims[J] is the rank of F(J). For every cover J < J+{x} there is a matrix
 * of shape dims[J+x] x dims[J]. When `modulus` is set the entries are
 * elements of F_p and the functor takes values in F_p-vector spaces.
 */
struct BasedFunctor {
  int m = 0;
  std::optional<std::uint32_t> modulus;
  std::string name;
  std::vector<std::size_t> dims;
  std::vector<IntMatrix> maps;  // index J * m + (x - 1), x not in J

  BasedFunctor() = default;
  BasedFunctor(int m_, std::string name_) : m(m_), name(std::move(name_)) {
    if (m < 1 || m > kMaxFunctorVertices)
      throw InputError("functor needs 1 <= m <= " + std::to_string(kMaxFunctorVertices));
    dims.assign(std::size_t{1} << m, 0);
    maps.resize((std::size_t{1} << m) * static_cast<std::size_t>(m));
  }

  std::size_t num_subsets() const { return dims.size(); }

  const IntMatrix& map(Mask j, int x) const { return maps[cover_index(j, x)]; }
  IntMatrix& map(Mask j, int x) { return maps[cover_index(j, x)]; }

  /// Sizes every cover map to the current dims (all zero).
  void allocate_maps() {
    for (Mask j = 0; j < num_subsets(); ++j)
      for (int x = 1; x <= m; ++x)
        if (!(j & vertex_bit(x))) map(j, x) = IntMatrix(dims[j | vertex_bit(x)], dims[j]);
  }

 private:
  std::size_t cover_index(Mask j, int x) const {
    if (x < 1 || x > m || (j & vertex_bit(x))) throw ContractError("not a cover relation");
    return static_cast<std::size_t>(j) * m + (x - 1);
  }
};

/// A cover square J < J+x, J+y < J+x+y whose two composites differ.
struct NonCommutingSquare {
  Mask base = 0;
  int x = 0, y = 0;
  std::string to_string() const {
    return "square over J=" + mask_to_string(base) + " with x=" + std::to_string(x) +
           ", y=" + std::to_string(y) + " does not commute";
  }
};

class NonFunctorialError : public ContractError {
 public:
  explicit NonFunctorialError(const NonCommutingSquare& s)
      : ContractError(s.to_string()), square(s) {}
  NonCommutingSquare square;
};

namespace detail {

inline bool equal_mod(const IntMatrix& a, const IntMatrix& b, std::optional<std::uint32_t> p) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) return false;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) {
      Integer diff = a(i, j) - b(i, j);
      if (p ? !mpz_divisible_ui_p(diff.get_mpz_t(), *p) : diff != 0) return false;
    }
  return true;
}

}  // namespace detail

/// First square (in bitmask order of J, then x < y) that fails to commute.
inline std::optional<NonCommutingSquare> find_noncommuting_square(const BasedFunctor& f) {
  for (Mask j = 0; j < f.num_subsets(); ++j)
    for (int x = 1; x <= f.m; ++x) {
      if (j & vertex_bit(x)) continue;
      for (int y = x + 1; y <= f.m; ++y) {
        if (j & vertex_bit(y)) continue;
        const IntMatrix via_x = f.map(j | vertex_bit(x), y) * f.map(j, x);
        const IntMatrix via_y = f.map(j | vertex_bit(y), x) * f.map(j, y);
        if (!detail::equal_mod(via_x, via_y, f.modulus)) return NonCommutingSquare{j, x, y};
      }
    }
  return std::nullopt;
}

/**
 * C^l(F) = sum over |J| = l of F(J), blocks ordered by bitmask value of J,
 * with differential d^l: C^l -> C^{l+1}.
 */
struct CochainComplexZ {
  int m = 0;
  std::optional<std::uint32_t> modulus;
  std::vector<std::size_t> dims;                // l = 0..m
  std::vector<std::vector<Mask>> blocks;        // subsets of size l
  std::vector<std::size_t> offset;              // start of F(J) inside C^{|J|}
  std::vector<SparseIntMatrix> differentials;   // l = 0..m-1

  /// d^l for any l; zero maps outside 0..m-1.
  SparseIntMatrix differential(int l) const {
    if (l >= 0 && l < m) return differentials[l];
    const std::size_t src = (l >= 0 && l <= m) ? dims[l] : 0;
    const std::size_t dst = (l + 1 >= 0 && l + 1 <= m) ? dims[l + 1] : 0;
    return SparseIntMatrix(dst, src);
  }
};

struct AssembleOptions {
  bool check_dd = true;
  int threads = 1;
};

inline CochainComplexZ assemble(const BasedFunctor& f, const AssembleOptions& opt = {}) {
  CochainComplexZ c;
  c.m = f.m;
  c.modulus = f.modulus;
  c.dims.assign(f.m + 1, 0);
  c.offset.assign(f.num_subsets(), 0);
  for (int l = 0; l <= f.m; ++l) {
    c.blocks.push_back(subsets_of_size(f.m, l));
    std::size_t pos = 0;
    for (Mask j : c.blocks[l]) {
      c.offset[j] = pos;
      pos += f.dims[j];
    }
    c.dims[l] = pos;
  }
  for (int l = 0; l < f.m; ++l) {
    SparseIntMatrix d(c.dims[l + 1], c.dims[l]);
    const auto& sources = c.blocks[l];
    parallel_for(sources.size(), opt.threads, [&](std::size_t s) {
      const Mask j = sources[s];
      for (std::size_t col = 0; col < f.dims[j]; ++col) {
        SparseIntMatrix::Column column;
        for (int x = 1; x <= f.m; ++x) {
          if (j & vertex_bit(x)) continue;
          const Mask target = j | vertex_bit(x);
          const bool negative = epsilon(j, x) % 2 == 1;
          const IntMatrix& block = f.map(j, x);
          for (std::size_t row = 0; row < block.rows(); ++row) {
            Integer v = block(row, col);
            if (v == 0) continue;
            if (negative) v = f.modulus ? Integer(*f.modulus) - v : Integer(-v);
            column.emplace_back(static_cast<std::uint32_t>(c.offset[target] + row), std::move(v));
          }
        }
        d.set_column(c.offset[j] + col, std::move(column));
      }
    });
    c.differentials.push_back(std::move(d));
  }
  if (opt.check_dd) {
    const std::uint32_t p = f.modulus.value_or(0);
    for (int l = 0; l + 1 < f.m; ++l) {
      if ((c.differentials[l + 1] * c.differentials[l]).is_zero_mod(p)) continue;
      if (auto sq = find_noncommuting_square(f)) throw NonFunctorialError(*sq);
      throw InvariantViolation("d o d != 0 although every square commutes");
    }
  }
  return c;
}

namespace detail {

inline std::uint32_t modulus_for(const std::optional<std::uint32_t>& functor_modulus,
                                 const Coefficients& coeffs) {
  if (functor_modulus) {
    if (!coeffs.is_prime_field() || coeffs.p != *functor_modulus)
      throw RegimeError("functor has F_" + std::to_string(*functor_modulus) +
                        " values; coefficients must be Fp:" + std::to_string(*functor_modulus));
  }
  return coeffs.is_prime_field() ? coeffs.p : 0;
}

}  // namespace detail

/// H^l = ker d^l / im d^{l-1} for l = 0..m, with d^{-1} = 0 and d^m = 0.
/// Over a field only free_rank (the dimension) is populated.
inline std::vector<AbelianGroup> cochain_cohomology(const CochainComplexZ& c, const Coefficients& coeffs,
                                                    int threads = 1) {
  detail::modulus_for(c.modulus, coeffs);
  const int m = c.m;
  std::vector<IntegerRankProfile> profiles(m);
  parallel_for(static_cast<std::size_t>(m), threads, [&](std::size_t l) {
    if (coeffs.is_integers()) profiles[l] = sparse_invariant_factors(c.differentials[l]);
    else profiles[l].rank = sparse_rank(c.differentials[l], coeffs);
  });
  std::vector<AbelianGroup> out(m + 1);
  for (int l = 0; l <= m; ++l) {
    const std::size_t out_rank = l < m ? profiles[l].rank : 0;
    const std::size_t in_rank = l > 0 ? profiles[l - 1].rank : 0;
    out[l].free_rank = c.dims[l] - out_rank - in_rank;
    if (l > 0 && coeffs.is_integers()) out[l].torsion = profiles[l - 1].torsion;
  }
  return out;
}

inline std::vector<AbelianGroup> poset_cohomology(const BasedFunctor& f, const Coefficients& coeffs,
                                                  const AssembleOptions& opt = {}) {
  detail::modulus_for(f.modulus, coeffs);
  return cochain_cohomology(assemble(f, opt), coeffs, opt.threads);
}

/// Outcome of the cone test: some direction x makes every cover J < J+x
/// (x not in J) an isomorphism, which forces H^*(F) = 0.
struct ConeCertificate {
  bool certified = false;
  int direction = 0;
};

inline bool is_isomorphism(const IntMatrix& a, std::optional<std::uint32_t> modulus) {
  if (a.rows() != a.cols()) return false;
  if (a.rows() == 0) return true;
  if (modulus) return dense_rank_mod_p(a, *modulus) == a.rows();
  const auto factors = dense_invariant_factors(a);
  if (factors.size() != a.rows()) return false;
  for (const auto& d : factors)
    if (d != 1) return false;
  return true;
}

inline ConeCertificate cone_acyclicity_check(const BasedFunctor& f) {
  for (int x = 1; x <= f.m; ++x) {
    bool all_iso = true;
    for (Mask j = 0; j < f.num_subsets() && all_iso; ++j) {
      if (j & vertex_bit(x)) continue;
      all_iso = is_isomorphism(f.map(j, x), f.modulus);
    }
    if (all_iso) return {true, x};
  }
  return {};
}

/**
 * A natural transformation between two based functors on the same 2^[m]:
 * one matrix per subset, shape target.dims[J] x source.dims[J].
 */
struct NaturalTransformation {
  std::vector<IntMatrix> components;
};

/// First subset-and-direction where eta fails to be natural.
inline std::optional<std::pair<Mask, int>> find_unnatural_cover(const BasedFunctor& source,
                                                                const BasedFunctor& target,
                                                                const NaturalTransformation& eta) {
  for (Mask j = 0; j < source.num_subsets(); ++j)
    for (int x = 1; x <= source.m; ++x) {
      if (j & vertex_bit(x)) continue;
      const IntMatrix lhs = target.map(j, x) * eta.components[j];
      const IntMatrix rhs = eta.components[j | vertex_bit(x)] * source.map(j, x);
      if (!detail::equal_mod(lhs, rhs, target.modulus)) return std::pair{j, x};
    }
  return std::nullopt;
}

/// The degree-l component C^l(source) -> C^l(target): block diagonal.
inline SparseIntMatrix cochain_map(const CochainComplexZ& source, const CochainComplexZ& target,
                                   const NaturalTransformation& eta, int l) {
  SparseIntMatrix out(target.dims[l], source.dims[l]);
  for (Mask j : source.blocks[l]) {
    const IntMatrix& block = eta.components[j];
    for (std::size_t col = 0; col < block.cols(); ++col) {
      SparseIntMatrix::Column column;
      for (std::size_t row = 0; row < block.rows(); ++row)
        if (block(row, col) != 0)
          column.emplace_back(static_cast<std::uint32_t>(target.offset[j] + row), block(row, col));
      out.set_column(source.offset[j] + col, std::move(column));
    }
  }
  return out;
}

}  // namespace posethom
