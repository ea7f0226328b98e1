#pragma once

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "coefficients.hpp"
#include "errors.hpp"
#include "integer_matrix.hpp"
#include "prime_field.hpp"

namespace posethom {

/**
 * Smith normal form U * A * V = D of an integer matrix.
 *
 * U and V are unimodular; their inverses are accumulated alongside so that
 * callers can move between bases without a second elimination. The first
 * `rank` diagonal entries of D are the invariant factors d_1 | d_2 | ...,
 * all positive.
 */
struct SmithDecomposition {
  IntMatrix U, V, D;
  IntMatrix U_inv, V_inv;
  std::size_t rank = 0;

  std::vector<Integer> invariant_factors() const {
    std::vector<Integer> out;
    out.reserve(rank);
    for (std::size_t i = 0; i < rank; ++i) out.push_back(D(i, i));
    return out;
  }
};

namespace detail {

/// In-place Smith reduction of D. Transform pointers may be null.
/// Pivot rule: smallest nonzero magnitude, ties to the lowest (row, col).
class SmithReducer {
 public:
  SmithReducer(IntMatrix& d, IntMatrix* u, IntMatrix* u_inv, IntMatrix* v, IntMatrix* v_inv)
      : d_(d), u_(u), u_inv_(u_inv), v_(v), v_inv_(v_inv) {}

  std::size_t run() {
    const std::size_t n_rows = d_.rows(), n_cols = d_.cols();
    std::size_t t = 0;
    for (; t < n_rows && t < n_cols; ++t) {
      auto piv = smallest_in_block(t);
      if (!piv) break;
      move_to(t, piv->first, piv->second);
      while (true) {
        clear_column_and_row(t);
        auto rem = smallest_in_cross(t);
        if (rem) {
          move_to(t, rem->first, rem->second);
          continue;
        }
        auto bad = non_multiple(t);
        if (bad) {
          add_row(t, *bad, 1);
          continue;
        }
        break;
      }
      if (d_(t, t) < 0) negate_row(t);
    }
    return t;
  }

 private:
  using Pos = std::pair<std::size_t, std::size_t>;

  std::optional<Pos> smallest_in_block(std::size_t t) const {
    std::optional<Pos> best;
    Integer best_abs;
    for (std::size_t i = t; i < d_.rows(); ++i)
      for (std::size_t j = t; j < d_.cols(); ++j) {
        const Integer& x = d_(i, j);
        if (x == 0) continue;
        if (!best || mpz_cmpabs(x.get_mpz_t(), best_abs.get_mpz_t()) < 0) {
          best = Pos{i, j};
          best_abs = abs(x);
          if (best_abs == 1) return best;
        }
      }
    return best;
  }

  // Nonzero entries left in row t or column t after division, which are
  // strictly smaller than the pivot.
  std::optional<Pos> smallest_in_cross(std::size_t t) const {
    std::optional<Pos> best;
    Integer best_abs = abs(d_(t, t));
    for (std::size_t i = t + 1; i < d_.rows(); ++i)
      if (d_(i, t) != 0 && mpz_cmpabs(d_(i, t).get_mpz_t(), best_abs.get_mpz_t()) < 0) {
        best = Pos{i, t};
        best_abs = abs(d_(i, t));
      }
    for (std::size_t j = t + 1; j < d_.cols(); ++j)
      if (d_(t, j) != 0 && mpz_cmpabs(d_(t, j).get_mpz_t(), best_abs.get_mpz_t()) < 0) {
        best = Pos{t, j};
        best_abs = abs(d_(t, j));
      }
    return best;
  }

  std::optional<std::size_t> non_multiple(std::size_t t) const {
    const Integer& p = d_(t, t);
    if (abs(p) == 1) return std::nullopt;
    for (std::size_t i = t + 1; i < d_.rows(); ++i)
      for (std::size_t j = t + 1; j < d_.cols(); ++j)
        if (d_(i, j) != 0 && !mpz_divisible_p(d_(i, j).get_mpz_t(), p.get_mpz_t())) return i;
    return std::nullopt;
  }

  void clear_column_and_row(std::size_t t) {
    Integer q;
    for (std::size_t i = t + 1; i < d_.rows(); ++i) {
      if (d_(i, t) == 0) continue;
      mpz_tdiv_q(q.get_mpz_t(), d_(i, t).get_mpz_t(), d_(t, t).get_mpz_t());
      if (q != 0) add_row(i, t, -q);
    }
    for (std::size_t j = t + 1; j < d_.cols(); ++j) {
      if (d_(t, j) == 0) continue;
      mpz_tdiv_q(q.get_mpz_t(), d_(t, j).get_mpz_t(), d_(t, t).get_mpz_t());
      if (q != 0) add_col(j, t, -q);
    }
  }

  void move_to(std::size_t t, std::size_t i, std::size_t j) {
    if (i != t) swap_rows(i, t);
    if (j != t) swap_cols(j, t);
  }

  // row_i += k * row_j
  void add_row(std::size_t i, std::size_t j, const Integer& k) {
    for (std::size_t c = 0; c < d_.cols(); ++c)
      if (d_(j, c) != 0) d_(i, c) += k * d_(j, c);
    if (u_)
      for (std::size_t c = 0; c < u_->cols(); ++c)
        if ((*u_)(j, c) != 0) (*u_)(i, c) += k * (*u_)(j, c);
    if (u_inv_)
      for (std::size_t r = 0; r < u_inv_->rows(); ++r)
        if ((*u_inv_)(r, i) != 0) (*u_inv_)(r, j) -= k * (*u_inv_)(r, i);
  }

  // col_i += k * col_j
  void add_col(std::size_t i, std::size_t j, const Integer& k) {
    for (std::size_t r = 0; r < d_.rows(); ++r)
      if (d_(r, j) != 0) d_(r, i) += k * d_(r, j);
    if (v_)
      for (std::size_t r = 0; r < v_->rows(); ++r)
        if ((*v_)(r, j) != 0) (*v_)(r, i) += k * (*v_)(r, j);
    if (v_inv_)
      for (std::size_t c = 0; c < v_inv_->cols(); ++c)
        if ((*v_inv_)(i, c) != 0) (*v_inv_)(j, c) -= k * (*v_inv_)(i, c);
  }

  void swap_rows(std::size_t a, std::size_t b) {
    for (std::size_t c = 0; c < d_.cols(); ++c) d_(a, c).swap(d_(b, c));
    if (u_)
      for (std::size_t c = 0; c < u_->cols(); ++c) (*u_)(a, c).swap((*u_)(b, c));
    if (u_inv_)
      for (std::size_t r = 0; r < u_inv_->rows(); ++r) (*u_inv_)(r, a).swap((*u_inv_)(r, b));
  }

  void swap_cols(std::size_t a, std::size_t b) {
    for (std::size_t r = 0; r < d_.rows(); ++r) d_(r, a).swap(d_(r, b));
    if (v_)
      for (std::size_t r = 0; r < v_->rows(); ++r) (*v_)(r, a).swap((*v_)(r, b));
    if (v_inv_)
      for (std::size_t c = 0; c < v_inv_->cols(); ++c) (*v_inv_)(a, c).swap((*v_inv_)(b, c));
  }

  void negate_row(std::size_t i) {
    for (std::size_t c = 0; c < d_.cols(); ++c) d_(i, c) = -d_(i, c);
    if (u_)
      for (std::size_t c = 0; c < u_->cols(); ++c) (*u_)(i, c) = -(*u_)(i, c);
    if (u_inv_)
      for (std::size_t r = 0; r < u_inv_->rows(); ++r) (*u_inv_)(r, i) = -(*u_inv_)(r, i);
  }

  IntMatrix& d_;
  IntMatrix *u_, *u_inv_, *v_, *v_inv_;
};

}  // namespace detail

/// Full decomposition with transforms and their inverses.
inline SmithDecomposition smith(const IntMatrix& a) {
  SmithDecomposition s;
  s.D = a;
  s.U = IntMatrix::identity(a.rows());
  s.U_inv = IntMatrix::identity(a.rows());
  s.V = IntMatrix::identity(a.cols());
  s.V_inv = IntMatrix::identity(a.cols());
  s.rank = detail::SmithReducer(s.D, &s.U, &s.U_inv, &s.V, &s.V_inv).run();
  return s;
}

/// Nonzero invariant factors only (no transforms kept).
inline std::vector<Integer> dense_invariant_factors(IntMatrix a) {
  const std::size_t r = detail::SmithReducer(a, nullptr, nullptr, nullptr, nullptr).run();
  std::vector<Integer> out;
  out.reserve(r);
  for (std::size_t i = 0; i < r; ++i) out.push_back(a(i, i));
  return out;
}

/// x with A x = b over Z, or nullopt when no integer solution exists.
inline std::optional<IntVector> solve_integer(const IntMatrix& a, const IntVector& b) {
  if (b.size() != a.rows()) throw ContractError("solve_integer: shape mismatch");
  const auto s = smith(a);
  const IntVector y = s.U * b;
  IntVector z(a.cols());
  for (std::size_t i = 0; i < y.size(); ++i) {
    if (i < s.rank) {
      if (!mpz_divisible_p(y[i].get_mpz_t(), s.D(i, i).get_mpz_t())) return std::nullopt;
      mpz_divexact(z[i].get_mpz_t(), y[i].get_mpz_t(), s.D(i, i).get_mpz_t());
    } else if (y[i] != 0) {
      return std::nullopt;
    }
  }
  return s.V * z;
}

/// Rank of A over F_p by dense Gaussian elimination.
inline std::size_t dense_rank_mod_p(const IntMatrix& a, std::uint32_t p) {
  const PrimeField f(p);
  const std::size_t rows = a.rows(), cols = a.cols();
  std::vector<std::uint32_t> m(rows * cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) m[i * cols + j] = f.reduce(a(i, j));
  std::size_t rank = 0;
  for (std::size_t c = 0; c < cols && rank < rows; ++c) {
    std::size_t piv = rank;
    while (piv < rows && m[piv * cols + c] == 0) ++piv;
    if (piv == rows) continue;
    for (std::size_t j = 0; j < cols; ++j) std::swap(m[piv * cols + j], m[rank * cols + j]);
    const std::uint32_t inv = f.inv(m[rank * cols + c]);
    for (std::size_t i = rank + 1; i < rows; ++i) {
      const std::uint32_t factor = f.mul(m[i * cols + c], inv);
      if (factor == 0) continue;
      for (std::size_t j = c; j < cols; ++j)
        m[i * cols + j] = f.sub(m[i * cols + j], f.mul(factor, m[rank * cols + j]));
    }
    ++rank;
  }
  return rank;
}

/// Rank over Q or F_p. Integer coefficients are not a field and rejected.
inline std::size_t rank_mod(const IntMatrix& a, const Coefficients& field) {
  switch (field.kind) {
    case Coefficients::Kind::Rationals: return dense_invariant_factors(a).size();
    case Coefficients::Kind::Prime: return dense_rank_mod_p(a, field.p);
    case Coefficients::Kind::Integers: break;
  }
  throw ContractError("rank_mod needs a field (Q or F_p)");
}

inline std::size_t rank_mod(const IntMatrix& a, std::uint64_t p) {
  return rank_mod(a, Coefficients::prime(p));
}

/**
 * ker(d_out) / im(d_in) for Z^a --d_in--> Z^n --d_out--> Z^b.
 *
 * Z^n / ker(d_out) embeds in Z^b and is free, so the torsion of the
 * quotient is the torsion of coker(d_in).
 */
inline AbelianGroup cohomology_at(const IntMatrix& d_in, const IntMatrix& d_out) {
  if (d_in.rows() != d_out.cols()) throw ContractError("cohomology_at: shapes do not compose");
  if (!(d_out * d_in).is_zero()) throw ContractError("cohomology_at: d_out * d_in != 0");
  const auto in_factors = dense_invariant_factors(d_in);
  const auto out_rank = dense_invariant_factors(d_out).size();
  const std::size_t n = d_in.rows();
  return AbelianGroup::from_invariant_factors(n - out_rank - in_factors.size(), in_factors);
}

}  // namespace posethom
