#pragma once

#include <algorithm>
#include <cstdint>
#include <queue>
#include <utility>
#include <vector>

#include "coefficients.hpp"
#include "errors.hpp"
#include "integer_matrix.hpp"
#include "prime_field.hpp"
#include "smith.hpp"

namespace posethom {

/// Column-major sparse integer matrix; each column is sorted by row index
/// and holds no explicit zeros.
class SparseIntMatrix {
 public:
  using Entry = std::pair<std::uint32_t, Integer>;
  using Column = std::vector<Entry>;

  SparseIntMatrix() = default;
  SparseIntMatrix(std::size_t rows, std::size_t cols) : rows_(rows), columns_(cols) {}

  static SparseIntMatrix from_dense(const IntMatrix& a) {
    SparseIntMatrix s(a.rows(), a.cols());
    for (std::size_t j = 0; j < a.cols(); ++j)
      for (std::size_t i = 0; i < a.rows(); ++i)
        if (a(i, j) != 0) s.columns_[j].emplace_back(static_cast<std::uint32_t>(i), a(i, j));
    return s;
  }

  IntMatrix to_dense() const {
    IntMatrix a(rows_, cols());
    for (std::size_t j = 0; j < cols(); ++j)
      for (const auto& [i, v] : columns_[j]) a(i, j) = v;
    return a;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return columns_.size(); }
  const Column& column(std::size_t j) const { return columns_[j]; }

  /// Replace column j; entries are sorted and zeros dropped.
  void set_column(std::size_t j, Column col) {
    std::sort(col.begin(), col.end(), [](const Entry& a, const Entry& b) { return a.first < b.first; });
    std::erase_if(col, [](const Entry& e) { return e.second == 0; });
    for (const auto& e : col)
      if (e.first >= rows_) throw ContractError("sparse entry out of range");
    columns_[j] = std::move(col);
  }

  std::size_t nonzeros() const {
    std::size_t n = 0;
    for (const auto& c : columns_) n += c.size();
    return n;
  }

  bool is_zero() const { return nonzeros() == 0; }

  /// True when every entry is divisible by p (p = 0 means exact zero).
  bool is_zero_mod(std::uint32_t p) const {
    if (p == 0) return is_zero();
    for (const auto& c : columns_)
      for (const auto& e : c)
        if (!mpz_divisible_ui_p(e.second.get_mpz_t(), p)) return false;
    return true;
  }

  friend SparseIntMatrix operator*(const SparseIntMatrix& a, const SparseIntMatrix& b) {
    if (a.cols() != b.rows()) throw ContractError("sparse product shape mismatch");
    SparseIntMatrix c(a.rows(), b.cols());
    std::vector<Integer> acc(a.rows());
    std::vector<char> touched(a.rows(), 0);
    std::vector<std::uint32_t> rows;
    for (std::size_t j = 0; j < b.cols(); ++j) {
      rows.clear();
      for (const auto& [k, bkj] : b.columns_[j])
        for (const auto& [i, aik] : a.columns_[k]) {
          if (!touched[i]) {
            touched[i] = 1;
            rows.push_back(i);
          }
          acc[i] += aik * bkj;
        }
      std::sort(rows.begin(), rows.end());
      Column col;
      for (auto i : rows) {
        if (acc[i] != 0) col.emplace_back(i, acc[i]);
        acc[i] = 0;
        touched[i] = 0;
      }
      c.columns_[j] = std::move(col);
    }
    return c;
  }

  friend bool operator==(const SparseIntMatrix& a, const SparseIntMatrix& b) {
    return a.rows_ == b.rows_ && a.columns_ == b.columns_;
  }

 private:
  std::size_t rows_ = 0;
  std::vector<Column> columns_;
};

namespace detail {

/**
 * Sparse Gaussian elimination on rows.
 *
 * Columns are visited by increasing current nonzero count (ties to the
 * lowest index); within a column the pivot is the acceptable entry whose
 * row is shortest. Ops decides which entries may serve as pivots: any
 * nonzero over a field, only +-1 over Z (so invariant factors are unchanged
 * up to the removed units).
 */
template <class Value, class Ops>
class SparseEliminator {
 public:
  using Entry = std::pair<std::uint32_t, Value>;
  using Row = std::vector<Entry>;

  SparseEliminator(std::vector<Row> rows, std::size_t cols, Ops ops)
      : rows_(std::move(rows)), ops_(std::move(ops)), col_rows_(cols), col_count_(cols, 0),
        active_(rows_.size(), 1), col_done_(cols, 0) {
    for (std::uint32_t i = 0; i < rows_.size(); ++i)
      for (const auto& e : rows_[i]) {
        col_rows_[e.first].push_back(i);
        ++col_count_[e.first];
      }
  }

  /// Number of pivots taken.
  std::size_t run() {
    using Key = std::pair<std::uint32_t, std::uint32_t>;
    std::priority_queue<Key, std::vector<Key>, std::greater<Key>> heap;
    for (std::uint32_t c = 0; c < col_count_.size(); ++c)
      if (col_count_[c]) heap.emplace(col_count_[c], c);
    std::vector<std::uint32_t> candidates;
    std::size_t pivots = 0;
    while (!heap.empty()) {
      auto [count, c] = heap.top();
      heap.pop();
      if (col_done_[c] || count != col_count_[c] || count == 0) continue;

      candidates.clear();
      for (auto r : col_rows_[c])
        if (active_[r] && find(rows_[r], c) != nullptr) candidates.push_back(r);
      std::sort(candidates.begin(), candidates.end());
      candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());
      col_rows_[c] = candidates;

      std::int64_t best = -1;
      for (auto r : candidates) {
        if (!ops_.acceptable(*find(rows_[r], c))) continue;
        if (best < 0 || rows_[r].size() < rows_[best].size()) best = r;
      }
      if (best < 0) continue;  // re-queued if the column changes later

      const auto p = static_cast<std::uint32_t>(best);
      active_[p] = 0;
      const Value pivot = *find(rows_[p], c);
      for (const auto& e : rows_[p]) --col_count_[e.first];
      for (auto r : candidates) {
        if (r == p) continue;
        const Value f = ops_.factor(*find(rows_[r], c), pivot);
        eliminate(r, p, f);
      }
      col_done_[c] = 1;
      ++pivots;
      for (const auto& e : rows_[p])
        if (!col_done_[e.first] && col_count_[e.first]) heap.emplace(col_count_[e.first], e.first);
      for (auto r : touched_cols_)
        if (!col_done_[r] && col_count_[r]) heap.emplace(col_count_[r], r);
      touched_cols_.clear();
    }
    return pivots;
  }

  /// Active rows that still hold entries, as (row, entries).
  std::vector<const Row*> residual() const {
    std::vector<const Row*> out;
    for (std::size_t i = 0; i < rows_.size(); ++i)
      if (active_[i] && !rows_[i].empty()) out.push_back(&rows_[i]);
    return out;
  }

 private:
  static const Value* find(const Row& row, std::uint32_t c) {
    auto it = std::lower_bound(row.begin(), row.end(), c,
                               [](const Entry& e, std::uint32_t col) { return e.first < col; });
    return (it != row.end() && it->first == c) ? &it->second : nullptr;
  }

  // rows_[r] -= f * rows_[p]
  void eliminate(std::uint32_t r, std::uint32_t p, const Value& f) {
    const Row& src = rows_[p];
    Row& dst = rows_[r];
    Row out;
    out.reserve(dst.size() + src.size());
    std::size_t a = 0, b = 0;
    while (a < dst.size() || b < src.size()) {
      if (b == src.size() || (a < dst.size() && dst[a].first < src[b].first)) {
        out.push_back(std::move(dst[a++]));
      } else if (a == dst.size() || src[b].first < dst[a].first) {
        Value v = ops_.sub_mul(Value{}, f, src[b].second);
        const auto col = src[b].first;
        ++b;
        if (ops_.is_zero(v)) continue;
        ++col_count_[col];
        col_rows_[col].push_back(r);
        touched_cols_.push_back(col);
        out.emplace_back(col, std::move(v));
      } else {
        Value v = ops_.sub_mul(dst[a].second, f, src[b].second);
        const auto col = src[b].first;
        ++a;
        ++b;
        if (ops_.is_zero(v)) {
          --col_count_[col];
          touched_cols_.push_back(col);
          continue;
        }
        out.emplace_back(col, std::move(v));
      }
    }
    dst = std::move(out);
  }

  std::vector<Row> rows_;
  Ops ops_;
  std::vector<std::vector<std::uint32_t>> col_rows_;
  std::vector<std::uint32_t> col_count_;
  std::vector<char> active_;
  std::vector<char> col_done_;
  std::vector<std::uint32_t> touched_cols_;
};

struct UnitPivotOps {
  bool acceptable(const Integer& v) const { return v == 1 || v == -1; }
  Integer factor(const Integer& entry, const Integer& pivot) const { return entry * pivot; }
  Integer sub_mul(const Integer& a, const Integer& f, const Integer& b) const { return a - f * b; }
  bool is_zero(const Integer& v) const { return v == 0; }
};

struct PrimeFieldOps {
  PrimeField field;
  bool acceptable(std::uint32_t v) const { return v != 0; }
  std::uint32_t factor(std::uint32_t entry, std::uint32_t pivot) const {
    return field.mul(entry, field.inv(pivot));
  }
  std::uint32_t sub_mul(std::uint32_t a, std::uint32_t f, std::uint32_t b) const {
    return field.sub(a, field.mul(f, b));
  }
  bool is_zero(std::uint32_t v) const { return v == 0; }
};

template <class Value>
std::vector<std::vector<std::pair<std::uint32_t, Value>>> to_rows(
    const SparseIntMatrix& a, auto&& convert) {
  std::vector<std::vector<std::pair<std::uint32_t, Value>>> rows(a.rows());
  for (std::uint32_t j = 0; j < a.cols(); ++j)
    for (const auto& [i, v] : a.column(j)) {
      Value x = convert(v);
      if (x != Value{}) rows[i].emplace_back(j, std::move(x));
    }
  return rows;
}

}  // namespace detail

/// Rank and invariant factors (> 1) of an integer matrix.
struct IntegerRankProfile {
  std::size_t rank = 0;
  std::vector<Integer> torsion;
};

/// Unit pivots are eliminated sparsely; whatever is left goes through the
/// dense Smith reduction.
inline IntegerRankProfile sparse_invariant_factors(const SparseIntMatrix& a) {
  auto rows = detail::to_rows<Integer>(a, [](const Integer& v) { return v; });
  detail::SparseEliminator<Integer, detail::UnitPivotOps> elim(std::move(rows), a.cols(), {});
  IntegerRankProfile out;
  out.rank = elim.run();
  const auto rest = elim.residual();
  if (rest.empty()) return out;
  std::vector<std::uint32_t> col_ids;
  for (const auto* row : rest)
    for (const auto& e : *row) col_ids.push_back(e.first);
  std::sort(col_ids.begin(), col_ids.end());
  col_ids.erase(std::unique(col_ids.begin(), col_ids.end()), col_ids.end());
  IntMatrix dense(rest.size(), col_ids.size());
  for (std::size_t i = 0; i < rest.size(); ++i)
    for (const auto& e : *rest[i]) {
      auto j = std::lower_bound(col_ids.begin(), col_ids.end(), e.first) - col_ids.begin();
      dense(i, j) = e.second;
    }
  const auto factors = dense_invariant_factors(std::move(dense));
  out.rank += factors.size();
  for (const auto& d : factors)
    if (d > 1) out.torsion.push_back(d);
  return out;
}

inline std::size_t sparse_rank_mod_p(const SparseIntMatrix& a, std::uint32_t p) {
  const PrimeField f(p);
  auto rows = detail::to_rows<std::uint32_t>(a, [&](const Integer& v) { return f.reduce(v); });
  detail::SparseEliminator<std::uint32_t, detail::PrimeFieldOps> elim(std::move(rows), a.cols(),
                                                                      detail::PrimeFieldOps{f});
  return elim.run();
}

/// Rank over Q or F_p.
inline std::size_t sparse_rank(const SparseIntMatrix& a, const Coefficients& field) {
  switch (field.kind) {
    case Coefficients::Kind::Rationals: return sparse_invariant_factors(a).rank;
    case Coefficients::Kind::Prime: return sparse_rank_mod_p(a, field.p);
    case Coefficients::Kind::Integers: break;
  }
  throw ContractError("sparse_rank needs a field (Q or F_p)");
}

}  // namespace posethom
