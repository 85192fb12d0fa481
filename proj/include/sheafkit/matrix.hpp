// Exact matrices over a field and the elimination kernel behind rank,
// kernels, cokernels and linear solves.
//
// Small per-cell maps are dense Eigen matrices (`Mat<S>`); assembled global
// maps (differentials, equalizer systems) are Eigen sparse matrices
// (`SpMat<S>`). Elimination is exact and never inspects magnitudes, so the
// pivot order (and hence every chosen basis) depends only on the sparsity
// pattern and the column order.

#ifndef SHEAFKIT_MATRIX_HPP
#define SHEAFKIT_MATRIX_HPP

#include <algorithm>
#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/Sparse>

#include "sheafkit/field.hpp"

namespace sheafkit {

using Index = Eigen::Index;

template <class S>
using Mat = Eigen::Matrix<S, Eigen::Dynamic, Eigen::Dynamic>;
template <class S>
using Vec = Eigen::Matrix<S, Eigen::Dynamic, 1>;
template <class S>
using SpMat = Eigen::SparseMatrix<S, Eigen::ColMajor, Index>;
template <class S>
using Triplet = Eigen::Triplet<S, Index>;

class ShapeError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// ---------------------------------------------------------------------------
// Small helpers

template <class S>
Mat<S> zeros(Index rows, Index cols) {
  return Mat<S>::Constant(rows, cols, S(0));
}

template <class S>
Mat<S> identity(Index n) {
  Mat<S> m = zeros<S>(n, n);
  for (Index i = 0; i < n; ++i) m(i, i) = S(1);
  return m;
}

template <class S>
bool is_zero(const Mat<S>& m) {
  for (Index j = 0; j < m.cols(); ++j)
    for (Index i = 0; i < m.rows(); ++i)
      if (!is_zero(m(i, j))) return false;
  return true;
}

template <class S>
bool is_zero(const SpMat<S>& m) {
  for (Index k = 0; k < m.outerSize(); ++k)
    for (typename SpMat<S>::InnerIterator it(m, k); it; ++it)
      if (!is_zero(it.value())) return false;
  return true;
}

template <class S>
void prune(SpMat<S>& m) {
  m.prune([](const Index&, const Index&, const S& v) { return !is_zero(v); });
}

template <class S>
SpMat<S> sparse(const Mat<S>& m) {
  std::vector<Triplet<S>> t;
  for (Index j = 0; j < m.cols(); ++j)
    for (Index i = 0; i < m.rows(); ++i)
      if (!is_zero(m(i, j))) t.emplace_back(i, j, m(i, j));
  SpMat<S> out(m.rows(), m.cols());
  out.setFromTriplets(t.begin(), t.end());
  return out;
}

template <class S>
Mat<S> dense(const SpMat<S>& m) {
  Mat<S> out = zeros<S>(m.rows(), m.cols());
  for (Index k = 0; k < m.outerSize(); ++k)
    for (typename SpMat<S>::InnerIterator it(m, k); it; ++it) out(it.row(), it.col()) = it.value();
  return out;
}

template <class S>
SpMat<S> sparse_zero(Index rows, Index cols) {
  return SpMat<S>(rows, cols);
}

template <class S>
SpMat<S> sparse_identity(Index n) {
  std::vector<Triplet<S>> t;
  t.reserve(static_cast<std::size_t>(n));
  for (Index i = 0; i < n; ++i) t.emplace_back(i, i, S(1));
  SpMat<S> out(n, n);
  out.setFromTriplets(t.begin(), t.end());
  return out;
}

/// Exact product with cancellations removed from the pattern.
template <class S>
SpMat<S> multiply(const SpMat<S>& a, const SpMat<S>& b) {
  if (a.cols() != b.rows()) {
    throw ShapeError("cannot multiply " + std::to_string(a.rows()) + "x" + std::to_string(a.cols()) +
                     " by " + std::to_string(b.rows()) + "x" + std::to_string(b.cols()));
  }
  SpMat<S> out = (a * b).eval();
  prune(out);
  return out;
}

template <class S>
Mat<S> multiply(const Mat<S>& a, const Mat<S>& b) {
  if (a.cols() != b.rows()) {
    throw ShapeError("cannot multiply " + std::to_string(a.rows()) + "x" + std::to_string(a.cols()) +
                     " by " + std::to_string(b.rows()) + "x" + std::to_string(b.cols()));
  }
  if (a.cols() == 0) return zeros<S>(a.rows(), b.cols());
  return a * b;
}

/// Appends `block` scaled by `scale` at (row0, col0) to a triplet list.
template <class S>
void add_block(std::vector<Triplet<S>>& out, Index row0, Index col0, const Mat<S>& block,
               const S& scale = S(1)) {
  for (Index j = 0; j < block.cols(); ++j)
    for (Index i = 0; i < block.rows(); ++i)
      if (!is_zero(block(i, j))) out.emplace_back(row0 + i, col0 + j, scale * block(i, j));
}

template <class S>
void add_block(std::vector<Triplet<S>>& out, Index row0, Index col0, const SpMat<S>& block,
               const S& scale = S(1)) {
  for (Index k = 0; k < block.outerSize(); ++k)
    for (typename SpMat<S>::InnerIterator it(block, k); it; ++it)
      out.emplace_back(row0 + it.row(), col0 + it.col(), scale * it.value());
}

template <class S>
SpMat<S> from_triplets(Index rows, Index cols, const std::vector<Triplet<S>>& t) {
  SpMat<S> out(rows, cols);
  out.setFromTriplets(t.begin(), t.end());
  prune(out);
  return out;
}

/// Rows `first .. first+count` of a column-major sparse matrix.
template <class S>
SpMat<S> row_block(const SpMat<S>& m, Index first, Index count) {
  std::vector<Triplet<S>> t;
  for (Index k = 0; k < m.outerSize(); ++k)
    for (typename SpMat<S>::InnerIterator it(m, k); it; ++it)
      if (it.row() >= first && it.row() < first + count) t.emplace_back(it.row() - first, it.col(), it.value());
  return from_triplets<S>(count, m.cols(), t);
}

template <class S>
SpMat<S> col_block(const SpMat<S>& m, Index first, Index count) {
  std::vector<Triplet<S>> t;
  for (Index k = first; k < first + count; ++k)
    for (typename SpMat<S>::InnerIterator it(m, k); it; ++it) t.emplace_back(it.row(), k - first, it.value());
  return from_triplets<S>(m.rows(), count, t);
}

template <class S>
SpMat<S> transpose(const SpMat<S>& m) {
  return SpMat<S>(m.transpose());
}

// ---------------------------------------------------------------------------
// Elimination

template <class S>
using SparseRow = std::vector<std::pair<Index, S>>;

/// Incremental row reduction over an exact field.
///
/// Rows are fed one at a time; each is reduced against the pivots found so far
/// by repeatedly cancelling its leading entry. Independent rows become new
/// pivots, normalised to a leading 1. `reduce()` back-substitutes so that the
/// stored pivot rows form the reduced row echelon form of everything added.
template <class S>
class RowReducer {
 public:
  explicit RowReducer(Index cols) : cols_(cols), pivot_of_col_(static_cast<std::size_t>(cols), -1) {}

  Index cols() const { return cols_; }
  Index rank() const { return static_cast<Index>(rows_.size()); }

  /// Returns true when `row` was independent of the rows already added.
  bool add(SparseRow<S> row) {
    std::sort(row.begin(), row.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    drop_zeros(row);
    while (!row.empty()) {
      Index lead = row.front().first;
      std::ptrdiff_t p = pivot_of_col_[static_cast<std::size_t>(lead)];
      if (p < 0) break;
      S factor = row.front().second;
      row = axpy(row, -factor, rows_[static_cast<std::size_t>(p)]);
    }
    if (row.empty()) return false;
    S inv = inverse(row.front().second);
    for (auto& e : row) e.second *= inv;
    pivot_of_col_[static_cast<std::size_t>(row.front().first)] = static_cast<std::ptrdiff_t>(rows_.size());
    pivot_cols_.push_back(row.front().first);
    rows_.push_back(std::move(row));
    reduced_ = false;
    return true;
  }

  /// Brings the pivot rows into reduced row echelon form.
  void reduce() {
    if (reduced_) return;
    std::vector<std::size_t> order(rows_.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return pivot_cols_[a] > pivot_cols_[b]; });
    // Rows with larger pivots are reduced first, so each later row only has
    // to cancel entries at already-clean pivot columns.
    for (std::size_t idx : order) {
      SparseRow<S>& row = rows_[idx];
      bool changed = true;
      while (changed) {
        changed = false;
        for (std::size_t k = 1; k < row.size(); ++k) {
          std::ptrdiff_t p = pivot_of_col_[static_cast<std::size_t>(row[k].first)];
          if (p >= 0) {
            S factor = row[k].second;
            row = axpy(row, -factor, rows_[static_cast<std::size_t>(p)]);
            changed = true;
            break;
          }
        }
      }
    }
    reduced_ = true;
  }

  bool is_pivot(Index col) const { return pivot_of_col_[static_cast<std::size_t>(col)] >= 0; }

  /// Pivot rows in increasing pivot-column order (RREF after `reduce()`).
  std::vector<const SparseRow<S>*> sorted_rows() const {
    std::vector<const SparseRow<S>*> out;
    for (Index c = 0; c < cols_; ++c) {
      std::ptrdiff_t p = pivot_of_col_[static_cast<std::size_t>(c)];
      if (p >= 0) out.push_back(&rows_[static_cast<std::size_t>(p)]);
    }
    return out;
  }

  const SparseRow<S>& pivot_row(Index col) const {
    return rows_[static_cast<std::size_t>(pivot_of_col_[static_cast<std::size_t>(col)])];
  }

  std::vector<Index> free_columns() const {
    std::vector<Index> out;
    for (Index c = 0; c < cols_; ++c)
      if (!is_pivot(c)) out.push_back(c);
    return out;
  }

  /// Reduces an arbitrary row modulo the current row space (leading-term
  /// reduction against all pivots). Requires `reduce()` for a canonical result.
  SparseRow<S> residue(SparseRow<S> row) const {
    std::sort(row.begin(), row.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    drop_zeros(row);
    std::size_t k = 0;
    while (k < row.size()) {
      std::ptrdiff_t p = pivot_of_col_[static_cast<std::size_t>(row[k].first)];
      if (p < 0) {
        ++k;
        continue;
      }
      S factor = row[k].second;
      row = axpy(row, -factor, rows_[static_cast<std::size_t>(p)]);
      k = 0;
    }
    return row;
  }

 private:
  static void drop_zeros(SparseRow<S>& row) {
    // Merge duplicates, then drop zeros.
    SparseRow<S> out;
    out.reserve(row.size());
    for (auto& e : row) {
      if (!out.empty() && out.back().first == e.first) {
        out.back().second += e.second;
      } else {
        out.push_back(std::move(e));
      }
    }
    out.erase(std::remove_if(out.begin(), out.end(), [](const auto& e) { return is_zero(e.second); }),
              out.end());
    row = std::move(out);
  }

  // a + c*b on sorted sparse rows.
  static SparseRow<S> axpy(const SparseRow<S>& a, const S& c, const SparseRow<S>& b) {
    SparseRow<S> out;
    out.reserve(a.size() + b.size());
    std::size_t i = 0, j = 0;
    while (i < a.size() || j < b.size()) {
      if (j == b.size() || (i < a.size() && a[i].first < b[j].first)) {
        out.push_back(a[i++]);
      } else if (i == a.size() || b[j].first < a[i].first) {
        out.emplace_back(b[j].first, c * b[j].second);
        ++j;
      } else {
        S v = a[i].second + c * b[j].second;
        if (!is_zero(v)) out.emplace_back(a[i].first, std::move(v));
        ++i;
        ++j;
      }
    }
    return out;
  }

  Index cols_;
  std::vector<SparseRow<S>> rows_;
  std::vector<Index> pivot_cols_;
  std::vector<std::ptrdiff_t> pivot_of_col_;
  bool reduced_ = true;
};

template <class S>
RowReducer<S> reduce_rows(const SpMat<S>& m) {
  Eigen::SparseMatrix<S, Eigen::RowMajor, Index> rm(m);
  RowReducer<S> red(m.cols());
  for (Index r = 0; r < rm.outerSize(); ++r) {
    SparseRow<S> row;
    for (typename Eigen::SparseMatrix<S, Eigen::RowMajor, Index>::InnerIterator it(rm, r); it; ++it)
      row.emplace_back(it.col(), it.value());
    red.add(std::move(row));
  }
  return red;
}

/// Row-reduces the columns of `m` (i.e. the rows of its transpose).
template <class S>
RowReducer<S> reduce_columns(const SpMat<S>& m) {
  RowReducer<S> red(m.rows());
  for (Index c = 0; c < m.outerSize(); ++c) {
    SparseRow<S> row;
    for (typename SpMat<S>::InnerIterator it(m, c); it; ++it) row.emplace_back(it.row(), it.value());
    red.add(std::move(row));
  }
  return red;
}

template <class S>
Index rank(const SpMat<S>& m) {
  // Eliminate along the shorter side.
  return m.rows() <= m.cols() ? reduce_columns(m).rank() : reduce_rows(m).rank();
}

template <class S>
Index rank(const Mat<S>& m) {
  return rank(sparse(m));
}

/// A subspace of k^n given by a basis in reduced column echelon form: the
/// basis restricted to `coordinate_rows` is the identity, so coordinates of a
/// member vector are read off directly.
template <class S>
struct Subspace {
  Index ambient = 0;
  SpMat<S> basis;                     // ambient x dim
  std::vector<Index> coordinate_rows;  // size dim

  Index dim() const { return basis.cols(); }

  /// Coordinates of the columns of `v` (assumed to lie in the subspace).
  SpMat<S> coordinates(const SpMat<S>& v) const {
    std::vector<Index> slot(static_cast<std::size_t>(ambient), -1);
    for (std::size_t k = 0; k < coordinate_rows.size(); ++k)
      slot[static_cast<std::size_t>(coordinate_rows[k])] = static_cast<Index>(k);
    std::vector<Triplet<S>> t;
    for (Index c = 0; c < v.outerSize(); ++c)
      for (typename SpMat<S>::InnerIterator it(v, c); it; ++it) {
        Index s = slot[static_cast<std::size_t>(it.row())];
        if (s >= 0) t.emplace_back(s, c, it.value());
      }
    return from_triplets<S>(dim(), v.cols(), t);
  }

  /// True iff every column of `v` lies in the subspace.
  bool contains(const SpMat<S>& v) const { return is_zero(SpMat<S>(multiply(basis, coordinates(v)) - v)); }
};

/// Kernel of `m` with the echelon basis: one vector per free column, equal to
/// 1 there and 0 at the other free columns.
template <class S>
Subspace<S> kernel(const SpMat<S>& m) {
  RowReducer<S> red = reduce_rows(m);
  red.reduce();
  std::vector<Index> free = red.free_columns();
  std::vector<Index> slot(static_cast<std::size_t>(m.cols()), -1);
  for (std::size_t k = 0; k < free.size(); ++k) slot[static_cast<std::size_t>(free[k])] = static_cast<Index>(k);
  std::vector<Triplet<S>> t;
  for (std::size_t k = 0; k < free.size(); ++k) t.emplace_back(free[k], static_cast<Index>(k), S(1));
  for (const SparseRow<S>* row : red.sorted_rows()) {
    Index p = row->front().first;
    for (std::size_t e = 1; e < row->size(); ++e) {
      t.emplace_back(p, slot[static_cast<std::size_t>((*row)[e].first)], -(*row)[e].second);
    }
  }
  return {m.cols(), from_triplets<S>(m.cols(), static_cast<Index>(free.size()), t), free};
}

template <class S>
SpMat<S> kernel_basis(const SpMat<S>& m) {
  return kernel(m).basis;
}

template <class S>
Mat<S> kernel_basis(const Mat<S>& m) {
  return dense(kernel(sparse(m)).basis);
}

/// The quotient k^n / im(m) with a basis of standard vectors at the
/// non-pivot rows of `m`'s column space.
template <class S>
struct Quotient {
  Index ambient = 0;
  SpMat<S> projection;  // dim x ambient
  SpMat<S> section;     // ambient x dim, projection * section = I
  std::vector<Index> basis_rows;

  Index dim() const { return projection.rows(); }
};

template <class S>
Quotient<S> cokernel(const SpMat<S>& m) {
  RowReducer<S> red = reduce_columns(m);
  red.reduce();
  std::vector<Index> free = red.free_columns();
  std::vector<Index> slot(static_cast<std::size_t>(m.rows()), -1);
  for (std::size_t k = 0; k < free.size(); ++k) slot[static_cast<std::size_t>(free[k])] = static_cast<Index>(k);
  std::vector<Triplet<S>> proj;
  std::vector<Triplet<S>> sec;
  for (std::size_t k = 0; k < free.size(); ++k) {
    proj.emplace_back(static_cast<Index>(k), free[k], S(1));
    sec.emplace_back(free[k], static_cast<Index>(k), S(1));
  }
  for (const SparseRow<S>* row : red.sorted_rows()) {
    Index p = row->front().first;
    for (std::size_t e = 1; e < row->size(); ++e)
      proj.emplace_back(slot[static_cast<std::size_t>((*row)[e].first)], p, -(*row)[e].second);
  }
  auto d = static_cast<Index>(free.size());
  return {m.rows(), from_triplets<S>(d, m.rows(), proj), from_triplets<S>(m.rows(), d, sec), free};
}

/// Column space of `m` as a Subspace (basis in reduced column echelon form).
template <class S>
Subspace<S> image(const SpMat<S>& m) {
  RowReducer<S> red = reduce_columns(m);
  red.reduce();
  std::vector<Triplet<S>> t;
  std::vector<Index> rows;
  Index c = 0;
  for (const SparseRow<S>* row : red.sorted_rows()) {
    rows.push_back(row->front().first);
    for (const auto& [r, v] : *row) t.emplace_back(r, c, v);
    ++c;
  }
  return {m.rows(), from_triplets<S>(m.rows(), c, t), rows};
}

/// Some solution X of A X = B, or nothing if inconsistent.
template <class S>
std::optional<SpMat<S>> solve(const SpMat<S>& a, const SpMat<S>& b) {
  if (a.rows() != b.rows()) throw ShapeError("solve: row mismatch");
  // Reduce [A | B] row-wise; the system is consistent iff no pivot lands in B.
  Index n = a.cols();
  std::vector<Triplet<S>> t;
  add_block(t, 0, 0, a);
  add_block(t, 0, n, b);
  SpMat<S> aug = from_triplets<S>(a.rows(), n + b.cols(), t);
  RowReducer<S> red = reduce_rows(aug);
  red.reduce();
  std::vector<Triplet<S>> x;
  for (const SparseRow<S>* row : red.sorted_rows()) {
    Index p = row->front().first;
    if (p >= n) return std::nullopt;
    for (const auto& [c, v] : *row)
      if (c >= n) x.emplace_back(p, c - n, v);
  }
  return from_triplets<S>(n, b.cols(), x);
}

template <class S>
std::optional<Mat<S>> solve(const Mat<S>& a, const Mat<S>& b) {
  auto x = solve(sparse(a), sparse(b));
  if (!x) return std::nullopt;
  return dense(*x);
}

/// Kronecker product of dense matrices.
template <class S>
Mat<S> kron(const Mat<S>& a, const Mat<S>& b) {
  Mat<S> out = zeros<S>(a.rows() * b.rows(), a.cols() * b.cols());
  for (Index i = 0; i < a.rows(); ++i)
    for (Index j = 0; j < a.cols(); ++j)
      if (!is_zero(a(i, j))) out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

}  // namespace sheafkit

#endif  // SHEAFKIT_MATRIX_HPP
