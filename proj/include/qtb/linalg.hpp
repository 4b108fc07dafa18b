#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "qtb/scalar.hpp"

namespace qtb {

/// Dense row-major matrix over scalar S.
template <class S>
struct Matrix {
  int rows = 0, cols = 0;
  std::vector<S> a;

  Matrix() = default;
  Matrix(int r, int c) : rows(r), cols(c), a(static_cast<size_t>(r) * c, ScalarOps<S>::zero()) {}

  S& at(int i, int j) { return a[static_cast<size_t>(i) * cols + j]; }
  const S& at(int i, int j) const { return a[static_cast<size_t>(i) * cols + j]; }

  static Matrix identity(int n) {
    Matrix m(n, n);
    for (int i = 0; i < n; ++i) m.at(i, i) = ScalarOps<S>::one();
    return m;
  }

  friend Matrix operator*(const Matrix& x, const Matrix& y) {
    if (x.cols != y.rows) throw size_error("matrix product shape mismatch");
    Matrix z(x.rows, y.cols);
    for (int i = 0; i < x.rows; ++i)
      for (int k = 0; k < x.cols; ++k) {
        const S& xik = x.at(i, k);
        if (ScalarOps<S>::is_zero(xik)) continue;
        for (int j = 0; j < y.cols; ++j) z.at(i, j) += xik * y.at(k, j);
      }
    return z;
  }

  std::vector<S> apply(const std::vector<S>& v) const {
    if (static_cast<int>(v.size()) != cols) throw size_error("matrix-vector shape mismatch");
    std::vector<S> out(rows, ScalarOps<S>::zero());
    for (int i = 0; i < rows; ++i)
      for (int j = 0; j < cols; ++j) out[i] += at(i, j) * v[j];
    return out;
  }
};

namespace detail {

/// Picks the pivot row at column j among rows >= r; exact scalars take the
/// first nonzero, floats the largest magnitude. Returns -1 if the column is
/// (numerically) empty; float zero threshold is relative to scale.
template <class S>
int pivot_row(const Matrix<S>& m, int r, int j, double scale) {
  using Ops = ScalarOps<S>;
  if constexpr (Ops::exact) {
    for (int i = r; i < m.rows; ++i)
      if (!Ops::is_zero(m.at(i, j))) return i;
    return -1;
  } else {
    int best = -1;
    double mag = scale * 1e-36;
    for (int i = r; i < m.rows; ++i) {
      double v = Ops::magnitude(m.at(i, j));
      if (v > mag) mag = v, best = i;
    }
    return best;
  }
}

template <class S>
double matrix_scale(const Matrix<S>& m) {
  double s = 1.0;
  for (const S& x : m.a) s = std::max(s, ScalarOps<S>::magnitude(x));
  return s;
}

}  // namespace detail

/// Reduces m to row echelon form in place; returns the pivot columns.
template <class S>
std::vector<int> row_echelon(Matrix<S>& m) {
  using Ops = ScalarOps<S>;
  double scale = detail::matrix_scale(m);
  std::vector<int> pivots;
  int r = 0;
  for (int j = 0; j < m.cols && r < m.rows; ++j) {
    int p = detail::pivot_row(m, r, j, scale);
    if (p < 0) continue;
    if (p != r)
      for (int k = 0; k < m.cols; ++k) std::swap(m.at(p, k), m.at(r, k));
    S inv = Ops::inv(m.at(r, j));
    for (int k = j; k < m.cols; ++k) m.at(r, k) = inv * m.at(r, k);
    for (int i = 0; i < m.rows; ++i) {
      if (i == r) continue;
      const S f = m.at(i, j);
      if (Ops::is_zero(f)) continue;
      for (int k = j; k < m.cols; ++k) m.at(i, k) = m.at(i, k) - f * m.at(r, k);
    }
    pivots.push_back(j);
    ++r;
  }
  return pivots;
}

template <class S>
int rank(Matrix<S> m) {
  return static_cast<int>(row_echelon(m).size());
}

/// Solves m x = b; empty optional when inconsistent. For underdetermined
/// systems returns the solution with free variables set to zero.
template <class S>
std::optional<std::vector<S>> solve(Matrix<S> m, std::vector<S> b) {
  using Ops = ScalarOps<S>;
  if (static_cast<int>(b.size()) != m.rows) throw size_error("solve shape mismatch");
  Matrix<S> aug(m.rows, m.cols + 1);
  for (int i = 0; i < m.rows; ++i) {
    for (int j = 0; j < m.cols; ++j) aug.at(i, j) = m.at(i, j);
    aug.at(i, m.cols) = b[i];
  }
  std::vector<int> pivots = row_echelon(aug);
  if (!pivots.empty() && pivots.back() == m.cols) return std::nullopt;
  std::vector<S> x(m.cols, Ops::zero());
  for (size_t r = 0; r < pivots.size(); ++r) x[pivots[r]] = aug.at(static_cast<int>(r), m.cols);
  return x;
}

template <class S>
Matrix<S> inverse(const Matrix<S>& m) {
  using Ops = ScalarOps<S>;
  if (m.rows != m.cols) throw size_error("inverse needs a square matrix");
  int n = m.rows;
  Matrix<S> aug(n, 2 * n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) aug.at(i, j) = m.at(i, j);
    aug.at(i, n + i) = Ops::one();
  }
  std::vector<int> pivots = row_echelon(aug);
  if (static_cast<int>(pivots.size()) != n || pivots.back() != n - 1)
    throw divisibility_error("matrix is singular");
  Matrix<S> out(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) out.at(i, j) = aug.at(i, n + j);
  return out;
}

/// Incrementally maintained row-echelon span for rank queries over exact
/// scalar types; rows are normalized to a unit leading entry.
template <class S>
class IncrementalRank {
 public:
  /// Reduces v against the span; returns true (and absorbs it) when it is
  /// independent of the rows seen so far.
  bool insert(std::vector<S> v) {
    using Ops = ScalarOps<S>;
    for (auto& [lead, row] : rows_) {
      if (Ops::is_zero(v[static_cast<size_t>(lead)])) continue;
      S f = v[static_cast<size_t>(lead)];
      for (size_t k = static_cast<size_t>(lead); k < v.size(); ++k) v[k] = v[k] - f * row[k];
    }
    size_t lead = 0;
    while (lead < v.size() && Ops::is_zero(v[lead])) ++lead;
    if (lead == v.size()) return false;
    S inv = Ops::inv(v[lead]);
    for (size_t k = lead; k < v.size(); ++k) v[k] = inv * v[k];
    rows_.emplace(static_cast<int>(lead), std::move(v));
    return true;
  }

  int rank() const { return static_cast<int>(rows_.size()); }

 private:
  std::map<int, std::vector<S>> rows_;
};

/// Basis of the right nullspace of m, one vector per non-pivot column.
template <class S>
std::vector<std::vector<S>> nullspace(Matrix<S> m) {
  using Ops = ScalarOps<S>;
  int cols = m.cols;
  std::vector<int> pivots = row_echelon(m);
  std::vector<bool> is_pivot(cols, false);
  for (int p : pivots) is_pivot[p] = true;
  std::vector<std::vector<S>> basis;
  for (int f = 0; f < cols; ++f) {
    if (is_pivot[f]) continue;
    std::vector<S> v(cols, Ops::zero());
    v[f] = Ops::one();
    for (size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = -m.at(static_cast<int>(r), f);
    basis.push_back(std::move(v));
  }
  return basis;
}

}  // namespace qtb
