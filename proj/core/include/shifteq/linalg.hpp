#ifndef SHIFTEQ_LINALG_HPP
#define SHIFTEQ_LINALG_HPP

#include <cstddef>
#include <initializer_list>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "shifteq/errors.hpp"
#include "shifteq/field.hpp"

namespace shifteq {

template <Field F>
using Vec = std::vector<typename F::Element>;

/// Dense row-major matrix over F.
template <Field F>
class Matrix {
 public:
  using Element = typename F::Element;

  Matrix(const F& field, std::size_t rows, std::size_t cols)
      : field_(field), rows_(rows), cols_(cols), entries_(rows * cols, field.zero()) {}

  static Matrix identity(const F& field, std::size_t n) {
    Matrix m(field, n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = field.one();
    return m;
  }

  /// Integer-literal convenience for tests and small fixtures.
  static Matrix from_ints(const F& field, std::initializer_list<std::initializer_list<long>> rows) {
    const std::size_t r = rows.size();
    const std::size_t c = r == 0 ? 0 : rows.begin()->size();
    Matrix m(field, r, c);
    std::size_t i = 0;
    for (const auto& row : rows) {
      if (row.size() != c) throw Error(Errc::kDimensionMismatch, "ragged matrix literal");
      std::size_t j = 0;
      for (long v : row) m(i, j++) = field.from_int(v);
      ++i;
    }
    return m;
  }

  static Matrix from_rows(const F& field, const std::vector<Vec<F>>& rows, std::size_t cols) {
    Matrix m(field, rows.size(), cols);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (rows[i].size() != cols) throw Error(Errc::kDimensionMismatch, "row length differs from column count");
      for (std::size_t j = 0; j < cols; ++j) m(i, j) = rows[i][j];
    }
    return m;
  }

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  const F& field() const noexcept { return field_; }

  Element& operator()(std::size_t r, std::size_t c) { return entries_[r * cols_ + c]; }
  const Element& operator()(std::size_t r, std::size_t c) const { return entries_[r * cols_ + c]; }

  std::span<Element> row(std::size_t r) { return {entries_.data() + r * cols_, cols_}; }
  std::span<const Element> row(std::size_t r) const { return {entries_.data() + r * cols_, cols_}; }

  Vec<F> column(std::size_t c) const {
    Vec<F> out;
    out.reserve(rows_);
    for (std::size_t r = 0; r < rows_; ++r) out.push_back((*this)(r, c));
    return out;
  }

  void append_row(std::span<const Element> values) {
    if (values.size() != cols_) throw Error(Errc::kDimensionMismatch, "appended row has wrong length");
    entries_.insert(entries_.end(), values.begin(), values.end());
    ++rows_;
  }

  Vec<F> apply(std::span<const Element> x) const {
    if (x.size() != cols_) throw Error(Errc::kDimensionMismatch, "matrix-vector size mismatch");
    Vec<F> out(rows_, field_.zero());
    for (std::size_t r = 0; r < rows_; ++r) {
      Element acc = field_.zero();
      for (std::size_t c = 0; c < cols_; ++c) acc += (*this)(r, c) * x[c];
      out[r] = std::move(acc);
    }
    return out;
  }

  Matrix operator*(const Matrix& o) const {
    if (cols_ != o.rows_) throw Error(Errc::kDimensionMismatch, "matrix product size mismatch");
    Matrix out(field_, rows_, o.cols_);
    for (std::size_t i = 0; i < rows_; ++i) {
      for (std::size_t k = 0; k < cols_; ++k) {
        const Element& a = (*this)(i, k);
        if (field_.is_zero(a)) continue;
        for (std::size_t j = 0; j < o.cols_; ++j) out(i, j) += a * o(k, j);
      }
    }
    return out;
  }

  Matrix transpose() const {
    Matrix t(field_, cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.entries_ == b.entries_;
  }

 private:
  F field_;
  std::size_t rows_;
  std::size_t cols_;
  std::vector<Element> entries_;
};

/// point + span(basis). Solution sets, stabilizers and shift cosets all use
/// this shape.
template <Field F>
struct AffineSubspace {
  std::size_t ambient_dim = 0;
  Vec<F> point;
  std::vector<Vec<F>> basis;

  std::size_t dim() const noexcept { return basis.size(); }

  /// point + sum_j coeffs[j] * basis[j].
  Vec<F> at(std::span<const typename F::Element> coeffs) const {
    if (coeffs.size() != basis.size()) throw Error(Errc::kDimensionMismatch, "coefficient count != basis size");
    Vec<F> out = point;
    for (std::size_t j = 0; j < basis.size(); ++j)
      for (std::size_t i = 0; i < ambient_dim; ++i) out[i] += coeffs[j] * basis[j][i];
    return out;
  }
};

/// Reduced row echelon form with the first nonzero entry of each column as
/// pivot, scanning columns left to right. Only the first `pivot_cols`
/// columns are eligible as pivots (the rest ride along, e.g. an augmented
/// right-hand side). Returns the pivot column of each nonzero row.
template <Field F>
std::vector<std::size_t> reduce_to_rref(Matrix<F>& m, std::size_t pivot_cols) {
  const F& field = m.field();
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < pivot_cols && r < m.rows(); ++c) {
    std::size_t sel = r;
    while (sel < m.rows() && field.is_zero(m(sel, c))) ++sel;
    if (sel == m.rows()) continue;
    if (sel != r)
      for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m(sel, j), m(r, j));
    const auto inv = field.inv(m(r, c));
    for (std::size_t j = c; j < m.cols(); ++j) m(r, j) = m(r, j) * inv;
    for (std::size_t i = 0; i < m.rows(); ++i) {
      if (i == r || field.is_zero(m(i, c))) continue;
      const auto factor = m(i, c);
      for (std::size_t j = c; j < m.cols(); ++j) m(i, j) -= factor * m(r, j);
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

template <Field F>
std::size_t rank(Matrix<F> m) {
  const std::size_t cols = m.cols();
  return reduce_to_rref(m, cols).size();
}

namespace detail {

// Nullspace basis read off an RREF whose first `n` columns are the unknowns.
template <Field F>
std::vector<Vec<F>> nullspace_from_rref(const Matrix<F>& rref, const std::vector<std::size_t>& pivots,
                                        std::size_t n) {
  const F& field = rref.field();
  std::vector<bool> is_pivot(n, false);
  for (std::size_t c : pivots) is_pivot[c] = true;
  std::vector<Vec<F>> basis;
  for (std::size_t free = 0; free < n; ++free) {
    if (is_pivot[free]) continue;
    Vec<F> v(n, field.zero());
    v[free] = field.one();
    for (std::size_t i = 0; i < pivots.size(); ++i) v[pivots[i]] = -rref(i, free);
    basis.push_back(std::move(v));
  }
  return basis;
}

}  // namespace detail

/// Basis of {x : A x = 0}; its size is cols - rank(A).
template <Field F>
std::vector<Vec<F>> nullspace(Matrix<F> a) {
  const std::size_t n = a.cols();
  const auto pivots = reduce_to_rref(a, n);
  return detail::nullspace_from_rref(a, pivots, n);
}

/// Full solution set of A x = b, or nullopt when inconsistent. The
/// particular point sets every free variable to zero.
template <Field F>
std::optional<AffineSubspace<F>> solve_affine(const Matrix<F>& a, std::span<const typename F::Element> b) {
  if (b.size() != a.rows()) throw Error(Errc::kDimensionMismatch, "right-hand side length != row count");
  const F& field = a.field();
  const std::size_t n = a.cols();
  Matrix<F> aug(field, a.rows(), n + 1);
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < n; ++j) aug(i, j) = a(i, j);
    aug(i, n) = b[i];
  }
  const auto pivots = reduce_to_rref(aug, n);
  for (std::size_t i = pivots.size(); i < aug.rows(); ++i) {
    if (!field.is_zero(aug(i, n))) return std::nullopt;
  }
  AffineSubspace<F> out;
  out.ambient_dim = n;
  out.point.assign(n, field.zero());
  for (std::size_t i = 0; i < pivots.size(); ++i) out.point[pivots[i]] = aug(i, n);
  out.basis = detail::nullspace_from_rref(aug, pivots, n);
  return out;
}

/// Inverse of a square matrix, or nullopt when singular.
template <Field F>
std::optional<Matrix<F>> inverse(const Matrix<F>& a) {
  if (a.rows() != a.cols()) throw Error(Errc::kDimensionMismatch, "inverse of a non-square matrix");
  const F& field = a.field();
  const std::size_t n = a.rows();
  Matrix<F> aug(field, n, 2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) aug(i, j) = a(i, j);
    aug(i, n + i) = field.one();
  }
  if (reduce_to_rref(aug, n).size() != n) return std::nullopt;
  Matrix<F> inv(field, n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) inv(i, j) = aug(i, n + j);
  return inv;
}

template <Field F>
typename F::Element determinant(Matrix<F> a) {
  if (a.rows() != a.cols()) throw Error(Errc::kDimensionMismatch, "determinant of a non-square matrix");
  const F& field = a.field();
  const std::size_t n = a.rows();
  auto det = field.one();
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t sel = c;
    while (sel < n && field.is_zero(a(sel, c))) ++sel;
    if (sel == n) return field.zero();
    if (sel != c) {
      for (std::size_t j = 0; j < n; ++j) std::swap(a(sel, j), a(c, j));
      det = -det;
    }
    det = det * a(c, c);
    const auto inv = field.inv(a(c, c));
    for (std::size_t i = c + 1; i < n; ++i) {
      if (field.is_zero(a(i, c))) continue;
      const auto factor = a(i, c) * inv;
      for (std::size_t j = c; j < n; ++j) a(i, j) -= factor * a(c, j);
    }
  }
  return det;
}

template <Field F>
void require_distinct_nodes(const F& field, std::span<const typename F::Element> nodes) {
  for (std::size_t i = 0; i < nodes.size(); ++i)
    for (std::size_t j = i + 1; j < nodes.size(); ++j)
      if (nodes[i] == nodes[j])
        throw Error(Errc::kDuplicateNodes, "interpolation nodes " + std::to_string(i) + " and " +
                                               std::to_string(j) + " coincide (" + field.to_string(nodes[i]) + ")");
}

/// V[j][k] = nodes[j]^k.
template <Field F>
Matrix<F> vandermonde_matrix(const F& field, std::span<const typename F::Element> nodes) {
  const std::size_t m = nodes.size();
  Matrix<F> v(field, m, m);
  for (std::size_t j = 0; j < m; ++j) {
    auto power = field.one();
    for (std::size_t k = 0; k < m; ++k) {
      v(j, k) = power;
      power = power * nodes[j];
    }
  }
  return v;
}

/// Coefficients c_0..c_d of the unique polynomial of degree <= d taking
/// values[j] at nodes[j]. Solved by plain Gaussian elimination.
template <Field F>
Vec<F> vandermonde_solve(const F& field, std::span<const typename F::Element> nodes,
                         std::span<const typename F::Element> values) {
  if (nodes.size() != values.size()) throw Error(Errc::kDimensionMismatch, "node and value counts differ");
  require_distinct_nodes(field, nodes);
  const auto sol = solve_affine(vandermonde_matrix(field, nodes), values);
  return sol->point;  // distinct nodes make the system uniquely solvable
}

/// Inverse Vandermonde matrix for a node set; row i maps sampled values to
/// the i-th coefficient.
template <Field F>
Matrix<F> vandermonde_inverse(const F& field, std::span<const typename F::Element> nodes) {
  require_distinct_nodes(field, nodes);
  return *inverse(vandermonde_matrix(field, nodes));
}

}  // namespace shifteq

#endif  // SHIFTEQ_LINALG_HPP
