#pragma once

#include <algorithm>
#include <compare>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

#include "errors.hpp"
#include "field.hpp"

namespace linkgrass {

/// Dense row-major matrix over GF(p) or GF(p)[e]/(e^2). All entries share the modulus.
template <Scalar R>
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, u32 p) : rows_(rows), cols_(cols), p_(p), a_(rows * cols, R::zero(p)) {}

  static Matrix identity(std::size_t n, u32 p) {
    Matrix m(n, n, p);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = R::one(p);
    return m;
  }

  /// Builds a matrix from integer rows (constant entries; dual parts zero).
  static Matrix from_ints(const std::vector<std::vector<std::int64_t>>& rows, u32 p, std::size_t cols = 0) {
    if (!rows.empty()) cols = rows.front().size();
    Matrix m(rows.size(), cols, p);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (rows[i].size() != cols) throw ShapeError("ragged rows");
      for (std::size_t j = 0; j < cols; ++j) m(i, j) = lift(Fp::from_signed(rows[i][j], p));
    }
    return m;
  }

  static Matrix from_rows(const std::vector<std::vector<R>>& rows, std::size_t cols, u32 p) {
    Matrix m(rows.size(), cols, p);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (rows[i].size() != cols) throw ShapeError("ragged rows");
      std::copy(rows[i].begin(), rows[i].end(), m.a_.begin() + i * cols);
    }
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  u32 modulus() const { return p_; }

  R& operator()(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
  const R& operator()(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }

  std::span<const R> row(std::size_t i) const { return {a_.data() + i * cols_, cols_}; }
  std::span<R> row(std::size_t i) { return {a_.data() + i * cols_, cols_}; }
  std::vector<R> row_vector(std::size_t i) const { return {a_.begin() + i * cols_, a_.begin() + (i + 1) * cols_}; }
  std::vector<R> column(std::size_t j) const {
    std::vector<R> out;
    out.reserve(rows_);
    for (std::size_t i = 0; i < rows_; ++i) out.push_back((*this)(i, j));
    return out;
  }
  const std::vector<R>& entries() const { return a_; }

  bool is_zero() const {
    return std::all_of(a_.begin(), a_.end(), [](const R& x) { return x.is_zero(); });
  }

  Matrix transpose() const {
    Matrix t(cols_, rows_, p_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  /// Rows [begin, end).
  Matrix row_block(std::size_t begin, std::size_t end) const {
    Matrix m(end - begin, cols_, p_);
    std::copy(a_.begin() + begin * cols_, a_.begin() + end * cols_, m.a_.begin());
    return m;
  }

  /// Columns listed in `cols`, in that order.
  Matrix select_columns(std::span<const std::size_t> cols) const {
    Matrix m(rows_, cols.size(), p_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t k = 0; k < cols.size(); ++k) m(i, k) = (*this)(i, cols[k]);
    return m;
  }
  Matrix select_rows(std::span<const std::size_t> rows) const {
    Matrix m(rows.size(), cols_, p_);
    for (std::size_t k = 0; k < rows.size(); ++k)
      std::copy(row(rows[k]).begin(), row(rows[k]).end(), m.row(k).begin());
    return m;
  }

  void append_row(std::span<const R> r) {
    if (rows_ == 0 && cols_ == 0) cols_ = r.size();
    if (r.size() != cols_) throw ShapeError("row length mismatch");
    a_.insert(a_.end(), r.begin(), r.end());
    ++rows_;
  }

  /// Vertical concatenation.
  static Matrix stack(const Matrix& top, const Matrix& bottom) {
    if (top.cols_ != bottom.cols_) throw ShapeError("stack: column mismatch");
    Matrix m = top;
    m.a_.insert(m.a_.end(), bottom.a_.begin(), bottom.a_.end());
    m.rows_ += bottom.rows_;
    return m;
  }

  friend Matrix operator*(const Matrix& a, const Matrix& b) {
    if (a.cols_ != b.rows_) throw ShapeError("product: inner dimension mismatch");
    Matrix c(a.rows_, b.cols_, a.p_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t k = 0; k < a.cols_; ++k) {
        const R& aik = a(i, k);
        if (aik.is_zero()) continue;
        for (std::size_t j = 0; j < b.cols_; ++j) c(i, j) += aik * b(k, j);
      }
    return c;
  }
  friend Matrix operator+(const Matrix& a, const Matrix& b) {
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw ShapeError("sum: shape mismatch");
    Matrix c = a;
    for (std::size_t i = 0; i < c.a_.size(); ++i) c.a_[i] += b.a_[i];
    return c;
  }
  friend Matrix operator-(const Matrix& a, const Matrix& b) {
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw ShapeError("difference: shape mismatch");
    Matrix c = a;
    for (std::size_t i = 0; i < c.a_.size(); ++i) c.a_[i] -= b.a_[i];
    return c;
  }
  Matrix scaled(const R& s) const {
    Matrix c = *this;
    for (auto& x : c.a_) x *= s;
    return c;
  }

  /// Matrix acting on a column vector.
  std::vector<R> apply(std::span<const R> v) const {
    if (v.size() != cols_) throw ShapeError("apply: vector length mismatch");
    std::vector<R> out(rows_, R::zero(p_));
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) out[i] += (*this)(i, j) * v[j];
    return out;
  }

  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.p_ == b.p_ && a.a_ == b.a_;
  }

 private:
  static R lift(Fp x) {
    if constexpr (std::is_same_v<R, Fp>)
      return x;
    else
      return R(x);
  }

  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  u32 p_ = 2;
  std::vector<R> a_;
};

using FpMatrix = Matrix<Fp>;
using DualMatrix = Matrix<Dual>;
using Vec = std::vector<Fp>;
using DualVec = std::vector<Dual>;

inline Vec zero_vec(std::size_t n, u32 p) { return Vec(n, Fp::zero(p)); }
inline Vec unit_vec(std::size_t n, std::size_t i, u32 p) {
  Vec v = zero_vec(n, p);
  v[i] = Fp::one(p);
  return v;
}
inline bool is_zero_vec(std::span<const Fp> v) {
  return std::all_of(v.begin(), v.end(), [](Fp x) { return x.is_zero(); });
}
inline Vec vec_from_ints(const std::vector<std::int64_t>& xs, u32 p) {
  Vec v;
  for (auto x : xs) v.push_back(Fp::from_signed(x, p));
  return v;
}

inline FpMatrix diagonal(const std::vector<std::int64_t>& diag, u32 p) {
  FpMatrix m(diag.size(), diag.size(), p);
  for (std::size_t i = 0; i < diag.size(); ++i) m(i, i) = Fp::from_signed(diag[i], p);
  return m;
}

/// Componentwise residue of a dual matrix (set e = 0).
inline FpMatrix residue(const DualMatrix& m) {
  FpMatrix out(m.rows(), m.cols(), m.modulus());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) out(i, j) = m(i, j).constant();
  return out;
}
inline DualMatrix to_dual(const FpMatrix& m) {
  DualMatrix out(m.rows(), m.cols(), m.modulus());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) out(i, j) = Dual(m(i, j));
  return out;
}

template <Scalar R>
struct RrefResult {
  Matrix<R> form;                   ///< same shape as the input; zero rows last
  std::size_t rank = 0;             ///< number of unit pivots
  std::vector<std::size_t> pivots;  ///< pivot column of each of the first `rank` rows
  /// Dual numbers only: some row has a non-unit leading entry (e.g. [e, 1]),
  /// so the echelon form has no unit pivots in the standard column order.
  bool nonfree_pivot = false;
  /// Dual numbers only: rows remain that are nonzero but entirely nilpotent;
  /// the row module then has torsion and is not free with free quotient.
  bool torsion = false;
};

/// Reduced row-echelon form. Over a field the form is unique. Over dual numbers
/// only unit entries are used as pivots, scanning columns in standard order.
template <Scalar R>
RrefResult<R> rref(Matrix<R> m) {
  RrefResult<R> res;
  const std::size_t rows = m.rows(), cols = m.cols();
  std::size_t next = 0;
  for (std::size_t j = 0; j < cols && next < rows; ++j) {
    std::size_t piv = rows;
    bool nonzero_nonunit = false;
    for (std::size_t i = next; i < rows; ++i) {
      if (m(i, j).is_unit()) {
        piv = i;
        break;
      }
      if (!m(i, j).is_zero()) nonzero_nonunit = true;
    }
    if (piv == rows) {
      if (nonzero_nonunit) res.nonfree_pivot = true;
      continue;
    }
    if (piv != next)
      for (std::size_t k = 0; k < cols; ++k) std::swap(m(piv, k), m(next, k));
    const R inv = inverse(m(next, j));
    for (std::size_t k = 0; k < cols; ++k) m(next, k) *= inv;
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == next || m(i, j).is_zero()) continue;
      const R factor = m(i, j);
      for (std::size_t k = 0; k < cols; ++k) m(i, k) -= factor * m(next, k);
    }
    res.pivots.push_back(j);
    ++next;
  }
  res.rank = next;
  for (std::size_t i = next; i < rows; ++i)
    for (std::size_t k = 0; k < cols; ++k)
      if (!m(i, k).is_zero()) res.torsion = true;
  if (res.torsion) res.nonfree_pivot = true;
  res.form = std::move(m);
  return res;
}

inline std::size_t rank(const FpMatrix& m) { return rref(m).rank; }

/// Inverse of a square matrix whose determinant is a unit. Throws NotAUnit otherwise.
template <Scalar R>
Matrix<R> invert(const Matrix<R>& m) {
  if (m.rows() != m.cols()) throw ShapeError("invert: matrix not square");
  const std::size_t n = m.rows();
  Matrix<R> aug(n, 2 * n, m.modulus());
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) aug(i, j) = m(i, j);
    aug(i, n + i) = R::one(m.modulus());
  }
  auto red = rref(aug);
  if (red.rank < n || red.pivots[n - 1] != n - 1) throw NotAUnit("matrix is not invertible");
  Matrix<R> out(n, n, m.modulus());
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) out(i, j) = red.form(i, n + j);
  return out;
}

/// Determinant by cofactor expansion along the first row; exact over any commutative ring.
template <Scalar R>
R determinant(const Matrix<R>& m) {
  if (m.rows() != m.cols()) throw ShapeError("determinant: matrix not square");
  const std::size_t n = m.rows();
  const u32 p = m.modulus();
  if (n == 0) return R::one(p);
  if (n == 1) return m(0, 0);
  if (n == 2) return m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0);
  R acc = R::zero(p);
  std::vector<std::size_t> rest(n - 1);
  for (std::size_t i = 0; i < n - 1; ++i) rest[i] = i + 1;
  for (std::size_t j = 0; j < n; ++j) {
    if (m(0, j).is_zero()) continue;
    std::vector<std::size_t> cols;
    for (std::size_t k = 0; k < n; ++k)
      if (k != j) cols.push_back(k);
    R minor = determinant(m.select_rows(rest).select_columns(cols));
    R term = m(0, j) * minor;
    acc = (j % 2 == 0) ? acc + term : acc - term;
  }
  return acc;
}

}  // namespace linkgrass
