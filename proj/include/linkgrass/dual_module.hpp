#pragma once

// Submodules of (GF(p)[e]/(e^2))^d and rank conditions via minors.

#include <vector>

#include "errors.hpp"
#include "matrix.hpp"
#include "subspace.hpp"

namespace linkgrass {

namespace detail {

/// Calls fn(indices) for every k-subset of {0..n-1}, in lexicographic order.
template <class Fn>
bool for_each_combination(std::size_t n, std::size_t k, Fn&& fn) {
  if (k > n) return true;
  std::vector<std::size_t> idx(k);
  for (std::size_t i = 0; i < k; ++i) idx[i] = i;
  while (true) {
    if (!fn(std::as_const(idx))) return false;
    std::size_t i = k;
    while (i > 0 && idx[i - 1] == n - k + i - 1) --i;
    if (i == 0) return true;
    ++idx[i - 1];
    for (std::size_t t = i; t < k; ++t) idx[t] = idx[t - 1] + 1;
  }
}

}  // namespace detail

/// True iff every (j+1)x(j+1) minor of m vanishes in GF(p)[e]/(e^2), i.e. the
/// map has rank <= j at every point of Spec of the ring (Fitting-ideal sense).
template <Scalar R>
bool rank_everywhere_at_most(const Matrix<R>& m, std::size_t j) {
  const std::size_t k = j + 1;
  if (k > m.rows() || k > m.cols()) return true;
  return detail::for_each_combination(m.rows(), k, [&](const std::vector<std::size_t>& rows) {
    const auto sub = m.select_rows(rows);
    return detail::for_each_combination(m.cols(), k, [&](const std::vector<std::size_t>& cols) {
      return determinant(sub.select_columns(cols)).is_zero();
    });
  });
}

/// Submodule of a free module over the dual numbers, given by generators and
/// kept in unit-pivot echelon form.
///
/// Points of Grassmannians over GF(p)[e] are submodules that are free with
/// free quotient. For a module spanned by r rows this holds iff the rows stay
/// independent after setting e = 0; `free_cofree()` reports exactly that.
class DualModule {
 public:
  DualModule() = default;

  static DualModule span(const DualMatrix& generators) {
    DualModule m;
    auto red = rref(generators);
    m.ambient_ = generators.cols();
    m.p_ = generators.modulus();
    m.rank_ = red.rank;
    m.pivots_ = red.pivots;
    m.torsion_ = red.torsion;
    m.nonfree_pivot_ = red.nonfree_pivot;
    // keep every nonzero row, torsion rows included, so the span is preserved
    std::size_t rows = red.rank;
    for (std::size_t i = red.rank; i < red.form.rows(); ++i) {
      bool nz = false;
      for (auto x : red.form.row(i)) nz = nz || !x.is_zero();
      if (nz) rows = i + 1;
    }
    m.rows_ = red.form.row_block(0, rows);
    return m;
  }

  static DualModule from_subspace(const Subspace& s) { return span(to_dual(s.basis())); }

  std::size_t ambient_dim() const { return ambient_; }
  u32 modulus() const { return p_; }
  std::size_t rank() const { return rank_; }
  const DualMatrix& generators() const { return rows_; }
  bool free_cofree() const { return !torsion_; }
  /// Some generator's leading entry in the standard column order is nilpotent.
  bool nonfree_pivot() const { return nonfree_pivot_; }

  /// Membership test; requires a free module with free quotient.
  bool contains(std::span<const Dual> v) const {
    require_free();
    if (v.size() != ambient_) throw ShapeError("dual module: length mismatch");
    DualVec w(v.begin(), v.end());
    for (std::size_t k = 0; k < rank_; ++k) {
      const Dual c = w[pivots_[k]];
      if (c.is_zero()) continue;
      for (std::size_t j = 0; j < ambient_; ++j) w[j] -= c * rows_(k, j);
    }
    for (const auto& x : w)
      if (!x.is_zero()) return false;
    return true;
  }

  bool contains(const DualModule& other) const {
    for (std::size_t i = 0; i < other.rows_.rows(); ++i)
      if (!contains(other.rows_.row(i))) return false;
    return true;
  }

  /// Reduction modulo e.
  Subspace residue() const { return Subspace::span(linkgrass::residue(rows_)); }

  friend bool operator==(const DualModule& a, const DualModule& b) { return a.rows_ == b.rows_; }

 private:
  void require_free() const {
    if (torsion_) throw NonFreeModule("dual module is not free with free quotient");
  }

  std::size_t ambient_ = 0;
  u32 p_ = 2;
  std::size_t rank_ = 0;
  std::vector<std::size_t> pivots_;
  bool torsion_ = false;
  bool nonfree_pivot_ = false;
  DualMatrix rows_;
};

/// m applied to each generator of a module.
inline DualModule image(const DualMatrix& m, const DualModule& u) {
  return DualModule::span((m * u.generators().transpose()).transpose());
}

}  // namespace linkgrass
