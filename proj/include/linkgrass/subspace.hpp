#pragma once

#include <compare>
#include <span>
#include <vector>

#include "errors.hpp"
#include "matrix.hpp"

namespace linkgrass {

/// Subspace of GF(p)^d held by its unique reduced row-echelon basis (no zero
/// rows). Two subspaces are equal iff their bases are entry-wise equal.
///
/// The total order compares rank, then pivot columns lexicographically, then
/// basis entries row-major; it matches the enumeration order of
/// `enumerate_subspaces`, and "lexicographically least" always refers to it.
class Subspace {
 public:
  Subspace() = default;

  static Subspace zero(std::size_t d, u32 p) { return Subspace(FpMatrix(0, d, p)); }
  static Subspace full(std::size_t d, u32 p) { return Subspace(FpMatrix::identity(d, p)); }

  /// Row span of `generators`.
  static Subspace span(const FpMatrix& generators) { return Subspace(generators); }
  static Subspace span(const std::vector<Vec>& vectors, std::size_t d, u32 p) {
    FpMatrix m(0, d, p);
    for (const auto& v : vectors) m.append_row(v);
    return Subspace(m);
  }

  std::size_t ambient_dim() const { return basis_.cols(); }
  std::size_t dim() const { return basis_.rows(); }
  u32 modulus() const { return basis_.modulus(); }
  const FpMatrix& basis() const { return basis_; }
  const std::vector<std::size_t>& pivots() const { return pivots_; }
  Vec basis_vector(std::size_t k) const { return basis_.row_vector(k); }
  std::vector<Vec> basis_vectors() const {
    std::vector<Vec> out;
    for (std::size_t k = 0; k < dim(); ++k) out.push_back(basis_vector(k));
    return out;
  }

  /// v minus its projection onto this space along the standard complement
  /// (the non-pivot coordinate vectors). Zero iff v lies in the subspace.
  Vec reduce(std::span<const Fp> v) const {
    check_len(v.size());
    Vec w(v.begin(), v.end());
    for (std::size_t k = 0; k < dim(); ++k) {
      const Fp c = w[pivots_[k]];
      if (c.is_zero()) continue;
      for (std::size_t j = 0; j < w.size(); ++j) w[j] -= c * basis_(k, j);
    }
    return w;
  }

  bool contains(std::span<const Fp> v) const { return is_zero_vec(reduce(v)); }

  /// W is a subspace of this.
  bool contains(const Subspace& w) const {
    check_len(w.ambient_dim());
    for (std::size_t k = 0; k < w.dim(); ++k)
      if (!contains(w.basis_.row(k))) return false;
    return true;
  }

  /// Coordinates of v in the echelon basis. Throws InvalidInput if v is not in the space.
  Vec coordinates(std::span<const Fp> v) const {
    if (!contains(v)) throw InvalidInput("vector not in subspace");
    Vec c;
    for (std::size_t k = 0; k < dim(); ++k) c.push_back(v[pivots_[k]]);
    return c;
  }

  /// Standard complement: spanned by the coordinate vectors at non-pivot columns.
  std::vector<std::size_t> free_columns() const {
    std::vector<std::size_t> out;
    std::size_t k = 0;
    for (std::size_t j = 0; j < ambient_dim(); ++j) {
      if (k < pivots_.size() && pivots_[k] == j)
        ++k;
      else
        out.push_back(j);
    }
    return out;
  }

  friend bool operator==(const Subspace& a, const Subspace& b) { return a.basis_ == b.basis_; }
  friend std::strong_ordering operator<=>(const Subspace& a, const Subspace& b) {
    if (auto c = a.ambient_dim() <=> b.ambient_dim(); c != 0) return c;
    if (auto c = a.dim() <=> b.dim(); c != 0) return c;
    if (auto c = a.pivots_ <=> b.pivots_; c != 0) return c;
    return a.basis_.entries() <=> b.basis_.entries();
  }

 private:
  explicit Subspace(const FpMatrix& generators) {
    auto red = rref(generators);
    basis_ = red.form.row_block(0, red.rank);
    pivots_ = std::move(red.pivots);
  }
  void check_len(std::size_t n) const {
    if (n != ambient_dim()) throw ShapeError("ambient dimension mismatch");
  }

  FpMatrix basis_{0, 0, 2};
  std::vector<std::size_t> pivots_;
};

/// {v : m v = 0}.
inline Subspace kernel(const FpMatrix& m) {
  auto red = rref(m);
  const u32 p = m.modulus();
  std::vector<Vec> basis;
  std::size_t k = 0;
  for (std::size_t j = 0; j < m.cols(); ++j) {
    if (k < red.pivots.size() && red.pivots[k] == j) {
      ++k;
      continue;
    }
    Vec v = unit_vec(m.cols(), j, p);
    for (std::size_t t = 0; t < red.rank; ++t) v[red.pivots[t]] = -red.form(t, j);
    basis.push_back(std::move(v));
  }
  return Subspace::span(basis, m.cols(), p);
}

/// Column space of m.
inline Subspace image(const FpMatrix& m) { return Subspace::span(m.transpose()); }

/// m applied to a subspace.
inline Subspace image(const FpMatrix& m, const Subspace& u) {
  if (m.cols() != u.ambient_dim()) throw ShapeError("image: dimension mismatch");
  return Subspace::span((m * u.basis().transpose()).transpose());
}

/// Vectors orthogonal to U under the standard pairing; its kernel is U again.
inline Subspace annihilator(const Subspace& u) {
  if (u.dim() == 0) return Subspace::full(u.ambient_dim(), u.modulus());
  return kernel(u.basis());
}

inline Subspace sum(const Subspace& u, const Subspace& w) {
  if (u.ambient_dim() != w.ambient_dim()) throw ShapeError("sum: ambient dimension mismatch");
  return Subspace::span(FpMatrix::stack(u.basis(), w.basis()));
}

inline Subspace intersect(const Subspace& u, const Subspace& w) {
  if (u.ambient_dim() != w.ambient_dim()) throw ShapeError("intersect: ambient dimension mismatch");
  return kernel(FpMatrix::stack(annihilator(u).basis(), annihilator(w).basis()));
}

/// {v : m v in W}.
inline Subspace preimage(const FpMatrix& m, const Subspace& w) {
  if (m.rows() != w.ambient_dim()) throw ShapeError("preimage: dimension mismatch");
  const Subspace ann = annihilator(w);
  if (ann.dim() == 0) return Subspace::full(m.cols(), m.modulus());
  return kernel(ann.basis() * m);
}

/// Extends `base` greedily by vectors of `pool` (in order) until the span
/// reaches `target` dimension; returns the added vectors.
inline std::vector<Vec> greedy_extension(const Subspace& base, const std::vector<Vec>& pool, std::size_t target) {
  std::vector<Vec> added;
  Subspace cur = base;
  for (const auto& v : pool) {
    if (cur.dim() >= target) break;
    if (cur.contains(v)) continue;
    added.push_back(v);
    cur = sum(cur, Subspace::span({v}, v.size(), base.modulus()));
  }
  return added;
}

/// A complement of `inner` inside `outer`, built greedily from outer's echelon basis.
inline Subspace complement_within(const Subspace& inner, const Subspace& outer) {
  auto added = greedy_extension(inner, outer.basis_vectors(), outer.dim());
  return Subspace::span(added, outer.ambient_dim(), outer.modulus());
}

}  // namespace linkgrass
