#pragma once

// Chains of d-dimensional spaces E_0, ..., E_{n-1} with maps
// f_i : E_i -> E_{i+1} and g_i : E_{i+1} -> E_i, and their linked points.
// Indices are 0-based throughout: f[i] and g[i] connect levels i and i+1.

#include <compare>
#include <optional>
#include <string>
#include <vector>

#include "errors.hpp"
#include "subspace.hpp"

namespace linkgrass {

struct LinkedChain {
  std::size_t n = 0;  ///< number of levels
  std::size_t d = 0;  ///< common ambient dimension
  std::size_t r = 0;  ///< rank of the subspaces at each level
  u32 p = 2;
  std::vector<FpMatrix> f;  ///< n-1 maps E_i -> E_{i+1}
  std::vector<FpMatrix> g;  ///< n-1 maps E_{i+1} -> E_i
  Fp s;                     ///< f_i g_i = g_i f_i = s * id

  LinkedChain() = default;
  LinkedChain(std::size_t levels, std::size_t dim, std::size_t rank, std::vector<FpMatrix> fs,
              std::vector<FpMatrix> gs, Fp scalar)
      : n(levels), d(dim), r(rank), p(scalar.modulus()), f(std::move(fs)), g(std::move(gs)), s(scalar) {
    checked_prime(p);
    if (n == 0) throw InvalidInput("chain needs at least one level");
    if (r > d) throw InvalidInput("rank exceeds ambient dimension");
    if (f.size() + 1 != n || g.size() + 1 != n) throw ShapeError("chain of n levels needs n-1 maps each way");
    for (const auto* maps : {&f, &g})
      for (const auto& m : *maps) {
        if (m.rows() != d || m.cols() != d) throw ShapeError("all chain maps must be d x d (common ambient dimension)");
        if (m.modulus() != p) throw InvalidInput("chain maps over different fields");
      }
  }

  /// Forget levels n', n'+1, ...
  LinkedChain truncated(std::size_t levels) const {
    if (levels == 0 || levels > n) throw InvalidInput("truncation length out of range");
    return LinkedChain(levels, d, r, {f.begin(), f.begin() + (levels - 1)}, {g.begin(), g.begin() + (levels - 1)}, s);
  }

  /// Same data read backwards; the roles of f and g swap.
  LinkedChain reversed() const {
    return LinkedChain(n, d, r, {g.rbegin(), g.rend()}, {f.rbegin(), f.rend()}, s);
  }

  LinkedChain with_rank(std::size_t rank) const { return LinkedChain(n, d, rank, f, g, s); }

  friend bool operator==(const LinkedChain&, const LinkedChain&) = default;
};

struct Violation {
  std::string condition;  ///< "I", "II" or "III"
  std::size_t index = 0;  ///< map index i
  std::string detail;
  Vec witness;

  friend bool operator==(const Violation&, const Violation&) = default;
};

struct ValidationReport {
  std::vector<Violation> violations;
  bool valid() const { return violations.empty(); }
  friend bool operator==(const ValidationReport&, const ValidationReport&) = default;
};

namespace detail {

/// A basis vector of `a` not in `b`, if any.
inline std::optional<Vec> escaping_vector(const Subspace& a, const Subspace& b) {
  for (const auto& v : a.basis_vectors())
    if (!b.contains(v)) return v;
  return std::nullopt;
}

inline std::optional<Vec> first_nonzero_column(const FpMatrix& m) {
  for (std::size_t j = 0; j < m.cols(); ++j) {
    Vec col = m.column(j);
    if (!is_zero_vec(col)) return unit_vec(m.cols(), j, m.modulus());
  }
  return std::nullopt;
}

}  // namespace detail

/// Checks the three linked-Grassmannian axioms over the field:
///  I   f_i g_i = g_i f_i = s;
///  II  where s = 0, ker f_i = im g_i and ker g_i = im f_i;
///  III im f_i meets ker f_{i+1} trivially and im g_{i+1} meets ker g_i trivially.
/// Every violation carries a witness vector.
inline ValidationReport validate_chain(const LinkedChain& c) {
  ValidationReport rep;
  const auto scalar = FpMatrix::identity(c.d, c.p).scaled(c.s);
  for (std::size_t i = 0; i + 1 < c.n; ++i) {
    if (auto w = detail::first_nonzero_column(c.f[i] * c.g[i] - scalar))
      rep.violations.push_back({"I", i, "f*g differs from s*id on this vector", *w});
    if (auto w = detail::first_nonzero_column(c.g[i] * c.f[i] - scalar))
      rep.violations.push_back({"I", i, "g*f differs from s*id on this vector", *w});
  }
  if (c.s.is_zero()) {
    for (std::size_t i = 0; i + 1 < c.n; ++i) {
      const auto kf = kernel(c.f[i]), ig = image(c.g[i]);
      const auto kg = kernel(c.g[i]), imf = image(c.f[i]);
      if (auto w = detail::escaping_vector(kf, ig))
        rep.violations.push_back({"II", i, "vector in ker f not in im g", *w});
      else if (auto w2 = detail::escaping_vector(ig, kf))
        rep.violations.push_back({"II", i, "vector in im g not in ker f", *w2});
      if (auto w = detail::escaping_vector(kg, imf))
        rep.violations.push_back({"II", i, "vector in ker g not in im f", *w});
      else if (auto w2 = detail::escaping_vector(imf, kg))
        rep.violations.push_back({"II", i, "vector in im f not in ker g", *w2});
    }
  }
  for (std::size_t i = 0; i + 2 < c.n; ++i) {
    const auto a = intersect(image(c.f[i]), kernel(c.f[i + 1]));
    if (a.dim() > 0) rep.violations.push_back({"III", i, "im f_i meets ker f_{i+1}", a.basis_vector(0)});
    const auto b = intersect(image(c.g[i + 1]), kernel(c.g[i]));
    if (b.dim() > 0) rep.violations.push_back({"III", i, "im g_{i+1} meets ker g_i", b.basis_vector(0)});
  }
  return rep;
}

/// s = 0: every f_i projects onto the first d1 coordinates and every g_i onto
/// the last d - d1. s != 0: f_i = id, g_i = s * id.
inline LinkedChain make_standard_chain(std::size_t n, std::size_t d, std::size_t d1, Fp s, std::size_t r) {
  const u32 p = s.modulus();
  std::vector<FpMatrix> f, g;
  if (s.is_zero()) {
    if (d1 == 0 || d1 >= d) throw DegenerateChain("s = 0 requires 0 < d1 < d");
    std::vector<std::int64_t> df(d, 0), dg(d, 0);
    for (std::size_t k = 0; k < d; ++k) (k < d1 ? df : dg)[k] = 1;
    f.assign(n - 1, diagonal(df, p));
    g.assign(n - 1, diagonal(dg, p));
  } else {
    f.assign(n - 1, FpMatrix::identity(d, p));
    g.assign(n - 1, FpMatrix::identity(d, p).scaled(s));
  }
  return LinkedChain(n, d, r, std::move(f), std::move(g), s);
}

/// The two-step chain with f = diag(1,0), g = diag(0,1), s = 0 and r = 1.
/// Its points form two lines meeting in a single non-exact point.
inline LinkedChain crossing_chain(u32 p) { return make_standard_chain(2, 2, 1, Fp::zero(p), 1); }

/// Tuple (V_0, ..., V_{n-1}) of subspaces, one per level.
struct ChainPoint {
  std::vector<Subspace> spaces;

  std::size_t size() const { return spaces.size(); }
  const Subspace& operator[](std::size_t i) const { return spaces[i]; }

  ChainPoint truncated(std::size_t levels) const { return {{spaces.begin(), spaces.begin() + levels}}; }
  ChainPoint reversed() const { return {{spaces.rbegin(), spaces.rend()}}; }

  friend bool operator==(const ChainPoint&, const ChainPoint&) = default;
  friend auto operator<=>(const ChainPoint& a, const ChainPoint& b) { return a.spaces <=> b.spaces; }
};

/// Throws InvalidPoint on a length, dimension or rank mismatch.
inline void require_shape(const LinkedChain& c, const ChainPoint& pt) {
  if (pt.size() != c.n) throw InvalidPoint("point has " + std::to_string(pt.size()) + " levels, chain has " +
                                           std::to_string(c.n));
  for (const auto& v : pt.spaces) {
    if (v.ambient_dim() != c.d) throw InvalidPoint("subspace in wrong ambient dimension");
    if (v.dim() != c.r) throw InvalidPoint("subspace of rank " + std::to_string(v.dim()) + ", expected " +
                                           std::to_string(c.r));
    if (v.modulus() != c.p) throw InvalidPoint("subspace over a different field");
  }
}

/// f_i(V_i) <= V_{i+1} and g_i(V_{i+1}) <= V_i for all i.
inline bool is_linked_point(const LinkedChain& c, const ChainPoint& pt) {
  require_shape(c, pt);
  for (std::size_t i = 0; i + 1 < c.n; ++i) {
    if (!pt[i + 1].contains(image(c.f[i], pt[i]))) return false;
    if (!pt[i].contains(image(c.g[i], pt[i + 1]))) return false;
  }
  return true;
}

}  // namespace linkgrass
