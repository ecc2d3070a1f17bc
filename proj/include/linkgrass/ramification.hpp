#pragma once

// Vanishing sequences, Wronskians, the Brill-Noether number and Pluecker
// certificates for spaces of polynomials of degree <= m over GF(p).

#include <cstdint>
#include <string>
#include <vector>

#include "poly.hpp"
#include "subspace.hpp"
#include "tameness.hpp"

namespace linkgrass {

/// A GF(p)-rational point of the projective line: a finite value or infinity.
struct LinePoint {
  bool infinite = false;
  u32 value = 0;

  static LinePoint at(u32 v) { return {false, v}; }
  static LinePoint infinity() { return {true, 0}; }
  std::string label() const { return infinite ? "inf" : std::to_string(value); }
  friend auto operator<=>(const LinePoint&, const LinePoint&) = default;
};

/// All of GF(p) followed by infinity.
inline std::vector<LinePoint> all_rational_points(u32 p) {
  std::vector<LinePoint> pts;
  for (u32 v = 0; v < p; ++v) pts.push_back(LinePoint::at(v));
  pts.push_back(LinePoint::infinity());
  return pts;
}

struct RamificationData {
  LinePoint point;
  std::vector<u64> vanishing;  ///< a_j, strictly increasing
  std::vector<u64> ramification;  ///< alpha_j = a_j - j
  bool tame = true;

  u64 weight() const {
    u64 w = 0;
    for (auto x : ramification) w += x;
    return w;
  }
  friend bool operator==(const RamificationData&, const RamificationData&) = default;
};

/// Coefficient vector of `v` (ascending in y) rewritten in the basis of
/// powers of the local parameter at P: (y-P)^k, or 1/y at infinity.
inline Vec local_expansion(std::span<const Fp> v, LinePoint pt, u32 p) {
  const std::size_t n = v.size();
  Vec out(n, Fp::zero(p));
  if (pt.infinite) {
    for (std::size_t k = 0; k < n; ++k) out[k] = v[n - 1 - k];
    return out;
  }
  const Poly f = poly_from_vec(v, p);
  const Fp x(pt.value, p);
  for (std::size_t k = 0; k < n; ++k) out[k] = f.hasse(k).eval(x);
  return out;
}

/// Orders of vanishing at P realised by V, a space of polynomials of degree
/// <= m held as coefficient vectors of length m + 1. The order at infinity
/// of a polynomial f is m - deg f.
inline RamificationData vanishing_sequence(const Subspace& v, LinePoint pt) {
  const u32 p = v.modulus();
  if (!pt.infinite && pt.value >= p) throw InvalidInput("point is not in GF(p)");
  FpMatrix local(0, v.ambient_dim(), p);
  for (std::size_t k = 0; k < v.dim(); ++k) local.append_row(local_expansion(v.basis().row(k), pt, p));
  const auto triangular = Subspace::span(local);
  RamificationData out;
  out.point = pt;
  for (std::size_t j = 0; j < triangular.dim(); ++j) {
    out.vanishing.push_back(triangular.pivots()[j]);
    out.ramification.push_back(triangular.pivots()[j] - j);
  }
  out.tame = out.vanishing.empty() || is_tame(out.vanishing, p);
  return out;
}

inline RamificationData vanishing_sequence(const Subspace& v, LinePoint pt, std::size_t m) {
  if (v.ambient_dim() != m + 1) throw ShapeError("space is not inside polynomials of degree <= m");
  return vanishing_sequence(v, pt);
}

/// (r+1)(d-r) - r g - sum of all ramification indices.
inline std::int64_t rho(std::int64_t g, std::int64_t r, std::int64_t d,
                        const std::vector<std::vector<std::int64_t>>& alphas) {
  if (g < 0 || r < 0 || d < 0) throw InvalidInput("rho: g, r, d must be non-negative");
  std::int64_t total = 0;
  for (const auto& a : alphas) {
    if (a.size() != static_cast<std::size_t>(r + 1)) throw InvalidInput("ramification sequence must have length r+1");
    for (std::size_t j = 0; j < a.size(); ++j) {
      if (a[j] < 0) throw InvalidInput("ramification indices must be non-negative");
      if (j > 0 && a[j] < a[j - 1]) throw InvalidInput("ramification sequence must be non-decreasing");
      total += a[j];
    }
  }
  return (r + 1) * (d - r) - r * g - total;
}

/// det(D^(j) v_k) over a basis v_0..v_r of V. A change of basis scales it by
/// a nonzero constant.
inline Poly wronskian(const Subspace& v) {
  const u32 p = v.modulus();
  const std::size_t n = v.dim();
  std::vector<std::vector<Poly>> m(n, std::vector<Poly>(n, Poly(p)));
  for (std::size_t k = 0; k < n; ++k) {
    const Poly f = poly_from_vec(v.basis().row(k), p);
    for (std::size_t j = 0; j < n; ++j) m[k][j] = f.hasse(j);
  }
  return poly_determinant(m, p);
}

inline bool is_separable(const Subspace& v) { return !wronskian(v).is_zero(); }

struct PointCheck {
  RamificationData data;
  u64 wronskian_order = 0;  ///< order of the Wronskian at the point (0 when inseparable)
  friend bool operator==(const PointCheck&, const PointCheck&) = default;
};

struct PluckerCertificate {
  std::int64_t g = 0;
  std::size_t r = 0;  ///< dim V - 1
  std::size_t m = 0;  ///< degree
  std::int64_t bound = 0;
  u64 found_weight = 0;
  bool separable = false;
  bool all_inspected_tame = true;
  bool within_bound = true;    ///< found_weight <= bound (only asserted when separable)
  bool equality = false;       ///< separable and found_weight == bound
  bool wronskian_splits = false;  ///< inspected Wronskian orders exhaust its degree (r+1)(m-r)
  Poly wronskian;
  std::vector<PointCheck> points;
  friend bool operator==(const PluckerCertificate&, const PluckerCertificate&) = default;
};

/// Weight bound (r+1) m + binom(r+1, 2)(2g - 2).
inline std::int64_t plucker_bound(std::size_t r, std::size_t m, std::int64_t g) {
  const auto rr = static_cast<std::int64_t>(r);
  return (rr + 1) * static_cast<std::int64_t>(m) + (rr + 1) * rr / 2 * (2 * g - 2);
}

inline PluckerCertificate plucker_check(const Subspace& v, std::int64_t g, const std::vector<LinePoint>& inspect) {
  if (v.dim() == 0) throw InvalidInput("Pluecker check needs a nonzero space");
  if (g < 0) throw InvalidInput("genus must be non-negative");
  PluckerCertificate cert;
  cert.g = g;
  cert.r = v.dim() - 1;
  cert.m = v.ambient_dim() - 1;
  cert.bound = plucker_bound(cert.r, cert.m, g);
  cert.wronskian = wronskian(v);
  cert.separable = !cert.wronskian.is_zero();
  const std::int64_t wdeg = static_cast<std::int64_t>((cert.r + 1) * (cert.m - cert.r));
  std::int64_t order_total = 0;
  for (const auto& pt : inspect) {
    PointCheck pc;
    pc.data = vanishing_sequence(v, pt);
    if (cert.separable) {
      pc.wronskian_order = pt.infinite ? static_cast<u64>(wdeg - cert.wronskian.degree())
                                       : *cert.wronskian.order_at(Fp(pt.value, v.modulus()));
      order_total += static_cast<std::int64_t>(pc.wronskian_order);
    }
    cert.found_weight += pc.data.weight();
    cert.all_inspected_tame = cert.all_inspected_tame && pc.data.tame;
    cert.points.push_back(std::move(pc));
  }
  cert.within_bound = static_cast<std::int64_t>(cert.found_weight) <= cert.bound;
  cert.equality = cert.separable && static_cast<std::int64_t>(cert.found_weight) == cert.bound;
  cert.wronskian_splits = cert.separable && order_total == wdeg;
  return cert;
}

inline PluckerCertificate plucker_check(const Subspace& v, std::int64_t g = 0) {
  return plucker_check(v, g, all_rational_points(v.modulus()));
}

}  // namespace linkgrass
