#pragma once

// Limit linear series on two rational components Y, Z glued at y = 0 ~ z = 0.
//
// Level i (0 <= i <= d) holds pairs (a(y), b(z)) with deg a <= d - i,
// deg b <= i and a(0) = b(0), in d + 1 coordinates:
//   [0]                node value c = a(0) = b(0)
//   [1 .. d-i]         a_1 .. a_{d-i}   (coefficients of y^k)
//   [d-i+1 .. d]       b_1 .. b_i       (coefficients of z^k)
// f_i(a, b) = (0, z b) and g_i(a, b) = (y a, 0).
// At level 0 the coordinates are exactly the coefficients of a, at level d
// those of b, so the two aspects of a point are V_0 and V_d themselves.

#include <map>
#include <optional>
#include <set>
#include <utility>
#include <vector>

#include "chain.hpp"
#include "enumerate.hpp"
#include "points.hpp"
#include "poly.hpp"
#include "ramification.hpp"

namespace linkgrass {

struct NodalModel {
  std::size_t d = 1;
  u32 p = 2;

  NodalModel() = default;
  NodalModel(std::size_t degree, u32 prime) : d(degree), p(checked_prime(prime)) {
    if (d < 1) throw InvalidInput("nodal model needs d >= 1");
  }

  std::size_t dim() const { return d + 1; }

  /// Coordinates of (a, b) at level i.
  Vec encode(std::size_t i, const Poly& a, const Poly& b) const {
    check_level(i);
    if (a.degree() > static_cast<long>(d - i) || b.degree() > static_cast<long>(i))
      throw InvalidInput("section degrees exceed the level's bounds");
    if (a.coeff(0) != b.coeff(0)) throw InvalidInput("sections disagree at the node");
    Vec v(dim(), Fp::zero(p));
    v[0] = a.coeff(0);
    for (std::size_t k = 1; k <= d - i; ++k) v[k] = a.coeff(k);
    for (std::size_t k = 1; k <= i; ++k) v[d - i + k] = b.coeff(k);
    return v;
  }

  std::pair<Poly, Poly> decode(std::size_t i, std::span<const Fp> v) const {
    check_level(i);
    if (v.size() != dim()) throw ShapeError("level vector has wrong length");
    std::vector<Fp> a{v[0]}, b{v[0]};
    for (std::size_t k = 1; k <= d - i; ++k) a.push_back(v[k]);
    for (std::size_t k = 1; k <= i; ++k) b.push_back(v[d - i + k]);
    return {Poly(std::move(a), p), Poly(std::move(b), p)};
  }

  /// f_i : level i -> level i+1.
  FpMatrix f(std::size_t i) const {
    check_map(i);
    FpMatrix m(dim(), dim(), p);
    m(d - i, 0) = Fp::one(p);
    for (std::size_t t = d - i + 1; t <= d; ++t) m(t, t) = Fp::one(p);
    return m;
  }

  /// g_i : level i+1 -> level i.
  FpMatrix g(std::size_t i) const {
    check_map(i);
    FpMatrix m(dim(), dim(), p);
    m(1, 0) = Fp::one(p);
    for (std::size_t k = 2; k <= d - i; ++k) m(k, k - 1) = Fp::one(p);
    return m;
  }

  friend bool operator==(const NodalModel&, const NodalModel&) = default;

 private:
  void check_level(std::size_t i) const {
    if (i > d) throw InvalidInput("level out of range");
  }
  void check_map(std::size_t i) const {
    if (i >= d) throw InvalidInput("map index out of range");
  }
};

/// The (d+1)-level chain of the model for series of projective rank r
/// (subspaces of dimension r + 1).
inline LinkedChain build_section_chain(std::size_t d, u32 p, std::size_t r = 0) {
  const NodalModel model(d, p);
  std::vector<FpMatrix> f, g;
  for (std::size_t i = 0; i < d; ++i) {
    f.push_back(model.f(i));
    g.push_back(model.g(i));
  }
  if (r + 1 > d + 1) throw InvalidInput("series rank exceeds the section space");
  return LinkedChain(d + 1, d + 1, r + 1, std::move(f), std::move(g), Fp::zero(p));
}

struct LimitSeriesPoint {
  NodalModel model;
  std::size_t r = 0;
  ChainPoint point;
  friend bool operator==(const LimitSeriesPoint&, const LimitSeriesPoint&) = default;
};

/// Aspect pair: spaces of polynomials of degree <= d on Y and on Z, with
/// their vanishing sequences at the node.
struct EHPair {
  std::size_t d = 0;
  std::size_t r = 0;
  Subspace vy;
  Subspace vz;
  std::vector<u64> ay;
  std::vector<u64> az;

  friend bool operator==(const EHPair& a, const EHPair& b) { return a.vy == b.vy && a.vz == b.vz; }
  friend auto operator<=>(const EHPair& a, const EHPair& b) {
    if (auto c = a.vy <=> b.vy; c != 0) return c;
    return a.vz <=> b.vz;
  }
};

inline EHPair make_eh_pair(const Subspace& vy, const Subspace& vz) {
  if (vy.ambient_dim() != vz.ambient_dim() || vy.dim() != vz.dim() || vy.dim() == 0)
    throw InvalidInput("aspects must be equal-dimensional spaces of degree-d polynomials");
  if (vy.modulus() != vz.modulus()) throw InvalidInput("aspects over different fields");
  EHPair e;
  e.d = vy.ambient_dim() - 1;
  e.r = vy.dim() - 1;
  e.vy = vy;
  e.vz = vz;
  e.ay = vanishing_sequence(vy, LinePoint::at(0)).vanishing;
  e.az = vanishing_sequence(vz, LinePoint::at(0)).vanishing;
  return e;
}

/// a^Y_j + a^Z_{r-j} >= d for every j.
inline bool is_crude(const EHPair& e) {
  for (std::size_t j = 0; j <= e.r; ++j)
    if (e.ay[j] + e.az[e.r - j] < e.d) return false;
  return true;
}

/// a^Y_j + a^Z_{r-j} = d for every j.
inline bool is_refined(const EHPair& e) {
  for (std::size_t j = 0; j <= e.r; ++j)
    if (e.ay[j] + e.az[e.r - j] != e.d) return false;
  return true;
}

inline EHPair forgetful_FR(const LimitSeriesPoint& pt) {
  const auto chain = build_section_chain(pt.model.d, pt.model.p, pt.r);
  if (!is_linked_point(chain, pt.point)) throw InvalidPoint("limit series point is not linked");
  return make_eh_pair(pt.point[0], pt.point[pt.model.d]);
}

namespace detail {

/// Elements of `v` (polynomials of degree <= d) vanishing to order >= k at 0.
inline Subspace order_at_least(const Subspace& v, std::size_t k) {
  const std::size_t n = v.ambient_dim();
  FpMatrix cut(0, n, v.modulus());
  for (std::size_t j = 0; j < std::min(k, n); ++j) cut.append_row(unit_vec(n, j, v.modulus()));
  if (cut.rows() == 0) return v;
  return intersect(v, kernel(cut));
}

/// Level-i vectors (a / y^i, b / z^(d-i)) for a in ky, b in kz agreeing at the node.
inline Subspace glue(const NodalModel& m, std::size_t i, const Subspace& ky, const Subspace& kz) {
  const std::size_t d = m.d, n = d + 2;  // extended: [cY, a_1..a_{d-i}, b_1..b_i, cZ]
  std::vector<Vec> gens;
  for (const auto& a : ky.basis_vectors()) {
    Vec v(n, Fp::zero(m.p));
    v[0] = a[i];
    for (std::size_t k = 1; k <= d - i; ++k) v[k] = a[i + k];
    gens.push_back(std::move(v));
  }
  for (const auto& b : kz.basis_vectors()) {
    Vec v(n, Fp::zero(m.p));
    v[n - 1] = b[d - i];
    for (std::size_t k = 1; k <= i; ++k) v[d - i + k] = b[d - i + k];
    gens.push_back(std::move(v));
  }
  FpMatrix agree(1, n, m.p);
  agree(0, 0) = Fp::one(m.p);
  agree(0, n - 1) = -Fp::one(m.p);
  const auto glued = intersect(Subspace::span(gens, n, m.p), kernel(agree));
  FpMatrix drop(0, d + 1, m.p);
  for (const auto& v : glued.basis_vectors()) drop.append_row(Vec(v.begin(), v.end() - 1));
  return Subspace::span(drop);
}

inline LinkedChain chain_for(const EHPair& e) { return build_section_chain(e.d, e.vy.modulus(), e.r); }

}  // namespace detail

/// The unique point over a refined pair: V_i glues the Y-sections vanishing
/// to order >= i with the Z-sections vanishing to order >= d - i.
inline LimitSeriesPoint reconstruct_refined(const EHPair& e) {
  if (!is_refined(e)) throw PreconditionError("pair is not refined");
  const NodalModel m(e.d, e.vy.modulus());
  LimitSeriesPoint out{m, e.r, {}};
  for (std::size_t i = 0; i <= e.d; ++i) {
    auto vi = detail::glue(m, i, detail::order_at_least(e.vy, i), detail::order_at_least(e.vz, e.d - i));
    if (vi.dim() != e.r + 1) throw InternalError("refined reconstruction has wrong rank at level " + std::to_string(i));
    out.point.spaces.push_back(std::move(vi));
  }
  if (!is_linked_point(detail::chain_for(e), out.point)) throw InternalError("refined reconstruction is not linked");
  return out;
}

/// A preimage of a crude pair, built level by level. Each V_i is the image
/// f(V_{i-1}) plus the Z-vanishing part of g^{-1}(V_{i-1}); when that is one
/// short, a generator glued from a first-order Y-section and a Z-section of
/// exact order d - i is added, or else a Y-vanishing generator from the
/// Z-sections of order > d - i. Free choices are the first echelon vectors.
inline LimitSeriesPoint lift_crude(const EHPair& e) {
  if (!is_crude(e)) throw PreconditionError("pair is not crude");
  const NodalModel m(e.d, e.vy.modulus());
  const auto chain = detail::chain_for(e);
  const std::size_t d = e.d, dim = d + 1, rank = e.r + 1;
  const u32 p = m.p;
  LimitSeriesPoint out{m, e.r, {}};
  out.point.spaces.push_back(e.vy);
  for (std::size_t i = 1; i < d; ++i) {
    const Subspace& prev = out.point[i - 1];
    const auto incoming = image(m.f(i - 1), prev);
    const auto pre = preimage(m.g(i - 1), prev);
    // Z side zero: node value and every b-coordinate vanish
    FpMatrix zside(0, dim, p), bside(0, dim, p);
    zside.append_row(unit_vec(dim, 0, p));
    for (std::size_t k = 1; k <= i; ++k) {
      zside.append_row(unit_vec(dim, d - i + k, p));
      bside.append_row(unit_vec(dim, d - i + k, p));
    }
    const auto yonly = intersect(pre, kernel(zside));
    auto vi = sum(incoming, yonly);
    if (vi.dim() + 1 == rank) {
      std::optional<Vec> extra;
      // first-order Y-section: (u, const) in g^{-1}(prev) with u(0) != 0
      const auto u_space = intersect(pre, kernel(bside));
      const auto u_extra = complement_within(yonly, u_space).basis_vectors();
      const auto kz = detail::order_at_least(e.vz, d - i);
      const auto kz_next = detail::order_at_least(e.vz, d - i + 1);
      const auto exact_order = complement_within(kz_next, kz).basis_vectors();
      if (!u_extra.empty() && !exact_order.empty()) {
        Vec w = u_extra.front();
        const Vec& b = exact_order.front();
        const Fp scale = w[0] * inverse(b[d - i]);
        for (std::size_t k = 1; k <= i; ++k) w[d - i + k] = scale * b[d - i + k];
        extra = w;
      } else {
        for (const auto& b : kz_next.basis_vectors()) {
          Vec w(dim, Fp::zero(p));
          for (std::size_t k = 1; k <= i; ++k) w[d - i + k] = b[d - i + k];
          if (!vi.contains(w)) {
            extra = w;
            break;
          }
        }
      }
      if (extra) vi = sum(vi, Subspace::span({*extra}, dim, p));
    }
    if (vi.dim() != rank) throw InternalError("crude lift has rank " + std::to_string(vi.dim()) + " at level " +
                                              std::to_string(i));
    out.point.spaces.push_back(std::move(vi));
  }
  if (d >= 1) out.point.spaces.push_back(e.vz);
  if (!is_linked_point(chain, out.point)) throw InternalError("crude lift is not linked");
  return out;
}

/// Lower bounds alpha_j(P) >= min_alpha[j] on the Y-aspect (V_0) or the
/// Z-aspect (V_d) at a rational point of that component.
struct RamificationConstraint {
  bool on_y = true;
  LinePoint point;
  std::vector<u64> min_alpha;
  friend bool operator==(const RamificationConstraint&, const RamificationConstraint&) = default;
};

namespace detail {
inline bool satisfies(const Subspace& aspect, const RamificationConstraint& rc) {
  const auto data = vanishing_sequence(aspect, rc.point);
  if (rc.min_alpha.size() > data.ramification.size()) throw InvalidInput("constraint longer than r + 1");
  for (std::size_t j = 0; j < rc.min_alpha.size(); ++j)
    if (data.ramification[j] < rc.min_alpha[j]) return false;
  return true;
}
}  // namespace detail

/// Every linked point of the section chain (spaces of dimension r + 1)
/// meeting the constraints, in enumeration order.
inline bool for_each_limit_series(std::size_t d, std::size_t r, u32 q,
                                  const std::vector<RamificationConstraint>& constraints, Budget& budget,
                                  const std::function<bool(const LimitSeriesPoint&)>& visit) {
  const auto chain = build_section_chain(d, q, r);
  const NodalModel model(d, q);
  return for_each_subspace(chain.d, chain.r, q, budget, [&](const Subspace& v0) {
    for (const auto& rc : constraints)
      if (rc.on_y && !detail::satisfies(v0, rc)) return true;
    return for_each_point_from(chain, v0, budget, [&](const ChainPoint& pt) {
      for (const auto& rc : constraints)
        if (!rc.on_y && !detail::satisfies(pt[d], rc)) return true;
      return visit(LimitSeriesPoint{model, r, pt});
    });
  });
}

inline std::vector<LimitSeriesPoint> enumerate_limit_series(std::size_t d, std::size_t r, u32 q,
                                                            const std::vector<RamificationConstraint>& constraints,
                                                            Budget& budget) {
  std::vector<LimitSeriesPoint> out;
  for_each_limit_series(d, r, q, constraints, budget, [&](const LimitSeriesPoint& pt) {
    out.push_back(pt);
    return true;
  });
  return out;
}

struct ImageReport {
  std::size_t d = 0, r = 0;
  u32 q = 2;
  u64 points = 0;             ///< linked points enumerated
  u64 image_size = 0;         ///< distinct FR values
  u64 crude_size = 0;         ///< crude pairs
  u64 refined_size = 0;       ///< refined pairs
  bool sets_equal = false;
  std::vector<EHPair> image_not_crude;
  std::vector<EHPair> crude_not_image;
  bool refined_unique = true;      ///< every refined pair has exactly one preimage
  bool reconstruct_matches = true; ///< reconstruct_refined returns that preimage
  u64 lift_failures = 0;           ///< crude pairs whose lift is not a preimage
  u64 refined_nonexact = 0;        ///< points over refined pairs that are not exact
  u64 nonrefined_with_exact = 0;   ///< crude non-refined pairs with an exact preimage
  u64 nonrefined_without_exact = 0;
};

/// Compares FR(all linked points) with the set of crude pairs, exhaustively.
inline ImageReport fr_image_report(std::size_t d, std::size_t r, u32 q, Budget& budget) {
  ImageReport rep;
  rep.d = d;
  rep.r = r;
  rep.q = q;
  const auto chain = build_section_chain(d, q, r);
  struct Fibre {
    u64 count = 0;
    bool has_exact = false;
    std::optional<ChainPoint> first;
  };
  std::map<std::pair<Subspace, Subspace>, Fibre> image;
  for_each_limit_series(d, r, q, {}, budget, [&](const LimitSeriesPoint& pt) {
    ++rep.points;
    auto& fib = image[{pt.point[0], pt.point[d]}];
    ++fib.count;
    const bool exact = is_exact(chain, pt.point);
    fib.has_exact = fib.has_exact || exact;
    if (!fib.first) fib.first = pt.point;
    return true;
  });
  rep.image_size = image.size();

  const auto aspects = enumerate_subspaces(d + 1, r + 1, q, budget);
  std::set<std::pair<Subspace, Subspace>> crude;
  for (const auto& vy : aspects)
    for (const auto& vz : aspects) {
      budget.charge();
      const auto e = make_eh_pair(vy, vz);
      if (!is_crude(e)) continue;
      crude.insert({vy, vz});
      ++rep.crude_size;
      const auto it = image.find({vy, vz});
      if (it == image.end()) {
        rep.crude_not_image.push_back(e);
      } else if (is_refined(e)) {
        ++rep.refined_size;
        if (it->second.count != 1) rep.refined_unique = false;
        if (!it->second.has_exact) ++rep.refined_nonexact;
        if (reconstruct_refined(e).point != *it->second.first) rep.reconstruct_matches = false;
      } else {
        ++(it->second.has_exact ? rep.nonrefined_with_exact : rep.nonrefined_without_exact);
      }
      try {
        const auto lifted = lift_crude(e);
        if (forgetful_FR(lifted) != e) ++rep.lift_failures;
      } catch (const InternalError&) {
        ++rep.lift_failures;
      }
    }
  for (const auto& [key, fib] : image)
    if (!crude.contains(key)) rep.image_not_crude.push_back(make_eh_pair(key.first, key.second));
  rep.sets_equal = rep.image_not_crude.empty() && rep.crude_not_image.empty();
  return rep;
}

}  // namespace linkgrass
