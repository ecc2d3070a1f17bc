#pragma once

// Limit series points over GF(p)[e]/(e^2) in the nodal model.

#include <vector>

#include "dual_module.hpp"
#include "limit_series.hpp"

namespace linkgrass {

struct DualLimitPoint {
  NodalModel model;
  std::vector<DualModule> spaces;  ///< one free submodule per level
};

inline bool is_linked_dual(const DualLimitPoint& pt) {
  const auto& m = pt.model;
  if (pt.spaces.size() != m.d + 1) throw InvalidPoint("dual point needs d + 1 levels");
  for (const auto& v : pt.spaces)
    if (!v.free_cofree()) throw NonFreeModule("dual point has a non-free level");
  for (std::size_t i = 0; i < m.d; ++i) {
    if (!pt.spaces[i + 1].contains(image(to_dual(m.f(i)), pt.spaces[i]))) return false;
    if (!pt.spaces[i].contains(image(to_dual(m.g(i)), pt.spaces[i + 1]))) return false;
  }
  return true;
}

/// a_j = the largest i such that the order-i truncation map (first i
/// coefficients at the node) has rank <= j on all of Spec of the ring.
inline std::vector<u64> vanishing_sequence_dual(const DualModule& aspect) {
  if (!aspect.free_cofree()) throw NonFreeModule("vanishing sequence needs a free module with free quotient");
  const auto& gens = aspect.generators();
  const std::size_t n = aspect.ambient_dim();
  std::vector<u64> out;
  for (std::size_t j = 0; j < aspect.rank(); ++j) {
    u64 best = 0;
    for (std::size_t i = 1; i <= n; ++i) {
      std::vector<std::size_t> cols(i);
      for (std::size_t t = 0; t < i; ++t) cols[t] = t;
      if (!rank_everywhere_at_most(gens.select_columns(cols), j)) break;
      best = i;
    }
    out.push_back(best);
  }
  return out;
}

/// A first-order family over GF(p)[e] with d = 2, r = 0:
/// (y^2 + e y, 0), (y + e, e), (e, z + e). Its node vanishing drops by one.
inline DualLimitPoint first_order_node_point(u32 p) {
  const NodalModel m(2, p);
  const Dual z = Dual::zero(p), one = Dual::one(p), eps = Dual::epsilon(p);
  auto level = [&](std::vector<Dual> v) {
    DualMatrix g(1, 3, p);
    for (std::size_t j = 0; j < 3; ++j) g(0, j) = v[j];
    return DualModule::span(g);
  };
  return {m, {level({z, eps, one}), level({eps, one, z}), level({eps, one, z})}};
}

struct DualProbeReport {
  u32 p = 2;
  std::size_t d = 2;
  bool linked = false;
  std::vector<u64> ay, az;          ///< over the dual numbers
  std::vector<u64> ay_mod, az_mod;  ///< at the closed point
  bool d_inequality = false;        ///< a^Y_j + a^Z_{r-j} >= d for all j (dual numbers)
  bool d_minus_one_inequality = false;
  bool closed_point_crude = false;
  bool closed_point_refined = false;
  friend bool operator==(const DualProbeReport&, const DualProbeReport&) = default;
};

inline DualProbeReport dual_probe(const DualLimitPoint& pt) {
  DualProbeReport rep;
  rep.p = pt.model.p;
  rep.d = pt.model.d;
  rep.linked = is_linked_dual(pt);
  const auto& vy = pt.spaces.front();
  const auto& vz = pt.spaces.back();
  rep.ay = vanishing_sequence_dual(vy);
  rep.az = vanishing_sequence_dual(vz);
  const auto e = make_eh_pair(vy.residue(), vz.residue());
  rep.ay_mod = e.ay;
  rep.az_mod = e.az;
  const std::size_t r = rep.ay.size() - 1;
  rep.d_inequality = rep.d_minus_one_inequality = true;
  for (std::size_t j = 0; j <= r; ++j) {
    const u64 s = rep.ay[j] + rep.az[r - j];
    rep.d_inequality = rep.d_inequality && s >= rep.d;
    rep.d_minus_one_inequality = rep.d_minus_one_inequality && s + 1 >= rep.d;
  }
  rep.closed_point_crude = is_crude(e);
  rep.closed_point_refined = is_refined(e);
  return rep;
}

}  // namespace linkgrass
