#pragma once

#include <exception>
#include <functional>
#include <map>
#include <thread>
#include <utility>
#include <vector>

#include "chain.hpp"
#include "enumerate.hpp"

namespace linkgrass {

namespace detail {

inline bool extend_points(const LinkedChain& c, std::vector<Subspace>& prefix, Budget& budget,
                          const std::function<bool(const ChainPoint&)>& visit) {
  const std::size_t i = prefix.size() - 1;
  if (prefix.size() == c.n) return visit(ChainPoint{prefix});
  const Subspace& vi = prefix.back();
  const Subspace lower = image(c.f[i], vi);
  const Subspace upper = preimage(c.g[i], vi);
  return for_each_between(lower, upper, c.r, budget, [&](const Subspace& next) {
    prefix.push_back(next);
    const bool go_on = extend_points(c, prefix, budget, visit);
    prefix.pop_back();
    return go_on;
  });
}

}  // namespace detail

/// All linked points whose first space is `v0`. Each later space ranges only
/// over f_i(V_i) <= V_{i+1} <= g_i^{-1}(V_i).
inline bool for_each_point_from(const LinkedChain& c, const Subspace& v0, Budget& budget,
                                const std::function<bool(const ChainPoint&)>& visit) {
  std::vector<Subspace> prefix{v0};
  return detail::extend_points(c, prefix, budget, visit);
}

/// Every linked point exactly once, in a deterministic (depth-first, increasing) order.
inline bool for_each_point(const LinkedChain& c, Budget& budget, const std::function<bool(const ChainPoint&)>& visit) {
  return for_each_subspace(c.d, c.r, c.p, budget,
                           [&](const Subspace& v0) { return for_each_point_from(c, v0, budget, visit); });
}

inline std::vector<ChainPoint> enumerate_points(const LinkedChain& c, Budget& budget) {
  std::vector<ChainPoint> out;
  for_each_point(c, budget, [&](const ChainPoint& pt) {
    out.push_back(pt);
    return true;
  });
  return out;
}

inline std::vector<ChainPoint> enumerate_points(const LinkedChain& c, u32 q, Budget& budget) {
  if (q != c.p) throw InvalidInput("enumeration field must be the chain's field");
  return enumerate_points(c, budget);
}

struct SignatureReport {
  std::vector<std::size_t> f_ranks;  ///< dim f_i(V_i)
  std::vector<std::size_t> g_ranks;  ///< dim g_i(V_{i+1})
  bool exact = false;

  friend bool operator==(const SignatureReport&, const SignatureReport&) = default;
};

/// Exactness in its containment form: ker g_i|V_{i+1} <= f_i(V_i) and
/// ker f_i|V_i <= g_i(V_{i+1}) for every i.
inline bool is_exact(const LinkedChain& c, const ChainPoint& pt) {
  require_shape(c, pt);
  for (std::size_t i = 0; i + 1 < c.n; ++i) {
    const auto fv = image(c.f[i], pt[i]);
    const auto gv = image(c.g[i], pt[i + 1]);
    if (!fv.contains(intersect(pt[i + 1], kernel(c.g[i])))) return false;
    if (!gv.contains(intersect(pt[i], kernel(c.f[i])))) return false;
  }
  return true;
}

inline SignatureReport signature(const LinkedChain& c, const ChainPoint& pt) {
  require_shape(c, pt);
  SignatureReport rep;
  for (std::size_t i = 0; i + 1 < c.n; ++i) {
    rep.f_ranks.push_back(image(c.f[i], pt[i]).dim());
    rep.g_ranks.push_back(image(c.g[i], pt[i + 1]).dim());
  }
  rep.exact = is_exact(c, pt);
  return rep;
}

/// First-order deformations of a linked point inside the product of
/// Grassmannians that preserve linkage.
///
/// Unknowns are maps phi_i : V_i -> E_i/V_i, with E_i/V_i identified with a
/// complement C_i. For basis vectors v of V_i and w of V_{i+1} the system is
///   f_i(phi_i v) = phi_{i+1}(f_i v)  and  g_i(phi_{i+1} w) = phi_i(g_i w)   mod V.
/// `complements` defaults to the coordinate vectors at non-pivot columns; the
/// answer does not depend on the choice.
inline std::size_t tangent_dimension(const LinkedChain& c, const ChainPoint& pt,
                                     const std::vector<Subspace>* complements = nullptr) {
  require_shape(c, pt);
  const std::size_t d = c.d, r = c.r, q = d - r, n = c.n;
  const u32 p = c.p;
  if (r == 0 || q == 0) return 0;
  if (complements && complements->size() != n) throw InvalidInput("one complement per level required");

  std::vector<std::vector<Vec>> comp(n);
  std::vector<FpMatrix> to_coords(n);  // w * to_coords = (V-coordinates | C-coordinates)
  for (std::size_t i = 0; i < n; ++i) {
    if (complements) {
      const auto& ci = (*complements)[i];
      if (ci.dim() != q || sum(ci, pt[i]).dim() != d)
        throw InvalidComplement("complement at level " + std::to_string(i) + " is not complementary");
      comp[i] = ci.basis_vectors();
    } else {
      for (auto j : pt[i].free_columns()) comp[i].push_back(unit_vec(d, j, p));
    }
    FpMatrix m = pt[i].basis();
    for (const auto& v : comp[i]) m.append_row(v);
    to_coords[i] = invert(m);
  }
  auto split = [&](std::size_t lvl, const Vec& w) {
    FpMatrix row(1, d, p);
    for (std::size_t j = 0; j < d; ++j) row(0, j) = w[j];
    const FpMatrix co = row * to_coords[lvl];
    Vec in_v(co.row(0).begin(), co.row(0).begin() + r), in_c(co.row(0).begin() + r, co.row(0).end());
    return std::make_pair(in_v, in_c);
  };
  auto var = [&](std::size_t lvl, std::size_t k, std::size_t l) { return lvl * r * q + k * q + l; };
  const std::size_t unknowns = n * r * q;

  FpMatrix system(0, unknowns, p);
  // Equations "map(phi_src v) = phi_dst(map v)" for a map src -> dst.
  auto add_equations = [&](std::size_t src, std::size_t dst, const FpMatrix& map) {
    for (std::size_t k = 0; k < r; ++k) {
      const auto [coef, ignored] = split(dst, map.apply(pt[src].basis().row(k)));
      std::vector<Vec> rows(q, zero_vec(unknowns, p));
      for (std::size_t l = 0; l < q; ++l) {
        const auto [ignored2, proj] = split(dst, map.apply(comp[src][l]));
        for (std::size_t t = 0; t < q; ++t) rows[t][var(src, k, l)] += proj[t];
      }
      for (std::size_t m = 0; m < r; ++m)
        for (std::size_t t = 0; t < q; ++t) rows[t][var(dst, m, t)] -= coef[m];
      for (const auto& row : rows) system.append_row(row);
    }
  };
  for (std::size_t i = 0; i + 1 < n; ++i) {
    add_equations(i, i + 1, c.f[i]);
    add_equations(i + 1, i, c.g[i]);
  }
  return unknowns - rank(system);
}

inline std::size_t grassmannian_dimension(std::size_t d, std::size_t r) { return r * (d - r); }

using SignatureKey = std::pair<std::vector<std::size_t>, std::vector<std::size_t>>;

/// Aggregate statistics over all linked points of a chain. Merging partial
/// reports is commutative, so enumeration can be split freely.
struct CensusReport {
  LinkedChain chain;
  u32 q = 2;
  u64 points = 0;
  u64 exact = 0;
  std::map<SignatureKey, u64> signatures;           ///< exact points per (f_ranks, g_ranks)
  std::map<SignatureKey, u64> nonexact_signatures;  ///< non-exact points per (f_ranks, g_ranks)
  std::map<std::size_t, u64> tangent_histogram;     ///< tangent dimension -> count
  u64 rank_law_violations = 0;      ///< r_i + r'_i > r, or exactness disagreeing with equality (s = 0)
  u64 tangent_law_violations = 0;   ///< exact with tangent != r(d-r), or non-exact with tangent <= r(d-r)

  void merge(const CensusReport& o) {
    points += o.points;
    exact += o.exact;
    for (const auto& [k, v] : o.signatures) signatures[k] += v;
    for (const auto& [k, v] : o.nonexact_signatures) nonexact_signatures[k] += v;
    for (const auto& [k, v] : o.tangent_histogram) tangent_histogram[k] += v;
    rank_law_violations += o.rank_law_violations;
    tangent_law_violations += o.tangent_law_violations;
  }

  friend bool operator==(const CensusReport&, const CensusReport&) = default;
};

inline void tally_point(const LinkedChain& c, const ChainPoint& pt, CensusReport& rep) {
  const auto sig = signature(c, pt);
  const auto tan = tangent_dimension(c, pt);
  const auto floor = grassmannian_dimension(c.d, c.r);
  ++rep.points;
  SignatureKey key{sig.f_ranks, sig.g_ranks};
  if (sig.exact) {
    ++rep.exact;
    ++rep.signatures[key];
  } else {
    ++rep.nonexact_signatures[key];
  }
  ++rep.tangent_histogram[tan];
  if (c.s.is_zero()) {
    bool all_equal = true;
    for (std::size_t i = 0; i < sig.f_ranks.size(); ++i) {
      const auto total = sig.f_ranks[i] + sig.g_ranks[i];
      if (total > c.r) ++rep.rank_law_violations;
      all_equal = all_equal && total == c.r;
    }
    if (all_equal != sig.exact) ++rep.rank_law_violations;
  } else if (!sig.exact) {
    ++rep.rank_law_violations;
  }
  if (sig.exact ? tan != floor : tan <= floor) ++rep.tangent_law_violations;
}

/// Census over all linked points. With workers > 1 the first-level spaces
/// are split into contiguous blocks; the result does not depend on `workers`.
inline CensusReport census(const LinkedChain& c, Budget& budget, unsigned workers = 1) {
  CensusReport total;
  total.chain = c;
  total.q = c.p;
  const auto starts = enumerate_subspaces(c.d, c.r, c.p, budget);
  workers = std::max(1u, std::min<unsigned>(workers, static_cast<unsigned>(starts.size())));
  std::vector<CensusReport> parts(workers);
  std::vector<std::exception_ptr> errors(workers);
  auto run = [&](unsigned w) {
    try {
      const std::size_t lo = starts.size() * w / workers, hi = starts.size() * (w + 1) / workers;
      for (std::size_t k = lo; k < hi; ++k)
        for_each_point_from(c, starts[k], budget, [&](const ChainPoint& pt) {
          tally_point(c, pt, parts[w]);
          return true;
        });
    } catch (...) {
      errors[w] = std::current_exception();
    }
  };
  if (workers == 1) {
    run(0);
  } else {
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(run, w);
    for (auto& t : pool) t.join();
  }
  for (unsigned w = 0; w < workers; ++w) {
    if (errors[w]) std::rethrow_exception(errors[w]);
    total.merge(parts[w]);
  }
  return total;
}

/// Number of components of a two-step chain with s = 0.
inline std::size_t expected_component_count_n2(std::size_t d, std::size_t r, std::size_t d1, std::size_t d2) {
  if (d1 + d2 != d) throw InvalidInput("d1 + d2 must equal d");
  if (r == 0 || r >= d) throw InvalidInput("need 0 < r < d");
  return std::min({r + 1, d - r + 1, d1 + 1, d2 + 1});
}

/// Inclusive range of dim f_1(V_1) realised on components: [max(0, r-d2), min(r, d1)].
inline std::pair<std::size_t, std::size_t> admissible_signatures_n2(std::size_t d, std::size_t r, std::size_t d1,
                                                                    std::size_t d2) {
  const auto count = expected_component_count_n2(d, r, d1, d2);
  const std::size_t lo = r > d2 ? r - d2 : 0, hi = std::min(r, d1);
  if (hi < lo || hi - lo + 1 != count) throw InternalError("component count disagrees with signature range");
  return {lo, hi};
}

/// Component report for a two-step chain: formula against observed exact signatures.
struct ComponentsReport {
  std::size_t d = 0, r = 0, d1 = 0, d2 = 0;
  u32 q = 2;
  std::size_t expected = 0;
  std::pair<std::size_t, std::size_t> admissible{0, 0};
  std::vector<std::size_t> observed_f_ranks;  ///< distinct r_1 over exact points
  bool match = false;
  friend bool operator==(const ComponentsReport&, const ComponentsReport&) = default;
};

inline ComponentsReport components_n2(std::size_t d, std::size_t r, std::size_t d1, u32 q, Budget& budget) {
  ComponentsReport rep;
  rep.d = d;
  rep.r = r;
  rep.d1 = d1;
  rep.d2 = d - d1;
  rep.q = q;
  rep.expected = expected_component_count_n2(d, r, d1, rep.d2);
  rep.admissible = admissible_signatures_n2(d, r, d1, rep.d2);
  const auto census_rep = census(make_standard_chain(2, d, d1, Fp::zero(q), r), budget);
  for (const auto& [k, v] : census_rep.signatures) rep.observed_f_ranks.push_back(k.first.at(0));
  std::vector<std::size_t> want;
  for (auto k = rep.admissible.first; k <= rep.admissible.second; ++k) want.push_back(k);
  rep.match = rep.observed_f_ranks == want && want.size() == rep.expected;
  return rep;
}

}  // namespace linkgrass
