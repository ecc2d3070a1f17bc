#pragma once

// Decompositions of linked points, extension of truncated points, and the
// explicit exact deformations of a non-exact point.

#include <optional>
#include <utility>
#include <vector>

#include "chain.hpp"
#include "enumerate.hpp"
#include "points.hpp"

namespace linkgrass {

/// V_i = incoming (+) kernel_block (+) complement, where incoming =
/// f_{i-1}(V_{i-1}) and kernel_block = ker f_i restricted to V_i. The first
/// level has no incoming map and the last level no outgoing one; the missing
/// block is zero.
struct DecompositionReport {
  std::size_t index = 0;
  Subspace incoming;
  Subspace kernel_block;
  Subspace complement;

  /// Dimension of the complement block.
  std::size_t block_dim() const { return complement.dim(); }
  friend bool operator==(const DecompositionReport&, const DecompositionReport&) = default;
};

namespace detail {

inline void require_linked_s0(const LinkedChain& c, const ChainPoint& pt) {
  if (!c.s.is_zero()) throw PreconditionError("requires s = 0");
  if (!is_linked_point(c, pt)) throw InvalidPoint("point is not linked");
}

/// Some x with m x = b (free variables set to zero), if one exists.
inline std::optional<Vec> solve(const FpMatrix& m, const Vec& b) {
  FpMatrix aug(m.rows(), m.cols() + 1, m.modulus());
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) aug(i, j) = m(i, j);
    aug(i, m.cols()) = b[i];
  }
  const auto red = rref(aug);
  Vec x = zero_vec(m.cols(), m.modulus());
  for (std::size_t k = 0; k < red.rank; ++k) {
    if (red.pivots[k] == m.cols()) return std::nullopt;
    x[red.pivots[k]] = red.form(k, m.cols());
  }
  return x;
}

inline Subspace span_of(const std::vector<Vec>& vs, std::size_t d, u32 p) { return Subspace::span(vs, d, p); }

/// Smallest index where the point fails to be exact.
inline std::optional<std::size_t> first_nonexact(const LinkedChain& c, const ChainPoint& pt) {
  for (std::size_t i = 0; i + 1 < c.n; ++i) {
    const auto fv = image(c.f[i], pt[i]);
    const auto gv = image(c.g[i], pt[i + 1]);
    if (fv.dim() + gv.dim() < c.r) return i;
  }
  return std::nullopt;
}

}  // namespace detail

/// Splits V_i into independent blocks. A supplied `c_prime` must lie in V_i,
/// in ker g_{i-1} (for i > 0), and meet f_{i-1}(V_{i-1}) trivially; the
/// complement then extends it greedily by basis vectors of V_i.
inline DecompositionReport decompose(const LinkedChain& c, const ChainPoint& pt, std::size_t i,
                                     const std::optional<Subspace>& c_prime = std::nullopt) {
  detail::require_linked_s0(c, pt);
  if (i >= c.n) throw InvalidInput("decomposition index out of range");
  const Subspace& v = pt[i];
  DecompositionReport rep;
  rep.index = i;
  rep.incoming = i > 0 ? image(c.f[i - 1], pt[i - 1]) : Subspace::zero(c.d, c.p);
  rep.kernel_block = i + 1 < c.n ? intersect(v, kernel(c.f[i])) : Subspace::zero(c.d, c.p);
  const Subspace base = sum(rep.incoming, rep.kernel_block);
  if (base.dim() != rep.incoming.dim() + rep.kernel_block.dim())
    throw InternalError("incoming and kernel blocks overlap; chain axioms fail");

  std::vector<Vec> chosen;
  if (c_prime) {
    if (!v.contains(*c_prime)) throw InvalidComplement("C' is not contained in V_i");
    if (i > 0 && !kernel(c.g[i - 1]).contains(*c_prime)) throw InvalidComplement("C' is not in ker g_{i-1}");
    if (intersect(*c_prime, rep.incoming).dim() != 0) throw InvalidComplement("C' meets f_{i-1}(V_{i-1})");
    if (sum(base, *c_prime).dim() != base.dim() + c_prime->dim()) throw InvalidComplement("C' is not independent");
    chosen = c_prime->basis_vectors();
  }
  auto start = sum(base, detail::span_of(chosen, c.d, c.p));
  for (auto& w : greedy_extension(start, v.basis_vectors(), v.dim())) chosen.push_back(std::move(w));
  rep.complement = detail::span_of(chosen, c.d, c.p);
  return rep;
}

/// Complement-block dimensions d_i at every level.
inline std::vector<std::size_t> block_dims(const LinkedChain& c, const ChainPoint& pt) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < c.n; ++i) out.push_back(decompose(c, pt, i).block_dim());
  return out;
}

/// Completes a linked point of the truncated chain, choosing at each new
/// level the least r-space between f(V_k) and g^{-1}(V_k).
inline ChainPoint extend_truncation(const LinkedChain& c, const ChainPoint& partial, Budget& budget) {
  if (partial.size() == 0 || partial.size() > c.n) throw InvalidPoint("partial point has wrong length");
  if (!is_linked_point(c.truncated(partial.size()), partial)) throw InvalidPoint("partial point is not linked");
  ChainPoint out = partial;
  for (std::size_t k = partial.size() - 1; k + 1 < c.n; ++k) {
    std::optional<Subspace> best;
    for_each_between(image(c.f[k], out[k]), preimage(c.g[k], out[k]), c.r, budget, [&](const Subspace& s) {
      if (!best || s < *best) best = s;
      return true;
    });
    if (!best) throw InternalError("no linked extension exists; chain axioms fail");
    out.spaces.push_back(*best);
  }
  return out;
}

inline ChainPoint extend_truncation(const LinkedChain& c, const ChainPoint& partial) {
  Budget unlimited(std::numeric_limits<u64>::max());
  return extend_truncation(c, partial, unlimited);
}

namespace detail {

/// Re-lifts levels after `from` once V_from has been replaced: each later
/// V_{j+1} keeps its kernel and complement blocks and takes the image of the
/// new V_j as incoming block. Returns nullopt if an f-rank drops.
inline std::optional<ChainPoint> relift(const LinkedChain& c, const ChainPoint& old, ChainPoint cur, std::size_t from) {
  for (std::size_t j = from; j + 1 < c.n; ++j) {
    const auto dec = decompose(c, old, j + 1);
    const auto incoming = image(c.f[j], cur[j]);
    if (incoming.dim() != dec.incoming.dim()) return std::nullopt;
    auto next = sum(sum(incoming, dec.kernel_block), dec.complement);
    if (next.dim() != c.r) return std::nullopt;
    cur.spaces[j + 1] = std::move(next);
  }
  return cur;
}

/// One deformation step at the first non-exact index i: V_{i+1} becomes
/// f_i(V_i) + K_{i+1} + C'' + span{e'_k + t e_k}. `shift` perturbs the
/// preimages e_k by kernel vectors of g_i when the plain choice degenerates.
inline std::optional<ChainPoint> deform_step(const LinkedChain& c, const ChainPoint& pt, std::size_t i, Fp t,
                                             const std::vector<Vec>& shift) {
  const auto& vi = pt[i];
  const auto& vi1 = pt[i + 1];
  const auto fv = image(c.f[i], vi);
  const auto gv = image(c.g[i], vi1);
  const auto kf = intersect(vi, kernel(c.f[i]));
  const auto kg = intersect(vi1, kernel(c.g[i]));
  const auto ci = complement_within(gv, kf).basis_vectors();
  const auto ci1 = complement_within(fv, kg);
  if (ci.size() != ci1.dim() || ci.empty()) throw InternalError("deformation blocks have mismatched dimensions");
  const auto dec = decompose(c, pt, i + 1, ci1);
  // C'' = the part of the complement beyond C_{i+1}
  const auto all_c = dec.complement.basis_vectors();
  const auto extra = greedy_extension(sum(sum(dec.incoming, dec.kernel_block), ci1), all_c, c.r);

  std::vector<Vec> gens = fv.basis_vectors();
  for (auto& v : dec.kernel_block.basis_vectors()) gens.push_back(v);
  for (auto& v : extra) gens.push_back(v);
  const auto eprime = ci1.basis_vectors();
  for (std::size_t k = 0; k < ci.size(); ++k) {
    auto e = solve(c.g[i], ci[k]);
    if (!e) throw InternalError("complement vector is not in im g; condition II fails");
    Vec w = eprime[k];
    for (std::size_t j = 0; j < c.d; ++j) w[j] += t * ((*e)[j] + (k < shift.size() ? shift[k][j] : Fp::zero(c.p)));
    gens.push_back(std::move(w));
  }
  ChainPoint cur = pt;
  cur.spaces[i + 1] = span_of(gens, c.d, c.p);
  if (cur[i + 1].dim() != c.r) return std::nullopt;
  auto lifted = relift(c, pt, cur, i + 1);
  if (!lifted || !is_linked_point(c, *lifted)) return std::nullopt;
  const auto sig = signature(c, *lifted);
  const auto before = signature(c, pt);
  if (sig.f_ranks != before.f_ranks) return std::nullopt;
  const auto fv2 = sig.f_ranks[i] + sig.g_ranks[i];
  if (fv2 != c.r) return std::nullopt;
  return lifted;
}

/// Candidate perturbations, tried in order after the plain choice fails:
/// each preimage shifted by one basis vector of ker g_i.
inline std::vector<std::vector<Vec>> shift_candidates(const LinkedChain& c, std::size_t i, std::size_t count) {
  std::vector<std::vector<Vec>> out{{}};
  const auto kg = kernel(c.g[i]).basis_vectors();
  for (std::size_t k = 0; k < count; ++k)
    for (const auto& v : kg) {
      std::vector<Vec> s(count, zero_vec(c.d, c.p));
      s[k] = v;
      out.push_back(std::move(s));
    }
  return out;
}

inline ChainPoint exactify_f(const LinkedChain& c, ChainPoint pt) {
  while (auto i = first_nonexact(c, pt)) {
    const auto sig = signature(c, pt);
    const std::size_t deficit = c.r - sig.f_ranks[*i] - sig.g_ranks[*i];
    std::optional<ChainPoint> next;
    for (u32 tv = 1; tv < c.p && !next; ++tv)
      for (const auto& shift : shift_candidates(c, *i, deficit))
        if ((next = deform_step(c, pt, *i, Fp(tv, c.p), shift))) break;
    if (!next) throw InternalError("no exact deformation found at index " + std::to_string(*i));
    pt = std::move(*next);
  }
  return pt;
}

}  // namespace detail

/// Two exact points specialising to a non-exact point (s = 0): the first
/// keeps every dim f_i(V_i), the second (built on the reversed chain) keeps
/// every dim g_i(V_{i+1}).
inline std::pair<ChainPoint, ChainPoint> exactify(const LinkedChain& c, const ChainPoint& pt) {
  detail::require_linked_s0(c, pt);
  if (is_exact(c, pt)) throw AlreadyExact("point is already exact");
  auto keep_f = detail::exactify_f(c, pt);
  auto keep_g = detail::exactify_f(c.reversed(), pt.reversed()).reversed();
  return {std::move(keep_f), std::move(keep_g)};
}

}  // namespace linkgrass
