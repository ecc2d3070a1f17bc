#pragma once

// Exhaustive enumeration of subspaces of GF(q)^d under a candidate budget.

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <functional>
#include <limits>
#include <memory>
#include <vector>

#include "errors.hpp"
#include "subspace.hpp"
#include "tameness.hpp"

namespace linkgrass {

/// Counts candidate subspaces examined. Thread-safe; copies share the counter.
class Budget {
 public:
  static constexpr u64 kDefaultLimit = 50'000'000;

  explicit Budget(u64 limit = kDefaultLimit) : limit_(limit), used_(std::make_shared<std::atomic<u64>>(0)) {}

  u64 limit() const { return limit_; }
  u64 used() const { return used_->load(); }
  u64 remaining() const {
    const u64 u = used();
    return u >= limit_ ? 0 : limit_ - u;
  }

  void charge(u64 n = 1) {
    const u64 after = used_->fetch_add(n) + n;
    if (after > limit_) throw BudgetExceeded(after, limit_);
  }

  /// Throws before starting a run that would certainly exceed the budget.
  void require(u64 needed) const {
    if (needed > remaining()) throw BudgetExceeded(needed, limit_);
  }

 private:
  u64 limit_;
  std::shared_ptr<std::atomic<u64>> used_;
};

/// Gaussian binomial [d choose r]_q, exact.
inline BigInt gaussian_binomial(u64 d, u64 r, u64 q) {
  if (r > d) return 0;
  BigInt num = 1, den = 1;
  for (u64 i = 0; i < r; ++i) {
    num *= (boost::multiprecision::pow(BigInt(q), static_cast<unsigned>(d - i)) - 1);
    den *= (boost::multiprecision::pow(BigInt(q), static_cast<unsigned>(i + 1)) - 1);
  }
  return num / den;
}

inline u64 saturate(const BigInt& x) {
  if (x > std::numeric_limits<u64>::max()) return std::numeric_limits<u64>::max();
  return x.convert_to<u64>();
}

/// Visits every r-dimensional subspace of GF(q)^d exactly once, in increasing
/// Subspace order: pivot patterns lexicographically, then free entries
/// lexicographically (last entry fastest). The visitor returns false to stop.
/// Returns false iff stopped early.
inline bool for_each_subspace(std::size_t d, std::size_t r, u32 q, Budget& budget,
                              const std::function<bool(const Subspace&)>& visit) {
  checked_prime(q);
  if (r > d) throw InvalidInput("subspace rank exceeds ambient dimension");
  budget.require(saturate(gaussian_binomial(d, r, q)));

  std::vector<std::size_t> piv(r);
  for (std::size_t i = 0; i < r; ++i) piv[i] = i;
  while (true) {
    // free slots: (row, col) with col > pivot of row and col not a pivot
    std::vector<std::pair<std::size_t, std::size_t>> slots;
    for (std::size_t k = 0; k < r; ++k)
      for (std::size_t j = piv[k] + 1; j < d; ++j)
        if (std::find(piv.begin(), piv.end(), j) == piv.end()) slots.emplace_back(k, j);

    FpMatrix m(r, d, q);
    for (std::size_t k = 0; k < r; ++k) m(k, piv[k]) = Fp::one(q);
    std::vector<u32> digits(slots.size(), 0);
    while (true) {
      for (std::size_t s = 0; s < slots.size(); ++s) m(slots[s].first, slots[s].second) = Fp(digits[s], q);
      budget.charge();
      if (!visit(Subspace::span(m))) return false;
      bool carry = true;
      for (std::size_t s = slots.size(); carry && s > 0; --s) {
        if (++digits[s - 1] < q)
          carry = false;
        else
          digits[s - 1] = 0;
      }
      if (carry) break;
    }

    // next pivot combination
    std::size_t i = r;
    while (i > 0 && piv[i - 1] == d - r + i - 1) --i;
    if (i == 0) break;
    ++piv[i - 1];
    for (std::size_t k = i; k < r; ++k) piv[k] = piv[k - 1] + 1;
  }
  return true;
}

inline std::vector<Subspace> enumerate_subspaces(std::size_t d, std::size_t r, u32 q, Budget& budget) {
  std::vector<Subspace> out;
  for_each_subspace(d, r, q, budget, [&](const Subspace& s) {
    out.push_back(s);
    return true;
  });
  return out;
}

/// Visits every r-dimensional V with lower <= V <= upper, each exactly once.
/// Candidates are enumerated in the quotient upper/lower, so nothing outside
/// the interval is ever generated.
inline bool for_each_between(const Subspace& lower, const Subspace& upper, std::size_t r, Budget& budget,
                             const std::function<bool(const Subspace&)>& visit) {
  if (!upper.contains(lower)) return true;
  if (r < lower.dim() || r > upper.dim()) return true;
  const u32 p = upper.modulus();
  const std::size_t d = upper.ambient_dim();
  const auto lift = complement_within(lower, upper).basis_vectors();
  const std::size_t m = lift.size();
  return for_each_subspace(m, r - lower.dim(), p, budget, [&](const Subspace& s) {
    FpMatrix gens = lower.basis();
    for (std::size_t k = 0; k < s.dim(); ++k) {
      Vec v = zero_vec(d, p);
      for (std::size_t t = 0; t < m; ++t) {
        const Fp c = s.basis()(k, t);
        if (c.is_zero()) continue;
        for (std::size_t j = 0; j < d; ++j) v[j] += c * lift[t][j];
      }
      gens.append_row(v);
    }
    return visit(Subspace::span(gens));
  });
}

}  // namespace linkgrass
