#pragma once

// Integer combinatorics behind the tame/wild distinction: the determinant of
// binomial coefficients binom(a_i, j) attached to a vanishing sequence.

#include <cstdint>
#include <span>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "errors.hpp"
#include "field.hpp"

namespace linkgrass {

using BigInt = boost::multiprecision::cpp_int;

inline BigInt big_binomial(u64 n, u64 k) {
  if (k > n) return 0;
  BigInt acc = 1;
  for (u64 i = 0; i < k; ++i) {
    acc *= (n - i);
    acc /= (i + 1);
  }
  return acc;
}

inline void require_strictly_increasing(std::span<const u64> a) {
  if (a.empty()) throw InvalidSequence("vanishing sequence must be non-empty");
  for (std::size_t i = 1; i < a.size(); ++i)
    if (a[i] <= a[i - 1]) throw InvalidSequence("vanishing sequence must be strictly increasing");
}

/// det(binom(a_i, j))_{0<=i,j<=r} over the integers, by fraction-free (Bareiss) elimination.
inline BigInt binomial_determinant(std::span<const u64> a) {
  require_strictly_increasing(a);
  const std::size_t n = a.size();
  std::vector<std::vector<BigInt>> m(n, std::vector<BigInt>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) m[i][j] = big_binomial(a[i], j);

  BigInt sign = 1, prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (m[k][k] == 0) {
      std::size_t swap_row = k + 1;
      while (swap_row < n && m[swap_row][k] == 0) ++swap_row;
      if (swap_row == n) return 0;
      std::swap(m[k], m[swap_row]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / prev;
      m[i][k] = 0;
    }
    prev = m[k][k];
  }
  return sign * m[n - 1][n - 1];
}

/// Binomial determinant reduced mod p. Nonzero means the vanishing orders are
/// tamely distributed mod p at that point.
inline Fp tameness_determinant(std::span<const u64> a, u32 p) {
  checked_prime(p);
  BigInt det = binomial_determinant(a);
  BigInt m = det % p;
  if (m < 0) m += p;
  return Fp(m.convert_to<u64>(), p);
}

inline bool is_tame(std::span<const u64> a, u32 p) { return !tameness_determinant(a, p).is_zero(); }

}  // namespace linkgrass
