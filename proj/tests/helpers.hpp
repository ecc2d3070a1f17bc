#pragma once

// Shared generators and conversions for the property tests.

#include <random>

#include "linkgrass/linkgrass.hpp"
#include "oracle.hpp"

namespace lgtest {

using namespace linkgrass;

inline oracle::VecSet to_set(const Subspace& v) {
  std::vector<oracle::IntVec> gens;
  for (const auto& b : v.basis_vectors()) {
    oracle::IntVec w;
    for (auto x : b) w.push_back(x.value());
    gens.push_back(w);
  }
  return oracle::span(gens, v.ambient_dim(), v.modulus());
}

inline oracle::IntMat to_ints(const FpMatrix& m) {
  oracle::IntMat out(m.rows(), oracle::IntVec(m.cols()));
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) out[i][j] = m(i, j).value();
  return out;
}

/// Hand-rolled generators, seeded so failures reproduce.
class Gen {
 public:
  explicit Gen(u64 seed) : rng_(seed) {}

  u64 below(u64 n) { return std::uniform_int_distribution<u64>(0, n - 1)(rng_); }

  Vec vec(std::size_t d, u32 p) {
    Vec v(d, Fp::zero(p));
    for (auto& x : v) x = Fp(below(p), p);
    return v;
  }

  FpMatrix matrix(std::size_t rows, std::size_t cols, u32 p) {
    FpMatrix m(rows, cols, p);
    for (std::size_t i = 0; i < rows; ++i)
      for (std::size_t j = 0; j < cols; ++j) m(i, j) = Fp(below(p), p);
    return m;
  }

  /// Span of k random vectors (dimension <= k).
  Subspace subspace(std::size_t d, std::size_t k, u32 p) { return Subspace::span(matrix(k, d, p)); }

  /// A random invertible k x k matrix.
  FpMatrix invertible(std::size_t k, u32 p) {
    while (true) {
      auto m = matrix(k, k, p);
      if (rank(m) == k) return m;
    }
  }

  std::mt19937_64& engine() { return rng_; }

 private:
  std::mt19937_64 rng_;
};

/// Chains used by the exhaustive sweeps: standard chains for n <= 3, d <= 3
/// (every valid d1, s = 0) and section chains for d <= 2 (ambient d + 1 <= 3).
inline std::vector<LinkedChain> sweep_chains(u32 p) {
  std::vector<LinkedChain> out;
  for (std::size_t n = 1; n <= 3; ++n)
    for (std::size_t d = 2; d <= 3; ++d)
      for (std::size_t d1 = 1; d1 < d; ++d1)
        for (std::size_t r = 0; r <= d; ++r) out.push_back(make_standard_chain(n, d, d1, Fp::zero(p), r));
  for (std::size_t d = 1; d <= 2; ++d)
    for (std::size_t r = 0; r <= d; ++r) out.push_back(build_section_chain(d, p, r));
  return out;
}

}  // namespace lgtest

namespace linkgrass {

// Readable failure messages for gtest.
inline void PrintTo(const Subspace& v, std::ostream* os) {
  *os << "span{";
  for (std::size_t k = 0; k < v.dim(); ++k) {
    *os << (k ? ", (" : "(");
    for (std::size_t j = 0; j < v.ambient_dim(); ++j) *os << (j ? "," : "") << v.basis()(k, j).value();
    *os << ")";
  }
  *os << "} in GF(" << v.modulus() << ")^" << v.ambient_dim();
}

}  // namespace linkgrass
