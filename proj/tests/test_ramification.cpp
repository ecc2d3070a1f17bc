#include <gtest/gtest.h>

#include "helpers.hpp"

using namespace linkgrass;

namespace {

Subspace polys(const std::vector<std::vector<std::int64_t>>& basis, std::size_t m, u32 p) {
  std::vector<Vec> vs;
  for (auto c : basis) {
    c.resize(m + 1, 0);
    vs.push_back(vec_from_ints(c, p));
  }
  return Subspace::span(vs, m + 1, p);
}

std::vector<u64> seq(std::initializer_list<u64> xs) { return xs; }

}  // namespace

TEST(Vanishing, Examples) {
  for (std::size_t r = 0; r <= 3; ++r) {
    std::vector<std::vector<std::int64_t>> basis;
    for (std::size_t k = 0; k <= r; ++k) {
      std::vector<std::int64_t> c(k + 1, 0);
      c[k] = 1;
      basis.push_back(c);
    }
    const auto data = vanishing_sequence(polys(basis, r, 3), LinePoint::at(0), r);
    for (std::size_t j = 0; j <= r; ++j) {
      EXPECT_EQ(data.vanishing[j], j);
      EXPECT_EQ(data.ramification[j], 0u);
    }
  }
  EXPECT_EQ(vanishing_sequence(polys({{0, 0, 1}, {0, 1, 0, 1}}, 3, 3), LinePoint::at(0)).vanishing, seq({1, 2}));
  const auto inf = vanishing_sequence(polys({{1}, {0, 0, 1}}, 2, 5), LinePoint::infinity(), 2);
  EXPECT_EQ(inf.vanishing, seq({0, 2}));
  EXPECT_EQ(inf.ramification, seq({0, 1}));
  EXPECT_THROW(vanishing_sequence(polys({{1}}, 2, 5), LinePoint::at(0), 3), ShapeError);
  EXPECT_THROW(vanishing_sequence(polys({{1}}, 2, 5), LinePoint::at(7)), InvalidInput);
}

TEST(Vanishing, MatchesOracleAtFinitePoints) {
  lgtest::Gen gen(31);
  for (u32 p : {2u, 3u, 5u})
    for (int trial = 0; trial < 60; ++trial) {
      const std::size_t m = 1 + gen.below(3);
      const auto v = gen.subspace(m + 1, 1 + gen.below(m + 1), p);
      std::vector<oracle::IntVec> basis;
      for (const auto& b : v.basis_vectors()) {
        oracle::IntVec w;
        for (auto x : b) w.push_back(x.value());
        basis.push_back(w);
      }
      for (u32 x = 0; x < p; ++x) {
        const auto want = oracle::vanishing_orders(basis, m, p, x);
        const auto got = vanishing_sequence(v, LinePoint::at(x)).vanishing;
        EXPECT_EQ(std::vector<u64>(want.begin(), want.end()), got);
      }
    }
}

TEST(Rho, Examples) {
  EXPECT_EQ(rho(0, 1, 2, {}), 2);
  EXPECT_EQ(rho(0, 0, 2, {{2}}), 0);
  EXPECT_EQ(rho(1, 1, 3, {{0, 1}}), 2);
  EXPECT_THROW(rho(0, 1, 2, {{1}}), InvalidInput);
  EXPECT_THROW(rho(0, 1, 2, {{1, 0}}), InvalidInput);
  EXPECT_THROW(rho(0, 1, 2, {{-1, 0}}), InvalidInput);
}

TEST(Wronskian, Examples) {
  for (u32 p : {2u, 3u, 5u}) {
    const auto w = wronskian(polys({{1}, {0, 1}}, 1, p));
    EXPECT_EQ(w, Poly::constant(Fp::one(p)));
  }
  EXPECT_TRUE(wronskian(polys({{1}, {0, 0, 1}}, 2, 2)).is_zero());
  EXPECT_FALSE(is_separable(polys({{1}, {0, 0, 1}}, 2, 2)));
  const auto w3 = wronskian(polys({{1}, {0, 0, 1}}, 2, 3));
  EXPECT_EQ(w3, Poly::from_ints({0, 2}, 3));
  EXPECT_EQ(*w3.order_at(Fp::zero(3)), 1u);
}

TEST(Wronskian, BasisInvariance) {
  lgtest::Gen gen(32);
  for (u32 p : {2u, 3u, 5u})
    for (int trial = 0; trial < 100; ++trial) {
      const std::size_t m = 1 + gen.below(4);
      const auto v = gen.subspace(m + 1, 1 + gen.below(3), p);
      const auto mixed = gen.invertible(v.dim(), p) * v.basis();
      // determinant over a non-echelon basis
      std::vector<std::vector<Poly>> rows(v.dim(), std::vector<Poly>(v.dim(), Poly(p)));
      for (std::size_t k = 0; k < v.dim(); ++k)
        for (std::size_t j = 0; j < v.dim(); ++j) rows[k][j] = poly_from_vec(mixed.row(k), p).hasse(j);
      const auto w1 = wronskian(v), w2 = poly_determinant(rows, p);
      ASSERT_EQ(w1.is_zero(), w2.is_zero());
      if (w1.is_zero()) continue;
      EXPECT_EQ(w1.degree(), w2.degree());
      for (u32 x = 0; x < p; ++x) EXPECT_EQ(w1.order_at(Fp(x, p)), w2.order_at(Fp(x, p)));
    }
}

TEST(Plucker, Examples) {
  const auto cert = plucker_check(polys({{1}, {0, 0, 1}}, 2, 5));
  EXPECT_EQ(cert.bound, 2);
  EXPECT_EQ(cert.found_weight, 2u);
  EXPECT_TRUE(cert.separable && cert.equality && cert.all_inspected_tame && cert.within_bound);
  for (const auto& pc : cert.points) {
    const bool special = pc.data.point == LinePoint::at(0) || pc.data.point.infinite;
    EXPECT_EQ(pc.data.weight(), special ? 1u : 0u);
  }

  const auto insep = plucker_check(polys({{1}, {0, 0, 1}}, 2, 2));
  EXPECT_FALSE(insep.separable);
  EXPECT_FALSE(insep.equality);

  for (u32 p : {2u, 3u, 7u}) {
    const auto pencil = plucker_check(polys({{1}, {0, 1}}, 1, p));
    EXPECT_EQ(pencil.found_weight, 0u);
    EXPECT_TRUE(pencil.within_bound);
  }
  EXPECT_EQ(plucker_bound(1, 3, 1), 6);
  EXPECT_EQ(plucker_bound(1, 3, 0), 4);
  EXPECT_EQ(plucker_bound(2, 4, 0), 6);
}

TEST(Plucker, BoundOverAllSeries) {
  for (u32 p : {2u, 3u, 5u})
    for (std::size_t m = 1; m <= 3; ++m)
      for (std::size_t r = 0; r <= std::min<std::size_t>(1, m); ++r) {
        Budget b;
        for_each_subspace(m + 1, r + 1, p, b, [&](const Subspace& v) {
          const auto cert = plucker_check(v);
          if (cert.separable) {
            EXPECT_TRUE(cert.within_bound);
            for (const auto& pc : cert.points) {
              EXPECT_LE(pc.data.weight(), pc.wronskian_order);
              if (pc.data.tame) {
                EXPECT_EQ(pc.data.weight(), pc.wronskian_order);
              }
            }
            if (cert.wronskian_splits && cert.all_inspected_tame) {
              EXPECT_TRUE(cert.equality);
            }
          }
          return true;
        });
      }
}
