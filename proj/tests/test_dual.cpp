#include <gtest/gtest.h>

#include "helpers.hpp"

using namespace linkgrass;

namespace {

DualModule row(std::vector<Dual> v) {
  DualMatrix g(1, v.size(), v.front().modulus());
  for (std::size_t j = 0; j < v.size(); ++j) g(0, j) = v[j];
  return DualModule::span(g);
}

}  // namespace

TEST(DualModule, FreeCofree) {
  const u32 p = 3;
  const auto e = Dual::epsilon(p), one = Dual::one(p), z = Dual::zero(p);
  EXPECT_TRUE(row({e, one}).free_cofree());
  EXPECT_TRUE(row({e, one}).nonfree_pivot());
  EXPECT_FALSE(row({e, z}).free_cofree());
  EXPECT_EQ(row({e, one}).residue(), Subspace::span({vec_from_ints({0, 1}, p)}, 2, p));
  EXPECT_TRUE(row({one, e}).contains(std::vector<Dual>{Dual(2, 0, p), Dual(0, 2, p)}));
  EXPECT_FALSE(row({one, e}).contains(std::vector<Dual>{one, z}));
}

TEST(DualVanishing, FirstOrderNodePoint) {
  for (u32 p : {2u, 3u, 5u}) {
    const auto pt = first_order_node_point(p);
    EXPECT_TRUE(is_linked_dual(pt));
    EXPECT_EQ(vanishing_sequence_dual(pt.spaces.front()), std::vector<u64>{1});
    EXPECT_EQ(vanishing_sequence_dual(pt.spaces.back()), std::vector<u64>{0});
    EXPECT_EQ(make_eh_pair(pt.spaces.front().residue(), pt.spaces.back().residue()).ay, std::vector<u64>{2});
    EXPECT_EQ(make_eh_pair(pt.spaces.front().residue(), pt.spaces.back().residue()).az, std::vector<u64>{1});
  }
}

TEST(DualVanishing, ConstantSection) {
  for (u32 p : {2u, 3u}) {
    const auto field_case = DualModule::from_subspace(Subspace::span({unit_vec(3, 0, p)}, 3, p));
    EXPECT_EQ(vanishing_sequence_dual(field_case), std::vector<u64>{0});
    EXPECT_EQ(vanishing_sequence_dual(row({Dual::one(p), Dual::epsilon(p), Dual::zero(p)})), std::vector<u64>{0});
  }
}

TEST(DualVanishing, AgreesWithFieldOnConstantFamilies) {
  // A family with no e-part has the same vanishing sequence as its fibre.
  lgtest::Gen gen(41);
  for (int trial = 0; trial < 100; ++trial) {
    const u32 p = trial % 2 ? 2 : 3;
    const std::size_t n = 2 + gen.below(3);
    const auto v = gen.subspace(n, 1 + gen.below(n - 1), p);
    if (v.dim() == 0) continue;
    EXPECT_EQ(vanishing_sequence_dual(DualModule::from_subspace(v)), vanishing_sequence(v, LinePoint::at(0)).vanishing);
  }
}

TEST(DualVanishing, FamilyNeverExceedsFibre) {
  lgtest::Gen gen(42);
  for (int trial = 0; trial < 200; ++trial) {
    const u32 p = trial % 2 ? 2 : 3;
    const std::size_t n = 3;
    DualMatrix g(1, n, p);
    for (std::size_t j = 0; j < n; ++j) g(0, j) = Dual(gen.below(p), gen.below(p), p);
    const auto m = DualModule::span(g);
    if (!m.free_cofree() || m.rank() == 0) continue;
    const auto family = vanishing_sequence_dual(m), fibre = vanishing_sequence(m.residue(), LinePoint::at(0)).vanishing;
    for (std::size_t j = 0; j < family.size(); ++j) EXPECT_LE(family[j], fibre[j]);
  }
}

TEST(DualVanishing, NonFreeRejected) {
  EXPECT_THROW(vanishing_sequence_dual(row({Dual::epsilon(3), Dual::zero(3)})), NonFreeModule);
}

TEST(DualProbe, InequalitiesAtTheNode) {
  for (u32 p : {2u, 3u, 5u}) {
    const auto rep = dual_probe(first_order_node_point(p));
    EXPECT_TRUE(rep.linked);
    EXPECT_EQ(rep.ay[0] + rep.az[0], 1u);  // d - 1
    EXPECT_FALSE(rep.d_inequality);
    EXPECT_TRUE(rep.d_minus_one_inequality);
    EXPECT_TRUE(rep.closed_point_crude);
    EXPECT_FALSE(rep.closed_point_refined);
  }
}

TEST(DualProbe, LinkageDetectsBrokenLevel) {
  auto pt = first_order_node_point(3);
  pt.spaces[1] = row({Dual::one(3), Dual::zero(3), Dual::zero(3)});
  EXPECT_FALSE(is_linked_dual(pt));
}
