#include <gtest/gtest.h>

#include "groupoidal/morita.hpp"
#include "fixtures.hpp"
#include "oracles.hpp"

using namespace groupoidal;
using namespace fixtures;

namespace {

struct FourPoint {
  FellBundle a = trivial_line_bundle(make_pair_groupoid(4));
  BundleAction g = lift_action(a, g13_24());
  BundleAction h = lift_action(a, h12_34());
};

Matrix swap2()
{
  Matrix s = Matrix::Zero(2, 2);
  s(0, 1) = s(1, 0) = 1.0;
  return s;
}

} // namespace

TEST(Linking, FourPointLinkingSystem)
{
  const FourPoint f;
  const auto ls = linking_system(symmetric_action_equivalence(f.g, f.h));
  // (A/H ⋊ G) ⊔ Z ⊔ Z̄ ⊔ (G\A ⋊ H), 16 arrows each, over 2 + 2 units
  EXPECT_EQ(ls.groupoid.num_arrows(), 64u);
  EXPECT_EQ(ls.groupoid.num_units(), 4u);
  EXPECT_TRUE(validate_groupoid(ls.groupoid).ok());
  EXPECT_TRUE(validate_fell_bundle(ls.bundle).ok());
}

TEST(Morita, SymmetricFourPoint)
{
  const FourPoint f;
  const auto c = symmetric_morita(f.g, f.h);
  EXPECT_EQ(c.verdict, Verdict::equivalent) << c.to_string();
  EXPECT_EQ(c.p_report.center_dimension, c.q_report.center_dimension);
  EXPECT_EQ(c.p_fullness_rank, c.p_dimension);
  EXPECT_EQ(c.q_fullness_rank, c.q_dimension);
  EXPECT_LE(c.exchange_residual, 1e-9);
}

TEST(Morita, OneSided)
{
  const std::vector<int> dims{1, 2, 1, 2};
  const auto a = matrix_bundle(make_pair_groupoid(4), dims);
  const auto c = one_sided_morita(lift_action(a, g13_24()));
  EXPECT_EQ(c.verdict, Verdict::equivalent) << c.to_string();
  EXPECT_EQ(c.p_report.center_dimension, c.q_report.center_dimension);
}

TEST(Morita, OneSidedTransformation)
{
  const auto z3 = cyclic_group(3);
  const auto b = trivial_line_bundle(z3.groupoid());
  const auto c = one_sided_transformation_morita(b, translation_action(z3, Side::left),
                                                 translation_action(z3, Side::left));
  EXPECT_EQ(c.verdict, Verdict::equivalent) << c.to_string();
}

TEST(Morita, CStarBundleSwap)
{
  // two points swapped, fibers C: C^2 ⋊ Z/2 = M_2 against C
  const auto z2 = cyclic_group(2);
  const auto b = make_trivial_cbundle(diagonal_algebra(1), {"a", "b"});
  const auto base = unit_groupoid_action(group_set_action(z2, {"a", "b"}, {{0, 1}, {1, 0}}, Side::left));
  const auto c = cstar_bundle_morita(lift_action(b, base));
  EXPECT_EQ(c.verdict, Verdict::equivalent) << c.to_string();
  EXPECT_EQ(c.p_report.blocks, std::vector<int>{2});
  EXPECT_EQ(c.q_report.blocks, std::vector<int>{1});
}

TEST(Morita, CStarBundleMatrixFibers)
{
  const auto z2 = cyclic_group(2);
  const auto b = make_trivial_cbundle(matrix_algebra(2), {"a", "b"});
  const auto base = unit_groupoid_action(group_set_action(z2, {"a", "b"}, {{0, 1}, {1, 0}}, Side::left));
  const auto c = cstar_bundle_morita(lift_action(b, base));
  EXPECT_EQ(c.verdict, Verdict::equivalent) << c.to_string();
  EXPECT_EQ(c.p_report.blocks, std::vector<int>{4});
  EXPECT_EQ(c.q_report.blocks, std::vector<int>{2});
}

TEST(Raeburn, TrivialGroups)
{
  const auto e = trivial_group();
  const auto b = matrix_algebra(2);
  const auto c = raeburn(b, group_set_action(e, {"x"}, {{0}}, Side::left), group_set_action(e, {"x"}, {{0}}, Side::right),
                         oracles::trivial_on(e, b), oracles::trivial_on(e, b));
  EXPECT_EQ(c.verdict, Verdict::equivalent) << c.to_string();
  EXPECT_EQ(c.p_report.blocks, std::vector<int>{2});
  EXPECT_EQ(c.q_report.blocks, std::vector<int>{2});
}

TEST(Raeburn, TranslationOnTwoPoints)
{
  const auto z2 = cyclic_group(2), e = trivial_group();
  const auto b = diagonal_algebra(1);
  const auto g_on_x = translation_action(z2, Side::left);
  const auto h_on_x = group_set_action(e, {"0", "1"}, {{0, 1}}, Side::right);
  const auto c = raeburn(b, g_on_x, h_on_x, oracles::trivial_on(z2, b), oracles::trivial_on(e, b));
  EXPECT_EQ(c.verdict, Verdict::equivalent) << c.to_string();
  EXPECT_EQ(c.p_report.blocks, std::vector<int>{2});
  EXPECT_EQ(c.q_report.blocks, std::vector<int>{1});
  const auto [p, q] = oracles::raeburn(b, g_on_x, h_on_x, oracles::trivial_on(z2, b), oracles::trivial_on(e, b));
  EXPECT_EQ(p.blocks, std::vector<int>{2});
  EXPECT_EQ(q.blocks, std::vector<int>{1});
}

TEST(Raeburn, KleinFourWithSwap)
{
  const auto z2 = cyclic_group(2);
  const auto b = diagonal_algebra(2);
  const std::vector<std::string> pts{"00", "01", "10", "11"};
  const auto g_on_x = group_set_action(z2, pts, {{0, 1, 2, 3}, {2, 3, 0, 1}}, Side::left);
  const auto h_on_x = group_set_action(z2, pts, {{0, 1, 2, 3}, {1, 0, 3, 2}}, Side::right);
  const AlgebraAction sigma{z2, b, Side::left, {Matrix::Identity(2, 2), swap2()}};
  const auto tau = oracles::trivial_on(z2, b);
  const auto c = raeburn(b, g_on_x, h_on_x, sigma, tau);
  EXPECT_EQ(c.verdict, Verdict::equivalent) << c.to_string();
  const auto [p, q] = oracles::raeburn(b, g_on_x, h_on_x, sigma, tau);
  EXPECT_EQ(c.p_dimension, p.dimension);
  EXPECT_EQ(c.q_dimension, q.dimension);
  EXPECT_EQ(c.p_report.center_dimension, p.center);
  EXPECT_EQ(c.q_report.center_dimension, q.center);
  EXPECT_EQ(c.p_report.blocks, p.blocks);
  EXPECT_EQ(c.q_report.blocks, q.blocks);
  EXPECT_EQ(p.center, 2);
  EXPECT_EQ(q.center, 2);
}

class Coaction : public ::testing::TestWithParam<int> {};

TEST_P(Coaction, DimensionsAndBlocks)
{
  const int n = GetParam();
  const auto g = cyclic_group(static_cast<std::size_t>(n));
  const auto c = coaction_demo(trivial_line_bundle(g.groupoid()));
  EXPECT_EQ(c.verdict, Verdict::equivalent) << c.to_string();
  EXPECT_EQ(c.p_dimension, n * n * n);
  EXPECT_EQ(c.q_dimension, n);
  EXPECT_EQ(c.p_report.blocks, std::vector<int>(n, n));
  EXPECT_EQ(c.q_report.blocks, std::vector<int>(n, 1));
  const auto p = oracles::wedderburn(oracles::coaction(g));
  const auto q = oracles::wedderburn(oracles::group_algebra(g));
  EXPECT_EQ(p.blocks, c.p_report.blocks);
  EXPECT_EQ(q.blocks, c.q_report.blocks);
  EXPECT_EQ(p.center, q.center);
}

INSTANTIATE_TEST_SUITE_P(Cyclic, Coaction, ::testing::Values(1, 2, 3));

TEST(NegativeControls, ZeroedOffDiagonalFailsFullness)
{
  const FourPoint f;
  const auto ls = zero_off_diagonal(linking_system(symmetric_action_equivalence(f.g, f.h)));
  const auto c = verify_morita(ls);
  EXPECT_EQ(c.verdict, Verdict::not_certified);
  EXPECT_LT(c.p_fullness_rank, c.p_dimension);
  EXPECT_FALSE(c.reasons.empty());
}

TEST(Certificate, JsonHasVerdict)
{
  const FourPoint f;
  const auto c = symmetric_morita(f.g, f.h);
  const auto j = c.to_json();
  EXPECT_NE(j.find("\"verdict\""), std::string::npos);
  EXPECT_NE(j.find("equivalent"), std::string::npos);
}

TEST(Morita, FourPointCornersMatchOracle)
{
  const FourPoint f;
  const auto ls = linking_system(symmetric_action_equivalence(f.g, f.h));
  const auto c = verify_morita(ls);
  const auto p = oracles::wedderburn(ls.p_corner);
  const auto q = oracles::wedderburn(ls.q_corner);
  EXPECT_EQ(p.center, c.p_report.center_dimension);
  EXPECT_EQ(q.center, c.q_report.center_dimension);
  EXPECT_EQ(p.blocks, c.p_report.blocks);
  EXPECT_EQ(q.blocks, c.q_report.blocks);
  EXPECT_EQ(p.center, q.center);
}
