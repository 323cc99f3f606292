#include <gtest/gtest.h>

#include "groupoidal/fell_bundle.hpp"
#include "groupoidal/star_algebra.hpp"

using namespace groupoidal;

TEST(StarAlgebra, ComplexNumbers)
{
  const auto r = star_structure_report(matrix_algebra(1));
  EXPECT_EQ(r.blocks, std::vector<int>{1});
  EXPECT_EQ(r.center_dimension, 1);
  EXPECT_TRUE(r.is_cstar);
}

TEST(StarAlgebra, MatrixAndGroupAlgebras)
{
  const auto m3 = star_structure_report(matrix_algebra(3));
  EXPECT_EQ(m3.blocks, std::vector<int>{3});
  EXPECT_EQ(m3.center_dimension, 1);
  const auto z3 = star_structure_report(group_algebra(cyclic_group(3)));
  EXPECT_EQ(z3.blocks, (std::vector<int>{1, 1, 1}));
  EXPECT_EQ(z3.center_dimension, 3);
  const auto s3 = star_structure_report(group_algebra(symmetric_group(3)));
  EXPECT_EQ(s3.blocks, (std::vector<int>{1, 1, 2}));
}

TEST(StarAlgebra, DualNumbersAreNotCStar)
{
  const auto d = dual_numbers();
  EXPECT_TRUE(validate_star_algebra(d).ok());
  EXPECT_FALSE(regular_representation(d).faithful());
  const auto r = star_structure_report(d);
  EXPECT_FALSE(r.is_cstar);
  EXPECT_EQ(r.radical_dimension, 1);
}

TEST(StarAlgebra, WedderburnConsistency)
{
  const auto a = direct_sum(matrix_algebra(2), group_algebra(cyclic_group(2)));
  const auto r = star_structure_report(a);
  int sum = 0;
  for (int b : r.blocks)
    sum += b * b;
  EXPECT_EQ(sum, r.dimension - r.radical_dimension);
  EXPECT_EQ(r.blocks, (std::vector<int>{1, 1, 2}));
}

TEST(StarAlgebra, RegularRepresentationNorms)
{
  const auto a = matrix_algebra(2);
  const auto rep = regular_representation(a);
  ASSERT_TRUE(rep.faithful());
  // E_11 + E_12 has operator norm sqrt(2)
  Vector v = Vector::Zero(4);
  v(0) = 1.0;
  v(1) = 1.0;
  EXPECT_NEAR(rep.norm(v), std::sqrt(2.0), 1e-12);
}

TEST(StarAlgebra, CorruptedInvolutionIsReported)
{
  const auto a = matrix_algebra(2);
  const auto bad = a.with_star(-a.star());
  EXPECT_FALSE(validate_star_algebra(bad).ok());
}

TEST(StarAlgebra, CrossedProductOfSwap)
{
  const auto c2 = diagonal_algebra(2);
  Matrix swap = Matrix::Zero(2, 2);
  swap(0, 1) = swap(1, 0) = 1.0;
  AlgebraAction act{cyclic_group(2), c2, Side::left, {Matrix::Identity(2, 2), swap}};
  ASSERT_TRUE(check_algebra_action(act).ok());
  const auto cp = crossed_product_by_action(act);
  EXPECT_EQ(cp.dim(), 4);
  EXPECT_EQ(star_structure_report(cp).blocks, std::vector<int>{2});
}

TEST(FellBundle, LineBundleOverPairGroupoid)
{
  const auto b = trivial_line_bundle(make_pair_groupoid(3));
  EXPECT_TRUE(validate_fell_bundle(b).ok());
  EXPECT_EQ(b.total_dim(), 9);
}

TEST(FellBundle, MatrixBundle)
{
  const std::vector<int> d{1, 2};
  const auto b = matrix_bundle(make_pair_groupoid(2), d);
  EXPECT_TRUE(validate_fell_bundle(b).ok());
  EXPECT_EQ(b.total_dim(), 9);
}

TEST(FellBundle, NegatedStarIsDetected)
{
  const auto g = make_pair_groupoid(2);
  const auto b = trivial_line_bundle(g);
  const auto x = *g.find_arrow("(1,2)");
  const auto rep = validate_fell_bundle(b.with_star(x, -b.star(x)));
  EXPECT_FALSE(rep.ok());
  EXPECT_NE(rep.to_string().find("(1,2)"), std::string::npos);
}

TEST(FellBundle, TrivialCBundleRejectsNonCStar)
{
  EXPECT_THROW(make_trivial_cbundle(dual_numbers(), {"a"}), PreconditionError);
  const auto b = make_trivial_cbundle(diagonal_algebra(2), {"x", "y"});
  EXPECT_TRUE(validate_fell_bundle(b).ok());
}
