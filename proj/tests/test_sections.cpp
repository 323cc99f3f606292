#include <gtest/gtest.h>

#include <random>

#include "groupoidal/sections.hpp"
#include "fixtures.hpp"
#include "oracles.hpp"

using namespace groupoidal;
using namespace fixtures;

namespace {

Vector random_vector(Eigen::Index n, unsigned seed)
{
  std::mt19937 gen(seed);
  std::normal_distribution<double> nd;
  Vector v(n);
  for (Eigen::Index i = 0; i < n; ++i)
    v(i) = Complex(nd(gen), nd(gen));
  return v;
}

} // namespace

TEST(Sections, PairGroupoidGivesMatrixAlgebra)
{
  const auto a = section_algebra(trivial_line_bundle(make_pair_groupoid(3)));
  EXPECT_TRUE(validate_star_algebra(a).ok());
  const auto w = oracles::wedderburn(a);
  EXPECT_EQ(w.blocks, std::vector<int>{3});
  EXPECT_EQ(star_structure_report(a).blocks, std::vector<int>{3});
}

TEST(Sections, ConvolveMatchesAlgebraProduct)
{
  const std::vector<int> dims{1, 2, 1, 2};
  const auto b = matrix_bundle(make_pair_groupoid(4), dims);
  const auto a = section_algebra(b);
  const Vector f = random_vector(b.total_dim(), 1), g = random_vector(b.total_dim(), 2);
  EXPECT_LE((convolve(b, f, g) - a.multiply(f, g)).cwiseAbs().maxCoeff(), 1e-12);
  EXPECT_LE((section_adjoint(b, f) - a.adjoint(f)).cwiseAbs().maxCoeff(), 1e-12);
}

TEST(Sections, TransformationConvolutionMatchesFormula)
{
  const auto s3 = symmetric_group(3);
  const auto b = trivial_line_bundle(s3.groupoid());
  const auto act = translation_action(s3, Side::left);
  const auto t = transformation_fell_bundle(b, act);
  const Vector f = random_vector(t.bundle.total_dim(), 3), g = random_vector(t.bundle.total_dim(), 4);
  const Vector expect = oracles::transformation_convolution(b, act, t.base.pairs, f, g);
  EXPECT_LE((convolve(t.bundle, f, g) - expect).cwiseAbs().maxCoeff(), 1e-12);
}

TEST(Sections, SemidirectConvolutionMatchesFormula)
{
  const std::vector<int> dims{2, 1, 2, 1};
  const auto b = matrix_bundle(make_pair_groupoid(4), dims);
  const auto act = lift_action(b, g13_24());
  const auto sd = semidirect_fell_bundle(act);
  const Vector f = random_vector(sd.bundle.total_dim(), 5), g = random_vector(sd.bundle.total_dim(), 6);
  const Vector expect = oracles::semidirect_convolution(act, f, g);
  EXPECT_LE((convolve(sd.bundle, f, g) - expect).cwiseAbs().maxCoeff(), 1e-12);
}

TEST(Sections, CrossedProductIdentification)
{
  const auto b = trivial_line_bundle(make_pair_groupoid(4));
  const auto act = lift_action(b, g13_24());
  const auto cp = crossed_product(act);
  const auto sa = section_action(act);
  EXPECT_TRUE(check_algebra_action(sa).ok());
  const auto rhs = crossed_product_by_action(sa);
  const auto rep = check_algebra_homomorphism(cp, rhs, crossed_product_identification(act), true);
  EXPECT_TRUE(rep.ok()) << rep.to_string();
}

TEST(Sections, TrivialGroupCrossedProductIsSectionAlgebra)
{
  const auto b = matrix_bundle(make_pair_groupoid(2), std::vector<int>{1, 2});
  const auto act = lift_action(b, trivial_action(trivial_group(), b.base(), Side::left));
  const auto cp = crossed_product(act);
  const auto sa = section_algebra(b);
  EXPECT_EQ(cp.dim(), sa.dim());
  EXPECT_EQ(oracles::wedderburn(cp).blocks, oracles::wedderburn(sa).blocks);
}

TEST(Sections, InducedAlgebraOfSwap)
{
  // X = Z/2 under translation, B = C^2 with the swap: Ind is C^2
  const auto z2 = cyclic_group(2);
  const auto c2 = diagonal_algebra(2);
  Matrix swap = Matrix::Zero(2, 2);
  swap(0, 1) = swap(1, 0) = 1.0;
  const AlgebraAction sigma{z2, c2, Side::left, {Matrix::Identity(2, 2), swap}};
  const auto ind = induced_algebra(c2, translation_action(z2, Side::left), sigma);
  EXPECT_EQ(ind.algebra.dim(), 2);
  const auto rep = verify_induced_algebra(ind);
  EXPECT_TRUE(rep.ok()) << rep.to_string();
}

TEST(Sections, InducedAlgebraRejectsNonFreeAction)
{
  const auto z2 = cyclic_group(2);
  const auto c = diagonal_algebra(1);
  const AlgebraAction triv{z2, c, Side::left, {Matrix::Identity(1, 1), Matrix::Identity(1, 1)}};
  const auto fixed = group_set_action(z2, {"p"}, {{0}, {0}}, Side::left);
  EXPECT_THROW(induced_algebra(c, fixed, triv), PreconditionError);
}
