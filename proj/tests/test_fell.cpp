#include <gtest/gtest.h>

#include "groupoidal/bundle_equivalence.hpp"
#include "fixtures.hpp"

using namespace groupoidal;
using namespace fixtures;

namespace {

struct FourPoint {
  FellBundle a = trivial_line_bundle(make_pair_groupoid(4));
  BundleAction g = lift_action(a, g13_24());
  BundleAction h = lift_action(a, h12_34());
};

} // namespace

TEST(BundleAction, LiftedActionsAreValid)
{
  const FourPoint f;
  EXPECT_TRUE(check_bundle_action(f.g).ok());
  EXPECT_TRUE(check_bundle_action(f.h).ok());
  EXPECT_TRUE(is_free_bundle_action(f.g));
}

TEST(BundleAction, BrokenMultiplicativityIsDetected)
{
  const FourPoint f;
  const auto x = arrow(f.a.base(), "(1,2)");
  const auto bad = f.g.with_map(1, x, 2.0 * f.g.map(1, x));
  const auto rep = check_bundle_action(bad);
  EXPECT_TRUE(rep.failed("multiplicative"));
  EXPECT_TRUE(rep.failed("isometric"));
}

TEST(BundleAction, UnitaryActionOnMatrixBundle)
{
  // swap two points of a pair groupoid carrying M_2 fibers, conjugating by diag(1, -1)
  const std::vector<int> dims{2, 2};
  const auto b = matrix_bundle(make_pair_groupoid(2), dims);
  const auto base = pair_groupoid_action(cyclic_group(2), 2, {{0, 1}, {1, 0}}, Side::left);
  Matrix d = Matrix::Identity(2, 2);
  d(1, 1) = -1.0;
  const std::vector<Matrix> w{Matrix::Identity(2, 2), Matrix::Identity(2, 2), d, d};
  const auto act = unitary_action(b, dims, base, w);
  EXPECT_TRUE(check_bundle_action(act).ok());
}

TEST(BundleConstructions, SemidirectBundlesValidate)
{
  const FourPoint f;
  const auto p = semidirect_fell_bundle(f.g);
  EXPECT_EQ(p.bundle.base().num_arrows(), 32u);
  EXPECT_TRUE(validate_fell_bundle(p.bundle).ok());
  const auto q = semidirect_right_fell_bundle(f.h);
  EXPECT_TRUE(validate_fell_bundle(q.bundle).ok());
}

TEST(BundleConstructions, QuotientBundleHasEightFibers)
{
  const FourPoint f;
  const auto q = quotient_fell_bundle(f.h);
  EXPECT_EQ(q.bundle.base().num_arrows(), 8u);
  EXPECT_TRUE(validate_fell_bundle(q.bundle).ok());
  const auto trivial = quotient_fell_bundle(trivial_right_action(f.a));
  EXPECT_EQ(trivial.bundle.base().num_arrows(), 16u);
  EXPECT_TRUE(validate_fell_bundle(trivial.bundle).ok());
}

TEST(BundleConstructions, NonFreeQuotientIsRejected)
{
  const auto a = trivial_line_bundle(make_pair_groupoid(3));
  const auto fixes = pair_groupoid_action(cyclic_group(2), 3, {{0, 1, 2}, {1, 0, 2}}, Side::right);
  EXPECT_THROW(quotient_fell_bundle(lift_action(a, fixes)), PreconditionError);
}

TEST(BundleConstructions, OrbitBundleActionIsAModule)
{
  const FourPoint f;
  const auto q = quotient_fell_bundle(f.h);
  const auto m = orbit_bundle_action(f.h, q);
  EXPECT_TRUE(check_bundle_module(q.bundle, m).ok());
}

TEST(BundleConstructions, PrincipalFellDecomposition)
{
  const FourPoint f;
  const auto d = principal_fell_decomposition(f.h);
  const auto rep = verify_principal_fell_decomposition(f.h, d);
  EXPECT_TRUE(rep.ok()) << rep.to_string();
  EXPECT_THROW(principal_fell_decomposition(f.g), PreconditionError);
}

TEST(BundleEquivalence, SymmetricFourPointInstance)
{
  const FourPoint f;
  const auto e = symmetric_action_equivalence(f.g, f.h);
  const auto rep = verify_bundle_equivalence(e);
  EXPECT_TRUE(rep.ok()) << rep.to_string();
  EXPECT_LE(rep.residual("step5-exchange"), 1e-9);
  for (PointIndex z1 = 0; z1 < 16; ++z1)
    for (PointIndex z2 = 0; z2 < 16; ++z2)
      if (e.base.sigma(z1) == e.base.sigma(z2))
        EXPECT_EQ(e.left_inner_target[e.pair(z1, z2)], left_bracket(e.base, z1, z2));
}

TEST(BundleEquivalence, TrivialGroupsReduceToAssociativity)
{
  const auto a = trivial_line_bundle(make_pair_groupoid(3));
  const auto g = lift_action(a, trivial_action(trivial_group(), a.base(), Side::left));
  const auto e = symmetric_action_equivalence(g, trivial_right_action(a));
  EXPECT_TRUE(verify_bundle_equivalence(e).ok());
}

TEST(BundleEquivalence, OneSidedOnMatrixBundle)
{
  const std::vector<int> dims{1, 2, 1, 2};
  const auto a = matrix_bundle(make_pair_groupoid(4), dims);
  const auto e = one_sided_equivalence(lift_action(a, g13_24()));
  const auto rep = verify_bundle_equivalence(e);
  EXPECT_TRUE(rep.ok()) << rep.to_string();
}

TEST(BundleEquivalence, OneSidedTransformation)
{
  // Y = Z/2 as a group, Ω = Z/2, G = Z/2 by translation
  const auto z2 = cyclic_group(2);
  const auto b = trivial_line_bundle(z2.groupoid());
  const auto act = translation_action(z2, Side::left);
  const auto gact = translation_action(z2, Side::left);
  const auto e = one_sided_transformation_equivalence(b, act, gact);
  EXPECT_TRUE(e.q_bundle.base() == z2.groupoid());
  EXPECT_TRUE(verify_bundle_equivalence(e).ok());
}

TEST(BundleEquivalence, NegatedInnerProductFailsStepThree)
{
  const FourPoint f;
  auto e = symmetric_action_equivalence(f.g, f.h);
  const auto z1 = arrow(f.a.base(), "(1,2)"), z2 = arrow(f.a.base(), "(1,4)");
  e.left_inner[e.pair(z1, z2)] *= -1.0;
  const auto rep = verify_bundle_equivalence(e);
  EXPECT_TRUE(rep.failed("step3-adjoint-left"));
  EXPECT_NE(rep.to_string().find("(1,2), (1,4)"), std::string::npos);
}

TEST(BundleEquivalence, RejectsNonCommutingFiberActions)
{
  const FourPoint f;
  const auto x = arrow(f.a.base(), "(1,1)");
  Matrix phase(1, 1);
  phase(0, 0) = Complex(0.0, 1.0);
  EXPECT_THROW(symmetric_action_equivalence(f.g.with_map(1, x, phase), f.h), PreconditionError);
}

TEST(BundleConstructions, SemidirectOrbitActionIsAModule)
{
  const FourPoint f;
  const auto d = symmetric_action_data(f.g, f.h);
  const auto m = semidirect_orbit_bundle_action(f.g, f.h);
  const auto rep = check_bundle_module(d.p.bundle, m);
  EXPECT_TRUE(rep.ok()) << rep.to_string();
}
