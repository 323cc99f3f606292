#include <gtest/gtest.h>

#include "groupoidal/bundle_constructions.hpp"
#include "groupoidal/instances.hpp"
#include "groupoidal/principal.hpp"

using namespace groupoidal;

TEST(Instances, RelationGroupoid)
{
  const std::vector<int> classes{0, 1, 0, 1, 2};
  const auto r = relation_groupoid(classes);
  EXPECT_EQ(r.num_arrows(), 9u);
  EXPECT_TRUE(validate_groupoid(r).ok());
  EXPECT_EQ(relation_arrow(r, 0, 1), kUndefined);
  EXPECT_NE(relation_arrow(r, 0, 2), kUndefined);
}

TEST(Instances, RelationActionRejectsNonInvariantPermutation)
{
  const std::vector<int> classes{0, 0, 1};
  const auto r = relation_groupoid(classes);
  EXPECT_THROW(relation_action(cyclic_group(2), r, {{0, 1, 2}, {2, 1, 0}}, Side::left), PreconditionError);
}

TEST(Instances, Deterministic)
{
  const auto a = random_commuting_instance(11), b = random_commuting_instance(11);
  EXPECT_TRUE(a.groupoid == b.groupoid);
  EXPECT_EQ(a.g.table(), b.g.table());
  EXPECT_EQ(a.description, b.description);
}

TEST(Instances, FiftyRandomEquivalencesAndCorruptions)
{
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const auto inst = random_commuting_instance(seed);
    ASSERT_LE(inst.groupoid.num_units(), 6u) << inst.description;
    ASSERT_TRUE(validate_groupoid(inst.groupoid).ok()) << inst.description;
    ASSERT_TRUE(check_action(inst.g).ok() && check_action(inst.h).ok()) << inst.description;
    const auto e = symmetric_groupoid_equivalence(inst.groupoid, inst.g, inst.h);
    const auto rep = verify_groupoid_equivalence(e);
    EXPECT_TRUE(rep.ok()) << "seed " << seed << ": " << inst.description << '\n' << rep.to_string();
    std::string what;
    const auto bad = corrupt_one_entry(e, seed, &what);
    const auto bad_rep = verify_groupoid_equivalence(bad);
    EXPECT_FALSE(bad_rep.ok()) << "seed " << seed << ": " << what;
    if (!bad_rep.ok())
      EXPECT_FALSE(bad_rep.failures().front().witness.empty());
  }
}

TEST(Instances, TwentyPrincipalDecompositions)
{
  for (std::uint64_t seed = 100; seed < 120; ++seed) {
    const auto inst = random_commuting_instance(seed);
    const auto d = principal_decomposition(inst.h);
    const auto rep = verify_principal_decomposition(inst.h, d);
    EXPECT_TRUE(rep.ok()) << inst.description << '\n' << rep.to_string();
    const auto act = random_unitary_bundle_action(inst.h, seed);
    ASSERT_TRUE(check_bundle_action(act).ok()) << inst.description;
    const auto fd = principal_fell_decomposition(act);
    const auto frep = verify_principal_fell_decomposition(act, fd);
    EXPECT_TRUE(frep.ok()) << inst.description << '\n' << frep.to_string();
  }
}

TEST(Instances, RandomUnitaryIsUnitary)
{
  Rng rng(3);
  const Matrix u = random_unitary(rng, 3);
  EXPECT_LE((u.adjoint() * u - Matrix::Identity(3, 3)).cwiseAbs().maxCoeff(), 1e-12);
}
