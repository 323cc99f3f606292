#include <gtest/gtest.h>

#include "groupoidal/constructions.hpp"
#include "groupoidal/equivalence.hpp"
#include "fixtures.hpp"

using namespace groupoidal;

using namespace fixtures;

TEST(Groupoid, PairGroupoidCounts)
{
  EXPECT_EQ(make_pair_groupoid(1).num_arrows(), 1u);
  EXPECT_EQ(make_pair_groupoid(2).num_arrows(), 4u);
  EXPECT_EQ(make_pair_groupoid(4).num_arrows(), 16u);
  EXPECT_TRUE(validate_groupoid(make_pair_groupoid(3)).ok());
  EXPECT_THROW(make_pair_groupoid(0), PreconditionError);
}

TEST(Groupoid, CorruptedCompositionIsReported)
{
  const auto g = make_pair_groupoid(3);
  const auto bad = g.with_composition(arrow(g, "(1,2)"), arrow(g, "(2,3)"), arrow(g, "(2,3)"));
  const auto rep = validate_groupoid(bad);
  ASSERT_FALSE(rep.ok());
  EXPECT_NE(rep.to_string().find("(1,2)"), std::string::npos);
}

TEST(Group, CyclicOrders)
{
  EXPECT_EQ(cyclic_group(2).order(), 2u);
  EXPECT_EQ(cyclic_group(3).order(), 3u);
  EXPECT_THROW(make_group({{0, 1, 2}, {1, 0, 2}, {2, 2, 0}}), PreconditionError);
}

TEST(Action, FreenessExamples)
{
  const auto pair4 = make_pair_groupoid(4);
  EXPECT_TRUE(check_action(trivial_action(cyclic_group(2), pair4, Side::left)).ok());
  EXPECT_FALSE(is_free(trivial_action(cyclic_group(2), pair4, Side::left)));
  const auto h = pair_groupoid_action(cyclic_group(2), 4, {{0, 1, 2, 3}, {1, 0, 3, 2}}, Side::left);
  EXPECT_TRUE(check_action(h).ok());
  EXPECT_TRUE(is_free(h));
  const auto s3 = pair_groupoid_action(cyclic_group(2), 3, {{0, 1, 2}, {1, 0, 2}}, Side::left);
  EXPECT_TRUE(check_action(s3).ok());
  EXPECT_FALSE(is_free(s3));
  EXPECT_NE(freeness_witness(s3).find("(3,3)"), std::string::npos);
}

TEST(Constructions, TransformationGroupoidOfSwap)
{
  const auto z2 = cyclic_group(2);
  const auto swap = group_set_action(z2, {"a", "b"}, {{0, 1}, {1, 0}}, Side::left);
  const auto t = transformation_groupoid(z2.groupoid(), swap);
  EXPECT_EQ(t.groupoid.num_arrows(), 4u);
  EXPECT_EQ(t.groupoid.num_units(), 2u);
  EXPECT_TRUE(validate_groupoid(t.groupoid).ok());
  EXPECT_EQ(t.groupoid.inv(t.index(1, 0)), t.index(1, 1));
  for (ArrowIndex i = 0; i < static_cast<ArrowIndex>(t.groupoid.num_arrows()); ++i) {
    const auto [x, u] = t.pairs[i];
    EXPECT_EQ(t.groupoid.src(i), u);
    EXPECT_EQ(t.groupoid.rng(i), swap.act(x, u));
  }
}

TEST(Constructions, SemidirectLeftAndRight)
{
  const auto pair2 = make_pair_groupoid(2);
  const auto sw = pair_groupoid_action(cyclic_group(2), 2, {{0, 1}, {1, 0}}, Side::left);
  const auto sd = semidirect_left(sw);
  EXPECT_EQ(sd.groupoid.num_arrows(), 8u);
  EXPECT_EQ(sd.groupoid.num_units(), 2u);
  EXPECT_TRUE(validate_groupoid(sd.groupoid).ok());
  for (ArrowIndex a = 0; a < 8; ++a) {
    const auto x = sd.arrow_of(a);
    const auto t = sd.element_of(a);
    EXPECT_EQ(sd.groupoid.src(a), sw.act_unit(sw.group().inv(t), pair2.src(x)));
  }
  const auto h = h12_34();
  const auto sr = semidirect_right(h);
  EXPECT_EQ(sr.groupoid.num_arrows(), 32u);
  EXPECT_TRUE(validate_groupoid(sr.groupoid).ok());
  for (ArrowIndex a = 0; a < 32; ++a) {
    const auto x = sr.arrow_of(a);
    const auto t = sr.element_of(a);
    EXPECT_EQ(sr.groupoid.rng(a), h.act_unit(h.group().inv(t), h.target().rng(x)));
  }
  const auto triv = semidirect_left(trivial_action(trivial_group(), pair2, Side::left));
  EXPECT_TRUE(check_homomorphism(triv.groupoid, pair2, std::vector<ArrowIndex>{0, 1, 2, 3}, true).ok());
}

TEST(Constructions, QuotientByFreeAction)
{
  const auto q = quotient_groupoid(h12_34());
  EXPECT_EQ(q.groupoid.num_arrows(), 8u);
  EXPECT_EQ(q.groupoid.num_units(), 2u);
  EXPECT_TRUE(validate_groupoid(q.groupoid).ok());
  EXPECT_TRUE(check_homomorphism(h12_34().target(), q.groupoid, q.arrow_class, false).ok());
  const auto h = h12_34();
  const auto& x = h.target();
  for (UnitIndex u = 0; u < 4; ++u)
    EXPECT_EQ(q.arrow_class[x.unit_arrow(u)], q.groupoid.unit_arrow(q.unit_class[u]));
  const auto non_free = pair_groupoid_action(cyclic_group(2), 3, {{0, 1, 2}, {1, 0, 2}}, Side::right);
  EXPECT_THROW(quotient_groupoid(non_free), PreconditionError);
}

TEST(Constructions, OrbitSpaceAction)
{
  const auto q = quotient_groupoid(h12_34());
  const auto a = orbit_space_action(q);
  EXPECT_TRUE(check_space_action(a).ok()) << check_space_action(a).to_string();
  std::vector<bool> hit(q.groupoid.num_units());
  for (PointIndex y = 0; y < 16; ++y)
    hit[a.fibring(y)] = true;
  EXPECT_EQ(std::count(hit.begin(), hit.end(), true), 2);
  const auto trivial = quotient_groupoid(trivial_action(trivial_group(), make_pair_groupoid(2), Side::right));
  const auto t = orbit_space_action(trivial);
  const auto self = self_translation_action(make_pair_groupoid(2), Side::left);
  EXPECT_EQ(t.table(), self.table());
}

TEST(Constructions, SemidirectSpaceActions)
{
  const auto x = make_pair_groupoid(2);
  const auto sw = pair_groupoid_action(cyclic_group(2), 2, {{0, 1}, {1, 0}}, Side::left);
  const auto on_space = self_translation_action(x, Side::left);
  // G permutes the arrow set by the coordinate swap
  std::vector<std::vector<int>> perms(2);
  for (ElementIndex t = 0; t < 2; ++t)
    for (ArrowIndex a = 0; a < 4; ++a)
      perms[t].push_back(sw.act(t, a));
  const auto on_set = group_set_action(cyclic_group(2), x.arrow_names(), perms, Side::left);
  EXPECT_TRUE(check_covariant(sw, on_set, on_space).ok());
  const auto sd = semidirect_left(sw);
  const auto act = semidirect_space_action(sd, on_set, on_space);
  EXPECT_TRUE(check_space_action(act).ok()) << check_space_action(act).to_string();
  for (ArrowIndex a = 0; a < 8; ++a)
    for (PointIndex u = 0; u < 4; ++u)
      EXPECT_EQ(act.act(a, u) != kUndefined, x.src(sd.arrow_of(a)) == on_space.fibring(on_set.act(sd.element_of(a), u)));

  const auto swr = pair_groupoid_action(cyclic_group(2), 2, {{0, 1}, {1, 0}}, Side::right);
  const auto on_space_r = self_translation_action(x, Side::right);
  const auto on_set_r = group_set_action(cyclic_group(2), x.arrow_names(), perms, Side::right);
  EXPECT_TRUE(check_covariant(swr, on_set_r, on_space_r).ok());
  const auto sr = semidirect_right(swr);
  const auto ract = semidirect_right_space_action(sr, on_set_r, on_space_r);
  EXPECT_TRUE(check_space_action(ract).ok()) << check_space_action(ract).to_string();

  // a non-covariant G-action on the set is rejected
  const auto flat = group_set_action(cyclic_group(2), x.arrow_names(), {{0, 1, 2, 3}, {0, 1, 2, 3}}, Side::left);
  EXPECT_FALSE(check_covariant(sw, flat, on_space).ok());
  EXPECT_THROW(semidirect_space_action(sd, flat, on_space), PreconditionError);
}

TEST(Equivalence, SymmetricFourPointInstance)
{
  const auto g = g13_24();
  const auto h = h12_34();
  const auto e = symmetric_groupoid_equivalence(g.target(), g, h);
  EXPECT_EQ(e.p().num_arrows(), 16u);
  EXPECT_EQ(e.q().num_arrows(), 16u);
  const auto rep = verify_groupoid_equivalence(e);
  EXPECT_TRUE(rep.ok()) << rep.to_string();

  const auto& x = g.target();
  // (1,1) lies in a different σ-fibre from (1,2); (1,4) is the nearest valid partner
  EXPECT_THROW(left_bracket(e, arrow(x, "(1,2)"), arrow(x, "(1,1)")), PreconditionError);
  const auto z1 = arrow(x, "(1,2)");
  const auto z2 = arrow(x, "(1,4)");
  const auto p = left_bracket(e, z1, z2);
  EXPECT_EQ(e.left.act(p, z2), z1);
  std::size_t ts = 0;
  for (ElementIndex t = 0; t < 2; ++t)
    ts += g.act_unit(t, x.src(z2)) == x.src(z1);
  EXPECT_EQ(ts, 1u);
  const auto q = right_bracket(e, arrow(x, "(1,3)"), arrow(x, "(2,3)"));
  EXPECT_EQ(e.right.act(q, arrow(x, "(1,3)")), arrow(x, "(2,3)"));
  for (PointIndex z = 0; z < 16; ++z)
    EXPECT_EQ(left_bracket(e, z, z), e.p().unit_arrow(e.rho(z)));
  for (PointIndex z = 0; z < 16; ++z)
    for (ArrowIndex q = 0; q < 16; ++q)
      if (const auto w = e.right.act(q, z); w != kUndefined)
        EXPECT_EQ(e.rho(w), e.rho(z));
}

TEST(Equivalence, TrivialGroups)
{
  const auto x = make_pair_groupoid(3);
  const auto e = symmetric_groupoid_equivalence(x, trivial_action(trivial_group(), x, Side::left),
                                                trivial_action(trivial_group(), x, Side::right));
  EXPECT_TRUE(verify_groupoid_equivalence(e).ok());
  EXPECT_EQ(e.left.table(), self_translation_action(x, Side::left).table());
}

TEST(Equivalence, CorruptedSigmaFailsItemV)
{
  const auto e0 = symmetric_groupoid_equivalence(g13_24().target(), g13_24(), h12_34());
  auto e = e0;
  e.right = e.right.with_fibring(3, e.right.fibring(3) == 0 ? 1 : 0);
  const auto rep = verify_groupoid_equivalence(e);
  EXPECT_TRUE(rep.failed("item-v-sigma")) << rep.to_string();
}

TEST(Equivalence, RejectsNonCommutingOrNonFree)
{
  const auto x = make_pair_groupoid(4);
  const auto g = pair_groupoid_action(cyclic_group(2), 4, {{0, 1, 2, 3}, {1, 2, 3, 0}}, Side::left);
  EXPECT_ANY_THROW(symmetric_groupoid_equivalence(x, g13_24(), trivial_action(cyclic_group(2), x, Side::right)));
}
