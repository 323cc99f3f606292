#include "groupoidal/action.hpp"

#include <algorithm>

namespace groupoidal {

GroupAction::GroupAction(FiniteGroup group, FiniteGroupoid target, Side side, std::vector<ArrowIndex> table)
  : group_(std::move(group)), target_(std::move(target)), side_(side), table_(std::move(table))
{
  if (table_.size() != group_.order() * target_.num_arrows())
    throw PreconditionError("GroupAction: table must have |G| x |arrows| entries");
  const auto n = static_cast<ArrowIndex>(target_.num_arrows());
  for (auto v : table_)
    if (v < 0 || v >= n)
      throw PreconditionError("GroupAction: image out of range");
}

ValidationReport check_action(const GroupAction& a)
{
  ValidationReport rep;
  const auto& g = a.target();
  const auto& G = a.group();
  const auto n = static_cast<ArrowIndex>(g.num_arrows());
  const auto order = static_cast<ElementIndex>(G.order());
  for (const char* c : {"automorphism", "group-law", "identity", "haar-invariance"})
    rep.record(c);

  auto elem = [&](ElementIndex t) { return G.name(t); };
  for (ElementIndex t = 0; t < order; ++t) {
    std::vector<int> hit(g.num_arrows(), 0);
    for (ArrowIndex x = 0; x < n; ++x)
      ++hit[a.act(t, x)];
    if (std::any_of(hit.begin(), hit.end(), [](int h) { return h != 1; }))
      rep.fail("automorphism", "element " + elem(t) + " does not act bijectively");
    for (ArrowIndex x = 0; x < n; ++x) {
      const ArrowIndex tx = a.act(t, x);
      if (a.act(t, g.inv(x)) != g.inv(tx))
        rep.fail("automorphism", "element " + elem(t) + " does not preserve the inverse of " + g.arrow_name(x));
      if (g.is_unit_arrow(x) && !g.is_unit_arrow(tx))
        rep.fail("automorphism", "element " + elem(t) + " maps unit " + g.arrow_name(x) + " to a non-unit");
      for (ArrowIndex y = 0; y < n; ++y) {
        const ArrowIndex ty = a.act(t, y);
        if (g.composable(x, y) != g.composable(tx, ty)) {
          rep.fail("automorphism", "element " + elem(t) + " does not preserve composability of (" +
                                       g.arrow_name(x) + ", " + g.arrow_name(y) + ")");
          continue;
        }
        const ArrowIndex xy = g.compose(x, y);
        if (xy != kUndefined && a.act(t, xy) != g.compose(tx, ty))
          rep.fail("automorphism", "element " + elem(t) + " does not preserve the product (" +
                                       g.arrow_name(x) + ", " + g.arrow_name(y) + ")");
      }
    }
  }

  for (ElementIndex s = 0; s < order; ++s)
    for (ElementIndex t = 0; t < order; ++t)
      for (ArrowIndex x = 0; x < n; ++x) {
        // left: s·(t·x) = (st)·x ; right: (x·s)·t = x·(st)
        const ArrowIndex lhs = a.side() == Side::left ? a.act(s, a.act(t, x)) : a.act(t, a.act(s, x));
        if (lhs != a.act(G.mul(s, t), x))
          rep.fail("group-law", "(" + elem(s) + ", " + elem(t) + ", " + g.arrow_name(x) + ")");
      }
  for (ArrowIndex x = 0; x < n; ++x)
    if (a.act(G.identity(), x) != x)
      rep.fail("identity", "identity moves " + g.arrow_name(x));

  for (ElementIndex t = 0; t < order; ++t)
    for (UnitIndex u = 0; u < static_cast<UnitIndex>(g.num_units()); ++u)
      if (g.range_fiber(u).size() != g.range_fiber(a.act_unit(t, u)).size())
        rep.fail("haar-invariance", "|r^-1(" + g.unit_name(u) + ")| changes under " + elem(t));

  rep.note("properness holds vacuously for finite discrete actions");
  return rep;
}

std::string freeness_witness(const GroupAction& a)
{
  const auto& G = a.group();
  for (ElementIndex t = 0; t < static_cast<ElementIndex>(G.order()); ++t) {
    if (t == G.identity())
      continue;
    for (ArrowIndex x = 0; x < static_cast<ArrowIndex>(a.target().num_arrows()); ++x)
      if (a.act(t, x) == x)
        return "(" + G.name(t) + ", " + a.target().arrow_name(x) + ")";
  }
  return {};
}

bool is_free(const GroupAction& a) { return freeness_witness(a).empty(); }

GroupAction trivial_action(const FiniteGroup& group, const FiniteGroupoid& target, Side side)
{
  std::vector<ArrowIndex> table;
  table.reserve(group.order() * target.num_arrows());
  for (std::size_t t = 0; t < group.order(); ++t)
    for (ArrowIndex x = 0; x < static_cast<ArrowIndex>(target.num_arrows()); ++x)
      table.push_back(x);
  return {group, target, side, std::move(table)};
}

GroupAction pair_groupoid_action(const FiniteGroup& group, std::size_t n,
                                 const std::vector<std::vector<int>>& perms, Side side)
{
  if (perms.size() != group.order())
    throw PreconditionError("pair_groupoid_action: need one permutation per group element");
  const auto N = static_cast<ArrowIndex>(n);
  std::vector<ArrowIndex> table;
  for (const auto& p : perms) {
    if (p.size() != n)
      throw PreconditionError("pair_groupoid_action: permutation has wrong length");
    for (ArrowIndex i = 0; i < N; ++i)
      for (ArrowIndex j = 0; j < N; ++j)
        table.push_back(p[i] * N + p[j]);
  }
  return {group, make_pair_groupoid(n), side, std::move(table)};
}

GroupAction product_action(const GroupAction& base_action, const FiniteGroupoid& fiber,
                           const FiniteGroupoid& product)
{
  const auto nb = static_cast<ArrowIndex>(base_action.target().num_arrows());
  const auto nf = static_cast<ArrowIndex>(fiber.num_arrows());
  if (product.num_arrows() != static_cast<std::size_t>(nb * nf))
    throw PreconditionError("product_action: product groupoid has the wrong size");
  std::vector<ArrowIndex> table;
  for (ElementIndex t = 0; t < static_cast<ElementIndex>(base_action.group().order()); ++t)
    for (ArrowIndex x = 0; x < nb; ++x)
      for (ArrowIndex y = 0; y < nf; ++y)
        table.push_back(base_action.act(t, x) * nf + y);
  return {base_action.group(), product, base_action.side(), std::move(table)};
}

GroupAction relabel_action(const GroupAction& a, const FiniteGroupoid& relabeled,
                           std::span<const ArrowIndex> perm)
{
  const std::size_t n = relabeled.num_arrows();
  std::vector<ArrowIndex> table(a.table().size());
  for (ElementIndex t = 0; t < static_cast<ElementIndex>(a.group().order()); ++t)
    for (std::size_t x = 0; x < n; ++x)
      table[static_cast<std::size_t>(t) * n + static_cast<std::size_t>(perm[x])] =
        perm[a.act(t, static_cast<ArrowIndex>(x))];
  return {a.group(), relabeled, a.side(), std::move(table)};
}

bool actions_commute(const GroupAction& left, const GroupAction& right, std::string* witness)
{
  const auto& g = left.target();
  for (ElementIndex t = 0; t < static_cast<ElementIndex>(left.group().order()); ++t)
    for (ElementIndex k = 0; k < static_cast<ElementIndex>(right.group().order()); ++k)
      for (ArrowIndex x = 0; x < static_cast<ArrowIndex>(g.num_arrows()); ++x)
        if (right.act(k, left.act(t, x)) != left.act(t, right.act(k, x))) {
          if (witness)
            *witness = "(" + left.group().name(t) + ", " + g.arrow_name(x) + ", " +
                       right.group().name(k) + ")";
          return false;
        }
  return true;
}

SpaceAction::SpaceAction(FiniteGroupoid groupoid, std::vector<std::string> points,
                         std::vector<UnitIndex> fibring, Side side, std::vector<PointIndex> table)
  : groupoid_(std::move(groupoid)),
    points_(std::move(points)),
    fibring_(std::move(fibring)),
    side_(side),
    table_(std::move(table))
{
  if (fibring_.size() != points_.size())
    throw PreconditionError("SpaceAction: fibring must have one entry per point");
  if (table_.size() != groupoid_.num_arrows() * points_.size())
    throw PreconditionError("SpaceAction: table must have |arrows| x |points| entries");
  for (auto f : fibring_)
    if (f < 0 || static_cast<std::size_t>(f) >= groupoid_.num_units())
      throw PreconditionError("SpaceAction: fibring value out of range");
  for (auto v : table_)
    if (v != kUndefined && (v < 0 || static_cast<std::size_t>(v) >= points_.size()))
      throw PreconditionError("SpaceAction: result point out of range");
}

SpaceAction SpaceAction::with_fibring(PointIndex u, UnitIndex value) const
{
  SpaceAction copy = *this;
  copy.fibring_[u] = value;
  return copy;
}

SpaceAction SpaceAction::with_entry(ArrowIndex x, PointIndex u, PointIndex value) const
{
  SpaceAction copy = *this;
  copy.table_[static_cast<std::size_t>(x) * points_.size() + static_cast<std::size_t>(u)] = value;
  return copy;
}

ValidationReport check_space_action(const SpaceAction& a)
{
  ValidationReport rep;
  const auto& g = a.groupoid();
  const auto n = static_cast<ArrowIndex>(g.num_arrows());
  const auto m = static_cast<PointIndex>(a.num_points());
  const bool left = a.side() == Side::left;
  for (const char* c : {"definedness", "fibring", "composition", "unit"})
    rep.record(c);

  auto pr = [&](ArrowIndex x, PointIndex u) {
    return "(" + g.arrow_name(x) + ", " + a.point_name(u) + ")";
  };

  for (ArrowIndex x = 0; x < n; ++x)
    for (PointIndex u = 0; u < m; ++u) {
      const PointIndex v = a.act(x, u);
      if (a.admissible(x, u) != (v != kUndefined)) {
        rep.fail("definedness", pr(x, u) + (v == kUndefined ? " undefined although admissible"
                                                            : " defined although not admissible"));
        continue;
      }
      if (v == kUndefined)
        continue;
      const UnitIndex expected = left ? g.rng(x) : g.src(x);
      if (a.fibring(v) != expected)
        rep.fail("fibring", pr(x, u) + " lands in the wrong fibre");
      if (g.is_unit_arrow(x) && v != u)
        rep.fail("unit", "unit arrow moves point " + a.point_name(u));
    }

  for (ArrowIndex x = 0; x < n; ++x)
    for (ArrowIndex y = 0; y < n; ++y) {
      const ArrowIndex xy = g.compose(x, y);
      if (xy == kUndefined)
        continue;
      for (PointIndex u = 0; u < m; ++u) {
        if (left) {
          const PointIndex yu = a.act(y, u);
          if (yu == kUndefined)
            continue;
          const PointIndex lhs = a.act(xy, u);
          const PointIndex rhs = a.act(x, yu);
          if (lhs != rhs)
            rep.fail("composition", "(xy)·u != x·(y·u) at (" + g.arrow_name(x) + ", " +
                                        g.arrow_name(y) + ", " + a.point_name(u) + ")");
        } else {
          const PointIndex ux = a.act(x, u);
          if (ux == kUndefined)
            continue;
          const PointIndex lhs = a.act(xy, u);
          const PointIndex rhs = a.act(y, ux);
          if (lhs != rhs)
            rep.fail("composition", "u·(xy) != (u·x)·y at (" + a.point_name(u) + ", " +
                                        g.arrow_name(x) + ", " + g.arrow_name(y) + ")");
        }
      }
    }
  return rep;
}

bool is_free(const SpaceAction& a)
{
  const auto& g = a.groupoid();
  for (ArrowIndex x = 0; x < static_cast<ArrowIndex>(g.num_arrows()); ++x) {
    if (g.is_unit_arrow(x))
      continue;
    for (PointIndex u = 0; u < static_cast<PointIndex>(a.num_points()); ++u)
      if (a.act(x, u) == u)
        return false;
  }
  return true;
}

SpaceAction group_set_action(const FiniteGroup& group, std::vector<std::string> points,
                             const std::vector<std::vector<int>>& perms, Side side)
{
  const std::size_t m = points.size();
  if (perms.size() != group.order())
    throw PreconditionError("group_set_action: need one permutation per group element");
  std::vector<PointIndex> table;
  for (const auto& p : perms) {
    if (p.size() != m)
      throw PreconditionError("group_set_action: permutation has wrong length");
    for (auto v : p)
      table.push_back(v);
  }
  return {group.groupoid(), std::move(points), std::vector<UnitIndex>(m, 0), side, std::move(table)};
}

SpaceAction translation_action(const FiniteGroup& group, Side side)
{
  const auto n = static_cast<ElementIndex>(group.order());
  std::vector<std::vector<int>> perms(group.order());
  for (ElementIndex t = 0; t < n; ++t)
    for (ElementIndex u = 0; u < n; ++u)
      perms[t].push_back(side == Side::left ? group.mul(t, u) : group.mul(u, t));
  return group_set_action(group, group.groupoid().arrow_names(), perms, side);
}

SpaceAction self_translation_action(const FiniteGroupoid& g, Side side)
{
  const std::size_t n = g.num_arrows();
  std::vector<UnitIndex> fib(n);
  std::vector<PointIndex> table(n * n, kUndefined);
  for (ArrowIndex y = 0; y < static_cast<ArrowIndex>(n); ++y)
    fib[y] = side == Side::left ? g.rng(y) : g.src(y);
  for (ArrowIndex x = 0; x < static_cast<ArrowIndex>(n); ++x)
    for (ArrowIndex y = 0; y < static_cast<ArrowIndex>(n); ++y)
      table[static_cast<std::size_t>(x) * n + static_cast<std::size_t>(y)] =
        side == Side::left ? g.compose(x, y) : g.compose(y, x);
  return {g, g.arrow_names(), std::move(fib), side, std::move(table)};
}

GroupAction unit_groupoid_action(const SpaceAction& group_on_set)
{
  const auto& gg = group_on_set.groupoid();
  if (gg.num_units() != 1)
    throw PreconditionError("unit_groupoid_action: acting groupoid must be a group");
  FiniteGroup group(gg);
  std::vector<ArrowIndex> table;
  for (ElementIndex t = 0; t < static_cast<ElementIndex>(group.order()); ++t)
    for (PointIndex u = 0; u < static_cast<PointIndex>(group_on_set.num_points()); ++u)
      table.push_back(group_on_set.act(t, u));
  return {group, make_unit_groupoid(group_on_set.points()), group_on_set.side(), std::move(table)};
}

} // namespace groupoidal
