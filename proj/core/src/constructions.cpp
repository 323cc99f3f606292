#include "groupoidal/constructions.hpp"

#include <algorithm>
#include <map>

namespace groupoidal {

namespace {

std::string pair_name(const std::string& a, const std::string& b) { return "(" + a + "," + b + ")"; }

void require_side(const GroupAction& a, Side side, const char* where)
{
  if (a.side() != side)
    throw PreconditionError(std::string(where) + ": expected a " + to_string(side) + " action");
}

} // namespace

TransformationGroupoid transformation_groupoid(const FiniteGroupoid& x, const SpaceAction& a)
{
  if (a.side() != Side::left)
    throw PreconditionError("transformation_groupoid: expected a left action");
  if (!(a.groupoid() == x))
    throw PreconditionError("transformation_groupoid: action is not by the given groupoid");
  require_valid(check_space_action(a), "transformation_groupoid: invalid action");

  TransformationGroupoid t;
  const std::size_t m = a.num_points();
  t.num_points = m;
  t.lookup.assign(x.num_arrows() * m, kUndefined);
  std::vector<std::string> names;
  for (ArrowIndex g = 0; g < static_cast<ArrowIndex>(x.num_arrows()); ++g)
    for (PointIndex u = 0; u < static_cast<PointIndex>(m); ++u)
      if (a.admissible(g, u)) {
        t.lookup[static_cast<std::size_t>(g) * m + static_cast<std::size_t>(u)] =
          static_cast<ArrowIndex>(t.pairs.size());
        t.pairs.emplace_back(g, u);
        names.push_back(pair_name(x.arrow_name(g), a.point_name(u)));
      }
  const std::size_t n = t.pairs.size();
  std::vector<UnitIndex> src(n), rng(n);
  std::vector<ArrowIndex> inv(n), comp(n * n, kUndefined), unit_arrow(m);
  for (std::size_t i = 0; i < n; ++i) {
    const auto [g, u] = t.pairs[i];
    src[i] = u;
    rng[i] = a.act(g, u);
    inv[i] = t.index(x.inv(g), a.act(g, u));
  }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      const auto [g, v] = t.pairs[i];
      const auto [h, u] = t.pairs[j];
      if (v == a.act(h, u))
        comp[i * n + j] = t.index(x.compose(g, h), u);
    }
  for (PointIndex u = 0; u < static_cast<PointIndex>(m); ++u)
    unit_arrow[u] = t.index(x.unit_arrow(a.fibring(u)), u);
  t.groupoid = FiniteGroupoid(a.points(), std::move(names), std::move(src), std::move(rng),
                              std::move(comp), std::move(inv), std::move(unit_arrow));
  return t;
}

ArrowIndex SemidirectGroupoid::index(ArrowIndex x, ElementIndex t) const
{
  const auto n = static_cast<ArrowIndex>(action.target().num_arrows());
  const auto g = static_cast<ArrowIndex>(action.group().order());
  return action.side() == Side::left ? x * g + t : t * n + x;
}

ArrowIndex SemidirectGroupoid::arrow_of(ArrowIndex a) const
{
  const auto n = static_cast<ArrowIndex>(action.target().num_arrows());
  const auto g = static_cast<ArrowIndex>(action.group().order());
  return action.side() == Side::left ? a / g : a % n;
}

ElementIndex SemidirectGroupoid::element_of(ArrowIndex a) const
{
  const auto n = static_cast<ArrowIndex>(action.target().num_arrows());
  const auto g = static_cast<ArrowIndex>(action.group().order());
  return action.side() == Side::left ? a % g : a / n;
}

namespace {

SemidirectGroupoid semidirect(const GroupAction& a, Side side, const char* where)
{
  require_side(a, side, where);
  require_valid(check_action(a), std::string(where) + ": invalid action");
  SemidirectGroupoid sd{{}, a};
  const auto& x = a.target();
  const auto& G = a.group();
  const auto nx = static_cast<ArrowIndex>(x.num_arrows());
  const auto ng = static_cast<ElementIndex>(G.order());
  const std::size_t n = x.num_arrows() * G.order();
  const ElementIndex e = G.identity();

  std::vector<std::string> names(n);
  std::vector<UnitIndex> src(n), rng(n);
  std::vector<ArrowIndex> inv(n), comp(n * n, kUndefined), unit_arrow(x.num_units());
  for (ArrowIndex g = 0; g < nx; ++g)
    for (ElementIndex t = 0; t < ng; ++t) {
      const auto i = sd.index(g, t);
      const ElementIndex ti = G.inv(t);
      if (side == Side::left) {
        names[i] = pair_name(x.arrow_name(g), G.name(t));
        rng[i] = x.rng(g);
        src[i] = a.act_unit(ti, x.src(g));
        inv[i] = sd.index(a.act(ti, x.inv(g)), ti);
      } else {
        names[i] = pair_name(G.name(t), x.arrow_name(g));
        rng[i] = a.act_unit(ti, x.rng(g));
        src[i] = x.src(g);
        inv[i] = sd.index(a.act(ti, x.inv(g)), ti);
      }
    }
  for (ArrowIndex g1 = 0; g1 < nx; ++g1)
    for (ElementIndex s = 0; s < ng; ++s)
      for (ArrowIndex g2 = 0; g2 < nx; ++g2)
        for (ElementIndex t = 0; t < ng; ++t) {
          const auto i = static_cast<std::size_t>(sd.index(g1, s));
          const auto j = static_cast<std::size_t>(sd.index(g2, t));
          if (side == Side::left) {
            // (x,s)(y,t) = (x(s·y), st)
            const ArrowIndex sy = a.act(s, g2);
            if (x.composable(g1, sy))
              comp[i * n + j] = sd.index(x.compose(g1, sy), G.mul(s, t));
          } else {
            // (s,x)(t,y) = (st, (x·t)y)
            const ArrowIndex xt = a.act(t, g1);
            if (x.composable(xt, g2))
              comp[i * n + j] = sd.index(x.compose(xt, g2), G.mul(s, t));
          }
        }
  for (UnitIndex u = 0; u < static_cast<UnitIndex>(x.num_units()); ++u)
    unit_arrow[u] = sd.index(x.unit_arrow(u), e);
  sd.groupoid = FiniteGroupoid(x.unit_names(), std::move(names), std::move(src), std::move(rng),
                               std::move(comp), std::move(inv), std::move(unit_arrow));
  return sd;
}

} // namespace

SemidirectGroupoid semidirect_left(const GroupAction& a) { return semidirect(a, Side::left, "semidirect_left"); }

SemidirectGroupoid semidirect_right(const GroupAction& a)
{
  return semidirect(a, Side::right, "semidirect_right");
}

ElementIndex unique_translator(const GroupAction& a, UnitIndex u, UnitIndex v)
{
  ElementIndex found = kUndefined;
  for (ElementIndex k = 0; k < static_cast<ElementIndex>(a.group().order()); ++k)
    if (a.act_unit(k, u) == v) {
      if (found != kUndefined)
        throw ConsistencyError("unique_translator: two elements move " + a.target().unit_name(u) +
                               " to " + a.target().unit_name(v));
      found = k;
    }
  return found;
}

std::size_t count_translators(const GroupAction& a, UnitIndex u, UnitIndex v)
{
  std::size_t n = 0;
  for (ElementIndex k = 0; k < static_cast<ElementIndex>(a.group().order()); ++k)
    if (a.act_unit(k, u) == v)
      ++n;
  return n;
}

Quotient quotient_groupoid(const GroupAction& a)
{
  if (const auto w = freeness_witness(a); !w.empty())
    throw PreconditionError("quotient_groupoid: action is not free, " + w + " is fixed");
  require_valid(check_action(a), "quotient_groupoid: invalid action");
  const auto& x = a.target();
  const auto& G = a.group();
  const auto nx = static_cast<ArrowIndex>(x.num_arrows());
  const auto nu = static_cast<UnitIndex>(x.num_units());
  const auto ng = static_cast<ElementIndex>(G.order());

  Quotient q;
  q.action = a;
  q.arrow_class.assign(x.num_arrows(), kUndefined);
  q.to_rep.assign(x.num_arrows(), kUndefined);
  for (ArrowIndex g = 0; g < nx; ++g) {
    if (q.arrow_class[g] != kUndefined)
      continue;
    // g is the smallest index in its orbit since lower ones are classified
    const auto cls = static_cast<ArrowIndex>(q.representative.size());
    q.representative.push_back(g);
    for (ElementIndex t = 0; t < ng; ++t) {
      const ArrowIndex y = a.act(t, g);
      q.arrow_class[y] = cls;
      q.to_rep[y] = G.inv(t);
    }
  }
  q.unit_class.assign(x.num_units(), kUndefined);
  for (UnitIndex u = 0; u < nu; ++u) {
    if (q.unit_class[u] != kUndefined)
      continue;
    const auto cls = static_cast<UnitIndex>(q.unit_representative.size());
    q.unit_representative.push_back(u);
    for (ElementIndex t = 0; t < ng; ++t)
      q.unit_class[a.act_unit(t, u)] = cls;
  }

  const std::size_t n = q.representative.size();
  const std::size_t m = q.unit_representative.size();
  std::vector<std::string> names(n), unit_names(m);
  std::vector<UnitIndex> src(n), rng(n);
  std::vector<ArrowIndex> inv(n), comp(n * n, kUndefined), unit_arrow(m);
  for (std::size_t i = 0; i < n; ++i) {
    const ArrowIndex r = q.representative[i];
    names[i] = "[" + x.arrow_name(r) + "]";
    src[i] = q.unit_class[x.src(r)];
    rng[i] = q.unit_class[x.rng(r)];
    inv[i] = q.arrow_class[x.inv(r)];
  }
  for (std::size_t j = 0; j < m; ++j) {
    unit_names[j] = "[" + x.unit_name(q.unit_representative[j]) + "]";
    unit_arrow[j] = q.arrow_class[x.unit_arrow(q.unit_representative[j])];
  }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      if (src[i] != rng[j])
        continue;
      const ArrowIndex xr = q.representative[i];
      const ArrowIndex yr = q.representative[j];
      const ElementIndex h = unique_translator(a, x.src(xr), x.rng(yr));
      if (h == kUndefined)
        throw ConsistencyError("quotient_groupoid: no translator for (" + names[i] + ", " + names[j] + ")");
      comp[i * n + j] = q.arrow_class[x.compose(a.act(h, xr), yr)];
    }
  q.groupoid = FiniteGroupoid(std::move(unit_names), std::move(names), std::move(src), std::move(rng),
                              std::move(comp), std::move(inv), std::move(unit_arrow));
  return q;
}

SpaceAction orbit_space_action(const Quotient& q)
{
  const auto& a = q.action;
  if (a.side() != Side::right)
    throw PreconditionError("orbit_space_action: expected the quotient by a right action");
  const auto& x = a.target();
  const std::size_t nx = x.num_arrows();
  const std::size_t n = q.representative.size();
  std::vector<UnitIndex> fib(nx);
  std::vector<PointIndex> table(n * nx, kUndefined);
  for (ArrowIndex y = 0; y < static_cast<ArrowIndex>(nx); ++y)
    fib[y] = q.unit_class[x.rng(y)];
  for (std::size_t o = 0; o < n; ++o) {
    const ArrowIndex xr = q.representative[o];
    for (ArrowIndex y = 0; y < static_cast<ArrowIndex>(nx); ++y) {
      if (q.unit_class[x.src(xr)] != fib[y])
        continue;
      const ElementIndex h = unique_translator(a, x.src(xr), x.rng(y));
      if (h == kUndefined)
        throw ConsistencyError("orbit_space_action: no translator");
      table[o * nx + static_cast<std::size_t>(y)] = x.compose(a.act(h, xr), y);
    }
  }
  return {q.groupoid, x.arrow_names(), std::move(fib), Side::left, std::move(table)};
}

GroupAction quotient_induced_action(const GroupAction& g, const Quotient& q)
{
  if (!(g.target() == q.action.target()))
    throw PreconditionError("quotient_induced_action: actions are on different groupoids");
  std::string w;
  const bool commute = g.side() == Side::left ? actions_commute(g, q.action, &w)
                                              : actions_commute(q.action, g, &w);
  if (!commute)
    throw PreconditionError("quotient_induced_action: actions do not commute at " + w);
  const std::size_t n = q.representative.size();
  std::vector<ArrowIndex> table;
  table.reserve(g.group().order() * n);
  for (ElementIndex t = 0; t < static_cast<ElementIndex>(g.group().order()); ++t)
    for (std::size_t o = 0; o < n; ++o)
      table.push_back(q.arrow_class[g.act(t, q.representative[o])]);
  return {g.group(), q.groupoid, g.side(), std::move(table)};
}

ValidationReport check_covariant(const GroupAction& g, const SpaceAction& on_set, const SpaceAction& on_space)
{
  ValidationReport rep;
  rep.record("covariance");
  if (g.side() != on_set.side() || g.side() != on_space.side()) {
    rep.fail("covariance", "actions are not all on the same side");
    return rep;
  }
  if (on_set.groupoid().num_units() != 1 || on_set.groupoid().num_arrows() != g.group().order() ||
      on_set.num_points() != on_space.num_points() || !(on_space.groupoid() == g.target())) {
    rep.fail("covariance", "actions do not share the group, groupoid and space");
    return rep;
  }
  const auto& x = g.target();
  const bool left = g.side() == Side::left;
  for (ElementIndex t = 0; t < static_cast<ElementIndex>(g.group().order()); ++t)
    for (ArrowIndex y = 0; y < static_cast<ArrowIndex>(x.num_arrows()); ++y)
      for (PointIndex u = 0; u < static_cast<PointIndex>(on_space.num_points()); ++u) {
        const PointIndex yu = on_space.act(y, u);
        if (yu == kUndefined)
          continue;
        const PointIndex lhs = on_set.act(t, yu);
        const PointIndex rhs = on_space.act(g.act(t, y), on_set.act(t, u));
        if (lhs != rhs)
          rep.fail("covariance", std::string(left ? "s·(x·u) != (s·x)·(s·u)" : "(u·x)·h != (u·h)·(x·h)") +
                                     " at (" + x.arrow_name(y) + ", " + g.group().name(t) + ", " +
                                     on_space.point_name(u) + ")");
      }
  return rep;
}

namespace {

void check_semidirect_inputs(const SemidirectGroupoid& sd, const SpaceAction& on_set,
                             const SpaceAction& on_space, const char* where)
{
  require_valid(check_space_action(on_set), std::string(where) + ": invalid group action on the set");
  require_valid(check_space_action(on_space), std::string(where) + ": invalid groupoid action on the set");
  require_valid(check_covariant(sd.action, on_set, on_space), where);
}

} // namespace

SpaceAction semidirect_space_action(const SemidirectGroupoid& sd, const SpaceAction& on_set,
                                    const SpaceAction& on_space)
{
  require_side(sd.action, Side::left, "semidirect_space_action");
  check_semidirect_inputs(sd, on_set, on_space, "semidirect_space_action");
  const auto& x = sd.action.target();
  const std::size_t n = sd.groupoid.num_arrows();
  const std::size_t m = on_space.num_points();
  std::vector<PointIndex> table(n * m, kUndefined);
  for (ArrowIndex a = 0; a < static_cast<ArrowIndex>(n); ++a) {
    const ArrowIndex g = sd.arrow_of(a);
    const ElementIndex t = sd.element_of(a);
    for (PointIndex u = 0; u < static_cast<PointIndex>(m); ++u) {
      const PointIndex tu = on_set.act(t, u);
      if (x.src(g) == on_space.fibring(tu))
        table[static_cast<std::size_t>(a) * m + static_cast<std::size_t>(u)] = on_space.act(g, tu);
    }
  }
  return {sd.groupoid, on_space.points(), on_space.fibring_map(), Side::left, std::move(table)};
}

SpaceAction semidirect_right_space_action(const SemidirectGroupoid& sd, const SpaceAction& on_set,
                                          const SpaceAction& on_space)
{
  require_side(sd.action, Side::right, "semidirect_right_space_action");
  check_semidirect_inputs(sd, on_set, on_space, "semidirect_right_space_action");
  const auto& x = sd.action.target();
  const auto& G = sd.action.group();
  const std::size_t n = sd.groupoid.num_arrows();
  const std::size_t m = on_space.num_points();
  std::vector<PointIndex> table(n * m, kUndefined);
  for (ArrowIndex a = 0; a < static_cast<ArrowIndex>(n); ++a) {
    const ArrowIndex g = sd.arrow_of(a);
    const ElementIndex h = sd.element_of(a);
    for (PointIndex u = 0; u < static_cast<PointIndex>(m); ++u) {
      if (on_space.fibring(u) != x.rng(sd.action.act(G.inv(h), g)))
        continue;
      table[static_cast<std::size_t>(a) * m + static_cast<std::size_t>(u)] =
        on_space.act(g, on_set.act(h, u));
    }
  }
  return {sd.groupoid, on_space.points(), on_space.fibring_map(), Side::right, std::move(table)};
}

} // namespace groupoidal
