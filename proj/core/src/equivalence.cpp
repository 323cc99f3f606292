#include "groupoidal/equivalence.hpp"

namespace groupoidal {

namespace {

std::string tuple(std::initializer_list<std::string> parts)
{
  std::string s = "(";
  bool first = true;
  for (const auto& p : parts) {
    if (!first)
      s += ", ";
    s += p;
    first = false;
  }
  return s + ")";
}

} // namespace

SymmetricGroupoidData symmetric_groupoid_data(const GroupAction& g, const GroupAction& h)
{
  if (g.side() != Side::left || h.side() != Side::right)
    throw PreconditionError("symmetric_groupoid_equivalence: expected a left G-action and a right H-action");
  if (!(g.target() == h.target()))
    throw PreconditionError("symmetric_groupoid_equivalence: actions are on different groupoids");
  if (const auto w = freeness_witness(g); !w.empty())
    throw PreconditionError("symmetric_groupoid_equivalence: G-action is not free, " + w + " is fixed");
  if (const auto w = freeness_witness(h); !w.empty())
    throw PreconditionError("symmetric_groupoid_equivalence: H-action is not free, " + w + " is fixed");
  std::string w;
  if (!actions_commute(g, h, &w))
    throw PreconditionError("symmetric_groupoid_equivalence: actions do not commute at " + w);

  SymmetricGroupoidData d;
  d.g = g;
  d.h = h;
  d.by_h = quotient_groupoid(h);
  d.by_g = quotient_groupoid(g);
  d.p = semidirect_left(quotient_induced_action(g, d.by_h));
  d.q = semidirect_right(quotient_induced_action(h, d.by_g));

  const auto& x = g.target();
  const std::size_t nz = x.num_arrows();
  const auto& P = d.p.groupoid;
  const auto& Q = d.q.groupoid;

  std::vector<UnitIndex> rho(nz), sigma(nz);
  for (ArrowIndex z = 0; z < static_cast<ArrowIndex>(nz); ++z) {
    rho[z] = d.by_h.unit_class[x.rng(z)];
    sigma[z] = d.by_g.unit_class[x.src(z)];
  }

  // (x·H, t)·y = (x·h)(t·y) with s(x)·h = t·r(y)
  std::vector<PointIndex> ltab(P.num_arrows() * nz, kUndefined);
  for (ArrowIndex a = 0; a < static_cast<ArrowIndex>(P.num_arrows()); ++a) {
    const ArrowIndex xr = d.by_h.representative[d.p.arrow_of(a)];
    const ElementIndex t = d.p.element_of(a);
    for (ArrowIndex y = 0; y < static_cast<ArrowIndex>(nz); ++y) {
      if (P.src(a) != rho[y])
        continue;
      const ElementIndex k = unique_translator(h, x.src(xr), g.act_unit(t, x.rng(y)));
      if (k == kUndefined)
        throw ConsistencyError("symmetric_groupoid_equivalence: no translator for the left action");
      ltab[static_cast<std::size_t>(a) * nz + static_cast<std::size_t>(y)] =
        x.compose(h.act(k, xr), g.act(t, y));
    }
  }
  // y·(h, G·x') = (y·h)(t·x') with s(y·h) = t·r(x')
  std::vector<PointIndex> rtab(Q.num_arrows() * nz, kUndefined);
  for (ArrowIndex b = 0; b < static_cast<ArrowIndex>(Q.num_arrows()); ++b) {
    const ArrowIndex xr = d.by_g.representative[d.q.arrow_of(b)];
    const ElementIndex k = d.q.element_of(b);
    for (ArrowIndex y = 0; y < static_cast<ArrowIndex>(nz); ++y) {
      if (Q.rng(b) != sigma[y])
        continue;
      const ArrowIndex yh = h.act(k, y);
      const ElementIndex t = unique_translator(g, x.rng(xr), x.src(yh));
      if (t == kUndefined)
        throw ConsistencyError("symmetric_groupoid_equivalence: no translator for the right action");
      rtab[static_cast<std::size_t>(b) * nz + static_cast<std::size_t>(y)] = x.compose(yh, g.act(t, xr));
    }
  }

  auto& e = d.equivalence;
  e.left = SpaceAction(P, x.arrow_names(), rho, Side::left, std::move(ltab));
  e.right = SpaceAction(Q, x.arrow_names(), sigma, Side::right, std::move(rtab));
  e.left_brackets.assign(nz * nz, kUndefined);
  e.right_brackets.assign(nz * nz, kUndefined);
  for (ArrowIndex z1 = 0; z1 < static_cast<ArrowIndex>(nz); ++z1)
    for (ArrowIndex z2 = 0; z2 < static_cast<ArrowIndex>(nz); ++z2) {
      const std::size_t i = static_cast<std::size_t>(z1) * nz + static_cast<std::size_t>(z2);
      if (sigma[z1] == sigma[z2]) {
        // _L[z1, z2] = (z1 (t·z2⁻¹)·H, t) with s(z1) = t·s(z2)
        const ElementIndex t = unique_translator(g, x.src(z2), x.src(z1));
        if (t == kUndefined)
          throw ConsistencyError("left bracket: no t for " + tuple({x.arrow_name(z1), x.arrow_name(z2)}));
        const ArrowIndex w = x.compose(z1, g.act(t, x.inv(z2)));
        e.left_brackets[i] = d.p.index(d.by_h.arrow_class[w], t);
      }
      if (rho[z1] == rho[z2]) {
        // [z1, z2]_R = (k, G·(z1⁻¹·k) z2) with r(z2) = r(z1)·k
        const ElementIndex k = unique_translator(h, x.rng(z1), x.rng(z2));
        if (k == kUndefined)
          throw ConsistencyError("right bracket: no h for " + tuple({x.arrow_name(z1), x.arrow_name(z2)}));
        const ArrowIndex w = x.compose(h.act(k, x.inv(z1)), z2);
        e.right_brackets[i] = d.q.index(d.by_g.arrow_class[w], k);
      }
    }
  return d;
}

GroupoidEquivalence symmetric_groupoid_equivalence(const FiniteGroupoid& x, const GroupAction& g,
                                                   const GroupAction& h)
{
  if (!(g.target() == x))
    throw PreconditionError("symmetric_groupoid_equivalence: G does not act on the given groupoid");
  return symmetric_groupoid_data(g, h).equivalence;
}

GroupoidEquivalence one_sided_groupoid_equivalence(const FiniteGroupoid& x, const GroupAction& g)
{
  return symmetric_groupoid_equivalence(x, g, trivial_action(trivial_group(), x, Side::right));
}

ArrowIndex left_bracket(const GroupoidEquivalence& e, PointIndex z1, PointIndex z2)
{
  if (e.sigma(z1) != e.sigma(z2))
    throw PreconditionError("left_bracket: σ(" + e.left.point_name(z1) + ") != σ(" + e.left.point_name(z2) + ")");
  return e.left_brackets[static_cast<std::size_t>(z1) * e.num_points() + static_cast<std::size_t>(z2)];
}

ArrowIndex right_bracket(const GroupoidEquivalence& e, PointIndex z1, PointIndex z2)
{
  if (e.rho(z1) != e.rho(z2))
    throw PreconditionError("right_bracket: ρ(" + e.left.point_name(z1) + ") != ρ(" + e.left.point_name(z2) + ")");
  return e.right_brackets[static_cast<std::size_t>(z1) * e.num_points() + static_cast<std::size_t>(z2)];
}

void fill_brackets_by_search(GroupoidEquivalence& e)
{
  const std::size_t nz = e.num_points();
  e.left_brackets.assign(nz * nz, kUndefined);
  e.right_brackets.assign(nz * nz, kUndefined);
  for (PointIndex z1 = 0; z1 < static_cast<PointIndex>(nz); ++z1)
    for (PointIndex z2 = 0; z2 < static_cast<PointIndex>(nz); ++z2) {
      const std::size_t i = static_cast<std::size_t>(z1) * nz + static_cast<std::size_t>(z2);
      if (e.sigma(z1) == e.sigma(z2))
        for (ArrowIndex p = 0; p < static_cast<ArrowIndex>(e.p().num_arrows()); ++p)
          if (e.left.act(p, z2) == z1) {
            if (e.left_brackets[i] != kUndefined)
              throw ConsistencyError("fill_brackets_by_search: two left brackets");
            e.left_brackets[i] = p;
          }
      if (e.rho(z1) == e.rho(z2))
        for (ArrowIndex q = 0; q < static_cast<ArrowIndex>(e.q().num_arrows()); ++q)
          if (e.right.act(q, z1) == z2) {
            if (e.right_brackets[i] != kUndefined)
              throw ConsistencyError("fill_brackets_by_search: two right brackets");
            e.right_brackets[i] = q;
          }
    }
}

std::string space_freeness_witness(const SpaceAction& a)
{
  const auto& g = a.groupoid();
  for (ArrowIndex x = 0; x < static_cast<ArrowIndex>(g.num_arrows()); ++x) {
    if (g.is_unit_arrow(x))
      continue;
    for (PointIndex u = 0; u < static_cast<PointIndex>(a.num_points()); ++u)
      if (a.act(x, u) == u)
        return tuple({g.arrow_name(x), a.point_name(u)});
  }
  return {};
}

namespace {

/// Items (iv) and (v): the fibring of `fibred` is invariant under `other`,
/// onto the units, and separates the orbits of `other`.
void check_factorization(ValidationReport& rep, const char* check, const SpaceAction& fibred,
                         const SpaceAction& other)
{
  rep.record(check);
  const auto& gf = fibred.groupoid();
  const auto& go = other.groupoid();
  const std::size_t nz = fibred.num_points();
  std::vector<bool> hit(gf.num_units(), false);
  for (PointIndex z = 0; z < static_cast<PointIndex>(nz); ++z) {
    const UnitIndex u = fibred.fibring(z);
    if (u < 0 || u >= static_cast<UnitIndex>(gf.num_units())) {
      rep.fail(check, "fibring of " + fibred.point_name(z) + " is not a unit");
      continue;
    }
    hit[u] = true;
    for (ArrowIndex y = 0; y < static_cast<ArrowIndex>(go.num_arrows()); ++y) {
      const PointIndex w = other.act(y, z);
      if (w != kUndefined && fibred.fibring(w) != u)
        rep.fail(check, "fibring not invariant at " + tuple({fibred.point_name(z), go.arrow_name(y)}) +
                          ": " + gf.unit_name(u) + " vs " +
                          (fibred.fibring(w) >= 0 && fibred.fibring(w) < static_cast<UnitIndex>(gf.num_units())
                             ? gf.unit_name(fibred.fibring(w))
                             : std::string("?")));
    }
  }
  for (UnitIndex u = 0; u < static_cast<UnitIndex>(gf.num_units()); ++u)
    if (!hit[u])
      rep.fail(check, "fibring misses unit " + gf.unit_name(u));
  // injectivity on orbits of `other`
  for (PointIndex z1 = 0; z1 < static_cast<PointIndex>(nz); ++z1)
    for (PointIndex z2 = 0; z2 < static_cast<PointIndex>(nz); ++z2) {
      if (fibred.fibring(z1) != fibred.fibring(z2))
        continue;
      bool same_orbit = false;
      for (ArrowIndex y = 0; y < static_cast<ArrowIndex>(go.num_arrows()) && !same_orbit; ++y)
        same_orbit = other.act(y, z1) == z2;
      if (!same_orbit)
        rep.fail(check, "same fibre but different orbits: " + tuple({fibred.point_name(z1), fibred.point_name(z2)}));
    }
}

void check_brackets(ValidationReport& rep, const char* check, const SpaceAction& a,
                    const SpaceAction& other_side, const std::vector<ArrowIndex>& table, bool left)
{
  rep.record(check);
  const std::size_t nz = a.num_points();
  const auto& g = a.groupoid();
  if (table.size() != nz * nz) {
    rep.fail(check, "bracket table has the wrong size");
    return;
  }
  std::vector<bool> hit(g.num_arrows(), false);
  for (PointIndex z1 = 0; z1 < static_cast<PointIndex>(nz); ++z1)
    for (PointIndex z2 = 0; z2 < static_cast<PointIndex>(nz); ++z2) {
      const ArrowIndex b = table[static_cast<std::size_t>(z1) * nz + static_cast<std::size_t>(z2)];
      const bool in_fibre = other_side.fibring(z1) == other_side.fibring(z2);
      const std::string at = tuple({a.point_name(z1), a.point_name(z2)});
      if (!in_fibre) {
        if (b != kUndefined)
          rep.fail(check, "bracket defined off the fibre at " + at);
        continue;
      }
      if (b < 0 || b >= static_cast<ArrowIndex>(g.num_arrows())) {
        rep.fail(check, "bracket undefined at " + at);
        continue;
      }
      hit[b] = true;
      // left: b·z2 = z1, right: z1·b = z2
      const PointIndex got = left ? a.act(b, z2) : a.act(b, z1);
      const PointIndex want = left ? z1 : z2;
      if (got != want)
        rep.fail(check, "characterizing identity fails at " + at + " with " + g.arrow_name(b));
      std::size_t count = 0;
      for (ArrowIndex y = 0; y < static_cast<ArrowIndex>(g.num_arrows()); ++y)
        if ((left ? a.act(y, z2) : a.act(y, z1)) == want)
          ++count;
      if (count != 1)
        rep.fail(check, std::to_string(count) + " arrows satisfy the identity at " + at);
    }
  rep.record("bracket-surjective");
  for (ArrowIndex y = 0; y < static_cast<ArrowIndex>(g.num_arrows()); ++y)
    if (!hit[y])
      rep.fail("bracket-surjective", std::string(left ? "left" : "right") + " bracket misses " + g.arrow_name(y));
}

} // namespace

ValidationReport verify_groupoid_equivalence(const GroupoidEquivalence& e)
{
  ValidationReport rep;
  const std::size_t nz = e.num_points();
  if (e.right.num_points() != nz || e.left.side() != Side::left || e.right.side() != Side::right) {
    rep.fail("shape", "actions are not a left and a right action on the same set");
    return rep;
  }
  rep.merge(check_space_action(e.left), "left-action/");
  rep.merge(check_space_action(e.right), "right-action/");

  rep.record("item-i-free-left");
  if (const auto w = space_freeness_witness(e.left); !w.empty())
    rep.fail("item-i-free-left", "non-unit arrow fixes a point: " + w);
  rep.record("item-ii-free-right");
  if (const auto w = space_freeness_witness(e.right); !w.empty())
    rep.fail("item-ii-free-right", "non-unit arrow fixes a point: " + w);

  rep.record("item-iii-commute");
  const auto& P = e.p();
  const auto& Q = e.q();
  for (PointIndex z = 0; z < static_cast<PointIndex>(nz); ++z)
    for (ArrowIndex p = 0; p < static_cast<ArrowIndex>(P.num_arrows()); ++p)
      for (ArrowIndex q = 0; q < static_cast<ArrowIndex>(Q.num_arrows()); ++q) {
        const PointIndex pz = e.left.act(p, z);
        const PointIndex zq = e.right.act(q, z);
        const PointIndex lhs = pz == kUndefined ? kUndefined : e.right.act(q, pz);
        const PointIndex rhs = zq == kUndefined ? kUndefined : e.left.act(p, zq);
        if (lhs != rhs)
          rep.fail("item-iii-commute", "(p·z)·q != p·(z·q) at " +
                                         tuple({P.arrow_name(p), e.left.point_name(z), Q.arrow_name(q)}));
      }

  check_factorization(rep, "item-iv-rho", e.left, e.right);
  check_factorization(rep, "item-v-sigma", e.right, e.left);
  check_brackets(rep, "left-bracket", e.left, e.right, e.left_brackets, true);
  check_brackets(rep, "right-bracket", e.right, e.left, e.right_brackets, false);
  rep.note("properness holds trivially for finite sets; openness reduces to the factorization bijections");
  return rep;
}

} // namespace groupoidal
