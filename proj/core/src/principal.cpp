#include "groupoidal/principal.hpp"

namespace groupoidal {

PrincipalDecomposition principal_decomposition(const GroupAction& h)
{
  if (h.side() != Side::right)
    throw PreconditionError("principal_decomposition: expected a right action");
  PrincipalDecomposition d;
  d.quotient = quotient_groupoid(h);
  const auto& x = h.target();
  const auto& q = d.quotient;
  const auto& y = q.groupoid;
  const std::size_t nu = x.num_units();

  std::vector<UnitIndex> fib(nu);
  for (UnitIndex u = 0; u < static_cast<UnitIndex>(nu); ++u)
    fib[u] = q.unit_class[u];
  std::vector<PointIndex> table(y.num_arrows() * nu, kUndefined);
  for (ArrowIndex a = 0; a < static_cast<ArrowIndex>(x.num_arrows()); ++a) {
    const auto i = static_cast<std::size_t>(q.arrow_class[a]) * nu + static_cast<std::size_t>(x.src(a));
    if (table[i] != kUndefined)
      throw ConsistencyError("principal_decomposition: two arrows of " + y.arrow_name(q.arrow_class[a]) +
                             " share the source " + x.unit_name(x.src(a)));
    table[i] = x.rng(a);
  }
  d.unit_action = SpaceAction(y, x.unit_names(), std::move(fib), Side::left, std::move(table));
  d.transformation = transformation_groupoid(y, d.unit_action);

  d.theta.resize(x.num_arrows());
  for (ArrowIndex a = 0; a < static_cast<ArrowIndex>(x.num_arrows()); ++a)
    d.theta[a] = d.transformation.index(q.arrow_class[a], x.src(a));

  const auto& T = d.transformation;
  std::vector<ArrowIndex> htab;
  htab.reserve(h.group().order() * T.pairs.size());
  for (ElementIndex k = 0; k < static_cast<ElementIndex>(h.group().order()); ++k)
    for (const auto& [o, u] : T.pairs)
      htab.push_back(T.index(o, h.act_unit(k, u)));
  d.transformation_action = GroupAction(h.group(), T.groupoid, Side::right, std::move(htab));
  return d;
}

ValidationReport verify_principal_decomposition(const GroupAction& h, const PrincipalDecomposition& d)
{
  ValidationReport rep;
  const auto& x = h.target();
  const auto& T = d.transformation.groupoid;
  rep.merge(check_space_action(d.unit_action), "unit-action/");
  rep.merge(validate_groupoid(T), "transformation/");
  rep.merge(check_homomorphism(x, T, d.theta, true), "theta/");
  rep.merge(check_action(d.transformation_action), "h-action/");
  rep.record("equivariance");
  rep.record("range");
  for (ArrowIndex a = 0; a < static_cast<ArrowIndex>(x.num_arrows()); ++a) {
    if (T.rng(d.theta[a]) != x.rng(a))
      rep.fail("range", "r(θ_s(x)) != r(x) at " + x.arrow_name(a));
    for (ElementIndex k = 0; k < static_cast<ElementIndex>(h.group().order()); ++k)
      if (d.theta[h.act(k, a)] != d.transformation_action.act(k, d.theta[a]))
        rep.fail("equivariance", "θ_s(x·h) != θ_s(x)·h at (" + x.arrow_name(a) + ", " + h.group().name(k) + ")");
  }
  return rep;
}

} // namespace groupoidal
