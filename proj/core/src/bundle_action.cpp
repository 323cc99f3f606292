#include "groupoidal/bundle_action.hpp"

#include <cmath>
#include <map>

namespace groupoidal {

BundleAction::BundleAction(FellBundle bundle, GroupAction base_action, std::vector<Matrix> maps)
  : bundle_(std::move(bundle)), base_(std::move(base_action)), maps_(std::move(maps))
{
  if (!(base_.target() == bundle_.base()))
    throw PreconditionError("BundleAction: base action is not on the bundle's groupoid");
  if (maps_.size() != base_.group().order() * bundle_.base().num_arrows())
    throw PreconditionError("BundleAction: one fiber map per (element, arrow) expected");
}

BundleAction BundleAction::with_map(ElementIndex t, ArrowIndex x, Matrix m) const
{
  auto copy = *this;
  copy.maps_[index(t, x)] = std::move(m);
  return copy;
}

namespace {

std::string at(const FiniteGroup& g, const FiniteGroupoid& x, ElementIndex t, ArrowIndex a)
{
  return "(" + g.name(t) + ", " + x.arrow_name(a) + ")";
}

} // namespace

ValidationReport check_bundle_action(const BundleAction& a, double tol, std::uint64_t seed)
{
  ValidationReport rep;
  rep.merge(check_action(a.base_action()), "base/");
  if (!rep.ok())
    return rep;
  const auto& b = a.bundle();
  const auto& x = b.base();
  const auto& g = a.group();
  const auto& act = a.base_action();
  const auto n = static_cast<ArrowIndex>(x.num_arrows());
  const auto order = static_cast<ElementIndex>(g.order());
  for (const char* c : {"p-equivariance", "multiplicative", "star", "group-law", "identity", "isometric"})
    rep.record(c);

  for (ElementIndex t = 0; t < order; ++t)
    for (ArrowIndex y = 0; y < n; ++y) {
      const Matrix& m = a.map(t, y);
      if (m.rows() != b.dim(act.act(t, y)) || m.cols() != b.dim(y))
        rep.fail("p-equivariance", "fiber map does not go A(x) → A(t·x) at " + at(g, x, t, y));
    }
  if (!rep.ok())
    return rep;

  for (ElementIndex t = 0; t < order; ++t) {
    for (ArrowIndex y = 0; y < n; ++y) {
      const ArrowIndex ty = act.act(t, y);
      const double rs = max_abs_diff(a.map(t, x.inv(y)) * b.star(y), b.star(ty) * a.map(t, y).conjugate());
      if (rs > tol)
        rep.fail("star", "t·(a*) != (t·a)* at " + at(g, x, t, y), rs);
      else
        rep.record("star", rs);
      for (ArrowIndex z = 0; z < n; ++z) {
        if (!x.composable(y, z))
          continue;
        const Matrix lhs = a.map(t, x.compose(y, z)) * b.mult(y, z);
        const Matrix rhs = b.mult(ty, act.act(t, z)) * kron(a.map(t, y), a.map(t, z));
        const double r = max_abs_diff(lhs, rhs);
        if (r > tol)
          rep.fail("multiplicative", "t·(ab) != (t·a)(t·b) at " + at(g, x, t, y) + " with " + x.arrow_name(z), r);
        else
          rep.record("multiplicative", r);
      }
    }
    for (ElementIndex s = 0; s < order; ++s)
      for (ArrowIndex y = 0; y < n; ++y) {
        // left: s·(t·a) = (st)·a; right: (a·t)·s = a·(ts)
        const Matrix lhs = a.map(s, act.act(t, y)) * a.map(t, y);
        const ElementIndex prod = a.side() == Side::left ? g.mul(s, t) : g.mul(t, s);
        const double r = max_abs_diff(lhs, a.map(prod, y));
        if (r > tol)
          rep.fail("group-law", "at (" + g.name(s) + ", " + g.name(t) + ", " + x.arrow_name(y) + ")", r);
        else
          rep.record("group-law", r);
      }
  }
  for (ArrowIndex y = 0; y < n; ++y) {
    const double r = max_abs_diff(a.map(g.identity(), y), Matrix::Identity(b.dim(y), b.dim(y)));
    if (r > tol)
      rep.fail("identity", "e does not act trivially on A(" + x.arrow_name(y) + ")", r);
  }

  // isometry through ‖a‖² = ‖a*a‖ in the unit fiber at s(x)
  std::map<UnitIndex, Representation> reps;
  auto rep_at = [&](UnitIndex u) -> const Representation& {
    auto it = reps.find(u);
    if (it == reps.end())
      it = reps.emplace(u, regular_representation(fiber_algebra(b, u), tol, seed)).first;
    return it->second;
  };
  auto norm = [&](ArrowIndex y, const Vector& v) {
    const Vector vv = b.multiply(x.inv(y), b.adjoint(y, v), y, v);
    return std::sqrt(rep_at(x.src(y)).norm(vv));
  };
  Rng rng(seed);
  for (ElementIndex t = 0; t < order; ++t)
    for (ArrowIndex y = 0; y < n; ++y) {
      const int d = b.dim(y);
      if (d == 0)
        continue;
      if (!rep_at(x.src(y)).faithful() || !rep_at(x.src(act.act(t, y))).faithful()) {
        rep.fail("isometric", "unit fiber algebra is not C* near " + at(g, x, t, y));
        continue;
      }
      std::vector<Vector> probes;
      for (int i = 0; i < d; ++i)
        probes.push_back(Vector::Unit(d, i));
      probes.push_back(random_vector(rng, d));
      for (const auto& v : probes) {
        const double n0 = norm(y, v);
        const double n1 = norm(act.act(t, y), a.act(t, y, v));
        const double r = std::abs(n1 - n0) / std::max(1.0, n0);
        if (r > std::sqrt(tol))
          rep.fail("isometric", "‖t·a‖ != ‖a‖ at " + at(g, x, t, y), r);
        else
          rep.record("isometric", r);
      }
    }
  rep.note("freeness and properness are those of the base action");
  return rep;
}

bool is_free_bundle_action(const BundleAction& a) { return is_free(a.base_action()); }

BundleAction lift_action(const FellBundle& b, const GroupAction& base_action)
{
  const auto& x = b.base();
  std::vector<Matrix> maps;
  maps.reserve(base_action.group().order() * x.num_arrows());
  for (ElementIndex t = 0; t < static_cast<ElementIndex>(base_action.group().order()); ++t)
    for (ArrowIndex y = 0; y < static_cast<ArrowIndex>(x.num_arrows()); ++y) {
      if (b.dim(base_action.act(t, y)) != b.dim(y))
        throw PreconditionError("lift_action: fiber dimensions differ along an orbit at " + x.arrow_name(y));
      maps.push_back(Matrix::Identity(b.dim(y), b.dim(y)));
    }
  return {b, base_action, std::move(maps)};
}

BundleAction uniform_action(const FellBundle& b, const GroupAction& base_action, const std::vector<Matrix>& per_element)
{
  if (per_element.size() != base_action.group().order())
    throw PreconditionError("uniform_action: one map per group element expected");
  std::vector<Matrix> maps;
  for (ElementIndex t = 0; t < static_cast<ElementIndex>(base_action.group().order()); ++t)
    for (ArrowIndex y = 0; y < static_cast<ArrowIndex>(b.base().num_arrows()); ++y)
      maps.push_back(per_element[t]);
  return {b, base_action, std::move(maps)};
}

BundleAction unitary_action(const FellBundle& matrix_bundle, std::span<const int> unit_dims,
                            const GroupAction& base_action, const std::vector<Matrix>& unitaries)
{
  const auto& x = matrix_bundle.base();
  const std::size_t nu = x.num_units();
  if (unitaries.size() != base_action.group().order() * nu)
    throw PreconditionError("unitary_action: one unitary per (element, unit) expected");
  std::vector<Matrix> maps;
  for (ElementIndex t = 0; t < static_cast<ElementIndex>(base_action.group().order()); ++t)
    for (ArrowIndex y = 0; y < static_cast<ArrowIndex>(x.num_arrows()); ++y) {
      const Matrix& wr = unitaries[static_cast<std::size_t>(t) * nu + static_cast<std::size_t>(x.rng(y))];
      const Matrix& ws = unitaries[static_cast<std::size_t>(t) * nu + static_cast<std::size_t>(x.src(y))];
      const int r = unit_dims[x.rng(y)], s = unit_dims[x.src(y)];
      // E_ab ↦ W_r E_ab W_s*, entry (c, d) = W_r(c, a) conj(W_s(d, b))
      Matrix m(wr.rows() * ws.rows(), r * s);
      for (int a = 0; a < r; ++a)
        for (int b = 0; b < s; ++b)
          for (Eigen::Index c = 0; c < wr.rows(); ++c)
            for (Eigen::Index d = 0; d < ws.rows(); ++d)
              m(c * ws.rows() + d, a * s + b) = wr(c, a) * std::conj(ws(d, b));
      maps.push_back(std::move(m));
    }
  return {matrix_bundle, base_action, std::move(maps)};
}

} // namespace groupoidal
