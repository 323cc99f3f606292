#include "groupoidal/bundle_equivalence.hpp"

#include <Eigen/Eigenvalues>
#include <map>

namespace groupoidal {

namespace {

Matrix eye(Eigen::Index d) { return Matrix::Identity(d, d); }

std::string pts(const GroupoidEquivalence& e, std::initializer_list<PointIndex> zs)
{
  std::vector<std::string> names;
  for (auto z : zs)
    names.push_back(e.left.point_name(z));
  std::string s = "(";
  for (std::size_t i = 0; i < names.size(); ++i)
    s += (i ? ", " : "") + names[i];
  return s + ")";
}

void require_commuting(const BundleAction& g, const BundleAction& h, double tol)
{
  const auto& x = g.bundle().base();
  for (ElementIndex t = 0; t < static_cast<ElementIndex>(g.group().order()); ++t)
    for (ElementIndex k = 0; k < static_cast<ElementIndex>(h.group().order()); ++k)
      for (ArrowIndex y = 0; y < static_cast<ArrowIndex>(x.num_arrows()); ++y) {
        const Matrix lhs = g.map(t, h.base_action().act(k, y)) * h.map(k, y);
        const Matrix rhs = h.map(k, g.base_action().act(t, y)) * g.map(t, y);
        if (max_abs_diff(lhs, rhs) > tol)
          throw PreconditionError("symmetric_action_equivalence: bundle actions do not commute at (" + g.group().name(t)
                                  + ", " + x.arrow_name(y) + ", " + h.group().name(k) + ")");
      }
}

} // namespace

Vector BundleEquivalence::left_inner_product(PointIndex z1, const Vector& a, PointIndex z2, const Vector& b) const
{
  const Matrix& m = left_inner[pair(z1, z2)];
  if (m.size() == 0 && left_inner_target[pair(z1, z2)] == kUndefined)
    throw PreconditionError("left_inner_product: σ(z1) != σ(z2)");
  return m * kron(a, Vector(b.conjugate()));
}

Vector BundleEquivalence::right_inner_product(PointIndex z1, const Vector& a, PointIndex z2, const Vector& b) const
{
  const Matrix& m = right_inner[pair(z1, z2)];
  if (m.size() == 0 && right_inner_target[pair(z1, z2)] == kUndefined)
    throw PreconditionError("right_inner_product: ρ(z1) != ρ(z2)");
  return m * kron(Vector(a.conjugate()), b);
}

SymmetricBundleData symmetric_action_data(const BundleAction& g, const BundleAction& h, double tol)
{
  if (!(g.bundle().base() == h.bundle().base()) || g.bundle().dims() != h.bundle().dims())
    throw PreconditionError("symmetric_action_equivalence: actions are on different bundles");
  require_valid(check_bundle_action(g, tol), "symmetric_action_equivalence: G-action");
  require_valid(check_bundle_action(h, tol), "symmetric_action_equivalence: H-action");

  SymmetricBundleData d;
  d.groupoids = symmetric_groupoid_data(g.base_action(), h.base_action());
  require_commuting(g, h, tol);
  d.by_h = quotient_fell_bundle(h);
  d.by_g = quotient_fell_bundle(g);
  d.g_on_quotient = quotient_induced_bundle_action(g, d.by_h);
  d.h_on_quotient = quotient_induced_bundle_action(h, d.by_g);
  d.p = semidirect_fell_bundle(d.g_on_quotient);
  d.q = semidirect_right_fell_bundle(d.h_on_quotient);

  const auto& a = g.bundle();
  const auto& x = a.base();
  const auto& ga = g.base_action();
  const auto& ha = h.base_action();
  const auto& sg = d.groupoids;
  const std::size_t nz = x.num_arrows();

  auto& e = d.equivalence;
  e.base = sg.equivalence;
  e.p_bundle = d.p.bundle;
  e.q_bundle = d.q.bundle;
  e.dims = a.dims();
  const auto& P = d.p.base.groupoid;
  const auto& Q = d.q.base.groupoid;
  e.left_action.assign(P.num_arrows() * nz, Matrix());
  e.right_action.assign(Q.num_arrows() * nz, Matrix());
  e.left_inner.assign(nz * nz, Matrix());
  e.right_inner.assign(nz * nz, Matrix());
  e.left_inner_target.assign(nz * nz, kUndefined);
  e.right_inner_target.assign(nz * nz, kUndefined);

  // (a·H, t)·b = (a·k)(t·b) with s(a)·k = t·r(b)
  for (ArrowIndex p = 0; p < static_cast<ArrowIndex>(P.num_arrows()); ++p) {
    const ArrowIndex xr = d.by_h.base.representative[d.p.base.arrow_of(p)];
    const ElementIndex t = d.p.base.element_of(p);
    for (ArrowIndex y = 0; y < static_cast<ArrowIndex>(nz); ++y) {
      if (e.base.left.act(p, y) == kUndefined)
        continue;
      const ElementIndex k = unique_translator(ha, x.src(xr), ga.act_unit(t, x.rng(y)));
      e.left_action[e.pair(p, y)] = a.mult(ha.act(k, xr), ga.act(t, y)) * kron(h.map(k, xr), g.map(t, y));
    }
  }
  // b·(k, G·a) = (b·k)(t·a) with s(b·k) = t·r(a)
  for (ArrowIndex q = 0; q < static_cast<ArrowIndex>(Q.num_arrows()); ++q) {
    const ArrowIndex xr = d.by_g.base.representative[d.q.base.arrow_of(q)];
    const ElementIndex k = d.q.base.element_of(q);
    for (ArrowIndex y = 0; y < static_cast<ArrowIndex>(nz); ++y) {
      if (e.base.right.act(q, y) == kUndefined)
        continue;
      const ArrowIndex yk = ha.act(k, y);
      const ElementIndex t = unique_translator(ga, x.rng(xr), x.src(yk));
      e.right_action[e.pair(q, y)] = a.mult(yk, ga.act(t, xr)) * kron(h.map(k, y), g.map(t, xr));
    }
  }
  for (ArrowIndex z1 = 0; z1 < static_cast<ArrowIndex>(nz); ++z1)
    for (ArrowIndex z2 = 0; z2 < static_cast<ArrowIndex>(nz); ++z2) {
      const std::size_t i = e.pair(z1, z2);
      if (e.base.sigma(z1) == e.base.sigma(z2)) {
        // _L⟨a, b⟩ = (a (t·b*)·H, t) with s(a) = t·s(b)
        const ElementIndex t = unique_translator(ga, x.src(z2), x.src(z1));
        const ArrowIndex z2i = x.inv(z2);
        const ArrowIndex tz = ga.act(t, z2i);
        const ArrowIndex w = x.compose(z1, tz);
        e.left_inner_target[i] = d.p.base.index(d.by_h.base.arrow_class[w], t);
        e.left_inner[i] = d.by_h.class_maps[w] * a.mult(z1, tz)
                          * kron(eye(a.dim(z1)), Matrix(g.map(t, z2i) * a.star(z2)));
      }
      if (e.base.rho(z1) == e.base.rho(z2)) {
        // ⟨a, b⟩_R = (k, G·(a*·k) b) with r(b) = r(a)·k
        const ElementIndex k = unique_translator(ha, x.rng(z1), x.rng(z2));
        const ArrowIndex z1i = x.inv(z1);
        const ArrowIndex zk = ha.act(k, z1i);
        const ArrowIndex w = x.compose(zk, z2);
        e.right_inner_target[i] = d.q.base.index(d.by_g.base.arrow_class[w], k);
        e.right_inner[i] = d.by_g.class_maps[w] * a.mult(zk, z2)
                           * kron(Matrix(h.map(k, z1i) * a.star(z1)), eye(a.dim(z2)));
      }
    }
  return d;
}

BundleEquivalence symmetric_action_equivalence(const BundleAction& g, const BundleAction& h, double tol)
{
  return symmetric_action_data(g, h, tol).equivalence;
}

BundleModule semidirect_orbit_bundle_action(const BundleAction& g, const BundleAction& h, double tol)
{
  return symmetric_action_data(g, h, tol).equivalence.left_module();
}

BundleAction trivial_right_action(const FellBundle& a)
{
  return lift_action(a, trivial_action(trivial_group(), a.base(), Side::right));
}

BundleEquivalence one_sided_equivalence(const BundleAction& g, double tol)
{
  return symmetric_action_equivalence(g, trivial_right_action(g.bundle()), tol);
}

TransformationEquivalence one_sided_transformation_data(const FellBundle& b, const SpaceAction& act,
                                                        const SpaceAction& gact, double tol)
{
  if (act.side() != Side::left || gact.side() != Side::left)
    throw PreconditionError("one_sided_transformation_equivalence: expected left actions");
  if (!(act.groupoid() == b.base()))
    throw PreconditionError("one_sided_transformation_equivalence: space action is not by the bundle's base");
  if (act.points() != gact.points())
    throw PreconditionError("one_sided_transformation_equivalence: actions are on different sets");
  require_valid(check_space_action(act), "one_sided_transformation_equivalence: base action");
  require_valid(check_space_action(gact), "one_sided_transformation_equivalence: group action");
  const FiniteGroup group(gact.groupoid());
  const auto& y = b.base();
  const auto nw = static_cast<PointIndex>(act.num_points());

  // principal bundle: G permutes each ρ-fiber freely and transitively
  for (PointIndex u = 0; u < nw; ++u)
    for (PointIndex v = 0; v < nw; ++v) {
      std::size_t hits = 0;
      for (ElementIndex t = 0; t < static_cast<ElementIndex>(group.order()); ++t)
        if (gact.act(t, u) == v)
          ++hits;
      const bool same = act.fibring(u) == act.fibring(v);
      if ((same && hits != 1) || (!same && hits != 0))
        throw PreconditionError("one_sided_transformation_equivalence: ρ is not a principal G-bundle at ("
                                + act.point_name(u) + ", " + act.point_name(v) + ")");
    }

  TransformationEquivalence out;
  out.transformation = transformation_fell_bundle(b, act);
  const auto& tg = out.transformation.base;
  const auto& bt = tg.groupoid;
  std::vector<ArrowIndex> table;
  for (ElementIndex t = 0; t < static_cast<ElementIndex>(group.order()); ++t)
    for (ArrowIndex c = 0; c < static_cast<ArrowIndex>(bt.num_arrows()); ++c) {
      const auto [yc, u] = tg.pairs[c];
      const PointIndex tu = gact.act(t, u);
      if (act.act(yc, tu) != gact.act(t, act.act(yc, u)))
        throw PreconditionError("one_sided_transformation_equivalence: actions do not commute at ("
                                + group.name(t) + ", " + y.arrow_name(yc) + ", " + act.point_name(u) + ")");
      table.push_back(tg.index(yc, tu));
    }
  out.g = lift_action(out.transformation.bundle, GroupAction(group, bt, Side::left, std::move(table)));

  const auto d = symmetric_action_data(out.g, trivial_right_action(out.transformation.bundle), tol);
  auto e = d.equivalence;
  const auto& qg = d.q.base;
  const auto& orbits = d.by_g.base;
  const auto& Q = qg.groupoid;
  const std::size_t nq = Q.num_arrows();
  const std::size_t nz = e.num_points();

  // G\(B∗Ω) → B, G·(y, u) ↦ y
  std::vector<ArrowIndex> phi(nq);
  for (ArrowIndex q = 0; q < static_cast<ArrowIndex>(nq); ++q)
    phi[q] = tg.pairs[orbits.representative[qg.arrow_of(q)]].first;
  require_valid(check_homomorphism(Q, y, phi, true), "one_sided_transformation_equivalence: orbit identification");
  for (ArrowIndex q = 0; q < static_cast<ArrowIndex>(nq); ++q) {
    bool same = e.q_bundle.dim(q) == b.dim(phi[q]) && max_abs_diff(e.q_bundle.star(q), b.star(phi[q])) <= tol;
    for (ArrowIndex r = 0; same && r < static_cast<ArrowIndex>(nq); ++r)
      if (Q.composable(q, r))
        same = max_abs_diff(e.q_bundle.mult(q, r), b.mult(phi[q], phi[r])) <= tol;
    if (!same)
      throw ConsistencyError("one_sided_transformation_equivalence: orbit bundle differs from B at "
                             + Q.arrow_name(q));
  }

  std::vector<UnitIndex> sigma(nz);
  for (PointIndex z = 0; z < static_cast<PointIndex>(nz); ++z)
    sigma[z] = y.src(phi[Q.unit_arrow(e.base.sigma(z))]);
  std::vector<PointIndex> rtab(y.num_arrows() * nz, kUndefined);
  std::vector<Matrix> ract(y.num_arrows() * nz);
  for (ArrowIndex q = 0; q < static_cast<ArrowIndex>(nq); ++q)
    for (std::size_t z = 0; z < nz; ++z) {
      rtab[phi[q] * nz + z] = e.base.right.act(q, static_cast<PointIndex>(z));
      ract[phi[q] * nz + z] = e.right_action[q * nz + z];
    }
  e.base.right = SpaceAction(y, e.base.right.points(), std::move(sigma), Side::right, std::move(rtab));
  for (auto& r : e.base.right_brackets)
    if (r != kUndefined)
      r = phi[r];
  for (auto& r : e.right_inner_target)
    if (r != kUndefined)
      r = phi[r];
  e.right_action = std::move(ract);
  e.q_bundle = b;
  out.equivalence = std::move(e);
  return out;
}

BundleEquivalence one_sided_transformation_equivalence(const FellBundle& b, const SpaceAction& act,
                                                       const SpaceAction& gact, double tol)
{
  return one_sided_transformation_data(b, act, gact, tol).equivalence;
}

ValidationReport verify_bundle_equivalence(const BundleEquivalence& e, double tol, std::uint64_t seed)
{
  ValidationReport rep;
  rep.merge(verify_groupoid_equivalence(e.base), "base/");
  const auto& P = e.base.p();
  const auto& Q = e.base.q();
  const auto& ap = e.p_bundle;
  const auto& aq = e.q_bundle;
  const auto nz = static_cast<PointIndex>(e.num_points());
  const auto& L = e.base.left;
  const auto& R = e.base.right;

  for (const char* c : {"step1-commute", "step2-projection", "step3-adjoint-left", "step3-adjoint-right",
                        "step4-left", "step4-right", "step5-exchange", "step6-full-left", "step6-full-right",
                        "step6-positive-left", "step6-positive-right"})
    rep.record(c);
  if (!(ap.base() == P) || !(aq.base() == Q) || e.left_action.size() != P.num_arrows() * e.num_points()
      || e.right_action.size() != Q.num_arrows() * e.num_points() || e.left_inner.size() != e.num_points() * e.num_points()
      || e.right_inner.size() != e.left_inner.size()) {
    rep.fail("shape", "bundles or tables do not match the base equivalence");
    return rep;
  }
  if (!rep.ok())
    return rep;

  const auto lmod = check_bundle_module(ap, e.left_module(), tol);
  const auto rmod = check_bundle_module(aq, e.right_module(), tol);
  rep.merge(lmod, "step1-left-module/");
  rep.merge(rmod, "step1-right-module/");
  if (!lmod.ok() || !rmod.ok())
    return rep;

  // Step 2 first: later steps index through the inner-product targets
  for (PointIndex z1 = 0; z1 < nz; ++z1)
    for (PointIndex z2 = 0; z2 < nz; ++z2) {
      const std::size_t i = e.pair(z1, z2);
      const std::size_t cols = static_cast<std::size_t>(e.dims[z1] * e.dims[z2]);
      const ArrowIndex lb = e.base.left_brackets[i], rb = e.base.right_brackets[i];
      if (e.left_inner_target[i] != lb)
        rep.fail("step2-projection", "p(_L⟨a,b⟩) != _L[p(a), p(b)] at " + pts(e.base, {z1, z2}));
      else if (lb != kUndefined
               && (e.left_inner[i].rows() != ap.dim(lb) || static_cast<std::size_t>(e.left_inner[i].cols()) != cols))
        rep.fail("step2-projection", "left inner product has the wrong shape at " + pts(e.base, {z1, z2}));
      if (e.right_inner_target[i] != rb)
        rep.fail("step2-projection", "p(⟨a,b⟩_R) != [p(a), p(b)]_R at " + pts(e.base, {z1, z2}));
      else if (rb != kUndefined
               && (e.right_inner[i].rows() != aq.dim(rb) || static_cast<std::size_t>(e.right_inner[i].cols()) != cols))
        rep.fail("step2-projection", "right inner product has the wrong shape at " + pts(e.base, {z1, z2}));
    }
  if (!rep.ok())
    return rep;

  // Step 1: (p·e)·q = p·(e·q)
  for (ArrowIndex p = 0; p < static_cast<ArrowIndex>(P.num_arrows()); ++p)
    for (PointIndex z = 0; z < nz; ++z) {
      const PointIndex pz = L.act(p, z);
      if (pz == kUndefined)
        continue;
      for (ArrowIndex q = 0; q < static_cast<ArrowIndex>(Q.num_arrows()); ++q) {
        const PointIndex zq = R.act(q, z);
        if (zq == kUndefined)
          continue;
        const Matrix lhs = e.right_action[e.pair(q, pz)] * kron(e.left_action[e.pair(p, z)], eye(aq.dim(q)));
        const Matrix rhs = e.left_action[e.pair(p, zq)] * kron(eye(ap.dim(p)), e.right_action[e.pair(q, z)]);
        const double r = max_abs_diff(lhs, rhs);
        if (r > tol)
          rep.fail("step1-commute", "(p·e)·q != p·(e·q) at " + P.arrow_name(p) + ", " + L.point_name(z) + ", "
                                      + Q.arrow_name(q), r);
        else
          rep.record("step1-commute", r);
      }
    }

  // Step 3: _L⟨a,b⟩* = _L⟨b,a⟩ and ⟨a,b⟩_R* = ⟨b,a⟩_R on basis vectors
  auto adjoint_check = [&](const char* name, const FellBundle& bundle, const std::vector<Matrix>& ip,
                           const std::vector<ArrowIndex>& target) {
    for (PointIndex z1 = 0; z1 < nz; ++z1)
      for (PointIndex z2 = 0; z2 < nz; ++z2) {
        const ArrowIndex t = target[e.pair(z1, z2)];
        if (t == kUndefined)
          continue;
        const Matrix& m12 = ip[e.pair(z1, z2)];
        const Matrix& m21 = ip[e.pair(z2, z1)];
        const int d1 = e.dims[z1], d2 = e.dims[z2];
        double worst = 0.0;
        for (int i = 0; i < d1; ++i)
          for (int j = 0; j < d2; ++j) {
            const Vector lhs = bundle.star(t) * m12.col(i * d2 + j).conjugate();
            worst = std::max(worst, max_abs_diff(lhs, m21.col(j * d1 + i)));
          }
        if (worst > tol)
          rep.fail(name, "⟨a,b⟩* != ⟨b,a⟩ at " + pts(e.base, {z1, z2}), worst);
        else
          rep.record(name, worst);
      }
  };
  adjoint_check("step3-adjoint-left", ap, e.left_inner, e.left_inner_target);
  adjoint_check("step3-adjoint-right", aq, e.right_inner, e.right_inner_target);

  // Step 4: _L⟨p·a, b⟩ = p _L⟨a,b⟩ and ⟨a, b·q⟩_R = ⟨a,b⟩_R q
  for (PointIndex z1 = 0; z1 < nz; ++z1)
    for (PointIndex z2 = 0; z2 < nz; ++z2) {
      const std::size_t i = e.pair(z1, z2);
      if (const ArrowIndex lt = e.left_inner_target[i]; lt != kUndefined)
        for (ArrowIndex p = 0; p < static_cast<ArrowIndex>(P.num_arrows()); ++p) {
          const PointIndex pz = L.act(p, z1);
          if (pz == kUndefined)
            continue;
          const Matrix lhs = e.left_inner[e.pair(pz, z2)] * kron(e.left_action[e.pair(p, z1)], eye(e.dims[z2]));
          const Matrix rhs = ap.mult(p, lt) * kron(eye(ap.dim(p)), e.left_inner[i]);
          const double r = max_abs_diff(lhs, rhs);
          if (r > tol)
            rep.fail("step4-left", "_L⟨p·a,b⟩ != p _L⟨a,b⟩ at " + P.arrow_name(p) + ", " + pts(e.base, {z1, z2}), r);
          else
            rep.record("step4-left", r);
        }
      if (const ArrowIndex rt = e.right_inner_target[i]; rt != kUndefined)
        for (ArrowIndex q = 0; q < static_cast<ArrowIndex>(Q.num_arrows()); ++q) {
          const PointIndex zq = R.act(q, z2);
          if (zq == kUndefined)
            continue;
          const Matrix lhs = e.right_inner[e.pair(z1, zq)] * kron(eye(e.dims[z1]), e.right_action[e.pair(q, z2)]);
          const Matrix rhs = aq.mult(rt, q) * kron(e.right_inner[i], eye(aq.dim(q)));
          const double r = max_abs_diff(lhs, rhs);
          if (r > tol)
            rep.fail("step4-right", "⟨a,b·q⟩_R != ⟨a,b⟩_R q at " + pts(e.base, {z1, z2}) + ", " + Q.arrow_name(q), r);
          else
            rep.record("step4-right", r);
        }
    }

  // Step 5: _L⟨a,b⟩·c = a·⟨b,c⟩_R
  for (PointIndex z1 = 0; z1 < nz; ++z1)
    for (PointIndex z2 = 0; z2 < nz; ++z2) {
      const ArrowIndex lt = e.left_inner_target[e.pair(z1, z2)];
      if (lt == kUndefined)
        continue;
      for (PointIndex z3 = 0; z3 < nz; ++z3) {
        const ArrowIndex rt = e.right_inner_target[e.pair(z2, z3)];
        if (rt == kUndefined)
          continue;
        const Matrix& la = e.left_action[e.pair(lt, z3)];
        const Matrix& ra = e.right_action[e.pair(rt, z1)];
        if (la.size() == 0 || ra.size() == 0) {
          rep.fail("step5-exchange", "an action in the exchange identity is undefined at " + pts(e.base, {z1, z2, z3}));
          continue;
        }
        const Matrix lhs = la * kron(e.left_inner[e.pair(z1, z2)], eye(e.dims[z3]));
        const Matrix rhs = ra * kron(eye(e.dims[z1]), e.right_inner[e.pair(z2, z3)]);
        const double r = max_abs_diff(lhs, rhs);
        if (r > tol)
          rep.fail("step5-exchange", "_L⟨a,b⟩·c != a·⟨b,c⟩_R at " + pts(e.base, {z1, z2, z3}), r);
        else
          rep.record("step5-exchange", r);
      }
    }

  // Step 6: fullness onto each unit fiber and positivity of ⟨a,a⟩
  auto fullness = [&](const char* name, const FellBundle& bundle, const std::vector<Matrix>& ip,
                      const std::vector<ArrowIndex>& target, const char* side) {
    const auto& base = bundle.base();
    for (UnitIndex u = 0; u < static_cast<UnitIndex>(base.num_units()); ++u) {
      const ArrowIndex ua = base.unit_arrow(u);
      const int d = bundle.dim(ua);
      std::vector<const Matrix*> parts;
      Eigen::Index cols = 0;
      for (std::size_t i = 0; i < target.size(); ++i)
        if (target[i] == ua) {
          parts.push_back(&ip[i]);
          cols += ip[i].cols();
        }
      Matrix span(d, cols);
      Eigen::Index c = 0;
      for (const Matrix* m : parts) {
        span.middleCols(c, m->cols()) = *m;
        c += m->cols();
      }
      const Eigen::Index rank = cols == 0 ? 0 : numerical_rank(span, tol);
      if (rank != d)
        rep.fail(name, std::string(side) + " inner products span " + std::to_string(rank) + " of "
                         + std::to_string(d) + " dimensions at unit " + base.unit_name(u));
    }
  };
  fullness("step6-full-left", ap, e.left_inner, e.left_inner_target, "left");
  fullness("step6-full-right", aq, e.right_inner, e.right_inner_target, "right");

  Rng rng(seed);
  auto positivity = [&](const char* name, const FellBundle& bundle, bool left) {
    std::map<UnitIndex, Representation> reps;
    for (PointIndex z = 0; z < nz; ++z) {
      const int d = e.dims[z];
      if (d == 0)
        continue;
      const ArrowIndex t = left ? e.left_inner_target[e.pair(z, z)] : e.right_inner_target[e.pair(z, z)];
      const UnitIndex u = bundle.base().src(t);
      auto it = reps.find(u);
      if (it == reps.end())
        it = reps.emplace(u, regular_representation(fiber_algebra(bundle, u), tol, seed)).first;
      if (!it->second.faithful()) {
        rep.fail(name, "unit fiber at " + bundle.base().unit_name(u) + " is not a C*-algebra");
        continue;
      }
      std::vector<Vector> probes;
      for (int i = 0; i < d; ++i)
        probes.push_back(Vector::Unit(d, i));
      for (int i = 0; i < 4; ++i)
        probes.push_back(random_vector(rng, d));
      for (const auto& v : probes) {
        const Vector ip = left ? e.left_inner_product(z, v, z, v) : e.right_inner_product(z, v, z, v);
        const Matrix img = it->second.image(ip);
        const Matrix herm = (img + img.adjoint()) / 2.0;
        const double skew = max_abs_diff(img, herm);
        const double lo = Eigen::SelfAdjointEigenSolver<Matrix>(herm, Eigen::EigenvaluesOnly).eigenvalues().minCoeff();
        if (lo < -tol || skew > tol)
          rep.fail(name, "⟨a,a⟩ is not positive at " + L.point_name(z), std::max(-lo, skew));
        else
          rep.record(name, std::max(0.0, -lo));
      }
    }
  };
  positivity("step6-positive-left", ap, true);
  positivity("step6-positive-right", aq, false);
  return rep;
}

} // namespace groupoidal
