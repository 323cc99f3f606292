#include "groupoidal/bundle_constructions.hpp"

namespace groupoidal {

namespace {

std::size_t idx(std::size_t a, std::size_t n, std::size_t b) { return a * n + b; }

Matrix eye(int d) { return Matrix::Identity(d, d); }

} // namespace

SemidirectBundle semidirect_fell_bundle(const BundleAction& left)
{
  if (left.side() != Side::left)
    throw PreconditionError("semidirect_fell_bundle: expected a left action");
  SemidirectBundle out{semidirect_left(left.base_action()), {}};
  const auto& a = left.bundle();
  const auto& x = a.base();
  const auto& g = left.group();
  const auto& sd = out.base;
  const auto& p = sd.groupoid;
  const std::size_t n = p.num_arrows();
  std::vector<int> dims(n);
  std::vector<Matrix> mult(n * n), star(n);
  for (ArrowIndex u = 0; u < static_cast<ArrowIndex>(n); ++u) {
    const ArrowIndex xu = sd.arrow_of(u);
    const ElementIndex s = sd.element_of(u);
    dims[u] = a.dim(xu);
    star[u] = left.map(g.inv(s), x.inv(xu)) * a.star(xu);
  }
  for (ArrowIndex u = 0; u < static_cast<ArrowIndex>(n); ++u)
    for (ArrowIndex v = 0; v < static_cast<ArrowIndex>(n); ++v) {
      if (!p.composable(u, v))
        continue;
      const ArrowIndex xu = sd.arrow_of(u), yv = sd.arrow_of(v);
      const ElementIndex s = sd.element_of(u);
      const ArrowIndex sy = left.base_action().act(s, yv);
      mult[idx(u, n, v)] = a.mult(xu, sy) * kron(eye(a.dim(xu)), left.map(s, yv));
    }
  out.bundle = FellBundle(p, std::move(dims), std::move(mult), std::move(star));
  return out;
}

SemidirectBundle semidirect_right_fell_bundle(const BundleAction& right)
{
  if (right.side() != Side::right)
    throw PreconditionError("semidirect_right_fell_bundle: expected a right action");
  SemidirectBundle out{semidirect_right(right.base_action()), {}};
  const auto& a = right.bundle();
  const auto& x = a.base();
  const auto& g = right.group();
  const auto& sd = out.base;
  const auto& q = sd.groupoid;
  const std::size_t n = q.num_arrows();
  std::vector<int> dims(n);
  std::vector<Matrix> mult(n * n), star(n);
  for (ArrowIndex u = 0; u < static_cast<ArrowIndex>(n); ++u) {
    const ArrowIndex xu = sd.arrow_of(u);
    const ElementIndex s = sd.element_of(u);
    dims[u] = a.dim(xu);
    star[u] = right.map(g.inv(s), x.inv(xu)) * a.star(xu);
  }
  for (ArrowIndex u = 0; u < static_cast<ArrowIndex>(n); ++u)
    for (ArrowIndex v = 0; v < static_cast<ArrowIndex>(n); ++v) {
      if (!q.composable(u, v))
        continue;
      const ArrowIndex xu = sd.arrow_of(u), yv = sd.arrow_of(v);
      const ElementIndex t = sd.element_of(v);
      const ArrowIndex xt = right.base_action().act(t, xu);
      mult[idx(u, n, v)] = a.mult(xt, yv) * kron(right.map(t, xu), eye(a.dim(yv)));
    }
  out.bundle = FellBundle(q, std::move(dims), std::move(mult), std::move(star));
  return out;
}

QuotientBundle quotient_fell_bundle(const BundleAction& free_action)
{
  QuotientBundle out;
  out.base = quotient_groupoid(free_action.base_action());
  const auto& act = free_action.base_action();
  const auto& a = free_action.bundle();
  const auto& x = a.base();
  const auto& qb = out.base;
  const auto& q = qb.groupoid;
  const std::size_t nx = x.num_arrows();
  const std::size_t n = q.num_arrows();

  out.class_maps.reserve(nx);
  for (ArrowIndex y = 0; y < static_cast<ArrowIndex>(nx); ++y)
    out.class_maps.push_back(free_action.map(qb.to_rep[y], y));
  const auto& cm = out.class_maps;

  std::vector<int> dims(n);
  std::vector<Matrix> mult(n * n), star(n);
  for (ArrowIndex o = 0; o < static_cast<ArrowIndex>(n); ++o) {
    const ArrowIndex r = qb.representative[o];
    dims[o] = a.dim(r);
    star[o] = cm[x.inv(r)] * a.star(r);
  }
  for (ArrowIndex o1 = 0; o1 < static_cast<ArrowIndex>(n); ++o1)
    for (ArrowIndex o2 = 0; o2 < static_cast<ArrowIndex>(n); ++o2) {
      if (!q.composable(o1, o2))
        continue;
      const ArrowIndex xr = qb.representative[o1], yr = qb.representative[o2];
      const ElementIndex k = unique_translator(act, x.src(xr), x.rng(yr));
      if (k == kUndefined)
        throw ConsistencyError("quotient_fell_bundle: no translator for " + q.arrow_name(o1) + ", " + q.arrow_name(o2));
      const ArrowIndex xk = act.act(k, xr);
      const ArrowIndex w = x.compose(xk, yr);
      if (qb.arrow_class[w] != q.compose(o1, o2))
        throw ConsistencyError("quotient_fell_bundle: product class mismatch");
      mult[idx(o1, n, o2)] = cm[w] * a.mult(xk, yr) * kron(free_action.map(k, xr), eye(a.dim(yr)));
    }
  out.bundle = FellBundle(q, std::move(dims), std::move(mult), std::move(star));
  return out;
}

BundleAction quotient_induced_bundle_action(const BundleAction& g, const QuotientBundle& q)
{
  auto base = quotient_induced_action(g.base_action(), q.base);
  const std::size_t n = q.base.representative.size();
  std::vector<Matrix> maps;
  maps.reserve(g.group().order() * n);
  for (ElementIndex t = 0; t < static_cast<ElementIndex>(g.group().order()); ++t)
    for (std::size_t o = 0; o < n; ++o) {
      const ArrowIndex xr = q.base.representative[o];
      maps.push_back(q.class_maps[g.base_action().act(t, xr)] * g.map(t, xr));
    }
  return {q.bundle, std::move(base), std::move(maps)};
}

Vector BundleModule::act(ArrowIndex x, const Vector& a, PointIndex z, const Vector& e) const
{
  const Matrix& m = tensor(x, z);
  if (m.size() == 0)
    throw PreconditionError("BundleModule::act: pair is not admissible");
  return base.side() == Side::left ? Vector(m * kron(a, e)) : Vector(m * kron(e, a));
}

ValidationReport check_bundle_module(const FellBundle& a, const BundleModule& m, double tol)
{
  ValidationReport rep;
  rep.merge(check_space_action(m.base), "base/");
  if (!rep.ok())
    return rep;
  const auto& x = m.base.groupoid();
  if (!(x == a.base()))
    rep.fail("shape", "module base groupoid differs from the bundle base");
  const std::size_t nz = m.base.num_points();
  const auto na = static_cast<ArrowIndex>(x.num_arrows());
  if (m.dims.size() != nz || m.tensors.size() != x.num_arrows() * nz)
    rep.fail("shape", "dims or tensor table has the wrong size");
  if (!rep.ok())
    return rep;
  const bool left = m.base.side() == Side::left;
  for (ArrowIndex y = 0; y < na; ++y)
    for (PointIndex z = 0; z < static_cast<PointIndex>(nz); ++z) {
      const PointIndex yz = m.base.act(y, z);
      const Matrix& t = m.tensor(y, z);
      if (yz == kUndefined) {
        if (t.size() != 0)
          rep.fail("shape", "tensor given for inadmissible pair (" + x.arrow_name(y) + ", " + m.base.point_name(z) + ")");
        continue;
      }
      if (t.rows() != m.dims[yz] || t.cols() != a.dim(y) * m.dims[z])
        rep.fail("shape", "tensor shape at (" + x.arrow_name(y) + ", " + m.base.point_name(z) + ")");
    }
  rep.record("associative");
  if (!rep.ok())
    return rep;
  for (ArrowIndex p = 0; p < na; ++p)
    for (ArrowIndex q = 0; q < na; ++q) {
      if (!x.composable(p, q))
        continue;
      const ArrowIndex pq = x.compose(p, q);
      for (PointIndex z = 0; z < static_cast<PointIndex>(nz); ++z) {
        Matrix lhs, rhs;
        if (left) {
          const PointIndex qz = m.base.act(q, z);
          if (qz == kUndefined)
            continue;
          lhs = m.tensor(pq, z) * kron(a.mult(p, q), eye(m.dims[z]));
          rhs = m.tensor(p, qz) * kron(eye(a.dim(p)), m.tensor(q, z));
        } else {
          const PointIndex zp = m.base.act(p, z);
          if (zp == kUndefined)
            continue;
          lhs = m.tensor(pq, z) * kron(eye(m.dims[z]), a.mult(p, q));
          rhs = m.tensor(q, zp) * kron(m.tensor(p, z), eye(a.dim(q)));
        }
        const double r = max_abs_diff(lhs, rhs);
        if (r > tol)
          rep.fail("associative", "at (" + x.arrow_name(p) + ", " + x.arrow_name(q) + ", " + m.base.point_name(z) + ")", r);
        else
          rep.record("associative", r);
      }
    }
  return rep;
}

BundleModule orbit_bundle_action(const BundleAction& h, const QuotientBundle& q)
{
  BundleModule m;
  m.base = orbit_space_action(q.base);
  const auto& a = h.bundle();
  const auto& x = a.base();
  const std::size_t nz = x.num_arrows();
  m.dims = a.dims();
  m.tensors.assign(q.base.representative.size() * nz, Matrix());
  for (std::size_t o = 0; o < q.base.representative.size(); ++o) {
    const ArrowIndex xr = q.base.representative[o];
    for (ArrowIndex y = 0; y < static_cast<ArrowIndex>(nz); ++y) {
      if (m.base.act(static_cast<ArrowIndex>(o), y) == kUndefined)
        continue;
      const ElementIndex k = unique_translator(h.base_action(), x.src(xr), x.rng(y));
      const ArrowIndex xk = h.base_action().act(k, xr);
      m.tensors[idx(o, nz, y)] = a.mult(xk, y) * kron(h.map(k, xr), eye(a.dim(y)));
    }
  }
  return m;
}

PrincipalFellDecomposition principal_fell_decomposition(const BundleAction& h)
{
  if (h.side() != Side::right)
    throw PreconditionError("principal_fell_decomposition: expected a right action");
  PrincipalFellDecomposition d;
  d.base = principal_decomposition(h.base_action());
  d.quotient = quotient_fell_bundle(h);
  d.transformation = transformation_fell_bundle(d.quotient.bundle, d.base.unit_action);
  d.tau = d.quotient.class_maps;
  return d;
}

ValidationReport verify_principal_fell_decomposition(const BundleAction& h, const PrincipalFellDecomposition& d,
                                                     double tol)
{
  ValidationReport rep;
  rep.merge(verify_principal_decomposition(h.base_action(), d.base), "base/");
  const auto& a = h.bundle();
  const auto& x = a.base();
  const auto& t = d.transformation.bundle;
  const auto& th = d.base.theta;
  const auto n = static_cast<ArrowIndex>(x.num_arrows());
  for (const char* c : {"fiber-bijective", "multiplicative", "star", "h-equivariant"})
    rep.record(c);
  if (!rep.ok())
    return rep;
  for (ArrowIndex y = 0; y < n; ++y) {
    const Matrix& tau = d.tau[y];
    if (tau.rows() != t.dim(th[y]) || tau.cols() != a.dim(y) || numerical_rank(tau, tol) != a.dim(y))
      rep.fail("fiber-bijective", "τ is not a bijection A(" + x.arrow_name(y) + ") → A'(θ(x))");
  }
  if (!rep.ok())
    return rep;
  for (ArrowIndex y = 0; y < n; ++y) {
    const double rs = max_abs_diff(d.tau[x.inv(y)] * a.star(y), t.star(th[y]) * d.tau[y].conjugate());
    if (rs > tol)
      rep.fail("star", "τ(a*) != τ(a)* at " + x.arrow_name(y), rs);
    else
      rep.record("star", rs);
    for (ArrowIndex z = 0; z < n; ++z) {
      if (!x.composable(y, z))
        continue;
      const double r = max_abs_diff(d.tau[x.compose(y, z)] * a.mult(y, z),
                                    t.mult(th[y], th[z]) * kron(d.tau[y], d.tau[z]));
      if (r > tol)
        rep.fail("multiplicative", "τ(ab) != τ(a)τ(b) at " + x.arrow_name(y) + ", " + x.arrow_name(z), r);
      else
        rep.record("multiplicative", r);
    }
    for (ElementIndex k = 0; k < static_cast<ElementIndex>(h.group().order()); ++k) {
      const double r = max_abs_diff(d.tau[h.base_action().act(k, y)] * h.map(k, y), d.tau[y]);
      if (r > tol)
        rep.fail("h-equivariant", "τ(a·h) != τ(a)·h at (" + x.arrow_name(y) + ", " + h.group().name(k) + ")", r);
      else
        rep.record("h-equivariant", r);
    }
  }
  return rep;
}

} // namespace groupoidal
