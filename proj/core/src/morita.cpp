#include "groupoidal/morita.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <limits>
#include <sstream>

#include <json.hpp>

namespace groupoidal {

namespace {

std::size_t at(std::size_t a, std::size_t n, std::size_t b) { return a * n + b; }

struct Layout {
  std::size_t np, nz, nq, npu;
};

Layout layout(const BundleEquivalence& e)
{
  return {e.base.p().num_arrows(), e.num_points(), e.base.q().num_arrows(), e.base.p().num_units()};
}

double min_eigenvalue(const Matrix& m)
{
  if (m.size() == 0)
    return 0.0;
  const Matrix h = (m + m.adjoint()) / 2.0;
  return Eigen::SelfAdjointEigenSolver<Matrix>(h, Eigen::EigenvaluesOnly).eigenvalues().minCoeff();
}

Vector corner_projection(const FellBundle& b, UnitIndex first, UnitIndex last, double tol)
{
  Vector p = Vector::Zero(b.total_dim());
  for (UnitIndex u = first; u < last; ++u) {
    const auto one = unit_element(fiber_algebra(b, u), tol);
    if (!one)
      throw PreconditionError("linking_system: unit fiber " + b.base().unit_name(u) + " has no identity");
    p.segment(b.offset(b.base().unit_arrow(u)), one->size()) = *one;
  }
  return p;
}

} // namespace

ArrowIndex LinkingSystem::z_arrow(PointIndex z) const
{
  return static_cast<ArrowIndex>(equivalence.base.p().num_arrows()) + z;
}

ArrowIndex LinkingSystem::zbar_arrow(PointIndex z) const
{
  return static_cast<ArrowIndex>(equivalence.base.p().num_arrows() + equivalence.num_points()) + z;
}

ArrowIndex LinkingSystem::q_arrow(ArrowIndex q) const
{
  return static_cast<ArrowIndex>(equivalence.base.p().num_arrows() + 2 * equivalence.num_points()) + q;
}

LinkingSystem assemble_linking_system(const BundleEquivalence& e, double tol)
{
  const auto& P = e.base.p();
  const auto& Q = e.base.q();
  const auto& L = e.base.left;
  const auto& R = e.base.right;
  const auto [np, nz, nq, npu] = layout(e);
  const std::size_t n = np + 2 * nz + nq;
  const auto zi = [&](std::size_t z) { return static_cast<ArrowIndex>(np + z); };
  const auto zb = [&](std::size_t z) { return static_cast<ArrowIndex>(np + nz + z); };
  const auto qi = [&](std::size_t q) { return static_cast<ArrowIndex>(np + 2 * nz + q); };
  const auto qu = [&](UnitIndex v) { return static_cast<UnitIndex>(npu + static_cast<std::size_t>(v)); };

  std::vector<std::string> units, names;
  for (const auto& u : P.unit_names())
    units.push_back("p:" + u);
  for (const auto& u : Q.unit_names())
    units.push_back("q:" + u);
  std::vector<UnitIndex> src(n), rng(n);
  std::vector<ArrowIndex> inv(n), unit_arrow(units.size());
  std::vector<ArrowIndex> comp(n * n, kUndefined);

  for (std::size_t p = 0; p < np; ++p) {
    const auto a = static_cast<ArrowIndex>(p);
    names.push_back("p:" + P.arrow_name(a));
    src[p] = P.src(a);
    rng[p] = P.rng(a);
    inv[p] = P.inv(a);
  }
  for (std::size_t z = 0; z < nz; ++z) {
    const auto pz = static_cast<PointIndex>(z);
    names.push_back("z:" + L.point_name(pz));
    src[zi(z)] = qu(e.base.sigma(pz));
    rng[zi(z)] = e.base.rho(pz);
    inv[zi(z)] = zb(z);
  }
  for (std::size_t z = 0; z < nz; ++z) {
    const auto pz = static_cast<PointIndex>(z);
    names.push_back("z*:" + L.point_name(pz));
    src[zb(z)] = e.base.rho(pz);
    rng[zb(z)] = qu(e.base.sigma(pz));
    inv[zb(z)] = zi(z);
  }
  for (std::size_t q = 0; q < nq; ++q) {
    const auto a = static_cast<ArrowIndex>(q);
    names.push_back("q:" + Q.arrow_name(a));
    src[qi(q)] = qu(Q.src(a));
    rng[qi(q)] = qu(Q.rng(a));
    inv[qi(q)] = qi(static_cast<std::size_t>(Q.inv(a)));
  }
  for (std::size_t u = 0; u < P.num_units(); ++u)
    unit_arrow[u] = P.unit_arrow(static_cast<UnitIndex>(u));
  for (std::size_t v = 0; v < Q.num_units(); ++v)
    unit_arrow[npu + v] = qi(static_cast<std::size_t>(Q.unit_arrow(static_cast<UnitIndex>(v))));

  std::vector<int> dims(n);
  std::vector<Matrix> mult(n * n), star(n);
  for (std::size_t p = 0; p < np; ++p) {
    dims[p] = e.p_bundle.dim(static_cast<ArrowIndex>(p));
    star[p] = e.p_bundle.star(static_cast<ArrowIndex>(p));
  }
  for (std::size_t z = 0; z < nz; ++z) {
    dims[zi(z)] = dims[zb(z)] = e.dims[z];
    star[zi(z)] = star[zb(z)] = Matrix::Identity(e.dims[z], e.dims[z]);
  }
  for (std::size_t q = 0; q < nq; ++q) {
    dims[qi(q)] = e.q_bundle.dim(static_cast<ArrowIndex>(q));
    star[qi(q)] = e.q_bundle.star(static_cast<ArrowIndex>(q));
  }

  auto set = [&](ArrowIndex x, ArrowIndex y, ArrowIndex xy, Matrix m) {
    comp[at(x, n, y)] = xy;
    mult[at(x, n, y)] = std::move(m);
  };
  for (std::size_t p = 0; p < np; ++p) {
    const auto a = static_cast<ArrowIndex>(p);
    for (std::size_t p2 = 0; p2 < np; ++p2) {
      const auto b = static_cast<ArrowIndex>(p2);
      if (P.composable(a, b))
        set(a, b, P.compose(a, b), e.p_bundle.mult(a, b));
    }
    const ArrowIndex ai = P.inv(a);
    for (std::size_t z = 0; z < nz; ++z) {
      const auto pz = static_cast<PointIndex>(z);
      if (const PointIndex w = L.act(a, pz); w != kUndefined)
        set(a, zi(z), zi(w), e.left_action[e.pair(p, z)]);
      // z̄·p = (p⁻¹·z)‾
      if (const PointIndex w = L.act(ai, pz); w != kUndefined) {
        const int dz = e.dims[z], dp = e.p_bundle.dim(a);
        const Matrix& act = e.left_action[e.pair(ai, z)];
        const Matrix& sp = e.p_bundle.star(a);
        Matrix m(e.dims[w], dz * dp);
        for (int i = 0; i < dz; ++i)
          for (int j = 0; j < dp; ++j)
            m.col(i * dp + j) = (act * kron(Vector(sp.col(j)), Vector(Vector::Unit(dz, i)))).conjugate();
        set(zb(z), a, zb(w), std::move(m));
      }
    }
  }
  for (std::size_t q = 0; q < nq; ++q) {
    const auto a = static_cast<ArrowIndex>(q);
    for (std::size_t q2 = 0; q2 < nq; ++q2) {
      const auto b = static_cast<ArrowIndex>(q2);
      if (Q.composable(a, b))
        set(qi(q), qi(q2), qi(static_cast<std::size_t>(Q.compose(a, b))), e.q_bundle.mult(a, b));
    }
    const ArrowIndex ai = Q.inv(a);
    for (std::size_t z = 0; z < nz; ++z) {
      const auto pz = static_cast<PointIndex>(z);
      if (const PointIndex w = R.act(a, pz); w != kUndefined)
        set(zi(z), qi(q), zi(w), e.right_action[e.pair(q, z)]);
      // q·z̄ = (z·q⁻¹)‾
      if (const PointIndex w = R.act(ai, pz); w != kUndefined) {
        const int dz = e.dims[z], dq = e.q_bundle.dim(a);
        const Matrix& act = e.right_action[e.pair(ai, z)];
        const Matrix& sq = e.q_bundle.star(a);
        Matrix m(e.dims[w], dq * dz);
        for (int j = 0; j < dq; ++j)
          for (int i = 0; i < dz; ++i)
            m.col(j * dz + i) = (act * kron(Vector(Vector::Unit(dz, i)), Vector(sq.col(j)))).conjugate();
        set(qi(q), zb(z), zb(w), std::move(m));
      }
    }
  }
  for (std::size_t z1 = 0; z1 < nz; ++z1)
    for (std::size_t z2 = 0; z2 < nz; ++z2) {
      const std::size_t i = e.pair(z1, z2);
      if (e.left_inner_target[i] != kUndefined)
        set(zi(z1), zb(z2), e.left_inner_target[i], e.left_inner[i]);
      if (e.right_inner_target[i] != kUndefined)
        set(zb(z1), zi(z2), qi(static_cast<std::size_t>(e.right_inner_target[i])), e.right_inner[i]);
    }

  LinkingSystem ls;
  ls.equivalence = e;
  ls.groupoid = FiniteGroupoid(std::move(units), std::move(names), std::move(src), std::move(rng), std::move(comp),
                               std::move(inv), std::move(unit_arrow));
  ls.bundle = FellBundle(ls.groupoid, std::move(dims), std::move(mult), std::move(star));
  ls.algebra = section_algebra(ls.bundle);
  ls.p_corner = section_algebra(e.p_bundle);
  ls.q_corner = section_algebra(e.q_bundle);
  const auto nu = static_cast<UnitIndex>(ls.groupoid.num_units());
  ls.p_projection = corner_projection(ls.bundle, 0, static_cast<UnitIndex>(npu), tol);
  ls.q_projection = corner_projection(ls.bundle, static_cast<UnitIndex>(npu), nu, tol);
  return ls;
}

LinkingSystem linking_system(const BundleEquivalence& e, double tol)
{
  require_valid(verify_bundle_equivalence(e, tol), "linking_system");
  return assemble_linking_system(e, tol);
}

LinkingSystem zero_off_diagonal(const LinkingSystem& ls)
{
  auto out = ls;
  const auto& e = ls.equivalence;
  const auto nz = static_cast<PointIndex>(e.num_points());
  for (PointIndex z1 = 0; z1 < nz; ++z1)
    for (PointIndex z2 = 0; z2 < nz; ++z2) {
      const auto a = ls.z_arrow(z1), ab = ls.zbar_arrow(z1);
      const auto b = ls.z_arrow(z2), bb = ls.zbar_arrow(z2);
      if (ls.groupoid.composable(a, bb))
        out.bundle = out.bundle.with_mult(a, bb, Matrix::Zero(out.bundle.mult(a, bb).rows(), out.bundle.mult(a, bb).cols()));
      if (ls.groupoid.composable(ab, b))
        out.bundle = out.bundle.with_mult(ab, b, Matrix::Zero(out.bundle.mult(ab, b).rows(), out.bundle.mult(ab, b).cols()));
    }
  out.algebra = section_algebra(out.bundle);
  return out;
}

std::string to_string(Verdict v)
{
  switch (v) {
  case Verdict::equivalent: return "equivalent";
  case Verdict::not_certified: return "not-certified";
  case Verdict::indeterminate: return "indeterminate";
  }
  return "?";
}

namespace {

void decide(MoritaCertificate& c)
{
  c.reasons.clear();
  auto& why = c.reasons;
  if (!c.checks.ok())
    why.push_back(std::to_string(c.checks.failure_count()) + " failed checks, first: [" + c.checks.failures().front().check
                  + "] " + c.checks.failures().front().witness);
  if (c.p_fullness_rank != c.p_dimension)
    why.push_back("left corner not full: span rank " + std::to_string(c.p_fullness_rank) + " of "
                  + std::to_string(c.p_dimension));
  if (c.q_fullness_rank != c.q_dimension)
    why.push_back("right corner not full: span rank " + std::to_string(c.q_fullness_rank) + " of "
                  + std::to_string(c.q_dimension));
  if (c.p_positivity_margin < -c.tol || c.q_positivity_margin < -c.tol)
    why.push_back("inner products not positive");
  if (c.exchange_residual > c.tol)
    why.push_back("exchange identity fails");
  if (c.p_report.status == SplitStatus::not_semisimple || c.q_report.status == SplitStatus::not_semisimple)
    why.push_back("a corner is not certified as a C*-algebra");
  if (!why.empty()) {
    c.verdict = Verdict::not_certified;
    return;
  }
  if (c.p_report.status == SplitStatus::indeterminate || c.q_report.status == SplitStatus::indeterminate) {
    why.push_back("Wedderburn splitting indeterminate");
    c.verdict = Verdict::indeterminate;
    return;
  }
  if (c.p_report.center_dimension != c.q_report.center_dimension
      || c.p_report.blocks.size() != c.q_report.blocks.size()) {
    why.push_back("corner center dimensions differ");
    c.verdict = Verdict::not_certified;
    return;
  }
  c.verdict = Verdict::equivalent;
}

} // namespace

MoritaCertificate verify_morita(const LinkingSystem& ls, double tol, std::uint64_t seed)
{
  MoritaCertificate c;
  c.seed = seed;
  c.tol = tol;
  const auto& e = ls.equivalence;
  const auto& a = ls.algebra;
  const auto& b = ls.bundle;
  c.checks.merge(validate_groupoid(ls.groupoid), "linking-groupoid/");
  c.checks.merge(validate_fell_bundle(b, tol), "linking-bundle/");

  const Eigen::Index dp = e.p_bundle.total_dim(), dq = e.q_bundle.total_dim();
  const Eigen::Index zoff = dp, nzb = b.total_dim() - dp - dq;
  const Eigen::Index zb = nzb / 2, zbar_off = zoff + zb, qoff = dp + nzb;
  c.p_dimension = dp;
  c.q_dimension = dq;

  // projections: p_P + p_Q = 1, both self-adjoint idempotents
  c.checks.record("projections");
  const Matrix one = a.left_matrix(ls.p_projection + ls.q_projection);
  double pr = max_abs_diff(one, Matrix::Identity(a.dim(), a.dim()));
  for (const Vector* p : {&ls.p_projection, &ls.q_projection}) {
    pr = std::max(pr, max_abs_diff(a.multiply(*p, *p), *p));
    pr = std::max(pr, max_abs_diff(a.adjoint(*p), *p));
  }
  if (pr > tol)
    c.checks.fail("projections", "p_P + p_Q is not a decomposition of the identity", pr);
  else
    c.checks.record("projections", pr);

  // corners sit in the linking algebra as Γ(A_P) and Γ(A_Q)
  Matrix incl_p = Matrix::Zero(a.dim(), dp), incl_q = Matrix::Zero(a.dim(), dq);
  incl_p.topRows(dp) = Matrix::Identity(dp, dp);
  incl_q.bottomRows(dq) = Matrix::Identity(dq, dq);
  c.checks.merge(check_algebra_homomorphism(ls.p_corner, a, incl_p, false, tol), "p-corner/");
  c.checks.merge(check_algebra_homomorphism(ls.q_corner, a, incl_q, false, tol), "q-corner/");

  // fullness
  Matrix span_p(dp, zb * zb), span_q(dq, zb * zb);
  for (Eigen::Index i = 0; i < zb; ++i) {
    const Matrix li(a.left(zoff + i));
    const Matrix lbi(a.left(zbar_off + i));
    span_p.middleCols(i * zb, zb) = li.block(0, zbar_off, dp, zb);
    span_q.middleCols(i * zb, zb) = lbi.block(qoff, zoff, dq, zb);
  }
  c.p_fullness_rank = zb == 0 ? 0 : numerical_rank(span_p, tol);
  c.q_fullness_rank = zb == 0 ? 0 : numerical_rank(span_q, tol);

  // positivity over the Z basis and seeded random Z-sections
  const auto rp = regular_representation(ls.p_corner, tol, seed);
  const auto rq = regular_representation(ls.q_corner, tol, seed);
  c.p_positivity_margin = c.q_positivity_margin = std::numeric_limits<double>::infinity();
  if (!rp.faithful() || !rq.faithful()) {
    c.checks.fail("positivity", "a corner has a degenerate trace form");
    c.p_positivity_margin = c.q_positivity_margin = -std::numeric_limits<double>::infinity();
  } else {
    Rng rng(seed);
    std::vector<Vector> probes;
    for (Eigen::Index i = 0; i < zb; ++i)
      probes.push_back(Vector::Unit(zb, i));
    for (int k = 0; k < 8 && zb > 0; ++k)
      probes.push_back(random_vector(rng, zb));
    for (const auto& v : probes) {
      Vector f = Vector::Zero(a.dim());
      f.segment(zoff, zb) = v;
      const Vector fs = a.adjoint(f);
      const Vector left = a.multiply(f, fs), right = a.multiply(fs, f);
      c.p_positivity_margin = std::min(c.p_positivity_margin, min_eigenvalue(rp.image(left.head(dp))));
      c.q_positivity_margin = std::min(c.q_positivity_margin, min_eigenvalue(rq.image(right.tail(dq))));
    }
    if (probes.empty())
      c.p_positivity_margin = c.q_positivity_margin = 0.0;
  }

  // exchange: (z z̄') z'' = z (z̄' z'')
  c.exchange_residual = 0.0;
  for (Eigen::Index i = 0; i < zb; ++i) {
    const Matrix li(a.left(zoff + i));
    for (Eigen::Index j = 0; j < zb; ++j) {
      const Vector w = li.col(zbar_off + j);
      const Matrix lhs = a.left_matrix(w).middleCols(zoff, zb);
      const Matrix rhs = li * Matrix(a.left(zbar_off + j)).middleCols(zoff, zb);
      c.exchange_residual = std::max(c.exchange_residual, max_abs_diff(lhs, rhs));
    }
  }

  c.p_report = star_structure_report(ls.p_corner, tol, seed);
  c.q_report = star_structure_report(ls.q_corner, tol, seed);
  decide(c);
  return c;
}

namespace {

MoritaCertificate certify(const BundleEquivalence& e, const std::string& scenario, double tol, std::uint64_t seed,
                          LinkingSystem* keep = nullptr)
{
  const auto steps = verify_bundle_equivalence(e, tol, seed);
  if (!steps.ok()) {
    MoritaCertificate c;
    c.scenario = scenario;
    c.seed = seed;
    c.tol = tol;
    c.checks.merge(steps, "equivalence/");
    c.p_positivity_margin = c.q_positivity_margin = -std::numeric_limits<double>::infinity();
    c.exchange_residual = std::numeric_limits<double>::infinity();
    decide(c);
    return c;
  }
  auto ls = assemble_linking_system(e, tol);
  auto c = verify_morita(ls, tol, seed);
  c.scenario = scenario;
  c.checks.merge(steps, "equivalence/");
  if (keep)
    *keep = std::move(ls);
  decide(c);
  return c;
}

void identify_corners(MoritaCertificate& c, const LinkingSystem& ls, const BundleAction* g_on_quotient,
                      const BundleAction* h_on_quotient, double tol)
{
  if (g_on_quotient) {
    const auto cp = crossed_product_by_action(section_action(*g_on_quotient));
    c.checks.merge(check_algebra_homomorphism(ls.p_corner, cp, crossed_product_identification(*g_on_quotient), true, tol),
                   "corner-p-crossed-product/");
  }
  if (h_on_quotient) {
    const auto cp = crossed_product_by_right_action(section_action(*h_on_quotient));
    c.checks.merge(check_algebra_homomorphism(ls.q_corner, cp, crossed_product_identification(*h_on_quotient), true, tol),
                   "corner-q-crossed-product/");
  }
  decide(c);
}

MoritaCertificate symmetric_certificate(const SymmetricBundleData& d, const std::string& scenario, double tol,
                                        std::uint64_t seed)
{
  LinkingSystem ls;
  auto c = certify(d.equivalence, scenario, tol, seed, &ls);
  if (ls.algebra.dim() > 0)
    identify_corners(c, ls, &d.g_on_quotient, &d.h_on_quotient, tol);
  return c;
}

void check_intertwines(ValidationReport& rep, const std::string& name, const Matrix& theta, const AlgebraAction& on_ind,
                       const AlgebraAction& on_sections, double tol)
{
  rep.record(name);
  for (std::size_t t = 0; t < on_ind.maps.size(); ++t) {
    const double r = max_abs_diff(theta * on_ind.maps[t], on_sections.maps[t] * theta);
    if (r > tol)
      rep.fail(name, "θ does not intertwine the actions at " + on_ind.group.name(static_cast<ElementIndex>(t)), r);
    else
      rep.record(name, r);
  }
}

} // namespace

MoritaCertificate symmetric_morita(const BundleAction& g, const BundleAction& h, double tol, std::uint64_t seed)
{
  return symmetric_certificate(symmetric_action_data(g, h, tol), "symmetric", tol, seed);
}

MoritaCertificate one_sided_morita(const BundleAction& g, double tol, std::uint64_t seed)
{
  return symmetric_certificate(symmetric_action_data(g, trivial_right_action(g.bundle()), tol), "one-sided", tol, seed);
}

MoritaCertificate one_sided_transformation_morita(const FellBundle& b, const SpaceAction& act, const SpaceAction& gact,
                                                  double tol, std::uint64_t seed)
{
  const auto td = one_sided_transformation_data(b, act, gact, tol);
  LinkingSystem ls;
  auto c = certify(td.equivalence, "one-sided-transformation", tol, seed, &ls);
  if (ls.algebra.dim() > 0) {
    const auto g_on_quotient =
      quotient_induced_bundle_action(td.g, quotient_fell_bundle(trivial_right_action(td.transformation.bundle)));
    identify_corners(c, ls, &g_on_quotient, nullptr, tol);
  }
  return c;
}

MoritaCertificate cstar_bundle_morita(const BundleAction& g, double tol, std::uint64_t seed)
{
  const auto& x = g.bundle().base();
  for (ArrowIndex a = 0; a < static_cast<ArrowIndex>(x.num_arrows()); ++a)
    if (!x.is_unit_arrow(a))
      throw PreconditionError("cstar_bundle_morita: base is not a space, " + x.arrow_name(a) + " is not a unit");
  auto c = one_sided_morita(g, tol, seed);
  c.scenario = "cstar-bundle";
  return c;
}

MoritaCertificate raeburn(const StarAlgebra& b, const SpaceAction& g_on_x, const SpaceAction& h_on_x,
                          const AlgebraAction& sigma, const AlgebraAction& tau, double tol, std::uint64_t seed)
{
  if (g_on_x.side() != Side::left || h_on_x.side() != Side::right)
    throw PreconditionError("raeburn: expected G on the left and H on the right of X");
  if (g_on_x.points() != h_on_x.points())
    throw PreconditionError("raeburn: G and H act on different sets");
  const FiniteGroup g(g_on_x.groupoid()), h(h_on_x.groupoid());
  for (ElementIndex t = 0; t < static_cast<ElementIndex>(g.order()); ++t)
    for (ElementIndex k = 0; k < static_cast<ElementIndex>(h.order()); ++k) {
      if (max_abs_diff(sigma.maps[t] * tau.maps[k], tau.maps[k] * sigma.maps[t]) > tol)
        throw PreconditionError("raeburn: σ and τ do not commute at (" + g.name(t) + ", " + h.name(k) + ")");
      for (PointIndex u = 0; u < static_cast<PointIndex>(g_on_x.num_points()); ++u)
        if (g_on_x.act(t, h_on_x.act(k, u)) != h_on_x.act(k, g_on_x.act(t, u)))
          throw PreconditionError("raeburn: actions on X do not commute at (" + g.name(t) + ", "
                                  + g_on_x.point_name(u) + ", " + h.name(k) + ")");
    }

  const auto ind_h = induced_algebra(b, h_on_x, tau, tol);
  const auto ind_g = induced_algebra(b, g_on_x, sigma, tol);
  std::vector<Matrix> sig(sigma.maps);
  const auto ga = uniform_action(ind_h.trivial, unit_groupoid_action(g_on_x), sig);
  const auto d = symmetric_action_data(ga, ind_h.diagonal, tol);
  auto c = symmetric_certificate(d, "raeburn", tol, seed);

  c.checks.merge(verify_induced_algebra(ind_h, tol), "ind-h/");
  c.checks.merge(verify_induced_algebra(ind_g, tol), "ind-g/");
  const auto ind_sigma = induced_action(ind_h, g_on_x, sigma);
  const auto ind_tau = induced_action(ind_g, h_on_x, tau);
  c.checks.merge(check_algebra_action(ind_sigma, tol), "ind-sigma/");
  c.checks.merge(check_algebra_action(ind_tau, tol), "ind-tau/");
  const auto alpha = section_action(d.g_on_quotient);
  const auto beta = section_action(d.h_on_quotient);
  check_intertwines(c.checks, "ind-sigma-matches-alpha", ind_h.theta, ind_sigma, alpha, tol);
  check_intertwines(c.checks, "ind-tau-matches-beta", ind_g.theta, ind_tau, beta, tol);

  const auto ng = static_cast<Eigen::Index>(g.order()), nh = static_cast<Eigen::Index>(h.order());
  c.checks.merge(check_algebra_homomorphism(crossed_product_by_action(ind_sigma), crossed_product_by_action(alpha),
                                            kron(ind_h.theta, Matrix::Identity(ng, ng)), true, tol),
                 "ind-crossed-p/");
  c.checks.merge(check_algebra_homomorphism(crossed_product_by_right_action(ind_tau),
                                            crossed_product_by_right_action(beta),
                                            kron(Matrix::Identity(nh, nh), ind_g.theta), true, tol),
                 "ind-crossed-q/");
  decide(c);
  return c;
}

MoritaCertificate coaction_demo(const FellBundle& b, double tol, std::uint64_t seed)
{
  if (b.base().num_units() != 1)
    throw PreconditionError("coaction_demo: the base of the bundle is not a group");
  const FiniteGroup g(b.base());
  const auto lt = translation_action(g, Side::left);
  std::vector<std::vector<int>> perms(g.order(), std::vector<int>(g.order()));
  for (ElementIndex t = 0; t < static_cast<ElementIndex>(g.order()); ++t)
    for (ElementIndex s = 0; s < static_cast<ElementIndex>(g.order()); ++s)
      perms[t][s] = g.mul(s, g.inv(t));
  std::vector<std::string> names;
  for (ElementIndex s = 0; s < static_cast<ElementIndex>(g.order()); ++s)
    names.push_back(g.name(s));
  const auto rt = group_set_action(g, names, perms, Side::left);
  auto c = one_sided_transformation_morita(b, lt, rt, tol, seed);
  c.scenario = "coaction";
  return c;
}

std::string MoritaCertificate::to_string() const
{
  std::ostringstream os;
  os << "scenario " << (scenario.empty() ? "-" : scenario) << ": " << groupoidal::to_string(verdict) << '\n';
  os << "  left corner:  dim " << p_dimension << ", fullness rank " << p_fullness_rank << ", positivity margin "
     << p_positivity_margin << "\n    " << p_report.to_string() << '\n';
  os << "  right corner: dim " << q_dimension << ", fullness rank " << q_fullness_rank << ", positivity margin "
     << q_positivity_margin << "\n    " << q_report.to_string() << '\n';
  os << "  exchange residual " << exchange_residual << ", tol " << tol << ", seed " << seed << '\n';
  os << "  checks: " << checks.to_string();
  for (const auto& r : reasons)
    os << "  reason: " << r << '\n';
  return os.str();
}

namespace {

nlohmann::ordered_json report_json(const StarStructureReport& r)
{
  nlohmann::ordered_json j;
  j["dimension"] = r.dimension;
  j["radical_dimension"] = r.radical_dimension;
  j["center_dimension"] = r.center_dimension;
  j["blocks"] = r.blocks;
  j["is_cstar"] = r.is_cstar;
  j["split"] = to_string(r.status);
  j["seed"] = r.seed;
  j["attempts"] = r.attempts;
  return j;
}

double finite_or_sentinel(double v) { return std::isfinite(v) ? v : (v > 0 ? 1e308 : -1e308); }

} // namespace

std::string MoritaCertificate::to_json() const
{
  nlohmann::ordered_json j;
  j["scenario"] = scenario;
  j["verdict"] = groupoidal::to_string(verdict);
  j["left"] = {{"dimension", p_dimension},
               {"fullness_rank", p_fullness_rank},
               {"positivity_margin", finite_or_sentinel(p_positivity_margin)},
               {"structure", report_json(p_report)}};
  j["right"] = {{"dimension", q_dimension},
                {"fullness_rank", q_fullness_rank},
                {"positivity_margin", finite_or_sentinel(q_positivity_margin)},
                {"structure", report_json(q_report)}};
  j["exchange_residual"] = finite_or_sentinel(exchange_residual);
  j["tol"] = tol;
  j["seed"] = seed;
  auto failures = nlohmann::ordered_json::array();
  for (const auto& f : checks.failures())
    failures.push_back({{"check", f.check}, {"witness", f.witness}, {"residual", f.residual}});
  j["failures"] = failures;
  j["reasons"] = reasons;
  return j.dump(2);
}

} // namespace groupoidal
