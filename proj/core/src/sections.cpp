#include "groupoidal/sections.hpp"

#include "groupoidal/equivalence.hpp"

namespace groupoidal {

namespace {

SparseMatrix sparse(Eigen::Index n, const std::vector<Eigen::Triplet<Complex>>& t)
{
  SparseMatrix m(n, n);
  m.setFromTriplets(t.begin(), t.end());
  return m;
}

} // namespace

StarAlgebra section_algebra(const FellBundle& b)
{
  const auto& x = b.base();
  const auto n = static_cast<ArrowIndex>(x.num_arrows());
  const Eigen::Index dim = b.total_dim();
  std::vector<SparseMatrix> left;
  std::vector<std::string> names;
  left.reserve(static_cast<std::size_t>(dim));
  Matrix star = Matrix::Zero(dim, dim);
  for (ArrowIndex a = 0; a < n; ++a) {
    star.block(b.offset(x.inv(a)), b.offset(a), b.dim(x.inv(a)), b.dim(a)) = b.star(a);
    for (int i = 0; i < b.dim(a); ++i) {
      std::vector<Eigen::Triplet<Complex>> t;
      for (ArrowIndex y = 0; y < n; ++y) {
        if (!x.composable(a, y))
          continue;
        const Matrix& m = b.mult(a, y);
        const Eigen::Index row0 = b.offset(x.compose(a, y));
        for (int j = 0; j < b.dim(y); ++j)
          for (Eigen::Index r = 0; r < m.rows(); ++r) {
            const Complex v = m(r, i * b.dim(y) + j);
            if (v != Complex(0.0))
              t.emplace_back(row0 + r, b.offset(y) + j, v);
          }
      }
      left.push_back(sparse(dim, t));
      names.push_back(b.dim(a) == 1 ? x.arrow_name(a) : x.arrow_name(a) + "#" + std::to_string(i + 1));
    }
  }
  return {std::move(left), std::move(star), std::move(names), "sections"};
}

Vector convolve(const FellBundle& b, const Vector& f, const Vector& g)
{
  const auto& x = b.base();
  Vector out = Vector::Zero(b.total_dim());
  for (ArrowIndex a = 0; a < static_cast<ArrowIndex>(x.num_arrows()); ++a)
    for (ArrowIndex y : x.range_fiber(x.rng(a))) {
      const ArrowIndex rest = x.compose(x.inv(y), a);
      out.segment(b.offset(a), b.dim(a)) +=
        b.multiply(y, f.segment(b.offset(y), b.dim(y)), rest, g.segment(b.offset(rest), b.dim(rest)));
    }
  return out;
}

Vector section_adjoint(const FellBundle& b, const Vector& f)
{
  const auto& x = b.base();
  Vector out(b.total_dim());
  for (ArrowIndex a = 0; a < static_cast<ArrowIndex>(x.num_arrows()); ++a) {
    const ArrowIndex ai = x.inv(a);
    out.segment(b.offset(a), b.dim(a)) = b.adjoint(ai, f.segment(b.offset(ai), b.dim(ai)));
  }
  return out;
}

AlgebraAction section_action(const BundleAction& a)
{
  const auto& b = a.bundle();
  const auto& x = b.base();
  AlgebraAction out{a.group(), section_algebra(b), a.side(), {}};
  for (ElementIndex t = 0; t < static_cast<ElementIndex>(a.group().order()); ++t) {
    Matrix m = Matrix::Zero(b.total_dim(), b.total_dim());
    for (ArrowIndex y = 0; y < static_cast<ArrowIndex>(x.num_arrows()); ++y) {
      const ArrowIndex ty = a.base_action().act(t, y);
      m.block(b.offset(ty), b.offset(y), b.dim(ty), b.dim(y)) = a.map(t, y);
    }
    out.maps.push_back(std::move(m));
  }
  return out;
}

StarAlgebra crossed_product(const BundleAction& a)
{
  return a.side() == Side::left ? section_algebra(semidirect_fell_bundle(a).bundle)
                                : section_algebra(semidirect_right_fell_bundle(a).bundle);
}

Matrix crossed_product_identification(const BundleAction& a)
{
  const auto& b = a.bundle();
  const auto& x = b.base();
  const bool left = a.side() == Side::left;
  const auto sd = left ? semidirect_fell_bundle(a) : semidirect_right_fell_bundle(a);
  const Eigen::Index order = static_cast<Eigen::Index>(a.group().order());
  const Eigen::Index dim = b.total_dim() * order;
  Matrix phi = Matrix::Zero(dim, dim);
  for (ArrowIndex y = 0; y < static_cast<ArrowIndex>(x.num_arrows()); ++y)
    for (ElementIndex s = 0; s < static_cast<ElementIndex>(order); ++s) {
      const ArrowIndex u = sd.base.index(y, s);
      for (int i = 0; i < b.dim(y); ++i) {
        const Eigen::Index target = left ? (b.offset(y) + i) * order + s : s * b.total_dim() + b.offset(y) + i;
        phi(target, sd.bundle.offset(u) + i) = 1.0;
      }
    }
  return phi;
}

InducedAlgebra induced_algebra(const StarAlgebra& b, const SpaceAction& on_x, const AlgebraAction& on_b, double tol)
{
  if (on_b.side != Side::left)
    throw PreconditionError("induced_algebra: the action on B must be a left action");
  if (!(on_b.algebra.dim() == b.dim()) || on_b.group.order() != on_x.groupoid().num_arrows())
    throw PreconditionError("induced_algebra: action data does not match B and the group");
  if (const auto w = space_freeness_witness(on_x); !w.empty())
    throw PreconditionError("induced_algebra: action on X is not free, " + w + " is fixed");
  require_valid(check_algebra_action(on_b, tol), "induced_algebra: action on B");

  InducedAlgebra ind;
  ind.trivial = make_trivial_cbundle(b, on_x.points(), tol);
  const auto& g = on_b.group;
  std::vector<Matrix> per(g.order());
  for (ElementIndex t = 0; t < static_cast<ElementIndex>(g.order()); ++t)
    per[t] = on_x.side() == Side::left ? on_b.maps[t] : on_b.maps[g.inv(t)];
  ind.diagonal = uniform_action(ind.trivial, unit_groupoid_action(on_x), per);
  ind.quotient = quotient_fell_bundle(ind.diagonal);
  ind.sections = section_algebra(ind.quotient.bundle);

  const auto& q = ind.quotient.base;
  const auto& unit = ind.trivial.base();
  const Eigen::Index db = b.dim();
  const auto npts = static_cast<Eigen::Index>(on_x.num_points());
  const auto norb = static_cast<Eigen::Index>(q.representative.size());
  const Eigen::Index dim = norb * db;

  ind.embedding = Matrix::Zero(npts * db, dim);
  ind.restriction = Matrix::Zero(dim, npts * db);
  for (PointIndex u = 0; u < static_cast<PointIndex>(npts); ++u) {
    const ArrowIndex ua = unit.unit_arrow(u);
    const Eigen::Index o = q.arrow_class[ua];
    // f(rep) = C_x f(x)
    ind.embedding.block(u * db, o * db, db, db) = ind.quotient.class_maps[ua].inverse();
    if (q.representative[o] == ua)
      ind.restriction.block(o * db, u * db, db, db) = Matrix::Identity(db, db);
  }

  std::vector<SparseMatrix> left;
  std::vector<std::string> names;
  Matrix star = Matrix::Zero(dim, dim);
  for (Eigen::Index o = 0; o < norb; ++o) {
    star.block(o * db, o * db, db, db) = b.star();
    for (Eigen::Index i = 0; i < db; ++i) {
      std::vector<Eigen::Triplet<Complex>> t;
      const SparseMatrix& li = b.left(i);
      for (Eigen::Index k = 0; k < li.outerSize(); ++k)
        for (SparseMatrix::InnerIterator it(li, k); it; ++it)
          t.emplace_back(o * db + it.row(), o * db + it.col(), it.value());
      left.push_back(sparse(dim, t));
      names.push_back(q.groupoid.arrow_name(static_cast<ArrowIndex>(o)) + ":" + b.basis_name(i));
    }
  }
  ind.algebra = StarAlgebra(std::move(left), std::move(star), std::move(names), "induced algebra");

  // θ(f)(x·H) = C_x f(x), read off at each orbit's representative
  ind.theta = Matrix::Zero(ind.sections.dim(), dim);
  for (Eigen::Index o = 0; o < norb; ++o) {
    const ArrowIndex r = q.representative[o];
    const PointIndex u = unit.src(r);
    ind.theta.block(ind.quotient.bundle.offset(static_cast<ArrowIndex>(o)), 0, db, dim) =
      ind.quotient.class_maps[r] * ind.embedding.block(u * db, 0, db, dim);
  }
  return ind;
}

ValidationReport verify_induced_algebra(const InducedAlgebra& ind, double tol)
{
  ValidationReport rep;
  rep.merge(validate_star_algebra(ind.algebra, tol), "algebra/");
  rep.merge(check_algebra_homomorphism(ind.algebra, ind.sections, ind.theta, true, tol), "theta/");
  const Eigen::Index db = ind.trivial.dim(0);
  const auto& act = ind.diagonal;
  const auto& unit = ind.trivial.base();
  rep.record("equivariant");
  for (ElementIndex t = 0; t < static_cast<ElementIndex>(act.group().order()); ++t)
    for (PointIndex u = 0; u < static_cast<PointIndex>(unit.num_units()); ++u) {
      const ArrowIndex ua = unit.unit_arrow(u);
      const PointIndex v = unit.src(act.base_action().act(t, ua));
      const double r = max_abs_diff(ind.embedding.middleRows(v * db, db),
                                    act.map(t, ua) * ind.embedding.middleRows(u * db, db));
      if (r > tol)
        rep.fail("equivariant", "basis functions are not equivariant at (" + act.group().name(t) + ", "
                                  + unit.unit_name(u) + ")", r);
      else
        rep.record("equivariant", r);
    }
  const double r = max_abs_diff(ind.restriction * ind.embedding,
                                Matrix::Identity(ind.algebra.dim(), ind.algebra.dim()));
  if (r > tol)
    rep.fail("restriction", "evaluation at representatives does not invert the embedding", r);
  return rep;
}

AlgebraAction induced_action(const InducedAlgebra& ind, const SpaceAction& on_x, const AlgebraAction& on_b)
{
  if (on_b.side != Side::left)
    throw PreconditionError("induced_action: the action on B must be a left action");
  const Eigen::Index db = ind.trivial.dim(0);
  const auto npts = static_cast<Eigen::Index>(on_x.num_points());
  const auto& g = on_b.group;
  AlgebraAction out{g, ind.algebra, on_x.side(), {}};
  for (ElementIndex t = 0; t < static_cast<ElementIndex>(g.order()); ++t) {
    Matrix full = Matrix::Zero(npts * db, npts * db);
    const Matrix& m = on_x.side() == Side::left ? on_b.maps[t] : on_b.maps[g.inv(t)];
    for (PointIndex u = 0; u < static_cast<PointIndex>(npts); ++u)
      full.block(on_x.act(t, u) * db, u * db, db, db) = m;
    out.maps.push_back(ind.restriction * full * ind.embedding);
  }
  return out;
}

} // namespace groupoidal
