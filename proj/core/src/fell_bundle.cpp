#include "groupoidal/fell_bundle.hpp"

#include <sstream>

namespace groupoidal {

namespace {

std::string pair_of(const FiniteGroupoid& g, ArrowIndex x, ArrowIndex y)
{
  return "(" + g.arrow_name(x) + ", " + g.arrow_name(y) + ")";
}

} // namespace

FellBundle::FellBundle(FiniteGroupoid base, std::vector<int> dims, std::vector<Matrix> mult, std::vector<Matrix> star)
  : base_(std::move(base)), dims_(std::move(dims)), mult_(std::move(mult)), star_(std::move(star))
{
  const std::size_t n = base_.num_arrows();
  if (dims_.size() != n || star_.size() != n || mult_.size() != n * n)
    throw PreconditionError("FellBundle: data does not match the number of arrows");
  offsets_.reserve(n + 1);
  for (std::size_t x = 0; x < n; ++x) {
    if (dims_[x] < 0)
      throw PreconditionError("FellBundle: negative fiber dimension at " + base_.arrow_name(static_cast<ArrowIndex>(x)));
    offsets_.push_back(offsets_.back() + dims_[x]);
  }
}

FellBundle FellBundle::with_star(ArrowIndex x, Matrix s) const
{
  auto copy = *this;
  copy.star_[static_cast<std::size_t>(x)] = std::move(s);
  return copy;
}

FellBundle FellBundle::with_mult(ArrowIndex x, ArrowIndex y, Matrix m) const
{
  auto copy = *this;
  copy.mult_[index(x, y)] = std::move(m);
  return copy;
}

ValidationReport validate_fell_bundle(const FellBundle& b, double tol)
{
  ValidationReport rep;
  const auto& g = b.base();
  const auto n = static_cast<ArrowIndex>(g.num_arrows());
  for (const char* c : {"shape", "dimension", "associativity", "involution", "anti-multiplicative"})
    rep.record(c);

  bool shapes_ok = true;
  for (ArrowIndex x = 0; x < n; ++x) {
    if (b.dim(x) != b.dim(g.inv(x)))
      rep.fail("dimension", "dim(x) != dim(x⁻¹) at " + g.arrow_name(x));
    const Matrix& s = b.star(x);
    if (s.rows() != b.dim(g.inv(x)) || s.cols() != b.dim(x)) {
      rep.fail("shape", "star matrix at " + g.arrow_name(x));
      shapes_ok = false;
    }
    for (ArrowIndex y = 0; y < n; ++y) {
      const Matrix& m = b.mult(x, y);
      if (!g.composable(x, y)) {
        if (m.size() != 0) {
          rep.fail("shape", "multiplication stored for non-composable " + pair_of(g, x, y));
          shapes_ok = false;
        }
        continue;
      }
      if (m.rows() != b.dim(g.compose(x, y)) || m.cols() != static_cast<Eigen::Index>(b.dim(x)) * b.dim(y)) {
        rep.fail("shape", "multiplication at " + pair_of(g, x, y));
        shapes_ok = false;
      }
    }
  }
  if (!shapes_ok || !rep.ok())
    return rep;

  for (ArrowIndex x = 0; x < n; ++x) {
    const Matrix back = b.star(g.inv(x)) * b.star(x).conjugate();
    const double r = max_abs_diff(back, Matrix::Identity(b.dim(x), b.dim(x)));
    if (r > tol)
      rep.fail("involution", "a** != a on A(" + g.arrow_name(x) + ")", r);
    else
      rep.record("involution", r);
  }

  for (ArrowIndex x = 0; x < n; ++x)
    for (ArrowIndex y = 0; y < n; ++y) {
      if (!g.composable(x, y))
        continue;
      const ArrowIndex xy = g.compose(x, y);
      const Matrix& mxy = b.mult(x, y);
      // (ab)* = b* a*
      const int dx = b.dim(x), dy = b.dim(y);
      Matrix rhs(b.dim(g.inv(xy)), static_cast<Eigen::Index>(dx) * dy);
      const Matrix& myx = b.mult(g.inv(y), g.inv(x));
      for (int i = 0; i < dx; ++i)
        for (int j = 0; j < dy; ++j)
          rhs.col(i * dy + j) = myx * kron(Vector(b.star(y).col(j)), Vector(b.star(x).col(i)));
      const double r = max_abs_diff(b.star(xy) * mxy.conjugate(), rhs);
      if (r > tol)
        rep.fail("anti-multiplicative", "(ab)* != b*a* at " + pair_of(g, x, y), r);
      else
        rep.record("anti-multiplicative", r);

      for (ArrowIndex z = 0; z < n; ++z) {
        if (!g.composable(y, z))
          continue;
        const ArrowIndex yz = g.compose(y, z);
        const int dz = b.dim(z);
        const Matrix lhs = b.mult(xy, z) * kron(mxy, Matrix::Identity(dz, dz));
        const Matrix rhs2 = b.mult(x, yz) * kron(Matrix::Identity(dx, dx), b.mult(y, z));
        const double r2 = max_abs_diff(lhs, rhs2);
        if (r2 > tol)
          rep.fail("associativity",
                   "(ab)c != a(bc) at (" + g.arrow_name(x) + ", " + g.arrow_name(y) + ", " + g.arrow_name(z) + ")", r2);
        else
          rep.record("associativity", r2);
      }
    }
  return rep;
}

FellBundle trivial_line_bundle(const FiniteGroupoid& g)
{
  const std::size_t n = g.num_arrows();
  std::vector<Matrix> mult(n * n);
  for (ArrowIndex x = 0; x < static_cast<ArrowIndex>(n); ++x)
    for (ArrowIndex y = 0; y < static_cast<ArrowIndex>(n); ++y)
      if (g.composable(x, y))
        mult[static_cast<std::size_t>(x) * n + static_cast<std::size_t>(y)] = Matrix::Ones(1, 1);
  return {g, std::vector<int>(n, 1), std::move(mult), std::vector<Matrix>(n, Matrix::Ones(1, 1))};
}

FellBundle matrix_bundle(const FiniteGroupoid& g, std::span<const int> unit_dims)
{
  if (unit_dims.size() != g.num_units())
    throw PreconditionError("matrix_bundle: one dimension per unit expected");
  const std::size_t n = g.num_arrows();
  std::vector<int> dims(n);
  for (ArrowIndex x = 0; x < static_cast<ArrowIndex>(n); ++x)
    dims[x] = unit_dims[g.rng(x)] * unit_dims[g.src(x)];
  std::vector<Matrix> mult(n * n);
  std::vector<Matrix> star(n);
  for (ArrowIndex x = 0; x < static_cast<ArrowIndex>(n); ++x) {
    const int r = unit_dims[g.rng(x)], s = unit_dims[g.src(x)];
    Matrix st = Matrix::Zero(s * r, r * s);
    for (int a = 0; a < r; ++a)
      for (int b = 0; b < s; ++b)
        st(b * r + a, a * s + b) = 1.0;
    star[x] = std::move(st);
    for (ArrowIndex y = 0; y < static_cast<ArrowIndex>(n); ++y) {
      if (!g.composable(x, y))
        continue;
      const int k = unit_dims[g.src(y)];
      // E_ab E_bc = E_ac with a < r, b < s, c < k
      Matrix m = Matrix::Zero(r * k, static_cast<Eigen::Index>(r * s) * (s * k));
      for (int a = 0; a < r; ++a)
        for (int b = 0; b < s; ++b)
          for (int c = 0; c < k; ++c)
            m(a * k + c, (a * s + b) * (s * k) + (b * k + c)) = 1.0;
      mult[static_cast<std::size_t>(x) * n + static_cast<std::size_t>(y)] = std::move(m);
    }
  }
  return {g, std::move(dims), std::move(mult), std::move(star)};
}

FellBundle make_trivial_cbundle(const StarAlgebra& b, std::vector<std::string> points, double tol)
{
  const auto report = star_structure_report(b, tol);
  if (!report.is_cstar)
    throw PreconditionError("make_trivial_cbundle: algebra is not certified as a C*-algebra (" + report.to_string() + ")");
  const auto g = make_unit_groupoid(std::move(points));
  const std::size_t n = g.num_arrows();
  const auto d = b.dim();
  Matrix m(d, d * d);
  for (Eigen::Index i = 0; i < d; ++i)
    for (Eigen::Index j = 0; j < d; ++j)
      m.col(i * d + j) = Matrix(b.left(i)).col(j);
  std::vector<Matrix> mult(n * n);
  for (std::size_t x = 0; x < n; ++x)
    mult[x * n + x] = m;
  return {g, std::vector<int>(n, static_cast<int>(d)), std::move(mult), std::vector<Matrix>(n, b.star())};
}

FellBundle pullback_bundle(const FiniteGroupoid& dom, std::span<const ArrowIndex> f, const FellBundle& a)
{
  require_valid(check_homomorphism(dom, a.base(), f, false), "pullback_bundle: map is not a homomorphism");
  const std::size_t n = dom.num_arrows();
  std::vector<int> dims(n);
  std::vector<Matrix> mult(n * n), star(n);
  for (ArrowIndex y = 0; y < static_cast<ArrowIndex>(n); ++y) {
    dims[y] = a.dim(f[y]);
    star[y] = a.star(f[y]);
    for (ArrowIndex z = 0; z < static_cast<ArrowIndex>(n); ++z)
      if (dom.composable(y, z))
        mult[static_cast<std::size_t>(y) * n + static_cast<std::size_t>(z)] = a.mult(f[y], f[z]);
  }
  return {dom, std::move(dims), std::move(mult), std::move(star)};
}

TransformationBundle transformation_fell_bundle(const FellBundle& a, const SpaceAction& act)
{
  TransformationBundle out{transformation_groupoid(a.base(), act), {}};
  const auto& t = out.base;
  const auto& g = t.groupoid;
  const std::size_t n = g.num_arrows();
  std::vector<int> dims(n);
  std::vector<Matrix> mult(n * n), star(n);
  for (std::size_t i = 0; i < n; ++i) {
    const ArrowIndex x = t.pairs[i].first;
    dims[i] = a.dim(x);
    star[i] = a.star(x);
    for (std::size_t j = 0; j < n; ++j)
      if (g.composable(static_cast<ArrowIndex>(i), static_cast<ArrowIndex>(j)))
        mult[i * n + j] = a.mult(x, t.pairs[j].first);
  }
  out.bundle = FellBundle(g, std::move(dims), std::move(mult), std::move(star));
  return out;
}

StarAlgebra fiber_algebra(const FellBundle& b, UnitIndex u)
{
  const ArrowIndex e = b.base().unit_arrow(u);
  const int d = b.dim(e);
  const Matrix& m = b.mult(e, e);
  std::vector<SparseMatrix> left;
  for (int i = 0; i < d; ++i) {
    Matrix li(d, d);
    for (int j = 0; j < d; ++j)
      li.col(j) = m.col(i * d + j);
    left.push_back(li.sparseView());
  }
  return {std::move(left), b.star(e), {}, "A(" + b.base().unit_name(u) + ")"};
}

} // namespace groupoidal
