#include "groupoidal/star_algebra.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace groupoidal {

namespace {

SparseMatrix sparse_from(Eigen::Index n, const std::vector<Eigen::Triplet<Complex>>& t)
{
  SparseMatrix m(n, n);
  m.setFromTriplets(t.begin(), t.end());
  m.makeCompressed();
  return m;
}

std::string fmt(double v)
{
  std::ostringstream os;
  os.precision(6);
  os << v;
  return os.str();
}

} // namespace

StarAlgebra::StarAlgebra(std::vector<SparseMatrix> left, Matrix star, std::vector<std::string> basis_names,
                         std::string provenance)
  : left_(std::move(left)), star_(std::move(star)), names_(std::move(basis_names)), provenance_(std::move(provenance))
{
  const auto n = static_cast<Eigen::Index>(left_.size());
  for (const auto& l : left_)
    if (l.rows() != n || l.cols() != n)
      throw PreconditionError("StarAlgebra: left multiplication matrix has the wrong shape");
  if (star_.rows() != n || star_.cols() != n)
    throw PreconditionError("StarAlgebra: involution matrix has the wrong shape");
  if (names_.empty())
    for (Eigen::Index i = 0; i < n; ++i)
      names_.push_back("e" + std::to_string(i + 1));
  if (static_cast<Eigen::Index>(names_.size()) != n)
    throw PreconditionError("StarAlgebra: wrong number of basis names");
}

Vector StarAlgebra::multiply(const Vector& a, const Vector& b) const
{
  Vector out = Vector::Zero(dim());
  for (Eigen::Index i = 0; i < dim(); ++i)
    if (a(i) != Complex(0.0))
      out += a(i) * (left_[static_cast<std::size_t>(i)] * b);
  return out;
}

Matrix StarAlgebra::left_matrix(const Vector& a) const
{
  Matrix out = Matrix::Zero(dim(), dim());
  for (Eigen::Index i = 0; i < dim(); ++i)
    if (a(i) != Complex(0.0))
      out += a(i) * Matrix(left_[static_cast<std::size_t>(i)]);
  return out;
}

StarAlgebra StarAlgebra::with_star(Matrix star) const
{
  return {left_, std::move(star), names_, provenance_};
}

ValidationReport validate_star_algebra(const StarAlgebra& a, double tol, std::uint64_t seed,
                                       Eigen::Index exhaustive_limit)
{
  ValidationReport rep;
  const auto n = a.dim();
  rep.record("associativity");
  rep.record("involution");
  rep.record("anti-multiplicative");
  const Matrix& S = a.star();
  const double inv_res = max_abs_diff(S * S.conjugate(), Matrix::Identity(n, n));
  if (inv_res > tol)
    rep.fail("involution", "a** != a", inv_res);
  else
    rep.record("involution", inv_res);

  if (n <= exhaustive_limit) {
    std::vector<Matrix> dense;
    dense.reserve(static_cast<std::size_t>(n));
    for (Eigen::Index i = 0; i < n; ++i)
      dense.emplace_back(a.left(i));
    for (Eigen::Index i = 0; i < n; ++i)
      for (Eigen::Index j = 0; j < n; ++j) {
        const Vector eij = dense[i].col(j);
        const double r = max_abs_diff(a.left_matrix(eij), dense[i] * dense[j]);
        if (r > tol)
          rep.fail("associativity", "(e_i e_j) e_k != e_i (e_j e_k) at (" + a.basis_name(i) + ", " + a.basis_name(j) + ")", r);
        else
          rep.record("associativity", r);
        const double r2 = max_abs_diff(S * eij.conjugate(), a.multiply(S.col(j), S.col(i)));
        if (r2 > tol)
          rep.fail("anti-multiplicative", "(e_i e_j)* != e_j* e_i* at (" + a.basis_name(i) + ", " + a.basis_name(j) + ")", r2);
        else
          rep.record("anti-multiplicative", r2);
      }
    return rep;
  }
  Rng rng(seed);
  for (int trial = 0; trial < 16; ++trial) {
    const Vector x = random_vector(rng, n);
    const Vector y = random_vector(rng, n);
    const Vector z = random_vector(rng, n);
    const double r = (a.multiply(a.multiply(x, y), z) - a.multiply(x, a.multiply(y, z))).cwiseAbs().maxCoeff();
    if (r > tol)
      rep.fail("associativity", "random triple " + std::to_string(trial), r);
    else
      rep.record("associativity", r);
    const double r2 = (a.adjoint(a.multiply(x, y)) - a.multiply(a.adjoint(y), a.adjoint(x))).cwiseAbs().maxCoeff();
    if (r2 > tol)
      rep.fail("anti-multiplicative", "random pair " + std::to_string(trial), r2);
    else
      rep.record("anti-multiplicative", r2);
  }
  rep.note("dimension " + std::to_string(n) + " above the exhaustive limit, 16 seeded random triples used");
  return rep;
}

Matrix Representation::image(const Vector& a) const
{
  return r_ * (algebra_.left_matrix(a) * r_inv_);
}

Matrix Representation::basis_image(Eigen::Index i) const
{
  return r_ * (algebra_.left(i) * r_inv_);
}

double Representation::norm(const Vector& a) const
{
  const Matrix m = image(a);
  if (m.size() == 0)
    return 0.0;
  Eigen::BDCSVD<Matrix> svd(m);
  return svd.singularValues()(0);
}

namespace {

Vector trace_vector(const StarAlgebra& a)
{
  Vector tau(a.dim());
  for (Eigen::Index k = 0; k < a.dim(); ++k) {
    Complex t = 0.0;
    const auto& l = a.left(k);
    for (Eigen::Index c = 0; c < l.outerSize(); ++c)
      for (SparseMatrix::InnerIterator it(l, c); it; ++it)
        if (it.row() == it.col())
          t += it.value();
    tau(k) = t;
  }
  return tau;
}

/// W(k, m) = Tr L_{e_k e_m}.
Matrix trace_form(const StarAlgebra& a)
{
  const Vector tau = trace_vector(a);
  Matrix w(a.dim(), a.dim());
  for (Eigen::Index k = 0; k < a.dim(); ++k)
    w.row(k) = (tau.transpose() * a.left(k));
  return w;
}

} // namespace

Representation regular_representation(const StarAlgebra& a, double tol, std::uint64_t seed)
{
  Representation rep;
  rep.algebra_ = a;
  const auto n = a.dim();
  rep.size_ = n;
  if (n == 0) {
    rep.faithful_ = true;
    return rep;
  }
  Matrix gram = a.star().transpose() * trace_form(a);
  const double herm = max_abs_diff(gram, gram.adjoint());
  rep.report_.record("gram-hermitian", herm);
  if (herm > tol * std::max(1.0, gram.cwiseAbs().maxCoeff()))
    rep.report_.fail("gram-hermitian", "trace form is not Hermitian", herm);
  gram = (gram + gram.adjoint()) / 2.0;
  Eigen::SelfAdjointEigenSolver<Matrix> es(gram, Eigen::EigenvaluesOnly);
  const auto& ev = es.eigenvalues();
  rep.min_gram_eig_ = ev(0);
  const double scale = std::max(1.0, ev.cwiseAbs().maxCoeff());
  rep.faithful_ = !rep.report_.failed("gram-hermitian") && ev(0) > tol * scale;
  rep.report_.record("faithful");
  if (!rep.faithful_) {
    rep.report_.fail("faithful", "trace form is not positive definite, smallest eigenvalue " + fmt(ev(0)));
    rep.r_ = Matrix::Identity(n, n);
    rep.r_inv_ = Matrix::Identity(n, n);
    return rep;
  }
  Eigen::LLT<Matrix> llt(gram);
  rep.r_ = llt.matrixU();
  rep.r_inv_ = llt.matrixU().solve(Matrix::Identity(n, n));

  // entries scale with the basis; compare relative to the largest image
  Rng rng(seed);
  auto check = [&](const char* name, const Matrix& lhs, const Matrix& rhs, const std::string& at) {
    const double s = std::max(1.0, std::max(lhs.cwiseAbs().maxCoeff(), rhs.cwiseAbs().maxCoeff()));
    const double r = max_abs_diff(lhs, rhs) / s;
    if (r > tol)
      rep.report_.fail(name, at, r);
    else
      rep.report_.record(name, r);
  };
  const Eigen::Index basis_checks = std::min<Eigen::Index>(n, 48);
  for (Eigen::Index i = 0; i < basis_checks; ++i)
    check("star-preserving", rep.image(a.star().col(i)), rep.basis_image(i).adjoint(), "basis " + a.basis_name(i));
  for (int trial = 0; trial < 4; ++trial) {
    const Vector x = random_vector(rng, n);
    const Vector y = random_vector(rng, n);
    check("multiplicative", rep.image(a.multiply(x, y)), rep.image(x) * rep.image(y),
          "random pair " + std::to_string(trial));
    check("star-preserving", rep.image(a.adjoint(x)), rep.image(x).adjoint(), "random " + std::to_string(trial));
  }
  return rep;
}

std::string to_string(SplitStatus s)
{
  switch (s) {
  case SplitStatus::ok: return "ok";
  case SplitStatus::indeterminate: return "indeterminate";
  case SplitStatus::not_semisimple: return "not-semisimple";
  }
  return "?";
}

Matrix center_basis(const StarAlgebra& a, double tol)
{
  const auto n = a.dim();
  if (n == 0)
    return Matrix(0, 0);
  // right multiplication R_j: column k is e_k e_j = L_k(:, j)
  std::vector<std::vector<Eigen::Triplet<Complex>>> right(static_cast<std::size_t>(n));
  for (Eigen::Index k = 0; k < n; ++k) {
    const auto& l = a.left(k);
    for (Eigen::Index j = 0; j < l.outerSize(); ++j)
      for (SparseMatrix::InnerIterator it(l, j); it; ++it)
        right[static_cast<std::size_t>(it.col())].emplace_back(it.row(), k, it.value());
  }
  Matrix acc = Matrix::Zero(n, n);
  for (Eigen::Index j = 0; j < n; ++j) {
    const SparseMatrix m = a.left(j) - sparse_from(n, right[static_cast<std::size_t>(j)]);
    acc += Matrix(m.adjoint() * m);
  }
  return psd_kernel(acc, tol);
}

Eigen::Index radical_dimension(const StarAlgebra& a, double tol)
{
  return a.dim() - numerical_rank(trace_form(a), tol);
}

namespace {

bool perfect_square(std::size_t m, int& root)
{
  const auto r = static_cast<int>(std::lround(std::sqrt(static_cast<double>(m))));
  root = r;
  return static_cast<std::size_t>(r) * static_cast<std::size_t>(r) == m;
}

} // namespace

std::optional<Vector> unit_element(const StarAlgebra& a, double tol)
{
  const Eigen::Index n = a.dim();
  if (n == 0)
    return Vector(0);
  // e with e_j-th column of L_e equal to e_j: Σ_i e_i L_i e_j = e_j for all j
  Matrix sys(n * n, n);
  Vector rhs = Vector::Zero(n * n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const Matrix li(a.left(i));
    for (Eigen::Index j = 0; j < n; ++j)
      sys.block(j * n, i, n, 1) = li.col(j);
  }
  for (Eigen::Index j = 0; j < n; ++j)
    rhs(j * n + j) = 1.0;
  const Vector e = sys.colPivHouseholderQr().solve(rhs);
  if (max_abs_diff(sys * e, rhs) > tol)
    return std::nullopt;
  const Matrix re = [&] {
    Matrix r(n, n);
    for (Eigen::Index j = 0; j < n; ++j)
      r.col(j) = a.multiply(a.basis(j), e);
    return r;
  }();
  if (max_abs_diff(re, Matrix::Identity(n, n)) > tol)
    return std::nullopt;
  return e;
}

StarStructureReport star_structure_report(const StarAlgebra& a, double tol, std::uint64_t seed,
                                          const SplitParameters& params)
{
  StarStructureReport out;
  out.dimension = a.dim();
  out.seed = seed;
  if (a.dim() == 0) {
    out.faithful = out.is_cstar = true;
    return out;
  }
  out.radical_dimension = radical_dimension(a, tol);
  const Matrix z = center_basis(a, tol);
  out.center_dimension = z.cols();
  const Representation pi = regular_representation(a, tol, seed);
  out.faithful = pi.faithful();
  out.min_gram_eigenvalue = pi.min_gram_eigenvalue();
  out.is_cstar = out.radical_dimension == 0 && out.faithful && pi.report().ok();
  for (const auto& f : pi.report().failures())
    out.notes.push_back("representation [" + f.check + "] " + f.witness);
  for (Eigen::Index i = 0; i < std::min(a.dim(), params.max_norms); ++i)
    out.generator_norms.push_back(pi.norm(a.basis(i)));

  if (!out.is_cstar) {
    out.status = SplitStatus::not_semisimple;
    out.notes.push_back("no Wedderburn splitting: not certified as a C*-algebra");
    return out;
  }
  const auto k = static_cast<std::size_t>(z.cols());
  Rng rng(seed);
  std::uniform_real_distribution<double> coeff(-1.0, 1.0);
  for (int attempt = 1; attempt <= params.max_attempts; ++attempt) {
    out.attempts = attempt;
    Vector r(z.cols());
    for (Eigen::Index i = 0; i < r.size(); ++i)
      r(i) = Complex(coeff(rng), coeff(rng));
    const Vector c = z * r;
    const Vector h = c + a.adjoint(c);
    Matrix ph = pi.image(h);
    ph = (ph + ph.adjoint()) / 2.0;
    Eigen::SelfAdjointEigenSolver<Matrix> es(ph, Eigen::EigenvaluesOnly);
    std::vector<double> ev(es.eigenvalues().data(), es.eigenvalues().data() + es.eigenvalues().size());
    const double scale = std::max(1.0, std::max(std::abs(ev.front()), std::abs(ev.back())));
    // split at the k-1 widest gaps
    std::vector<std::size_t> order(ev.size() - 1);
    for (std::size_t i = 0; i + 1 < ev.size(); ++i)
      order[i] = i;
    std::sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
      const double gx = ev[x + 1] - ev[x], gy = ev[y + 1] - ev[y];
      return gx != gy ? gx > gy : x < y;
    });
    std::vector<std::size_t> cuts(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(k - 1));
    std::sort(cuts.begin(), cuts.end());
    double min_gap = scale;
    for (auto cpos : cuts)
      min_gap = std::min(min_gap, ev[cpos + 1] - ev[cpos]);
    double max_spread = 0.0;
    std::vector<int> blocks;
    bool squares = true;
    std::size_t start = 0;
    for (std::size_t ci = 0; ci <= cuts.size(); ++ci) {
      const std::size_t end = ci < cuts.size() ? cuts[ci] + 1 : ev.size();
      max_spread = std::max(max_spread, ev[end - 1] - ev[start]);
      int root = 0;
      squares = squares && perfect_square(end - start, root);
      blocks.push_back(root);
      start = end;
    }
    const bool gap_ok = k == 1 || min_gap >= params.min_relative_gap * scale;
    const bool spread_ok = k == 1 ? max_spread <= params.min_relative_gap * scale
                                  : max_spread <= params.max_spread_ratio * min_gap;
    if (gap_ok && spread_ok && squares) {
      std::sort(blocks.begin(), blocks.end());
      out.blocks = std::move(blocks);
      out.status = SplitStatus::ok;
      return out;
    }
    out.notes.push_back("attempt " + std::to_string(attempt) + " rejected: gap " + fmt(min_gap) + ", spread " +
                        fmt(max_spread) + (squares ? "" : ", non-square cluster"));
  }
  out.status = SplitStatus::indeterminate;
  return out;
}

std::string StarStructureReport::to_string() const
{
  std::ostringstream os;
  os << "dimension " << dimension << ", radical " << radical_dimension << ", center " << center_dimension
     << ", blocks [";
  for (std::size_t i = 0; i < blocks.size(); ++i)
    os << (i ? "," : "") << blocks[i];
  os << "], C* " << (is_cstar ? "yes" : "no") << ", split " << groupoidal::to_string(status) << " (seed " << seed
     << ", attempts " << attempts << ")";
  return os.str();
}

ValidationReport check_algebra_homomorphism(const StarAlgebra& a, const StarAlgebra& b, const Matrix& phi,
                                            bool require_bijective, double tol)
{
  ValidationReport rep;
  rep.record("multiplicative");
  rep.record("star-preserving");
  if (phi.rows() != b.dim() || phi.cols() != a.dim()) {
    rep.fail("shape", "map has shape " + std::to_string(phi.rows()) + "x" + std::to_string(phi.cols()));
    return rep;
  }
  for (Eigen::Index i = 0; i < a.dim(); ++i) {
    const Vector pi = phi.col(i);
    const Matrix lpi = b.left_matrix(pi);
    const Matrix lhs = phi * Matrix(a.left(i));
    const Matrix rhs = lpi * phi;
    const double r = max_abs_diff(lhs, rhs);
    if (r > tol)
      rep.fail("multiplicative", "φ(e_i e_j) != φ(e_i) φ(e_j) for e_i = " + a.basis_name(i), r);
    else
      rep.record("multiplicative", r);
    const double r2 = max_abs_diff(phi * a.star().col(i), b.adjoint(pi));
    if (r2 > tol)
      rep.fail("star-preserving", "φ(e_i*) != φ(e_i)* for e_i = " + a.basis_name(i), r2);
    else
      rep.record("star-preserving", r2);
  }
  if (require_bijective) {
    rep.record("bijective");
    if (a.dim() != b.dim() || numerical_rank(phi, tol) != a.dim())
      rep.fail("bijective", "map is not invertible");
  }
  return rep;
}

ValidationReport check_algebra_action(const AlgebraAction& a, double tol)
{
  ValidationReport rep;
  const auto& g = a.group;
  const auto n = a.algebra.dim();
  if (a.maps.size() != g.order()) {
    rep.fail("shape", "one map per group element expected");
    return rep;
  }
  for (ElementIndex t = 0; t < static_cast<ElementIndex>(g.order()); ++t) {
    const auto r = check_algebra_homomorphism(a.algebra, a.algebra, a.maps[t], true, tol);
    rep.merge(r, "automorphism/");
  }
  rep.record("identity");
  if (const double r = max_abs_diff(a.maps[g.identity()], Matrix::Identity(n, n)); r > tol)
    rep.fail("identity", "e does not act trivially", r);
  rep.record("group-law");
  for (ElementIndex s = 0; s < static_cast<ElementIndex>(g.order()); ++s)
    for (ElementIndex t = 0; t < static_cast<ElementIndex>(g.order()); ++t) {
      // left: s·(t·a) = (st)·a; right: (a·s)·t = a·(st)
      const Matrix lhs = a.side == Side::left ? Matrix(a.maps[s] * a.maps[t]) : Matrix(a.maps[t] * a.maps[s]);
      const double r = max_abs_diff(lhs, a.maps[g.mul(s, t)]);
      if (r > tol)
        rep.fail("group-law", "at (" + g.name(s) + ", " + g.name(t) + ")", r);
      else
        rep.record("group-law", r);
    }
  return rep;
}

StarAlgebra crossed_product_by_action(const AlgebraAction& a)
{
  if (a.side != Side::left)
    throw PreconditionError("crossed_product_by_action: expected a left action");
  const auto& g = a.group;
  const auto& A = a.algebra;
  const auto n = A.dim();
  const auto m = static_cast<Eigen::Index>(g.order());
  const Eigen::Index dim = n * m;
  auto idx = [m](Eigen::Index i, Eigen::Index s) { return i * m + s; };
  std::vector<SparseMatrix> left;
  std::vector<std::string> names;
  Matrix star = Matrix::Zero(dim, dim);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index s = 0; s < m; ++s) {
      std::vector<Eigen::Triplet<Complex>> t;
      const SparseMatrix& li = A.left(i);
      for (Eigen::Index b = 0; b < n; ++b) {
        // e_i α_s(e_b)
        const Vector prod = li * a.maps[static_cast<std::size_t>(s)].col(b);
        for (Eigen::Index tt = 0; tt < m; ++tt) {
          const Eigen::Index st = g.mul(static_cast<ElementIndex>(s), static_cast<ElementIndex>(tt));
          for (Eigen::Index c = 0; c < n; ++c)
            if (prod(c) != Complex(0.0))
              t.emplace_back(idx(c, st), idx(b, tt), prod(c));
        }
      }
      left.push_back(sparse_from(dim, t));
      const Eigen::Index si = g.inv(static_cast<ElementIndex>(s));
      const Vector v = a.maps[static_cast<std::size_t>(si)] * A.star().col(i);
      for (Eigen::Index c = 0; c < n; ++c)
        star(idx(c, si), idx(i, s)) = v(c);
      names.push_back("(" + A.basis_name(i) + "," + g.name(static_cast<ElementIndex>(s)) + ")");
    }
  return {std::move(left), std::move(star), std::move(names), "crossed product of " + A.provenance()};
}

StarAlgebra crossed_product_by_right_action(const AlgebraAction& a)
{
  if (a.side != Side::right)
    throw PreconditionError("crossed_product_by_right_action: expected a right action");
  const auto& g = a.group;
  const auto& A = a.algebra;
  const auto n = A.dim();
  const auto m = static_cast<Eigen::Index>(g.order());
  const Eigen::Index dim = n * m;
  auto idx = [n](Eigen::Index s, Eigen::Index i) { return s * n + i; };
  std::vector<SparseMatrix> left;
  std::vector<std::string> names;
  Matrix star = Matrix::Zero(dim, dim);
  for (Eigen::Index s = 0; s < m; ++s)
    for (Eigen::Index i = 0; i < n; ++i) {
      std::vector<Eigen::Triplet<Complex>> t;
      for (Eigen::Index tt = 0; tt < m; ++tt) {
        // (e_i · t) e_b
        const Matrix lf = A.left_matrix(a.maps[static_cast<std::size_t>(tt)].col(i));
        const Eigen::Index st = g.mul(static_cast<ElementIndex>(s), static_cast<ElementIndex>(tt));
        for (Eigen::Index b = 0; b < n; ++b)
          for (Eigen::Index c = 0; c < n; ++c)
            if (lf(c, b) != Complex(0.0))
              t.emplace_back(idx(st, c), idx(tt, b), lf(c, b));
      }
      left.push_back(sparse_from(dim, t));
      const Eigen::Index si = g.inv(static_cast<ElementIndex>(s));
      const Vector v = a.maps[static_cast<std::size_t>(si)] * A.star().col(i);
      for (Eigen::Index c = 0; c < n; ++c)
        star(idx(si, c), idx(s, i)) = v(c);
      names.push_back("(" + g.name(static_cast<ElementIndex>(s)) + "," + A.basis_name(i) + ")");
    }
  return {std::move(left), std::move(star), std::move(names), "right crossed product of " + A.provenance()};
}

StarAlgebra matrix_algebra(int n)
{
  if (n < 1)
    throw PreconditionError("matrix_algebra: size must be positive");
  const Eigen::Index d = static_cast<Eigen::Index>(n) * n;
  std::vector<SparseMatrix> left;
  std::vector<std::string> names;
  Matrix star = Matrix::Zero(d, d);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      std::vector<Eigen::Triplet<Complex>> t;
      for (int l = 0; l < n; ++l)
        t.emplace_back(i * n + l, j * n + l, 1.0);
      left.push_back(sparse_from(d, t));
      star(j * n + i, i * n + j) = 1.0;
      names.push_back("E" + std::to_string(i + 1) + std::to_string(j + 1));
    }
  return {std::move(left), std::move(star), std::move(names), "M" + std::to_string(n)};
}

StarAlgebra diagonal_algebra(int n)
{
  if (n < 1)
    throw PreconditionError("diagonal_algebra: size must be positive");
  std::vector<SparseMatrix> left;
  std::vector<std::string> names;
  for (int i = 0; i < n; ++i) {
    left.push_back(sparse_from(n, {Eigen::Triplet<Complex>(i, i, 1.0)}));
    names.push_back("p" + std::to_string(i + 1));
  }
  return {std::move(left), Matrix::Identity(n, n), std::move(names), "C^" + std::to_string(n)};
}

StarAlgebra group_algebra(const FiniteGroup& g)
{
  const auto n = static_cast<Eigen::Index>(g.order());
  std::vector<SparseMatrix> left;
  std::vector<std::string> names;
  Matrix star = Matrix::Zero(n, n);
  for (ElementIndex s = 0; s < static_cast<ElementIndex>(n); ++s) {
    std::vector<Eigen::Triplet<Complex>> t;
    for (ElementIndex u = 0; u < static_cast<ElementIndex>(n); ++u)
      t.emplace_back(g.mul(s, u), u, 1.0);
    left.push_back(sparse_from(n, t));
    star(g.inv(s), s) = 1.0;
    names.push_back("δ" + g.name(s));
  }
  return {std::move(left), std::move(star), std::move(names), "group algebra"};
}

StarAlgebra dual_numbers()
{
  std::vector<SparseMatrix> left;
  left.push_back(sparse_from(2, {{0, 0, 1.0}, {1, 1, 1.0}}));
  left.push_back(sparse_from(2, {{1, 0, 1.0}}));
  return {std::move(left), Matrix::Identity(2, 2), {"1", "ε"}, "dual numbers"};
}

StarAlgebra direct_sum(const StarAlgebra& a, const StarAlgebra& b)
{
  const Eigen::Index n = a.dim() + b.dim();
  std::vector<SparseMatrix> left;
  std::vector<std::string> names;
  auto embed = [&](const SparseMatrix& m, Eigen::Index off) {
    std::vector<Eigen::Triplet<Complex>> t;
    for (Eigen::Index c = 0; c < m.outerSize(); ++c)
      for (SparseMatrix::InnerIterator it(m, c); it; ++it)
        t.emplace_back(it.row() + off, it.col() + off, it.value());
    return sparse_from(n, t);
  };
  for (Eigen::Index i = 0; i < a.dim(); ++i) {
    left.push_back(embed(a.left(i), 0));
    names.push_back(a.basis_name(i));
  }
  for (Eigen::Index i = 0; i < b.dim(); ++i) {
    left.push_back(embed(b.left(i), a.dim()));
    names.push_back(b.basis_name(i) + "'");
  }
  Matrix star = Matrix::Zero(n, n);
  star.topLeftCorner(a.dim(), a.dim()) = a.star();
  star.bottomRightCorner(b.dim(), b.dim()) = b.star();
  return {std::move(left), std::move(star), std::move(names), a.provenance() + " + " + b.provenance()};
}

} // namespace groupoidal
