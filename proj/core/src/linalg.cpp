#include "groupoidal/linalg.hpp"

#include <limits>

namespace groupoidal {

Matrix kron(const Matrix& a, const Matrix& b)
{
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

Vector kron(const Vector& a, const Vector& b)
{
  Vector out(a.size() * b.size());
  for (Eigen::Index i = 0; i < a.size(); ++i)
    out.segment(i * b.size(), b.size()) = a(i) * b;
  return out;
}

double max_abs_diff(const Matrix& a, const Matrix& b)
{
  if (a.rows() != b.rows() || a.cols() != b.cols())
    return std::numeric_limits<double>::infinity();
  if (a.size() == 0)
    return 0.0;
  return (a - b).cwiseAbs().maxCoeff();
}

Vector random_vector(Rng& rng, Eigen::Index n)
{
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  Vector v(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const double re = u(rng);
    const double im = u(rng);
    v(i) = Complex(re, im);
  }
  return v;
}

Matrix psd_kernel(const Matrix& hermitian, double rel_tol)
{
  if (hermitian.rows() == 0)
    return Matrix(0, 0);
  Eigen::SelfAdjointEigenSolver<Matrix> es(hermitian);
  const auto& ev = es.eigenvalues();
  const double cut = rel_tol * std::max(1.0, ev.cwiseAbs().maxCoeff());
  Eigen::Index k = 0;
  while (k < ev.size() && ev(k) <= cut)
    ++k;
  return es.eigenvectors().leftCols(k);
}

Eigen::Index numerical_rank(const Matrix& m, double tol)
{
  if (m.size() == 0)
    return 0;
  Eigen::BDCSVD<Matrix> svd(m);
  const auto& s = svd.singularValues();
  const double cut = tol * std::max(1.0, s.size() ? s(0) : 0.0);
  Eigen::Index r = 0;
  for (Eigen::Index i = 0; i < s.size(); ++i)
    if (s(i) > cut)
      ++r;
  return r;
}

} // namespace groupoidal
