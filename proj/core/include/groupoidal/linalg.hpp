#pragma once

#include <complex>
#include <cstdint>
#include <random>

#include <Eigen/Dense>
#include <Eigen/Sparse>

namespace groupoidal {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using SparseMatrix = Eigen::SparseMatrix<Complex>;
using Rng = std::mt19937_64;

/// Kronecker product with the row-major index convention (i, j) -> i*dim(b) + j.
Matrix kron(const Matrix& a, const Matrix& b);
Vector kron(const Vector& a, const Vector& b);

/// Entrywise max |a - b|; +inf on shape mismatch.
double max_abs_diff(const Matrix& a, const Matrix& b);

/// Seeded vector with entries uniform in the unit square of ℂ, centred at 0.
Vector random_vector(Rng& rng, Eigen::Index n);

/// Orthonormal basis of the kernel of a Hermitian PSD matrix, eigenvalues
/// below `rel_tol * max(1, λmax)` counting as zero.
Matrix psd_kernel(const Matrix& hermitian, double rel_tol);

/// Numerical rank via singular values above `tol * max(1, σmax)`.
Eigen::Index numerical_rank(const Matrix& m, double tol);

} // namespace groupoidal
