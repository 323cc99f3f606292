#pragma once

#include <span>
#include <vector>

#include "groupoidal/constructions.hpp"
#include "groupoidal/linalg.hpp"
#include "groupoidal/star_algebra.hpp"

namespace groupoidal {

/// A Fell bundle with finite-dimensional fibers over a finite groupoid.
///
/// `mult(x, y)` is the matrix of A(x) ⊗ A(y) → A(xy), columns indexed
/// i*dim(y) + j; it is empty when x, y are not composable. `star(x)` is
/// the matrix S_x with a* = S_x conj(a) ∈ A(x⁻¹).
class FellBundle {
public:
  FellBundle() = default;
  /// `mult` has |arrows|² entries indexed x*|arrows| + y.
  FellBundle(FiniteGroupoid base, std::vector<int> dims, std::vector<Matrix> mult, std::vector<Matrix> star);

  const FiniteGroupoid& base() const { return base_; }
  int dim(ArrowIndex x) const { return dims_[static_cast<std::size_t>(x)]; }
  const std::vector<int>& dims() const { return dims_; }
  const Matrix& mult(ArrowIndex x, ArrowIndex y) const { return mult_[index(x, y)]; }
  const Matrix& star(ArrowIndex x) const { return star_[static_cast<std::size_t>(x)]; }
  /// Offset of A(x) in the concatenation of all fibers.
  Eigen::Index offset(ArrowIndex x) const { return offsets_[static_cast<std::size_t>(x)]; }
  Eigen::Index total_dim() const { return offsets_.back(); }

  Vector multiply(ArrowIndex x, const Vector& a, ArrowIndex y, const Vector& b) const
  { return mult(x, y) * kron(a, b); }
  Vector adjoint(ArrowIndex x, const Vector& a) const { return star(x) * a.conjugate(); }

  FellBundle with_star(ArrowIndex x, Matrix s) const;
  FellBundle with_mult(ArrowIndex x, ArrowIndex y, Matrix m) const;

private:
  std::size_t index(ArrowIndex x, ArrowIndex y) const
  { return static_cast<std::size_t>(x) * base_.num_arrows() + static_cast<std::size_t>(y); }

  FiniteGroupoid base_;
  std::vector<int> dims_;
  std::vector<Matrix> mult_;
  std::vector<Matrix> star_;
  std::vector<Eigen::Index> offsets_{0};
};

/// Shapes, dim(x) = dim(x⁻¹), associativity on all composable triples,
/// a** = a and (ab)* = b*a*, all entrywise to `tol`.
ValidationReport validate_fell_bundle(const FellBundle& b, double tol = kDefaultTolerance);

/// Every fiber ℂ with scalar multiplication and conjugation.
FellBundle trivial_line_bundle(const FiniteGroupoid& g);

/// Fiber over x is M_{d(r(x)) × d(s(x))} with matrix product and
/// conjugate transpose; E_ab sits at index a*d(s) + b.
FellBundle matrix_bundle(const FiniteGroupoid& g, std::span<const int> unit_dims);

/// B × X over the unit groupoid on `points`, every fiber B. Throws if B
/// is not certified as a C*-algebra.
FellBundle make_trivial_cbundle(const StarAlgebra& b, std::vector<std::string> points, double tol = kDefaultTolerance);

/// Fiber over y is A(f(y)). Throws if `f` is not a homomorphism dom → base.
FellBundle pullback_bundle(const FiniteGroupoid& dom, std::span<const ArrowIndex> f, const FellBundle& a);

struct TransformationBundle {
  TransformationGroupoid base;
  FellBundle bundle;
};

/// Fibers A(x) at (x, u); (a, y·u)(b, u) = (ab, u) and (a, u)* = (a*, x·u).
TransformationBundle transformation_fell_bundle(const FellBundle& a, const SpaceAction& act);

/// The *-algebra A(u) on the unit fiber at u.
StarAlgebra fiber_algebra(const FellBundle& b, UnitIndex u);

} // namespace groupoidal
