#pragma once

#include <vector>

#include "groupoidal/bundle_constructions.hpp"
#include "groupoidal/star_algebra.hpp"

namespace groupoidal {

/// Γ(A) with convolution (f∗g)(x) = Σ_{r(y)=r(x)} f(y) g(y⁻¹x) and
/// f*(x) = f(x⁻¹)*, counting measure. Basis element i of A(x) sits at
/// b.offset(x) + i.
StarAlgebra section_algebra(const FellBundle& b);

/// The same convolution evaluated directly on section vectors.
Vector convolve(const FellBundle& b, const Vector& f, const Vector& g);
Vector section_adjoint(const FellBundle& b, const Vector& f);

/// The action on Γ(A) induced by a bundle action: (t·f)(t·x) = T_t(x) f(x),
/// resp. (f·t)(x·t) = T_t(x) f(x).
AlgebraAction section_action(const BundleAction& a);

/// Γ(A ⋊ G), resp. Γ(G ⋉ A) for a right action.
StarAlgebra crossed_product(const BundleAction& a);

/// The basis bijection Γ(A ⋊ G) → Γ(A) ⋊ G sending a ∈ A(x) at (x, s) to
/// (a, s); columns are images of basis elements. The right-hand side is
/// crossed_product_by_action(section_action(a)), or the right version.
Matrix crossed_product_identification(const BundleAction& a);

/// Functions f: X → B with f(t·x) = σ_t(f(x)) (left) or
/// f(x·h) = τ_h⁻¹(f(x)) (right), with pointwise operations, identified
/// with Γ of the orbit bundle of B × X under the diagonal action.
struct InducedAlgebra {
  StarAlgebra algebra;
  /// Columns: basis functions as vectors in B^X, point-major.
  Matrix embedding;
  /// Evaluation at orbit representatives, a left inverse of `embedding`.
  Matrix restriction;
  FellBundle trivial;        ///< B × X
  BundleAction diagonal;     ///< σ_t resp. τ_h⁻¹ on fibers
  QuotientBundle quotient;
  StarAlgebra sections;      ///< Γ(quotient)
  /// θ(f)(x·H) = C_x f(x) as a matrix algebra → sections.
  Matrix theta;
};

/// `on_x` is a group acting freely on the points of X (group_set_action),
/// `on_b` a left action of the same group on B by *-automorphisms.
/// Throws PreconditionError for a non-free action or a non-C* B.
InducedAlgebra induced_algebra(const StarAlgebra& b, const SpaceAction& on_x, const AlgebraAction& on_b,
                               double tol = kDefaultTolerance);

/// θ checked as a bijective *-homomorphism.
ValidationReport verify_induced_algebra(const InducedAlgebra& ind, double tol = kDefaultTolerance);

/// The induced action of a second group on Ind: (t·f)(x) = σ_t(f(t⁻¹·x))
/// for a left action, (f·h)(x) = τ_h⁻¹(f(x·h⁻¹)) for a right one. The
/// actions on X and B must commute with those defining `ind`.
AlgebraAction induced_action(const InducedAlgebra& ind, const SpaceAction& on_x, const AlgebraAction& on_b);

} // namespace groupoidal
