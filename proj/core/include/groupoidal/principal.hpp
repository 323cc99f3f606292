#pragma once

#include <vector>

#include "groupoidal/constructions.hpp"

namespace groupoidal {

/// x ≅ y ∗ x⁽⁰⁾ for a free right H-action, with y = x/H acting on x⁽⁰⁾ by
/// y·u = r(x) for the unique x in the orbit y with s(x) = u.
struct PrincipalDecomposition {
  Quotient quotient;
  SpaceAction unit_action;
  TransformationGroupoid transformation;
  /// θ_s(x) = (x·H, s(x)) as an arrow of `transformation`.
  std::vector<ArrowIndex> theta;
  /// (y, u)·h = (y, u·h) on the transformation groupoid.
  GroupAction transformation_action;
};

/// Throws PreconditionError for a non-free or left action.
PrincipalDecomposition principal_decomposition(const GroupAction& h);

/// Checks that θ_s is a bijective homomorphism, H-equivariant, and
/// intertwines ranges (θ = θ_r ∘ θ_s⁻¹ is (y,u) ↦ (y, y·u)).
ValidationReport verify_principal_decomposition(const GroupAction& h, const PrincipalDecomposition& d);

} // namespace groupoidal
