#pragma once

#include <vector>

#include "groupoidal/bundle_action.hpp"
#include "groupoidal/principal.hpp"

namespace groupoidal {

/// A ⋊ G over X ⋊ G (left) or G ⋉ A over G ⋉ X (right), fibers A(x) at (x, t).
struct SemidirectBundle {
  SemidirectGroupoid base;
  FellBundle bundle;
};

/// (a, s)(b, t) = (a (s·b), st) and (a, s)* = (s⁻¹·a*, s⁻¹).
SemidirectBundle semidirect_fell_bundle(const BundleAction& left);
/// (s, a)(t, b) = (st, (a·t) b) and (s, a)* = (s⁻¹, a*·s⁻¹).
SemidirectBundle semidirect_right_fell_bundle(const BundleAction& right);

/// Orbit bundle of a free action. The fiber over an orbit is the fiber
/// over its representative; `class_maps[x]` is the identification
/// C_x = T_k(x) : A(x) → A(rep) with k moving x to the representative.
struct QuotientBundle {
  Quotient base;
  FellBundle bundle;
  std::vector<Matrix> class_maps;
};

/// Throws PreconditionError (with the fixed pair) for a non-free action.
QuotientBundle quotient_fell_bundle(const BundleAction& free_action);

/// The action of a commuting bundle action on the orbit bundle:
/// T'_t(O) = C_{t·x} T_t(x) with x the representative of O.
BundleAction quotient_induced_bundle_action(const BundleAction& g, const QuotientBundle& q);

/// A bundle E over a set Z acted on by a Fell bundle A over the groupoid
/// of `base`. Left: `tensor(x, z)` is A(x) ⊗ E(z) → E(x·z). Right:
/// E(z) ⊗ A(x) → E(z·x). Undefined pairs hold empty matrices.
struct BundleModule {
  SpaceAction base;
  std::vector<int> dims;
  std::vector<Matrix> tensors;

  const Matrix& tensor(ArrowIndex x, PointIndex z) const
  { return tensors[static_cast<std::size_t>(x) * base.num_points() + static_cast<std::size_t>(z)]; }
  Vector act(ArrowIndex x, const Vector& a, PointIndex z, const Vector& e) const;
};

/// Base action axioms, shapes and associativity (ab)·e = a·(b·e), resp.
/// e·(ab) = (e·a)·b.
ValidationReport check_bundle_module(const FellBundle& a, const BundleModule& m, double tol = kDefaultTolerance);

/// A/H acting on A from the left: (a·H)·b = (a·k) b with s(a·k) = r(b).
BundleModule orbit_bundle_action(const BundleAction& h, const QuotientBundle& q);

/// A ≅ (A/H) ∗ X⁽⁰⁾ for a free right H-action, τ_x = C_x on A(x).
struct PrincipalFellDecomposition {
  PrincipalDecomposition base;
  QuotientBundle quotient;
  TransformationBundle transformation;
  /// `tau[x]` maps A(x) onto the fiber over θ_s(x), which is A(rep).
  std::vector<Matrix> tau;
};

/// Throws PreconditionError for a left or non-free action.
PrincipalFellDecomposition principal_fell_decomposition(const BundleAction& h);

/// τ covers θ_s, is fiberwise bijective, multiplicative, *-preserving and
/// H-equivariant for the trivial-fiber H-action on the transformation bundle.
ValidationReport verify_principal_fell_decomposition(const BundleAction& h, const PrincipalFellDecomposition& d,
                                                     double tol = kDefaultTolerance);

} // namespace groupoidal
