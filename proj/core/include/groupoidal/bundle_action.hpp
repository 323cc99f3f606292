#pragma once

#include <vector>

#include "groupoidal/fell_bundle.hpp"

namespace groupoidal {

/// A finite group acting on a Fell bundle by automorphisms covering an
/// action on the base. `map(t, x)` is the matrix of A(x) → A(t·x) (left)
/// or A(x) → A(x·t) (right).
class BundleAction {
public:
  BundleAction() = default;
  /// `maps[t * |arrows| + x]`.
  BundleAction(FellBundle bundle, GroupAction base_action, std::vector<Matrix> maps);

  const FellBundle& bundle() const { return bundle_; }
  const GroupAction& base_action() const { return base_; }
  const FiniteGroup& group() const { return base_.group(); }
  Side side() const { return base_.side(); }

  const Matrix& map(ElementIndex t, ArrowIndex x) const { return maps_[index(t, x)]; }
  Vector act(ElementIndex t, ArrowIndex x, const Vector& a) const { return map(t, x) * a; }

  BundleAction with_map(ElementIndex t, ArrowIndex x, Matrix m) const;

private:
  std::size_t index(ElementIndex t, ArrowIndex x) const
  { return static_cast<std::size_t>(t) * bundle_.base().num_arrows() + static_cast<std::size_t>(x); }

  FellBundle bundle_;
  GroupAction base_;
  std::vector<Matrix> maps_;
};

/// Base action axioms, shapes (p(t·a) = t·p(a)), multiplicativity,
/// *-preservation, group law, identity, and isometry: ‖t·a‖ = ‖a‖ with
/// ‖a‖² = ‖a*a‖ measured in the regular representation of the unit
/// fiber, on basis vectors and seeded random vectors.
ValidationReport check_bundle_action(const BundleAction& a, double tol = kDefaultTolerance, std::uint64_t seed = 0);

/// Freeness of the bundle action means freeness of the base action.
bool is_free_bundle_action(const BundleAction& a);

/// Identity fiber maps. Suitable when the fiber structure is constant on
/// orbits (line bundles, transformation bundles moved along Ω).
BundleAction lift_action(const FellBundle& b, const GroupAction& base_action);

/// The same fiber map `per_element[t]` on every fiber (e.g. σ_t on B × X).
BundleAction uniform_action(const FellBundle& b, const GroupAction& base_action, const std::vector<Matrix>& per_element);

/// On a matrix bundle, a ↦ W(t, r(x)) a W(t, s(x))* with `unitaries[t * |units| + u]`
/// of shape d(t·u) × d(u).
BundleAction unitary_action(const FellBundle& matrix_bundle, std::span<const int> unit_dims,
                            const GroupAction& base_action, const std::vector<Matrix>& unitaries);

} // namespace groupoidal
