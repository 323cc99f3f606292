#pragma once

#include <vector>

#include "groupoidal/bundle_constructions.hpp"
#include "groupoidal/equivalence.hpp"

namespace groupoidal {

/// A Fell-bundle equivalence carrier: a bundle E over the points Z of a
/// groupoid equivalence, with module actions of the Fell bundles over P
/// and Q and their bundle-valued inner products.
///
/// Tables are indexed [p * |Z| + z], [q * |Z| + z] and [z1 * |Z| + z2].
/// `left_action` maps A_P(p) ⊗ E(z) → E(p·z), `right_action` maps
/// E(z) ⊗ A_Q(q) → E(z·q). `left_inner` maps E(z1) ⊗ conj E(z2) into
/// A_P at `left_inner_target`, `right_inner` maps conj E(z1) ⊗ E(z2)
/// into A_Q at `right_inner_target`; both are empty off their domains.
struct BundleEquivalence {
  GroupoidEquivalence base;
  FellBundle p_bundle;
  FellBundle q_bundle;
  std::vector<int> dims;
  std::vector<Matrix> left_action;
  std::vector<Matrix> right_action;
  std::vector<Matrix> left_inner;
  std::vector<Matrix> right_inner;
  std::vector<ArrowIndex> left_inner_target;
  std::vector<ArrowIndex> right_inner_target;

  std::size_t num_points() const { return dims.size(); }
  std::size_t pair(std::size_t a, std::size_t z) const { return a * dims.size() + z; }

  BundleModule left_module() const { return {base.left, dims, left_action}; }
  BundleModule right_module() const { return {base.right, dims, right_action}; }

  /// _L⟨a, b⟩ and ⟨a, b⟩_R as vectors in the target fiber.
  Vector left_inner_product(PointIndex z1, const Vector& a, PointIndex z2, const Vector& b) const;
  Vector right_inner_product(PointIndex z1, const Vector& a, PointIndex z2, const Vector& b) const;
};

/// Everything built on the way to the symmetric equivalence.
struct SymmetricBundleData {
  SymmetricGroupoidData groupoids;
  QuotientBundle by_h;            ///< A/H
  QuotientBundle by_g;            ///< G\A
  BundleAction g_on_quotient;     ///< induced G-action on A/H
  BundleAction h_on_quotient;     ///< induced H-action on G\A
  SemidirectBundle p;             ///< (A/H) ⋊ G
  SemidirectBundle q;             ///< H ⋉ (G\A)
  BundleEquivalence equivalence;
};

/// A as an equivalence between (A/H) ⋊ G and H ⋉ (G\A). Throws
/// PreconditionError if the actions are invalid, not free, on different
/// bundles or do not commute at the fiber level.
SymmetricBundleData symmetric_action_data(const BundleAction& g, const BundleAction& h, double tol = kDefaultTolerance);
BundleEquivalence symmetric_action_equivalence(const BundleAction& g, const BundleAction& h,
                                               double tol = kDefaultTolerance);
/// The module action of (A/H) ⋊ G on A, (a·H, t)·b = (a·h)(t·b) with the
/// representative a·h chosen so that s(a)·h = t·r(b).
BundleModule semidirect_orbit_bundle_action(const BundleAction& g, const BundleAction& h,
                                            double tol = kDefaultTolerance);

/// The trivial right action used for one-sided constructions.
BundleAction trivial_right_action(const FellBundle& a);

/// A as an equivalence between A ⋊ G and G\A (H trivial). The right
/// module is a·(G·b) = a(t·b) with s(a) = t·r(b).
BundleEquivalence one_sided_equivalence(const BundleAction& g, double tol = kDefaultTolerance);

/// B∗Ω as an equivalence between (B∗Ω) ⋊ G and B, for G acting on Ω
/// (a group acting on a set, left) with the ρ-fibers as free orbits and
/// commuting with the B-base action `act`. The orbit bundle G\(B∗Ω) is
/// identified with B through (y, u) ↦ y and the identification is checked.
struct TransformationEquivalence {
  TransformationBundle transformation;
  BundleAction g;
  BundleEquivalence equivalence;
};
TransformationEquivalence one_sided_transformation_data(const FellBundle& b, const SpaceAction& act,
                                                        const SpaceAction& gact, double tol = kDefaultTolerance);
BundleEquivalence one_sided_transformation_equivalence(const FellBundle& b, const SpaceAction& act,
                                                       const SpaceAction& gact, double tol = kDefaultTolerance);

/// Exhaustive check of the six equivalence steps. Check names start with
/// "step1-" (commuting actions and module axioms), "step2-" (inner-product
/// targets project to the brackets), "step3-" (adjoint symmetry),
/// "step4-" (inner products are module maps), "step5-" (exchange
/// identity) and "step6-" (fullness and positivity per unit fiber).
/// Base-level groupoid checks appear under "base/".
ValidationReport verify_bundle_equivalence(const BundleEquivalence& e, double tol = kDefaultTolerance,
                                           std::uint64_t seed = 0);

} // namespace groupoidal
