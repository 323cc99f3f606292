#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "groupoidal/bundle_equivalence.hpp"
#include "groupoidal/sections.hpp"

namespace groupoidal {

/// The linking groupoid and bundle of a bundle equivalence.
///
/// Arrows are P ⊔ Z ⊔ Z̄ ⊔ Q in that order, named "p:", "z:", "z*:",
/// "q:"; units are the P-units followed by the Q-units. The fiber over z̄
/// is the conjugate of E(z) in the same basis, so z ↦ z̄ has identity
/// star matrix. Products z1·z̄2 and z̄1·z2 are the two inner products.
struct LinkingSystem {
  BundleEquivalence equivalence;
  FiniteGroupoid groupoid;
  FellBundle bundle;
  StarAlgebra algebra;
  StarAlgebra p_corner;  ///< Γ(A_P), the first block of coordinates
  StarAlgebra q_corner;  ///< Γ(A_Q), the last block
  Vector p_projection;
  Vector q_projection;

  ArrowIndex p_arrow(ArrowIndex p) const { return p; }
  ArrowIndex z_arrow(PointIndex z) const;
  ArrowIndex zbar_arrow(PointIndex z) const;
  ArrowIndex q_arrow(ArrowIndex q) const;
};

/// Throws PreconditionError when verify_bundle_equivalence fails.
LinkingSystem linking_system(const BundleEquivalence& e, double tol = kDefaultTolerance);

/// Assembles the linking objects without verifying the equivalence first
/// (negative controls).
LinkingSystem assemble_linking_system(const BundleEquivalence& e, double tol = kDefaultTolerance);

/// Copy with the Z·Z̄ and Z̄·Z products zeroed.
LinkingSystem zero_off_diagonal(const LinkingSystem& ls);

enum class Verdict { equivalent, not_certified, indeterminate };
std::string to_string(Verdict v);

struct MoritaCertificate {
  std::string scenario;
  Eigen::Index p_dimension = 0;
  Eigen::Index q_dimension = 0;
  Eigen::Index p_fullness_rank = 0;
  Eigen::Index q_fullness_rank = 0;
  double p_positivity_margin = 0.0;
  double q_positivity_margin = 0.0;
  double exchange_residual = 0.0;
  StarStructureReport p_report;
  StarStructureReport q_report;
  /// Linking validation, equivalence steps, corner identifications and
  /// scenario-specific checks.
  ValidationReport checks;
  Verdict verdict = Verdict::not_certified;
  std::uint64_t seed = 0;
  double tol = kDefaultTolerance;
  std::vector<std::string> reasons;

  std::string to_string() const;
  std::string to_json() const;
};

/// Fullness ranks of span{z z̄'} and span{z̄ z'} against the corner
/// dimensions, positivity margins of ⟨f, f⟩ over the Z basis and eight
/// seeded random Z-sections, the exchange residual over (Z, Z̄, Z)
/// triples and the Wedderburn invariants of both corners.
MoritaCertificate verify_morita(const LinkingSystem& ls, double tol = kDefaultTolerance, std::uint64_t seed = 0);

/// C*(A/H) ⋊ G ∼ C*(G\A) ⋊ H, with both corners identified with the
/// crossed products by the induced actions.
MoritaCertificate symmetric_morita(const BundleAction& g, const BundleAction& h, double tol = kDefaultTolerance,
                                   std::uint64_t seed = 0);

/// C*(A) ⋊ G ∼ C*(G\A).
MoritaCertificate one_sided_morita(const BundleAction& g, double tol = kDefaultTolerance, std::uint64_t seed = 0);

/// C*(B∗Ω) ⋊ G ∼ C*(B).
MoritaCertificate one_sided_transformation_morita(const FellBundle& b, const SpaceAction& act,
                                                  const SpaceAction& gact, double tol = kDefaultTolerance,
                                                  std::uint64_t seed = 0);

/// Γ(A) ⋊ G ∼ Γ(G\A) for a bundle over a unit groupoid.
MoritaCertificate cstar_bundle_morita(const BundleAction& g, double tol = kDefaultTolerance, std::uint64_t seed = 0);

/// Ind_H^X B ⋊ G ∼ Ind_G^X B ⋊ H. `g_on_x` acts on the left and `h_on_x`
/// on the right of the point set; `sigma` and `tau` are left actions on B.
/// Also checks both θ-identifications and that the induced actions
/// correspond to the quotient-bundle actions under θ.
MoritaCertificate raeburn(const StarAlgebra& b, const SpaceAction& g_on_x, const SpaceAction& h_on_x,
                          const AlgebraAction& sigma, const AlgebraAction& tau, double tol = kDefaultTolerance,
                          std::uint64_t seed = 0);

/// For a bundle over a group G: A = B ∗ G under left translation with G
/// acting by (b, s) ↦ (b, s t⁻¹); certifies C*(A) ⋊ G ∼ C*(B) with
/// G\A identified with B.
MoritaCertificate coaction_demo(const FellBundle& b, double tol = kDefaultTolerance, std::uint64_t seed = 0);

} // namespace groupoidal
