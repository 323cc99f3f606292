#pragma once

#include <vector>

#include "groupoidal/action.hpp"
#include "groupoidal/constructions.hpp"

namespace groupoidal {

/// A (P, Q)-equivalence: a finite set Z with a left P-action (fibring ρ)
/// and a right Q-action (fibring σ). The bracket tables are indexed
/// [z1 * |Z| + z2]; `left_brackets` holds the P-arrow p with p·z2 = z1
/// when σ(z1) = σ(z2), `right_brackets` the Q-arrow q with z1·q = z2
/// when ρ(z1) = ρ(z2). Other entries are kUndefined.
struct GroupoidEquivalence {
  SpaceAction left;
  SpaceAction right;
  std::vector<ArrowIndex> left_brackets;
  std::vector<ArrowIndex> right_brackets;

  const FiniteGroupoid& p() const { return left.groupoid(); }
  const FiniteGroupoid& q() const { return right.groupoid(); }
  std::size_t num_points() const { return left.num_points(); }
  UnitIndex rho(PointIndex z) const { return left.fibring(z); }
  UnitIndex sigma(PointIndex z) const { return right.fibring(z); }
};

/// Everything built on the way to the symmetric equivalence of x with
/// commuting free actions g (left) and h (right).
struct SymmetricGroupoidData {
  GroupAction g;
  GroupAction h;
  Quotient by_h;          ///< x/H
  Quotient by_g;          ///< G\x
  SemidirectGroupoid p;   ///< (x/H) ⋊ G
  SemidirectGroupoid q;   ///< H ⋉ (G\x)
  GroupoidEquivalence equivalence;
};

/// Throws PreconditionError when an action is not free or the actions do
/// not commute.
SymmetricGroupoidData symmetric_groupoid_data(const GroupAction& g, const GroupAction& h);

GroupoidEquivalence symmetric_groupoid_equivalence(const FiniteGroupoid& x, const GroupAction& g,
                                                   const GroupAction& h);

/// The H-trivial case: x is a (x ⋊ G)-(G\x) equivalence.
GroupoidEquivalence one_sided_groupoid_equivalence(const FiniteGroupoid& x, const GroupAction& g);

/// Table lookups with precondition checks on the fibres.
ArrowIndex left_bracket(const GroupoidEquivalence& e, PointIndex z1, PointIndex z2);
ArrowIndex right_bracket(const GroupoidEquivalence& e, PointIndex z1, PointIndex z2);

/// Fills both bracket tables by exhaustive search for the characterizing
/// arrows. Throws ConsistencyError if a search finds two.
void fill_brackets_by_search(GroupoidEquivalence& e);

/// Exhaustive check of the five equivalence items: (i) P acts freely,
/// (ii) Q acts freely, (iii) the actions commute, (iv) ρ is Q-invariant,
/// onto P⁰ and injective on Z/Q, (v) the mirror for σ. Also checks both
/// action axioms, the bracket characterizing identities with uniqueness,
/// and joint surjectivity of the brackets.
ValidationReport verify_groupoid_equivalence(const GroupoidEquivalence& e);

/// Returns "(x, u)" with x a non-unit arrow fixing u, or an empty string.
std::string space_freeness_witness(const SpaceAction& a);

} // namespace groupoidal
