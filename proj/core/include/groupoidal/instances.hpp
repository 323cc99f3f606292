#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "groupoidal/bundle_action.hpp"
#include "groupoidal/equivalence.hpp"

namespace groupoidal {

/// Equivalence-relation groupoid on n points: arrows (i,j) with
/// class_of[i] == class_of[j], in lexicographic order, named "(i,j)" one
/// based.
FiniteGroupoid relation_groupoid(std::span<const int> class_of);

/// Index of the arrow (i,j) of a relation groupoid, or kUndefined.
ArrowIndex relation_arrow(const FiniteGroupoid& r, int i, int j);

/// Action on a relation groupoid by point permutations, t·(i,j) =
/// (π_t(i), π_t(j)). Throws if a permutation does not preserve the relation.
GroupAction relation_action(const FiniteGroup& group, const FiniteGroupoid& r,
                            const std::vector<std::vector<int>>& perms, Side side);

/// A groupoid with commuting free actions, G on the left and H on the right.
struct CommutingInstance {
  FiniteGroupoid groupoid;
  GroupAction g;
  GroupAction h;
  std::uint64_t seed = 0;
  std::string description;
};

struct InstanceOptions {
  std::size_t max_units = 6;
  /// Allow a Z/2 isotropy factor carried along trivially.
  bool isotropy = true;
  /// Shuffle arrow and unit indices.
  bool relabel = true;
};

/// Units G × C × H with G and H translating their own factor, a random
/// (G × H)-invariant equivalence relation on them, optionally times an
/// isotropy group. Deterministic in `seed`.
CommutingInstance random_commuting_instance(std::uint64_t seed, const InstanceOptions& options = {});

/// Copy of `e` with exactly one table entry changed to a different value:
/// a left or right action entry, a fibring value, or a bracket entry,
/// chosen by `seed`. `what` receives a description of the change.
GroupoidEquivalence corrupt_one_entry(const GroupoidEquivalence& e, std::uint64_t seed, std::string* what = nullptr);

/// A matrix bundle over `a.target()` with random fiber sizes in [1, max_dim]
/// constant on orbits, acted on through unitaries W(t, u) = V(t·u) V(u)*
/// for random unitaries V.
BundleAction random_unitary_bundle_action(const GroupAction& a, std::uint64_t seed, int max_dim = 2);

/// Seeded Haar-ish unitary from the QR factorization of a Gaussian matrix.
Matrix random_unitary(Rng& rng, int n);

} // namespace groupoidal
