#pragma once

#include <string>
#include <vector>

#include "groupoidal/group.hpp"
#include "groupoidal/groupoid.hpp"

namespace groupoidal {

enum class Side { left, right };

inline const char* to_string(Side s) { return s == Side::left ? "left" : "right"; }

/// A finite group acting on a groupoid by automorphisms.
///
/// `act(t, x)` is t·x for a left action and x·t for a right action. The
/// group law is s·(t·x) = (st)·x on the left and (x·h)·k = x·(hk) on the
/// right.
class GroupAction {
public:
  GroupAction() = default;
  /// `table[t * |arrows| + x]` is the image of arrow x under element t.
  GroupAction(FiniteGroup group, FiniteGroupoid target, Side side, std::vector<ArrowIndex> table);

  const FiniteGroup& group() const { return group_; }
  const FiniteGroupoid& target() const { return target_; }
  Side side() const { return side_; }

  ArrowIndex act(ElementIndex t, ArrowIndex x) const
  { return table_[static_cast<std::size_t>(t) * target_.num_arrows() + static_cast<std::size_t>(x)]; }
  /// Induced action on units (through unit arrows).
  UnitIndex act_unit(ElementIndex t, UnitIndex u) const
  { return target_.src(act(t, target_.unit_arrow(u))); }

  const std::vector<ArrowIndex>& table() const { return table_; }

private:
  FiniteGroup group_;
  FiniteGroupoid target_;
  Side side_ = Side::left;
  std::vector<ArrowIndex> table_;
};

/// Checks the automorphism, group-law and identity axioms, plus invariance
/// of the counting Haar system. Properness is recorded as vacuous.
ValidationReport check_action(const GroupAction& a);

/// True iff act(t, x) = x forces t = e, over all (t, x).
bool is_free(const GroupAction& a);

/// Returns a witness "(t, x)" of non-freeness, or an empty string.
std::string freeness_witness(const GroupAction& a);

/// The trivial action of `group` on `target`.
GroupAction trivial_action(const FiniteGroup& group, const FiniteGroupoid& target, Side side);

/// Action on the pair groupoid over n points induced by permutations of
/// the points: t·(i,j) = (π_t(i), π_t(j)). `perms[t]` is zero based. For a
/// right action, x·t uses π_t as well; the caller supplies permutations
/// satisfying the right-hand group law.
GroupAction pair_groupoid_action(const FiniteGroup& group, std::size_t n,
                                 const std::vector<std::vector<int>>& perms, Side side);

/// Action on the product groupoid base × fiber that permutes the base
/// factor through `base_action` and fixes the fiber factor.
GroupAction product_action(const GroupAction& base_action, const FiniteGroupoid& fiber,
                           const FiniteGroupoid& product);

/// Copy of `a` re-expressed on a relabeled target (see relabel_groupoid).
GroupAction relabel_action(const GroupAction& a, const FiniteGroupoid& relabeled,
                           std::span<const ArrowIndex> perm);

/// True iff (t·x)·k = t·(x·k) for all t, x, k. Otherwise fills `witness`.
bool actions_commute(const GroupAction& left, const GroupAction& right, std::string* witness = nullptr);

/// A groupoid acting on a finite set Ω with fibring map.
///
/// Left: x·u defined iff s(x) = ρ(u), and ρ(x·u) = r(x).
/// Right: u·x defined iff σ(u) = r(x), and σ(u·x) = s(x).
/// In both cases `act(x, u)` returns the resulting point or kUndefined.
class SpaceAction {
public:
  SpaceAction() = default;
  /// `table[x * |Ω| + u]` holds the result or kUndefined.
  SpaceAction(FiniteGroupoid groupoid, std::vector<std::string> points,
              std::vector<UnitIndex> fibring, Side side, std::vector<PointIndex> table);

  const FiniteGroupoid& groupoid() const { return groupoid_; }
  std::size_t num_points() const { return points_.size(); }
  const std::string& point_name(PointIndex u) const { return points_[u]; }
  const std::vector<std::string>& points() const { return points_; }
  UnitIndex fibring(PointIndex u) const { return fibring_[u]; }
  Side side() const { return side_; }

  PointIndex act(ArrowIndex x, PointIndex u) const
  { return table_[static_cast<std::size_t>(x) * points_.size() + static_cast<std::size_t>(u)]; }
  /// Whether the fibring condition allows x to act on u.
  bool admissible(ArrowIndex x, PointIndex u) const
  {
    return side_ == Side::left ? groupoid_.src(x) == fibring_[u] : groupoid_.rng(x) == fibring_[u];
  }

  const std::vector<PointIndex>& table() const { return table_; }
  const std::vector<UnitIndex>& fibring_map() const { return fibring_; }

  /// Copy with the fibring value at `u` replaced (negative controls).
  SpaceAction with_fibring(PointIndex u, UnitIndex value) const;
  /// Copy with one action entry replaced (negative controls).
  SpaceAction with_entry(ArrowIndex x, PointIndex u, PointIndex value) const;

private:
  FiniteGroupoid groupoid_;
  std::vector<std::string> points_;
  std::vector<UnitIndex> fibring_;
  Side side_ = Side::left;
  std::vector<PointIndex> table_;
};

/// Checks definedness, fibring compatibility, the composition law and
/// that unit arrows act trivially.
ValidationReport check_space_action(const SpaceAction& a);

/// True iff x acting on u fixes u only for unit arrows x.
bool is_free(const SpaceAction& a);

/// A group viewed as a one-unit groupoid acting on a finite set by
/// permutations: `perms[t][u]` is the image of point u.
SpaceAction group_set_action(const FiniteGroup& group, std::vector<std::string> points,
                             const std::vector<std::vector<int>>& perms, Side side);

/// The group acting on its own elements by left (t·u = tu) or right
/// (u·t = ut) translation.
SpaceAction translation_action(const FiniteGroup& group, Side side);

/// The groupoid acting on its own arrow set by left translation
/// (x·y = xy, ρ = r) or right translation (y·x = yx, σ = s).
SpaceAction self_translation_action(const FiniteGroupoid& g, Side side);

/// Converts a group action on a set into the corresponding action by
/// automorphisms on the unit groupoid over that set.
GroupAction unit_groupoid_action(const SpaceAction& group_on_set);

} // namespace groupoidal
