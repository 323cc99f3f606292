#pragma once

#include <utility>
#include <vector>

#include "groupoidal/action.hpp"
#include "groupoidal/groupoid.hpp"

namespace groupoidal {

/// X * Ω for a left action of X on Ω. Arrow (x,u) exists iff s(x) = ρ(u);
/// (x, y·u)(y, u) = (xy, u). Unit u of the result is the point u.
struct TransformationGroupoid {
  FiniteGroupoid groupoid;
  std::vector<std::pair<ArrowIndex, PointIndex>> pairs;
  std::vector<ArrowIndex> lookup;
  std::size_t num_points = 0;

  ArrowIndex index(ArrowIndex x, PointIndex u) const
  { return lookup[static_cast<std::size_t>(x) * num_points + static_cast<std::size_t>(u)]; }
};

TransformationGroupoid transformation_groupoid(const FiniteGroupoid& x, const SpaceAction& a);

/// Semidirect product of a groupoid by a group acting by automorphisms.
/// Left: X ⋊ G with arrow (x,t) at index x*|G| + t. Right: H ⋉ X with
/// arrow (t,x) at index t*|X| + x. Units are the units of X.
struct SemidirectGroupoid {
  FiniteGroupoid groupoid;
  GroupAction action;

  ArrowIndex index(ArrowIndex x, ElementIndex t) const;
  ArrowIndex arrow_of(ArrowIndex a) const;
  ElementIndex element_of(ArrowIndex a) const;
};

SemidirectGroupoid semidirect_left(const GroupAction& a);
SemidirectGroupoid semidirect_right(const GroupAction& a);

/// Orbit groupoid of a free action (X/H for a right action, G\X for a
/// left one). Orbits are represented by their smallest arrow index and
/// numbered in increasing order of representatives.
struct Quotient {
  FiniteGroupoid groupoid;
  GroupAction action;
  std::vector<ArrowIndex> arrow_class;
  std::vector<ArrowIndex> representative;
  std::vector<UnitIndex> unit_class;
  std::vector<UnitIndex> unit_representative;
  /// Element k with act(k, x) = representative(arrow_class(x)).
  std::vector<ElementIndex> to_rep;
};

/// Throws PreconditionError naming a fixed pair when the action is not free.
Quotient quotient_groupoid(const GroupAction& a);

/// Unique k with act_unit(k, u) = v, or kUndefined. Throws
/// ConsistencyError if there are two.
ElementIndex unique_translator(const GroupAction& a, UnitIndex u, UnitIndex v);
/// Number of k with act_unit(k, u) = v.
std::size_t count_translators(const GroupAction& a, UnitIndex u, UnitIndex v);

/// Left action of X/H on the space X: (x·H)·y = (x·h)y where s(x·h) = r(y).
/// Fibring ρ(y) = r(y)·H. Requires a right action.
SpaceAction orbit_space_action(const Quotient& q);

/// Action of G on the orbit groupoid: t·(x·H) = (t·x)·H. `g` must commute
/// with the action defining `q`; the result has the side of `g`.
GroupAction quotient_induced_action(const GroupAction& g, const Quotient& q);

/// Covariance of a group action on X with actions of G and X on a set Ω:
/// s·(x·u) = (s·x)·(s·u) on the left, (u·x)·h = (u·h)·(x·h) on the right.
/// `on_set` is a group acting on Ω (one-unit groupoid), `on_space` is X
/// acting on Ω.
ValidationReport check_covariant(const GroupAction& g, const SpaceAction& on_set, const SpaceAction& on_space);

/// (x,t)·u = x·(t·u) when s(x) = ρ(t·u); fibring ρ'(u) = (ρ(u), e).
SpaceAction semidirect_space_action(const SemidirectGroupoid& sd, const SpaceAction& on_set,
                                    const SpaceAction& on_space);

/// u·(h,x) = (u·h)·x when σ(u) = r(x·h⁻¹); fibring σ'(u) = (e, σ(u)).
SpaceAction semidirect_right_space_action(const SemidirectGroupoid& sd, const SpaceAction& on_set,
                                          const SpaceAction& on_space);

} // namespace groupoidal
