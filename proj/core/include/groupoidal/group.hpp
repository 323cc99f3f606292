#pragma once

#include <string>
#include <vector>

#include "groupoidal/groupoid.hpp"

namespace groupoidal {

/// A finite group, stored as a one-unit groupoid. Elements are arrow indices.
class FiniteGroup {
public:
  FiniteGroup() = default;
  /// Wraps a groupoid that must have exactly one unit.
  explicit FiniteGroup(FiniteGroupoid g);

  std::size_t order() const { return groupoid_.num_arrows(); }
  ElementIndex identity() const { return groupoid_.unit_arrow(0); }
  ElementIndex mul(ElementIndex a, ElementIndex b) const { return groupoid_.compose(a, b); }
  ElementIndex inv(ElementIndex a) const { return groupoid_.inv(a); }
  const std::string& name(ElementIndex a) const { return groupoid_.arrow_name(a); }
  std::optional<ElementIndex> find(std::string_view name) const { return groupoid_.find_arrow(name); }
  bool is_trivial() const { return order() == 1; }

  const FiniteGroupoid& groupoid() const { return groupoid_; }
  /// Multiplication table, table[a][b] = ab.
  std::vector<std::vector<ElementIndex>> table() const;

  bool operator==(const FiniteGroup& o) const { return groupoid_ == o.groupoid_; }

private:
  FiniteGroupoid groupoid_;
};

/// Builds a group from its multiplication table. Rejects (PreconditionError,
/// with a witness) tables that are not square, not Latin, have no identity,
/// lack inverses or are not associative.
FiniteGroup make_group(const std::vector<std::vector<ElementIndex>>& table,
                       std::vector<std::string> names = {});

FiniteGroup trivial_group();
/// Z/n with elements named "0".."n-1".
FiniteGroup cyclic_group(std::size_t n);
/// Elements (a,b) with index a*|H| + b.
FiniteGroup direct_product(const FiniteGroup& g, const FiniteGroup& h);
/// Symmetric group on n letters; elements are permutations in
/// lexicographic order, composition (pq)(i) = p(q(i)).
FiniteGroup symmetric_group(std::size_t n);
/// Subgroup on the given elements (must be closed); element i of the result
/// corresponds to `elements[i]`.
FiniteGroup subgroup(const FiniteGroup& g, const std::vector<ElementIndex>& elements);

} // namespace groupoidal
