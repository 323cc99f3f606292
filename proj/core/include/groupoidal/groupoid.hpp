#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "groupoidal/report.hpp"

namespace groupoidal {

using ArrowIndex = std::int32_t;
using UnitIndex = std::int32_t;
using PointIndex = std::int32_t;
using ElementIndex = std::int32_t;

/// Marks an undefined entry of a partial table.
inline constexpr std::int32_t kUndefined = -1;

/// A finite groupoid stored as dense tables.
///
/// Arrows and units are indexed from zero; the index order is the stable
/// total order used for canonical representatives. `compose(x, y)` is the
/// product xy (x after y) and is `kUndefined` when the pair is absent from
/// the table. The constructor only checks table shapes and index ranges;
/// the groupoid axioms are checked by `validate_groupoid` so corrupted
/// tables can still be represented and diagnosed.
class FiniteGroupoid {
public:
  FiniteGroupoid() = default;
  FiniteGroupoid(std::vector<std::string> unit_names,
                 std::vector<std::string> arrow_names,
                 std::vector<UnitIndex> src,
                 std::vector<UnitIndex> rng,
                 std::vector<ArrowIndex> comp,
                 std::vector<ArrowIndex> inv,
                 std::vector<ArrowIndex> unit_arrow);

  std::size_t num_units() const { return unit_names_.size(); }
  std::size_t num_arrows() const { return arrow_names_.size(); }

  UnitIndex src(ArrowIndex x) const { return src_[x]; }
  UnitIndex rng(ArrowIndex x) const { return rng_[x]; }
  ArrowIndex inv(ArrowIndex x) const { return inv_[x]; }
  ArrowIndex unit_arrow(UnitIndex u) const { return unit_arrow_[u]; }
  ArrowIndex compose(ArrowIndex x, ArrowIndex y) const { return comp_[index(x, y)]; }
  bool composable(ArrowIndex x, ArrowIndex y) const { return src_[x] == rng_[y]; }
  bool is_unit_arrow(ArrowIndex x) const { return unit_arrow_[src_[x]] == x; }

  /// Arrows with range `u`, in index order (the counting Haar system's support).
  std::span<const ArrowIndex> range_fiber(UnitIndex u) const { return range_fibers_[u]; }
  std::span<const ArrowIndex> source_fiber(UnitIndex u) const { return source_fibers_[u]; }

  const std::string& unit_name(UnitIndex u) const { return unit_names_[u]; }
  const std::string& arrow_name(ArrowIndex x) const { return arrow_names_[x]; }
  std::optional<ArrowIndex> find_arrow(std::string_view name) const;
  std::optional<UnitIndex> find_unit(std::string_view name) const;

  const std::vector<std::string>& unit_names() const { return unit_names_; }
  const std::vector<std::string>& arrow_names() const { return arrow_names_; }
  const std::vector<ArrowIndex>& composition_table() const { return comp_; }

  /// Copy with one composition entry overwritten (negative controls).
  FiniteGroupoid with_composition(ArrowIndex x, ArrowIndex y, ArrowIndex xy) const;

  bool operator==(const FiniteGroupoid& other) const;

private:
  std::size_t index(ArrowIndex x, ArrowIndex y) const
  { return static_cast<std::size_t>(x) * num_arrows() + static_cast<std::size_t>(y); }
  void build_fibers();

  std::vector<std::string> unit_names_;
  std::vector<std::string> arrow_names_;
  std::vector<UnitIndex> src_;
  std::vector<UnitIndex> rng_;
  std::vector<ArrowIndex> comp_;
  std::vector<ArrowIndex> inv_;
  std::vector<ArrowIndex> unit_arrow_;
  std::vector<std::vector<ArrowIndex>> range_fibers_;
  std::vector<std::vector<ArrowIndex>> source_fibers_;
};

/// Checks every groupoid axiom exhaustively. Check names: "composability",
/// "source-range", "associativity", "inverse", "unit".
ValidationReport validate_groupoid(const FiniteGroupoid& g);

/// Pair groupoid on n points: arrows (i,j), (i,j)(j,k) = (i,k). Arrow (i,j)
/// has index i*n + j (zero based) and name "(i,j)" (one based).
FiniteGroupoid make_pair_groupoid(std::size_t n);

/// Groupoid whose arrows are exactly its units.
FiniteGroupoid make_unit_groupoid(std::vector<std::string> points);

/// Cartesian product; arrow (a,b) has index a*|B| + b.
FiniteGroupoid product_groupoid(const FiniteGroupoid& a, const FiniteGroupoid& b);

/// Copy with arrows renumbered: old arrow x becomes new arrow perm[x].
/// Units are renumbered by `unit_perm` in the same way.
FiniteGroupoid relabel_groupoid(const FiniteGroupoid& g,
                                std::span<const ArrowIndex> perm,
                                std::span<const UnitIndex> unit_perm);

/// Checks that `arrow_map` is a groupoid homomorphism dom -> cod
/// (composable pairs go to composable pairs, products and inverses are
/// preserved). With `require_bijective`, also checks that it is an
/// isomorphism, i.e. a bijection reflecting composability.
ValidationReport check_homomorphism(const FiniteGroupoid& dom,
                                    const FiniteGroupoid& cod,
                                    std::span<const ArrowIndex> arrow_map,
                                    bool require_bijective = false);

} // namespace groupoidal
