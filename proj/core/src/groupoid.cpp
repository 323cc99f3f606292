#include "groupoidal/groupoid.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace groupoidal {

namespace {

void require(bool cond, const std::string& what)
{
  if (!cond)
    throw PreconditionError("FiniteGroupoid: " + what);
}

std::string name_or(const FiniteGroupoid& g, ArrowIndex x)
{
  if (x == kUndefined)
    return "undefined";
  return g.arrow_name(x);
}

} // namespace

FiniteGroupoid::FiniteGroupoid(std::vector<std::string> unit_names,
                               std::vector<std::string> arrow_names,
                               std::vector<UnitIndex> src,
                               std::vector<UnitIndex> rng,
                               std::vector<ArrowIndex> comp,
                               std::vector<ArrowIndex> inv,
                               std::vector<ArrowIndex> unit_arrow)
  : unit_names_(std::move(unit_names)),
    arrow_names_(std::move(arrow_names)),
    src_(std::move(src)),
    rng_(std::move(rng)),
    comp_(std::move(comp)),
    inv_(std::move(inv)),
    unit_arrow_(std::move(unit_arrow))
{
  const auto n = static_cast<std::int32_t>(arrow_names_.size());
  const auto u = static_cast<std::int32_t>(unit_names_.size());
  require(src_.size() == arrow_names_.size() && rng_.size() == arrow_names_.size(),
          "source/range tables must have one entry per arrow");
  require(inv_.size() == arrow_names_.size(), "inverse table must have one entry per arrow");
  require(unit_arrow_.size() == unit_names_.size(), "unit-arrow table must have one entry per unit");
  require(comp_.size() == arrow_names_.size() * arrow_names_.size(),
          "composition table must be arrows x arrows");
  auto in = [](std::int32_t v, std::int32_t hi) { return v >= 0 && v < hi; };
  for (auto s : src_) require(in(s, u), "source out of range");
  for (auto r : rng_) require(in(r, u), "range out of range");
  for (auto i : inv_) require(in(i, n), "inverse out of range");
  for (auto a : unit_arrow_) require(in(a, n), "unit arrow out of range");
  for (auto c : comp_) require(c == kUndefined || in(c, n), "composition entry out of range");
  build_fibers();
}

void FiniteGroupoid::build_fibers()
{
  range_fibers_.assign(num_units(), {});
  source_fibers_.assign(num_units(), {});
  for (ArrowIndex x = 0; x < static_cast<ArrowIndex>(num_arrows()); ++x) {
    range_fibers_[rng_[x]].push_back(x);
    source_fibers_[src_[x]].push_back(x);
  }
}

std::optional<ArrowIndex> FiniteGroupoid::find_arrow(std::string_view name) const
{
  auto it = std::find(arrow_names_.begin(), arrow_names_.end(), name);
  if (it == arrow_names_.end())
    return std::nullopt;
  return static_cast<ArrowIndex>(it - arrow_names_.begin());
}

std::optional<UnitIndex> FiniteGroupoid::find_unit(std::string_view name) const
{
  auto it = std::find(unit_names_.begin(), unit_names_.end(), name);
  if (it == unit_names_.end())
    return std::nullopt;
  return static_cast<UnitIndex>(it - unit_names_.begin());
}

FiniteGroupoid FiniteGroupoid::with_composition(ArrowIndex x, ArrowIndex y, ArrowIndex xy) const
{
  FiniteGroupoid copy = *this;
  copy.comp_[index(x, y)] = xy;
  return copy;
}

bool FiniteGroupoid::operator==(const FiniteGroupoid& o) const
{
  return unit_names_ == o.unit_names_ && arrow_names_ == o.arrow_names_ && src_ == o.src_ &&
         rng_ == o.rng_ && comp_ == o.comp_ && inv_ == o.inv_ && unit_arrow_ == o.unit_arrow_;
}

ValidationReport validate_groupoid(const FiniteGroupoid& g)
{
  ValidationReport rep;
  const auto n = static_cast<ArrowIndex>(g.num_arrows());
  rep.record("composability");
  rep.record("source-range");
  rep.record("associativity");
  rep.record("inverse");
  rep.record("unit");

  auto pair_str = [&](ArrowIndex x, ArrowIndex y) {
    return "(" + g.arrow_name(x) + ", " + g.arrow_name(y) + ")";
  };

  for (ArrowIndex x = 0; x < n; ++x) {
    for (ArrowIndex y = 0; y < n; ++y) {
      const ArrowIndex xy = g.compose(x, y);
      const bool should = g.composable(x, y);
      if (should != (xy != kUndefined)) {
        rep.fail("composability", "comp" + pair_str(x, y) + (should ? " missing although s(x)=r(y)"
                                                                    : " defined although s(x)!=r(y)"));
        continue;
      }
      if (xy == kUndefined)
        continue;
      if (g.rng(xy) != g.rng(x) || g.src(xy) != g.src(y))
        rep.fail("source-range", "comp" + pair_str(x, y) + " = " + g.arrow_name(xy) +
                                     " has wrong source or range");
    }
  }

  // Associativity on every composable triple.
  for (ArrowIndex y = 0; y < n; ++y) {
    for (ArrowIndex x : g.source_fiber(g.rng(y))) {
      const ArrowIndex xy = g.compose(x, y);
      for (ArrowIndex z : g.range_fiber(g.src(y))) {
        const ArrowIndex yz = g.compose(y, z);
        const ArrowIndex lhs = xy == kUndefined ? kUndefined : g.compose(xy, z);
        const ArrowIndex rhs = yz == kUndefined ? kUndefined : g.compose(x, yz);
        if (lhs != rhs || lhs == kUndefined)
          rep.fail("associativity", "(" + g.arrow_name(x) + ", " + g.arrow_name(y) + ", " +
                                        g.arrow_name(z) + "): (xy)z = " + name_or(g, lhs) +
                                        ", x(yz) = " + name_or(g, rhs));
      }
    }
  }

  for (ArrowIndex x = 0; x < n; ++x) {
    const ArrowIndex xi = g.inv(x);
    if (g.inv(xi) != x)
      rep.fail("inverse", "inv(inv(" + g.arrow_name(x) + ")) != " + g.arrow_name(x));
    if (g.compose(x, xi) != g.unit_arrow(g.rng(x)))
      rep.fail("inverse", "x x^-1 != r(x) for x = " + g.arrow_name(x));
    if (g.compose(xi, x) != g.unit_arrow(g.src(x)))
      rep.fail("inverse", "x^-1 x != s(x) for x = " + g.arrow_name(x));
    if (g.compose(g.unit_arrow(g.rng(x)), x) != x || g.compose(x, g.unit_arrow(g.src(x))) != x)
      rep.fail("unit", "unit arrows do not fix " + g.arrow_name(x));
  }
  for (UnitIndex u = 0; u < static_cast<UnitIndex>(g.num_units()); ++u) {
    const ArrowIndex e = g.unit_arrow(u);
    if (g.src(e) != u || g.rng(e) != u)
      rep.fail("unit", "unit arrow " + g.arrow_name(e) + " is not based at unit " + g.unit_name(u));
  }
  return rep;
}

FiniteGroupoid make_pair_groupoid(std::size_t n)
{
  if (n == 0)
    throw PreconditionError("make_pair_groupoid: n must be positive");
  const auto N = static_cast<ArrowIndex>(n);
  std::vector<std::string> units, arrows;
  std::vector<UnitIndex> src, rng;
  std::vector<ArrowIndex> inv, unit_arrow, comp(n * n * n * n, kUndefined);
  for (ArrowIndex i = 0; i < N; ++i) {
    units.push_back(std::to_string(i + 1));
    unit_arrow.push_back(i * N + i);
  }
  for (ArrowIndex i = 0; i < N; ++i)
    for (ArrowIndex j = 0; j < N; ++j) {
      arrows.push_back("(" + std::to_string(i + 1) + "," + std::to_string(j + 1) + ")");
      rng.push_back(i);
      src.push_back(j);
      inv.push_back(j * N + i);
    }
  const std::size_t A = n * n;
  for (ArrowIndex i = 0; i < N; ++i)
    for (ArrowIndex j = 0; j < N; ++j)
      for (ArrowIndex k = 0; k < N; ++k)
        comp[static_cast<std::size_t>(i * N + j) * A + static_cast<std::size_t>(j * N + k)] = i * N + k;
  return {std::move(units), std::move(arrows), std::move(src), std::move(rng),
          std::move(comp), std::move(inv), std::move(unit_arrow)};
}

FiniteGroupoid make_unit_groupoid(std::vector<std::string> points)
{
  const std::size_t n = points.size();
  std::vector<UnitIndex> idx(n);
  std::iota(idx.begin(), idx.end(), 0);
  std::vector<ArrowIndex> comp(n * n, kUndefined);
  for (std::size_t i = 0; i < n; ++i)
    comp[i * n + i] = static_cast<ArrowIndex>(i);
  auto arrows = points;
  return {std::move(points), std::move(arrows), idx, idx, std::move(comp), idx, idx};
}

FiniteGroupoid product_groupoid(const FiniteGroupoid& a, const FiniteGroupoid& b)
{
  const auto na = static_cast<ArrowIndex>(a.num_arrows());
  const auto nb = static_cast<ArrowIndex>(b.num_arrows());
  const auto ua = static_cast<UnitIndex>(a.num_units());
  const auto ub = static_cast<UnitIndex>(b.num_units());
  const std::size_t n = static_cast<std::size_t>(na) * static_cast<std::size_t>(nb);
  std::vector<std::string> units, arrows;
  std::vector<UnitIndex> src, rng;
  std::vector<ArrowIndex> inv, unit_arrow, comp(n * n, kUndefined);
  for (UnitIndex u = 0; u < ua; ++u)
    for (UnitIndex v = 0; v < ub; ++v) {
      units.push_back("(" + a.unit_name(u) + "," + b.unit_name(v) + ")");
      unit_arrow.push_back(a.unit_arrow(u) * nb + b.unit_arrow(v));
    }
  for (ArrowIndex x = 0; x < na; ++x)
    for (ArrowIndex y = 0; y < nb; ++y) {
      arrows.push_back("(" + a.arrow_name(x) + "," + b.arrow_name(y) + ")");
      src.push_back(a.src(x) * ub + b.src(y));
      rng.push_back(a.rng(x) * ub + b.rng(y));
      inv.push_back(a.inv(x) * nb + b.inv(y));
    }
  for (ArrowIndex x1 = 0; x1 < na; ++x1)
    for (ArrowIndex x2 = 0; x2 < na; ++x2) {
      const ArrowIndex x = a.compose(x1, x2);
      if (x == kUndefined)
        continue;
      for (ArrowIndex y1 = 0; y1 < nb; ++y1)
        for (ArrowIndex y2 = 0; y2 < nb; ++y2) {
          const ArrowIndex y = b.compose(y1, y2);
          if (y == kUndefined)
            continue;
          comp[static_cast<std::size_t>(x1 * nb + y1) * n + static_cast<std::size_t>(x2 * nb + y2)] =
            x * nb + y;
        }
    }
  return {std::move(units), std::move(arrows), std::move(src), std::move(rng),
          std::move(comp), std::move(inv), std::move(unit_arrow)};
}

FiniteGroupoid relabel_groupoid(const FiniteGroupoid& g,
                                std::span<const ArrowIndex> perm,
                                std::span<const UnitIndex> unit_perm)
{
  const std::size_t n = g.num_arrows();
  const std::size_t u = g.num_units();
  if (perm.size() != n || unit_perm.size() != u)
    throw PreconditionError("relabel_groupoid: permutation sizes do not match");
  std::vector<std::string> units(u), arrows(n);
  std::vector<UnitIndex> src(n), rng(n);
  std::vector<ArrowIndex> inv(n), unit_arrow(u), comp(n * n, kUndefined);
  for (std::size_t v = 0; v < u; ++v) {
    units[unit_perm[v]] = g.unit_name(static_cast<UnitIndex>(v));
    unit_arrow[unit_perm[v]] = perm[g.unit_arrow(static_cast<UnitIndex>(v))];
  }
  for (std::size_t x = 0; x < n; ++x) {
    const auto xi = static_cast<ArrowIndex>(x);
    arrows[perm[x]] = g.arrow_name(xi);
    src[perm[x]] = unit_perm[g.src(xi)];
    rng[perm[x]] = unit_perm[g.rng(xi)];
    inv[perm[x]] = perm[g.inv(xi)];
    for (std::size_t y = 0; y < n; ++y) {
      const ArrowIndex xy = g.compose(xi, static_cast<ArrowIndex>(y));
      if (xy != kUndefined)
        comp[static_cast<std::size_t>(perm[x]) * n + static_cast<std::size_t>(perm[y])] = perm[xy];
    }
  }
  return {std::move(units), std::move(arrows), std::move(src), std::move(rng),
          std::move(comp), std::move(inv), std::move(unit_arrow)};
}

ValidationReport check_homomorphism(const FiniteGroupoid& dom,
                                    const FiniteGroupoid& cod,
                                    std::span<const ArrowIndex> f,
                                    bool require_bijective)
{
  ValidationReport rep;
  rep.record("homomorphism");
  const auto n = static_cast<ArrowIndex>(dom.num_arrows());
  const auto m = static_cast<ArrowIndex>(cod.num_arrows());
  if (f.size() != dom.num_arrows()) {
    rep.fail("homomorphism", "arrow map has wrong length");
    return rep;
  }
  for (ArrowIndex x = 0; x < n; ++x)
    if (f[x] < 0 || f[x] >= m) {
      rep.fail("homomorphism", "image of " + dom.arrow_name(x) + " out of range");
      return rep;
    }
  for (ArrowIndex x = 0; x < n; ++x) {
    if (f[dom.inv(x)] != cod.inv(f[x]))
      rep.fail("homomorphism", "inverse not preserved at " + dom.arrow_name(x));
    for (ArrowIndex y = 0; y < n; ++y) {
      const ArrowIndex xy = dom.compose(x, y);
      const bool image_composable = cod.composable(f[x], f[y]);
      if (xy != kUndefined) {
        if (!image_composable || cod.compose(f[x], f[y]) != f[xy])
          rep.fail("homomorphism", "product not preserved at (" + dom.arrow_name(x) + ", " +
                                       dom.arrow_name(y) + ")");
      } else if (require_bijective && image_composable) {
        rep.fail("isomorphism", "composability not reflected at (" + dom.arrow_name(x) + ", " +
                                    dom.arrow_name(y) + ")");
      }
    }
  }
  if (require_bijective) {
    rep.record("isomorphism");
    std::vector<int> hit(cod.num_arrows(), 0);
    for (auto y : f)
      ++hit[y];
    for (ArrowIndex y = 0; y < m; ++y)
      if (hit[y] != 1)
        rep.fail("isomorphism", cod.arrow_name(y) + " has " + std::to_string(hit[y]) + " preimages");
  }
  return rep;
}

} // namespace groupoidal
