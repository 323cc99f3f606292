#include "groupoidal/instances.hpp"

#include <Eigen/QR>
#include <algorithm>
#include <numeric>

#include "groupoidal/fell_bundle.hpp"

namespace groupoidal {

FiniteGroupoid relation_groupoid(std::span<const int> class_of)
{
  const auto n = static_cast<int>(class_of.size());
  if (n == 0)
    throw PreconditionError("relation_groupoid: no points");
  std::vector<std::string> units, arrows;
  std::vector<UnitIndex> src, rng;
  std::vector<ArrowIndex> unit_arrow(static_cast<std::size_t>(n));
  std::vector<ArrowIndex> index(static_cast<std::size_t>(n * n), kUndefined);
  for (int i = 0; i < n; ++i)
    units.push_back(std::to_string(i + 1));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (class_of[i] == class_of[j]) {
        index[i * n + j] = static_cast<ArrowIndex>(arrows.size());
        if (i == j)
          unit_arrow[i] = static_cast<ArrowIndex>(arrows.size());
        arrows.push_back("(" + std::to_string(i + 1) + "," + std::to_string(j + 1) + ")");
        rng.push_back(i);
        src.push_back(j);
      }
  const std::size_t na = arrows.size();
  std::vector<ArrowIndex> inv(na), comp(na * na, kUndefined);
  for (std::size_t a = 0; a < na; ++a) {
    inv[a] = index[src[a] * n + rng[a]];
    for (std::size_t b = 0; b < na; ++b)
      if (src[a] == rng[b])
        comp[a * na + b] = index[rng[a] * n + src[b]];
  }
  return {std::move(units), std::move(arrows), std::move(src), std::move(rng),
          std::move(comp), std::move(inv), std::move(unit_arrow)};
}

ArrowIndex relation_arrow(const FiniteGroupoid& r, int i, int j)
{
  for (ArrowIndex a : r.range_fiber(i))
    if (r.src(a) == j)
      return a;
  return kUndefined;
}

GroupAction relation_action(const FiniteGroup& group, const FiniteGroupoid& r,
                            const std::vector<std::vector<int>>& perms, Side side)
{
  if (perms.size() != group.order())
    throw PreconditionError("relation_action: need one permutation per group element");
  std::vector<ArrowIndex> table;
  for (const auto& p : perms) {
    if (p.size() != r.num_units())
      throw PreconditionError("relation_action: permutation has wrong length");
    for (ArrowIndex a = 0; a < static_cast<ArrowIndex>(r.num_arrows()); ++a) {
      const ArrowIndex b = relation_arrow(r, p[r.rng(a)], p[r.src(a)]);
      if (b == kUndefined)
        throw PreconditionError("relation_action: permutation does not preserve the relation at " +
                                r.arrow_name(a));
      table.push_back(b);
    }
  }
  return {group, r, side, std::move(table)};
}

namespace {

std::vector<FiniteGroup> small_groups()
{
  return {trivial_group(), cyclic_group(2), cyclic_group(3), direct_product(cyclic_group(2), cyclic_group(2)),
          symmetric_group(3)};
}

int find_root(std::vector<int>& parent, int i)
{
  while (parent[i] != i)
    i = parent[i] = parent[parent[i]];
  return i;
}

} // namespace

CommutingInstance random_commuting_instance(std::uint64_t seed, const InstanceOptions& options)
{
  Rng rng(seed);
  const auto groups = small_groups();
  std::vector<std::pair<std::size_t, std::size_t>> choices;
  for (std::size_t a = 0; a < groups.size(); ++a)
    for (std::size_t b = 0; b < groups.size(); ++b)
      if (groups[a].order() * groups[b].order() <= options.max_units)
        choices.emplace_back(a, b);
  if (choices.empty())
    throw PreconditionError("random_commuting_instance: max_units too small");
  const auto [gi, hi] = choices[std::uniform_int_distribution<std::size_t>(0, choices.size() - 1)(rng)];
  const FiniteGroup& g = groups[gi];
  const FiniteGroup& h = groups[hi];
  const int ng = static_cast<int>(g.order()), nh = static_cast<int>(h.order());
  const int nc = std::uniform_int_distribution<int>(1, static_cast<int>(options.max_units) / (ng * nh))(rng);
  const int n = ng * nc * nh;
  auto unit = [&](int s, int c, int k) { return (s * nc + c) * nh + k; };

  // (G × H)-invariant equivalence relation generated by a few random pairs
  std::vector<int> parent(static_cast<std::size_t>(n));
  std::iota(parent.begin(), parent.end(), 0);
  std::uniform_int_distribution<int> pick(0, n - 1);
  const int pairs = std::uniform_int_distribution<int>(0, n)(rng);
  for (int p = 0; p < pairs; ++p) {
    const int u = pick(rng), v = pick(rng);
    const int us = u / (nc * nh), uc = (u / nh) % nc, uk = u % nh;
    const int vs = v / (nc * nh), vc = (v / nh) % nc, vk = v % nh;
    for (int t = 0; t < ng; ++t)
      for (int k = 0; k < nh; ++k)
        parent[find_root(parent, unit(g.mul(t, us), uc, h.mul(uk, k)))] =
            find_root(parent, unit(g.mul(t, vs), vc, h.mul(vk, k)));
  }
  std::vector<int> class_of(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i)
    class_of[i] = find_root(parent, i);

  std::vector<std::vector<int>> gp(ng, std::vector<int>(n)), hp(nh, std::vector<int>(n));
  for (int s = 0; s < ng; ++s)
    for (int c = 0; c < nc; ++c)
      for (int k = 0; k < nh; ++k) {
        for (int t = 0; t < ng; ++t)
          gp[t][unit(s, c, k)] = unit(g.mul(t, s), c, k);
        for (int l = 0; l < nh; ++l)
          hp[l][unit(s, c, k)] = unit(s, c, h.mul(k, l));
      }
  const auto r = relation_groupoid(class_of);
  CommutingInstance out;
  out.seed = seed;
  out.g = relation_action(g, r, gp, Side::left);
  out.h = relation_action(h, r, hp, Side::right);
  out.groupoid = r;

  const bool isotropy = options.isotropy && std::bernoulli_distribution(0.3)(rng);
  if (isotropy) {
    const auto k = cyclic_group(2).groupoid();
    const auto x = product_groupoid(r, k);
    out.g = product_action(out.g, k, x);
    out.h = product_action(out.h, k, x);
    out.groupoid = x;
  }
  if (options.relabel) {
    std::vector<ArrowIndex> perm(out.groupoid.num_arrows());
    std::vector<UnitIndex> unit_perm(out.groupoid.num_units());
    std::iota(perm.begin(), perm.end(), 0);
    std::iota(unit_perm.begin(), unit_perm.end(), 0);
    std::shuffle(perm.begin(), perm.end(), rng);
    std::shuffle(unit_perm.begin(), unit_perm.end(), rng);
    const auto x = relabel_groupoid(out.groupoid, perm, unit_perm);
    out.g = relabel_action(out.g, x, perm);
    out.h = relabel_action(out.h, x, perm);
    out.groupoid = x;
  }
  out.description = "G order " + std::to_string(ng) + ", H order " + std::to_string(nh) + ", " +
                    std::to_string(n) + " units, " + std::to_string(out.groupoid.num_arrows()) + " arrows" +
                    (isotropy ? ", Z/2 isotropy" : "");
  return out;
}

GroupoidEquivalence corrupt_one_entry(const GroupoidEquivalence& e, std::uint64_t seed, std::string* what)
{
  Rng rng(seed);
  auto pick = [&](std::size_t n) { return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng); };
  auto other = [&](std::int32_t current, std::size_t n) {
    if (n < 2)
      return current;
    auto v = static_cast<std::int32_t>(pick(n - 1));
    return v >= current ? v + 1 : v;
  };
  const std::size_t nz = e.num_points();
  GroupoidEquivalence out = e;
  std::string desc;
  for (int attempt = 0; attempt < 64 && desc.empty(); ++attempt) {
    switch (pick(6)) {
    case 0:
    case 1: {
      const bool left = pick(2) == 0;
      const SpaceAction& a = left ? e.left : e.right;
      const auto x = static_cast<ArrowIndex>(pick(a.groupoid().num_arrows()));
      const auto u = static_cast<PointIndex>(pick(nz));
      const PointIndex cur = a.act(x, u);
      if (cur == kUndefined || nz < 2)
        break;
      const PointIndex v = other(cur, nz);
      (left ? out.left : out.right) = a.with_entry(x, u, v);
      desc = std::string(left ? "left" : "right") + " action entry (" + a.groupoid().arrow_name(x) + ", " +
             a.point_name(u) + ") -> " + a.point_name(v);
      break;
    }
    case 2:
    case 3: {
      const bool left = pick(2) == 0;
      const SpaceAction& a = left ? e.left : e.right;
      const auto u = static_cast<PointIndex>(pick(nz));
      const std::size_t nu = a.groupoid().num_units();
      if (nu < 2)
        break;
      const UnitIndex v = other(a.fibring(u), nu);
      (left ? out.left : out.right) = a.with_fibring(u, v);
      desc = std::string(left ? "rho" : "sigma") + "(" + a.point_name(u) + ") -> " + a.groupoid().unit_name(v);
      break;
    }
    default: {
      const bool left = pick(2) == 0;
      auto& table = left ? out.left_brackets : out.right_brackets;
      const FiniteGroupoid& target = left ? e.p() : e.q();
      const std::size_t i = pick(table.size());
      if (table[i] == kUndefined || target.num_arrows() < 2)
        break;
      table[i] = other(table[i], target.num_arrows());
      desc = std::string(left ? "left" : "right") + " bracket [" + e.left.point_name(static_cast<PointIndex>(i / nz)) +
             ", " + e.left.point_name(static_cast<PointIndex>(i % nz)) + "] -> " + target.arrow_name(table[i]);
      break;
    }
    }
  }
  if (desc.empty())
    throw PreconditionError("corrupt_one_entry: no entry can be changed");
  if (what)
    *what = desc;
  return out;
}

Matrix random_unitary(Rng& rng, int n)
{
  std::normal_distribution<double> nd;
  Matrix m(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      m(i, j) = Complex(nd(rng), nd(rng));
  Eigen::HouseholderQR<Matrix> qr(m);
  Matrix q = qr.householderQ();
  const Matrix rr = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int j = 0; j < n; ++j)
    q.col(j) *= rr(j, j) / std::abs(rr(j, j));
  return q;
}

BundleAction random_unitary_bundle_action(const GroupAction& a, std::uint64_t seed, int max_dim)
{
  Rng rng(seed);
  const auto& x = a.target();
  const auto nu = static_cast<UnitIndex>(x.num_units());
  const auto ng = static_cast<ElementIndex>(a.group().order());
  std::vector<int> dims(static_cast<std::size_t>(nu), 0);
  std::uniform_int_distribution<int> pick(1, std::max(1, max_dim));
  for (UnitIndex u = 0; u < nu; ++u)
    if (dims[u] == 0) {
      const int d = pick(rng);
      for (ElementIndex t = 0; t < ng; ++t)
        dims[a.act_unit(t, u)] = d;
    }
  std::vector<Matrix> v;
  for (UnitIndex u = 0; u < nu; ++u)
    v.push_back(random_unitary(rng, dims[u]));
  std::vector<Matrix> w;
  for (ElementIndex t = 0; t < ng; ++t)
    for (UnitIndex u = 0; u < nu; ++u)
      w.push_back(v[a.act_unit(t, u)] * v[u].adjoint());
  return unitary_action(matrix_bundle(x, dims), dims, a, w);
}

} // namespace groupoidal
