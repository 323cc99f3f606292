#include "groupoidal/group.hpp"

#include <algorithm>
#include <numeric>

namespace groupoidal {

FiniteGroup::FiniteGroup(FiniteGroupoid g) : groupoid_(std::move(g))
{
  if (groupoid_.num_units() != 1)
    throw PreconditionError("FiniteGroup: groupoid must have exactly one unit, has " +
                            std::to_string(groupoid_.num_units()));
}

std::vector<std::vector<ElementIndex>> FiniteGroup::table() const
{
  const auto n = static_cast<ElementIndex>(order());
  std::vector<std::vector<ElementIndex>> t(order(), std::vector<ElementIndex>(order()));
  for (ElementIndex a = 0; a < n; ++a)
    for (ElementIndex b = 0; b < n; ++b)
      t[a][b] = mul(a, b);
  return t;
}

FiniteGroup make_group(const std::vector<std::vector<ElementIndex>>& table,
                       std::vector<std::string> names)
{
  const std::size_t n = table.size();
  if (n == 0)
    throw PreconditionError("make_group: empty table");
  for (std::size_t a = 0; a < n; ++a) {
    if (table[a].size() != n)
      throw PreconditionError("make_group: row " + std::to_string(a) + " has wrong length");
    for (auto v : table[a])
      if (v < 0 || static_cast<std::size_t>(v) >= n)
        throw PreconditionError("make_group: entry out of range in row " + std::to_string(a));
  }
  if (names.empty())
    for (std::size_t a = 0; a < n; ++a)
      names.push_back(std::to_string(a));
  if (names.size() != n)
    throw PreconditionError("make_group: wrong number of element names");

  auto at = [&](std::size_t a, std::size_t b) { return static_cast<std::size_t>(table[a][b]); };
  for (std::size_t a = 0; a < n; ++a) {
    std::vector<char> row(n, 0), col(n, 0);
    for (std::size_t b = 0; b < n; ++b) {
      if (row[at(a, b)]++)
        throw PreconditionError("make_group: not a Latin square, row " + names[a] + " repeats " +
                                names[at(a, b)]);
      if (col[at(b, a)]++)
        throw PreconditionError("make_group: not a Latin square, column " + names[a] +
                                " repeats " + names[at(b, a)]);
    }
  }
  std::size_t e = n;
  for (std::size_t c = 0; c < n && e == n; ++c) {
    bool ok = true;
    for (std::size_t a = 0; a < n && ok; ++a)
      ok = at(c, a) == a && at(a, c) == a;
    if (ok)
      e = c;
  }
  if (e == n)
    throw PreconditionError("make_group: no identity element");
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      for (std::size_t c = 0; c < n; ++c)
        if (at(at(a, b), c) != at(a, at(b, c)))
          throw PreconditionError("make_group: not associative at triple (" + names[a] + ", " +
                                  names[b] + ", " + names[c] + ")");
  std::vector<ElementIndex> inv(n);
  for (std::size_t a = 0; a < n; ++a) {
    auto it = std::find_if(table[a].begin(), table[a].end(),
                           [&](ElementIndex v) { return static_cast<std::size_t>(v) == e; });
    const auto b = static_cast<std::size_t>(it - table[a].begin());
    if (at(b, a) != e)
      throw PreconditionError("make_group: element " + names[a] + " has no two-sided inverse");
    inv[a] = static_cast<ElementIndex>(b);
  }
  std::vector<ElementIndex> comp(n * n);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      comp[a * n + b] = table[a][b];
  return FiniteGroup(FiniteGroupoid({"*"}, std::move(names), std::vector<UnitIndex>(n, 0),
                                    std::vector<UnitIndex>(n, 0), std::move(comp), std::move(inv),
                                    {static_cast<ArrowIndex>(e)}));
}

FiniteGroup trivial_group() { return make_group({{0}}, {"e"}); }

FiniteGroup cyclic_group(std::size_t n)
{
  if (n == 0)
    throw PreconditionError("cyclic_group: order must be positive");
  std::vector<std::vector<ElementIndex>> t(n, std::vector<ElementIndex>(n));
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      t[a][b] = static_cast<ElementIndex>((a + b) % n);
  return make_group(t);
}

FiniteGroup direct_product(const FiniteGroup& g, const FiniteGroup& h)
{
  const auto ng = static_cast<ElementIndex>(g.order());
  const auto nh = static_cast<ElementIndex>(h.order());
  std::vector<std::vector<ElementIndex>> t(g.order() * h.order());
  std::vector<std::string> names;
  for (ElementIndex a = 0; a < ng; ++a)
    for (ElementIndex b = 0; b < nh; ++b) {
      names.push_back("(" + g.name(a) + "," + h.name(b) + ")");
      auto& row = t[a * nh + b];
      for (ElementIndex c = 0; c < ng; ++c)
        for (ElementIndex d = 0; d < nh; ++d)
          row.push_back(g.mul(a, c) * nh + h.mul(b, d));
    }
  return make_group(t, std::move(names));
}

FiniteGroup symmetric_group(std::size_t n)
{
  std::vector<std::vector<int>> perms;
  std::vector<int> p(n);
  std::iota(p.begin(), p.end(), 0);
  do {
    perms.push_back(p);
  } while (std::next_permutation(p.begin(), p.end()));
  std::vector<std::string> names;
  for (const auto& q : perms) {
    std::string s = "[";
    for (std::size_t i = 0; i < n; ++i)
      s += (i ? " " : "") + std::to_string(q[i] + 1);
    names.push_back(s + "]");
  }
  std::vector<std::vector<ElementIndex>> t(perms.size());
  for (std::size_t a = 0; a < perms.size(); ++a)
    for (std::size_t b = 0; b < perms.size(); ++b) {
      std::vector<int> c(n);
      for (std::size_t i = 0; i < n; ++i)
        c[i] = perms[a][perms[b][i]];
      t[a].push_back(static_cast<ElementIndex>(std::find(perms.begin(), perms.end(), c) - perms.begin()));
    }
  return make_group(t, std::move(names));
}

FiniteGroup subgroup(const FiniteGroup& g, const std::vector<ElementIndex>& elements)
{
  const std::size_t n = elements.size();
  std::vector<std::vector<ElementIndex>> t(n);
  std::vector<std::string> names;
  for (std::size_t a = 0; a < n; ++a) {
    names.push_back(g.name(elements[a]));
    for (std::size_t b = 0; b < n; ++b) {
      auto it = std::find(elements.begin(), elements.end(), g.mul(elements[a], elements[b]));
      if (it == elements.end())
        throw PreconditionError("subgroup: element set not closed under multiplication");
      t[a].push_back(static_cast<ElementIndex>(it - elements.begin()));
    }
  }
  return make_group(t, std::move(names));
}

} // namespace groupoidal
