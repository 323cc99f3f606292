#include "groupoidal/model.hpp"

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <json.hpp>
#include <optional>
#include <sstream>

#include "groupoidal/fell_bundle.hpp"

namespace groupoidal {

ParseError::ParseError(std::string source, int line, int column, std::string cause)
  : std::runtime_error(source + ":" + std::to_string(line) + ":" + std::to_string(column) + ": " + cause),
    source_(std::move(source)),
    line_(line),
    column_(column),
    cause_(std::move(cause))
{
}

const std::vector<ScenarioSignature>& scenario_signatures()
{
  static const std::vector<ScenarioSignature> s{
      {"symmetric", {"bundle-action", "bundle-action"}},
      {"one-sided", {"bundle-action"}},
      {"transformation", {"bundle", "space-action", "space-action"}},
      {"cstar-bundle", {"bundle-action"}},
      {"raeburn", {"algebra", "space-action", "space-action", "algebra-action", "algebra-action"}},
      {"coaction", {"bundle"}},
      {"groupoid", {"action", "action"}},
  };
  return s;
}

// ---------------------------------------------------------------- numbers

namespace {

double parse_real(std::string_view s)
{
  auto decimal = [](std::string_view t) {
    if (!t.empty() && t.front() == '+')
      t.remove_prefix(1);
    double v = 0.0;
    const auto [p, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
    if (t.empty() || ec != std::errc{} || p != t.data() + t.size())
      throw std::invalid_argument("malformed number '" + std::string(t) + "'");
    return v;
  };
  const auto slash = s.find('/');
  if (slash == std::string_view::npos)
    return decimal(s);
  const double den = decimal(s.substr(slash + 1));
  if (den == 0.0)
    throw std::invalid_argument("zero denominator in '" + std::string(s) + "'");
  return decimal(s.substr(0, slash)) / den;
}

std::string format_real(double v)
{
  char buf[40];
  for (int prec = 15; prec <= 17; ++prec) {
    std::snprintf(buf, sizeof buf, "%.*g", prec, v);
    double back = 0.0;
    std::from_chars(buf, buf + std::char_traits<char>::length(buf), back);
    if (back == v)
      break;
  }
  return buf;
}

} // namespace

Complex parse_number(std::string_view t)
{
  if (t.empty())
    throw std::invalid_argument("empty number");
  if (t.back() != 'i')
    return {parse_real(t), 0.0};
  t.remove_suffix(1);
  // split at the last sign that is not leading and not an exponent sign
  std::size_t split = std::string_view::npos;
  for (std::size_t k = t.size(); k-- > 1;)
    if ((t[k] == '+' || t[k] == '-') && t[k - 1] != 'e' && t[k - 1] != 'E') {
      split = k;
      break;
    }
  const std::string_view re = split == std::string_view::npos ? std::string_view{} : t.substr(0, split);
  const std::string_view im = split == std::string_view::npos ? t : t.substr(split);
  double imag = 0.0;
  if (im.empty() || im == "+")
    imag = 1.0;
  else if (im == "-")
    imag = -1.0;
  else
    imag = parse_real(im);
  return {re.empty() ? 0.0 : parse_real(re), imag};
}

std::string format_number(Complex z)
{
  if (z.imag() == 0.0)
    return format_real(z.real());
  std::string im = format_real(z.imag());
  if (im.front() != '-')
    im.insert(im.begin(), '+');
  if (z.real() == 0.0)
    return (im.front() == '+' ? im.substr(1) : im) + "i";
  return format_real(z.real()) + im + "i";
}

// ---------------------------------------------------------------- model

bool ModelFile::empty() const
{
  return groups.empty() && groupoids.empty() && actions.empty() && space_actions.empty() && algebras.empty() &&
         algebra_actions.empty() && bundles.empty() && bundle_actions.empty() && scenarios.empty();
}

namespace {

template <class T>
const T* find_named(const std::vector<T>& v, std::string_view name)
{
  for (const auto& e : v)
    if (e.name == name)
      return &e;
  return nullptr;
}

bool same(const Matrix& a, const Matrix& b) { return a.rows() == b.rows() && a.cols() == b.cols() && a == b; }

bool same(const std::vector<Matrix>& a, const std::vector<Matrix>& b)
{
  if (a.size() != b.size())
    return false;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (!same(a[i], b[i]))
      return false;
  return true;
}

bool same(const GroupAction& a, const GroupAction& b)
{
  return a.group() == b.group() && a.target() == b.target() && a.side() == b.side() && a.table() == b.table();
}

bool same(const SpaceAction& a, const SpaceAction& b)
{
  return a.groupoid() == b.groupoid() && a.points() == b.points() && a.fibring_map() == b.fibring_map() &&
         a.side() == b.side() && a.table() == b.table();
}

bool same(const StarAlgebra& a, const StarAlgebra& b)
{
  if (a.dim() != b.dim() || a.basis_names() != b.basis_names() || !same(a.star(), b.star()))
    return false;
  for (Eigen::Index i = 0; i < a.dim(); ++i)
    if (!same(Matrix(a.left(i)), Matrix(b.left(i))))
      return false;
  return true;
}

bool same(const FellBundle& a, const FellBundle& b)
{
  if (!(a.base() == b.base()) || a.dims() != b.dims())
    return false;
  const auto n = static_cast<ArrowIndex>(a.base().num_arrows());
  for (ArrowIndex x = 0; x < n; ++x) {
    if (!same(a.star(x), b.star(x)))
      return false;
    for (ArrowIndex y = 0; y < n; ++y)
      if (!same(a.mult(x, y), b.mult(x, y)))
        return false;
  }
  return true;
}

bool same(const BundleAction& a, const BundleAction& b)
{
  if (!same(a.bundle(), b.bundle()) || !same(a.base_action(), b.base_action()))
    return false;
  for (ElementIndex t = 0; t < static_cast<ElementIndex>(a.group().order()); ++t)
    for (ArrowIndex x = 0; x < static_cast<ArrowIndex>(a.bundle().base().num_arrows()); ++x)
      if (!same(a.map(t, x), b.map(t, x)))
        return false;
  return true;
}

} // namespace

const GroupEntry* ModelFile::find_group(std::string_view n) const { return find_named(groups, n); }
const GroupoidEntry* ModelFile::find_groupoid(std::string_view n) const { return find_named(groupoids, n); }
const ActionEntry* ModelFile::find_action(std::string_view n) const { return find_named(actions, n); }
const SpaceActionEntry* ModelFile::find_space_action(std::string_view n) const { return find_named(space_actions, n); }
const AlgebraEntry* ModelFile::find_algebra(std::string_view n) const { return find_named(algebras, n); }
const AlgebraActionEntry* ModelFile::find_algebra_action(std::string_view n) const
{
  return find_named(algebra_actions, n);
}
const BundleEntry* ModelFile::find_bundle(std::string_view n) const { return find_named(bundles, n); }
const BundleActionEntry* ModelFile::find_bundle_action(std::string_view n) const
{
  return find_named(bundle_actions, n);
}
const Scenario* ModelFile::find_scenario(std::string_view n) const { return find_named(scenarios, n); }

std::string ModelFile::kind_of(std::string_view n) const
{
  if (find_group(n))
    return "group";
  if (find_groupoid(n))
    return "groupoid";
  if (find_action(n))
    return "action";
  if (find_space_action(n))
    return "space-action";
  if (find_algebra(n))
    return "algebra";
  if (find_algebra_action(n))
    return "algebra-action";
  if (find_bundle(n))
    return "bundle";
  if (find_bundle_action(n))
    return "bundle-action";
  if (find_scenario(n))
    return "scenario";
  return {};
}

bool ModelFile::operator==(const ModelFile& o) const
{
  auto eq = [](const auto& a, const auto& b, auto&& cmp) {
    if (a.size() != b.size())
      return false;
    for (std::size_t i = 0; i < a.size(); ++i)
      if (a[i].name != b[i].name || !cmp(a[i], b[i]))
        return false;
    return true;
  };
  return version == o.version &&
         eq(groups, o.groups, [](auto& a, auto& b) { return a.group == b.group; }) &&
         eq(groupoids, o.groupoids, [](auto& a, auto& b) { return a.groupoid == b.groupoid; }) &&
         eq(actions, o.actions,
            [](auto& a, auto& b) { return a.group == b.group && a.groupoid == b.groupoid && same(a.action, b.action); }) &&
         eq(space_actions, o.space_actions,
            [](auto& a, auto& b) { return a.groupoid == b.groupoid && same(a.action, b.action); }) &&
         eq(algebras, o.algebras, [](auto& a, auto& b) { return same(a.algebra, b.algebra); }) &&
         eq(algebra_actions, o.algebra_actions,
            [](auto& a, auto& b) {
              return a.group == b.group && a.algebra == b.algebra && a.action.side == b.action.side &&
                     a.action.group == b.action.group && same(a.action.algebra, b.action.algebra) &&
                     same(a.action.maps, b.action.maps);
            }) &&
         eq(bundles, o.bundles, [](auto& a, auto& b) { return a.base == b.base && same(a.bundle, b.bundle); }) &&
         eq(bundle_actions, o.bundle_actions,
            [](auto& a, auto& b) {
              return a.bundle == b.bundle && a.base_action == b.base_action && same(a.action, b.action);
            }) &&
         eq(scenarios, o.scenarios, [](auto& a, auto& b) { return a.kind == b.kind && a.args == b.args; });
}

// ---------------------------------------------------------------- parser

namespace {

struct Token {
  std::string text;
  int column = 0;
};

struct Line {
  int number = 0;
  std::vector<Token> tokens;
};

std::vector<Line> tokenize(std::string_view text)
{
  std::vector<Line> lines;
  int number = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t eol = std::min(text.find('\n', pos), text.size());
    std::string_view raw = text.substr(pos, eol - pos);
    ++number;
    if (const auto hash = raw.find('#'); hash != std::string_view::npos)
      raw = raw.substr(0, hash);
    Line line{number, {}};
    std::size_t i = 0;
    while (i < raw.size()) {
      while (i < raw.size() && (raw[i] == ' ' || raw[i] == '\t' || raw[i] == '\r'))
        ++i;
      const std::size_t start = i;
      while (i < raw.size() && raw[i] != ' ' && raw[i] != '\t' && raw[i] != '\r')
        ++i;
      if (i > start)
        line.tokens.push_back({std::string(raw.substr(start, i - start)), static_cast<int>(start) + 1});
    }
    if (!line.tokens.empty())
      lines.push_back(std::move(line));
    pos = eol + 1;
  }
  return lines;
}

class Parser {
public:
  Parser(std::string_view text, std::string_view source) : lines_(tokenize(text)), source_(source) {}

  ModelFile parse()
  {
    if (at_end())
      return model_;
    const Line& head = next();
    if (head.tokens[0].text != "groupoidal-model")
      fail(head, 0, "expected 'groupoidal-model <version>' header");
    model_.version = integer(head, 1);
    if (model_.version != 1)
      fail(head, 1, "unsupported format version " + std::to_string(model_.version));
    while (!at_end()) {
      const Line& h = next();
      const std::string& kind = h.tokens[0].text;
      if (h.tokens.size() != 2)
        fail(h, 0, "expected '<kind> <name>'");
      const std::string& name = h.tokens[1].text;
      if (!model_.kind_of(name).empty())
        fail(h, 1, "duplicate name '" + name + "'");
      const auto body = block();
      try {
        if (kind == "group")
          group(name, body);
        else if (kind == "groupoid")
          groupoid(name, body);
        else if (kind == "action")
          action(name, body);
        else if (kind == "space-action")
          space_action(name, body);
        else if (kind == "algebra")
          algebra(name, body);
        else if (kind == "algebra-action")
          algebra_action(name, body);
        else if (kind == "bundle")
          bundle(name, body);
        else if (kind == "bundle-action")
          bundle_action(name, body);
        else if (kind == "scenario")
          scenario(name, body);
        else
          fail(h, 0, "unknown object kind '" + kind + "'");
      } catch (const PreconditionError& e) {
        fail(h, 1, std::string(kind) + " '" + name + "': " + e.what());
      }
    }
    return std::move(model_);
  }

private:
  // ---- line helpers

  bool at_end() const { return cur_ >= lines_.size(); }
  const Line& next() { return lines_[cur_++]; }

  [[noreturn]] void fail(const Line& l, std::size_t tok, const std::string& cause) const
  {
    const int col = tok < l.tokens.size() ? l.tokens[tok].column : (l.tokens.empty() ? 1 : l.tokens.back().column);
    throw ParseError(source_, l.number, col, cause);
  }

  /// Body lines of the current object, up to the matching `end`.
  std::vector<const Line*> block()
  {
    std::vector<const Line*> body;
    const Line& open = lines_[cur_ - 1];
    while (true) {
      if (at_end())
        fail(open, 0, "missing 'end'");
      const Line& l = next();
      if (l.tokens[0].text == "end" && l.tokens.size() == 1)
        return body;
      body.push_back(&l);
    }
  }

  int integer(const Line& l, std::size_t tok) const
  {
    if (tok >= l.tokens.size())
      fail(l, tok, "missing integer");
    const auto& t = l.tokens[tok].text;
    int v = 0;
    const auto [p, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
    if (ec != std::errc{} || p != t.data() + t.size())
      fail(l, tok, "malformed integer '" + t + "'");
    return v;
  }

  Complex number(const Line& l, std::size_t tok) const
  {
    try {
      return parse_number(l.tokens[tok].text);
    } catch (const std::invalid_argument& e) {
      fail(l, tok, e.what());
    }
  }

  void arity(const Line& l, std::size_t n) const
  {
    if (l.tokens.size() != n)
      fail(l, std::min(n, l.tokens.size()), "expected " + std::to_string(n - 1) + " argument(s) after '" +
                                                 l.tokens[0].text + "'");
  }

  std::vector<std::string> rest(const Line& l, std::size_t from = 1) const
  {
    std::vector<std::string> out;
    for (std::size_t i = from; i < l.tokens.size(); ++i)
      out.push_back(l.tokens[i].text);
    return out;
  }

  /// Reads an r×c matrix from the body lines following index i.
  Matrix matrix(const std::vector<const Line*>& body, std::size_t& i, Eigen::Index r, Eigen::Index c) const
  {
    Matrix m(r, c);
    if (c == 0)
      return m;
    for (Eigen::Index row = 0; row < r; ++row) {
      if (i + 1 >= body.size())
        fail(*body[i], 0, "expected " + std::to_string(r) + " matrix rows");
      const Line& l = *body[++i];
      if (static_cast<Eigen::Index>(l.tokens.size()) != c)
        fail(l, 0, "expected " + std::to_string(c) + " entries per row, found " + std::to_string(l.tokens.size()));
      for (Eigen::Index col = 0; col < c; ++col)
        m(row, col) = number(l, static_cast<std::size_t>(col));
    }
    return m;
  }

  template <class Find>
  auto resolve(const Line& l, std::size_t tok, const char* kind, Find find) const
  {
    if (tok >= l.tokens.size())
      fail(l, tok, std::string("missing ") + kind + " name");
    const auto* e = find(l.tokens[tok].text);
    if (!e) {
      const auto actual = model_.kind_of(l.tokens[tok].text);
      fail(l, tok, "unknown " + std::string(kind) + " '" + l.tokens[tok].text + "'" +
                       (actual.empty() ? "" : " (it is a " + actual + ")"));
    }
    return e;
  }

  const GroupEntry* group_ref(const Line& l, std::size_t t) const
  { return resolve(l, t, "group", [&](auto& n) { return model_.find_group(n); }); }
  const GroupoidEntry* groupoid_ref(const Line& l, std::size_t t) const
  { return resolve(l, t, "groupoid", [&](auto& n) { return model_.find_groupoid(n); }); }
  const ActionEntry* action_ref(const Line& l, std::size_t t) const
  { return resolve(l, t, "action", [&](auto& n) { return model_.find_action(n); }); }
  const AlgebraEntry* algebra_ref(const Line& l, std::size_t t) const
  { return resolve(l, t, "algebra", [&](auto& n) { return model_.find_algebra(n); }); }
  const AlgebraActionEntry* algebra_action_ref(const Line& l, std::size_t t) const
  { return resolve(l, t, "algebra-action", [&](auto& n) { return model_.find_algebra_action(n); }); }
  const BundleEntry* bundle_ref(const Line& l, std::size_t t) const
  { return resolve(l, t, "bundle", [&](auto& n) { return model_.find_bundle(n); }); }

  template <class Lookup>
  std::int32_t index_of(const Line& l, std::size_t tok, const char* what, Lookup lookup) const
  {
    const auto v = lookup(l.tokens[tok].text);
    if (!v)
      fail(l, tok, std::string("unknown ") + what + " '" + l.tokens[tok].text + "'");
    return *v;
  }

  static Side side_of(const Parser& p, const Line& l)
  {
    p.arity(l, 2);
    if (l.tokens[1].text == "left")
      return Side::left;
    if (l.tokens[1].text == "right")
      return Side::right;
    p.fail(l, 1, "side must be 'left' or 'right'");
  }

  static const Line& head_of(const std::vector<const Line*>& body, const Line& fallback)
  {
    return body.empty() ? fallback : *body.front();
  }

  const Line& header() const { return lines_[cur_ - 1]; }

  // ---- objects

  void group(const std::string& name, const std::vector<const Line*>& body)
  {
    std::vector<std::string> names;
    std::vector<std::vector<ElementIndex>> table;
    std::optional<FiniteGroup> g;
    for (std::size_t i = 0; i < body.size(); ++i) {
      const Line& l = *body[i];
      const auto& key = l.tokens[0].text;
      if (key == "cyclic") {
        arity(l, 2);
        g = cyclic_group(static_cast<std::size_t>(integer(l, 1)));
      } else if (key == "symmetric") {
        arity(l, 2);
        g = symmetric_group(static_cast<std::size_t>(integer(l, 1)));
      } else if (key == "trivial") {
        arity(l, 1);
        g = trivial_group();
      } else if (key == "product") {
        arity(l, 3);
        g = direct_product(group_ref(l, 1)->group, group_ref(l, 2)->group);
      } else if (key == "elements") {
        names = rest(l);
      } else if (key == "table") {
        if (names.empty())
          fail(l, 0, "'table' needs 'elements' first");
        for (std::size_t r = 0; r < names.size(); ++r) {
          if (i + 1 >= body.size())
            fail(l, 0, "table needs " + std::to_string(names.size()) + " rows");
          const Line& row = *body[++i];
          if (row.tokens.size() != names.size())
            fail(row, 0, "table row needs " + std::to_string(names.size()) + " entries");
          std::vector<ElementIndex> out;
          for (std::size_t c = 0; c < names.size(); ++c) {
            const auto it = std::find(names.begin(), names.end(), row.tokens[c].text);
            if (it == names.end())
              fail(row, c, "unknown element '" + row.tokens[c].text + "'");
            out.push_back(static_cast<ElementIndex>(it - names.begin()));
          }
          table.push_back(std::move(out));
        }
      } else {
        fail(l, 0, "unknown group field '" + key + "'");
      }
    }
    if (!g) {
      if (table.empty())
        fail(head_of(body, header()), 0, "group needs a table or a generator");
      g = make_group(table, names);
      model_.operations.insert("make_group");
    }
    model_.groups.push_back({name, std::move(*g)});
  }

  void groupoid(const std::string& name, const std::vector<const Line*>& body)
  {
    std::optional<FiniteGroupoid> out;
    std::vector<std::string> units, arrows;
    std::vector<std::string> range, source, identity, inverse;
    std::vector<std::vector<std::string>> comp;
    const Line* comp_line = nullptr;
    for (std::size_t i = 0; i < body.size(); ++i) {
      const Line& l = *body[i];
      const auto& key = l.tokens[0].text;
      if (key == "pair") {
        arity(l, 2);
        const int n = integer(l, 1);
        if (n <= 0)
          fail(l, 1, "pair needs a positive size");
        out = make_pair_groupoid(static_cast<std::size_t>(n));
        model_.operations.insert("make_pair_groupoid");
      } else if (key == "points") {
        out = make_unit_groupoid(rest(l));
      } else if (key == "group") {
        arity(l, 2);
        out = group_ref(l, 1)->group.groupoid();
      } else if (key == "product") {
        arity(l, 3);
        out = product_groupoid(groupoid_ref(l, 1)->groupoid, groupoid_ref(l, 2)->groupoid);
      } else if (key == "units") {
        units = rest(l);
      } else if (key == "arrows") {
        arrows = rest(l);
      } else if (key == "range") {
        range = rest(l);
      } else if (key == "source") {
        source = rest(l);
      } else if (key == "identity") {
        identity = rest(l);
      } else if (key == "inverse") {
        inverse = rest(l);
      } else if (key == "compose") {
        comp_line = &l;
        for (std::size_t r = 0; r < arrows.size(); ++r) {
          if (i + 1 >= body.size())
            fail(l, 0, "compose needs one row per arrow");
          comp.push_back(rest(*body[++i], 0));
          if (comp.back().size() != arrows.size())
            fail(*body[i], 0, "compose row needs " + std::to_string(arrows.size()) + " entries");
        }
      } else {
        fail(l, 0, "unknown groupoid field '" + key + "'");
      }
    }
    if (!out) {
      const Line& h = head_of(body, header());
      if (units.empty() || arrows.empty())
        fail(h, 0, "groupoid needs 'units' and 'arrows' or a generator");
      auto lookup = [&](const std::vector<std::string>& names, const std::string& v, const char* what) {
        const auto it = std::find(names.begin(), names.end(), v);
        if (it == names.end())
          fail(h, 0, std::string("unknown ") + what + " '" + v + "'");
        return static_cast<std::int32_t>(it - names.begin());
      };
      auto map_all = [&](const std::vector<std::string>& vals, const std::vector<std::string>& names,
                         std::size_t n, const char* field, const char* what) {
        if (vals.size() != n)
          fail(h, 0, std::string("'") + field + "' needs " + std::to_string(n) + " entries");
        std::vector<std::int32_t> r;
        for (const auto& v : vals)
          r.push_back(lookup(names, v, what));
        return r;
      };
      const auto rng = map_all(range, units, arrows.size(), "range", "unit");
      const auto src = map_all(source, units, arrows.size(), "source", "unit");
      const auto unit_arrow = map_all(identity, arrows, units.size(), "identity", "arrow");
      const auto inv = map_all(inverse, arrows, arrows.size(), "inverse", "arrow");
      if (!comp_line)
        fail(h, 0, "groupoid needs a 'compose' table");
      std::vector<ArrowIndex> table;
      for (const auto& row : comp)
        for (const auto& v : row)
          table.push_back(v == "-" ? kUndefined : lookup(arrows, v, "arrow"));
      out = FiniteGroupoid(units, arrows, src, rng, table, inv, unit_arrow);
    }
    model_.groupoids.push_back({name, std::move(*out)});
  }

  void action(const std::string& name, const std::vector<const Line*>& body)
  {
    const GroupEntry* g = nullptr;
    const GroupoidEntry* x = nullptr;
    std::optional<Side> side;
    std::optional<GroupAction> out;
    std::vector<ArrowIndex> table;
    std::vector<char> seen;
    for (std::size_t i = 0; i < body.size(); ++i) {
      const Line& l = *body[i];
      const auto& key = l.tokens[0].text;
      if (key == "group") {
        arity(l, 2);
        g = group_ref(l, 1);
      } else if (key == "groupoid") {
        arity(l, 2);
        x = groupoid_ref(l, 1);
      } else if (key == "side") {
        side = side_of(*this, l);
      } else if (!g || !x || !side) {
        fail(l, 0, "'group', 'groupoid' and 'side' must come first");
      } else if (key == "trivial") {
        out = trivial_action(g->group, x->groupoid, *side);
      } else if (key == "permutations") {
        out = permutation_action(body, i, g->group, x->groupoid, *side);
      } else if (key == "map") {
        const auto& xg = x->groupoid;
        if (table.empty()) {
          table.assign(g->group.order() * xg.num_arrows(), kUndefined);
          seen.assign(g->group.order(), 0);
        }
        if (l.tokens.size() != xg.num_arrows() + 2)
          fail(l, 0, "map needs an element and " + std::to_string(xg.num_arrows()) + " arrow images");
        const auto t = index_of(l, 1, "element", [&](auto& n) { return g->group.find(n); });
        seen[t] = 1;
        for (std::size_t a = 0; a < xg.num_arrows(); ++a)
          table[t * xg.num_arrows() + a] = index_of(l, a + 2, "arrow", [&](auto& n) { return xg.find_arrow(n); });
      } else {
        fail(l, 0, "unknown action field '" + key + "'");
      }
    }
    const Line& h = head_of(body, header());
    if (!g || !x || !side)
      fail(h, 0, "action needs 'group', 'groupoid' and 'side'");
    if (!out) {
      if (table.empty() || std::count(seen.begin(), seen.end(), 0) > 0)
        fail(h, 0, "action needs one 'map' line per group element");
      out = GroupAction(g->group, x->groupoid, *side, std::move(table));
    }
    model_.actions.push_back({name, g->name, x->name, std::move(*out)});
  }

  GroupAction permutation_action(const std::vector<const Line*>& body, std::size_t& i, const FiniteGroup& g,
                                 const FiniteGroupoid& x, Side side) const
  {
    const Line& head = *body[i];
    std::vector<ArrowIndex> table;
    for (std::size_t t = 0; t < g.order(); ++t) {
      if (i + 1 >= body.size())
        fail(head, 0, "permutations need one row per group element");
      const Line& row = *body[++i];
      if (row.tokens.size() != x.num_units())
        fail(row, 0, "permutation row needs " + std::to_string(x.num_units()) + " unit names");
      std::vector<UnitIndex> perm;
      for (std::size_t u = 0; u < x.num_units(); ++u)
        perm.push_back(index_of(row, u, "unit", [&](auto& n) { return x.find_unit(n); }));
      for (ArrowIndex a = 0; a < static_cast<ArrowIndex>(x.num_arrows()); ++a) {
        ArrowIndex image = kUndefined;
        for (ArrowIndex b : x.range_fiber(perm[x.rng(a)]))
          if (x.src(b) == perm[x.src(a)]) {
            if (image != kUndefined)
              fail(head, 0, "'permutations' needs a groupoid without isotropy");
            image = b;
          }
        if (image == kUndefined)
          fail(row, 0, "permutation does not preserve arrow " + x.arrow_name(a));
        table.push_back(image);
      }
    }
    return {g, x, side, std::move(table)};
  }

  void space_action(const std::string& name, const std::vector<const Line*>& body)
  {
    const GroupoidEntry* x = nullptr;
    std::optional<Side> side;
    std::optional<SpaceAction> out;
    std::vector<std::string> points, fibring;
    std::vector<PointIndex> table;
    for (std::size_t i = 0; i < body.size(); ++i) {
      const Line& l = *body[i];
      const auto& key = l.tokens[0].text;
      if (key == "groupoid") {
        arity(l, 2);
        x = groupoid_ref(l, 1);
      } else if (key == "side") {
        side = side_of(*this, l);
      } else if (!x || !side) {
        fail(l, 0, "'groupoid' and 'side' must come first");
      } else if (key == "translation") {
        arity(l, 1);
        if (x->groupoid.num_units() != 1)
          fail(l, 0, "'translation' needs a group");
        out = translation_action(FiniteGroup(x->groupoid), *side);
      } else if (key == "points") {
        points = rest(l);
      } else if (key == "fibring") {
        fibring = rest(l);
      } else if (key == "permutations") {
        if (x->groupoid.num_units() != 1)
          fail(l, 0, "'permutations' needs a group");
        if (points.empty())
          fail(l, 0, "'permutations' needs 'points' first");
        std::vector<std::vector<int>> perms;
        for (std::size_t t = 0; t < x->groupoid.num_arrows(); ++t) {
          if (i + 1 >= body.size())
            fail(l, 0, "permutations need one row per group element");
          const Line& row = *body[++i];
          if (row.tokens.size() != points.size())
            fail(row, 0, "permutation row needs " + std::to_string(points.size()) + " point names");
          std::vector<int> p;
          for (std::size_t u = 0; u < points.size(); ++u)
            p.push_back(index_of(row, u, "point", [&](const std::string& n) -> std::optional<int> {
              const auto it = std::find(points.begin(), points.end(), n);
              if (it == points.end())
                return std::nullopt;
              return static_cast<int>(it - points.begin());
            }));
          perms.push_back(std::move(p));
        }
        out = group_set_action(FiniteGroup(x->groupoid), points, perms, *side);
      } else if (key == "map") {
        const auto& xg = x->groupoid;
        if (points.empty())
          fail(l, 0, "'map' needs 'points' first");
        if (table.empty())
          table.assign(xg.num_arrows() * points.size(), kUndefined);
        if (l.tokens.size() != points.size() + 2)
          fail(l, 0, "map needs an arrow and " + std::to_string(points.size()) + " images");
        const auto a = index_of(l, 1, "arrow", [&](auto& n) { return xg.find_arrow(n); });
        for (std::size_t u = 0; u < points.size(); ++u) {
          const auto& v = l.tokens[u + 2].text;
          if (v == "-")
            continue;
          const auto it = std::find(points.begin(), points.end(), v);
          if (it == points.end())
            fail(l, u + 2, "unknown point '" + v + "'");
          table[a * points.size() + u] = static_cast<PointIndex>(it - points.begin());
        }
      } else {
        fail(l, 0, "unknown space-action field '" + key + "'");
      }
    }
    const Line& h = head_of(body, header());
    if (!x || !side)
      fail(h, 0, "space-action needs 'groupoid' and 'side'");
    if (!out) {
      if (points.empty())
        fail(h, 0, "space-action needs 'points'");
      if (fibring.size() != points.size())
        fail(h, 0, "'fibring' needs one unit per point");
      std::vector<UnitIndex> fib;
      for (const auto& f : fibring) {
        const auto u = x->groupoid.find_unit(f);
        if (!u)
          fail(h, 0, "unknown unit '" + f + "'");
        fib.push_back(*u);
      }
      if (table.empty())
        table.assign(x->groupoid.num_arrows() * points.size(), kUndefined);
      out = SpaceAction(x->groupoid, points, std::move(fib), *side, std::move(table));
    }
    if (!(out->groupoid() == x->groupoid))
      fail(h, 0, "space-action groupoid does not match '" + x->name + "'");
    model_.space_actions.push_back({name, x->name, std::move(*out)});
  }

  void algebra(const std::string& name, const std::vector<const Line*>& body)
  {
    std::optional<StarAlgebra> out;
    std::vector<std::string> basis;
    std::vector<std::optional<Matrix>> left;
    std::optional<Matrix> star;
    for (std::size_t i = 0; i < body.size(); ++i) {
      const Line& l = *body[i];
      const auto& key = l.tokens[0].text;
      if (key == "diagonal") {
        arity(l, 2);
        out = diagonal_algebra(integer(l, 1));
      } else if (key == "matrix") {
        arity(l, 2);
        out = matrix_algebra(integer(l, 1));
      } else if (key == "group-algebra") {
        arity(l, 2);
        out = group_algebra(group_ref(l, 1)->group);
      } else if (key == "sum") {
        arity(l, 3);
        out = direct_sum(algebra_ref(l, 1)->algebra, algebra_ref(l, 2)->algebra);
      } else if (key == "basis") {
        basis = rest(l);
        left.assign(basis.size(), std::nullopt);
      } else if (key == "left") {
        arity(l, 2);
        const auto it = std::find(basis.begin(), basis.end(), l.tokens[1].text);
        if (it == basis.end())
          fail(l, 1, "unknown basis element '" + l.tokens[1].text + "'");
        const auto n = static_cast<Eigen::Index>(basis.size());
        left[it - basis.begin()] = matrix(body, i, n, n);
      } else if (key == "star") {
        arity(l, 1);
        const auto n = static_cast<Eigen::Index>(basis.size());
        star = matrix(body, i, n, n);
      } else {
        fail(l, 0, "unknown algebra field '" + key + "'");
      }
    }
    if (!out) {
      const Line& h = head_of(body, header());
      if (basis.empty() || !star)
        fail(h, 0, "algebra needs 'basis', one 'left' per basis element and 'star'");
      std::vector<SparseMatrix> ls;
      for (std::size_t k = 0; k < left.size(); ++k) {
        if (!left[k])
          fail(h, 0, "missing 'left " + basis[k] + "'");
        ls.push_back(left[k]->sparseView());
      }
      out = StarAlgebra(std::move(ls), *star, basis);
    }
    model_.algebras.push_back({name, std::move(*out)});
  }

  void algebra_action(const std::string& name, const std::vector<const Line*>& body)
  {
    const GroupEntry* g = nullptr;
    const AlgebraEntry* b = nullptr;
    std::optional<Side> side;
    std::vector<std::optional<Matrix>> maps;
    for (std::size_t i = 0; i < body.size(); ++i) {
      const Line& l = *body[i];
      const auto& key = l.tokens[0].text;
      if (key == "group") {
        arity(l, 2);
        g = group_ref(l, 1);
      } else if (key == "algebra") {
        arity(l, 2);
        b = algebra_ref(l, 1);
      } else if (key == "side") {
        side = side_of(*this, l);
      } else if (!g || !b || !side) {
        fail(l, 0, "'group', 'algebra' and 'side' must come first");
      } else if (key == "trivial") {
        arity(l, 1);
        maps.assign(g->group.order(), Matrix::Identity(b->algebra.dim(), b->algebra.dim()));
      } else if (key == "map") {
        arity(l, 2);
        if (maps.empty())
          maps.assign(g->group.order(), std::nullopt);
        const auto t = index_of(l, 1, "element", [&](auto& n) { return g->group.find(n); });
        maps[t] = matrix(body, i, b->algebra.dim(), b->algebra.dim());
      } else {
        fail(l, 0, "unknown algebra-action field '" + key + "'");
      }
    }
    const Line& h = head_of(body, header());
    if (!g || !b || !side)
      fail(h, 0, "algebra-action needs 'group', 'algebra' and 'side'");
    std::vector<Matrix> ms;
    for (std::size_t t = 0; t < maps.size(); ++t) {
      if (!maps[t])
        fail(h, 0, "missing 'map " + g->group.name(static_cast<ElementIndex>(t)) + "'");
      ms.push_back(*maps[t]);
    }
    if (ms.size() != g->group.order())
      fail(h, 0, "algebra-action needs one 'map' per group element or 'trivial'");
    model_.algebra_actions.push_back({name, g->name, b->name, AlgebraAction{g->group, b->algebra, *side, ms}});
  }

  void bundle(const std::string& name, const std::vector<const Line*>& body)
  {
    const GroupoidEntry* x = nullptr;
    std::optional<FellBundle> out;
    std::vector<int> dims;
    std::vector<Matrix> mult, star;
    std::vector<char> star_seen;
    for (std::size_t i = 0; i < body.size(); ++i) {
      const Line& l = *body[i];
      const auto& key = l.tokens[0].text;
      if (key == "base") {
        arity(l, 2);
        x = groupoid_ref(l, 1);
        continue;
      }
      if (!x)
        fail(l, 0, "'base' must come first");
      const auto& xg = x->groupoid;
      const auto n = xg.num_arrows();
      if (key == "line") {
        arity(l, 1);
        out = trivial_line_bundle(xg);
      } else if (key == "matrix") {
        if (l.tokens.size() != xg.num_units() + 1)
          fail(l, 0, "'matrix' needs one dimension per unit");
        std::vector<int> ud;
        for (std::size_t u = 0; u < xg.num_units(); ++u)
          ud.push_back(integer(l, u + 1));
        out = matrix_bundle(xg, ud);
      } else if (key == "cbundle") {
        arity(l, 2);
        const auto* b = algebra_ref(l, 1);
        out = make_trivial_cbundle(b->algebra, xg.unit_names());
        model_.operations.insert("make_trivial_cbundle");
        if (!(out->base() == xg))
          fail(l, 0, "'cbundle' needs a base made of units only");
      } else if (key == "dims") {
        if (l.tokens.size() != n + 1)
          fail(l, 0, "'dims' needs one entry per arrow");
        for (std::size_t a = 0; a < n; ++a) {
          dims.push_back(integer(l, a + 1));
          if (dims.back() < 0)
            fail(l, a + 1, "negative dimension");
        }
        mult.assign(n * n, Matrix());
        star.assign(n, Matrix());
        star_seen.assign(n, 0);
      } else if (key == "mult") {
        arity(l, 3);
        if (dims.empty())
          fail(l, 0, "'mult' needs 'dims' first");
        const auto a = index_of(l, 1, "arrow", [&](auto& s) { return xg.find_arrow(s); });
        const auto b = index_of(l, 2, "arrow", [&](auto& s) { return xg.find_arrow(s); });
        if (!xg.composable(a, b))
          fail(l, 1, "arrows " + xg.arrow_name(a) + ", " + xg.arrow_name(b) + " are not composable");
        const auto ab = xg.compose(a, b);
        if (ab == kUndefined)
          fail(l, 1, "composition of " + xg.arrow_name(a) + ", " + xg.arrow_name(b) + " is undefined");
        mult[a * n + b] = matrix(body, i, dims[ab], dims[a] * dims[b]);
      } else if (key == "star") {
        arity(l, 2);
        if (dims.empty())
          fail(l, 0, "'star' needs 'dims' first");
        const auto a = index_of(l, 1, "arrow", [&](auto& s) { return xg.find_arrow(s); });
        star[a] = matrix(body, i, dims[xg.inv(a)], dims[a]);
        star_seen[a] = 1;
      } else {
        fail(l, 0, "unknown bundle field '" + key + "'");
      }
    }
    const Line& h = head_of(body, header());
    if (!x)
      fail(h, 0, "bundle needs 'base'");
    if (!out) {
      if (dims.empty())
        fail(h, 0, "bundle needs 'dims' or a generator");
      const auto& xg = x->groupoid;
      const auto n = xg.num_arrows();
      for (std::size_t a = 0; a < n; ++a) {
        if (!star_seen[a])
          fail(h, 0, "missing 'star " + xg.arrow_name(static_cast<ArrowIndex>(a)) + "'");
        for (std::size_t b = 0; b < n; ++b) {
          const auto ai = static_cast<ArrowIndex>(a), bi = static_cast<ArrowIndex>(b);
          if (xg.composable(ai, bi) && xg.compose(ai, bi) != kUndefined && mult[a * n + b].size() == 0 &&
              dims[xg.compose(ai, bi)] * dims[a] * dims[b] > 0)
            fail(h, 0, "missing 'mult " + xg.arrow_name(ai) + " " + xg.arrow_name(bi) + "'");
        }
      }
      out = FellBundle(xg, dims, std::move(mult), std::move(star));
    }
    model_.bundles.push_back({name, x->name, std::move(*out)});
  }

  void bundle_action(const std::string& name, const std::vector<const Line*>& body)
  {
    const BundleEntry* b = nullptr;
    const ActionEntry* act = nullptr;
    std::optional<BundleAction> out;
    std::vector<Matrix> maps;
    std::vector<char> seen;
    for (std::size_t i = 0; i < body.size(); ++i) {
      const Line& l = *body[i];
      const auto& key = l.tokens[0].text;
      if (key == "bundle") {
        arity(l, 2);
        b = bundle_ref(l, 1);
      } else if (key == "action") {
        arity(l, 2);
        act = action_ref(l, 1);
      } else if (!b || !act) {
        fail(l, 0, "'bundle' and 'action' must come first");
      } else if (key == "lift") {
        arity(l, 1);
        out = lift_action(b->bundle, act->action);
      } else if (key == "uniform") {
        arity(l, 2);
        const auto* aa = algebra_action_ref(l, 1);
        if (!(aa->action.group == act->action.group()))
          fail(l, 1, "algebra-action group differs from the action's group");
        out = uniform_action(b->bundle, act->action, aa->action.maps);
      } else if (key == "map") {
        arity(l, 3);
        const auto& xg = b->bundle.base();
        const auto& g = act->action.group();
        if (maps.empty()) {
          maps.assign(g.order() * xg.num_arrows(), Matrix());
          seen.assign(maps.size(), 0);
        }
        const auto t = index_of(l, 1, "element", [&](auto& s) { return g.find(s); });
        const auto x = index_of(l, 2, "arrow", [&](auto& s) { return xg.find_arrow(s); });
        const auto k = static_cast<std::size_t>(t) * xg.num_arrows() + static_cast<std::size_t>(x);
        maps[k] = matrix(body, i, b->bundle.dim(act->action.act(t, x)), b->bundle.dim(x));
        seen[k] = 1;
      } else {
        fail(l, 0, "unknown bundle-action field '" + key + "'");
      }
    }
    const Line& h = head_of(body, header());
    if (!b || !act)
      fail(h, 0, "bundle-action needs 'bundle' and 'action'");
    if (!(act->action.target() == b->bundle.base()))
      fail(h, 0, "action '" + act->name + "' is not on the base of bundle '" + b->name + "'");
    if (!out) {
      if (maps.empty() || std::count(seen.begin(), seen.end(), 0) > 0)
        fail(h, 0, "bundle-action needs 'lift', 'uniform' or one 'map' per (element, arrow)");
      out = BundleAction(b->bundle, act->action, std::move(maps));
    }
    model_.bundle_actions.push_back({name, b->name, act->name, std::move(*out)});
  }

  void scenario(const std::string& name, const std::vector<const Line*>& body)
  {
    Scenario s{name, {}, {}};
    const Line* args_line = nullptr;
    const Line* kind_line = nullptr;
    for (const Line* lp : body) {
      const Line& l = *lp;
      const auto& key = l.tokens[0].text;
      if (key == "kind") {
        arity(l, 2);
        s.kind = l.tokens[1].text;
        kind_line = &l;
      } else if (key == "args") {
        s.args = rest(l);
        args_line = &l;
      } else {
        fail(l, 0, "unknown scenario field '" + key + "'");
      }
    }
    const Line& h = head_of(body, header());
    if (!kind_line)
      fail(h, 0, "scenario needs 'kind'");
    const auto& sigs = scenario_signatures();
    const auto sig = std::find_if(sigs.begin(), sigs.end(), [&](auto& x) { return x.kind == s.kind; });
    if (sig == sigs.end())
      fail(*kind_line, 1, "unknown scenario kind '" + s.kind + "'");
    if (s.args.size() != sig->args.size())
      fail(args_line ? *args_line : h, 0,
           "scenario kind '" + s.kind + "' takes " + std::to_string(sig->args.size()) + " argument(s)");
    for (std::size_t k = 0; k < s.args.size(); ++k) {
      const auto actual = model_.kind_of(s.args[k]);
      if (actual != sig->args[k])
        fail(*args_line, k + 1,
             "unknown " + sig->args[k] + " '" + s.args[k] + "'" + (actual.empty() ? "" : " (it is a " + actual + ")"));
    }
    model_.scenarios.push_back(std::move(s));
  }

  std::vector<Line> lines_;
  std::size_t cur_ = 0;
  std::string source_;
  ModelFile model_;
};

} // namespace

ModelFile parse_model(std::string_view text, std::string_view source)
{
  return Parser(text, source).parse();
}

ModelFile load_model(const std::filesystem::path& path)
{
  std::ifstream in(path, std::ios::binary);
  if (!in)
    throw ParseError(path.string(), 0, 0, "cannot open file");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_model(ss.str(), path.string());
}

// ---------------------------------------------------------------- writer

namespace {

std::string join(const std::vector<std::string>& v)
{
  std::string out;
  for (const auto& s : v)
    out += (out.empty() ? "" : " ") + s;
  return out;
}

void write_matrix(std::ostream& os, const Matrix& m, const char* indent = "    ")
{
  if (m.cols() == 0)
    return;
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    os << indent;
    for (Eigen::Index c = 0; c < m.cols(); ++c)
      os << (c ? " " : "") << format_number(m(r, c));
    os << '\n';
  }
}

void write_groupoid_body(std::ostream& os, const FiniteGroupoid& g)
{
  const auto n = static_cast<ArrowIndex>(g.num_arrows());
  std::vector<std::string> range, source, inverse, identity;
  for (ArrowIndex a = 0; a < n; ++a) {
    range.push_back(g.unit_name(g.rng(a)));
    source.push_back(g.unit_name(g.src(a)));
    inverse.push_back(g.arrow_name(g.inv(a)));
  }
  for (UnitIndex u = 0; u < static_cast<UnitIndex>(g.num_units()); ++u)
    identity.push_back(g.arrow_name(g.unit_arrow(u)));
  os << "  units " << join(g.unit_names()) << "\n  arrows " << join(g.arrow_names()) << "\n  range "
     << join(range) << "\n  source " << join(source) << "\n  identity " << join(identity) << "\n  inverse "
     << join(inverse) << "\n  compose\n";
  for (ArrowIndex a = 0; a < n; ++a) {
    os << "   ";
    for (ArrowIndex b = 0; b < n; ++b) {
      const auto ab = g.compose(a, b);
      os << ' ' << (ab == kUndefined ? std::string("-") : g.arrow_name(ab));
    }
    os << '\n';
  }
}

} // namespace

std::string serialize_model(const ModelFile& m)
{
  std::ostringstream os;
  os << "groupoidal-model " << m.version << '\n';
  for (const auto& e : m.groups) {
    const auto& g = e.group;
    const auto n = static_cast<ElementIndex>(g.order());
    std::vector<std::string> names;
    for (ElementIndex t = 0; t < n; ++t)
      names.push_back(g.name(t));
    os << "\ngroup " << e.name << "\n  elements " << join(names) << "\n  table\n";
    for (ElementIndex s = 0; s < n; ++s) {
      os << "   ";
      for (ElementIndex t = 0; t < n; ++t)
        os << ' ' << g.name(g.mul(s, t));
      os << '\n';
    }
    os << "end\n";
  }
  for (const auto& e : m.groupoids) {
    os << "\ngroupoid " << e.name << '\n';
    write_groupoid_body(os, e.groupoid);
    os << "end\n";
  }
  for (const auto& e : m.actions) {
    const auto& a = e.action;
    const auto& x = a.target();
    os << "\naction " << e.name << "\n  group " << e.group << "\n  groupoid " << e.groupoid << "\n  side "
       << to_string(a.side()) << '\n';
    for (ElementIndex t = 0; t < static_cast<ElementIndex>(a.group().order()); ++t) {
      os << "  map " << a.group().name(t);
      for (ArrowIndex y = 0; y < static_cast<ArrowIndex>(x.num_arrows()); ++y)
        os << ' ' << x.arrow_name(a.act(t, y));
      os << '\n';
    }
    os << "end\n";
  }
  for (const auto& e : m.space_actions) {
    const auto& a = e.action;
    const auto& x = a.groupoid();
    std::vector<std::string> fib;
    for (PointIndex u = 0; u < static_cast<PointIndex>(a.num_points()); ++u)
      fib.push_back(x.unit_name(a.fibring(u)));
    os << "\nspace-action " << e.name << "\n  groupoid " << e.groupoid << "\n  side " << to_string(a.side())
       << "\n  points " << join(a.points()) << "\n  fibring " << join(fib) << '\n';
    for (ArrowIndex y = 0; y < static_cast<ArrowIndex>(x.num_arrows()); ++y) {
      os << "  map " << x.arrow_name(y);
      for (PointIndex u = 0; u < static_cast<PointIndex>(a.num_points()); ++u) {
        const auto v = a.act(y, u);
        os << ' ' << (v == kUndefined ? std::string("-") : a.point_name(v));
      }
      os << '\n';
    }
    os << "end\n";
  }
  for (const auto& e : m.algebras) {
    const auto& b = e.algebra;
    os << "\nalgebra " << e.name << "\n  basis " << join(b.basis_names()) << '\n';
    for (Eigen::Index i = 0; i < b.dim(); ++i) {
      os << "  left " << b.basis_name(i) << '\n';
      write_matrix(os, Matrix(b.left(i)));
    }
    os << "  star\n";
    write_matrix(os, b.star());
    os << "end\n";
  }
  for (const auto& e : m.algebra_actions) {
    const auto& a = e.action;
    os << "\nalgebra-action " << e.name << "\n  group " << e.group << "\n  algebra " << e.algebra << "\n  side "
       << to_string(a.side) << '\n';
    for (ElementIndex t = 0; t < static_cast<ElementIndex>(a.group.order()); ++t) {
      os << "  map " << a.group.name(t) << '\n';
      write_matrix(os, a.maps[t]);
    }
    os << "end\n";
  }
  for (const auto& e : m.bundles) {
    const auto& b = e.bundle;
    const auto& x = b.base();
    const auto n = static_cast<ArrowIndex>(x.num_arrows());
    os << "\nbundle " << e.name << "\n  base " << e.base << "\n  dims";
    for (ArrowIndex a = 0; a < n; ++a)
      os << ' ' << b.dim(a);
    os << '\n';
    for (ArrowIndex a = 0; a < n; ++a)
      for (ArrowIndex c = 0; c < n; ++c)
        if (x.composable(a, c) && x.compose(a, c) != kUndefined) {
          os << "  mult " << x.arrow_name(a) << ' ' << x.arrow_name(c) << '\n';
          write_matrix(os, b.mult(a, c));
        }
    for (ArrowIndex a = 0; a < n; ++a) {
      os << "  star " << x.arrow_name(a) << '\n';
      write_matrix(os, b.star(a));
    }
    os << "end\n";
  }
  for (const auto& e : m.bundle_actions) {
    const auto& a = e.action;
    const auto& x = a.bundle().base();
    os << "\nbundle-action " << e.name << "\n  bundle " << e.bundle << "\n  action " << e.base_action << '\n';
    for (ElementIndex t = 0; t < static_cast<ElementIndex>(a.group().order()); ++t)
      for (ArrowIndex y = 0; y < static_cast<ArrowIndex>(x.num_arrows()); ++y) {
        os << "  map " << a.group().name(t) << ' ' << x.arrow_name(y) << '\n';
        write_matrix(os, a.map(t, y));
      }
    os << "end\n";
  }
  for (const auto& s : m.scenarios)
    os << "\nscenario " << s.name << "\n  kind " << s.kind << "\n  args " << join(s.args) << "\nend\n";
  return os.str();
}

namespace {

using Json = nlohmann::ordered_json;

Json matrix_json(const Matrix& m)
{
  Json rows = Json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    Json row = Json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c)
      row.push_back(format_number(m(r, c)));
    rows.push_back(std::move(row));
  }
  return rows;
}

Json groupoid_json(const FiniteGroupoid& g)
{
  const auto n = static_cast<ArrowIndex>(g.num_arrows());
  Json j;
  j["units"] = g.unit_names();
  j["arrows"] = g.arrow_names();
  Json range = Json::array(), source = Json::array(), inverse = Json::array(), identity = Json::array(),
       comp = Json::array();
  for (ArrowIndex a = 0; a < n; ++a) {
    range.push_back(g.unit_name(g.rng(a)));
    source.push_back(g.unit_name(g.src(a)));
    inverse.push_back(g.arrow_name(g.inv(a)));
    Json row = Json::array();
    for (ArrowIndex b = 0; b < n; ++b) {
      const auto ab = g.compose(a, b);
      row.push_back(ab == kUndefined ? Json(nullptr) : Json(g.arrow_name(ab)));
    }
    comp.push_back(std::move(row));
  }
  for (UnitIndex u = 0; u < static_cast<UnitIndex>(g.num_units()); ++u)
    identity.push_back(g.arrow_name(g.unit_arrow(u)));
  j["range"] = range;
  j["source"] = source;
  j["identity"] = identity;
  j["inverse"] = inverse;
  j["compose"] = comp;
  return j;
}

} // namespace

std::string model_to_json(const ModelFile& m)
{
  Json j;
  j["format"] = "groupoidal-model";
  j["version"] = m.version;
  j["groups"] = Json::array();
  for (const auto& e : m.groups) {
    const auto n = static_cast<ElementIndex>(e.group.order());
    Json names = Json::array(), table = Json::array();
    for (ElementIndex s = 0; s < n; ++s) {
      names.push_back(e.group.name(s));
      Json row = Json::array();
      for (ElementIndex t = 0; t < n; ++t)
        row.push_back(e.group.name(e.group.mul(s, t)));
      table.push_back(std::move(row));
    }
    j["groups"].push_back({{"name", e.name}, {"elements", names}, {"table", table}});
  }
  j["groupoids"] = Json::array();
  for (const auto& e : m.groupoids) {
    Json g = groupoid_json(e.groupoid);
    g["name"] = e.name;
    j["groupoids"].push_back(std::move(g));
  }
  j["actions"] = Json::array();
  for (const auto& e : m.actions) {
    const auto& a = e.action;
    Json maps = Json::object();
    for (ElementIndex t = 0; t < static_cast<ElementIndex>(a.group().order()); ++t) {
      Json row = Json::array();
      for (ArrowIndex y = 0; y < static_cast<ArrowIndex>(a.target().num_arrows()); ++y)
        row.push_back(a.target().arrow_name(a.act(t, y)));
      maps[a.group().name(t)] = row;
    }
    j["actions"].push_back(
        {{"name", e.name}, {"group", e.group}, {"groupoid", e.groupoid}, {"side", to_string(a.side())}, {"map", maps}});
  }
  j["space_actions"] = Json::array();
  for (const auto& e : m.space_actions) {
    const auto& a = e.action;
    const auto& x = a.groupoid();
    Json fib = Json::array(), maps = Json::object();
    for (PointIndex u = 0; u < static_cast<PointIndex>(a.num_points()); ++u)
      fib.push_back(x.unit_name(a.fibring(u)));
    for (ArrowIndex y = 0; y < static_cast<ArrowIndex>(x.num_arrows()); ++y) {
      Json row = Json::array();
      for (PointIndex u = 0; u < static_cast<PointIndex>(a.num_points()); ++u) {
        const auto v = a.act(y, u);
        row.push_back(v == kUndefined ? Json(nullptr) : Json(a.point_name(v)));
      }
      maps[x.arrow_name(y)] = row;
    }
    j["space_actions"].push_back({{"name", e.name}, {"groupoid", e.groupoid}, {"side", to_string(a.side())},
                                  {"points", a.points()}, {"fibring", fib}, {"map", maps}});
  }
  j["algebras"] = Json::array();
  for (const auto& e : m.algebras) {
    Json left = Json::object();
    for (Eigen::Index i = 0; i < e.algebra.dim(); ++i)
      left[e.algebra.basis_name(i)] = matrix_json(Matrix(e.algebra.left(i)));
    j["algebras"].push_back(
        {{"name", e.name}, {"basis", e.algebra.basis_names()}, {"left", left}, {"star", matrix_json(e.algebra.star())}});
  }
  j["algebra_actions"] = Json::array();
  for (const auto& e : m.algebra_actions) {
    Json maps = Json::object();
    for (ElementIndex t = 0; t < static_cast<ElementIndex>(e.action.group.order()); ++t)
      maps[e.action.group.name(t)] = matrix_json(e.action.maps[t]);
    j["algebra_actions"].push_back({{"name", e.name}, {"group", e.group}, {"algebra", e.algebra},
                                    {"side", to_string(e.action.side)}, {"map", maps}});
  }
  j["bundles"] = Json::array();
  for (const auto& e : m.bundles) {
    const auto& b = e.bundle;
    const auto& x = b.base();
    const auto n = static_cast<ArrowIndex>(x.num_arrows());
    Json mult = Json::array(), star = Json::object();
    for (ArrowIndex a = 0; a < n; ++a) {
      star[x.arrow_name(a)] = matrix_json(b.star(a));
      for (ArrowIndex c = 0; c < n; ++c)
        if (x.composable(a, c) && x.compose(a, c) != kUndefined)
          mult.push_back({{"x", x.arrow_name(a)}, {"y", x.arrow_name(c)}, {"matrix", matrix_json(b.mult(a, c))}});
    }
    j["bundles"].push_back({{"name", e.name}, {"base", e.base}, {"dims", b.dims()}, {"mult", mult}, {"star", star}});
  }
  j["bundle_actions"] = Json::array();
  for (const auto& e : m.bundle_actions) {
    const auto& a = e.action;
    const auto& x = a.bundle().base();
    Json maps = Json::array();
    for (ElementIndex t = 0; t < static_cast<ElementIndex>(a.group().order()); ++t)
      for (ArrowIndex y = 0; y < static_cast<ArrowIndex>(x.num_arrows()); ++y)
        maps.push_back({{"element", a.group().name(t)}, {"arrow", x.arrow_name(y)}, {"matrix", matrix_json(a.map(t, y))}});
    j["bundle_actions"].push_back({{"name", e.name}, {"bundle", e.bundle}, {"action", e.base_action}, {"map", maps}});
  }
  j["scenarios"] = Json::array();
  for (const auto& s : m.scenarios)
    j["scenarios"].push_back({{"name", s.name}, {"kind", s.kind}, {"args", s.args}});
  return j.dump(2);
}

} // namespace groupoidal
