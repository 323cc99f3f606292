#include "groupoidal/runner.hpp"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <functional>
#include <json.hpp>
#include <sstream>

#include "groupoidal/bundle_equivalence.hpp"
#include "groupoidal/morita.hpp"
#include "groupoidal/principal.hpp"

namespace groupoidal {

std::string to_string(Outcome o)
{
  switch (o) {
  case Outcome::pass:
    return "pass";
  case Outcome::fail:
    return "fail";
  case Outcome::indeterminate:
    return "indeterminate";
  }
  return "fail";
}

int exit_status(Outcome o)
{
  switch (o) {
  case Outcome::pass:
    return 0;
  case Outcome::fail:
    return 1;
  case Outcome::indeterminate:
    return 2;
  }
  return 1;
}

namespace {

using Json = nlohmann::ordered_json;

Outcome worse(Outcome a, Outcome b)
{
  auto rank = [](Outcome o) { return o == Outcome::pass ? 0 : o == Outcome::indeterminate ? 1 : 2; };
  return rank(a) >= rank(b) ? a : b;
}

Json report_json(const ValidationReport& r)
{
  Json j;
  j["ok"] = r.ok();
  j["violations"] = r.failure_count();
  Json failures = Json::array();
  for (const auto& f : r.failures())
    failures.push_back({{"check", f.check}, {"witness", f.witness}, {"residual", f.residual}});
  j["failures"] = failures;
  Json residuals = Json::object();
  for (const auto& [check, v] : r.residuals())
    residuals[check] = v;
  j["residuals"] = residuals;
  j["notes"] = r.notes();
  return j;
}

Outcome outcome_of(const ValidationReport& r) { return r.ok() ? Outcome::pass : Outcome::fail; }

Outcome outcome_of(Verdict v)
{
  switch (v) {
  case Verdict::equivalent:
    return Outcome::pass;
  case Verdict::indeterminate:
    return Outcome::indeterminate;
  case Verdict::not_certified:
    return Outcome::fail;
  }
  return Outcome::fail;
}

std::string indent(const std::string& text)
{
  std::string out;
  std::istringstream is(text);
  for (std::string line; std::getline(is, line);)
    out += "  " + line + '\n';
  return out;
}

class Context {
public:
  Context(const ModelFile& model, const RunOptions& options, RunReport& report)
    : model_(model), opt_(options), rep_(report)
  {
  }

  const ModelFile& model() const { return model_; }
  const RunOptions& options() const { return opt_; }
  double tol() const { return opt_.tol; }
  std::uint64_t seed() const { return opt_.seed; }

  void reach(std::initializer_list<const char*> ops)
  {
    for (const char* op : ops)
      rep_.operations.insert(op);
  }

  /// Runs `body` as one entry; precondition failures become failing entries.
  void entry(const std::string& name, const std::string& kind, const std::function<void(RunEntry&)>& body)
  {
    RunEntry e{name, kind, Outcome::pass, {}, "{}", 0.0};
    const auto start = std::chrono::steady_clock::now();
    try {
      body(e);
    } catch (const PreconditionError& ex) {
      e.outcome = Outcome::fail;
      e.text = std::string("precondition failed: ") + ex.what() + '\n';
      e.json = Json{{"error", "precondition"}, {"message", ex.what()}}.dump();
    } catch (const ConsistencyError& ex) {
      e.outcome = Outcome::fail;
      e.text = std::string("consistency error: ") + ex.what() + '\n';
      e.json = Json{{"error", "consistency"}, {"message", ex.what()}}.dump();
    }
    e.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    rep_.entries.push_back(std::move(e));
  }

  static void set_report(RunEntry& e, const ValidationReport& r)
  {
    e.outcome = worse(e.outcome, outcome_of(r));
    e.text += r.to_string();
    e.json = report_json(r).dump();
  }

  static void set_certificate(RunEntry& e, const MoritaCertificate& c)
  {
    e.outcome = outcome_of(c.verdict);
    e.text = c.to_string();
    e.json = c.to_json();
  }

  ModelFile& built()
  {
    if (!rep_.built)
      rep_.built.emplace();
    return *rep_.built;
  }

  std::string out_name(const std::string& fallback) const
  {
    return opt_.name.empty() ? fallback : opt_.name + "_" + fallback;
  }

  // ---- argument resolution

  template <class T>
  static const T& need(const T* p, const std::string& kind, const std::string& name)
  {
    if (!p)
      throw UsageError("unknown " + kind + " '" + name + "'");
    return *p;
  }

  const ActionEntry& action(const std::string& n) const { return need(model_.find_action(n), "action", n); }
  const SpaceActionEntry& space_action(const std::string& n) const
  { return need(model_.find_space_action(n), "space-action", n); }
  const BundleEntry& bundle(const std::string& n) const { return need(model_.find_bundle(n), "bundle", n); }
  const BundleActionEntry& bundle_action(const std::string& n) const
  { return need(model_.find_bundle_action(n), "bundle-action", n); }
  const AlgebraEntry& algebra(const std::string& n) const { return need(model_.find_algebra(n), "algebra", n); }
  const AlgebraActionEntry& algebra_action(const std::string& n) const
  { return need(model_.find_algebra_action(n), "algebra-action", n); }
  const GroupoidEntry& groupoid(const std::string& n) const { return need(model_.find_groupoid(n), "groupoid", n); }
  const Scenario& scenario(const std::string& n) const { return need(model_.find_scenario(n), "scenario", n); }

private:
  const ModelFile& model_;
  const RunOptions& opt_;
  RunReport& rep_;
};

// ---------------------------------------------------------------- validate

void validate(Context& cx)
{
  const auto& m = cx.model();
  cx.reach({"parse_model"});
  for (const auto& op : m.operations)
    cx.reach({op.c_str()});
  for (const auto& e : m.groups)
    cx.entry(e.name, "group", [&](RunEntry& r) {
      cx.reach({"validate_groupoid"});
      Context::set_report(r, validate_groupoid(e.group.groupoid()));
    });
  for (const auto& e : m.groupoids)
    cx.entry(e.name, "groupoid", [&](RunEntry& r) {
      cx.reach({"validate_groupoid"});
      Context::set_report(r, validate_groupoid(e.groupoid));
    });
  for (const auto& e : m.actions)
    cx.entry(e.name, "action", [&](RunEntry& r) {
      cx.reach({"check_action", "is_free"});
      auto rep = check_action(e.action);
      if (rep.ok())
        rep.note(is_free(e.action) ? "free" : "not free: " + freeness_witness(e.action));
      Context::set_report(r, rep);
    });
  for (const auto& e : m.space_actions)
    cx.entry(e.name, "space-action", [&](RunEntry& r) {
      auto rep = check_space_action(e.action);
      if (rep.ok())
        rep.note(is_free(e.action) ? "free" : "not free: " + space_freeness_witness(e.action));
      Context::set_report(r, rep);
    });
  for (const auto& e : m.algebras)
    cx.entry(e.name, "algebra", [&](RunEntry& r) {
      cx.reach({"regular_representation", "star_structure_report"});
      const auto rep = validate_star_algebra(e.algebra, cx.tol(), cx.seed());
      Context::set_report(r, rep);
      if (!rep.ok())
        return;
      const auto rr = regular_representation(e.algebra, cx.tol(), cx.seed());
      const auto s = star_structure_report(e.algebra, cx.tol(), cx.seed());
      r.text += "regular representation: size " + std::to_string(rr.size()) +
                (rr.faithful() ? ", faithful\n" : ", not faithful\n") + s.to_string() + '\n';
      auto j = Json::parse(r.json);
      j["faithful"] = rr.faithful();
      j["structure"] = {{"dimension", s.dimension},
                        {"radical_dimension", s.radical_dimension},
                        {"center_dimension", s.center_dimension},
                        {"blocks", s.blocks},
                        {"is_cstar", s.is_cstar},
                        {"status", to_string(s.status)},
                        {"seed", s.seed}};
      r.json = j.dump();
      if (s.status == SplitStatus::indeterminate)
        r.outcome = worse(r.outcome, Outcome::indeterminate);
    });
  for (const auto& e : m.algebra_actions)
    cx.entry(e.name, "algebra-action", [&](RunEntry& r) { Context::set_report(r, check_algebra_action(e.action, cx.tol())); });
  for (const auto& e : m.bundles)
    cx.entry(e.name, "bundle", [&](RunEntry& r) {
      cx.reach({"validate_fell_bundle"});
      Context::set_report(r, validate_fell_bundle(e.bundle, cx.tol()));
    });
  for (const auto& e : m.bundle_actions)
    cx.entry(e.name, "bundle-action", [&](RunEntry& r) {
      cx.reach({"check_bundle_action", "is_free_bundle_action"});
      auto rep = check_bundle_action(e.action, cx.tol(), cx.seed());
      if (rep.ok())
        rep.note(is_free_bundle_action(e.action) ? "free" : "not free: " + freeness_witness(e.action.base_action()));
      Context::set_report(r, rep);
    });
}

// ---------------------------------------------------------------- equivalences

struct ScenarioEquivalence {
  BundleEquivalence equivalence;
  std::string description;
};

BundleEquivalence scenario_bundle_equivalence(Context& cx, const Scenario& s)
{
  const auto& a = s.args;
  if (s.kind == "symmetric") {
    cx.reach({"symmetric_action_equivalence"});
    return symmetric_action_equivalence(cx.bundle_action(a[0]).action, cx.bundle_action(a[1]).action, cx.tol());
  }
  if (s.kind == "one-sided" || s.kind == "cstar-bundle") {
    cx.reach({"one_sided_equivalence"});
    return one_sided_equivalence(cx.bundle_action(a[0]).action, cx.tol());
  }
  if (s.kind == "transformation") {
    cx.reach({"one_sided_transformation_equivalence"});
    return one_sided_transformation_equivalence(cx.bundle(a[0]).bundle, cx.space_action(a[1]).action,
                                                cx.space_action(a[2]).action, cx.tol());
  }
  if (s.kind == "groupoid") {
    const auto& g = cx.action(a[0]).action;
    const auto& h = cx.action(a[1]).action;
    const auto line = trivial_line_bundle(g.target());
    cx.reach({"symmetric_action_equivalence"});
    return symmetric_action_equivalence(lift_action(line, g), lift_action(line, h), cx.tol());
  }
  throw UsageError("scenario kind '" + s.kind + "' has no standalone equivalence; use 'morita'");
}

void check_equivalence(Context& cx, const std::vector<std::string>& args)
{
  if (args.size() != 1)
    throw UsageError("check-equivalence takes one scenario name");
  const auto& s = cx.scenario(args[0]);
  if (s.kind == "groupoid") {
    cx.entry(s.name, "groupoid-equivalence", [&](RunEntry& r) {
      cx.reach({"symmetric_groupoid_equivalence", "verify_groupoid_equivalence", "left_bracket", "right_bracket"});
      const auto& g = cx.action(s.args[0]).action;
      const auto& h = cx.action(s.args[1]).action;
      const auto e = symmetric_groupoid_equivalence(g.target(), g, h);
      auto rep = verify_groupoid_equivalence(e);
      std::size_t left = 0, right = 0;
      if (rep.ok()) {
        const auto n = static_cast<PointIndex>(e.num_points());
        for (PointIndex z1 = 0; z1 < n; ++z1)
          for (PointIndex z2 = 0; z2 < n; ++z2) {
            if (e.sigma(z1) == e.sigma(z2) && left_bracket(e, z1, z2) != kUndefined)
              ++left;
            if (e.rho(z1) == e.rho(z2) && right_bracket(e, z1, z2) != kUndefined)
              ++right;
          }
        rep.note("|Z| = " + std::to_string(n) + ", |P| = " + std::to_string(e.p().num_arrows()) + ", |Q| = " +
                 std::to_string(e.q().num_arrows()) + ", brackets " + std::to_string(left) + " left, " +
                 std::to_string(right) + " right");
      }
      Context::set_report(r, rep);
    });
  }
  cx.entry(s.name, "bundle-equivalence", [&](RunEntry& r) {
    cx.reach({"verify_bundle_equivalence"});
    const auto e = scenario_bundle_equivalence(cx, s);
    Context::set_report(r, verify_bundle_equivalence(e, cx.tol(), cx.seed()));
  });
}

// ---------------------------------------------------------------- morita

MoritaCertificate scenario_certificate(Context& cx, const Scenario& s)
{
  const auto& a = s.args;
  cx.reach({"linking_system", "verify_morita", "verify_bundle_equivalence", "star_structure_report",
            "section_algebra", "crossed_product"});
  if (s.kind == "symmetric") {
    cx.reach({"symmetric_morita", "symmetric_action_equivalence", "quotient_fell_bundle", "semidirect_fell_bundle",
              "semidirect_orbit_bundle_action"});
    return symmetric_morita(cx.bundle_action(a[0]).action, cx.bundle_action(a[1]).action, cx.tol(), cx.seed());
  }
  if (s.kind == "groupoid") {
    cx.reach({"symmetric_morita", "symmetric_action_equivalence"});
    const auto& g = cx.action(a[0]).action;
    const auto& h = cx.action(a[1]).action;
    const auto line = trivial_line_bundle(g.target());
    auto c = symmetric_morita(lift_action(line, g), lift_action(line, h), cx.tol(), cx.seed());
    c.scenario = "groupoid";
    return c;
  }
  if (s.kind == "one-sided") {
    cx.reach({"one_sided_morita"});
    return one_sided_morita(cx.bundle_action(a[0]).action, cx.tol(), cx.seed());
  }
  if (s.kind == "transformation") {
    cx.reach({"one_sided_morita", "one_sided_transformation_equivalence", "transformation_fell_bundle"});
    return one_sided_transformation_morita(cx.bundle(a[0]).bundle, cx.space_action(a[1]).action,
                                           cx.space_action(a[2]).action, cx.tol(), cx.seed());
  }
  if (s.kind == "cstar-bundle") {
    cx.reach({"cstar_bundle_morita"});
    return cstar_bundle_morita(cx.bundle_action(a[0]).action, cx.tol(), cx.seed());
  }
  if (s.kind == "raeburn") {
    cx.reach({"raeburn", "induced_algebra"});
    return raeburn(cx.algebra(a[0]).algebra, cx.space_action(a[1]).action, cx.space_action(a[2]).action,
                   cx.algebra_action(a[3]).action, cx.algebra_action(a[4]).action, cx.tol(), cx.seed());
  }
  if (s.kind == "coaction") {
    cx.reach({"coaction_demo", "transformation_fell_bundle"});
    return coaction_demo(cx.bundle(a[0]).bundle, cx.tol(), cx.seed());
  }
  throw UsageError("unknown scenario kind '" + s.kind + "'");
}

void morita(Context& cx, const std::vector<std::string>& args)
{
  if (args.size() != 1)
    throw UsageError("morita takes one scenario name");
  const auto& s = cx.scenario(args[0]);
  cx.entry(s.name, "morita/" + s.kind, [&](RunEntry& r) { Context::set_certificate(r, scenario_certificate(cx, s)); });
}

// ---------------------------------------------------------------- build

void emit_groupoid(Context& cx, RunEntry& r, const std::string& name, const FiniteGroupoid& g)
{
  cx.reach({"validate_groupoid"});
  const auto rep = validate_groupoid(g);
  r.outcome = worse(r.outcome, outcome_of(rep));
  r.text += "groupoid " + name + ": " + std::to_string(g.num_units()) + " units, " + std::to_string(g.num_arrows()) +
            " arrows, " + rep.to_string();
  cx.built().groupoids.push_back({name, g});
}

void emit_space_action(Context& cx, RunEntry& r, const std::string& name, const std::string& groupoid,
                       const SpaceAction& a)
{
  const auto rep = check_space_action(a);
  r.outcome = worse(r.outcome, outcome_of(rep));
  r.text += "space-action " + name + ": " + std::to_string(a.num_points()) + " points, " + rep.to_string();
  cx.built().space_actions.push_back({name, groupoid, a});
}

void emit_bundle(Context& cx, RunEntry& r, const std::string& name, const FellBundle& b)
{
  cx.reach({"validate_fell_bundle"});
  emit_groupoid(cx, r, name + "_base", b.base());
  const auto rep = validate_fell_bundle(b, cx.tol());
  r.outcome = worse(r.outcome, outcome_of(rep));
  r.text += "bundle " + name + ": total dimension " + std::to_string(b.total_dim()) + ", " + rep.to_string();
  cx.built().bundles.push_back({name, name + "_base", b});
}

void emit_algebra(Context& cx, RunEntry& r, const std::string& name, const StarAlgebra& a)
{
  cx.reach({"star_structure_report"});
  const auto rep = validate_star_algebra(a, cx.tol(), cx.seed());
  r.outcome = worse(r.outcome, outcome_of(rep));
  r.text += "algebra " + name + ": " + rep.to_string();
  if (rep.ok())
    r.text += star_structure_report(a, cx.tol(), cx.seed()).to_string() + '\n';
  cx.built().algebras.push_back({name, a});
}

void merge_check(RunEntry& r, const std::string& what, const ValidationReport& rep)
{
  r.outcome = worse(r.outcome, outcome_of(rep));
  r.text += what + ": " + rep.to_string();
}

using Builder = std::function<void(Context&, RunEntry&, const std::vector<std::string>&)>;

struct Construction {
  std::string name;
  std::vector<std::string> args;
  Builder build;
};

const std::vector<Construction>& constructions()
{
  static const std::vector<Construction> c{
      {"transformation", {"space-action"},
       [](Context& cx, RunEntry& r, const std::vector<std::string>& a) {
         cx.reach({"transformation_groupoid"});
         const auto& sa = cx.space_action(a[0]).action;
         emit_groupoid(cx, r, cx.out_name("transformation"), transformation_groupoid(sa.groupoid(), sa).groupoid);
       }},
      {"semidirect", {"action"},
       [](Context& cx, RunEntry& r, const std::vector<std::string>& a) {
         const auto& g = cx.action(a[0]).action;
         cx.reach({g.side() == Side::left ? "semidirect_left" : "semidirect_right"});
         const auto sd = g.side() == Side::left ? semidirect_left(g) : semidirect_right(g);
         emit_groupoid(cx, r, cx.out_name("semidirect"), sd.groupoid);
       }},
      {"quotient", {"action"},
       [](Context& cx, RunEntry& r, const std::vector<std::string>& a) {
         cx.reach({"quotient_groupoid"});
         emit_groupoid(cx, r, cx.out_name("quotient"), quotient_groupoid(cx.action(a[0]).action).groupoid);
       }},
      {"orbit-space", {"action"},
       [](Context& cx, RunEntry& r, const std::vector<std::string>& a) {
         cx.reach({"quotient_groupoid", "orbit_space_action"});
         const auto q = quotient_groupoid(cx.action(a[0]).action);
         const auto name = cx.out_name("quotient");
         emit_groupoid(cx, r, name, q.groupoid);
         emit_space_action(cx, r, cx.out_name("orbit_space"), name, orbit_space_action(q));
       }},
      {"semidirect-space", {"action", "space-action", "space-action"},
       [](Context& cx, RunEntry& r, const std::vector<std::string>& a) {
         const auto& g = cx.action(a[0]).action;
         const auto& on_set = cx.space_action(a[1]).action;
         const auto& on_space = cx.space_action(a[2]).action;
         cx.reach({"check_covariant"});
         const auto cov = check_covariant(g, on_set, on_space);
         merge_check(r, "covariance", cov);
         require_valid(cov, "semidirect-space");
         const bool left = g.side() == Side::left;
         cx.reach({left ? "semidirect_space_action" : "semidirect_right_space_action"});
         const auto sd = left ? semidirect_left(g) : semidirect_right(g);
         const auto name = cx.out_name("semidirect");
         emit_groupoid(cx, r, name, sd.groupoid);
         emit_space_action(cx, r, cx.out_name("semidirect_space"), name,
                           left ? semidirect_space_action(sd, on_set, on_space)
                                : semidirect_right_space_action(sd, on_set, on_space));
       }},
      {"principal", {"action"},
       [](Context& cx, RunEntry& r, const std::vector<std::string>& a) {
         cx.reach({"principal_decomposition"});
         const auto& h = cx.action(a[0]).action;
         const auto d = principal_decomposition(h);
         merge_check(r, "principal decomposition", verify_principal_decomposition(h, d));
         const auto qn = cx.out_name("quotient");
         emit_groupoid(cx, r, qn, d.quotient.groupoid);
         emit_space_action(cx, r, cx.out_name("unit_action"), qn, d.unit_action);
         emit_groupoid(cx, r, cx.out_name("transformation"), d.transformation.groupoid);
       }},
      {"equivalence", {"action", "action"},
       [](Context& cx, RunEntry& r, const std::vector<std::string>& a) {
         cx.reach({"symmetric_groupoid_equivalence", "verify_groupoid_equivalence"});
         const auto& g = cx.action(a[0]).action;
         const auto e = symmetric_groupoid_equivalence(g.target(), g, cx.action(a[1]).action);
         merge_check(r, "equivalence", verify_groupoid_equivalence(e));
         const auto pn = cx.out_name("p"), qn = cx.out_name("q");
         emit_groupoid(cx, r, pn, e.p());
         emit_groupoid(cx, r, qn, e.q());
         emit_space_action(cx, r, cx.out_name("z_left"), pn, e.left);
         emit_space_action(cx, r, cx.out_name("z_right"), qn, e.right);
       }},
      {"transformation-bundle", {"bundle", "space-action"},
       [](Context& cx, RunEntry& r, const std::vector<std::string>& a) {
         cx.reach({"transformation_fell_bundle"});
         const auto t = transformation_fell_bundle(cx.bundle(a[0]).bundle, cx.space_action(a[1]).action);
         emit_bundle(cx, r, cx.out_name("transformation_bundle"), t.bundle);
       }},
      {"pullback", {"bundle", "groupoid", "arrow..."},
       [](Context& cx, RunEntry& r, const std::vector<std::string>& a) {
         cx.reach({"pullback_bundle"});
         const auto& b = cx.bundle(a[0]).bundle;
         const auto& dom = cx.groupoid(a[1]).groupoid;
         if (a.size() != dom.num_arrows() + 2)
           throw UsageError("pullback needs one target arrow per arrow of '" + a[1] + "'");
         std::vector<ArrowIndex> f;
         for (std::size_t i = 2; i < a.size(); ++i) {
           const auto x = b.base().find_arrow(a[i]);
           if (!x)
             throw UsageError("unknown arrow '" + a[i] + "' of the bundle base");
           f.push_back(*x);
         }
         merge_check(r, "homomorphism", check_homomorphism(dom, b.base(), f));
         emit_bundle(cx, r, cx.out_name("pullback"), pullback_bundle(dom, f, b));
       }},
      {"semidirect-bundle", {"bundle-action"},
       [](Context& cx, RunEntry& r, const std::vector<std::string>& a) {
         cx.reach({"semidirect_fell_bundle"});
         const auto& g = cx.bundle_action(a[0]).action;
         const auto sd = g.side() == Side::left ? semidirect_fell_bundle(g) : semidirect_right_fell_bundle(g);
         emit_bundle(cx, r, cx.out_name("semidirect_bundle"), sd.bundle);
       }},
      {"quotient-bundle", {"bundle-action"},
       [](Context& cx, RunEntry& r, const std::vector<std::string>& a) {
         cx.reach({"quotient_fell_bundle"});
         emit_bundle(cx, r, cx.out_name("quotient_bundle"), quotient_fell_bundle(cx.bundle_action(a[0]).action).bundle);
       }},
      {"orbit-bundle", {"bundle-action"},
       [](Context& cx, RunEntry& r, const std::vector<std::string>& a) {
         cx.reach({"quotient_fell_bundle", "orbit_bundle_action"});
         const auto& h = cx.bundle_action(a[0]).action;
         const auto q = quotient_fell_bundle(h);
         merge_check(r, "orbit module", check_bundle_module(q.bundle, orbit_bundle_action(h, q), cx.tol()));
         emit_bundle(cx, r, cx.out_name("quotient_bundle"), q.bundle);
       }},
      {"semidirect-orbit-bundle", {"bundle-action", "bundle-action"},
       [](Context& cx, RunEntry& r, const std::vector<std::string>& a) {
         cx.reach({"semidirect_orbit_bundle_action"});
         const auto& g = cx.bundle_action(a[0]).action;
         const auto& h = cx.bundle_action(a[1]).action;
         const auto d = symmetric_action_data(g, h, cx.tol());
         merge_check(r, "semidirect orbit module",
                     check_bundle_module(d.p.bundle, semidirect_orbit_bundle_action(g, h, cx.tol()), cx.tol()));
         emit_bundle(cx, r, cx.out_name("semidirect_bundle"), d.p.bundle);
       }},
      {"principal-bundle", {"bundle-action"},
       [](Context& cx, RunEntry& r, const std::vector<std::string>& a) {
         cx.reach({"principal_fell_decomposition", "principal_decomposition"});
         const auto& h = cx.bundle_action(a[0]).action;
         const auto d = principal_fell_decomposition(h);
         merge_check(r, "principal Fell decomposition", verify_principal_fell_decomposition(h, d, cx.tol()));
         emit_bundle(cx, r, cx.out_name("quotient_bundle"), d.quotient.bundle);
         emit_bundle(cx, r, cx.out_name("transformation_bundle"), d.transformation.bundle);
       }},
      {"section-algebra", {"bundle"},
       [](Context& cx, RunEntry& r, const std::vector<std::string>& a) {
         cx.reach({"section_algebra"});
         emit_algebra(cx, r, cx.out_name("sections"), section_algebra(cx.bundle(a[0]).bundle));
       }},
      {"crossed-product", {"bundle-action"},
       [](Context& cx, RunEntry& r, const std::vector<std::string>& a) {
         cx.reach({"crossed_product"});
         const auto& g = cx.bundle_action(a[0]).action;
         const auto cp = crossed_product(g);
         const auto sa = section_action(g);
         merge_check(r, "section action", check_algebra_action(sa, cx.tol()));
         const auto rhs =
           g.side() == Side::left ? crossed_product_by_action(sa) : crossed_product_by_right_action(sa);
         merge_check(r, "identification",
                     check_algebra_homomorphism(cp, rhs, crossed_product_identification(g), true, cx.tol()));
         emit_algebra(cx, r, cx.out_name("crossed_product"), cp);
       }},
      {"induced", {"algebra", "space-action", "algebra-action"},
       [](Context& cx, RunEntry& r, const std::vector<std::string>& a) {
         cx.reach({"induced_algebra"});
         const auto ind = induced_algebra(cx.algebra(a[0]).algebra, cx.space_action(a[1]).action,
                                          cx.algebra_action(a[2]).action, cx.tol());
         merge_check(r, "theta", verify_induced_algebra(ind, cx.tol()));
         emit_algebra(cx, r, cx.out_name("induced"), ind.algebra);
       }},
      {"linking", {"scenario"},
       [](Context& cx, RunEntry& r, const std::vector<std::string>& a) {
         cx.reach({"linking_system"});
         const auto ls = linking_system(scenario_bundle_equivalence(cx, cx.scenario(a[0])), cx.tol());
         emit_bundle(cx, r, cx.out_name("linking"), ls.bundle);
       }},
  };
  return c;
}

void build(Context& cx, const std::vector<std::string>& args)
{
  if (args.empty())
    throw UsageError("build needs a construction name");
  const auto& all = constructions();
  const auto it = std::find_if(all.begin(), all.end(), [&](auto& c) { return c.name == args[0]; });
  if (it == all.end())
    throw UsageError("unknown construction '" + args[0] + "'");
  const std::vector<std::string> rest(args.begin() + 1, args.end());
  const bool variadic = !it->args.empty() && it->args.back().ends_with("...");
  if (variadic ? rest.size() < it->args.size() - 1 : rest.size() != it->args.size())
    throw UsageError("construction '" + it->name + "' takes " + std::to_string(it->args.size()) +
                     (variadic ? " or more" : "") + " argument(s)");
  cx.built();
  cx.entry(it->name, "build", [&](RunEntry& r) {
    it->build(cx, r, rest);
    r.json = Json{{"construction", it->name}, {"args", rest}, {"outcome", to_string(r.outcome)}}.dump();
  });
}

} // namespace

// ---------------------------------------------------------------- report

Outcome RunReport::outcome() const
{
  Outcome o = Outcome::pass;
  for (const auto& e : entries)
    o = worse(o, e.outcome);
  return o;
}

std::string RunReport::to_text(bool timings) const
{
  std::ostringstream os;
  os << "groupoidal " << kToolVersion << " | " << command;
  for (const auto& a : args)
    os << ' ' << a;
  os << " | seed " << seed << " | tol " << tol << '\n';
  for (const auto& e : entries) {
    os << '[' << to_string(e.outcome) << "] " << e.kind << ' ' << e.name;
    if (timings)
      os << " (" << e.seconds << " s)";
    os << '\n' << indent(e.text);
  }
  os << "overall: " << to_string(outcome()) << '\n';
  return os.str();
}

std::string RunReport::to_json(bool timings) const
{
  Json j;
  j["tool"] = "groupoidal";
  j["version"] = kToolVersion;
  j["command"] = command;
  j["args"] = args;
  j["seed"] = seed;
  j["tol"] = tol;
  Json es = Json::array();
  for (const auto& e : entries) {
    Json x{{"name", e.name}, {"kind", e.kind}, {"outcome", to_string(e.outcome)}, {"details", Json::parse(e.json)}};
    if (timings)
      x["seconds"] = e.seconds;
    es.push_back(std::move(x));
  }
  j["entries"] = es;
  j["overall"] = to_string(outcome());
  return j.dump(2);
}

RunReport run(const ModelFile& model, std::string_view command, const std::vector<std::string>& args,
              const RunOptions& options)
{
  RunReport rep;
  rep.command = std::string(command);
  rep.args = args;
  rep.seed = options.seed;
  rep.tol = options.tol;
  Context cx(model, options, rep);
  if (command == "validate") {
    if (!args.empty())
      throw UsageError("validate takes no arguments");
    validate(cx);
  } else if (command == "build") {
    build(cx, args);
  } else if (command == "check-equivalence") {
    check_equivalence(cx, args);
  } else if (command == "morita") {
    morita(cx, args);
  } else {
    throw UsageError("unknown command '" + std::string(command) + "'");
  }
  return rep;
}

FiniteGroup parse_group_name(std::string_view name)
{
  if (name == "trivial" || name == "Z1")
    return trivial_group();
  if (name == "S3")
    return symmetric_group(3);
  if (name == "Z2xZ2")
    return direct_product(cyclic_group(2), cyclic_group(2));
  if (name.size() > 1 && name[0] == 'Z') {
    int n = 0;
    const auto [p, ec] = std::from_chars(name.data() + 1, name.data() + name.size(), n);
    if (ec == std::errc{} && p == name.data() + name.size() && n >= 1 && n <= 12)
      return cyclic_group(static_cast<std::size_t>(n));
  }
  throw UsageError("unknown group '" + std::string(name) + "' (expected Z<n> with n <= 12, S3, Z2xZ2 or trivial)");
}

RunReport run_demo(std::string_view which, const DemoOptions& demo, const RunOptions& options)
{
  RunReport rep;
  rep.command = "demo";
  rep.args = {std::string(which)};
  rep.seed = options.seed;
  rep.tol = options.tol;
  ModelFile empty;
  Context cx(empty, options, rep);
  if (which == "coaction") {
    rep.args.insert(rep.args.end(), {"--group", demo.group, "--bundle", demo.bundle});
    const auto g = parse_group_name(demo.group);
    FellBundle b;
    if (demo.bundle == "line")
      b = trivial_line_bundle(g.groupoid());
    else if (demo.bundle == "matrix")
      b = matrix_bundle(g.groupoid(), std::vector<int>{2});
    else
      throw UsageError("unknown bundle '" + demo.bundle + "' (expected line or matrix)");
    cx.entry("coaction " + demo.group + " " + demo.bundle, "morita/coaction", [&](RunEntry& r) {
      cx.reach({"coaction_demo", "linking_system", "verify_morita", "star_structure_report"});
      Context::set_certificate(r, coaction_demo(b, options.tol, options.seed));
    });
  } else if (which == "raeburn") {
    rep.args.insert(rep.args.end(), {"--case", demo.raeburn_case});
    const auto z2 = cyclic_group(2);
    cx.entry("raeburn " + demo.raeburn_case, "morita/raeburn", [&](RunEntry& r) {
      cx.reach({"raeburn", "induced_algebra", "linking_system", "verify_morita", "star_structure_report"});
      if (demo.raeburn_case == "two-point") {
        // X = Z/2 under translation, H trivial, B = C
        const auto e = trivial_group();
        const auto b = diagonal_algebra(1);
        const AlgebraAction sigma{z2, b, Side::left, {Matrix::Identity(1, 1), Matrix::Identity(1, 1)}};
        const AlgebraAction tau{e, b, Side::left, {Matrix::Identity(1, 1)}};
        Context::set_certificate(r, raeburn(b, translation_action(z2, Side::left),
                                            group_set_action(e, {"0", "1"}, {{0, 1}}, Side::right), sigma, tau,
                                            options.tol, options.seed));
      } else if (demo.raeburn_case == "klein") {
        // X = Z/2 × Z/2, G and H translating one factor each, B = C² with σ the swap
        const auto b = diagonal_algebra(2);
        const std::vector<std::string> pts{"00", "01", "10", "11"};
        Matrix swap = Matrix::Zero(2, 2);
        swap(0, 1) = swap(1, 0) = 1.0;
        const AlgebraAction sigma{z2, b, Side::left, {Matrix::Identity(2, 2), swap}};
        const AlgebraAction tau{z2, b, Side::left, {Matrix::Identity(2, 2), Matrix::Identity(2, 2)}};
        Context::set_certificate(r, raeburn(b, group_set_action(z2, pts, {{0, 1, 2, 3}, {2, 3, 0, 1}}, Side::left),
                                            group_set_action(z2, pts, {{0, 1, 2, 3}, {1, 0, 3, 2}}, Side::right),
                                            sigma, tau, options.tol, options.seed));
      } else {
        throw UsageError("unknown raeburn case '" + demo.raeburn_case + "' (expected two-point or klein)");
      }
    });
  } else {
    throw UsageError("unknown demo '" + std::string(which) + "' (expected raeburn or coaction)");
  }
  return rep;
}

const std::vector<std::pair<std::string, std::vector<std::string>>>& build_constructions()
{
  static const auto list = [] {
    std::vector<std::pair<std::string, std::vector<std::string>>> out;
    for (const auto& c : constructions())
      out.emplace_back(c.name, c.args);
    return out;
  }();
  return list;
}

const std::vector<OperationInfo>& operation_registry()
{
  static const std::vector<OperationInfo> ops{
      {"validate_groupoid", "gpd-core"},
      {"make_pair_groupoid", "gpd-core"},
      {"make_group", "gpd-core"},
      {"check_action", "gpd-core"},
      {"is_free", "gpd-core"},
      {"transformation_groupoid", "gpd-core"},
      {"semidirect_left", "gpd-core"},
      {"semidirect_right", "gpd-core"},
      {"quotient_groupoid", "gpd-core"},
      {"orbit_space_action", "gpd-core"},
      {"check_covariant", "gpd-core"},
      {"semidirect_space_action", "gpd-core"},
      {"semidirect_right_space_action", "gpd-core"},
      {"symmetric_groupoid_equivalence", "gpd-core"},
      {"left_bracket", "gpd-core"},
      {"right_bracket", "gpd-core"},
      {"verify_groupoid_equivalence", "gpd-core"},
      {"principal_decomposition", "gpd-core"},
      {"validate_fell_bundle", "fell"},
      {"make_trivial_cbundle", "fell"},
      {"pullback_bundle", "fell"},
      {"transformation_fell_bundle", "fell"},
      {"check_bundle_action", "fell"},
      {"is_free_bundle_action", "fell"},
      {"semidirect_fell_bundle", "fell"},
      {"quotient_fell_bundle", "fell"},
      {"orbit_bundle_action", "fell"},
      {"semidirect_orbit_bundle_action", "fell"},
      {"principal_fell_decomposition", "fell"},
      {"symmetric_action_equivalence", "fell"},
      {"one_sided_equivalence", "fell"},
      {"one_sided_transformation_equivalence", "fell"},
      {"verify_bundle_equivalence", "fell"},
      {"section_algebra", "star-alg"},
      {"regular_representation", "star-alg"},
      {"star_structure_report", "star-alg"},
      {"crossed_product", "star-alg"},
      {"induced_algebra", "star-alg"},
      {"linking_system", "morita"},
      {"verify_morita", "morita"},
      {"symmetric_morita", "morita"},
      {"one_sided_morita", "morita"},
      {"cstar_bundle_morita", "morita"},
      {"raeburn", "morita"},
      {"coaction_demo", "morita"},
  };
  return ops;
}

} // namespace groupoidal
