// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>

#include "fixtures.hpp"
#include "groupoidal/instances.hpp"
#include "groupoidal/morita.hpp"
#include "groupoidal/principal.hpp"
#include "groupoidal/sections.hpp"
#include "oracles.hpp"

using namespace groupoidal;
using namespace fixtures;

namespace {

constexpr double kTol = 1e-9;
constexpr double kExactTol = 1e-12;

/// Collects failed expectations of one criterion.
class Check {
public:
  void expect(bool ok, const std::string& what)
  {
    if (!ok && failures_.size() < 5)
      failures_.push_back(what);
    failed_ = failed_ || !ok;
  }
  void note(const std::string& s) { notes_ += (notes_.empty() ? "" : "; ") + s; }

  bool failed() const { return failed_; }
  const std::vector<std::string>& failures() const { return failures_; }
  const std::string& notes() const { return notes_; }

private:
  bool failed_ = false;
  std::vector<std::string> failures_;
  std::string notes_;
};

struct FourPoint {
  FellBundle a = trivial_line_bundle(make_pair_groupoid(4));
  BundleAction g = lift_action(a, g13_24());
  BundleAction h = lift_action(a, h12_34());
};

double max_residual(const ValidationReport& r)
{
  double m = 0.0;
  for (const auto& [name, v] : r.residuals())
    m = std::max(m, v);
  return m;
}

std::string str(const std::vector<int>& v)
{
  std::ostringstream os;
  os << '[';
  for (std::size_t i = 0; i < v.size(); ++i)
    os << (i ? "," : "") << v[i];
  os << ']';
  return os.str();
}

std::string num(double v)
{
  std::ostringstream os;
  os << v;
  return os.str();
}

Vector random_vector(Eigen::Index n, unsigned seed)
{
  std::mt19937 gen(seed);
  std::normal_distribution<double> nd;
  Vector v(n);
  for (Eigen::Index i = 0; i < n; ++i)
    v(i) = Complex(nd(gen), nd(gen));
  return v;
}

template <class F>
bool throws_precondition(F&& f, std::string* message)
{
  try {
    f();
  } catch (const PreconditionError& e) {
    *message = e.what();
    return true;
  }
  return false;
}

void four_point(Check& c)
{
  const FourPoint f;
  const auto e = symmetric_action_equivalence(f.g, f.h);
  const auto rep = verify_bundle_equivalence(e, kTol);
  c.expect(rep.ok(), "verify_bundle_equivalence: " + rep.to_string());
  for (int step = 1; step <= 6; ++step) {
    const std::string prefix = "step" + std::to_string(step) + "-";
    bool seen = false;
    for (const auto& [name, v] : rep.residuals())
      seen = seen || name.rfind(prefix, 0) == 0;
    c.expect(seen, prefix + " was not run");
  }
  c.expect(max_residual(rep) <= kTol, "residual above 1e-9");
  const auto m = symmetric_morita(f.g, f.h, kTol);
  c.expect(m.verdict == Verdict::equivalent, "symmetric_morita verdict " + to_string(m.verdict));
  c.expect(m.p_report.center_dimension == m.q_report.center_dimension, "corner centers differ");
  const auto ls = linking_system(e, kTol);
  const auto p = oracles::wedderburn(ls.p_corner), q = oracles::wedderburn(ls.q_corner);
  c.expect(p.center == m.p_report.center_dimension && q.center == m.q_report.center_dimension,
           "centers disagree with the oracle");
  c.note("max residual " + num(max_residual(rep)) + ", centers " +
         std::to_string(m.p_report.center_dimension) + " = " + std::to_string(m.q_report.center_dimension));
}

void groupoid_equivalences(Check& c)
{
  const auto g = g13_24(), h = h12_34();
  const auto base = symmetric_groupoid_equivalence(g.target(), g, h);
  c.expect(verify_groupoid_equivalence(base).ok(), "four-point instance");
  int corrupted = 0;
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const auto inst = random_commuting_instance(seed);
    c.expect(inst.groupoid.num_units() <= 6, "seed " + std::to_string(seed) + " has too many units");
    const auto e = symmetric_groupoid_equivalence(inst.groupoid, inst.g, inst.h);
    const auto rep = verify_groupoid_equivalence(e);
    c.expect(rep.ok(), "seed " + std::to_string(seed) + " (" + inst.description + "): " + rep.to_string());
    std::string what;
    const auto bad = verify_groupoid_equivalence(corrupt_one_entry(e, seed, &what));
    const bool detected = !bad.ok() && !bad.failures().front().witness.empty();
    c.expect(detected, "seed " + std::to_string(seed) + ": corruption not detected: " + what);
    corrupted += detected;
  }
  std::string what;
  const auto bad = verify_groupoid_equivalence(corrupt_one_entry(base, 0, &what));
  c.expect(!bad.ok() && !bad.failures().front().witness.empty(), "four-point corruption not detected");
  c.note("51 instances verified, " + std::to_string(corrupted + (bad.ok() ? 0 : 1)) + " corruptions detected");
}

void principal(Check& c)
{
  double worst = 0.0;
  for (std::uint64_t seed = 100; seed < 120; ++seed) {
    const auto inst = random_commuting_instance(seed);
    c.expect(is_free(inst.h), "seed " + std::to_string(seed) + " action not free");
    const auto rep = verify_principal_decomposition(inst.h, principal_decomposition(inst.h));
    c.expect(rep.ok(), "principal_decomposition seed " + std::to_string(seed) + ": " + rep.to_string());
    const auto act = random_unitary_bundle_action(inst.h, seed);
    const auto frep = verify_principal_fell_decomposition(act, principal_fell_decomposition(act), kTol);
    c.expect(frep.ok(), "principal_fell_decomposition seed " + std::to_string(seed) + ": " + frep.to_string());
    worst = std::max({worst, max_residual(rep), max_residual(frep)});
  }
  c.expect(worst <= kTol, "residual above 1e-9");
  c.note("20 actions, max residual " + num(worst));
}

void raeburn_cases(Check& c)
{
  const auto z2 = cyclic_group(2), e = trivial_group();
  {
    const auto b = diagonal_algebra(1);
    const auto gx = translation_action(z2, Side::left);
    const auto hx = group_set_action(e, {"0", "1"}, {{0, 1}}, Side::right);
    const auto m = raeburn(b, gx, hx, oracles::trivial_on(z2, b), oracles::trivial_on(e, b), kTol);
    c.expect(m.verdict == Verdict::equivalent, "two-point verdict " + to_string(m.verdict));
    c.expect(m.p_report.blocks == std::vector<int>{2} && m.q_report.blocks == std::vector<int>{1},
             "two-point blocks " + str(m.p_report.blocks) + " vs " + str(m.q_report.blocks));
    c.note("two-point " + str(m.p_report.blocks) + " ~ " + str(m.q_report.blocks));
  }
  {
    const auto b = diagonal_algebra(2);
    const std::vector<std::string> pts{"00", "01", "10", "11"};
    const auto gx = group_set_action(z2, pts, {{0, 1, 2, 3}, {2, 3, 0, 1}}, Side::left);
    const auto hx = group_set_action(z2, pts, {{0, 1, 2, 3}, {1, 0, 3, 2}}, Side::right);
    Matrix swap = Matrix::Zero(2, 2);
    swap(0, 1) = swap(1, 0) = 1.0;
    const AlgebraAction sigma{z2, b, Side::left, {Matrix::Identity(2, 2), swap}};
    const auto tau = oracles::trivial_on(z2, b);
    const auto m = raeburn(b, gx, hx, sigma, tau, kTol);
    const auto [p, q] = oracles::raeburn(b, gx, hx, sigma, tau);
    c.expect(m.verdict == Verdict::equivalent, "Klein verdict " + to_string(m.verdict));
    c.expect(m.p_report.center_dimension == p.center && m.q_report.center_dimension == q.center,
             "Klein centers disagree with the oracle");
    c.expect(m.p_report.blocks == p.blocks && m.q_report.blocks == q.blocks, "Klein blocks disagree with the oracle");
    c.note("Klein centers " + std::to_string(p.center) + " and " + std::to_string(q.center));
  }
}

void coactions(Check& c)
{
  for (int n : {2, 3}) {
    const auto g = cyclic_group(static_cast<std::size_t>(n));
    const auto m = coaction_demo(trivial_line_bundle(g.groupoid()), kTol);
    const auto p = oracles::wedderburn(oracles::coaction(g));
    const auto q = oracles::wedderburn(oracles::group_algebra(g));
    const std::string tag = "Z/" + std::to_string(n) + ": ";
    c.expect(m.verdict == Verdict::equivalent, tag + "verdict " + to_string(m.verdict));
    c.expect(m.p_dimension == n * n * n && m.q_dimension == n, tag + "dimensions");
    c.expect(m.p_report.center_dimension == n && m.q_report.center_dimension == n, tag + "centers");
    c.expect(p.dimension == m.p_dimension && q.dimension == m.q_dimension, tag + "oracle dimensions");
    c.expect(p.center == n && q.center == n && p.blocks == m.p_report.blocks && q.blocks == m.q_report.blocks,
             tag + "oracle centers or blocks");
    c.note(tag + str(m.p_report.blocks) + " ~ " + str(m.q_report.blocks));
  }
}

void convolutions(Check& c)
{
  double worst = 0.0;
  {
    const auto s3 = symmetric_group(3);
    const auto b = trivial_line_bundle(s3.groupoid());
    const auto act = translation_action(s3, Side::left);
    const auto t = transformation_fell_bundle(b, act);
    for (unsigned seed = 0; seed < 5; ++seed) {
      const Vector f = random_vector(t.bundle.total_dim(), 2 * seed);
      const Vector g = random_vector(t.bundle.total_dim(), 2 * seed + 1);
      const Vector expect = oracles::transformation_convolution(b, act, t.base.pairs, f, g);
      worst = std::max(worst, (convolve(t.bundle, f, g) - expect).cwiseAbs().maxCoeff());
    }
  }
  {
    const auto b = matrix_bundle(make_pair_groupoid(4), std::vector<int>{2, 1, 2, 1});
    const auto act = lift_action(b, g13_24());
    const auto sd = semidirect_fell_bundle(act);
    for (unsigned seed = 10; seed < 15; ++seed) {
      const Vector f = random_vector(sd.bundle.total_dim(), 2 * seed);
      const Vector g = random_vector(sd.bundle.total_dim(), 2 * seed + 1);
      const Vector expect = oracles::semidirect_convolution(act, f, g);
      worst = std::max(worst, (convolve(sd.bundle, f, g) - expect).cwiseAbs().maxCoeff());
    }
  }
  c.expect(worst <= kExactTol, "entrywise difference " + num(worst));
  std::ostringstream os;
  os << "max entrywise difference " << worst;
  c.note(os.str());
}

void negative_controls(Check& c)
{
  const FourPoint f;
  const auto e = symmetric_action_equivalence(f.g, f.h);

  const auto zeroed = verify_morita(zero_off_diagonal(linking_system(e, kTol)), kTol);
  c.expect(zeroed.verdict == Verdict::not_certified, "zeroed linking data certified");
  c.expect(zeroed.p_fullness_rank < zeroed.p_dimension, "zeroed linking data is still full");
  c.expect(!zeroed.reasons.empty(), "zeroed linking data has no witness");

  // Z/2 swapping 1 and 2 of the pair groupoid on three points fixes (3,3)
  const std::vector<std::vector<int>> swap12{{0, 1, 2}, {1, 0, 2}};
  const auto z2 = cyclic_group(2);
  const auto gl = pair_groupoid_action(z2, 3, swap12, Side::left);
  const auto hr = pair_groupoid_action(z2, 3, swap12, Side::right);
  const auto line = trivial_line_bundle(gl.target());
  const auto bl = lift_action(line, gl), br = lift_action(line, hr);
  const std::vector<std::pair<std::string, std::function<void()>>> constructions{
      {"quotient_groupoid", [&] { quotient_groupoid(gl); }},
      {"principal_decomposition", [&] { principal_decomposition(hr); }},
      {"quotient_fell_bundle", [&] { quotient_fell_bundle(bl); }},
      {"principal_fell_decomposition", [&] { principal_fell_decomposition(br); }},
      {"symmetric_groupoid_equivalence", [&] { symmetric_groupoid_equivalence(gl.target(), gl, hr); }},
      {"symmetric_action_equivalence", [&] { symmetric_action_equivalence(bl, br); }},
      {"one_sided_equivalence", [&] { one_sided_equivalence(bl); }},
      {"one_sided_morita", [&] { one_sided_morita(bl); }},
      {"induced_algebra",
       [&] {
         const auto c1 = diagonal_algebra(1);
         induced_algebra(c1, group_set_action(z2, {"p"}, {{0}, {0}}, Side::left), oracles::trivial_on(z2, c1));
       }},
  };
  int rejected = 0;
  for (const auto& [name, run] : constructions) {
    std::string message;
    const bool ok = throws_precondition(run, &message);
    c.expect(ok && message.find("fixed") != std::string::npos, name + " accepted a non-free action: " + message);
    rejected += ok;
  }

  auto bad = e;
  const auto z1 = arrow(f.a.base(), "(1,2)"), z2p = arrow(f.a.base(), "(1,4)");
  bad.left_inner[bad.pair(z1, z2p)] *= -1.0;
  const auto rep = verify_bundle_equivalence(bad, kTol);
  bool step3 = false;
  for (const auto& fl : rep.failures())
    step3 = step3 || (fl.check.rfind("step3-", 0) == 0 && !fl.witness.empty());
  c.expect(step3, "corrupted involution passed step 3");
  c.note("fullness rank " + std::to_string(zeroed.p_fullness_rank) + "/" + std::to_string(zeroed.p_dimension) +
         ", non-free rejected by " + std::to_string(rejected) + "/" + std::to_string(constructions.size()) +
         ", step 3 witness " + (rep.failures().empty() ? std::string("none") : rep.failures().front().witness));
}

struct Criterion {
  const char* id;
  const char* title;
  double budget_seconds;
  std::function<void(Check&)> run;
};

} // namespace

int main()
{
  const std::vector<Criterion> criteria{
      {"C1", "four-point symmetric equivalence and Morita verdict", 10.0, four_point},
      {"C2", "groupoid equivalences on 51 instances, corruptions detected", 0.0, groupoid_equivalences},
      {"C3", "principal decompositions of 20 random free actions", 0.0, principal},
      {"C4", "Raeburn two-point and Klein cases", 30.0, raeburn_cases},
      {"C5", "coaction duality for Z/2 and Z/3", 0.0, coactions},
      {"C6", "convolution against transformation and semidirect formulas", 0.0, convolutions},
      {"C7", "negative controls", 0.0, negative_controls},
  };
  int failed = 0;
  for (const auto& cr : criteria) {
    Check c;
    const auto start = std::chrono::steady_clock::now();
    try {
      cr.run(c);
    } catch (const std::exception& ex) {
      c.expect(false, std::string("exception: ") + ex.what());
    }
    const double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (cr.budget_seconds > 0.0)
      c.expect(s < cr.budget_seconds, "took " + num(s) + " s");
    std::printf("%s %s %s (%.2f s)%s%s\n", c.failed() ? "FAIL" : "PASS", cr.id, cr.title, s,
                c.notes().empty() ? "" : ": ", c.notes().c_str());
    for (const auto& f : c.failures())
      std::printf("    %s\n", f.c_str());
    failed += c.failed();
  }
  return failed == 0 ? 0 : 1;
}
