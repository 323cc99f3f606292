#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <sys/wait.h>

#include "groupoidal/runner.hpp"

using namespace groupoidal;
using Json = nlohmann::json;

namespace {

const std::filesystem::path kModels = std::filesystem::path(GROUPOIDAL_SOURCE_DIR) / "models";

ModelFile model(const std::string& name) { return load_model(kModels / (name + ".model")); }

Json details(const RunReport& r, std::size_t i = 0) { return Json::parse(r.entries.at(i).json); }

int cli(const std::string& args)
{
  const std::string cmd = std::string(GROUPOIDAL_CLI) + " " + args + " > /dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

} // namespace

TEST(Runner, ValidateEmptyModelPasses)
{
  const auto r = run(parse_model("groupoidal-model 1\n"), "validate", {});
  EXPECT_EQ(r.outcome(), Outcome::pass);
  EXPECT_TRUE(r.entries.empty());
}

TEST(Runner, MoritaSymmetricFourPoint)
{
  const auto r = run(model("symmetric_z2z2"), "morita", {"symmetric_z2z2"});
  ASSERT_EQ(r.entries.size(), 1u);
  EXPECT_EQ(r.outcome(), Outcome::pass) << r.to_text();
  const auto j = details(r);
  EXPECT_EQ(j["verdict"], "equivalent");
  EXPECT_EQ(j["left"]["structure"]["center_dimension"], j["right"]["structure"]["center_dimension"]);
}

TEST(Runner, CoactionDemoZ3)
{
  const auto r = run_demo("coaction", {.group = "Z3", .bundle = "line"});
  EXPECT_EQ(r.outcome(), Outcome::pass) << r.to_text();
  const auto j = details(r);
  EXPECT_EQ(j["verdict"], "equivalent");
  EXPECT_EQ(j["left"]["structure"]["blocks"], Json({3, 3, 3}));
  EXPECT_EQ(j["right"]["structure"]["blocks"], Json({1, 1, 1}));
}

TEST(Runner, RaeburnDemos)
{
  const auto two = run_demo("raeburn", {.raeburn_case = "two-point"});
  EXPECT_EQ(details(two)["left"]["structure"]["blocks"], Json({2}));
  EXPECT_EQ(details(two)["right"]["structure"]["blocks"], Json({1}));
  EXPECT_EQ(run_demo("raeburn", {}).outcome(), Outcome::pass);
  EXPECT_THROW(run_demo("raeburn", {.raeburn_case = "nope"}), UsageError);
  EXPECT_THROW(run_demo("coaction", {.group = "Q8"}), UsageError);
}

TEST(Runner, PreconditionFailuresAreEntries)
{
  const auto m = model("non_free");
  const auto r = run(m, "morita", {"non_free"});
  ASSERT_EQ(r.entries.size(), 1u);
  EXPECT_EQ(r.outcome(), Outcome::fail);
  EXPECT_NE(r.entries[0].text.find("not free"), std::string::npos);
  for (const auto& c : {"quotient", "orbit-space"})
    EXPECT_EQ(run(m, "build", {c, "fix3"}).outcome(), Outcome::fail) << c;
  EXPECT_EQ(run(m, "build", {"principal", "fix3r"}).outcome(), Outcome::fail);
  for (const auto& c : {"quotient-bundle", "orbit-bundle"})
    EXPECT_EQ(run(m, "build", {c, "fa"}).outcome(), Outcome::fail) << c;
  EXPECT_EQ(run(m, "build", {"principal-bundle", "far"}).outcome(), Outcome::fail);
}

TEST(Runner, CorruptedInvolutionFailsValidation)
{
  const auto m = model("corrupted_involution");
  const auto r = run(m, "validate", {});
  EXPECT_EQ(r.outcome(), Outcome::fail);
  EXPECT_EQ(run(m, "check-equivalence", {"corrupted_involution"}).outcome(), Outcome::fail);
}

TEST(Runner, UsageErrors)
{
  const auto m = model("symmetric_z2z2");
  EXPECT_THROW(run(m, "frobnicate", {}), UsageError);
  EXPECT_THROW(run(m, "build", {"nope"}), UsageError);
  EXPECT_THROW(run(m, "build", {"quotient"}), UsageError);
  EXPECT_THROW(run(m, "build", {"quotient", "missing"}), UsageError);
  EXPECT_THROW(run(m, "morita", {"missing"}), UsageError);
  EXPECT_THROW(run(m, "validate", {"extra"}), UsageError);
}

TEST(Runner, BuildEmitsAParsableModel)
{
  const auto m = model("symmetric_z2z2");
  const auto r = run(m, "build", {"principal", "h"});
  EXPECT_EQ(r.outcome(), Outcome::pass) << r.to_text();
  ASSERT_TRUE(r.built.has_value());
  const auto text = serialize_model(*r.built);
  const auto back = parse_model(text);
  EXPECT_TRUE(back == *r.built);
  EXPECT_EQ(back.groupoids.size(), 2u);
  EXPECT_EQ(run(back, "validate", {}).outcome(), Outcome::pass);
}

TEST(Runner, ReportsAreDeterministic)
{
  const auto m = model("raeburn_klein");
  for (const auto& [cmd, args] : std::vector<std::pair<std::string, std::vector<std::string>>>{
         {"validate", {}}, {"morita", {"raeburn_klein"}}, {"build", {"induced", "B", "hx", "tau"}}}) {
    const auto a = run(m, cmd, args, {.seed = 17});
    const auto b = run(m, cmd, args, {.seed = 17});
    EXPECT_EQ(a.to_text(), b.to_text()) << cmd;
    EXPECT_EQ(a.to_json(), b.to_json()) << cmd;
    EXPECT_EQ(Json::parse(a.to_json())["seed"], 17);
  }
}

// Every public operation of gpd-core, fell, star-alg and morita is reached
// by some command line.
TEST(Runner, EveryOperationIsReachable)
{
  struct Invocation {
    std::string model, command;
    std::vector<std::string> args;
  };
  const std::vector<Invocation> invocations{
      {"symmetric_z2z2", "validate", {}},
      {"symmetric_z2z2", "check-equivalence", {"groupoid_z2z2"}},
      {"symmetric_z2z2", "morita", {"symmetric_z2z2"}},
      {"symmetric_z2z2", "build", {"semidirect", "g"}},
      {"symmetric_z2z2", "build", {"semidirect", "h"}},
      {"symmetric_z2z2", "build", {"orbit-space", "h"}},
      {"symmetric_z2z2", "build", {"principal", "h"}},
      {"symmetric_z2z2", "build", {"equivalence", "g", "h"}},
      {"symmetric_z2z2", "build", {"pullback", "A", "X", "(1,1)", "(1,2)", "(1,3)", "(1,4)", "(2,1)", "(2,2)",
                                   "(2,3)", "(2,4)", "(3,1)", "(3,2)", "(3,3)", "(3,4)", "(4,1)", "(4,2)",
                                   "(4,3)", "(4,4)"}},
      {"symmetric_z2z2", "build", {"orbit-bundle", "ha"}},
      {"symmetric_z2z2", "build", {"semidirect-orbit-bundle", "ga", "ha"}},
      {"symmetric_z2z2", "build", {"principal-bundle", "ha"}},
      {"symmetric_z2z2", "build", {"crossed-product", "ga"}},
      {"symmetric_z2z2", "build", {"linking", "symmetric_z2z2"}},
      {"raeburn_klein", "build", {"transformation", "gx"}},
      {"covariant_swap", "validate", {}},
      {"covariant_swap", "build", {"semidirect-space", "sw", "flip", "translate"}},
      {"covariant_swap", "build", {"semidirect-space", "swr", "flip_r", "translate_r"}},
      {"one_sided", "check-equivalence", {"one_sided"}},
      {"one_sided", "morita", {"one_sided"}},
      {"cstar_swap", "validate", {}},
      {"cstar_swap", "morita", {"cstar_swap"}},
      {"transformation_z3", "morita", {"transformation_z3"}},
      {"raeburn_klein", "validate", {}},
      {"raeburn_klein", "morita", {"raeburn_klein"}},
      {"coaction_z3", "morita", {"coaction_z3"}},
  };
  std::set<std::string> reached;
  for (const auto& inv : invocations) {
    const auto r = run(model(inv.model), inv.command, inv.args);
    EXPECT_EQ(r.outcome(), Outcome::pass) << inv.model << ' ' << inv.command << '\n' << r.to_text();
    reached.insert(r.operations.begin(), r.operations.end());
  }
  for (const auto& op : operation_registry())
    EXPECT_TRUE(reached.count(op.name)) << op.module << "::" << op.name << " is not reached";
}

TEST(Cli, ExitStatuses)
{
  const auto models = kModels.string();
  EXPECT_EQ(cli("morita symmetric_z2z2"), 0);
  EXPECT_EQ(cli("demo coaction --group Z3 --bundle line"), 0);
  EXPECT_EQ(cli("validate " + models + "/corrupted_involution.model"), 1);
  EXPECT_EQ(cli("morita " + models + "/non_free.model non_free"), 1);
  EXPECT_EQ(cli("frobnicate"), 3);
  EXPECT_EQ(cli("validate /nonexistent.model"), 3);
  EXPECT_EQ(cli("morita " + models + "/symmetric_z2z2.model"), 3);
  EXPECT_EQ(cli("--tol -1 validate " + models + "/symmetric_z2z2.model"), 3);
}

TEST(Cli, ParseErrorsAreUsageErrors)
{
  const auto path = std::filesystem::temp_directory_path() / "groupoidal_bad.model";
  std::ofstream(path) << "groupoidal-model 1\nbundle A\n  base Missing\nend\n";
  EXPECT_EQ(cli("validate " + path.string()), 3);
  std::filesystem::remove(path);
}

TEST(Cli, JsonReportAndEnvironmentTolerance)
{
  const auto out = std::filesystem::temp_directory_path() / "groupoidal_report.json";
  ASSERT_EQ(setenv("GROUPOIDAL_TOL", "1e-7", 1), 0);
  EXPECT_EQ(cli("--seed 5 --json " + out.string() + " morita symmetric_z2z2"), 0);
  unsetenv("GROUPOIDAL_TOL");
  std::ifstream in(out);
  const auto j = Json::parse(in);
  EXPECT_EQ(j["seed"], 5);
  EXPECT_DOUBLE_EQ(j["tol"].get<double>(), 1e-7);
  EXPECT_EQ(j["overall"], "pass");
  std::filesystem::remove(out);
}
