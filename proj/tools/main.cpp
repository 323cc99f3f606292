#include <CLI11.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <iterator>
#include <string>
#include <vector>

#include "groupoidal/runner.hpp"

namespace fs = std::filesystem;
using namespace groupoidal;

namespace {

constexpr int kUsageStatus = 3;

#ifndef GROUPOIDAL_MODEL_DIR
#define GROUPOIDAL_MODEL_DIR ""
#endif

fs::path model_dir()
{
  if (const char* env = std::getenv("GROUPOIDAL_MODELS"))
    return env;
  return GROUPOIDAL_MODEL_DIR;
}

ModelFile read_model(const std::string& where)
{
  if (where == "-") {
    const std::string text{std::istreambuf_iterator<char>(std::cin), {}};
    return parse_model(text, "<stdin>");
  }
  return load_model(where);
}

/// `morita symmetric_z2z2` resolves to the shipped model of the same name.
std::pair<ModelFile, std::vector<std::string>> resolve(const std::string& command,
                                                       std::vector<std::string> positionals)
{
  if (positionals.empty())
    throw UsageError(command + " needs a model");
  const bool scenario_command = command == "morita" || command == "check-equivalence";
  if (scenario_command && positionals.size() == 1 && !fs::exists(positionals[0])) {
    const auto shipped = model_dir() / (positionals[0] + ".model");
    if (!model_dir().empty() && fs::exists(shipped))
      return {load_model(shipped), positionals};
  }
  auto model = read_model(positionals[0]);
  positionals.erase(positionals.begin());
  return {std::move(model), positionals};
}

void write_file(const std::string& path, const std::string& text)
{
  std::ofstream out(path, std::ios::binary);
  if (!out)
    throw UsageError("cannot write '" + path + "'");
  out << text;
}

double default_tolerance()
{
  const char* env = std::getenv("GROUPOIDAL_TOL");
  if (!env || !*env)
    return kDefaultTolerance;
  char* end = nullptr;
  const double t = std::strtod(env, &end);
  if (*end != '\0' || !(t > 0.0))
    throw UsageError(std::string("GROUPOIDAL_TOL is not a positive number: ") + env);
  return t;
}

} // namespace

int main(int argc, char** argv)
{
  CLI::App app{"Finite groupoid actions, Fell bundles and Morita equivalence checks", "groupoidal"};
  app.set_version_flag("--version", kToolVersion);
  app.require_subcommand(1);
  app.fallthrough();

  RunOptions options;
  std::string json_path;
  bool timings = false;
  bool tol_given = false;
  app.add_option("--seed", options.seed, "Seed for randomized checks (recorded in the report)")->capture_default_str();
  app.add_option_function<double>(
         "--tol", [&](double t) { options.tol = t, tol_given = true; },
         "Numerical tolerance (default 1e-9, or GROUPOIDAL_TOL)")
    ->check(CLI::PositiveNumber);
  app.add_option("--json", json_path, "Also write the report as JSON to this path");
  app.add_flag("--timings", timings, "Include wall-clock timings in reports");

  std::vector<std::string> positionals;
  std::string output;
  DemoOptions demo;

  auto* validate = app.add_subcommand("validate", "Check every object of a model");
  validate->add_option("model", positionals, "Model file ('-' for stdin)")->required();

  auto* build = app.add_subcommand("build", "Run a construction and write the result as a model");
  build->add_option("args", positionals, "Model file, construction name and its arguments")
    ->required()
    ->expected(2, -1);
  build->add_option("-o,--output", output, "Output model path (default <model>.<construction>.model)");
  build->add_option("--name", options.name, "Name prefix for the constructed objects");
  build->add_flag_callback(
    "--list",
    [] {
      for (const auto& [name, args] : build_constructions()) {
        std::cout << name;
        for (const auto& a : args)
          std::cout << " <" << a << '>';
        std::cout << '\n';
      }
      throw CLI::Success();
    },
    "List constructions and exit");

  auto* check = app.add_subcommand("check-equivalence", "Verify the equivalence of a scenario");
  check->add_option("args", positionals, "Model file and scenario name, or a shipped scenario")
    ->required()
    ->expected(1, 2);

  auto* morita = app.add_subcommand("morita", "Certify Morita equivalence for a scenario");
  morita->add_option("args", positionals, "Model file and scenario name, or a shipped scenario")
    ->required()
    ->expected(1, 2);

  auto* demo_cmd = app.add_subcommand("demo", "Built-in examples: raeburn or coaction");
  std::string which;
  demo_cmd->add_option("which", which)->required()->check(CLI::IsMember({"raeburn", "coaction"}));
  demo_cmd->add_option("--group", demo.group, "Group for the coaction demo")->capture_default_str();
  demo_cmd->add_option("--bundle", demo.bundle, "line or matrix")->capture_default_str();
  demo_cmd->add_option("--case", demo.raeburn_case, "two-point or klein")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsageStatus;
  }

  try {
    if (!tol_given)
      options.tol = default_tolerance();
    RunReport report;
    if (*demo_cmd) {
      report = run_demo(which, demo, options);
    } else {
      const auto* sub = app.get_subcommands().front();
      const std::string command = sub->get_name();
      if (command == "check-equivalence" || command == "morita")
        if (positionals.size() == 1 && fs::exists(positionals[0]))
          throw UsageError(command + " needs a scenario name after the model");
      auto [model, args] = resolve(command, positionals);
      report = run(model, command, args, options);
      if (report.built && report.outcome() != Outcome::fail) {
        if (output.empty())
          output = fs::path(positionals[0]).replace_extension().string() + "." + args.front() + ".model";
        write_file(output, serialize_model(*report.built));
        std::cerr << "wrote " << output << '\n';
      }
    }
    std::cout << report.to_text(timings);
    if (!json_path.empty())
      write_file(json_path, report.to_json(timings) + '\n');
    return exit_status(report.outcome());
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << '\n';
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << '\n';
  } catch (const PreconditionError& e) {
    std::cerr << "usage error: " << e.what() << '\n';
  } catch (const std::ios_base::failure& e) {
    std::cerr << "i/o error: " << e.what() << '\n';
  }
  return kUsageStatus;
}
