#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "ncdg/errors.hpp"
#include "ncdg/runner.hpp"

namespace {

using namespace ncdg;

constexpr int kUsage = 2;

struct Output {
  std::string path;
  std::string format = "json";

  ReportFormat fmt() const { return format == "md" ? ReportFormat::markdown : ReportFormat::json; }
};

void add_output(CLI::App* cmd, Output& o) {
  cmd->add_option("--out", o.path, "write the report to FILE instead of stdout");
  cmd->add_option("--format", o.format, "report format")->check(CLI::IsMember({"json", "md"}));
}

int finish(const Report& r, const Output& o) {
  if (o.path.empty())
    std::cout << render(r, o.fmt());
  else
    emit_report(r, o.fmt(), o.path);
  return r.exit_code();
}

Scenario scenario_from_argument(const std::string& arg) {
  const std::string prefix = "builtin:";
  if (arg.rfind(prefix, 0) == 0) {
    auto text = builtin_scenario(arg.substr(prefix.size()));
    if (!text) throw ValidationError("no built-in scenario '" + arg.substr(prefix.size()) + "'");
    return parse_scenario(*text);
  }
  return load_scenario(arg);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact curvature of noncommutative metrics over truncated h-series"};
  app.require_subcommand(1);

  std::string scenario_path;
  Output run_out;
  auto* run = app.add_subcommand("run", "run a scenario file, or builtin:NAME");
  run->add_option("scenario", scenario_path, "scenario JSON file")->required();
  add_output(run, run_out);

  int order = 8, points = 5;
  std::uint64_t seed = 42;
  Output app_out;
  auto* appendix = app.add_subcommand("verify-appendix", "check the trigonometric Moyal identities");
  appendix->add_option("--order", order, "truncation order N")->check(CLI::NonNegativeNumber);
  appendix->add_option("--points", points, "random base points")->check(CLI::PositiveNumber);
  appendix->add_option("--seed", seed, "random seed");
  add_output(appendix, app_out);

  int example_id = 1;
  Output ex_out;
  auto* example = app.add_subcommand("example", "run a built-in constant-metric example");
  example->add_option("--id", example_id, "example number")->required()->check(CLI::IsMember({1, 2}));
  add_output(example, ex_out);

  auto* list = app.add_subcommand("list-checks", "list check identifiers and built-in scenarios");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : kUsage;
  }

  try {
    if (*run) return finish(run_scenario(scenario_from_argument(scenario_path)), run_out);
    if (*appendix) return finish(verify_appendix_report(order, points, seed), app_out);
    if (*example) {
      auto text = builtin_scenario("example-" + std::to_string(example_id));
      return finish(run_scenario(parse_scenario(*text)), ex_out);
    }
    if (*list) {
      for (auto& c : check_catalogue()) std::cout << c.id << "\t" << c.summary << "\n";
      std::cout << "\nbuilt-in scenarios:\n";
      for (auto& [name, text] : builtin_scenarios()) std::cout << "  builtin:" << name << "\n";
      return 0;
    }
  } catch (const ParseError& e) {
    std::cerr << e.what() << "\n";
    return kUsage;
  } catch (const ValidationError& e) {
    std::cerr << e.what() << "\n";
    return kUsage;
  } catch (const IOError& e) {
    std::cerr << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << e.what() << "\n";
    return 1;
  }
  return kUsage;
}
