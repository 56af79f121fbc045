// perverse_kit <subcommand> <scenario> [--json PATH] [--expect-fail] [--quiet]
// perverse_kit check-all <directory> [--threads N]
//
// Exit codes: 0 all pass, 2 some fail, 3 hypothesis-not-met only, 64 parse or
// usage error, 65 schema error.

#include <CLI11.hpp>
#include <fmt/format.h>

#include <fstream>
#include <iostream>

#include "perverse/cli.hpp"

namespace {

constexpr int kParseExit = 64;
constexpr int kSchemaExit = 65;

struct Options {
  std::string input;
  std::string json_path;
  bool expect_fail = false;
  bool quiet = false;
  int threads = 1;
};

void emit(const perverse::cli::Report& report, const Options& o) {
  if (!o.quiet) std::cout << perverse::cli::render(report);
  if (o.json_path.empty()) return;
  const std::string text = report.to_json().dump(2) + "\n";
  if (o.json_path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(o.json_path, std::ios::binary);
  if (!out) throw perverse::Error(perverse::ErrorCode::parse, fmt::format("cannot write {}", o.json_path));
  out << text;
}

int run(std::optional<perverse::cli::Kind> required, const Options& o) {
  using namespace perverse::cli;
  try {
    Report report;
    if (required == Kind::check_all) {
      report = check_all(o.input, o.threads);
    } else {
      const Scenario s = load_scenario(o.input);
      if (required && s.kind != *required)
        throw perverse::Error(perverse::ErrorCode::schema, fmt::format("scenario kind is {}, subcommand expects {}",
                                                                       to_string(s.kind), to_string(*required)));
      report = run_scenario(s);
    }
    emit(report, o);
    return exit_code(report, o.expect_fail);
  } catch (const perverse::Error& e) {
    std::cerr << "perverse_kit: " << e.what() << "\n";
    return e.code() == perverse::ErrorCode::parse ? kParseExit : kSchemaExit;
  }
}

}  // namespace

int main(int argc, char** argv) {
  using perverse::cli::Kind;
  CLI::App app{"Exact verification of decomposition-theorem linear algebra"};
  app.require_subcommand(1);
  Options o;

  std::vector<std::pair<CLI::App*, std::optional<Kind>>> commands;
  auto add = [&](const std::string& name, std::optional<Kind> kind, const std::string& help) {
    CLI::App* sub = app.add_subcommand(name, help);
    const bool directory = kind == Kind::check_all;
    sub->add_option(directory ? "directory" : "scenario", o.input, directory ? "Directory of *.json scenarios" : "Scenario file")
        ->required();
    sub->add_option("--json", o.json_path, "Write the JSON report to PATH (- for stdout)");
    sub->add_flag("--expect-fail", o.expect_fail, "Exit 0 on fail and 2 on pass");
    sub->add_flag("--quiet", o.quiet, "Suppress the human-readable table");
    sub->add_option("--threads", o.threads, "Parallel scenarios for check-all")->check(CLI::PositiveNumber);
    commands.emplace_back(sub, kind);
  };
  add("grauert", Kind::grauert, "Negative definiteness of an exceptional curve configuration");
  add("zariski", Kind::zariski, "Zariski lemma for a fiber cycle");
  add("fibration", Kind::fibration, "Stalk decomposition of a degenerating curve fibration");
  add("ic-stalk", Kind::ic_stalk, "IC stalk at an isolated singularity from link cohomology");
  add("gysin", Kind::gysin, "Cohomology of a circle bundle, optionally with its IC stalk");
  add("germ-decompose", Kind::germ_decompose, "Splitting of a surface resolution germ");
  add("germ-truncate", Kind::germ_truncate, "Perverse truncation of a point germ");
  add("koszul", Kind::koszul, "IC stalk at a normal crossing via two independent routes");
  add("hl-check", Kind::hl_check, "Hard Lefschetz and primitive decomposition");
  add("perverse-filtration", Kind::perverse_filtration, "Perverse filtration of a resolution package");
  add("limit-primitives", Kind::limit_primitives, "Limit of ker(L + eps eta) as eps -> 0");
  add("etal-decomposition", Kind::etal_decomposition, "Bigraded (eta, L) decomposition");
  add("motive", Kind::motive, "Projectors cutting IH out of a threefold resolution");
  add("run", std::nullopt, "Run a scenario of any kind");
  add("check-all", Kind::check_all, "Run every scenario of a directory");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kParseExit;
  }
  for (const auto& [sub, kind] : commands)
    if (sub->parsed()) return run(kind, o);
  return kParseExit;
}
