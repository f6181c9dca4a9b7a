#include <CLI11.hpp>
#include <cstdint>
#include <iostream>
#include <optional>
#include <string>

#include "commands.hpp"

namespace {

void add_common(CLI::App* cmd, robocache::cli::CommonOptions& opts,
                std::optional<std::uint64_t>& seed, std::string& out) {
  cmd->add_option("--config", opts.config, "Experiment config (INI)")
      ->required()
      ->check(CLI::ExistingFile);
  cmd->add_option("--seed", seed, "Override the config seed");
  cmd->add_option("--out", out, "Override the output directory");
}

}  // namespace

int main(int argc, char** argv) {
  namespace cli = robocache::cli;

  CLI::App app{"robocache: hit-ordered robot cache simulator"};
  app.require_subcommand(1);

  cli::CommonOptions opts;
  std::optional<std::uint64_t> seed;
  std::string out;

  auto* generate = app.add_subcommand("generate", "Write a trace and knowledge base");
  add_common(generate, opts, seed, out);

  auto* run = app.add_subcommand("run", "Simulate one method over the trace");
  add_common(run, opts, seed, out);
  std::string method;
  bool snapshots = false;
  run->add_option("--method", method, "baseline or cached")
      ->required()
      ->check(CLI::IsMember({"baseline", "cached"}));
  run->add_flag("--snapshot", snapshots, "Export per-robot holding-area CSVs");

  auto* compare = app.add_subcommand("compare", "Compare two run reports");
  std::string baseline_report, cached_report;
  compare->add_option("baseline", baseline_report, "Baseline report CSV")->required();
  compare->add_option("cached", cached_report, "Cached report CSV")->required();
  compare->add_option("--out", out, "Directory for comparison.csv");

  auto* report = app.add_subcommand("report", "Generate, run both methods, compare");
  add_common(report, opts, seed, out);
  unsigned jobs = 1;
  unsigned sweep = 1;
  report->add_option("--jobs", jobs, "Parallel runs")->check(CLI::PositiveNumber);
  report->add_option("--sweep", sweep, "Number of consecutive seeds")
      ->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return cli::kInputError;
  }

  opts.seed = seed;
  if (!out.empty()) opts.out = out;

  if (*generate) return cli::cmd_generate(opts, std::cout, std::cerr);
  if (*run) {
    return cli::cmd_run(opts, robocache::parse_method(method), snapshots,
                        std::cout, std::cerr);
  }
  if (*compare) {
    return cli::cmd_compare(baseline_report, cached_report, opts.out, std::cout,
                            std::cerr);
  }
  return cli::cmd_report(opts, jobs, sweep, std::cout, std::cerr);
}
