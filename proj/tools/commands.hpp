#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>

#include "robocache/simulator.hpp"

namespace robocache::cli {

enum ExitCode : int { kOk = 0, kInputError = 1, kAlert = 2 };

struct CommonOptions {
  std::filesystem::path config;
  std::optional<std::uint64_t> seed;
  std::optional<std::filesystem::path> out;
};

int cmd_generate(const CommonOptions& opts, std::ostream& out,
                 std::ostream& err);

int cmd_run(const CommonOptions& opts, MethodKind method, bool snapshots,
            std::ostream& out, std::ostream& err);

int cmd_compare(const std::filesystem::path& baseline_report,
                const std::filesystem::path& cached_report,
                const std::optional<std::filesystem::path>& out_dir,
                std::ostream& out, std::ostream& err);

/// Generates, runs both methods and compares, for `sweep` consecutive seeds
/// starting at the configured one, using up to `jobs` threads.
int cmd_report(const CommonOptions& opts, unsigned jobs, unsigned sweep,
               std::ostream& out, std::ostream& err);

}  // namespace robocache::cli
