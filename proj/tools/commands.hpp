#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>

#include "run_config.hpp"

namespace freight::cli {

enum ExitCode : int { kOk = 0, kValidationFailure = 1, kSolverFailure = 2, kIoFailure = 3 };

struct Streams {
  std::ostream& out;
  std::ostream& err;
};

struct AssignOptions {
  bool base_case = false;
};

struct ReportOptions {
  std::filesystem::path from;  // directory holding a previous run's artifacts
};

struct SampleOptions {
  bool base_case = false;
  int count = 1;
};

// Each command maps library errors onto the exit codes above and reports them on `err`.
int cmd_validate(const RunConfig& cfg, Streams io);
int cmd_assign(const RunConfig& cfg, const AssignOptions& opts, Streams io);
int cmd_saa(const RunConfig& cfg, Streams io);
int cmd_report(const RunConfig& cfg, const ReportOptions& opts, Streams io);
int cmd_sample(const RunConfig& cfg, const SampleOptions& opts, Streams io);

// Exit code for an error escaping a command.
int exit_code_for(const std::exception& e);

}  // namespace freight::cli
