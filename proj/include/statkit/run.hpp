#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <string>

#include "statkit/fixtures.hpp"
#include "statkit/report.hpp"

namespace statkit {

enum ExitStatus : int {
  kExitOk = 0,
  kExitViolation = 2,
  kExitValidation = 3,
  kExitConfig = 64,
};

struct RunConfig {
  /// validate, verify or scan.
  std::string command = "verify";
  FixtureSpec fixture;
  std::array<int, 2> grid{17, 17};
  double fd_step = 1e-4;
  double tolerance = 1e-6;
  std::uint64_t seed = 0;
  std::size_t count = 100;
  /// "-" writes to stdout.
  std::string output = "-";
  std::string format = "csv";
  bool diagnostics = true;
  /// 0 means STATKIT_THREADS or the hardware concurrency.
  unsigned threads = 0;

  /// Throws ConfigError.
  void validate() const;
};

struct RunResult {
  int exit_status = kExitOk;
  ReportSummary summary;
  std::string error;
};

/// Worker count: `requested` if nonzero, capped by STATKIT_THREADS when set.
unsigned worker_count(unsigned requested = 0);

/// Executes one command and writes its report. Never throws; failures become
/// an exit status plus a structured error entry in the report and a message
/// on `log`.
RunResult run(const RunConfig& config, std::ostream& log);

}  // namespace statkit
