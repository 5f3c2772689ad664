#pragma once

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "statkit/fixtures.hpp"
#include "statkit/invariants.hpp"

namespace statkit {

enum class ReportFormat { csv, json };

/// "csv" or "json". Throws ConfigError.
ReportFormat parse_format(const std::string& text);

/// Shortest round-trip decimal form; identical on every run.
std::string format_number(double value);

/// Exact CSV header of point reports.
const std::string& csv_header();

struct ReportSummary {
  std::optional<double> min_slack;
  double max_residual = 0.0;
  std::size_t points = 0;
  bool pass = true;
};

/// Streams point reports row by row and reduces the summary as it goes.
/// A point fails when its slack is below -tolerance or its largest residual
/// exceeds tolerance.
class ReportWriter {
 public:
  ReportWriter(std::ostream& out, ReportFormat format, double tolerance);

  /// `sample` is written as an extra JSON key for scan rows.
  void write(const InvariantReport& report, std::optional<std::size_t> sample = std::nullopt);
  /// Closes the document. Must be called exactly once.
  ReportSummary finish();

  const ReportSummary& summary() const { return summary_; }

 private:
  std::ostream& out_;
  ReportFormat format_;
  double tolerance_;
  ReportSummary summary_;
  bool finished_ = false;
};

/// Writes `reports` to `path` ("-" for stdout). Throws IoFailure, or
/// DegenerateInput when `reports` is empty.
ReportSummary emit_report(std::span<const InvariantReport> reports, ReportFormat format,
                          const std::string& path, double tolerance);

void write_validation(std::ostream& out, const ValidationReport& report, ReportFormat format);

/// Structured error entry for a failed run.
void write_error(std::ostream& out, ReportFormat format, const std::string& kind,
                 const std::string& message, int exit_status);

}  // namespace statkit
