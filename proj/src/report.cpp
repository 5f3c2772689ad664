#include "statkit/report.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <iostream>

#include <json.hpp>

namespace statkit {

namespace {

using nlohmann::json;

json optional_number(const std::optional<double>& v) {
  if (!v || !std::isfinite(*v)) return nullptr;
  return *v;
}

json number(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

std::string csv_field(const std::optional<double>& v) { return v ? format_number(*v) : std::string(); }

std::string csv_escape(const std::string& text) {
  std::string out = "\"";
  for (char ch : text) {
    if (ch == '"') out += '"';
    out += ch;
  }
  return out + "\"";
}

json summary_json(const ReportSummary& s) {
  return json{{"min_slack", optional_number(s.min_slack)},
              {"max_residual", number(s.max_residual)},
              {"points", s.points},
              {"pass", s.pass}};
}

}  // namespace

ReportFormat parse_format(const std::string& text) {
  if (text == "csv") return ReportFormat::csv;
  if (text == "json") return ReportFormat::json;
  throw ConfigError("unknown output format '" + text + "' (expected csv or json)");
}

std::string format_number(double value) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, value);
  return std::string(buf, res.ptr);
}

const std::string& csv_header() {
  static const std::string header =
      "u1,u2,G,G_perp,G0,K0_ambient,H_norm,H_star_norm,euler_slack,wintgen_slack,max_residual";
  return header;
}

ReportWriter::ReportWriter(std::ostream& out, ReportFormat format, double tolerance)
    : out_(out), format_(format), tolerance_(tolerance) {
  if (format_ == ReportFormat::csv) {
    out_ << csv_header() << '\n';
  } else {
    out_ << "{\n\"points\": [";
  }
}

void ReportWriter::write(const InvariantReport& r, std::optional<std::size_t> sample) {
  const double residual = r.max_residual();
  const std::optional<double> slack = r.slack();
  if (slack) summary_.min_slack = summary_.min_slack ? std::min(*summary_.min_slack, *slack) : *slack;
  summary_.max_residual = std::max(summary_.max_residual, residual);
  const bool ok = (!slack || *slack >= -tolerance_) && residual <= tolerance_;
  summary_.pass = summary_.pass && ok;

  if (format_ == ReportFormat::csv) {
    out_ << format_number(r.u(0)) << ',' << format_number(r.u(1)) << ',' << format_number(r.G) << ','
         << csv_field(r.G_perp) << ',' << format_number(r.G0) << ',' << format_number(r.K0_ambient)
         << ',' << format_number(r.H_norm) << ',' << format_number(r.H_star_norm) << ','
         << csv_field(r.euler_slack) << ',' << csv_field(r.wintgen_slack) << ','
         << format_number(residual) << '\n';
  } else {
    json row = json::object();
    if (sample) row["sample"] = *sample;
    row["u1"] = number(r.u(0));
    row["u2"] = number(r.u(1));
    row["G"] = number(r.G);
    row["G_perp"] = optional_number(r.G_perp);
    row["G0"] = number(r.G0);
    row["K0_ambient"] = number(r.K0_ambient);
    row["H_norm"] = number(r.H_norm);
    row["H_star_norm"] = number(r.H_star_norm);
    row["euler_slack"] = optional_number(r.euler_slack);
    row["wintgen_slack"] = optional_number(r.wintgen_slack);
    row["max_residual"] = number(residual);
    json residuals = json::object();
    for (const auto& [name, value] : r.residuals) residuals[name] = number(value);
    row["residuals"] = residuals;
    out_ << (summary_.points == 0 ? "\n" : ",\n") << row.dump();
  }
  ++summary_.points;
}

ReportSummary ReportWriter::finish() {
  if (finished_) throw Error("ReportWriter::finish called twice");
  finished_ = true;
  if (format_ == ReportFormat::json) {
    out_ << "\n],\n\"summary\": " << summary_json(summary_).dump() << "\n}\n";
  }
  out_.flush();
  if (!out_) throw IoFailure("failed to write report");
  return summary_;
}

ReportSummary emit_report(std::span<const InvariantReport> reports, ReportFormat format,
                          const std::string& path, double tolerance) {
  if (reports.empty()) throw DegenerateInput("emit_report: no reports");
  std::ofstream file;
  std::ostream* out = &std::cout;
  if (path != "-") {
    file.open(path, std::ios::binary | std::ios::trunc);
    if (!file) throw IoFailure("cannot open '" + path + "' for writing");
    out = &file;
  }
  ReportWriter writer(*out, format, tolerance);
  for (const InvariantReport& r : reports) writer.write(r);
  return writer.finish();
}

void write_validation(std::ostream& out, const ValidationReport& r, ReportFormat format) {
  if (format == ReportFormat::csv) {
    out << "fixture,claimed_c,tolerance,points,duality,constant_curvature,constant_curvature_dual,"
           "curvature_duality,metric_spd,pass\n"
        << r.fixture << ',' << format_number(r.claimed_c) << ',' << format_number(r.tolerance) << ','
        << r.points << ',' << format_number(r.duality) << ',' << format_number(r.constant_curvature)
        << ',' << format_number(r.constant_curvature_dual) << ','
        << format_number(r.curvature_duality) << ',' << (r.metric_spd ? "true" : "false") << ','
        << (r.pass ? "true" : "false") << '\n';
  } else {
    const json doc{{"fixture", r.fixture},
                   {"claimed_c", number(r.claimed_c)},
                   {"tolerance", number(r.tolerance)},
                   {"points", r.points},
                   {"duality", number(r.duality)},
                   {"constant_curvature", number(r.constant_curvature)},
                   {"constant_curvature_dual", number(r.constant_curvature_dual)},
                   {"curvature_duality", number(r.curvature_duality)},
                   {"metric_spd", r.metric_spd},
                   {"pass", r.pass}};
    out << doc.dump(2) << '\n';
  }
}

void write_error(std::ostream& out, ReportFormat format, const std::string& kind,
                 const std::string& message, int exit_status) {
  if (format == ReportFormat::csv) {
    out << "error,message,exit_status\n" << kind << ',' << csv_escape(message) << ',' << exit_status << '\n';
  } else {
    const json doc{{"error", {{"kind", kind}, {"message", message}, {"exit_status", exit_status}}},
                   {"summary", {{"min_slack", nullptr}, {"max_residual", nullptr}, {"pass", false}}}};
    out << doc.dump(2) << '\n';
  }
}

}  // namespace statkit
