#include "statkit/run.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <exception>
#include <fstream>
#include <iostream>
#include <memory>
#include <thread>

namespace statkit {

namespace {

/// Evaluates `task(i)` for i in [0, n) on up to `workers` threads and returns
/// the results in index order.
template <typename Task>
auto parallel_map(std::size_t n, unsigned workers, const Task& task) {
  using Result = decltype(task(std::size_t{0}));
  std::vector<std::optional<Result>> out(n);
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::atomic<bool> failed{false};
  auto body = [&]() {
    for (std::size_t i = next++; i < n && !failed; i = next++) {
      try {
        out[i].emplace(task(i));
      } catch (...) {
        if (!failed.exchange(true)) failure = std::current_exception();
      }
    }
  };
  const unsigned count = static_cast<unsigned>(std::min<std::size_t>(workers, n));
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < count; ++t) pool.emplace_back(body);
  body();
  for (auto& th : pool) th.join();
  if (failure) std::rethrow_exception(failure);
  std::vector<Result> results;
  results.reserve(n);
  for (auto& r : out) results.push_back(std::move(*r));
  return results;
}

struct Output {
  std::ofstream file;
  std::ostream* stream = &std::cout;

  explicit Output(const std::string& path) {
    if (path == "-") return;
    file.open(path, std::ios::binary | std::ios::trunc);
    if (!file) throw IoFailure("cannot open '" + path + "' for writing");
    stream = &file;
  }
};

int status_for(const ReportSummary& s) { return s.pass ? kExitOk : kExitViolation; }

RunResult do_validate(const RunConfig& cfg, std::ostream& out) {
  const FdScheme scheme{cfg.fd_step, 2};
  const StatisticalManifold m = catalogue_manifold(cfg.fixture.name, cfg.fixture.epsilon);
  const std::vector<Vector> pts = validation_points(cfg.fixture.name, 3, 16, cfg.seed);
  const ValidationReport rep = validate_fixture(m, cfg.fixture.claimed_c, pts, scheme, cfg.tolerance);
  write_validation(out, rep, parse_format(cfg.format));
  RunResult result;
  result.summary.points = rep.points;
  result.summary.max_residual = std::max({rep.duality, rep.constant_curvature,
                                          rep.constant_curvature_dual, rep.curvature_duality});
  result.summary.pass = rep.pass;
  result.exit_status = rep.pass ? kExitOk : kExitValidation;
  return result;
}

RunResult do_verify(const RunConfig& cfg, std::ostream& out) {
  const FdScheme scheme{cfg.fd_step, 2};
  FixtureSpec spec = cfg.fixture;
  spec.grid = cfg.grid;
  spec.seed = cfg.seed;
  if (!spec.surface) spec.surface = "plane";
  const Fixture fx = build_fixture(spec, scheme, cfg.tolerance);
  const SurfaceImmersion& surface = *fx.surface;
  const std::vector<Vector> points = surface.grid_points();
  const ReportOptions options{cfg.diagnostics};
  const unsigned workers = worker_count(cfg.threads);

  ReportWriter writer(out, parse_format(cfg.format), cfg.tolerance);
  const std::size_t batch = std::max<std::size_t>(64, 16 * workers);
  for (std::size_t start = 0; start < points.size(); start += batch) {
    const std::size_t n = std::min(batch, points.size() - start);
    const auto reports = parallel_map(n, workers, [&](std::size_t i) {
      return compute_report(fx.manifold, surface, points[start + i], scheme, fx.claimed_c, options);
    });
    for (const auto& r : reports) writer.write(r);
  }
  RunResult result;
  result.summary = writer.finish();
  result.exit_status = status_for(result.summary);
  return result;
}

RunResult do_scan(const RunConfig& cfg, std::ostream& out) {
  const FdScheme scheme{cfg.fd_step, 2};
  const RandomScan scan(cfg.fixture.name, cfg.seed, scheme, cfg.tolerance);
  const ReportOptions options{cfg.diagnostics};
  const unsigned workers = worker_count(cfg.threads);
  const double c = scan.fixture().claimed_c;

  ReportWriter writer(out, parse_format(cfg.format), cfg.tolerance);
  const std::size_t batch = std::max<std::size_t>(64, 16 * workers);
  for (std::size_t start = 0; start < cfg.count; start += batch) {
    const std::size_t n = std::min(batch, cfg.count - start);
    const auto reports = parallel_map(n, workers, [&](std::size_t i) {
      const ScanSample s = scan.sample(start + i);
      return compute_report(scan.manifold(), s.surface, s.u, scheme, c, options);
    });
    for (std::size_t i = 0; i < n; ++i) writer.write(reports[i], start + i);
  }
  RunResult result;
  result.summary = writer.finish();
  result.exit_status = status_for(result.summary);
  return result;
}

}  // namespace

void RunConfig::validate() const {
  if (command != "validate" && command != "verify" && command != "scan") {
    throw ConfigError("unknown command '" + command + "' (expected validate, verify or scan)");
  }
  if (grid[0] < 2 || grid[1] < 2) throw ConfigError("grid needs at least 2 points per axis");
  if (!(fd_step > 0.0)) throw ConfigError("fd_step must be positive");
  if (!(tolerance > 0.0)) throw ConfigError("tolerance must be positive");
  if (command == "scan" && count == 0) throw ConfigError("count must be positive");
  parse_format(format);
  if (fixture.surface &&
      std::find(surface_kinds().begin(), surface_kinds().end(), *fixture.surface) ==
          surface_kinds().end()) {
    throw ConfigError("unknown surface '" + *fixture.surface + "'");
  }
}

unsigned worker_count(unsigned requested) {
  unsigned n = requested ? requested : std::max(1u, std::thread::hardware_concurrency());
  if (const char* env = std::getenv("STATKIT_THREADS")) {
    char* end = nullptr;
    const unsigned long cap = std::strtoul(env, &end, 10);
    if (end != env && *end == '\0' && cap > 0) n = std::min<unsigned>(n, static_cast<unsigned>(cap));
  }
  return n;
}

RunResult run(const RunConfig& config, std::ostream& log) {
  ReportFormat format = ReportFormat::csv;
  std::unique_ptr<Output> output;
  auto fail = [&](const std::string& kind, const std::string& message, int status) {
    log << "statkit: " << kind << ": " << message << '\n';
    if (output) {
      try {
        write_error(*output->stream, format, kind, message, status);
        output->stream->flush();
      } catch (...) {
      }
    }
    RunResult r;
    r.exit_status = status;
    r.summary.pass = false;
    r.error = message;
    return r;
  };
  try {
    config.validate();
    format = parse_format(config.format);
    output = std::make_unique<Output>(config.output);
    RunResult result;
    if (config.command == "validate") {
      result = do_validate(config, *output->stream);
    } else if (config.command == "verify") {
      result = do_verify(config, *output->stream);
    } else {
      result = do_scan(config, *output->stream);
    }
    output->stream->flush();
    if (!*output->stream) throw IoFailure("failed to write '" + config.output + "'");
    if (result.exit_status == kExitViolation) {
      log << "statkit: check failed: min slack "
          << (result.summary.min_slack ? format_number(*result.summary.min_slack) : "n/a")
          << ", max residual " << format_number(result.summary.max_residual) << ", tolerance "
          << format_number(config.tolerance) << '\n';
    } else if (result.exit_status == kExitValidation) {
      log << "statkit: fixture " << config.fixture.name << " failed validation\n";
    }
    return result;
  } catch (const ValidationFailed& e) {
    return fail("ValidationFailed", e.what(), kExitValidation);
  } catch (const UnknownFixture& e) {
    return fail("UnknownFixture", e.what(), kExitConfig);
  } catch (const ConfigError& e) {
    return fail("ConfigError", e.what(), kExitConfig);
  } catch (const IoFailure& e) {
    output.reset();
    return fail("IoFailure", e.what(), kExitConfig);
  } catch (const WrongCodimension& e) {
    return fail("WrongCodimension", e.what(), kExitConfig);
  } catch (const ChartBoundary& e) {
    return fail("ChartBoundary", e.what(), kExitConfig);
  } catch (const Error& e) {
    return fail("Error", e.what(), kExitViolation);
  }
}

}  // namespace statkit
