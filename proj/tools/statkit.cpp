#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "statkit/run.hpp"

int main(int argc, char** argv) {
  statkit::RunConfig cfg;
  CLI::App app{"Statistical-manifold surface invariants: validate fixtures, verify curvature bounds, scan random surfaces"};
  app.set_config("--config", "", "key=value file; command-line flags take precedence");

  std::vector<int> grid;
  std::string surface;
  double height = 0.0;

  app.add_option("command", cfg.command, "validate | verify | scan")
      ->check(CLI::IsMember({"validate", "verify", "scan"}));
  app.add_option("--fixture", cfg.fixture.name, "catalogue manifold or scan family")->required();
  app.add_option("--surface", surface, "plane | graph | sphere | torus | horosphere");
  app.add_option("--epsilon", cfg.fixture.epsilon, "exp coupling of hessian-potential-r4");
  app.add_option("--radius", cfg.fixture.radius, "sphere radius, first torus radius");
  app.add_option("--radius2", cfg.fixture.radius2, "second torus radius");
  auto* height_opt = app.add_option("--height", height, "last-coordinate offset of the surface");
  app.add_option("--coeffs", cfg.fixture.graph_coeffs, "graph coefficients, 10 per height function")
      ->delimiter(',');
  app.add_option("--claimed-c", cfg.fixture.claimed_c, "claimed constant curvature");
  app.add_option("--grid", grid, "points per axis: N or N1,N2")->delimiter(',')->expected(1, 2);
  app.add_option("--fd-step", cfg.fd_step, "central-difference step");
  app.add_option("--tolerance", cfg.tolerance, "pass threshold for residuals and slacks");
  app.add_option("--seed", cfg.seed, "seed for validation points and scans");
  app.add_option("--count", cfg.count, "number of scan samples");
  app.add_option("--output,-o", cfg.output, "report path, - for stdout");
  app.add_option("--format", cfg.format, "csv | json");
  app.add_option("--threads", cfg.threads, "worker threads, 0 for automatic");
  app.add_flag("!--no-diagnostics", cfg.diagnostics, "skip finite-difference cross-checks");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return statkit::kExitConfig;
  }

  if (!surface.empty()) cfg.fixture.surface = surface;
  if (*height_opt) cfg.fixture.height = height;
  if (grid.size() == 1) cfg.grid = {grid[0], grid[0]};
  if (grid.size() == 2) cfg.grid = {grid[0], grid[1]};
  return statkit::run(cfg, std::cerr).exit_status;
}
