#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "statkit/immersion.hpp"

namespace statkit {

/// Selects a catalogue manifold and, optionally, a surface inside it.
///
/// Manifolds: euclidean3-trivial, euclidean4-trivial, h3-hessian,
/// h4-hessian-analogue, hessian-potential-r4.
/// Surfaces: plane, graph, sphere, torus (dim 4 only), horosphere.
struct FixtureSpec {
  std::string name;
  /// Coupling of the exp term in the hessian-potential-r4 potential.
  double epsilon = 0.05;
  std::optional<std::string> surface;
  double radius = 1.0;
  /// Second circle radius of the torus.
  double radius2 = 1.0;
  /// Last-coordinate height of plane/horosphere/sphere centre in the
  /// upper-half-space fixtures; offset of the same coordinate elsewhere.
  std::optional<double> height;
  /// Graph coefficients: 10 per height function, monomials ordered
  /// 1, u, v, u^2, uv, v^2, u^3, u^2 v, u v^2, v^3. Missing entries are zero.
  std::vector<double> graph_coeffs;
  double claimed_c = 0.0;
  std::uint64_t seed = 0;
  std::array<int, 2> grid{17, 17};
};

struct ValidationReport {
  std::string fixture;
  double claimed_c = 0.0;
  double tolerance = 0.0;
  std::size_t points = 0;
  double duality = 0.0;
  double constant_curvature = 0.0;
  double constant_curvature_dual = 0.0;
  double curvature_duality = 0.0;
  bool metric_spd = true;
  bool pass = false;
};

struct Fixture {
  StatisticalManifold manifold;
  std::optional<SurfaceImmersion> surface;
  double claimed_c = 0.0;
  std::vector<Vector> validation_points;
  ValidationReport validation;
};

const std::vector<std::string>& fixture_names();
const std::vector<std::string>& surface_kinds();

/// Catalogue manifold without validation. Throws UnknownFixture.
StatisticalManifold catalogue_manifold(const std::string& name, double epsilon = 0.05);

/// Deterministic validation sample: a lattice with `per_axis` points per axis
/// over the fixture's validation box plus `random_count` seeded points.
std::vector<Vector> validation_points(const std::string& name, int per_axis = 3,
                                      int random_count = 16, std::uint64_t seed = 0);

/// Max residuals over `points`; passes iff all are within `tolerance` and the
/// metric is positive definite at every point.
ValidationReport validate_fixture(const StatisticalManifold& m, double claimed_c,
                                  std::span<const Vector> points, const FdScheme& scheme,
                                  double tolerance);

/// Builds and validates. Throws UnknownFixture, ConfigError (bad surface
/// parameters) or ValidationFailed.
Fixture build_fixture(const FixtureSpec& spec, const FdScheme& scheme = {},
                      double tolerance = 1e-6);

/// Surface only; `m` fixes the ambient dimension and base point.
SurfaceImmersion build_surface(const FixtureSpec& spec, const StatisticalManifold& m);

/// Polynomial graph u -> (u, v, base + psi_1, [base + psi_2]).
SurfaceImmersion graph_surface(const StatisticalManifold& m, std::span<const double> coeffs,
                               double half_width, std::array<int, 2> grid);
/// Same graph over an explicit base point.
SurfaceImmersion graph_surface_at(const Vector& base, std::span<const double> coeffs,
                                  double half_width, std::array<int, 2> grid);

struct ScanSample {
  std::size_t index = 0;
  std::vector<double> coeffs;
  SurfaceImmersion surface;
  Vector u;
};

/// Seeded stream of random polynomial graphs in a validated family. Sample i
/// depends only on (seed, i), so samples may be generated in any order.
class RandomScan {
 public:
  RandomScan(const std::string& family, std::uint64_t seed, const FdScheme& scheme = {},
             double tolerance = 1e-6);

  const Fixture& fixture() const { return fixture_; }
  const StatisticalManifold& manifold() const { return fixture_.manifold; }
  ScanSample sample(std::size_t index) const;

 private:
  Fixture fixture_;
  std::uint64_t seed_;
};

/// The first `count` samples of the family's stream.
std::vector<ScanSample> random_scan(std::uint64_t seed, std::size_t count, const std::string& family,
                                    const FdScheme& scheme = {}, double tolerance = 1e-6);

}  // namespace statkit
