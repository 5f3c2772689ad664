#include "statkit/fixtures.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

namespace statkit {

namespace {

constexpr double kPi = 3.14159265358979323846;

struct CatalogueEntry {
  int dim;
  /// Index of the half-space height coordinate, or -1.
  int height_axis;
  /// Default value of the last coordinate for surfaces.
  double base_height;
  /// Half-width of the default surface sample box.
  double surface_extent;
  Vector box_lower;
  Vector box_upper;
};

Vector filled(int n, double v) { return Vector::Constant(n, v); }

CatalogueEntry entry_for(const std::string& name) {
  if (name == "euclidean3-trivial") return {3, -1, 0.0, 1.0, filled(3, -1.0), filled(3, 1.0)};
  if (name == "euclidean4-trivial") return {4, -1, 0.0, 1.0, filled(4, -1.0), filled(4, 1.0)};
  if (name == "h3-hessian" || name == "h4-hessian-analogue") {
    const int n = name == "h3-hessian" ? 3 : 4;
    Vector lo = filled(n, -1.0);
    Vector hi = filled(n, 1.0);
    lo(n - 1) = 0.75;
    hi(n - 1) = 1.25;
    return {n, n - 1, 1.0, 1.0, lo, hi};
  }
  if (name == "hessian-potential-r4") return {4, -1, 0.0, 0.6, filled(4, -0.8), filled(4, 0.8)};
  throw UnknownFixture("unknown fixture '" + name + "'");
}

StatisticalManifold flat_trivial(const std::string& name, int n) {
  return StatisticalManifold(
      name, n, ChartDomain::unbounded(n), [n](const Vector&) { return Matrix(Matrix::Identity(n, n)); },
      [n](const Vector&) { return Array3(n); }, 0.0, [n](const Vector&) { return Array3(n); });
}

/// Upper half-space y^n > 0 with g = (y^n)^-2 sum dy^k dy^k and the flat
/// connection nabla_{d_n} d_n = d_n / y^n, nabla_{d_i} d_j = 2 delta_ij d_n / y^n.
StatisticalManifold upper_half_space(const std::string& name, int n) {
  const int t = n - 1;
  ChartDomain chart = ChartDomain::unbounded(n);
  chart.lower(t) = 0.0;
  auto metric = [n, t](const Vector& y) {
    return Matrix(Matrix::Identity(n, n) / (y(t) * y(t)));
  };
  auto dmetric = [n, t](const Vector& y) {
    Array3 dg(n);
    const double v = -2.0 / (y(t) * y(t) * y(t));
    for (int i = 0; i < n; ++i) dg(t, i, i) = v;
    return dg;
  };
  auto primal = [n, t](const Vector& y) {
    Array3 gamma(n);
    gamma(t, t, t) = 1.0 / y(t);
    for (int i = 0; i < t; ++i) gamma(t, i, i) = 2.0 / y(t);
    return gamma;
  };
  return StatisticalManifold(name, n, chart, metric, primal, 0.0, dmetric);
}

/// g = Hess(1/2 |y|^2 + eps exp(sum y)), flat primal connection.
StatisticalManifold hessian_potential(double epsilon) {
  constexpr int n = 4;
  ChartDomain chart{filled(n, -1.0), filled(n, 1.0)};
  auto metric = [epsilon](const Vector& y) {
    const double e = epsilon * std::exp(y.sum());
    return Matrix(Matrix::Identity(n, n) + Matrix::Constant(n, n, e));
  };
  auto dmetric = [epsilon](const Vector& y) {
    const double e = epsilon * std::exp(y.sum());
    Array3 dg(n);
    for (int k = 0; k < n; ++k) {
      for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) dg(k, i, j) = e;
      }
    }
    return dg;
  };
  return StatisticalManifold("hessian-potential-r4", n, chart, metric,
                             [](const Vector&) { return Array3(n); }, 0.0, dmetric);
}

double unit_uniform(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

std::mt19937_64 seeded(std::uint64_t seed, std::uint64_t stream) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(stream >> 32)};
  return std::mt19937_64(seq);
}

/// Polynomial of degree <= 3 with its first and second derivatives.
struct Poly {
  std::array<double, 10> c{};

  double value(double u, double v) const {
    return c[0] + c[1] * u + c[2] * v + c[3] * u * u + c[4] * u * v + c[5] * v * v +
           c[6] * u * u * u + c[7] * u * u * v + c[8] * u * v * v + c[9] * v * v * v;
  }
  double du(double u, double v) const {
    return c[1] + 2 * c[3] * u + c[4] * v + 3 * c[6] * u * u + 2 * c[7] * u * v + c[8] * v * v;
  }
  double dv(double u, double v) const {
    return c[2] + c[4] * u + 2 * c[5] * v + c[7] * u * u + 2 * c[8] * u * v + 3 * c[9] * v * v;
  }
  double duu(double u, double v) const { return 2 * c[3] + 6 * c[6] * u + 2 * c[7] * v; }
  double duv(double u, double v) const { return c[4] + 2 * c[7] * u + 2 * c[8] * v; }
  double dvv(double u, double v) const { return 2 * c[5] + 2 * c[8] * u + 6 * c[9] * v; }
};

Vector base_point(const CatalogueEntry& entry, const std::optional<double>& height) {
  Vector base = Vector::Zero(entry.dim);
  base(entry.dim - 1) = height.value_or(entry.base_height);
  return base;
}

ChartDomain square(double half) { return {filled(2, -half), filled(2, half)}; }

SurfaceJet zero_jet(int n) {
  SurfaceJet jet;
  jet.value = Vector::Zero(n);
  for (int a = 0; a < 2; ++a) {
    jet.d[a] = Vector::Zero(n);
    for (int b = 0; b < 2; ++b) jet.dd[a][b] = Vector::Zero(n);
  }
  return jet;
}

SurfaceImmersion make_surface(std::string kind, ChartDomain domain, ChartDomain samples,
                              std::array<int, 2> grid, SurfaceJetFn jet) {
  SurfaceMap map = [jet](const Vector& u) { return jet(u).value; };
  return SurfaceImmersion(std::move(kind), std::move(domain), std::move(samples), grid,
                          std::move(map), std::move(jet));
}

SurfaceImmersion plane_surface(const std::string& kind, const Vector& base, double extent,
                               std::array<int, 2> grid) {
  const int n = static_cast<int>(base.size());
  SurfaceJetFn jet = [base, n](const Vector& u) {
    SurfaceJet j = zero_jet(n);
    j.value = base;
    j.value(0) += u(0);
    j.value(1) += u(1);
    j.d[0](0) = 1.0;
    j.d[1](1) = 1.0;
    return j;
  };
  return make_surface(kind, square(1.25 * extent), square(extent), grid, jet);
}

SurfaceImmersion sphere_surface(const Vector& center, double r, std::array<int, 2> grid) {
  const int n = static_cast<int>(center.size());
  SurfaceJetFn jet = [center, r, n](const Vector& u) {
    const double su = std::sin(u(0)), cu = std::cos(u(0));
    const double sv = std::sin(u(1)), cv = std::cos(u(1));
    SurfaceJet j = zero_jet(n);
    j.value = center;
    j.value.head(3) += r * Eigen::Vector3d(su * cv, su * sv, cu);
    j.d[0].head(3) = r * Eigen::Vector3d(cu * cv, cu * sv, -su);
    j.d[1].head(3) = r * Eigen::Vector3d(-su * sv, su * cv, 0.0);
    j.dd[0][0].head(3) = r * Eigen::Vector3d(-su * cv, -su * sv, -cu);
    j.dd[0][1].head(3) = r * Eigen::Vector3d(-cu * sv, cu * cv, 0.0);
    j.dd[1][0] = j.dd[0][1];
    j.dd[1][1].head(3) = r * Eigen::Vector3d(-su * cv, -su * sv, 0.0);
    return j;
  };
  ChartDomain domain{Vector(2), Vector(2)};
  domain.lower << 0.2, -3.3;
  domain.upper << kPi - 0.2, 3.3;
  ChartDomain samples{Vector(2), Vector(2)};
  samples.lower << 0.35, -3.0;
  samples.upper << kPi - 0.35, 3.0;
  return make_surface("sphere", domain, samples, grid, jet);
}

SurfaceImmersion torus_surface(const Vector& base, double a, double b, std::array<int, 2> grid) {
  SurfaceJetFn jet = [base, a, b](const Vector& u) {
    const double su = std::sin(u(0)), cu = std::cos(u(0));
    const double sv = std::sin(u(1)), cv = std::cos(u(1));
    SurfaceJet j = zero_jet(4);
    j.value = base + Eigen::Vector4d(a * cu, a * su, b * cv, b * sv);
    j.d[0] << -a * su, a * cu, 0.0, 0.0;
    j.d[1] << 0.0, 0.0, -b * sv, b * cv;
    j.dd[0][0] << -a * cu, -a * su, 0.0, 0.0;
    j.dd[1][1] << 0.0, 0.0, -b * cv, -b * sv;
    return j;
  };
  return make_surface("torus", square(3.3), square(3.0), grid, jet);
}

FixtureSpec family_spec(const std::string& family) {
  FixtureSpec spec;
  spec.name = family;
  return spec;
}

}  // namespace

const std::vector<std::string>& fixture_names() {
  static const std::vector<std::string> names{"euclidean3-trivial", "euclidean4-trivial",
                                              "h3-hessian", "h4-hessian-analogue",
                                              "hessian-potential-r4"};
  return names;
}

const std::vector<std::string>& surface_kinds() {
  static const std::vector<std::string> kinds{"plane", "graph", "sphere", "torus", "horosphere"};
  return kinds;
}

StatisticalManifold catalogue_manifold(const std::string& name, double epsilon) {
  if (name == "euclidean3-trivial") return flat_trivial(name, 3);
  if (name == "euclidean4-trivial") return flat_trivial(name, 4);
  if (name == "h3-hessian") return upper_half_space(name, 3);
  if (name == "h4-hessian-analogue") return upper_half_space(name, 4);
  if (name == "hessian-potential-r4") return hessian_potential(epsilon);
  throw UnknownFixture("unknown fixture '" + name + "'");
}

std::vector<Vector> validation_points(const std::string& name, int per_axis, int random_count,
                                      std::uint64_t seed) {
  const CatalogueEntry entry = entry_for(name);
  const int n = entry.dim;
  std::vector<Vector> pts;
  int total = 1;
  for (int i = 0; i < n; ++i) total *= per_axis;
  for (int idx = 0; idx < total; ++idx) {
    Vector p(n);
    int rest = idx;
    for (int axis = 0; axis < n; ++axis) {
      const int k = rest % per_axis;
      rest /= per_axis;
      const double t = per_axis == 1 ? 0.5 : static_cast<double>(k) / (per_axis - 1);
      p(axis) = entry.box_lower(axis) + t * (entry.box_upper(axis) - entry.box_lower(axis));
    }
    pts.push_back(p);
  }
  std::mt19937_64 rng = seeded(seed, 0x76616c6964ULL);
  for (int r = 0; r < random_count; ++r) {
    Vector p(n);
    for (int axis = 0; axis < n; ++axis) {
      p(axis) = entry.box_lower(axis) +
                unit_uniform(rng) * (entry.box_upper(axis) - entry.box_lower(axis));
    }
    pts.push_back(p);
  }
  return pts;
}

ValidationReport validate_fixture(const StatisticalManifold& m, double claimed_c,
                                  std::span<const Vector> points, const FdScheme& scheme,
                                  double tolerance) {
  ValidationReport rep;
  rep.fixture = m.name();
  rep.claimed_c = claimed_c;
  rep.tolerance = tolerance;
  rep.points = points.size();
  const ConnectionField dual = connection_field(m, Connection::dual, scheme);
  for (const Vector& p : points) {
    rep.metric_spd = rep.metric_spd && is_spd(m.metric(p));
    rep.duality = std::max(rep.duality, duality_residual(m, dual, p, scheme));
    rep.curvature_duality = std::max(rep.curvature_duality, curvature_duality_residual(m, p, scheme));
  }
  rep.constant_curvature =
      constant_curvature_residual(m, claimed_c, points, scheme, Connection::primal);
  rep.constant_curvature_dual =
      constant_curvature_residual(m, claimed_c, points, scheme, Connection::dual);
  rep.pass = rep.metric_spd && rep.duality <= tolerance && rep.curvature_duality <= tolerance &&
             rep.constant_curvature <= tolerance && rep.constant_curvature_dual <= tolerance;
  return rep;
}

SurfaceImmersion graph_surface(const StatisticalManifold& m, std::span<const double> coeffs,
                               double half_width, std::array<int, 2> grid) {
  const int n = m.dim();
  const CatalogueEntry entry = entry_for(m.name());
  Vector base = Vector::Zero(n);
  if (entry.height_axis >= 0) base(entry.height_axis) = entry.base_height;
  return graph_surface_at(base, coeffs, half_width, grid);
}

SurfaceImmersion graph_surface_at(const Vector& base, std::span<const double> coeffs,
                                  double half_width, std::array<int, 2> grid) {
  const int n = static_cast<int>(base.size());
  std::vector<Poly> psi(n - 2);
  for (int k = 0; k < n - 2; ++k) {
    for (int i = 0; i < 10; ++i) {
      const std::size_t idx = static_cast<std::size_t>(10 * k + i);
      psi[k].c[i] = idx < coeffs.size() ? coeffs[idx] : 0.0;
    }
  }
  SurfaceJetFn jet = [base, psi, n](const Vector& u) {
    const double x = u(0), y = u(1);
    SurfaceJet j = zero_jet(n);
    j.value = base;
    j.value(0) += x;
    j.value(1) += y;
    j.d[0](0) = 1.0;
    j.d[1](1) = 1.0;
    for (int k = 0; k < n - 2; ++k) {
      const Poly& p = psi[k];
      j.value(2 + k) += p.value(x, y);
      j.d[0](2 + k) = p.du(x, y);
      j.d[1](2 + k) = p.dv(x, y);
      j.dd[0][0](2 + k) = p.duu(x, y);
      j.dd[0][1](2 + k) = p.duv(x, y);
      j.dd[1][0](2 + k) = p.duv(x, y);
      j.dd[1][1](2 + k) = p.dvv(x, y);
    }
    return j;
  };
  return make_surface("graph", square(1.25 * half_width), square(half_width), grid, jet);
}

SurfaceImmersion build_surface(const FixtureSpec& spec, const StatisticalManifold& m) {
  const CatalogueEntry entry = entry_for(spec.name);
  const std::string kind = spec.surface.value_or("plane");
  const Vector base = base_point(entry, spec.height);
  if (kind == "plane" || kind == "horosphere") {
    return plane_surface(kind, base, entry.surface_extent, spec.grid);
  }
  if (kind == "graph") {
    return graph_surface_at(base, spec.graph_coeffs, entry.surface_extent, spec.grid);
  }
  if (kind == "sphere") {
    if (!(spec.radius > 0.0)) throw ConfigError("sphere radius must be positive");
    Vector center = base;
    // Sit the sphere on the height level when it spans the half-space axis.
    if (entry.height_axis >= 0 && entry.height_axis < 3) center(entry.height_axis) += spec.radius;
    return sphere_surface(center, spec.radius, spec.grid);
  }
  if (kind == "torus") {
    if (m.dim() != 4) throw ConfigError("torus surfaces need a 4-dimensional fixture");
    if (!(spec.radius > 0.0) || !(spec.radius2 > 0.0)) throw ConfigError("torus radii must be positive");
    return torus_surface(base, spec.radius, spec.radius2, spec.grid);
  }
  throw ConfigError("unknown surface kind '" + kind + "'");
}

Fixture build_fixture(const FixtureSpec& spec, const FdScheme& scheme, double tolerance) {
  StatisticalManifold m = catalogue_manifold(spec.name, spec.epsilon);
  std::vector<Vector> pts = validation_points(spec.name, 3, 16, spec.seed);
  ValidationReport rep = validate_fixture(m, spec.claimed_c, pts, scheme, tolerance);
  if (!rep.pass) {
    std::ostringstream os;
    os << "fixture " << spec.name << " failed validation: duality=" << rep.duality
       << " curvature_duality=" << rep.curvature_duality
       << " constant_curvature=" << rep.constant_curvature
       << " constant_curvature_dual=" << rep.constant_curvature_dual
       << " metric_spd=" << (rep.metric_spd ? "yes" : "no");
    throw ValidationFailed(os.str());
  }
  std::optional<SurfaceImmersion> surface;
  if (spec.surface) {
    surface = build_surface(spec, m);
    const double margin = 10.0 * scheme.step;
    for (const Vector& u : surface->grid_points()) {
      const Vector p = (*surface)(u);
      for (int i = 0; i < m.dim(); ++i) {
        if (!(p(i) - margin > m.chart().lower(i) && p(i) + margin < m.chart().upper(i))) {
          throw ConfigError("surface '" + *spec.surface + "' leaves the chart of " + spec.name);
        }
      }
    }
  }
  return Fixture{std::move(m), std::move(surface), spec.claimed_c, std::move(pts), rep};
}

RandomScan::RandomScan(const std::string& family, std::uint64_t seed, const FdScheme& scheme,
                       double tolerance)
    : fixture_(build_fixture(family_spec(family), scheme, tolerance)), seed_(seed) {}

ScanSample RandomScan::sample(std::size_t index) const {
  const StatisticalManifold& m = fixture_.manifold;
  const CatalogueEntry entry = entry_for(m.name());
  std::mt19937_64 rng = seeded(seed_, index);
  ScanSample out{index, {}, plane_surface("plane", Vector::Zero(m.dim()), 1.0, {1, 1}), Vector(2)};
  out.coeffs.resize(static_cast<std::size_t>(10 * (m.dim() - 2)));
  for (double& c : out.coeffs) c = -0.3 + 0.6 * unit_uniform(rng);
  constexpr double kSampleHalfWidth = 0.4;
  out.u << -kSampleHalfWidth + 2 * kSampleHalfWidth * unit_uniform(rng),
      -kSampleHalfWidth + 2 * kSampleHalfWidth * unit_uniform(rng);
  // Half-space families sit at height 2 so |psi| <= 0.76 keeps well clear of y = 0.
  Vector base = Vector::Zero(m.dim());
  if (entry.height_axis >= 0) base(entry.height_axis) = 2.0;
  out.surface = graph_surface_at(base, out.coeffs, kSampleHalfWidth, {1, 1});
  return out;
}

std::vector<ScanSample> random_scan(std::uint64_t seed, std::size_t count, const std::string& family,
                                    const FdScheme& scheme, double tolerance) {
  const RandomScan scan(family, seed, scheme, tolerance);
  std::vector<ScanSample> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) out.push_back(scan.sample(i));
  return out;
}

}  // namespace statkit
