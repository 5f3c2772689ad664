#include <doctest.h>

#include <cmath>
#include <vector>

#include "statkit/fixtures.hpp"
#include "statkit/manifold.hpp"
#include "support.hpp"

using namespace statkit;

namespace {

const FdScheme kScheme{1e-4, 2};

Vector vec(std::initializer_list<double> xs) {
  Vector v(static_cast<int>(xs.size()));
  int i = 0;
  for (double x : xs) v(i++) = x;
  return v;
}

Vector origin_h3() { return vec({0, 0, 1}); }

/// g = Hess(1/2 |y|^2 + eps/6 y1^3), flat primal, FD metric derivatives only.
StatisticalManifold cubic_potential(double eps) {
  return StatisticalManifold(
      "cubic", 3, ChartDomain::unbounded(3),
      [eps](const Vector& y) {
        Matrix g = Matrix::Identity(3, 3);
        g(0, 0) += eps * y(0);
        return g;
      },
      [](const Vector&) { return Array3(3); });
}

/// A generic metric field with nonzero derivatives in every direction.
MetricField wavy_metric(const Matrix& base, const Vector& k) {
  return [base, k](const Vector& y) {
    const int n = static_cast<int>(y.size());
    Matrix g = base;
    for (int i = 0; i < n; ++i) g(i, i) += 0.3 * std::sin(k.dot(y) + i);
    return g;
  };
}

}  // namespace

TEST_CASE("levi_civita vanishes for the Euclidean metric") {
  const StatisticalManifold m = catalogue_manifold("euclidean3-trivial");
  CHECK(levi_civita(m, vec({0.3, -0.2, 0.7}), kScheme).max_abs() == 0.0);
  CHECK(levi_civita_fd(m.metric_field(), vec({0.3, -0.2, 0.7}), kScheme).max_abs() == 0.0);
}

TEST_CASE("levi_civita of the conformal half-space metric") {
  const StatisticalManifold m = catalogue_manifold("h3-hessian");
  for (const Array3& lc : {levi_civita(m, origin_h3(), kScheme),
                           levi_civita_fd(m.metric_field(), origin_h3(), kScheme)}) {
    CHECK(lc(2, 0, 0) == doctest::Approx(1.0).epsilon(1e-8));
    CHECK(lc(0, 0, 2) == doctest::Approx(-1.0).epsilon(1e-8));
    CHECK(lc(2, 2, 2) == doctest::Approx(-1.0).epsilon(1e-8));
    CHECK(lc.lower_asymmetry() < 1e-15);
  }
}

TEST_CASE("levi_civita of a cubic Hessian potential") {
  const double eps = 0.3;
  const Array3 lc = levi_civita(cubic_potential(eps), vec({0, 0, 0}), kScheme);
  CHECK(lc(0, 0, 0) == doctest::Approx(eps / 2).epsilon(1e-9));
  CHECK(std::abs(lc(1, 0, 0)) < 1e-12);
}

TEST_CASE("dual connection examples") {
  const StatisticalManifold m = catalogue_manifold("h3-hessian");
  const Array3 lc = levi_civita(m, origin_h3(), kScheme);
  CHECK((dual_connection(lc, lc) - lc).max_abs() == 0.0);
  const Array3 ds = dual_connection(m.primal(origin_h3()), lc);
  CHECK(std::abs(ds(2, 0, 0)) < 1e-12);
  CHECK(ds(0, 0, 2) == doctest::Approx(-2.0).epsilon(1e-12));
  CHECK(ds(2, 2, 2) == doctest::Approx(-3.0).epsilon(1e-12));
  const Array3 via = connection(m, Connection::dual, origin_h3(), kScheme);
  CHECK((via - ds).max_abs() == 0.0);
}

TEST_CASE("dual_connection property: involution") {
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    testgen::Gen gen(seed);
    const int n = gen.integer(2, 4);
    const Array3 p = gen.symmetric_array(n);
    const Array3 lc = gen.symmetric_array(n);
    INFO("seed " << seed);
    CHECK((dual_connection(dual_connection(p, lc), lc) - p).max_abs() < 1e-14);
  }
}

TEST_CASE("curvature of flat and half-space connections") {
  const ConnectionField zero = [](const Vector&) { return Array3(3); };
  CHECK(curvature(zero, vec({0.1, 0.2, 0.3}), kScheme).max_abs() == 0.0);

  const StatisticalManifold m = catalogue_manifold("h3-hessian");
  const ConnectionField primal = connection_field(m, Connection::primal, kScheme);
  CHECK(curvature(primal, origin_h3(), kScheme).max_abs() < 1e-6);

  const ConnectionField lc = connection_field(m, Connection::levi_civita, kScheme);
  for (const Vector& p : validation_points("h3-hessian", 3, 0)) {
    const CurvatureTensor r = curvature(lc, p, kScheme);
    const Matrix g = m.metric(p);
    for (int i = 0; i < 3; ++i) {
      for (int j = i + 1; j < 3; ++j) {
        CHECK(coordinate_sectional_curvature(r, g, i, j) == doctest::Approx(-1.0).epsilon(1e-5));
      }
    }
  }
}

TEST_CASE("curvature property: Levi-Civita curvature has pair symmetry") {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    testgen::Gen gen(seed);
    const int n = gen.integer(2, 4);
    const Matrix base = gen.spd(n);
    const MetricField g = wavy_metric(base, gen.vector(n));
    const Vector p = gen.vector(n);
    const ConnectionField lc = [g](const Vector& y) { return levi_civita_fd(g, y, FdScheme{1e-4, 2}); };
    const CurvatureTensor r = curvature(lc, p, FdScheme{1e-3, 2});
    INFO("seed " << seed);
    CHECK(pair_symmetry_defect(r, g(p)) < 1e-5);
  }
}

TEST_CASE("duality residual") {
  const StatisticalManifold e = catalogue_manifold("euclidean3-trivial");
  CHECK(duality_residual(e, connection_field(e, Connection::levi_civita, kScheme), vec({0, 0, 0}),
                         kScheme) == 0.0);

  const StatisticalManifold m = catalogue_manifold("h3-hessian");
  const ConnectionField dual = connection_field(m, Connection::dual, kScheme);
  CHECK(duality_residual(m, dual, origin_h3(), kScheme) <= 1e-6);

  const ConnectionField bumped = [dual](const Vector& y) {
    Array3 a = dual(y);
    a(2, 0, 0) += 0.1;
    return a;
  };
  CHECK(duality_residual(m, bumped, origin_h3(), kScheme) >= 0.09);
}

TEST_CASE("duality property: Levi-Civita plus a symmetric cubic form") {
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    testgen::Gen gen(seed);
    const int n = gen.integer(2, 4);
    const MetricField metric = wavy_metric(gen.spd(n), gen.vector(n));
    Array3 cubic(n);
    for (int a = 0; a < n; ++a) {
      for (int b = a; b < n; ++b) {
        for (int c = b; c < n; ++c) {
          const double v = gen.uniform(-0.5, 0.5);
          for (auto [i, j, k] : {std::array{a, b, c}, std::array{a, c, b}, std::array{b, a, c},
                                 std::array{b, c, a}, std::array{c, a, b}, std::array{c, b, a}}) {
            cubic(i, j, k) = v;
          }
        }
      }
    }
    const ConnectionField primal = [metric, cubic, n](const Vector& y) {
      Array3 gamma = levi_civita_fd(metric, y, FdScheme{1e-4, 2});
      const Matrix gi = invert_spd(metric(y));
      for (int k = 0; k < n; ++k) {
        for (int i = 0; i < n; ++i) {
          for (int j = 0; j < n; ++j) {
            for (int l = 0; l < n; ++l) gamma(k, i, j) += gi(k, l) * cubic(l, i, j);
          }
        }
      }
      return gamma;
    };
    const StatisticalManifold m("random", n, ChartDomain::unbounded(n), metric, primal);
    const Vector p = gen.vector(n);
    INFO("seed " << seed);
    CHECK(duality_residual(m, connection_field(m, Connection::dual, kScheme), p, kScheme) < 1e-7);
    CHECK(curvature_duality_residual(m, p, FdScheme{1e-3, 2}) < 1e-4);
  }
}

TEST_CASE("constant curvature residual") {
  const StatisticalManifold e = catalogue_manifold("euclidean3-trivial");
  const std::vector<Vector> pts{vec({0.1, 0.2, 0.3})};
  CHECK(constant_curvature_residual(e, 0.0, pts, kScheme) == 0.0);

  const StatisticalManifold m = catalogue_manifold("h3-hessian");
  const std::vector<Vector> at{origin_h3()};
  CHECK(constant_curvature_residual(m, 0.0, at, kScheme) <= 1e-6);
  CHECK(constant_curvature_residual(m, 0.0, at, kScheme, Connection::dual) <= 1e-6);
  CHECK(constant_curvature_residual(m, 1.0, at, kScheme) >= 0.5);
}

TEST_CASE("curvature duality residual") {
  const StatisticalManifold e = catalogue_manifold("euclidean3-trivial");
  CHECK(curvature_duality_residual(e, vec({0, 0, 0}), kScheme) == 0.0);
  const StatisticalManifold m = catalogue_manifold("h3-hessian");
  CHECK(curvature_duality_residual(m, origin_h3(), kScheme) <= 1e-6);
  const StatisticalManifold r4 = catalogue_manifold("hessian-potential-r4");
  testgen::Gen gen(7);
  for (int i = 0; i < 10; ++i) {
    CHECK(curvature_duality_residual(r4, gen.vector(4, -0.8, 0.8), kScheme) <= 1e-6);
  }
}

TEST_CASE("closed-form metric derivatives agree with finite differences") {
  for (const std::string& name : fixture_names()) {
    const StatisticalManifold m = catalogue_manifold(name);
    REQUIRE(m.has_closed_form_metric_derivative());
    for (const Vector& p : validation_points(name, 2, 4)) {
      const Array3 closed = m.metric_derivative(p, kScheme);
      Array3 fd(m.dim());
      for (int k = 0; k < m.dim(); ++k) {
        const Matrix dk = central_diff(m.metric_field(), p, k, kScheme);
        for (int i = 0; i < m.dim(); ++i) {
          for (int j = 0; j < m.dim(); ++j) fd(k, i, j) = dk(i, j);
        }
      }
      INFO(name);
      CHECK((closed - fd).max_abs() < 1e-6);
    }
  }
}

TEST_CASE("chart boundary") {
  const StatisticalManifold m = catalogue_manifold("h3-hessian");
  CHECK_THROWS_AS(m.metric(vec({0, 0, -1})), ChartBoundary);
  CHECK_THROWS_AS(m.primal(vec({0, 0, 0})), ChartBoundary);
  const StatisticalManifold r4 = catalogue_manifold("hessian-potential-r4");
  CHECK_THROWS_AS(r4.metric(vec({0, 0, 0, 1.0})), ChartBoundary);
}

TEST_CASE("dual structure swaps the connections") {
  const StatisticalManifold m = catalogue_manifold("h3-hessian");
  const StatisticalManifold d = m.dual_structure(kScheme);
  const Vector p = vec({0.2, -0.1, 1.1});
  CHECK((d.primal(p) - connection(m, Connection::dual, p, kScheme)).max_abs() < 1e-14);
  CHECK((connection(d, Connection::dual, p, kScheme) - m.primal(p)).max_abs() < 1e-12);
}
