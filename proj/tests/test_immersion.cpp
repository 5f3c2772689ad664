#include <doctest.h>

#include <cmath>
#include <string>
#include <vector>

#include "statkit/fixtures.hpp"
#include "statkit/immersion.hpp"
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

Fixture make(const std::string& name, const std::string& surface, double radius = 1.0) {
  FixtureSpec spec;
  spec.name = name;
  spec.surface = surface;
  spec.radius = radius;
  spec.radius2 = radius;
  spec.grid = {5, 5};
  return build_fixture(spec, kScheme);
}

double max_abs(const std::vector<Matrix2>& form) {
  double worst = 0.0;
  for (const Matrix2& m : form) worst = std::max(worst, m.cwiseAbs().maxCoeff());
  return worst;
}

}  // namespace

TEST_CASE("frames of a plane and a horosphere are the coordinate axes") {
  for (const auto& [name, surface] : {std::pair{"euclidean3-trivial", "plane"},
                                      std::pair{"h3-hessian", "horosphere"}}) {
    const Fixture fx = make(name, surface);
    for (const Vector& u : fx.surface->grid_points()) {
      const AdaptedFrame f = frames(fx.manifold, *fx.surface, u, kScheme);
      CHECK((f.e[0] - vec({1, 0, 0})).norm() < 1e-14);
      CHECK((f.e[1] - vec({0, 1, 0})).norm() < 1e-14);
      CHECK((f.e[2] - vec({0, 0, 1})).norm() < 1e-14);
    }
  }
}

TEST_CASE("frame of a tilted graph") {
  const StatisticalManifold m = catalogue_manifold("euclidean3-trivial");
  const std::vector<double> coeffs{0, 1, 0, 0, 0, 0, 0, 0, 0, 0};
  const SurfaceImmersion s = graph_surface(m, coeffs, 0.5, {3, 3});
  const AdaptedFrame f = frames(m, s, vec({0.1, -0.2}), kScheme);
  const double r = 1.0 / std::sqrt(2.0);
  CHECK((f.e[0] - vec({r, 0, r})).norm() < 1e-14);
  CHECK((f.e[1] - vec({0, 1, 0})).norm() < 1e-14);
  CHECK((f.e[2] - vec({-r, 0, r})).norm() < 1e-14);
}

TEST_CASE("frame property: orthonormal, adapted and positively oriented") {
  for (const std::string family : {"euclidean3-trivial", "h3-hessian", "hessian-potential-r4",
                                   "h4-hessian-analogue"}) {
    const RandomScan scan(family, 11, kScheme);
    for (std::size_t i = 0; i < 20; ++i) {
      const ScanSample s = scan.sample(i);
      const StatisticalManifold& m = scan.manifold();
      const AdaptedFrame f = frames(m, s.surface, s.u, kScheme);
      const Matrix g = m.metric(s.surface(s.u));
      const SurfaceJet jet = s.surface.jet(s.u, kScheme);
      Matrix basis(m.dim(), m.dim());
      for (int a = 0; a < m.dim(); ++a) {
        basis.col(a) = f.e[a];
        for (int b = 0; b < m.dim(); ++b) {
          INFO(family << " sample " << i);
          CHECK(std::abs(inner(g, f.e[a], f.e[b]) - (a == b ? 1.0 : 0.0)) < 1e-12);
        }
      }
      CHECK(basis.determinant() > 0.0);
      for (int alpha = 0; alpha < f.codim(); ++alpha) {
        CHECK(std::abs(inner(g, f.normal(alpha), jet.d[0])) < 1e-12);
        CHECK(std::abs(inner(g, f.normal(alpha), jet.d[1])) < 1e-12);
      }
      for (int i2 = 0; i2 < 2; ++i2) {
        const Vector ei = jet.d[0] * f.tangent_coeffs(0, i2) + jet.d[1] * f.tangent_coeffs(1, i2);
        CHECK((ei - f.e[i2]).norm() < 1e-12);
      }
    }
  }
}

TEST_CASE("fundamental forms of a plane vanish") {
  const Fixture fx = make("euclidean3-trivial", "plane");
  const FundamentalForms ff = fundamental_forms(fx.manifold, *fx.surface, vec({0.3, 0.4}), kScheme);
  CHECK(max_abs(ff.h) == 0.0);
  CHECK(max_abs(ff.h_star) == 0.0);
  CHECK(ff.H_norm == 0.0);
  CHECK(ff.H_star_norm == 0.0);
}

TEST_CASE("fundamental forms of the horosphere") {
  const Fixture fx = make("h3-hessian", "horosphere");
  for (const Vector& u : fx.surface->grid_points()) {
    const FundamentalForms ff = fundamental_forms(fx.manifold, *fx.surface, u, kScheme);
    CHECK(ff.h[0](0, 0) == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(ff.h[0](1, 1) == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(std::abs(ff.h[0](0, 1)) < 1e-12);
    CHECK(max_abs(ff.h_star) <= 1e-8);
    CHECK(ff.H_star_norm <= 1e-8);
    CHECK(ff.H_norm == doctest::Approx(2.0).epsilon(1e-12));
  }
}

TEST_CASE("fundamental forms of a round sphere") {
  const double r = 2.0;
  const Fixture fx = make("euclidean3-trivial", "sphere", r);
  for (const Vector& u : fx.surface->grid_points()) {
    const FundamentalForms ff = fundamental_forms(fx.manifold, *fx.surface, u, kScheme);
    const double sign = ff.h[0](0, 0) > 0 ? 1.0 : -1.0;
    for (const auto* form : {&ff.h, &ff.h_star, &ff.h0}) {
      const Matrix2 expected = sign * Matrix2::Identity() / r;
      CHECK(((*form)[0] - expected).cwiseAbs().maxCoeff() < 1e-12);
    }
    CHECK(ff.H_norm == doctest::Approx(1.0 / r).epsilon(1e-12));
    CHECK(ff.H_star_norm == doctest::Approx(1.0 / r).epsilon(1e-12));
  }
}

TEST_CASE("closed-form jets agree with nested finite differences") {
  const RandomScan scan("hessian-potential-r4", 3, kScheme);
  for (std::size_t i = 0; i < 10; ++i) {
    const ScanSample s = scan.sample(i);
    const SurfaceJet a = s.surface.jet(s.u, kScheme);
    const SurfaceJet b = s.surface.fd_jet(s.u, FdScheme{1e-3, 2});
    CHECK((a.value - b.value).norm() == 0.0);
    for (int p = 0; p < 2; ++p) {
      CHECK((a.d[p] - b.d[p]).norm() < 1e-5);
      for (int q = 0; q < 2; ++q) CHECK((a.dd[p][q] - b.dd[p][q]).norm() < 1e-4);
    }
  }
}

TEST_CASE("surface evaluation outside its domain") {
  const Fixture fx = make("euclidean3-trivial", "plane");
  CHECK_THROWS_AS((*fx.surface)(vec({5.0, 0.0})), ChartBoundary);
}

TEST_CASE("Gauss equation residuals") {
  const Fixture plane = make("euclidean3-trivial", "plane");
  const auto [p, ps] = gauss_equation_residual(plane.manifold, *plane.surface, vec({0, 0}), kScheme);
  CHECK(p == 0.0);
  CHECK(ps == 0.0);
  for (const auto& [name, surface] : {std::pair{"h3-hessian", "horosphere"},
                                      std::pair{"euclidean3-trivial", "sphere"}}) {
    const Fixture fx = make(name, surface);
    for (const Vector& u : fx.surface->grid_points()) {
      const auto [g, gs] = gauss_equation_residual(fx.manifold, *fx.surface, u, kScheme);
      CHECK(g <= 1e-5);
      CHECK(gs <= 1e-5);
    }
  }
}

TEST_CASE("Codazzi residuals") {
  const Fixture plane = make("euclidean3-trivial", "plane");
  const auto [p, ps] = codazzi_residual(plane.manifold, *plane.surface, vec({0, 0}), kScheme);
  CHECK(p == 0.0);
  CHECK(ps == 0.0);
  for (const auto& [name, surface] : {std::pair{"h3-hessian", "horosphere"},
                                      std::pair{"euclidean3-trivial", "sphere"},
                                      std::pair{"hessian-potential-r4", "torus"}}) {
    const Fixture fx = make(name, surface, 0.3);
    for (const Vector& u : fx.surface->grid_points()) {
      const auto [c, cs] = codazzi_residual(fx.manifold, *fx.surface, u, kScheme);
      INFO(name << " " << surface);
      CHECK(c <= 1e-4);
      CHECK(cs <= 1e-4);
    }
  }
}

TEST_CASE("normal curvature of umbilical and product surfaces vanishes") {
  for (const std::string surface : {"sphere", "torus"}) {
    const Fixture fx = make("euclidean4-trivial", surface);
    for (const Vector& u : fx.surface->grid_points()) {
      const NormalCurvaturePair algebraic = normal_curvature_tensor(fx.manifold, *fx.surface, u, kScheme);
      const NormalCurvaturePair fd = normal_curvature_tensor_fd(fx.manifold, *fx.surface, u, kScheme);
      CHECK(std::abs(algebraic.primal) < 1e-12);
      CHECK(std::abs(algebraic.dual) < 1e-12);
      CHECK(std::abs(fd.primal) < 1e-6);
      CHECK(std::abs(fd.dual) < 1e-6);
    }
  }
}

TEST_CASE("normal curvature property: Ricci equation matches the normal-connection oracle") {
  for (const std::string family : {"euclidean4-trivial", "hessian-potential-r4", "h4-hessian-analogue"}) {
    const RandomScan scan(family, 5, kScheme);
    for (std::size_t i = 0; i < 25; ++i) {
      const ScanSample s = scan.sample(i);
      const NormalCurvaturePair a = normal_curvature_tensor(scan.manifold(), s.surface, s.u, kScheme);
      const NormalCurvaturePair b = normal_curvature_tensor_fd(scan.manifold(), s.surface, s.u, kScheme);
      INFO(family << " sample " << i);
      CHECK(std::abs(a.primal - b.primal) <= 1e-4);
      CHECK(std::abs(a.dual - b.dual) <= 1e-4);
    }
  }
}

TEST_CASE("normal curvature needs a four-dimensional ambient") {
  const Fixture fx = make("euclidean3-trivial", "sphere");
  CHECK_THROWS_AS(normal_curvature_tensor(fx.manifold, *fx.surface, vec({1.0, 0.0}), kScheme),
                  WrongCodimension);
}

TEST_CASE("forms property: h0 is the mean of h and h*, and tensorial") {
  for (const std::string family : {"h3-hessian", "hessian-potential-r4", "h4-hessian-analogue"}) {
    const RandomScan scan(family, 17, kScheme);
    for (std::size_t i = 0; i < 20; ++i) {
      const ScanSample s = scan.sample(i);
      const StatisticalManifold& m = scan.manifold();
      const FundamentalForms ff = fundamental_forms(m, s.surface, s.u, kScheme);
      const std::vector<Matrix2> ext = form_by_frame_extension(m, s.surface, Connection::primal, s.u, kScheme);
      const std::vector<Matrix2> ext_star =
          form_by_frame_extension(m, s.surface, Connection::dual, s.u, kScheme);
      for (int alpha = 0; alpha < ff.codim(); ++alpha) {
        INFO(family << " sample " << i);
        CHECK((2.0 * ff.h0[alpha] - ff.h[alpha] - ff.h_star[alpha]).cwiseAbs().maxCoeff() <= 1e-8);
        CHECK((ext[alpha] - ff.h[alpha]).cwiseAbs().maxCoeff() <= 1e-6);
        CHECK((ext_star[alpha] - ff.h_star[alpha]).cwiseAbs().maxCoeff() <= 1e-6);
        CHECK((ff.h[alpha] - ff.h[alpha].transpose()).cwiseAbs().maxCoeff() == 0.0);
      }
    }
  }
}
