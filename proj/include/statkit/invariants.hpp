#pragma once

#include <functional>
#include <map>
#include <optional>
#include <string>

#include "statkit/immersion.hpp"

namespace statkit {

// Sign conventions.
//
// Curvature follows R(X,Y)Z = nabla_X nabla_Y Z - nabla_Y nabla_X Z - nabla_[X,Y] Z.
// The statistical Gauss curvature G = T(e1,e2,e1,e2) with
// T = 1/2 [g(R(.,.).,.) + g(R*(.,.).,.)] therefore equals -K for a round sphere
// in flat space with the trivial structure. The classical quantities G0 and
// K0_ambient keep the usual sign (sphere positive, hyperbolic space -1).

/// Per-point invariants and diagnostics. Quantities that do not apply to the
/// ambient dimension are left empty.
struct InvariantReport {
  Vector u;
  double G = 0.0;
  std::optional<double> G_perp;
  double G0 = 0.0;
  double K0_ambient = 0.0;
  double H_norm = 0.0;
  double H_star_norm = 0.0;
  std::optional<double> euler_slack;
  std::optional<double> wintgen_slack;
  /// Slack of the AM-GM step bounding 2|G_perp| (dim 4 only).
  std::optional<double> proof_step_slack;
  std::map<std::string, double> residuals;

  double max_residual() const;
  /// euler_slack in dimension 3, wintgen_slack in dimension 4.
  std::optional<double> slack() const;
};

using FourTensor =
    std::function<double(const Vector&, const Vector&, const Vector&, const Vector&)>;

/// T(X,Y,Z,W) = 1/2 [g(R(X,Y)Z,W) + g(R*(X,Y)Z,W)].
double t_tensor(const CurvatureTensor& r, const CurvatureTensor& r_star, const Matrix& metric,
                const Vector& x, const Vector& y, const Vector& z, const Vector& w);

/// K(X ^ Y) = T(X,Y,X,Y) / (g(X,X) g(Y,Y) - g(X,Y)^2).
/// Throws DegenerateInput when the denominator is below 1e-12.
double sectional_curvature(const FourTensor& t, const Matrix& metric, const Vector& x,
                           const Vector& y);

/// G from the Gauss equations of both connections.
double gauss_curvature(const SurfacePoint& pt);
double gauss_curvature(const StatisticalManifold& m, const SurfaceImmersion& s, const Vector& u,
                       const FdScheme& scheme);

/// G as the sectional curvature of T built from finite-difference curvature
/// of the induced connections.
double gauss_curvature_fd(const SurfacePoint& pt, const CurvatureTensor& induced,
                          const CurvatureTensor& induced_star);
double gauss_curvature_fd(const StatisticalManifold& m, const SurfaceImmersion& s,
                          const Vector& u, const FdScheme& scheme);

/// Signed G_perp = 1/2 [g(R^perp(e1,e2)e3,e4) + g(R*^perp(e1,e2)e3,e4)].
/// Throws WrongCodimension unless dim = 4.
double normal_curvature(const SurfacePoint& pt);
double normal_curvature(const StatisticalManifold& m, const SurfaceImmersion& s, const Vector& u,
                        const FdScheme& scheme);

struct ClassicalInvariants {
  double G0 = 0.0;
  double K0_ambient = 0.0;
};

/// Levi-Civita Gauss curvature of the surface and sectional curvature of its
/// tangent plane in the ambient Levi-Civita geometry, classical signs.
ClassicalInvariants classical_invariants(const SurfacePoint& pt);
ClassicalInvariants classical_invariants(const StatisticalManifold& m, const SurfaceImmersion& s,
                                         const Vector& u, const FdScheme& scheme);

struct SlackInputs {
  int dim = 0;
  double G = 0.0;
  double G_perp = 0.0;
  double G0 = 0.0;
  double K0_ambient = 0.0;
  double H_norm = 0.0;
  double H_star_norm = 0.0;
};

/// 2 |H| |H*| - c - G. Throws WrongCodimension unless dim = 3.
double euler_slack(const SlackInputs& in, double c);

/// 1/2 (|H|^2 + |H*|^2) - c + 2 K0 - G - |G_perp| - 2 G0.
/// Throws WrongCodimension unless dim = 4.
double wintgen_slack(const SlackInputs& in, double c);

/// 1/4 [|h11 - h22|^2 + |h*11 - h*22|^2] + |h12|^2 + |h*12|^2 - 2 |G_perp|.
double proof_step_slack(const FundamentalForms& forms, double G_perp);

struct ReportOptions {
  /// Compute the finite-difference cross-checks (Gauss, Codazzi, Ricci).
  bool diagnostics = true;
};

/// Full report at one parameter point of a surface in a manifold of
/// constant curvature c.
InvariantReport compute_report(const StatisticalManifold& m, const SurfaceImmersion& s,
                               const Vector& u, const FdScheme& scheme, double c,
                               const ReportOptions& options = {});

}  // namespace statkit
