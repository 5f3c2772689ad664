#include "statkit/invariants.hpp"

#include <algorithm>
#include <cmath>

namespace statkit {

double InvariantReport::max_residual() const {
  double worst = 0.0;
  for (const auto& [name, value] : residuals) worst = std::max(worst, value);
  return worst;
}

std::optional<double> InvariantReport::slack() const {
  return euler_slack ? euler_slack : wintgen_slack;
}

double t_tensor(const CurvatureTensor& r, const CurvatureTensor& r_star, const Matrix& metric,
                const Vector& x, const Vector& y, const Vector& z, const Vector& w) {
  return 0.5 * (r.lowered(metric, x, y, z, w) + r_star.lowered(metric, x, y, z, w));
}

double sectional_curvature(const FourTensor& t, const Matrix& metric, const Vector& x,
                           const Vector& y) {
  const double gxy = inner(metric, x, y);
  const double denom = inner(metric, x, x) * inner(metric, y, y) - gxy * gxy;
  if (denom < 1e-12) throw DegenerateInput("sectional_curvature: vectors are dependent");
  return t(x, y, x, y) / denom;
}

namespace {

double normal_sum(const std::vector<Matrix2>& a, int i, int j, const std::vector<Matrix2>& b, int k,
                  int l) {
  double acc = 0.0;
  for (std::size_t alpha = 0; alpha < a.size(); ++alpha) acc += a[alpha](i, j) * b[alpha](k, l);
  return acc;
}

}  // namespace

double gauss_curvature(const SurfacePoint& pt) {
  const auto& e = pt.frame.e;
  const auto& h = pt.forms.h;
  const auto& hs = pt.forms.h_star;
  // g(R(e1,e2)e1,e2) = g~(R~(e1,e2)e1,e2) - g~(h(e1,e1), h*(e2,e2)) + g~(h*(e1,e2), h(e1,e2))
  const double primal = pt.R.lowered(pt.g_ambient, e[0], e[1], e[0], e[1]) -
                        normal_sum(h, 0, 0, hs, 1, 1) + normal_sum(hs, 0, 1, h, 0, 1);
  const double dual = pt.R_star.lowered(pt.g_ambient, e[0], e[1], e[0], e[1]) -
                      normal_sum(hs, 0, 0, h, 1, 1) + normal_sum(h, 0, 1, hs, 0, 1);
  return 0.5 * (primal + dual);
}

double gauss_curvature(const StatisticalManifold& m, const SurfaceImmersion& s, const Vector& u,
                       const FdScheme& scheme) {
  return gauss_curvature(evaluate_point(m, s, u, scheme));
}

double gauss_curvature_fd(const SurfacePoint& pt, const CurvatureTensor& induced,
                          const CurvatureTensor& induced_star) {
  const Matrix g = pt.g_induced;
  const FourTensor t = [&](const Vector& x, const Vector& y, const Vector& z, const Vector& w) {
    return t_tensor(induced, induced_star, g, x, y, z, w);
  };
  return sectional_curvature(t, g, pt.frame.tangent_coeffs.col(0), pt.frame.tangent_coeffs.col(1));
}

double gauss_curvature_fd(const StatisticalManifold& m, const SurfaceImmersion& s,
                          const Vector& u, const FdScheme& scheme) {
  return gauss_curvature_fd(evaluate_point(m, s, u, scheme),
                            induced_curvature(m, s, Connection::primal, u, scheme),
                            induced_curvature(m, s, Connection::dual, u, scheme));
}

double normal_curvature(const SurfacePoint& pt) {
  const NormalCurvaturePair pair = normal_curvature_tensor(pt);
  return 0.5 * (pair.primal + pair.dual);
}

double normal_curvature(const StatisticalManifold& m, const SurfaceImmersion& s, const Vector& u,
                        const FdScheme& scheme) {
  if (m.dim() != 4) throw WrongCodimension("normal curvature needs dimension 4");
  return normal_curvature(evaluate_point(m, s, u, scheme));
}

ClassicalInvariants classical_invariants(const SurfacePoint& pt) {
  const auto& e = pt.frame.e;
  const auto& h0 = pt.forms.h0;
  const double gxy = inner(pt.g_ambient, e[0], e[1]);
  const double denom =
      inner(pt.g_ambient, e[0], e[0]) * inner(pt.g_ambient, e[1], e[1]) - gxy * gxy;
  ClassicalInvariants out;
  out.K0_ambient = pt.R0.lowered(pt.g_ambient, e[0], e[1], e[1], e[0]) / denom;
  out.G0 = out.K0_ambient + normal_sum(h0, 0, 0, h0, 1, 1) - normal_sum(h0, 0, 1, h0, 0, 1);
  return out;
}

ClassicalInvariants classical_invariants(const StatisticalManifold& m, const SurfaceImmersion& s,
                                         const Vector& u, const FdScheme& scheme) {
  return classical_invariants(evaluate_point(m, s, u, scheme));
}

double euler_slack(const SlackInputs& in, double c) {
  if (in.dim != 3) throw WrongCodimension("euler slack is defined for dimension 3");
  return 2.0 * in.H_norm * in.H_star_norm - c - in.G;
}

double wintgen_slack(const SlackInputs& in, double c) {
  if (in.dim != 4) throw WrongCodimension("wintgen slack is defined for dimension 4");
  return 0.5 * (in.H_norm * in.H_norm + in.H_star_norm * in.H_star_norm) - c +
         2.0 * in.K0_ambient - in.G - std::abs(in.G_perp) - 2.0 * in.G0;
}

double proof_step_slack(const FundamentalForms& forms, double G_perp) {
  double bound = 0.0;
  for (int alpha = 0; alpha < forms.codim(); ++alpha) {
    const Matrix2& h = forms.h[alpha];
    const Matrix2& hs = forms.h_star[alpha];
    const double d = h(0, 0) - h(1, 1);
    const double ds = hs(0, 0) - hs(1, 1);
    bound += 0.25 * (d * d + ds * ds) + h(0, 1) * h(0, 1) + hs(0, 1) * hs(0, 1);
  }
  return bound - 2.0 * std::abs(G_perp);
}

InvariantReport compute_report(const StatisticalManifold& m, const SurfaceImmersion& s,
                               const Vector& u, const FdScheme& scheme, double c,
                               const ReportOptions& options) {
  const SurfacePoint pt = evaluate_point(m, s, u, scheme);
  InvariantReport rep;
  rep.u = u;
  rep.G = gauss_curvature(pt);
  const ClassicalInvariants cl = classical_invariants(pt);
  rep.G0 = cl.G0;
  rep.K0_ambient = cl.K0_ambient;
  rep.H_norm = pt.forms.H_norm;
  rep.H_star_norm = pt.forms.H_star_norm;

  SlackInputs in{m.dim(), rep.G, 0.0, rep.G0, rep.K0_ambient, rep.H_norm, rep.H_star_norm};
  if (m.dim() == 4) {
    const NormalCurvaturePair pair = normal_curvature_tensor(pt);
    rep.G_perp = 0.5 * (pair.primal + pair.dual);
    in.G_perp = *rep.G_perp;
    rep.wintgen_slack = wintgen_slack(in, c);
    rep.proof_step_slack = proof_step_slack(pt.forms, *rep.G_perp);
    if (options.diagnostics) {
      const NormalCurvaturePair fd = normal_curvature_tensor_fd(m, s, u, scheme);
      rep.residuals["ricci_oracle"] = std::abs(pair.primal - fd.primal);
      rep.residuals["ricci_oracle_dual"] = std::abs(pair.dual - fd.dual);
    }
  } else if (m.dim() == 3) {
    rep.euler_slack = euler_slack(in, c);
  }

  double h0_defect = 0.0;
  for (int alpha = 0; alpha < pt.forms.codim(); ++alpha) {
    const Matrix2 diff = 2.0 * pt.forms.h0[alpha] - pt.forms.h[alpha] - pt.forms.h_star[alpha];
    h0_defect = std::max(h0_defect, diff.cwiseAbs().maxCoeff());
  }
  rep.residuals["h0_identity"] = h0_defect;

  if (options.diagnostics) {
    const CurvatureTensor r_ind = induced_curvature(m, s, Connection::primal, u, scheme);
    const CurvatureTensor rs_ind = induced_curvature(m, s, Connection::dual, u, scheme);
    const auto [gauss, gauss_dual] = gauss_equation_residual(pt, r_ind, rs_ind);
    rep.residuals["gauss"] = gauss;
    rep.residuals["gauss_dual"] = gauss_dual;
    rep.residuals["gauss_oracle"] = std::abs(rep.G - gauss_curvature_fd(pt, r_ind, rs_ind));
    const auto [codazzi, codazzi_dual] = codazzi_residual(m, s, u, scheme);
    rep.residuals["codazzi"] = codazzi;
    rep.residuals["codazzi_dual"] = codazzi_dual;
  }
  return rep;
}

}  // namespace statkit
