#include "statkit/immersion.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace statkit {

namespace {

Vector axis(int n, int i) {
  Vector e = Vector::Zero(n);
  e(i) = 1.0;
  return e;
}

Matrix2 induced_metric(const Matrix& g, const SurfaceJet& jet) {
  Matrix2 out;
  for (int a = 0; a < 2; ++a) {
    for (int b = 0; b < 2; ++b) out(a, b) = inner(g, jet.d[a], jet.d[b]);
  }
  return out;
}

/// Tangent/normal splitting along the surface at one parameter point.
struct Splitter {
  const Matrix& g;
  const SurfaceJet& jet;
  Matrix2 ginv;

  Splitter(const Matrix& metric, const SurfaceJet& j) : g(metric), jet(j) {
    const Matrix2 gi = induced_metric(g, jet);
    if (gi.determinant() < 1e-8) {
      throw DegenerateInput("surface is not immersed at this point (det g < 1e-8)");
    }
    ginv = gi.inverse();
  }

  /// Coefficients c^a with tangential part of w = c^a d_a f.
  Eigen::Vector2d tangent_coeffs(const Vector& w) const {
    const Eigen::Vector2d rhs(inner(g, w, jet.d[0]), inner(g, w, jet.d[1]));
    return ginv * rhs;
  }

  Vector normal_part(const Vector& w) const {
    const Eigen::Vector2d c = tangent_coeffs(w);
    return w - c(0) * jet.d[0] - c(1) * jet.d[1];
  }
};

/// nabla~_{d_a f} d_b f for every (a, b).
std::array<std::array<Vector, 2>, 2> ambient_second(const SurfaceJet& jet, const Array3& gamma) {
  std::array<std::array<Vector, 2>, 2> v;
  for (int a = 0; a < 2; ++a) {
    for (int b = 0; b < 2; ++b) v[a][b] = jet.dd[a][b] + gamma.contract(jet.d[a], jet.d[b]);
  }
  return v;
}

AdaptedFrame frame_from(const Matrix& g, const SurfaceJet& jet, std::span<const int> seeds) {
  const int n = static_cast<int>(g.rows());
  const std::array<Vector, 2> tangent_in{jet.d[0], jet.d[1]};
  const std::vector<Vector> tangent = gram_schmidt(tangent_in, g);

  std::vector<int> chosen(seeds.begin(), seeds.end());
  if (chosen.empty()) {
    std::vector<double> norms(n);
    for (int k = 0; k < n; ++k) {
      Vector w = axis(n, k);
      for (const Vector& t : tangent) w -= inner(g, w, t) * t;
      norms[k] = std::sqrt(std::max(0.0, inner(g, w, w)));
    }
    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](int a, int b) { return norms[a] > norms[b]; });
    chosen.assign(order.begin(), order.begin() + (n - 2));
    std::sort(chosen.begin(), chosen.end());
  }
  if (static_cast<int>(chosen.size()) != n - 2) {
    throw DegenerateInput("frames: wrong number of normal seeds");
  }

  std::vector<Vector> inputs{jet.d[0], jet.d[1]};
  for (int k : chosen) inputs.push_back(axis(n, k));

  AdaptedFrame frame;
  frame.e = gram_schmidt(inputs, g);
  frame.normal_seeds = chosen;

  Matrix basis(n, n);
  for (int i = 0; i < n; ++i) basis.col(i) = frame.e[i];
  if (basis.determinant() < 0.0) frame.e.back() = -frame.e.back();

  const Splitter split(g, jet);
  for (int i = 0; i < 2; ++i) frame.tangent_coeffs.col(i) = split.tangent_coeffs(frame.e[i]);
  return frame;
}

/// Frame components of the normal part of nabla~ d_a f d_b f for one connection.
std::vector<Matrix2> frame_form(const Matrix& g, const AdaptedFrame& frame, const SurfaceJet& jet,
                                const Array3& gamma) {
  const auto v = ambient_second(jet, gamma);
  const Matrix2& E = frame.tangent_coeffs;
  std::vector<Matrix2> out;
  for (int alpha = 0; alpha < frame.codim(); ++alpha) {
    Matrix2 coord;
    for (int a = 0; a < 2; ++a) {
      for (int b = 0; b < 2; ++b) coord(a, b) = inner(g, v[a][b], frame.normal(alpha));
    }
    Matrix2 h = E.transpose() * coord * E;
    out.push_back(0.5 * (h + h.transpose()));
  }
  return out;
}

FundamentalForms assemble_forms(const Matrix& g, const AdaptedFrame& frame, const SurfaceJet& jet,
                                const Array3& gamma, const Array3& gamma_star,
                                const Array3& gamma0) {
  FundamentalForms ff;
  ff.h = frame_form(g, frame, jet, gamma);
  ff.h_star = frame_form(g, frame, jet, gamma_star);
  ff.h0 = frame_form(g, frame, jet, gamma0);

  // g(A e_i, e_j) = h_ij. The frame Gram matrix is the identity up to rounding.
  Matrix2 gram;
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) gram(i, j) = inner(g, frame.e[i], frame.e[j]);
  }
  const Matrix2 gram_inv = gram.inverse();
  const int k = frame.codim();
  ff.H = Vector::Zero(k);
  ff.H_star = Vector::Zero(k);
  for (int alpha = 0; alpha < k; ++alpha) {
    ff.A.push_back(gram_inv * ff.h[alpha]);
    ff.A_star.push_back(gram_inv * ff.h_star[alpha]);
    ff.H(alpha) = 0.5 * ff.h[alpha].trace();
    ff.H_star(alpha) = 0.5 * ff.h_star[alpha].trace();
  }
  ff.H_norm = ff.H.norm();
  ff.H_star_norm = ff.H_star.norm();
  return ff;
}

/// sum_alpha a^alpha(i, j) b^alpha(k, l)
double normal_dot(const std::vector<Matrix2>& a, int i, int j, const std::vector<Matrix2>& b, int k,
                  int l) {
  double acc = 0.0;
  for (std::size_t alpha = 0; alpha < a.size(); ++alpha) acc += a[alpha](i, j) * b[alpha](k, l);
  return acc;
}

Matrix normal_columns(const AdaptedFrame& frame) {
  const int n = static_cast<int>(frame.e.size());
  Matrix out(n, frame.codim());
  for (int alpha = 0; alpha < frame.codim(); ++alpha) out.col(alpha) = frame.normal(alpha);
  return out;
}

Matrix frame_columns(const AdaptedFrame& frame) {
  const int n = static_cast<int>(frame.e.size());
  Matrix out(n, n);
  for (int i = 0; i < n; ++i) out.col(i) = frame.e[i];
  return out;
}

}  // namespace

SurfaceImmersion::SurfaceImmersion(std::string kind, ChartDomain domain, ChartDomain samples,
                                   std::array<int, 2> grid, SurfaceMap map, SurfaceJetFn jet)
    : kind_(std::move(kind)),
      domain_(std::move(domain)),
      samples_(std::move(samples)),
      grid_(grid),
      map_(std::move(map)),
      jet_(std::move(jet)) {
  if (domain_.lower.size() != 2 || samples_.lower.size() != 2) {
    throw ConfigError("surface parameter domain must be two-dimensional");
  }
  if (grid_[0] < 1 || grid_[1] < 1) throw ConfigError("surface grid needs at least one point per axis");
  for (int a = 0; a < 2; ++a) {
    if (!(samples_.lower(a) > domain_.lower(a) && samples_.upper(a) < domain_.upper(a) &&
          samples_.lower(a) <= samples_.upper(a))) {
      throw ConfigError("surface sample box must lie inside the parameter domain");
    }
  }
}

Vector SurfaceImmersion::operator()(const Vector& u) const {
  if (!domain_.contains(u)) {
    throw ChartBoundary("parameter point outside the domain of surface " + kind_);
  }
  return map_(u);
}

SurfaceJet SurfaceImmersion::fd_jet(const Vector& u, const FdScheme& scheme) const {
  const auto f = [this](const Vector& p) { return (*this)(p); };
  SurfaceJet jet;
  jet.value = f(u);
  for (int a = 0; a < 2; ++a) jet.d[a] = central_diff(f, u, a, scheme);
  for (int a = 0; a < 2; ++a) {
    for (int b = a; b < 2; ++b) {
      const auto db = [&](const Vector& p) { return Vector(central_diff(f, p, b, scheme)); };
      jet.dd[a][b] = central_diff(db, u, a, scheme);
      jet.dd[b][a] = jet.dd[a][b];
    }
  }
  return jet;
}

SurfaceJet SurfaceImmersion::jet(const Vector& u, const FdScheme& scheme) const {
  if (!jet_) return fd_jet(u, scheme);
  if (!domain_.contains(u)) {
    throw ChartBoundary("parameter point outside the domain of surface " + kind_);
  }
  return jet_(u);
}

SurfaceImmersion SurfaceImmersion::with_grid(std::array<int, 2> grid) const {
  SurfaceImmersion copy = *this;
  if (grid[0] < 1 || grid[1] < 1) throw ConfigError("surface grid needs at least one point per axis");
  copy.grid_ = grid;
  return copy;
}

std::vector<Vector> SurfaceImmersion::grid_points() const {
  std::vector<Vector> pts;
  pts.reserve(static_cast<std::size_t>(grid_[0]) * grid_[1]);
  auto coord = [&](int axis_index, int i) {
    const int count = grid_[axis_index];
    if (count == 1) return 0.5 * (samples_.lower(axis_index) + samples_.upper(axis_index));
    const double t = static_cast<double>(i) / (count - 1);
    return samples_.lower(axis_index) + t * (samples_.upper(axis_index) - samples_.lower(axis_index));
  };
  for (int i = 0; i < grid_[0]; ++i) {
    for (int j = 0; j < grid_[1]; ++j) {
      Vector u(2);
      u << coord(0, i), coord(1, j);
      pts.push_back(u);
    }
  }
  return pts;
}

AdaptedFrame frames(const StatisticalManifold& m, const SurfaceImmersion& s, const Vector& u,
                    const FdScheme& scheme, std::span<const int> seeds) {
  const SurfaceJet jet = s.jet(u, scheme);
  return frame_from(m.metric(jet.value), jet, seeds);
}

SurfacePoint evaluate_point(const StatisticalManifold& m, const SurfaceImmersion& s,
                            const Vector& u, const FdScheme& scheme, std::span<const int> seeds) {
  SurfacePoint pt;
  pt.u = u;
  pt.jet = s.jet(u, scheme);
  const Vector& p = pt.jet.value;
  pt.g_ambient = m.metric(p);
  pt.g_induced = induced_metric(pt.g_ambient, pt.jet);
  pt.frame = frame_from(pt.g_ambient, pt.jet, seeds);
  pt.gamma = m.primal(p);
  pt.gamma0 = levi_civita(m, p, scheme);
  pt.gamma_star = dual_connection(pt.gamma, pt.gamma0);
  pt.forms = assemble_forms(pt.g_ambient, pt.frame, pt.jet, pt.gamma, pt.gamma_star, pt.gamma0);
  pt.R = curvature(connection_field(m, Connection::primal, scheme), p, scheme);
  pt.R_star = curvature(connection_field(m, Connection::dual, scheme), p, scheme);
  pt.R0 = curvature(connection_field(m, Connection::levi_civita, scheme), p, scheme);
  return pt;
}

FundamentalForms fundamental_forms(const StatisticalManifold& m, const SurfaceImmersion& s,
                                   const Vector& u, const FdScheme& scheme) {
  const SurfaceJet jet = s.jet(u, scheme);
  const Vector& p = jet.value;
  const Matrix g = m.metric(p);
  const AdaptedFrame frame = frame_from(g, jet, {});
  const Array3 gamma = m.primal(p);
  const Array3 gamma0 = levi_civita(m, p, scheme);
  return assemble_forms(g, frame, jet, gamma, dual_connection(gamma, gamma0), gamma0);
}

Vector form_vector(const std::vector<Matrix2>& form, const AdaptedFrame& frame,
                   const Eigen::Vector2d& x, const Eigen::Vector2d& y) {
  Vector out = Vector::Zero(static_cast<int>(frame.e.size()));
  for (int alpha = 0; alpha < frame.codim(); ++alpha) {
    out += x.dot(form[alpha] * y) * frame.normal(alpha);
  }
  return out;
}

Array3 induced_connection(const StatisticalManifold& m, const SurfaceImmersion& s,
                          Connection which, const Vector& u, const FdScheme& scheme) {
  const SurfaceJet jet = s.jet(u, scheme);
  const Matrix g = m.metric(jet.value);
  const Splitter split(g, jet);
  const auto v = ambient_second(jet, connection(m, which, jet.value, scheme));
  Array3 out(2);
  for (int a = 0; a < 2; ++a) {
    for (int b = 0; b < 2; ++b) {
      const Eigen::Vector2d c = split.tangent_coeffs(v[a][b]);
      out(0, a, b) = c(0);
      out(1, a, b) = c(1);
    }
  }
  return out;
}

CurvatureTensor induced_curvature(const StatisticalManifold& m, const SurfaceImmersion& s,
                                  Connection which, const Vector& u, const FdScheme& scheme) {
  const ConnectionField field = [&](const Vector& q) {
    return induced_connection(m, s, which, q, scheme);
  };
  return curvature(field, u, scheme);
}

std::pair<double, double> gauss_equation_residual(const SurfacePoint& pt,
                                                  const CurvatureTensor& induced,
                                                  const CurvatureTensor& induced_star) {
  const auto& e = pt.frame.e;
  const Vector e1 = pt.frame.tangent_coeffs.col(0);
  const Vector e2 = pt.frame.tangent_coeffs.col(1);
  const Matrix g_ind = pt.g_induced;
  const auto& h = pt.forms.h;
  const auto& hs = pt.forms.h_star;

  // g~(R~(X,Y)Z,W) = g(R(X,Y)Z,W) + g~(h(X,Z), h*(Y,W)) - g~(h*(X,W), h(Y,Z))
  const double lhs = pt.R.lowered(pt.g_ambient, e[0], e[1], e[0], e[1]);
  const double rhs = induced.lowered(g_ind, e1, e2, e1, e2) + normal_dot(h, 0, 0, hs, 1, 1) -
                     normal_dot(hs, 0, 1, h, 1, 0);
  const double lhs_star = pt.R_star.lowered(pt.g_ambient, e[0], e[1], e[0], e[1]);
  const double rhs_star = induced_star.lowered(g_ind, e1, e2, e1, e2) +
                          normal_dot(hs, 0, 0, h, 1, 1) - normal_dot(h, 0, 1, hs, 1, 0);
  return {std::abs(lhs - rhs), std::abs(lhs_star - rhs_star)};
}

std::pair<double, double> gauss_equation_residual(const StatisticalManifold& m,
                                                  const SurfaceImmersion& s, const Vector& u,
                                                  const FdScheme& scheme) {
  return gauss_equation_residual(evaluate_point(m, s, u, scheme),
                                 induced_curvature(m, s, Connection::primal, u, scheme),
                                 induced_curvature(m, s, Connection::dual, u, scheme));
}

namespace {

double codazzi_one(const StatisticalManifold& m, const SurfaceImmersion& s, Connection which,
                   const Vector& u, const FdScheme& scheme) {
  const ConnectionField field = connection_field(m, which, scheme);

  // Columns 2b+c hold h(d_b, d_c) as an ambient vector.
  const auto normal_forms = [&](const Vector& q) {
    const SurfaceJet jet = s.jet(q, scheme);
    const Matrix g = m.metric(jet.value);
    const Splitter split(g, jet);
    const auto v = ambient_second(jet, field(jet.value));
    Matrix out(g.rows(), 4);
    for (int b = 0; b < 2; ++b) {
      for (int c = 0; c < 2; ++c) out.col(2 * b + c) = split.normal_part(v[b][c]);
    }
    return out;
  };

  const SurfaceJet jet = s.jet(u, scheme);
  const Matrix g = m.metric(jet.value);
  const Splitter split(g, jet);
  const Array3 gamma = field(jet.value);
  const Array3 induced = induced_connection(m, s, which, u, scheme);
  const CurvatureTensor r = curvature(field, jet.value, scheme);
  const Matrix N = normal_forms(u);
  const std::array<Matrix, 2> dN{central_diff(normal_forms, u, 0, scheme),
                                 central_diff(normal_forms, u, 1, scheme)};

  auto h = [&](int b, int c) -> Vector { return N.col(2 * b + c); };
  auto nabla_perp = [&](int a, int b, int c) -> Vector {
    return split.normal_part(Vector(dN[a].col(2 * b + c)) + gamma.contract(jet.d[a], h(b, c)));
  };
  // nabla^perp_a h(d_b, d_c) - h(nabla_a d_b, d_c) - h(d_b, nabla_a d_c)
  auto derivative = [&](int a, int b, int c) -> Vector {
    Vector out = nabla_perp(a, b, c);
    for (int d = 0; d < 2; ++d) out -= induced(d, a, b) * h(d, c) + induced(d, a, c) * h(b, d);
    return out;
  };

  double worst = 0.0;
  for (int c = 0; c < 2; ++c) {
    const Vector lhs = split.normal_part(r.apply(jet.d[0], jet.d[1], jet.d[c]));
    const Vector diff = lhs - (derivative(0, 1, c) - derivative(1, 0, c));
    worst = std::max(worst, std::sqrt(std::max(0.0, inner(g, diff, diff))));
  }
  return worst;
}

}  // namespace

std::pair<double, double> codazzi_residual(const StatisticalManifold& m, const SurfaceImmersion& s,
                                           const Vector& u, const FdScheme& scheme) {
  return {codazzi_one(m, s, Connection::primal, u, scheme),
          codazzi_one(m, s, Connection::dual, u, scheme)};
}

NormalCurvaturePair normal_curvature_tensor(const SurfacePoint& pt) {
  if (pt.frame.e.size() != 4) {
    throw WrongCodimension("normal curvature needs a surface in a 4-dimensional manifold");
  }
  const auto& e = pt.frame.e;
  const auto& f = pt.forms;
  // g([B, C] e1, e2) is entry (1, 0) of the commutator matrix.
  const Matrix2 primal_comm = f.A_star[0] * f.A[1] - f.A[1] * f.A_star[0];
  const Matrix2 dual_comm = f.A[0] * f.A_star[1] - f.A_star[1] * f.A[0];
  NormalCurvaturePair out;
  out.primal = pt.R.lowered(pt.g_ambient, e[0], e[1], e[2], e[3]) + primal_comm(1, 0);
  out.dual = pt.R_star.lowered(pt.g_ambient, e[0], e[1], e[2], e[3]) + dual_comm(1, 0);
  return out;
}

NormalCurvaturePair normal_curvature_tensor(const StatisticalManifold& m, const SurfaceImmersion& s,
                                            const Vector& u, const FdScheme& scheme) {
  if (m.dim() != 4) {
    throw WrongCodimension("normal curvature needs a surface in a 4-dimensional manifold");
  }
  return normal_curvature_tensor(evaluate_point(m, s, u, scheme));
}

namespace {

double normal_curvature_fd_one(const StatisticalManifold& m, const SurfaceImmersion& s,
                               Connection which, const Vector& u, const FdScheme& scheme,
                               const AdaptedFrame& center) {
  const ConnectionField field = connection_field(m, which, scheme);
  const std::vector<int> seeds = center.normal_seeds;

  const auto normals = [&](const Vector& q) {
    const SurfaceJet jet = s.jet(q, scheme);
    return normal_columns(frame_from(m.metric(jet.value), jet, seeds));
  };
  // [Omega_0 | Omega_1], Omega_a(beta, alpha) = g~(nabla~_{d_a} e_alpha, e_beta).
  const auto forms = [&](const Vector& q) {
    const SurfaceJet jet = s.jet(q, scheme);
    const Matrix g = m.metric(jet.value);
    const Array3 gamma = field(jet.value);
    const Matrix nrm = normals(q);
    Matrix out(2, 4);
    for (int a = 0; a < 2; ++a) {
      const Matrix d = central_diff(normals, q, a, scheme);
      for (int alpha = 0; alpha < 2; ++alpha) {
        const Vector cov = Vector(d.col(alpha)) + gamma.contract(jet.d[a], nrm.col(alpha));
        for (int beta = 0; beta < 2; ++beta) out(beta, 2 * a + alpha) = inner(g, cov, nrm.col(beta));
      }
    }
    return out;
  };

  const Matrix omega = forms(u);
  const Matrix d0 = central_diff(forms, u, 0, scheme);
  const Matrix d1 = central_diff(forms, u, 1, scheme);
  const Matrix2 w0 = omega.block(0, 0, 2, 2);
  const Matrix2 w1 = omega.block(0, 2, 2, 2);
  const Matrix2 F = d0.block(0, 2, 2, 2) - d1.block(0, 0, 2, 2) + w0 * w1 - w1 * w0;
  return F(1, 0) * center.tangent_coeffs.determinant();
}

}  // namespace

NormalCurvaturePair normal_curvature_tensor_fd(const StatisticalManifold& m,
                                               const SurfaceImmersion& s, const Vector& u,
                                               const FdScheme& scheme) {
  if (m.dim() != 4) {
    throw WrongCodimension("normal curvature needs a surface in a 4-dimensional manifold");
  }
  const AdaptedFrame center = frames(m, s, u, scheme);
  return {normal_curvature_fd_one(m, s, Connection::primal, u, scheme, center),
          normal_curvature_fd_one(m, s, Connection::dual, u, scheme, center)};
}

std::vector<Matrix2> form_by_frame_extension(const StatisticalManifold& m, const SurfaceImmersion& s,
                                             Connection which, const Vector& u,
                                             const FdScheme& scheme) {
  const AdaptedFrame center = frames(m, s, u, scheme);
  const std::vector<int> seeds = center.normal_seeds;
  const auto frame_field = [&](const Vector& q) {
    const SurfaceJet jet = s.jet(q, scheme);
    return frame_columns(frame_from(m.metric(jet.value), jet, seeds));
  };
  const SurfaceJet jet = s.jet(u, scheme);
  const Matrix g = m.metric(jet.value);
  const Array3 gamma = connection(m, which, jet.value, scheme);
  const std::array<Matrix, 2> d{central_diff(frame_field, u, 0, scheme),
                                central_diff(frame_field, u, 1, scheme)};
  const Matrix2& E = center.tangent_coeffs;

  std::vector<Matrix2> out(center.codim(), Matrix2::Zero());
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) {
      Vector cov = Vector::Zero(g.rows());
      for (int a = 0; a < 2; ++a) {
        cov += E(a, i) * (Vector(d[a].col(j)) + gamma.contract(jet.d[a], center.e[j]));
      }
      for (int alpha = 0; alpha < center.codim(); ++alpha) {
        out[alpha](i, j) = inner(g, cov, center.normal(alpha));
      }
    }
  }
  return out;
}

}  // namespace statkit
