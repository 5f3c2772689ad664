#pragma once

#include <array>
#include <functional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "statkit/manifold.hpp"

namespace statkit {

using Matrix2 = Eigen::Matrix2d;

/// Value, first and second parameter derivatives of a surface map at a point.
struct SurfaceJet {
  Vector value;
  std::array<Vector, 2> d;
  std::array<std::array<Vector, 2>, 2> dd;
};

using SurfaceMap = std::function<Vector(const Vector&)>;
using SurfaceJetFn = std::function<SurfaceJet(const Vector&)>;

/// A parametrised surface u = (u1, u2) -> chart point.
///
/// `domain` is the open box where the map may be evaluated (finite-difference
/// stencils included); `samples` is the closed box carrying the sampling
/// lattice and must sit inside `domain`. When a closed-form jet is supplied it
/// is used for derivatives, otherwise they come from (nested) central
/// differences of the map.
class SurfaceImmersion {
 public:
  SurfaceImmersion(std::string kind, ChartDomain domain, ChartDomain samples,
                   std::array<int, 2> grid, SurfaceMap map, SurfaceJetFn jet = {});

  const std::string& kind() const { return kind_; }
  const ChartDomain& domain() const { return domain_; }
  const ChartDomain& samples() const { return samples_; }
  std::array<int, 2> grid() const { return grid_; }
  bool has_closed_form_jet() const { return static_cast<bool>(jet_); }

  /// Throws ChartBoundary outside the parameter domain.
  Vector operator()(const Vector& u) const;
  SurfaceJet jet(const Vector& u, const FdScheme& scheme) const;
  SurfaceJet fd_jet(const Vector& u, const FdScheme& scheme) const;

  SurfaceImmersion with_grid(std::array<int, 2> grid) const;

  /// Lattice points, u1 major, both axes ascending.
  std::vector<Vector> grid_points() const;

 private:
  std::string kind_;
  ChartDomain domain_;
  ChartDomain samples_;
  std::array<int, 2> grid_;
  SurfaceMap map_;
  SurfaceJetFn jet_;
};

/// g~-orthonormal frame along the surface: e[0], e[1] tangent, the rest
/// normal. `tangent_coeffs` expresses e_i = sum_a tangent_coeffs(a, i) d_a f.
struct AdaptedFrame {
  std::vector<Vector> e;
  Matrix2 tangent_coeffs;
  /// Chart axes used to seed the normal vectors (ascending).
  std::vector<int> normal_seeds;

  int codim() const { return static_cast<int>(e.size()) - 2; }
  const Vector& normal(int alpha) const { return e[2 + alpha]; }
};

/// Frame components of the second fundamental forms. `h[a](i, j)` is
/// h^{2+a}_{ij} = g~(h(e_i, e_j), e_{2+a}); similarly for `h_star` and `h0`.
/// `A[a]` is the matrix of the shape operator for e_{2+a} in the tangent frame
/// (column i holds A e_i).
struct FundamentalForms {
  std::vector<Matrix2> h;
  std::vector<Matrix2> h_star;
  std::vector<Matrix2> h0;
  std::vector<Matrix2> A;
  std::vector<Matrix2> A_star;
  Vector H;
  Vector H_star;
  double H_norm = 0.0;
  double H_star_norm = 0.0;

  int codim() const { return static_cast<int>(h.size()); }
};

/// Everything the invariants need at one surface point.
struct SurfacePoint {
  Vector u;
  SurfaceJet jet;
  Matrix g_ambient;
  Matrix2 g_induced;
  AdaptedFrame frame;
  FundamentalForms forms;
  Array3 gamma;
  Array3 gamma_star;
  Array3 gamma0;
  CurvatureTensor R;
  CurvatureTensor R_star;
  CurvatureTensor R0;
};

/// Tangent frame by Gram-Schmidt of (d_1 f, d_2 f). Normal vectors seeded by
/// the chart axes with the largest g~-norm after projection off the tangent
/// plane (ties to the lower index), unless `seeds` fixes them. The last normal
/// is flipped when needed so that det(e_1..e_n) > 0.
AdaptedFrame frames(const StatisticalManifold& m, const SurfaceImmersion& s, const Vector& u,
                    const FdScheme& scheme, std::span<const int> seeds = {});

FundamentalForms fundamental_forms(const StatisticalManifold& m, const SurfaceImmersion& s,
                                   const Vector& u, const FdScheme& scheme);

SurfacePoint evaluate_point(const StatisticalManifold& m, const SurfaceImmersion& s,
                            const Vector& u, const FdScheme& scheme,
                            std::span<const int> seeds = {});

/// Ambient vector h(X, Y) (or h*, h0) for tangent-frame coefficient vectors.
Vector form_vector(const std::vector<Matrix2>& form, const AdaptedFrame& frame, const Eigen::Vector2d& x,
                   const Eigen::Vector2d& y);

/// Induced connection coefficients on the parameter domain:
/// gamma^c_ab = g^cd g~(nabla~_{d_a f} d_b f, d_d f).
Array3 induced_connection(const StatisticalManifold& m, const SurfaceImmersion& s,
                          Connection which, const Vector& u, const FdScheme& scheme);

/// Curvature of the induced connection by central differences on the
/// parameter domain.
CurvatureTensor induced_curvature(const StatisticalManifold& m, const SurfaceImmersion& s,
                                  Connection which, const Vector& u, const FdScheme& scheme);

/// Gauss-equation residuals (primal, dual) on (e1, e2, e1, e2).
std::pair<double, double> gauss_equation_residual(const StatisticalManifold& m,
                                                  const SurfaceImmersion& s, const Vector& u,
                                                  const FdScheme& scheme);
/// Same, from precomputed point data and induced curvatures (primal, dual).
std::pair<double, double> gauss_equation_residual(const SurfacePoint& pt,
                                                  const CurvatureTensor& induced,
                                                  const CurvatureTensor& induced_star);

/// Codazzi-equation residuals (primal, dual): g~-norm of
///   (R~(X,Y)Z)^perp - [nabla^perp_X h(Y,Z) - h(nabla_X Y, Z) - h(Y, nabla_X Z) - (X <-> Y)]
/// with X = d_1, Y = d_2, maximised over Z in {d_1, d_2}.
std::pair<double, double> codazzi_residual(const StatisticalManifold& m, const SurfaceImmersion& s,
                                           const Vector& u, const FdScheme& scheme);

struct NormalCurvaturePair {
  double primal = 0.0;  // g~(R^perp(e1,e2)e3, e4)
  double dual = 0.0;    // g~(R*^perp(e1,e2)e3, e4)
};

/// Ricci-equation route: ambient curvature plus shape-operator commutators.
/// Throws WrongCodimension unless dim = 4.
NormalCurvaturePair normal_curvature_tensor(const StatisticalManifold& m, const SurfaceImmersion& s,
                                            const Vector& u, const FdScheme& scheme);
NormalCurvaturePair normal_curvature_tensor(const SurfacePoint& pt);

/// Finite-difference route: differentiate the normal connection forms
/// directly. Normal seeds are frozen at `u` so the frame field is smooth over
/// the stencil.
NormalCurvaturePair normal_curvature_tensor_fd(const StatisticalManifold& m,
                                               const SurfaceImmersion& s, const Vector& u,
                                               const FdScheme& scheme);

/// Second fundamental form obtained by differentiating the adapted frame
/// fields themselves (nabla~_{e_i} e_j, normal part); `which` picks the
/// connection. Used to check tensoriality of the coordinate route.
std::vector<Matrix2> form_by_frame_extension(const StatisticalManifold& m, const SurfaceImmersion& s,
                                             Connection which, const Vector& u,
                                             const FdScheme& scheme);

}  // namespace statkit
