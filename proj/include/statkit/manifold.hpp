#pragma once

#include <array>
#include <functional>
#include <optional>
#include <span>
#include <string>

#include "statkit/numerics.hpp"

namespace statkit {

/// Open coordinate box; infinite bounds are allowed.
struct ChartDomain {
  Vector lower;
  Vector upper;

  static ChartDomain unbounded(int dim);

  bool contains(const Vector& p) const;
};

using MetricField = std::function<Matrix(const Vector&)>;
using ConnectionField = std::function<Array3(const Vector&)>;
/// (k, i, j) -> d_k g_ij
using MetricDerivativeField = std::function<Array3(const Vector&)>;

/// Curvature components R^l_{kij} at a point, with
///   R(d_i, d_j) d_k = R^l_{kij} d_l,
///   R(X,Y)Z = nabla_X nabla_Y Z - nabla_Y nabla_X Z - nabla_[X,Y] Z.
/// Every sign-sensitive formula in the library follows this convention.
class CurvatureTensor {
 public:
  CurvatureTensor() = default;
  explicit CurvatureTensor(int n) : n_(n) { data_.fill(0.0); }

  int dim() const { return n_; }

  double& operator()(int l, int k, int i, int j) { return data_[index(l, k, i, j)]; }
  double operator()(int l, int k, int i, int j) const { return data_[index(l, k, i, j)]; }

  /// Components of R(X,Y)Z.
  Vector apply(const Vector& x, const Vector& y, const Vector& z) const;

  /// g(R(X,Y)Z, W).
  double lowered(const Matrix& metric, const Vector& x, const Vector& y, const Vector& z,
                 const Vector& w) const;

  double max_abs() const;

 private:
  int index(int l, int k, int i, int j) const { return ((l * n_ + k) * n_ + i) * n_ + j; }

  int n_ = 0;
  std::array<double, kMaxDim * kMaxDim * kMaxDim * kMaxDim> data_{};
};

/// A charted Riemannian manifold with a torsion-free primal connection. The
/// Levi-Civita and dual connections are derived. Immutable once built.
///
/// Metric derivatives come from `metric_derivative` when the caller supplies a
/// closed form, otherwise from central differences of `metric`.
class StatisticalManifold {
 public:
  StatisticalManifold(std::string name, int dim, ChartDomain chart, MetricField metric,
                      ConnectionField primal, std::optional<double> claimed_c = std::nullopt,
                      MetricDerivativeField metric_derivative = {});

  const std::string& name() const { return name_; }
  int dim() const { return dim_; }
  const ChartDomain& chart() const { return chart_; }
  std::optional<double> claimed_c() const { return claimed_c_; }
  bool has_closed_form_metric_derivative() const { return static_cast<bool>(metric_derivative_); }

  /// All accessors throw ChartBoundary outside the chart.
  Matrix metric(const Vector& p) const;
  Array3 primal(const Vector& p) const;
  Array3 metric_derivative(const Vector& p, const FdScheme& scheme) const;

  const MetricField& metric_field() const { return metric_; }

  /// The same metric with the dual connection promoted to primal. The dual of
  /// the result is this manifold's primal connection again.
  StatisticalManifold dual_structure(const FdScheme& scheme) const;

 private:
  void check_chart(const Vector& p) const;

  std::string name_;
  int dim_;
  ChartDomain chart_;
  MetricField metric_;
  ConnectionField primal_;
  std::optional<double> claimed_c_;
  MetricDerivativeField metric_derivative_;
};

enum class Connection { primal, dual, levi_civita };

/// Gamma^k_ij = 1/2 g^kl (d_i g_jl + d_j g_il - d_l g_ij).
Array3 christoffel_from_metric(const Matrix& metric, const Array3& metric_derivative);

Array3 levi_civita(const StatisticalManifold& m, const Vector& p, const FdScheme& scheme);

/// Levi-Civita connection with metric derivatives taken by central
/// differences, whatever the manifold supplies.
Array3 levi_civita_fd(const MetricField& metric, const Vector& p, const FdScheme& scheme);

/// 2 * lc - primal.
Array3 dual_connection(const Array3& primal, const Array3& lc);

Array3 connection(const StatisticalManifold& m, Connection which, const Vector& p,
                  const FdScheme& scheme);

/// Coefficient field of the chosen connection. Holds a copy of `m`.
ConnectionField connection_field(const StatisticalManifold& m, Connection which,
                                 const FdScheme& scheme);

/// R^l_{kij} = d_i G^l_jk - d_j G^l_ik + G^l_im G^m_jk - G^l_jm G^m_ik with
/// the derivatives by central differences of `field`.
CurvatureTensor curvature(const ConnectionField& field, const Vector& p, const FdScheme& scheme);

/// Max over coordinate triples of |d_c g_ab - g(nabla_c d_a, d_b) - g(d_a, nabla*_c d_b)|.
double duality_residual(const StatisticalManifold& m, const ConnectionField& dual, const Vector& p,
                        const FdScheme& scheme);

/// Max over points and coordinate tuples of the lowered components of
/// R(d_i,d_j)d_k - c (g_jk d_i - g_ik d_j), for the chosen connection.
double constant_curvature_residual(const StatisticalManifold& m, double c,
                                   std::span<const Vector> points, const FdScheme& scheme,
                                   Connection which = Connection::primal);

/// Max over coordinate tuples of |g(R*(X,Y)Z, W) + g(Z, R(X,Y)W)|.
double curvature_duality_residual(const StatisticalManifold& m, const Vector& p,
                                  const FdScheme& scheme);

/// Classical sectional curvature g(R(X,Y)Y,X) / (|X|^2|Y|^2 - g(X,Y)^2) of
/// the coordinate plane (i, j).
double coordinate_sectional_curvature(const CurvatureTensor& r, const Matrix& metric, int i, int j);

/// max |g(R(X,Y)Z,W) - g(R(Z,W)X,Y)| over coordinate tuples.
double pair_symmetry_defect(const CurvatureTensor& r, const Matrix& metric);

}  // namespace statkit
