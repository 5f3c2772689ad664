#pragma once

#include <array>
#include <span>
#include <type_traits>
#include <vector>

#include <Eigen/Dense>

#include "statkit/errors.hpp"

namespace statkit {

inline constexpr int kMaxDim = 4;

/// Dense column vector of dimension n <= 4 (chart points, tangent vectors,
/// surface parameters).
using Vector = Eigen::Matrix<double, Eigen::Dynamic, 1, 0, kMaxDim, 1>;
/// Dense n x n matrix, n <= 4.
using Matrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, 0, kMaxDim, kMaxDim>;

/// n x n x n array indexed (k, i, j). Holds Christoffel symbols Gamma^k_ij
/// as well as metric derivatives d_k g_ij.
class Array3 {
 public:
  Array3() = default;
  explicit Array3(int n) : n_(n) { data_.fill(0.0); }

  int dim() const { return n_; }

  double& operator()(int a, int b, int c) { return data_[index(a, b, c)]; }
  double operator()(int a, int b, int c) const { return data_[index(a, b, c)]; }

  /// out^k = sum_ij A(k, i, j) x^i y^j
  Vector contract(const Vector& x, const Vector& y) const;

  /// Largest |A(k,i,j) - A(k,j,i)|.
  double lower_asymmetry() const;
  double max_abs() const;

  Array3& operator+=(const Array3& o);
  Array3& operator-=(const Array3& o);
  Array3& operator*=(double s);

  friend Array3 operator+(Array3 a, const Array3& b) { return a += b; }
  friend Array3 operator-(Array3 a, const Array3& b) { return a -= b; }
  friend Array3 operator*(Array3 a, double s) { return a *= s; }
  friend Array3 operator*(double s, Array3 a) { return a *= s; }

 private:
  int index(int a, int b, int c) const { return (a * n_ + b) * n_ + c; }

  int n_ = 0;
  std::array<double, kMaxDim * kMaxDim * kMaxDim> data_{};
};

/// Finite-difference configuration. Only second-order central differences
/// are supported.
struct FdScheme {
  double step = 1e-4;
  int order = 2;

  /// Throws ConfigError for a non-positive step or unsupported order.
  void validate() const;
};

inline double inner(const Matrix& metric, const Vector& a, const Vector& b) {
  return a.dot(metric * b);
}

/// Orthonormalises `vectors` with respect to `metric`, in the given order.
/// Each output is a positive combination of its input and the previous
/// outputs; in particular the first output is a positive multiple of the
/// first input. Throws DegenerateInput when an intermediate norm drops below
/// 1e-10.
std::vector<Vector> gram_schmidt(std::span<const Vector> vectors, const Matrix& metric);

/// Inverse of a symmetric positive definite matrix via Cholesky.
/// Throws NotSPD if the matrix is not symmetric or the factorisation fails.
Matrix invert_spd(const Matrix& metric);

bool is_spd(const Matrix& metric);

/// (f(p + h e_dir) - f(p - h e_dir)) / 2h. `f` may return a double, an Eigen
/// vector/matrix or an Array3; anything closed under subtraction and scaling.
template <class F>
auto central_diff(F&& f, const Vector& point, int direction, const FdScheme& scheme) {
  using Value = std::decay_t<decltype(f(point))>;
  Vector fwd = point;
  Vector bwd = point;
  fwd(direction) += scheme.step;
  bwd(direction) -= scheme.step;
  Value hi = f(fwd);
  Value lo = f(bwd);
  Value out = (hi - lo) * (0.5 / scheme.step);
  return out;
}

}  // namespace statkit
