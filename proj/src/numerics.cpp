#include "statkit/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace statkit {

Vector Array3::contract(const Vector& x, const Vector& y) const {
  Vector out = Vector::Zero(n_);
  for (int k = 0; k < n_; ++k) {
    double acc = 0.0;
    for (int i = 0; i < n_; ++i) {
      for (int j = 0; j < n_; ++j) acc += (*this)(k, i, j) * x(i) * y(j);
    }
    out(k) = acc;
  }
  return out;
}

double Array3::lower_asymmetry() const {
  double worst = 0.0;
  for (int k = 0; k < n_; ++k) {
    for (int i = 0; i < n_; ++i) {
      for (int j = i + 1; j < n_; ++j) {
        worst = std::max(worst, std::abs((*this)(k, i, j) - (*this)(k, j, i)));
      }
    }
  }
  return worst;
}

double Array3::max_abs() const {
  double worst = 0.0;
  const int count = n_ * n_ * n_;
  for (int i = 0; i < count; ++i) worst = std::max(worst, std::abs(data_[i]));
  return worst;
}

Array3& Array3::operator+=(const Array3& o) {
  const int count = n_ * n_ * n_;
  for (int i = 0; i < count; ++i) data_[i] += o.data_[i];
  return *this;
}

Array3& Array3::operator-=(const Array3& o) {
  const int count = n_ * n_ * n_;
  for (int i = 0; i < count; ++i) data_[i] -= o.data_[i];
  return *this;
}

Array3& Array3::operator*=(double s) {
  const int count = n_ * n_ * n_;
  for (int i = 0; i < count; ++i) data_[i] *= s;
  return *this;
}

void FdScheme::validate() const {
  if (!(step > 0.0) || !std::isfinite(step)) {
    throw ConfigError("fd step must be positive, got " + std::to_string(step));
  }
  if (order != 2) {
    throw ConfigError("only second-order central differences are supported");
  }
}

std::vector<Vector> gram_schmidt(std::span<const Vector> vectors, const Matrix& metric) {
  std::vector<Vector> out;
  out.reserve(vectors.size());
  for (const Vector& v : vectors) {
    Vector w = v;
    // Modified Gram-Schmidt: project against the running remainder.
    for (const Vector& q : out) w -= inner(metric, w, q) * q;
    const double norm_sq = inner(metric, w, w);
    const double norm = norm_sq > 0.0 ? std::sqrt(norm_sq) : 0.0;
    if (norm < 1e-10) {
      throw DegenerateInput("gram_schmidt: input vectors are linearly dependent");
    }
    out.push_back(w / norm);
  }
  return out;
}

namespace {

bool is_symmetric(const Matrix& m) {
  const double scale = std::max(1.0, m.cwiseAbs().maxCoeff());
  return m.rows() == m.cols() && (m - m.transpose()).cwiseAbs().maxCoeff() <= 1e-12 * scale;
}

}  // namespace

bool is_spd(const Matrix& metric) {
  if (!is_symmetric(metric)) return false;
  Eigen::LLT<Matrix> llt(metric);
  return llt.info() == Eigen::Success;
}

Matrix invert_spd(const Matrix& metric) {
  if (!is_symmetric(metric)) throw NotSPD("invert_spd: matrix is not symmetric");
  Eigen::LLT<Matrix> llt(metric);
  if (llt.info() != Eigen::Success) throw NotSPD("invert_spd: Cholesky factorisation failed");
  Matrix inv = llt.solve(Matrix::Identity(metric.rows(), metric.cols()));
  // Symmetrise to remove rounding asymmetry.
  return 0.5 * (inv + inv.transpose());
}

}  // namespace statkit
