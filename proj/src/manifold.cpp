#include "statkit/manifold.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <utility>

namespace statkit {

namespace {

Vector basis(int n, int i) {
  Vector e = Vector::Zero(n);
  e(i) = 1.0;
  return e;
}

std::string format_point(const Vector& p) {
  std::ostringstream os;
  os << '(';
  for (int i = 0; i < p.size(); ++i) os << (i ? ", " : "") << p(i);
  os << ')';
  return os.str();
}

}  // namespace

ChartDomain ChartDomain::unbounded(int dim) {
  const double inf = std::numeric_limits<double>::infinity();
  return {Vector::Constant(dim, -inf), Vector::Constant(dim, inf)};
}

bool ChartDomain::contains(const Vector& p) const {
  if (p.size() != lower.size()) return false;
  for (int i = 0; i < p.size(); ++i) {
    if (!(p(i) > lower(i) && p(i) < upper(i))) return false;
  }
  return true;
}

Vector CurvatureTensor::apply(const Vector& x, const Vector& y, const Vector& z) const {
  Vector out = Vector::Zero(n_);
  for (int l = 0; l < n_; ++l) {
    double acc = 0.0;
    for (int k = 0; k < n_; ++k) {
      if (z(k) == 0.0) continue;
      for (int i = 0; i < n_; ++i) {
        for (int j = 0; j < n_; ++j) acc += (*this)(l, k, i, j) * z(k) * x(i) * y(j);
      }
    }
    out(l) = acc;
  }
  return out;
}

double CurvatureTensor::lowered(const Matrix& metric, const Vector& x, const Vector& y,
                                const Vector& z, const Vector& w) const {
  return inner(metric, apply(x, y, z), w);
}

double CurvatureTensor::max_abs() const {
  double worst = 0.0;
  const int count = n_ * n_ * n_ * n_;
  for (int i = 0; i < count; ++i) worst = std::max(worst, std::abs(data_[i]));
  return worst;
}

StatisticalManifold::StatisticalManifold(std::string name, int dim, ChartDomain chart,
                                         MetricField metric, ConnectionField primal,
                                         std::optional<double> claimed_c,
                                         MetricDerivativeField metric_derivative)
    : name_(std::move(name)),
      dim_(dim),
      chart_(std::move(chart)),
      metric_(std::move(metric)),
      primal_(std::move(primal)),
      claimed_c_(claimed_c),
      metric_derivative_(std::move(metric_derivative)) {
  if (dim_ < 2 || dim_ > kMaxDim) throw ConfigError("manifold dimension must be in [2, 4]");
  if (chart_.lower.size() != dim_ || chart_.upper.size() != dim_) {
    throw ConfigError("chart bounds do not match manifold dimension");
  }
}

void StatisticalManifold::check_chart(const Vector& p) const {
  if (!chart_.contains(p)) {
    throw ChartBoundary("point " + format_point(p) + " lies outside the chart of " + name_);
  }
}

Matrix StatisticalManifold::metric(const Vector& p) const {
  check_chart(p);
  return metric_(p);
}

Array3 StatisticalManifold::primal(const Vector& p) const {
  check_chart(p);
  return primal_(p);
}

Array3 StatisticalManifold::metric_derivative(const Vector& p, const FdScheme& scheme) const {
  check_chart(p);
  if (metric_derivative_) return metric_derivative_(p);
  Array3 dg(dim_);
  for (int k = 0; k < dim_; ++k) {
    const Matrix d = central_diff([this](const Vector& q) { return metric(q); }, p, k, scheme);
    for (int i = 0; i < dim_; ++i) {
      for (int j = 0; j < dim_; ++j) dg(k, i, j) = d(i, j);
    }
  }
  return dg;
}

StatisticalManifold StatisticalManifold::dual_structure(const FdScheme& scheme) const {
  return StatisticalManifold(name_ + "*", dim_, chart_, metric_,
                             connection_field(*this, Connection::dual, scheme), claimed_c_,
                             metric_derivative_);
}

Array3 christoffel_from_metric(const Matrix& metric, const Array3& dg) {
  const int n = static_cast<int>(metric.rows());
  const Matrix inv = invert_spd(metric);
  Array3 first(n);  // Gamma_{l,ij}
  for (int l = 0; l < n; ++l) {
    for (int i = 0; i < n; ++i) {
      for (int j = i; j < n; ++j) {
        const double v = 0.5 * (dg(i, j, l) + dg(j, i, l) - dg(l, i, j));
        first(l, i, j) = v;
        first(l, j, i) = v;
      }
    }
  }
  Array3 gamma(n);
  for (int k = 0; k < n; ++k) {
    for (int i = 0; i < n; ++i) {
      for (int j = i; j < n; ++j) {
        double acc = 0.0;
        for (int l = 0; l < n; ++l) acc += inv(k, l) * first(l, i, j);
        gamma(k, i, j) = acc;
        gamma(k, j, i) = acc;
      }
    }
  }
  return gamma;
}

Array3 levi_civita(const StatisticalManifold& m, const Vector& p, const FdScheme& scheme) {
  return christoffel_from_metric(m.metric(p), m.metric_derivative(p, scheme));
}

Array3 levi_civita_fd(const MetricField& metric, const Vector& p, const FdScheme& scheme) {
  const int n = static_cast<int>(p.size());
  Array3 dg(n);
  for (int k = 0; k < n; ++k) {
    const Matrix d = central_diff(metric, p, k, scheme);
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) dg(k, i, j) = d(i, j);
    }
  }
  return christoffel_from_metric(metric(p), dg);
}

Array3 dual_connection(const Array3& primal, const Array3& lc) { return 2.0 * lc - primal; }

Array3 connection(const StatisticalManifold& m, Connection which, const Vector& p,
                  const FdScheme& scheme) {
  switch (which) {
    case Connection::primal:
      return m.primal(p);
    case Connection::levi_civita:
      return levi_civita(m, p, scheme);
    case Connection::dual:
      return dual_connection(m.primal(p), levi_civita(m, p, scheme));
  }
  return m.primal(p);
}

ConnectionField connection_field(const StatisticalManifold& m, Connection which,
                                 const FdScheme& scheme) {
  return [m, which, scheme](const Vector& p) { return connection(m, which, p, scheme); };
}

CurvatureTensor curvature(const ConnectionField& field, const Vector& p, const FdScheme& scheme) {
  const int n = static_cast<int>(p.size());
  const Array3 gamma = field(p);
  std::array<Array3, kMaxDim> d;
  for (int i = 0; i < n; ++i) d[i] = central_diff(field, p, i, scheme);

  CurvatureTensor r(n);
  for (int l = 0; l < n; ++l) {
    for (int k = 0; k < n; ++k) {
      for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
          double v = d[i](l, j, k) - d[j](l, i, k);
          for (int m = 0; m < n; ++m) {
            v += gamma(l, i, m) * gamma(m, j, k) - gamma(l, j, m) * gamma(m, i, k);
          }
          r(l, k, i, j) = v;
          r(l, k, j, i) = -v;
        }
      }
    }
  }
  return r;
}

double duality_residual(const StatisticalManifold& m, const ConnectionField& dual, const Vector& p,
                        const FdScheme& scheme) {
  const int n = m.dim();
  const Matrix g = m.metric(p);
  const Array3 dg = m.metric_derivative(p, scheme);
  const Array3 gamma = m.primal(p);
  const Array3 gamma_star = dual(p);
  double worst = 0.0;
  for (int c = 0; c < n; ++c) {
    for (int a = 0; a < n; ++a) {
      for (int b = 0; b < n; ++b) {
        double v = dg(c, a, b);
        for (int l = 0; l < n; ++l) {
          v -= gamma(l, c, a) * g(l, b) + g(a, l) * gamma_star(l, c, b);
        }
        worst = std::max(worst, std::abs(v));
      }
    }
  }
  return worst;
}

double constant_curvature_residual(const StatisticalManifold& m, double c,
                                   std::span<const Vector> points, const FdScheme& scheme,
                                   Connection which) {
  const int n = m.dim();
  const ConnectionField field = connection_field(m, which, scheme);
  double worst = 0.0;
  for (const Vector& p : points) {
    const Matrix g = m.metric(p);
    const CurvatureTensor r = curvature(field, p, scheme);
    for (int w = 0; w < n; ++w) {
      for (int k = 0; k < n; ++k) {
        for (int i = 0; i < n; ++i) {
          for (int j = 0; j < n; ++j) {
            double v = 0.0;
            for (int l = 0; l < n; ++l) v += g(w, l) * r(l, k, i, j);
            v -= c * (g(j, k) * g(w, i) - g(i, k) * g(w, j));
            worst = std::max(worst, std::abs(v));
          }
        }
      }
    }
  }
  return worst;
}

double curvature_duality_residual(const StatisticalManifold& m, const Vector& p,
                                  const FdScheme& scheme) {
  const int n = m.dim();
  const Matrix g = m.metric(p);
  const CurvatureTensor r = curvature(connection_field(m, Connection::primal, scheme), p, scheme);
  const CurvatureTensor rs = curvature(connection_field(m, Connection::dual, scheme), p, scheme);
  double worst = 0.0;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      for (int z = 0; z < n; ++z) {
        for (int w = 0; w < n; ++w) {
          double v = 0.0;
          for (int l = 0; l < n; ++l) v += g(w, l) * rs(l, z, i, j) + g(z, l) * r(l, w, i, j);
          worst = std::max(worst, std::abs(v));
        }
      }
    }
  }
  return worst;
}

double coordinate_sectional_curvature(const CurvatureTensor& r, const Matrix& metric, int i, int j) {
  const int n = r.dim();
  const Vector x = basis(n, i);
  const Vector y = basis(n, j);
  const double denom = metric(i, i) * metric(j, j) - metric(i, j) * metric(i, j);
  if (denom < 1e-12) throw DegenerateInput("coordinate plane is degenerate");
  return r.lowered(metric, x, y, y, x) / denom;
}

double pair_symmetry_defect(const CurvatureTensor& r, const Matrix& metric) {
  const int n = r.dim();
  auto low = [&](int a, int b, int c, int d) {
    double v = 0.0;
    for (int l = 0; l < n; ++l) v += metric(d, l) * r(l, c, a, b);
    return v;
  };
  double worst = 0.0;
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) {
      for (int c = 0; c < n; ++c) {
        for (int d = 0; d < n; ++d) {
          worst = std::max(worst, std::abs(low(a, b, c, d) - low(c, d, a, b)));
        }
      }
    }
  }
  return worst;
}

}  // namespace statkit
