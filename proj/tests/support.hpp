#pragma once

#include <cstdint>
#include <random>

#include "statkit/numerics.hpp"

namespace testgen {

// Small hand-rolled generators for property tests. Every case is reproducible
// from the seed printed by the failing check.
class Gen {
 public:
  explicit Gen(std::uint64_t seed) : rng_(seed) {}

  double uniform(double lo, double hi) {
    return lo + (hi - lo) * (static_cast<double>(rng_() >> 11) * 0x1.0p-53);
  }

  int integer(int lo, int hi) { return lo + static_cast<int>(rng_() % static_cast<std::uint64_t>(hi - lo + 1)); }

  statkit::Vector vector(int n, double lo = -1.0, double hi = 1.0) {
    statkit::Vector v(n);
    for (int i = 0; i < n; ++i) v(i) = uniform(lo, hi);
    return v;
  }

  /// A A^T + n I is comfortably positive definite.
  statkit::Matrix spd(int n) {
    statkit::Matrix a(n, n);
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) a(i, j) = uniform(-1.0, 1.0);
    }
    return a * a.transpose() + n * statkit::Matrix::Identity(n, n);
  }

  /// Torsion-free connection coefficients.
  statkit::Array3 symmetric_array(int n, double scale = 1.0) {
    statkit::Array3 out(n);
    for (int k = 0; k < n; ++k) {
      for (int i = 0; i < n; ++i) {
        for (int j = i; j < n; ++j) {
          out(k, i, j) = uniform(-scale, scale);
          out(k, j, i) = out(k, i, j);
        }
      }
    }
    return out;
  }

 private:
  std::mt19937_64 rng_;
};

}  // namespace testgen
