// Scalar and vector samples on a Grid, plus the constant-in-space
// diffusion matrix with its ellipticity window. Fields are plain values:
// copy freely, never mutate shared state.
#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "driftlab/core/grid.hpp"

namespace driftlab {

struct ScalarField {
  Grid grid;
  std::vector<double> v;
  double time = 0;

  ScalarField() = default;
  explicit ScalarField(const Grid& g, double fill = 0.0, double t = 0.0)
      : grid(g), v(g.size(), fill), time(t) {}

  double& operator[](std::size_t i) { return v[i]; }
  double operator[](std::size_t i) const { return v[i]; }
  std::size_t size() const { return v.size(); }

  bool finite() const {
    for (double x : v)
      if (!std::isfinite(x)) return false;
    return true;
  }
  double min() const { return *std::min_element(v.begin(), v.end()); }
  double max() const { return *std::max_element(v.begin(), v.end()); }
  double max_abs() const {
    double m = 0;
    for (double x : v) m = std::max(m, std::abs(x));
    return m;
  }
};

struct VectorField {
  Grid grid;
  std::array<std::vector<double>, 3> comp;  // comp[a] used for a < grid.dim
  double time = 0;

  VectorField() = default;
  explicit VectorField(const Grid& g, double t = 0.0) : grid(g), time(t) {
    for (int a = 0; a < g.dim; ++a) comp[a].assign(g.size(), 0.0);
  }

  std::size_t size() const { return grid.size(); }

  double magnitude_at(std::size_t i) const {
    double s = 0;
    for (int a = 0; a < grid.dim; ++a) s += comp[a][i] * comp[a][i];
    return std::sqrt(s);
  }
  ScalarField magnitude() const {
    ScalarField m(grid, 0.0, time);
    for (std::size_t i = 0; i < size(); ++i) m[i] = magnitude_at(i);
    return m;
  }
  double max_magnitude() const {
    double m = 0;
    for (std::size_t i = 0; i < size(); ++i) m = std::max(m, magnitude_at(i));
    return m;
  }
  bool finite() const {
    for (int a = 0; a < grid.dim; ++a)
      for (double x : comp[a])
        if (!std::isfinite(x)) return false;
    return true;
  }
};

// Build a scalar field from a pointwise rule f(x).
inline ScalarField sample_scalar(const Grid& g, const std::function<double(const Vec3&)>& f,
                                 double t = 0.0) {
  ScalarField out(g, 0.0, t);
  for (std::size_t i = 0; i < g.size(); ++i) out[i] = f(g.point(i));
  return out;
}

inline VectorField sample_vector(const Grid& g, const std::function<Vec3(const Vec3&)>& f,
                                 double t = 0.0) {
  VectorField out(g, t);
  for (std::size_t i = 0; i < g.size(); ++i) {
    Vec3 b = f(g.point(i));
    for (int a = 0; a < g.dim; ++a) out.comp[a][i] = b[a];
  }
  return out;
}

// Constant symmetric diffusion matrix a with ellipticity window [sigma, xi],
// optionally modulated by a positive scalar field theta(x): a(x) = theta(x) * A.
struct DiffusionMatrix {
  int dim = 3;
  std::array<std::array<double, 3>, 3> A{{{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}};
  double sigma = 1.0;  // lower ellipticity bound
  double xi = 1.0;     // upper ellipticity bound
  bool has_theta = false;
  ScalarField theta;  // empty unless has_theta

  static DiffusionMatrix identity(int dim_, double value = 1.0) {
    DiffusionMatrix m;
    m.dim = dim_;
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) m.A[i][j] = (i == j && i < dim_) ? value : 0.0;
    m.sigma = m.xi = value;
    return m;
  }

  bool symmetric(double tol = 1e-14) const {
    for (int i = 0; i < dim; ++i)
      for (int j = i + 1; j < dim; ++j)
        if (std::abs(A[i][j] - A[j][i]) > tol) return false;
    return true;
  }

  // eigenvalue range of the constant part (dim <= 3: closed forms / Jacobi sweep)
  std::pair<double, double> eigen_range() const {
    // cyclic Jacobi on a copy; ample for 3x3 symmetric
    std::array<std::array<double, 3>, 3> M = A;
    for (int sweep = 0; sweep < 32; ++sweep) {
      double off = 0;
      for (int i = 0; i < dim; ++i)
        for (int j = i + 1; j < dim; ++j) off += M[i][j] * M[i][j];
      if (off < 1e-30) break;
      for (int p = 0; p < dim; ++p)
        for (int q = p + 1; q < dim; ++q) {
          if (std::abs(M[p][q]) < 1e-300) continue;
          double phi = 0.5 * std::atan2(2 * M[p][q], M[q][q] - M[p][p]);
          double c = std::cos(phi), s = std::sin(phi);
          for (int k = 0; k < dim; ++k) {
            double mkp = M[k][p], mkq = M[k][q];
            M[k][p] = c * mkp - s * mkq;
            M[k][q] = s * mkp + c * mkq;
          }
          for (int k = 0; k < dim; ++k) {
            double mpk = M[p][k], mqk = M[q][k];
            M[p][k] = c * mpk - s * mqk;
            M[q][k] = s * mpk + c * mqk;
          }
        }
    }
    double lo = M[0][0], hi = M[0][0];
    for (int i = 1; i < dim; ++i) {
      lo = std::min(lo, M[i][i]);
      hi = std::max(hi, M[i][i]);
    }
    return {lo, hi};
  }

  // per-point check that eigenvalues stay inside [sigma, xi]
  bool ellipticity_ok(double tol = 1e-12) const {
    if (!symmetric()) return false;
    auto [lo, hi] = eigen_range();
    if (!has_theta) return lo >= sigma - tol && hi <= xi + tol;
    for (double th : theta.v) {
      if (!(th > 0)) return false;
      if (th * lo < sigma - tol || th * hi > xi + tol) return false;
    }
    return true;
  }

  double theta_mean() const {
    if (!has_theta) return 1.0;
    double s = 0;
    for (double x : theta.v) s += x;
    return s / double(theta.v.size());
  }

  // quadratic symbol k . A k of the constant part
  double symbol(const std::array<double, 3>& k) const {
    double s = 0;
    for (int i = 0; i < dim; ++i)
      for (int j = 0; j < dim; ++j) s += k[i] * A[i][j] * k[j];
    return s;
  }
};

}  // namespace driftlab
