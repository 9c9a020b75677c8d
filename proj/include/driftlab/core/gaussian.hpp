// The Gaussian heat kernel k_c(t,x,y) = (4 pi c t)^{-d/2} exp(-|x-y|^2/(4ct))
// in free space and its torus periodization, plus the closed-form identities
// the verification suite checks against.
//
// Identity checks use the unweighted forms
//     Delta G = |grad G|^2 / G - d/(2 c t) G,
//     ||grad sqrt(G)||_2 = sqrt(d / (8 c t)),
//     < (|x-o|^2 / (4 c t)) G > = c t <Delta G> + (d/2) <G>.
// The ellipticity-weighted variant <grad G . a . grad G / G> is an upper
// bound xi * d/(2ct), not an identity, and is not asserted as one.
#pragma once

#include <cmath>

#include "driftlab/core/field.hpp"
#include "driftlab/core/grid.hpp"

namespace driftlab {

// free-space kernel value
inline double gaussian_kernel_free(double c, double t, double r2, int d) {
  if (!(c > 0) || !(t > 0)) throw std::domain_error("gaussian_kernel: need c > 0 and t > 0");
  double ct = c * t;
  return std::pow(4.0 * M_PI * ct, -0.5 * d) * std::exp(-r2 / (4.0 * ct));
}

// 1-D periodized Gaussian factor: sum over images until the added term
// drops below 1e-14 of the running sum
inline double periodized_gaussian_1d(double ct, double dx, double L) {
  const double box = 2.0 * L;
  dx = std::fmod(dx, box);
  if (dx < -L) dx += box;
  if (dx >= L) dx -= box;
  double inv = 1.0 / (4.0 * ct);
  double sum = std::exp(-dx * dx * inv);
  for (int m = 1; m < 64; ++m) {
    double t1 = std::exp(-(dx + box * m) * (dx + box * m) * inv);
    double t2 = std::exp(-(dx - box * m) * (dx - box * m) * inv);
    sum += t1 + t2;
    if (t1 + t2 < 1e-14 * sum) break;
  }
  return std::pow(4.0 * M_PI * ct, -0.5) * sum;
}

// periodized kernel at a pair of points (factorizes over axes)
inline double gaussian_kernel(double c, double t, const Vec3& x, const Vec3& y, int d,
                              double half_width) {
  if (!(c > 0) || !(t > 0)) throw std::domain_error("gaussian_kernel: need c > 0 and t > 0");
  double val = 1.0;
  for (int a = 0; a < d; ++a) val *= periodized_gaussian_1d(c * t, x[a] - y[a], half_width);
  return val;
}

inline double gaussian_kernel(double c, double t, const Vec3& x, const Vec3& y,
                              const Grid& g) {
  return gaussian_kernel(c, t, x, y, g.dim, g.half_width);
}

// periodized Gaussian sampled on the grid; O(n) per axis then outer product
inline ScalarField gaussian_field(const Grid& g, double c, double t, const Vec3& center) {
  if (!(c > 0) || !(t > 0)) throw std::domain_error("gaussian_field: need c > 0 and t > 0");
  std::array<std::vector<double>, 3> axis;
  for (int a = 0; a < g.dim; ++a) {
    axis[a].resize(g.n);
    for (int i = 0; i < g.n; ++i)
      axis[a][i] = periodized_gaussian_1d(c * t, g.coord(i) - center[a], g.half_width);
  }
  ScalarField out(g);
  for (std::size_t idx = 0; idx < g.size(); ++idx) {
    auto ia = g.unindex(idx);
    double v = 1.0;
    for (int a = 0; a < g.dim; ++a) v *= axis[a][ia[a]];
    out[idx] = v;
  }
  return out;
}

// closed forms for the exact free kernel, used as oracles
inline double gaussian_entropy(double c, double t, int d) {
  // -<k log k> for the normalized kernel
  return 0.5 * d * std::log(4.0 * M_PI * c * t) + 0.5 * d;
}

inline double gaussian_grad_sqrt_norm(double c, double t, int d) {
  // ||grad sqrt(k_c(t))||_2
  return std::sqrt(d / (8.0 * c * t));
}

}  // namespace driftlab
