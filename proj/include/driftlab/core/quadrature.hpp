// Grid reductions (pairwise-summed Riemann sums with the cell measure h^d)
// and 1-D panel quadrature used for time integrals.
#pragma once

#include <cmath>
#include <functional>
#include <span>
#include <stdexcept>
#include <vector>

#include "driftlab/core/field.hpp"

namespace driftlab {

// pairwise summation: deterministic and accurate independent of order
inline double pairwise_sum(std::span<const double> v) {
  if (v.size() <= 16) {
    double s = 0;
    for (double x : v) s += x;
    return s;
  }
  std::size_t half = v.size() / 2;
  return pairwise_sum(v.subspan(0, half)) + pairwise_sum(v.subspan(half));
}

inline double integral(const ScalarField& f) {
  return f.grid.cell_volume() * pairwise_sum(f.v);
}

inline double mean(const ScalarField& f) { return pairwise_sum(f.v) / double(f.size()); }

inline double inner(const ScalarField& f, const ScalarField& g) {
  std::vector<double> prod(f.size());
  for (std::size_t i = 0; i < f.size(); ++i) prod[i] = f[i] * g[i];
  return f.grid.cell_volume() * pairwise_sum(prod);
}

inline double norm2(const ScalarField& f) { return std::sqrt(inner(f, f)); }

inline double norm1(const ScalarField& f) {
  std::vector<double> a(f.size());
  for (std::size_t i = 0; i < f.size(); ++i) a[i] = std::abs(f[i]);
  return f.grid.cell_volume() * pairwise_sum(a);
}

inline double normp(const ScalarField& f, double p) {
  std::vector<double> a(f.size());
  for (std::size_t i = 0; i < f.size(); ++i) a[i] = std::pow(std::abs(f[i]), p);
  return std::pow(f.grid.cell_volume() * pairwise_sum(a), 1.0 / p);
}

inline double norm2(const VectorField& b) {
  std::vector<double> a(b.size());
  for (std::size_t i = 0; i < b.size(); ++i) {
    double m = b.magnitude_at(i);
    a[i] = m * m;
  }
  return std::sqrt(b.grid.cell_volume() * pairwise_sum(a));
}

inline double norm1(const VectorField& b) {
  std::vector<double> a(b.size());
  for (std::size_t i = 0; i < b.size(); ++i) a[i] = b.magnitude_at(i);
  return b.grid.cell_volume() * pairwise_sum(a);
}

// ---------------------------------------------------------------------------
// 1-D quadrature: Gauss-Legendre 4-point panels on geometric subdivisions.
// ---------------------------------------------------------------------------

struct Panel {
  double a, b;
};

// geometric panels covering [lo, hi], per_decade panels per factor of 10
inline std::vector<Panel> geometric_panels(double lo, double hi, int per_decade) {
  if (!(lo > 0) || !(hi > lo)) throw std::invalid_argument("geometric_panels: need 0 < lo < hi");
  double decades = std::log10(hi / lo);
  int m = std::max(1, int(std::ceil(decades * per_decade)));
  double ratio = std::pow(hi / lo, 1.0 / m);
  std::vector<Panel> out;
  out.reserve(m);
  double a = lo;
  for (int i = 0; i < m; ++i) {
    double b = (i + 1 == m) ? hi : a * ratio;
    out.push_back({a, b});
    a = b;
  }
  return out;
}

// graded panels: dense (per_decade_near) for the first `near_decades` decades
// above lo, coarser beyond
inline std::vector<Panel> graded_panels(double lo, double hi, int per_decade_near,
                                        int per_decade_far, double near_decades) {
  double mid = lo * std::pow(10.0, near_decades);
  if (mid >= hi) return geometric_panels(lo, hi, per_decade_near);
  auto out = geometric_panels(lo, mid, per_decade_near);
  auto far = geometric_panels(mid, hi, per_decade_far);
  out.insert(out.end(), far.begin(), far.end());
  return out;
}

// 4-point Gauss-Legendre nodes/weights on [-1, 1]
inline constexpr double kGL4Nodes[4] = {-0.8611363115940526, -0.3399810435848563,
                                        0.3399810435848563, 0.8611363115940526};
inline constexpr double kGL4Weights[4] = {0.3478548451374538, 0.6521451548625461,
                                          0.6521451548625461, 0.3478548451374538};

inline double integrate_panels(const std::function<double(double)>& f,
                               const std::vector<Panel>& panels) {
  std::vector<double> contrib(panels.size() * 4);
  std::size_t j = 0;
  for (const Panel& p : panels) {
    double c = 0.5 * (p.a + p.b), r = 0.5 * (p.b - p.a);
    for (int q = 0; q < 4; ++q) contrib[j++] = r * kGL4Weights[q] * f(c + r * kGL4Nodes[q]);
  }
  return pairwise_sum(contrib);
}

// adaptive Simpson, used by oracle-style 1-D integrals
inline double adaptive_simpson_(const std::function<double(double)>& f, double a, double b,
                                double fa, double fm, double fb, double whole, double tol,
                                int depth) {
  double m = 0.5 * (a + b);
  double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
  double flm = f(lm), frm = f(rm);
  double left = (m - a) / 6.0 * (fa + 4 * flm + fm);
  double right = (b - m) / 6.0 * (fm + 4 * frm + fb);
  if (depth <= 0 || std::abs(left + right - whole) < 15 * tol)
    return left + right + (left + right - whole) / 15.0;
  return adaptive_simpson_(f, a, m, fa, flm, fm, left, tol / 2, depth - 1) +
         adaptive_simpson_(f, m, b, fm, frm, fb, right, tol / 2, depth - 1);
}

inline double adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                               double tol = 1e-10, int depth = 40) {
  double fa = f(a), fb = f(b), fm = f(0.5 * (a + b));
  double whole = (b - a) / 6.0 * (fa + 4 * fm + fb);
  return adaptive_simpson_(f, a, b, fa, fm, fb, whole, tol, depth);
}

}  // namespace driftlab
