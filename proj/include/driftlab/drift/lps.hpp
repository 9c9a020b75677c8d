// Critical Ladyzhenskaya-Prodi-Serrin split. For d/q + 2/p = 1 (Young's
// inequality with exponents q/d and p/2):
//   |b(t,x)| <= (d/q) (|b|^q / <|b(t)|^q>)^{1/d} + (2/p) <|b(t)|^q>^{p/(2q)}
// The first part has ||.||_{L^d} = d/q at every t; the second is a scalar
// function of t whose L^2-in-time norm is finite exactly when b is in the
// critical class.
#pragma once

#include <cmath>
#include <vector>

#include "driftlab/core/quadrature.hpp"
#include "driftlab/drift/drift_spec.hpp"

namespace driftlab {

struct LpsSplit {
  std::vector<double> times;
  std::vector<ScalarField> part1;     // pointwise field per time
  std::vector<double> part2;          // scalar per time
  double part1_sup_ld = 0;            // sup_t ||part1(t)||_d
  double part2_l2_time = 0;           // (int part2(t)^2 dt)^{1/2}
  double worst_domination_gap = 0;    // max over (t,x) of |b| - part1 - part2
};

inline LpsSplit lps_split(const DriftSpec& b, const Grid& g, const std::vector<double>& times,
                          double p, double q) {
  const bool p_inf = std::isinf(p) || p > 1e6;  // p = infinity: q = d branch only
  if (!(p >= 2) || !(q >= g.dim)) throw std::invalid_argument("lps_split: need p >= 2, q >= d");
  if (!p_inf && g.dim / q + 2.0 / p > 1.0 + 1e-12)
    throw std::invalid_argument("lps_split: (p, q) must satisfy d/q + 2/p <= 1");
  if (p_inf && std::abs(q - g.dim) > 1e-12)
    throw std::invalid_argument("lps_split: the p = infinity limit needs q = d");
  const double d = g.dim;
  LpsSplit out;
  out.times = times;
  std::vector<double> p2sq;
  for (double t : times) {
    ScalarField mag = b.sample(t, g).magnitude();
    std::vector<double> mq(g.size());
    for (std::size_t i = 0; i < g.size(); ++i) mq[i] = std::pow(mag[i], q);
    double intq = g.cell_volume() * pairwise_sum(mq);  // <|b(t)|^q>
    ScalarField p1(g, 0.0, t);
    double p2 = 0;
    if (intq > 0) {
      for (std::size_t i = 0; i < g.size(); ++i)
        p1[i] = (d / q) * std::pow(mq[i] / intq, 1.0 / d);
      p2 = p_inf ? 0.0 : (2.0 / p) * std::pow(std::pow(intq, 1.0 / q), 0.5 * p);
    }
    double gap = 0;
    for (std::size_t i = 0; i < g.size(); ++i) {
      // degenerate branch: |b| = part1 * <|b|^q>^{1/q} is an identity
      double dominator = p_inf ? p1[i] * std::pow(intq, 1.0 / q) : p1[i] + p2;
      gap = std::max(gap, mag[i] - dominator);
    }
    out.worst_domination_gap = std::max(out.worst_domination_gap, gap);
    out.part1_sup_ld = std::max(out.part1_sup_ld, normp(p1, d));
    p2sq.push_back(p2 * p2);
    out.part1.push_back(std::move(p1));
    out.part2.push_back(p2);
  }
  // trapezoid in time for the L^2(L^inf) norm of part 2
  double acc = 0;
  for (std::size_t j = 1; j < times.size(); ++j)
    acc += 0.5 * (p2sq[j] + p2sq[j - 1]) * (times[j] - times[j - 1]);
  out.part2_l2_time = std::sqrt(acc);
  return out;
}

}  // namespace driftlab
