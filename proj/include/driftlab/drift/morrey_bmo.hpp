// Scaling-invariant Morrey functional over balls and the BMO mean-
// oscillation functional over dyadic cubes. Both are suprema over finite
// center/radius (resp. cube) families: certified lower bounds.
#pragma once

#include <cmath>
#include <vector>

#include "driftlab/core/quadrature.hpp"
#include "driftlab/drift/drift_spec.hpp"

namespace driftlab {

// r * ( |B_r|^{-1} int_{B_r} |b|^{1+eps} )^{1/(1+eps)}, sup over centers x radii.
// Balls use the minimum-image metric; radii beyond the injectivity radius L/2
// are excluded.
inline double morrey_norm(const DriftSpec& b, double t, const Grid& g, double eps,
                          const std::vector<Vec3>& centers, const std::vector<double>& radii) {
  if (!(eps > 0)) throw std::invalid_argument("morrey_norm: eps must be positive");
  ScalarField mag = b.sample(t, g).magnitude();
  double p = 1.0 + eps;
  double best = 0;
  for (const Vec3& c : centers) {
    for (double r : radii) {
      if (r <= 2 * g.h || r >= 0.5 * g.half_width) continue;  // excluded by contract
      double acc = 0;
      std::size_t cells = 0;
      double r2 = r * r;
      for (std::size_t i = 0; i < g.size(); ++i) {
        if (g.dist2(g.point(i), c) <= r2) {
          acc += std::pow(mag[i], p);
          ++cells;
        }
      }
      if (cells == 0) continue;
      double mean_p = acc / double(cells);  // discrete |B_r|^{-1} int
      best = std::max(best, r * std::pow(mean_p, 1.0 / p));
    }
  }
  return best;
}

inline std::vector<double> default_morrey_radii(const Grid& g, int count = 8) {
  std::vector<double> radii;
  double lo = 2.5 * g.h, hi = 0.45 * g.half_width;
  for (int i = 0; i < count; ++i)
    radii.push_back(lo * std::pow(hi / lo, double(i) / (count - 1)));
  return radii;
}

// sup over dyadic cubes (side in [4h, L], aligned partitions per level) of
// |Q|^{-1} int_Q |F - mean_Q F|
inline double bmo_norm(const ScalarField& F) {
  const Grid& g = F.grid;
  double best = 0;
  for (int side_cells = g.n / 2; side_cells >= 4; side_cells /= 2) {
    if (side_cells * g.h > g.half_width + 1e-12) continue;  // side capped at L
    int blocks = g.n / side_cells;
    // iterate aligned cubes of this level
    std::array<int, 3> nb{1, 1, 1};
    for (int a = 0; a < g.dim; ++a) nb[a] = blocks;
    for (int bx = 0; bx < nb[0]; ++bx)
      for (int by = 0; by < nb[1]; ++by)
        for (int bz = 0; bz < nb[2]; ++bz) {
          double sum = 0;
          std::size_t cnt = 0;
          std::array<int, 3> base{bx * side_cells, by * side_cells, bz * side_cells};
          std::array<int, 3> ext{1, 1, 1};
          for (int a = 0; a < g.dim; ++a) ext[a] = side_cells;
          for (int ix = 0; ix < ext[0]; ++ix)
            for (int iy = 0; iy < ext[1]; ++iy)
              for (int iz = 0; iz < ext[2]; ++iz) {
                std::array<int, 3> ia{base[0] + ix, base[1] + iy, base[2] + iz};
                sum += F[g.index(ia)];
                ++cnt;
              }
          double mean_q = sum / double(cnt);
          double osc = 0;
          for (int ix = 0; ix < ext[0]; ++ix)
            for (int iy = 0; iy < ext[1]; ++iy)
              for (int iz = 0; iz < ext[2]; ++iz) {
                std::array<int, 3> ia{base[0] + ix, base[1] + iy, base[2] + iz};
                osc += std::abs(F[g.index(ia)] - mean_q);
              }
          best = std::max(best, osc / double(cnt));
        }
  }
  return best;
}

}  // namespace driftlab
