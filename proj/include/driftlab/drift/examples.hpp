// Built-in example fields:
//   constant        b = v
//   hardy           b = kappa x/|x|^2           (d = 3)
//   rotational_bmo  b = c (-x2, x1, 0)/|x|^2    (= grad of the skew matrix
//                   with entries +- c log|x|; divergence-free)
//   mprime          b with div b = W - mean(W) for a compactly supported W,
//                   via spectral inversion of the Laplacian
//   kato_plane      b = (phi1 |x2|^{eps-1}, phi2 |x1|^{eps-1}, 0): Kato-class
//                   field that leaves L^2_loc as eps < 1
//   lps_demo        b(t,x) = t^{-1/4} phi(x) e1
// Singular cells are replaced by subsampled cell averages.
#pragma once

#include <cmath>
#include <memory>

#include "driftlab/core/gaussian.hpp"
#include "driftlab/core/spectral.hpp"
#include "driftlab/drift/drift_spec.hpp"
#include "driftlab/drift/kato.hpp"

namespace driftlab {

inline DriftSpec constant_field(const Vec3& v) {
  PointwiseRule rule;
  rule.eval = [v](double, const Vec3&) { return v; };
  DriftSpec spec = make_pointwise_drift("constant", rule, true);
  spec.has_div_split = true;
  spec.div_split = [](double t, const Grid& g) {
    return std::make_pair(ScalarField(g, 0.0, t), ScalarField(g, 0.0, t));
  };
  return spec;
}

inline DriftSpec hardy_field(double kappa) {
  PointwiseRule rule;
  rule.eval = [kappa](double, const Vec3& x) {
    double r2 = x[0] * x[0] + x[1] * x[1] + x[2] * x[2];
    if (r2 == 0) return Vec3{0, 0, 0};
    return Vec3{kappa * x[0] / r2, kappa * x[1] / r2, kappa * x[2] / r2};
  };
  rule.singular_cell = [](const Vec3& x, double h) {
    return std::abs(x[0]) <= 0.5 * h && std::abs(x[1]) <= 0.5 * h && std::abs(x[2]) <= 0.5 * h;
  };
  DriftSpec spec = make_pointwise_drift("hardy", rule);
  spec.claims.push_back({"kappa", kappa});
  return spec;
}

// |b| = kappa/|x| as a non-negative potential-style magnitude field
inline ScalarField hardy_magnitude(const Grid& g, double kappa) {
  ScalarField out(g);
  for (std::size_t i = 0; i < g.size(); ++i) {
    Vec3 x = g.point(i);
    double r = std::sqrt(x[0] * x[0] + x[1] * x[1] + x[2] * x[2]);
    if (r < 0.5 * g.h) {
      // cell average of 1/r by local radial quadrature: the cell is close to
      // the ball of equal volume, for which the average is 3/(2 r_eq)
      double r_eq = g.h * std::pow(3.0 / (4.0 * M_PI), 1.0 / 3.0);
      out[i] = kappa * 1.5 / r_eq;
    } else {
      out[i] = kappa / r;
    }
  }
  return out;
}

// inverse-square potential kappa^2/|x|^2 with subsampled singular cell
inline ScalarField inverse_square_potential(const Grid& g, double kappa) {
  ScalarField out(g);
  for (std::size_t i = 0; i < g.size(); ++i) {
    Vec3 x = g.point(i);
    double r2 = x[0] * x[0] + x[1] * x[1] + x[2] * x[2];
    if (r2 < 0.25 * g.h * g.h) {
      // average of r^{-2} over the equal-volume ball: 3/r_eq^2
      double r_eq = g.h * std::pow(3.0 / (4.0 * M_PI), 1.0 / 3.0);
      out[i] = kappa * kappa * 3.0 / (r_eq * r_eq);
    } else {
      out[i] = kappa * kappa / r2;
    }
  }
  return out;
}

inline DriftSpec rotational_bmo_field(double c) {
  PointwiseRule rule;
  rule.eval = [c](double, const Vec3& x) {
    double r2 = x[0] * x[0] + x[1] * x[1] + x[2] * x[2];
    if (r2 == 0) return Vec3{0, 0, 0};
    return Vec3{-c * x[1] / r2, c * x[0] / r2, 0.0};
  };
  rule.singular_cell = [](const Vec3& x, double h) {
    return std::abs(x[0]) <= 0.5 * h && std::abs(x[1]) <= 0.5 * h;
  };
  DriftSpec spec = make_pointwise_drift("rotational_bmo", rule, true);
  spec.has_div_split = true;
  spec.div_split = [](double t, const Grid& g) {
    return std::make_pair(ScalarField(g, 0.0, t), ScalarField(g, 0.0, t));
  };
  spec.claims.push_back({"bmo_scale", c});
  return spec;
}

// the skew BMO matrix behind rotational_bmo: B_{01} = -B_{10} = c log|x|
inline ScalarField log_radius_field(const Grid& g, double c) {
  ScalarField out(g);
  for (std::size_t i = 0; i < g.size(); ++i) {
    Vec3 x = g.point(i);
    double r = std::sqrt(x[0] * x[0] + x[1] * x[1] + x[2] * x[2]);
    out[i] = c * std::log(std::max(r, 0.25 * g.h));
  }
  return out;
}

struct MprimeField {
  DriftSpec drift;
  ScalarField W_centered;  // W - mean(W); equals div b exactly
  double mean_fraction = 0;
  bool torus_distortion_warning = false;
};

// b = grad Delta^{-1} (W - mean W): div b = W - mean W by construction
inline MprimeField mprime_field(const ScalarField& W) {
  const Grid g = W.grid;
  double wbar = mean(W);
  ScalarField Wc(g);
  for (std::size_t i = 0; i < g.size(); ++i) Wc[i] = W[i] - wbar;

  Spectrum ws = fft_forward(g, Wc.v);
  // potential = Delta^{-1} Wc (zero mode removed)
  for_each_mode(g, [&](std::size_t i, const ModeInfo& mi) {
    double k2 = k2_of(g, mi);
    ws[i] = (k2 > 0) ? ws[i] / (-k2) : 0.0;
  });
  ScalarField phi(g);
  phi.v = fft_backward(g, ws);
  VectorField bf = spectral_gradient(phi);

  MprimeField out;
  out.W_centered = Wc;
  out.mean_fraction = std::abs(wbar) / (norm1(W) + 1e-300);
  out.torus_distortion_warning = out.mean_fraction > 0.1;

  auto shared = std::make_shared<VectorField>(std::move(bf));
  auto wc_shared = std::make_shared<ScalarField>(Wc);
  DriftSpec spec;
  spec.name = "mprime";
  spec.eval = [shared](double t, const Grid& gq) {
    if (!(gq == shared->grid)) throw std::invalid_argument("mprime drift: grid mismatch");
    VectorField copy = *shared;
    copy.time = t;
    return copy;
  };
  spec.has_div_split = true;
  spec.div_split = [wc_shared](double t, const Grid& gq) {
    ScalarField plus(gq, 0.0, t), minus(gq, 0.0, t);
    for (std::size_t i = 0; i < gq.size(); ++i) {
      double w = (*wc_shared)[i];
      if (w > 0) plus[i] = w;
      else minus[i] = -w;
    }
    return std::make_pair(plus, minus);
  };
  out.drift = spec;
  return out;
}

inline ScalarField ball_indicator(const Grid& g, double radius, double amplitude = 1.0,
                                  const Vec3& center = {0, 0, 0}) {
  // cell-averaged indicator: boundary cells get their covered fraction by
  // subsampling, interior cells are exact
  ScalarField out(g);
  const int sub = 4;
  for (std::size_t i = 0; i < g.size(); ++i) {
    Vec3 x = g.point(i);
    double r = g.dist(x, center);
    double margin = 0.5 * g.h * std::sqrt(double(g.dim));
    if (r <= radius - margin) {
      out[i] = amplitude;
    } else if (r >= radius + margin) {
      out[i] = 0.0;
    } else {
      std::size_t cnt = 1, hits = 0;
      for (int a = 0; a < g.dim; ++a) cnt *= sub;
      for (std::size_t s = 0; s < cnt; ++s) {
        std::size_t rem = s;
        Vec3 y = x;
        for (int a = 0; a < g.dim; ++a) {
          int ia = int(rem % sub);
          rem /= sub;
          y[a] = x[a] + (-0.5 + (ia + 0.5) / sub) * g.h;
        }
        if (g.dist(y, center) <= radius) ++hits;
      }
      out[i] = amplitude * double(hits) / double(cnt);
    }
  }
  return out;
}

// smooth compactly supported bump, 1 near the center
inline double smooth_bump(double r, double radius) {
  double s = r / radius;
  if (s >= 1.0) return 0.0;
  if (s <= 0.5) return 1.0;
  return 0.5 * (1.0 + std::cos(M_PI * (s - 0.5) / 0.5));
}

// field (phi1(x)|x2|^{eps-1}, phi2(x)|x1|^{eps-1}, 0, ...)
inline DriftSpec kato_plane_field(double eps, double bump_radius) {
  if (!(eps > 0) || eps > 1) throw std::invalid_argument("kato_plane_field: eps in (0, 1]");
  PointwiseRule rule;
  rule.eval = [eps, bump_radius](double, const Vec3& x) {
    double r = norm(x);
    double phi = smooth_bump(r, bump_radius);
    double b1 = (x[1] == 0) ? 0.0 : phi * std::pow(std::abs(x[1]), eps - 1.0);
    double b2 = (x[0] == 0) ? 0.0 : phi * std::pow(std::abs(x[0]), eps - 1.0);
    return Vec3{b1, b2, 0.0};
  };
  rule.singular_cell = [eps](const Vec3& x, double h) {
    if (eps >= 1.0) return false;
    return std::abs(x[0]) <= 0.5 * h || std::abs(x[1]) <= 0.5 * h;
  };
  DriftSpec spec = make_pointwise_drift("kato_plane", rule);
  spec.claims.push_back({"eps", eps});
  // expected behavior: Kato estimate stabilizes under refinement, local L^2
  // mass near the singular planes diverges as h -> 0
  return spec;
}

inline DriftSpec lps_demo_field(double amplitude, double bump_radius) {
  PointwiseRule rule;
  rule.eval = [amplitude, bump_radius](double t, const Vec3& x) {
    double phi = smooth_bump(norm(x), bump_radius);
    double scale = amplitude * ((t > 0) ? std::pow(t, -0.25) : 0.0);
    return Vec3{scale * phi, 0.0, 0.0};
  };
  DriftSpec spec = make_pointwise_drift("lps_demo", rule);
  spec.t_begin = 1e-8;  // the t^{-1/4} profile needs t > 0
  return spec;
}

}  // namespace driftlab
