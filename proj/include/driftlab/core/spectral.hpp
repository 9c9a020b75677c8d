// Spectral differential calculus on the torus: gradient, divergence,
// Laplacian, Bessel fractional powers (lambda - Delta)^s and the heat
// semigroup e^{eps Delta}. Exact on resolved trigonometric modes.
#pragma once

#include <cmath>
#include <stdexcept>

#include "driftlab/core/fft.hpp"

namespace driftlab {

inline void require_finite(const ScalarField& f, const char* who) {
  if (!f.finite()) throw std::invalid_argument(std::string(who) + ": non-finite input rejected");
}

// multiply every mode by a real isotropic symbol fn(|k|^2)
template <typename Fn>
inline ScalarField apply_isotropic_symbol(const ScalarField& f, Fn&& fn) {
  Spectrum spec = fft_forward(f.grid, f.v);
  for_each_mode(f.grid, [&](std::size_t i, const ModeInfo& mi) {
    spec[i] *= fn(k2_of(f.grid, mi));
  });
  ScalarField out(f.grid, 0.0, f.time);
  out.v = fft_backward(f.grid, spec);
  return out;
}

// multiply every mode by a real symbol of the wavevector
template <typename Fn>
inline ScalarField apply_symbol(const ScalarField& f, Fn&& fn) {
  Spectrum spec = fft_forward(f.grid, f.v);
  for_each_mode(f.grid, [&](std::size_t i, const ModeInfo& mi) { spec[i] *= fn(mi); });
  ScalarField out(f.grid, 0.0, f.time);
  out.v = fft_backward(f.grid, spec);
  return out;
}

inline VectorField spectral_gradient(const ScalarField& f) {
  require_finite(f, "spectral_gradient");
  const Grid& g = f.grid;
  Spectrum base = fft_forward(g, f.v);
  VectorField grad(g, f.time);
  const int nyq = g.n / 2;
  Spectrum work(base.size());
  for (int a = 0; a < g.dim; ++a) {
    for_each_mode(g, [&](std::size_t i, const ModeInfo& mi) {
      // i*k multiplier; Nyquist along the derivative axis goes to zero
      double ka = (std::abs(mi.freq[a]) == nyq) ? 0.0 : mi.k[a];
      work[i] = std::complex<double>(0.0, ka) * base[i];
    });
    grad.comp[a] = fft_backward(g, work);
  }
  return grad;
}

inline ScalarField spectral_divergence(const VectorField& bf) {
  const Grid& g = bf.grid;
  const int nyq = g.n / 2;
  Spectrum acc(spectrum_size(g), std::complex<double>(0, 0));
  for (int a = 0; a < g.dim; ++a) {
    Spectrum ca = fft_forward(g, bf.comp[a]);
    for_each_mode(g, [&](std::size_t i, const ModeInfo& mi) {
      double ka = (std::abs(mi.freq[a]) == nyq) ? 0.0 : mi.k[a];
      acc[i] += std::complex<double>(0.0, ka) * ca[i];
    });
  }
  ScalarField out(g, 0.0, bf.time);
  out.v = fft_backward(g, acc);
  return out;
}

inline ScalarField spectral_laplacian(const ScalarField& f) {
  require_finite(f, "spectral_laplacian");
  return apply_isotropic_symbol(f, [](double k2) { return -k2; });
}

// (lambda - Delta)^s: mode k multiplied by (lambda + |k|^2)^s.
// Self-adjoint and positive; s < 0 needs lambda > 0 or a mean-free field.
inline ScalarField frac_power(double lambda, double s, const ScalarField& f) {
  require_finite(f, "frac_power");
  if (lambda < 0) throw std::domain_error("frac_power: lambda must be non-negative");
  if (lambda == 0.0 && s < 0) {
    double mean = 0;
    for (double x : f.v) mean += x;
    mean /= double(f.v.size());
    if (std::abs(mean) > 1e-13 * (f.max_abs() + 1e-300))
      throw std::domain_error("frac_power: lambda = 0 with s < 0 and a zero mode present");
  }
  return apply_isotropic_symbol(f, [&](double k2) {
    double base = lambda + k2;
    if (base <= 0.0) return 0.0;  // zero mode with lambda = 0 and mean-free input
    return std::pow(base, s);
  });
}

// Bessel-norm ||(lambda - Delta)^{alpha/2} v||_2 without forming the field twice
inline double bessel_norm(double lambda, double alpha, const ScalarField& f) {
  Spectrum spec = fft_forward(f.grid, f.v);
  double measure = 1.0;
  for (int a = 0; a < f.grid.dim; ++a) measure *= 2.0 * f.grid.half_width;
  double acc = 0;
  for_each_mode(f.grid, [&](std::size_t i, const ModeInfo& mi) {
    double sym = std::pow(lambda + k2_of(f.grid, mi), alpha);
    acc += mi.weight * sym * std::norm(spec[i]);
  });
  return std::sqrt(measure * acc);
}

struct ClipReport {
  std::size_t clipped_points = 0;
  double clipped_mass = 0;  // h^d * sum of |clipped negative values|
};

// Heat semigroup e^{eps Delta}: mode-wise e^{-eps |k|^2}. Preserves mass
// exactly; negative dust within 1e-12 of the field scale is clipped to zero
// and reported.
inline ScalarField heat_mollify(double eps, const ScalarField& f, ClipReport* report = nullptr) {
  if (!(eps > 0)) throw std::domain_error("heat_mollify: eps must be positive");
  require_finite(f, "heat_mollify");
  ScalarField out = apply_isotropic_symbol(f, [&](double k2) { return std::exp(-eps * k2); });
  const double tol = 1e-12 * (out.max_abs() + 1e-300);
  ClipReport local;
  for (double& x : out.v) {
    if (x < 0 && x >= -tol) {
      local.clipped_points++;
      local.clipped_mass += -x;
      x = 0;
    }
  }
  local.clipped_mass *= f.grid.cell_volume();
  if (report) *report = local;
  return out;
}

inline VectorField heat_mollify(double eps, const VectorField& bf) {
  if (!(eps > 0)) throw std::domain_error("heat_mollify: eps must be positive");
  VectorField out(bf.grid, bf.time);
  for (int a = 0; a < bf.grid.dim; ++a) {
    ScalarField c(bf.grid);
    c.v = bf.comp[a];
    out.comp[a] =
        apply_isotropic_symbol(c, [&](double k2) { return std::exp(-eps * k2); }).v;
  }
  return out;
}

}  // namespace driftlab
