// FFTW-backed real<->complex transforms on the periodic grid, with a
// process-wide plan cache. All library FFT traffic is serialized behind
// one mutex: plans are reused, results are deterministic.
//
// Conventions: forward() returns DFT coefficients divided by the point
// count, so the k=0 coefficient equals the field mean. Wavenumbers are
// k_a = f_a * pi / L with integer frequency f_a in [-n/2, n/2).
#pragma once

#include <fftw3.h>

#include <complex>
#include <map>
#include <mutex>
#include <vector>

#include "driftlab/core/field.hpp"
#include "driftlab/core/grid.hpp"

namespace driftlab {
namespace detail {

struct PlanSet {
  fftw_plan r2c = nullptr;
  fftw_plan c2r = nullptr;
  double* rbuf = nullptr;
  fftw_complex* cbuf = nullptr;
  std::size_t rsize = 0, csize = 0;

  PlanSet(int dim, int n) {
    int dims[3] = {n, n, n};
    rsize = 1;
    for (int a = 0; a < dim; ++a) rsize *= std::size_t(n);
    csize = rsize / std::size_t(n) * std::size_t(n / 2 + 1);
    rbuf = fftw_alloc_real(rsize);
    cbuf = fftw_alloc_complex(csize);
    r2c = fftw_plan_dft_r2c(dim, dims, rbuf, cbuf, FFTW_ESTIMATE);
    c2r = fftw_plan_dft_c2r(dim, dims, cbuf, rbuf, FFTW_ESTIMATE);
  }
  ~PlanSet() {
    fftw_destroy_plan(r2c);
    fftw_destroy_plan(c2r);
    fftw_free(rbuf);
    fftw_free(cbuf);
  }
  PlanSet(const PlanSet&) = delete;
  PlanSet& operator=(const PlanSet&) = delete;
};

inline std::mutex& fft_mutex() {
  static std::mutex m;
  return m;
}

inline PlanSet& plans_for(int dim, int n) {
  static std::map<std::pair<int, int>, PlanSet*> cache;
  auto key = std::make_pair(dim, n);
  auto it = cache.find(key);
  if (it == cache.end()) it = cache.emplace(key, new PlanSet(dim, n)).first;
  return *it->second;
}

}  // namespace detail

using Spectrum = std::vector<std::complex<double>>;

// number of retained complex coefficients for a real field on g
inline std::size_t spectrum_size(const Grid& g) {
  std::size_t s = 1;
  for (int a = 0; a < g.dim - 1; ++a) s *= std::size_t(g.n);
  return s * std::size_t(g.n / 2 + 1);
}

inline Spectrum fft_forward(const Grid& g, const std::vector<double>& f) {
  std::lock_guard<std::mutex> lock(detail::fft_mutex());
  auto& ps = detail::plans_for(g.dim, g.n);
  for (std::size_t i = 0; i < ps.rsize; ++i) ps.rbuf[i] = f[i];
  fftw_execute(ps.r2c);
  Spectrum out(ps.csize);
  const double scale = 1.0 / double(ps.rsize);
  for (std::size_t i = 0; i < ps.csize; ++i)
    out[i] = std::complex<double>(ps.cbuf[i][0] * scale, ps.cbuf[i][1] * scale);
  return out;
}

inline std::vector<double> fft_backward(const Grid& g, const Spectrum& spec) {
  std::lock_guard<std::mutex> lock(detail::fft_mutex());
  auto& ps = detail::plans_for(g.dim, g.n);
  for (std::size_t i = 0; i < ps.csize; ++i) {
    ps.cbuf[i][0] = spec[i].real();
    ps.cbuf[i][1] = spec[i].imag();
  }
  fftw_execute(ps.c2r);
  return std::vector<double>(ps.rbuf, ps.rbuf + ps.rsize);
}

// One retained mode of the half-spectrum. freq holds the signed integer
// frequencies; a frequency of n/2 is the (self-paired) Nyquist mode, which
// odd-order multipliers must send to zero to keep c2r output real.
struct ModeInfo {
  std::array<double, 3> k{0, 0, 0};
  std::array<int, 3> freq{0, 0, 0};
  double weight = 1.0;  // Hermitian multiplicity in Parseval sums
  bool any_nyquist = false;
};

template <typename Fn>
inline void for_each_mode(const Grid& g, Fn&& fn) {
  const int n = g.n;
  const int nc = n / 2 + 1;
  const double k0 = M_PI / g.half_width;
  ModeInfo mi;
  std::size_t rows = 1;
  for (int a = 0; a < g.dim - 1; ++a) rows *= std::size_t(n);
  for (std::size_t r = 0; r < rows; ++r) {
    std::size_t rem = r;
    bool row_nyq = false;
    for (int a = g.dim - 2; a >= 0; --a) {
      int m = int(rem % n);
      rem /= n;
      int f = (m <= n / 2) ? m : m - n;
      mi.freq[a] = f;
      mi.k[a] = k0 * f;
      row_nyq |= (f == n / 2);
    }
    for (int mz = 0; mz < nc; ++mz) {
      mi.freq[g.dim - 1] = mz;
      mi.k[g.dim - 1] = k0 * mz;
      mi.weight = (mz == 0 || mz == n / 2) ? 1.0 : 2.0;
      mi.any_nyquist = row_nyq || (mz == n / 2);
      fn(r * nc + mz, mi);
    }
  }
}

inline double k2_of(const Grid& g, const ModeInfo& mi) {
  double s = 0;
  for (int a = 0; a < g.dim; ++a) s += mi.k[a] * mi.k[a];
  return s;
}

}  // namespace driftlab
