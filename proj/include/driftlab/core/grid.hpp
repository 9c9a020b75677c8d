// Periodic spatial lattice and uniform time mesh. Every field in the
// library lives on a Grid; the domain is the torus [-L, L)^d with d in
// {1,2,3}, spacing h = 2L/n, and minimum-image metric.
#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace driftlab {

using Vec3 = std::array<double, 3>;

inline double norm(const Vec3& v) {
  return std::sqrt(v[0] * v[0] + v[1] * v[1] + v[2] * v[2]);
}

struct Grid {
  int dim = 3;          // 1..3
  int n = 0;            // points per axis, even, >= 8
  double half_width = 0;  // L; domain is [-L, L)^dim
  double h = 0;           // 2L/n

  Grid() = default;
  Grid(int dim_, int n_, double half_width_)
      : dim(dim_), n(n_), half_width(half_width_) {
    if (dim < 1 || dim > 3) throw std::invalid_argument("Grid: dim must be 1..3");
    if (n < 8 || n % 2 != 0) throw std::invalid_argument("Grid: n must be even and >= 8");
    if (!(half_width > 0)) throw std::invalid_argument("Grid: half_width must be positive");
    h = 2.0 * half_width / n;
    std::size_t total = 1;
    for (int a = 0; a < dim; ++a) {
      if (total > (std::size_t(1) << 31) / std::size_t(n))
        throw std::invalid_argument("Grid: point count does not fit addressable memory");
      total *= std::size_t(n);
    }
  }

  std::size_t size() const {
    std::size_t total = 1;
    for (int a = 0; a < dim; ++a) total *= std::size_t(n);
    return total;
  }

  double coord(int i) const { return -half_width + h * i; }

  // flat index <-> per-axis indices (row-major, axis 0 slowest)
  std::size_t index(const std::array<int, 3>& ia) const {
    std::size_t idx = 0;
    for (int a = 0; a < dim; ++a) idx = idx * n + std::size_t(ia[a]);
    return idx;
  }
  std::array<int, 3> unindex(std::size_t idx) const {
    std::array<int, 3> ia{0, 0, 0};
    for (int a = dim - 1; a >= 0; --a) {
      ia[a] = int(idx % n);
      idx /= n;
    }
    return ia;
  }
  Vec3 point(std::size_t idx) const {
    auto ia = unindex(idx);
    Vec3 x{0, 0, 0};
    for (int a = 0; a < dim; ++a) x[a] = coord(ia[a]);
    return x;
  }

  // wrap a coordinate difference into [-L, L)
  double min_image(double dx) const {
    const double box = 2.0 * half_width;
    dx = std::fmod(dx, box);
    if (dx < -half_width) dx += box;
    if (dx >= half_width) dx -= box;
    return dx;
  }
  double dist2(const Vec3& a, const Vec3& b) const {
    double s = 0;
    for (int ax = 0; ax < dim; ++ax) {
      double d = min_image(a[ax] - b[ax]);
      s += d * d;
    }
    return s;
  }
  double dist(const Vec3& a, const Vec3& b) const { return std::sqrt(dist2(a, b)); }

  // nearest grid node to a point
  std::size_t nearest_index(const Vec3& x) const {
    std::array<int, 3> ia{0, 0, 0};
    for (int a = 0; a < dim; ++a) {
      double u = (x[a] + half_width) / h;
      int i = int(std::lround(u)) % n;
      if (i < 0) i += n;
      ia[a] = i;
    }
    return index(ia);
  }

  double cell_volume() const {
    double v = 1;
    for (int a = 0; a < dim; ++a) v *= h;
    return v;
  }

  bool operator==(const Grid& o) const {
    return dim == o.dim && n == o.n && half_width == o.half_width;
  }
};

struct TimeGrid {
  double s = 0;      // start time
  double t_end = 0;  // end time
  double dt = 0;     // step
  int steps = 0;

  TimeGrid() = default;
  TimeGrid(double s_, double t_end_, int steps_) : s(s_), t_end(t_end_), steps(steps_) {
    if (!(s >= 0) || !(t_end > s)) throw std::invalid_argument("TimeGrid: need 0 <= s < t_end");
    if (steps < 1) throw std::invalid_argument("TimeGrid: need at least one step");
    dt = (t_end - s) / steps;
  }
  static TimeGrid with_dt(double s_, double t_end_, double dt_) {
    if (!(dt_ > 0)) throw std::invalid_argument("TimeGrid: dt must be positive");
    int m = int(std::ceil((t_end_ - s_) / dt_ - 1e-12));
    return TimeGrid(s_, t_end_, m < 1 ? 1 : m);
  }
  double time(int j) const { return s + dt * j; }
  bool consistent(double tol = 1e-9) const {
    return std::abs(dt * steps - (t_end - s)) <= tol * (t_end - s + 1.0);
  }
};

}  // namespace driftlab
