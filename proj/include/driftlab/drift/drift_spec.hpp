// DriftSpec: a vector field b(t,x) given by a closed-form rule or by
// time-major samples, with an optional non-negative divergence split
// (div b)_+ / (div b)_-. Samplers average singular cells by local
// subsampling so grid estimates stay finite and refinement-consistent.
#pragma once

#include <functional>
#include <limits>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "driftlab/core/field.hpp"
#include "driftlab/core/grid.hpp"
#include "driftlab/core/quadrature.hpp"
#include "driftlab/core/spectral.hpp"

namespace driftlab {

// pointwise rule plus the set of cells that need subsampled averaging
struct PointwiseRule {
  std::function<Vec3(double t, const Vec3&)> eval;
  // returns true if the cell centered at x (side h) contains a singularity
  std::function<bool(const Vec3&, double h)> singular_cell;
};

inline Vec3 subsampled_cell_average(const PointwiseRule& rule, double t, const Vec3& center,
                                    double h, int dim, int per_axis = 12) {
  Vec3 acc{0, 0, 0};
  std::size_t count = 1;
  for (int a = 0; a < dim; ++a) count *= std::size_t(per_axis);
  for (std::size_t s = 0; s < count; ++s) {
    std::size_t rem = s;
    Vec3 x = center;
    for (int a = 0; a < dim; ++a) {
      int ia = int(rem % per_axis);
      rem /= per_axis;
      x[a] = center[a] + (-0.5 + (ia + 0.5) / per_axis) * h;
    }
    Vec3 v = rule.eval(t, x);
    for (int a = 0; a < dim; ++a) acc[a] += v[a];
  }
  for (int a = 0; a < dim; ++a) acc[a] /= double(count);
  return acc;
}

struct DriftSpec {
  std::string name = "unnamed";
  // fills b(t) on the grid
  std::function<VectorField(double t, const Grid&)> eval;
  // optional: fills the non-negative parts of div b
  std::function<std::pair<ScalarField, ScalarField>(double t, const Grid&)> div_split;
  bool has_div_split = false;
  bool divergence_free = false;
  double t_begin = 0;
  double t_end = std::numeric_limits<double>::infinity();
  // claimed class metadata, free-form
  std::vector<std::pair<std::string, double>> claims;

  VectorField sample(double t, const Grid& g) const {
    if (t < t_begin || t > t_end) {
      VectorField zero(g, t);
      return zero;  // b vanishes outside its time support
    }
    return eval(t, g);
  }

  std::pair<ScalarField, ScalarField> sample_div_split(double t, const Grid& g) const {
    if (!has_div_split) throw std::logic_error("DriftSpec: no divergence split available");
    if (t < t_begin || t > t_end) return {ScalarField(g, 0.0, t), ScalarField(g, 0.0, t)};
    return div_split(t, g);
  }

  double sup_magnitude(const Grid& g, const std::vector<double>& times) const {
    double m = 0;
    for (double t : times) m = std::max(m, sample(t, g).max_magnitude());
    return m;
  }
};

inline DriftSpec make_pointwise_drift(std::string name, PointwiseRule rule,
                                      bool div_free = false) {
  DriftSpec spec;
  spec.name = std::move(name);
  spec.divergence_free = div_free;
  spec.eval = [rule](double t, const Grid& g) {
    VectorField out(g, t);
    for (std::size_t i = 0; i < g.size(); ++i) {
      Vec3 x = g.point(i);
      Vec3 v = (rule.singular_cell && rule.singular_cell(x, g.h))
                   ? subsampled_cell_average(rule, t, x, g.h, g.dim)
                   : rule.eval(t, x);
      for (int a = 0; a < g.dim; ++a) out.comp[a][i] = v[a];
    }
    return out;
  };
  return spec;
}

// time-major sampled drift with linear interpolation between slices
struct SampledDrift {
  Grid grid;
  std::vector<double> times;             // ascending
  std::vector<VectorField> slices;       // one per time
  VectorField at(double t) const {
    if (times.empty()) throw std::logic_error("SampledDrift: empty");
    if (t <= times.front()) return slices.front();
    if (t >= times.back()) return slices.back();
    std::size_t j = 1;
    while (times[j] < t) ++j;
    double w = (t - times[j - 1]) / (times[j] - times[j - 1]);
    VectorField out(grid, t);
    for (int a = 0; a < grid.dim; ++a)
      for (std::size_t i = 0; i < grid.size(); ++i)
        out.comp[a][i] = (1 - w) * slices[j - 1].comp[a][i] + w * slices[j].comp[a][i];
    return out;
  }
};

inline DriftSpec make_sampled_drift(std::string name, std::shared_ptr<SampledDrift> data) {
  DriftSpec spec;
  spec.name = std::move(name);
  if (!data->times.empty()) {
    spec.t_begin = 0;  // zero-extension below the first sample is the caller's contract
    spec.t_end = std::numeric_limits<double>::infinity();
  }
  spec.eval = [data](double t, const Grid& g) {
    if (!(g == data->grid))
      throw std::invalid_argument("sampled drift queried on a different grid");
    return data->at(t);
  };
  return spec;
}

// check that the declared split matches the numeric divergence in L^1
struct DivSplitCheck {
  double l1_discrepancy = 0;
  double l1_scale = 0;
  bool parts_nonnegative = true;
  bool ok(double tol) const {
    return parts_nonnegative && l1_discrepancy <= tol * (l1_scale + 1e-300);
  }
};

inline DivSplitCheck validate_div_split(const DriftSpec& spec, double t, const Grid& g) {
  DivSplitCheck chk;
  auto [plus, minus] = spec.sample_div_split(t, g);
  for (double v : plus.v) chk.parts_nonnegative &= (v >= 0);
  for (double v : minus.v) chk.parts_nonnegative &= (v >= 0);
  ScalarField div = spectral_divergence(spec.sample(t, g));
  ScalarField diff(g);
  for (std::size_t i = 0; i < g.size(); ++i) diff[i] = plus[i] - minus[i] - div[i];
  chk.l1_discrepancy = norm1(diff);
  chk.l1_scale = norm1(div) + norm1(plus) + norm1(minus);
  return chk;
}

}  // namespace driftlab
