// Numeric estimators for the vector-field class functionals:
//
//   multiplicative class     |<b psi, psi>|  <= delta ||grad psi|| ||psi|| + g(t) ||psi||^2
//   multiplicative form bd.  <|b| psi, psi>  <= delta ||grad psi|| ||psi|| + g(t) ||psi||^2
//   weak form-bound          || |b|^{1/2} psi ||^2 <= delta ||(lambda-Delta)^{1/4} psi||^2
//   form-bounded potential   <V psi, psi>    <= nu ||grad psi||^2 + h(t) ||psi||^2
//
// All suprema run over finite explicit families, so every estimate is a
// certified lower bound on the true constant. The (delta, g) split is
// under-determined; policy: g is pinned first by extrapolating the pairing
// ratio of wide canonical bumps to the zero-dilation limit (plus the floor
// forced by any gradient-free member), then delta is the supremum of the
// remainder.
#pragma once

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "driftlab/core/quadrature.hpp"
#include "driftlab/core/spectral.hpp"
#include "driftlab/drift/drift_spec.hpp"
#include "driftlab/drift/test_functions.hpp"

namespace driftlab {

struct MemberEval {
  double pairing = 0;    // |<b psi,psi>| or <|b| psi,psi> or <V psi,psi>
  double grad_norm = 0;  // ||grad psi||_2
  double norm = 0;       // ||psi||_2
  std::string label;
};

struct BoundEstimate {
  double delta_hat = 0;
  double g_hat = 0;
  std::vector<MemberEval> members;
  std::vector<std::string> warnings;
};

namespace detail {

// g policy: on pairs of concentric Gaussian bumps, extrapolate the pairing
// ratio a/||psi||^2 to the zero-dilation limit (linearly in the ratio
// rho = ||grad psi||/||psi|| for the multiplicative forms, in rho^2 for the
// quadratic form). A scaling-covariant field extrapolates to ~0, a constant
// field to its amplitude exactly. The narrow pair probes the scaling regime,
// the wide pair the box-filling regime; taking the min of the two intercepts
// keeps g from absorbing mass that belongs to delta.
template <typename PairingFn>
double estimate_g(const Grid& g, PairingFn&& pairing, bool quadratic) {
  double gf = 0;
  const double L = g.half_width;
  std::vector<Vec3> centers = {{0, 0, 0}, {0.31 * L, -0.22 * L, 0.11 * L}};
  const std::pair<double, double> scales[2] = {{L / 4.0, L / 8.0}, {L / 2.5, L / 4.0}};
  for (const Vec3& c : centers) {
    double per_center = std::numeric_limits<double>::infinity();
    for (auto [w1, w2] : scales) {
      TestFunction narrow{TestFunction::Kind::gaussian, c, w2};
      TestFunction wide{TestFunction::Kind::gaussian, c, w1};
      ScalarField p1 = narrow.sample(g), p2 = wide.sample(g);
      double v1 = pairing(p1) / inner(p1, p1);
      double v2 = pairing(p2) / inner(p2, p2);
      double r1 = norm2(spectral_gradient(p1)) / norm2(p1);
      double r2 = norm2(spectral_gradient(p2)) / norm2(p2);
      if (quadratic) {
        r1 *= r1;
        r2 *= r2;
      }
      double v0 = (r1 == r2) ? v2 : v2 - r2 * (v1 - v2) / (r1 - r2);
      per_center = std::min(per_center, std::max(0.0, v0));
    }
    gf = std::max(gf, per_center);
  }
  return gf;
}

template <typename PairingFn>
BoundEstimate multiplicative_estimate(const Grid& g, PairingFn&& pairing,
                                      const TestFunctionFamily& fam) {
  BoundEstimate est;
  est.g_hat = estimate_g(g, pairing, /*quadratic=*/false);
  for (const TestFunction& tf : fam.members) {
    ScalarField psi = tf.sample(g);
    MemberEval ev;
    ev.label = tf.label();
    ev.norm = norm2(psi);
    ev.grad_norm = norm2(spectral_gradient(psi));
    if (ev.grad_norm <= 1e-14 * ev.norm) {
      est.warnings.push_back("skipped gradient-free member " + ev.label);
      continue;
    }
    ev.pairing = pairing(psi);
    est.members.push_back(ev);
    double rem = ev.pairing - est.g_hat * ev.norm * ev.norm;
    if (rem > 0) est.delta_hat = std::max(est.delta_hat, rem / (ev.grad_norm * ev.norm));
  }
  return est;
}

}  // namespace detail

// |<b(t) psi, psi>| with the vector pairing taken as the Euclidean norm of
// the d component integrals
inline BoundEstimate multiplicative_bound_estimate(const DriftSpec& b, double t, const Grid& g,
                                                   const TestFunctionFamily& fam) {
  if (fam.size() == 0) throw std::invalid_argument("empty test function family");
  VectorField bf = b.sample(t, g);
  auto pairing = [&](const ScalarField& psi) {
    double s = 0;
    for (int a = 0; a < g.dim; ++a) {
      std::vector<double> prod(g.size());
      for (std::size_t i = 0; i < g.size(); ++i) prod[i] = bf.comp[a][i] * psi[i] * psi[i];
      double comp = g.cell_volume() * pairwise_sum(prod);
      s += comp * comp;
    }
    return std::sqrt(s);
  };
  return detail::multiplicative_estimate(g, pairing, fam);
}

// <|b(t)| psi, psi>
inline BoundEstimate mf_bound_estimate(const DriftSpec& b, double t, const Grid& g,
                                       const TestFunctionFamily& fam) {
  if (fam.size() == 0) throw std::invalid_argument("empty test function family");
  ScalarField mag = b.sample(t, g).magnitude();
  auto pairing = [&](const ScalarField& psi) {
    std::vector<double> prod(g.size());
    for (std::size_t i = 0; i < g.size(); ++i) prod[i] = mag[i] * psi[i] * psi[i];
    return g.cell_volume() * pairwise_sum(prod);
  };
  return detail::multiplicative_estimate(g, pairing, fam);
}

// sup over the family of || |b|^{1/2} psi ||^2 / ||(lambda-Delta)^{1/4} psi||^2
inline double weak_formbound_estimate(const DriftSpec& b, double t, double lambda, const Grid& g,
                                      const TestFunctionFamily& fam) {
  if (!(lambda > 0)) throw std::domain_error("weak_formbound_estimate: lambda must be positive");
  ScalarField mag = b.sample(t, g).magnitude();
  double best = 0;
  for (const TestFunction& tf : fam.members) {
    ScalarField psi = tf.sample(g);
    std::vector<double> prod(g.size());
    for (std::size_t i = 0; i < g.size(); ++i) prod[i] = mag[i] * psi[i] * psi[i];
    double num = g.cell_volume() * pairwise_sum(prod);
    double den = bessel_norm(lambda, 0.5, psi);  // ||(lambda-Delta)^{1/4} psi||
    den *= den;
    if (den <= 0) continue;  // unreachable for nonzero psi; guard anyway
    best = std::max(best, num / den);
  }
  return best;
}

struct PairCheck {
  bool holds = true;
  double worst_violation = 0;  // positive when the inequality fails
  double worst_margin = 0;     // smallest slack seen
  std::string worst_label;
};

// verify <|b| psi,psi> <= delta ||grad psi|| ||psi|| + delta sqrt(lambda) ||psi||^2
// on the family (the weak form-bound to MF inclusion with g = delta sqrt(lambda))
inline PairCheck wfb_to_mf_check(const DriftSpec& b, double t, const Grid& g,
                                 const TestFunctionFamily& fam, double delta, double lambda,
                                 double tol = 1e-9) {
  ScalarField mag = b.sample(t, g).magnitude();
  PairCheck chk;
  chk.worst_margin = std::numeric_limits<double>::infinity();
  for (const TestFunction& tf : fam.members) {
    ScalarField psi = tf.sample(g);
    std::vector<double> prod(g.size());
    for (std::size_t i = 0; i < g.size(); ++i) prod[i] = mag[i] * psi[i] * psi[i];
    double lhs = g.cell_volume() * pairwise_sum(prod);
    double nrm = norm2(psi);
    double rhs = delta * norm2(spectral_gradient(psi)) * nrm + delta * std::sqrt(lambda) * nrm * nrm;
    double margin = rhs - lhs;
    if (margin < chk.worst_margin) {
      chk.worst_margin = margin;
      chk.worst_label = tf.label();
    }
    if (margin < -tol * (std::abs(rhs) + std::abs(lhs))) {
      chk.holds = false;
      chk.worst_violation = std::max(chk.worst_violation, -margin);
    }
  }
  return chk;
}

struct FormBoundEstimate {
  double nu_hat = 0;
  double h_hat = 0;
  std::vector<MemberEval> members;
  std::vector<std::string> warnings;
};

// quadratic form-bound estimate for a non-negative potential V:
// <V psi,psi> <= nu ||grad psi||^2 + h ||psi||^2
inline FormBoundEstimate formbound_div_estimate(const ScalarField& V,
                                                const TestFunctionFamily& fam) {
  const Grid& g = V.grid;
  auto pairing = [&](const ScalarField& psi) {
    std::vector<double> prod(g.size());
    for (std::size_t i = 0; i < g.size(); ++i) prod[i] = V[i] * psi[i] * psi[i];
    return g.cell_volume() * pairwise_sum(prod);
  };
  FormBoundEstimate est;
  est.h_hat = detail::estimate_g(g, pairing, /*quadratic=*/true);
  for (const TestFunction& tf : fam.members) {
    ScalarField psi = tf.sample(g);
    MemberEval ev;
    ev.label = tf.label();
    ev.norm = norm2(psi);
    ev.grad_norm = norm2(spectral_gradient(psi));
    if (ev.grad_norm <= 1e-14 * ev.norm) {
      est.warnings.push_back("skipped gradient-free member " + ev.label);
      continue;
    }
    ev.pairing = pairing(psi);
    est.members.push_back(ev);
    double rem = ev.pairing - est.h_hat * ev.norm * ev.norm;
    if (rem > 0) est.nu_hat = std::max(est.nu_hat, rem / (ev.grad_norm * ev.grad_norm));
  }
  return est;
}

// Aggregated estimate record; every value is a lower bound over the finite
// family used (lower_bound_semantics stays true to mark that).
struct ClassEstimate {
  double delta_hat_m = 0, g_hat_m = 0;      // multiplicative class
  double delta_hat_mf = 0, g_hat_mf = 0;    // multiplicative form-bounded
  double delta_hat_wfb = 0, lambda = 0;     // weak form-bound at lambda
  double nu_hat_plus = 0, h_hat_plus = 0;   // (div b)_+
  double nu_hat_minus = 0, h_hat_minus = 0; // (div b)_-
  double mu_hat_plus = 0, mu_hat_minus = 0; // Kato norms
  double morrey = 0, bmo = 0;
  int family_size = 0;
  std::uint64_t family_seed = 0;
  bool lower_bound_semantics = true;
};

}  // namespace driftlab
