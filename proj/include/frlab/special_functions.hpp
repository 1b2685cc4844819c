#pragma once

// The kernel integral
//
//   I_{c,t}(z) = \int_B (1-|w|^2)^t |1-<z,w>|^{-c} dv(w),
//
// its boundary growth class, and the L^p membership test for powers of
// (1-|z|^2) against it.
//
// By unitary invariance I_{c,t} depends on r = |z| only. Averaging the kernel
// over spheres gives the zonal form
//
//   I_{c,t}(r) = n \int_0^1 u^{n-1} (1-u)^t F(u r^2) du,   F = 2F1(c/2, c/2; n; .),
//
// which i_ct() integrates on panels graded toward u = 1 down to the scale
// 1 - r^2, with a Gauss-Jacobi rule for (1-u)^t on the last panel.

#include <cmath>
#include <string>

#include "frlab/ball_quadrature.hpp"
#include "frlab/errors.hpp"
#include "frlab/exponent.hpp"
#include "frlab/special/gamma.hpp"
#include "frlab/special/gauss_jacobi.hpp"
#include "frlab/special/hyp2f1.hpp"

namespace frlab {

/// Sphere average of |1 - <z, zeta>|^{-c} over zeta for |z|^2 = x.
inline double zonal_kernel_average(int n, double c, double x, const SeriesConfig& cfg = {}) {
  return hyp2f1(0.5 * c, 0.5 * c, static_cast<double>(n), x, cfg);
}

/// I_{c,t}(z) at any z with |z| = r.
///
/// Raises BoundaryError for r beyond cfg.boundary_cutoff and
/// ConvergenceError when doubling the per-panel order up to 512 never brings
/// two successive values within 1e-9 relative.
inline double i_ct(int n, double r, double c, double t, const SeriesConfig& cfg = {}) {
  cfg.validate();
  if (n < 1) throw DomainError("n must be >= 1");
  if (!(t > -1.0)) throw DomainError("i_ct requires t > -1 (got " + std::to_string(t) + ")");
  if (!(r >= 0.0)) throw DomainError("i_ct requires r >= 0");
  // Relative slack so that r = sqrt(cutoff^2) is still accepted.
  if (r > cfg.boundary_cutoff * (1.0 + 1e-15)) {
    throw BoundaryError("i_ct: r = " + std::to_string(r) + " lies beyond the boundary cutoff");
  }
  // The radius check above is the boundary contract; the 2F1 calls only ever
  // see arguments u r^2 <= r^2.
  SeriesConfig series = cfg;
  series.boundary_cutoff = std::nextafter(1.0, 0.0);
  const double r2 = r * r;
  if (c == 0.0 || r == 0.0) return weighted_volume(n, t);

  // 1 - u r^2 = (1-u) + u (1-r^2), both parts free of cancellation.
  const double gap = (1.0 - r) * (1.0 + r);
  RadialOptions opt;
  opt.scale = gap;
  auto integrand = [&](double u, double one_minus_u) {
    const double y = one_minus_u + u * gap;
    return n * std::pow(u, n - 1.0) * hyp2f1_with_complement(0.5 * c, 0.5 * c, n, u * r2, y, series);
  };
  opt.order = 16;
  double prev = radial_integral<double>(integrand, t, opt);
  for (int order = 32; order <= 512; order *= 2) {
    opt.order = order;
    const double cur = radial_integral<double>(integrand, t, opt);
    if (std::abs(cur - prev) <= 1e-9 * std::abs(cur)) return cur;
    prev = cur;
  }
  throw ConvergenceError("i_ct did not converge at r = " + std::to_string(r));
}

/// Monte Carlo estimate of I_{c,t}(z), sampling w with density proportional
/// to (1-|w|^2)^t so only the kernel is averaged.
inline NormEstimate i_ct_mc(const Point& z, double c, double t, const QuadratureConfig& cfg) {
  cfg.validate();
  if (!(t > -1.0)) throw DomainError("i_ct_mc requires t > -1");
  const int n = static_cast<int>(z.size());
  const BallSampler sampler(n, t, cfg.seed);
  return mc_integral<double>(
      sampler, [&](const Point& w) { return std::pow(std::abs(1.0 - inner(z, w)), -c); },
      cfg.mc_samples);
}

enum class AsymTag { kBounded, kLog, kPower };

/// Boundary behaviour of I_{c,t}(z) as |z| -> 1: bounded, logarithmic, or
/// comparable to (1-|z|^2)^{exponent} with exponent = n+1+t-c < 0.
struct AsymRegime {
  AsymTag tag = AsymTag::kBounded;
  double exponent = 0.0;
};

inline const char* asym_tag_name(AsymTag tag) {
  switch (tag) {
    case AsymTag::kBounded: return "BoundedRegime";
    case AsymTag::kLog: return "LogRegime";
    case AsymTag::kPower: return "PowerRegime";
  }
  return "?";
}

inline AsymRegime asym_class(int n, double c, double t) {
  if (n < 1) throw DomainError("n must be >= 1");
  if (!(t > -1.0)) throw DomainError("asym_class requires t > -1");
  const double e = n + 1.0 + t - c;
  if (e > 0.0) return {AsymTag::kBounded, 0.0};
  if (e == 0.0) return {AsymTag::kLog, 0.0};
  return {AsymTag::kPower, e};
}

/// Whether z -> I_{s,t}(z) lies in L^p_alpha; p finite.
inline bool kernel_in_lp(int n, double s, double t, const ExtendedExponent& p, double alpha) {
  if (!(alpha > -1.0)) throw DomainError("alpha must be > -1");
  if (p.is_infinite()) throw PreconditionError("kernel_in_lp requires a finite exponent");
  return t > -1.0 && s < n + 1.0 + t + (alpha + 1.0) * p.inverse();
}

}  // namespace frlab
