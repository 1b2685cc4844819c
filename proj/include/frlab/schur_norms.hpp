#pragma once

// Numerical side of the sufficiency arguments: the power-type Schur test
// function for 1 < q < p < inf, and the exact operator norms available for
// the p = inf row, the q = 1 row, and the q = inf column.
//
// Throughout, S_{a,b,c} f(z) = \int K(z,w) f(w) dv_alpha(w) with
//   K(z,w) = c_alpha^{-1} (1-|z|^2)^a (1-|w|^2)^{b-alpha} |1-<z,w>|^{-c}.
// Every quantity below is radial in the free variable, and every
// ball integral of a radial function against |1-<z,u>|^{-c} is reduced to a
// 1-D integral by the same zonal average used for I_{c,t}.

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <string>
#include <utility>
#include <vector>

#include "frlab/ball_quadrature.hpp"
#include "frlab/classifier.hpp"
#include "frlab/errors.hpp"
#include "frlab/operators.hpp"
#include "frlab/special_functions.hpp"

namespace frlab {

/// Power-type Schur test function phi(w) = (1-|w|^2)^{phi_exponent} for
/// S_{a,b,c}: L^p_alpha -> L^q_beta, 1 < q < p < inf.
struct SchurWitness {
  double epsilon = 0.0;
  double phi_exponent = 0.0;
  /// a + (beta+1)/q - p eps/(p-q),
  /// b + 1 - (alpha+1)/p - q(p-1) eps/(p-q),
  /// n+1+a+b+(1+beta)/q-(1+alpha)/p - eps - c.
  std::array<double, 3> constraint_slacks{};
};

namespace detail {

inline std::array<double, 3> schur_slacks(const Parameters& prm, double eps) {
  const double p = prm.p.value();
  const double q = prm.q.value();
  const double thr = prm.n + 1.0 + prm.a + prm.b + (1.0 + prm.beta) / q - (1.0 + prm.alpha) / p;
  return {prm.a + (prm.beta + 1.0) / q - p * eps / (p - q),
          prm.b + 1.0 - (prm.alpha + 1.0) / p - q * (p - 1.0) * eps / (p - q),
          thr - eps - prm.c};
}

inline void require_schur_cell(const Parameters& prm) {
  validate(prm);
  if (!(prm.q.is_finite() && prm.p.is_finite() && prm.q.value() > 1.0 &&
        prm.q.value() < prm.p.value())) {
    throw PreconditionError("the Schur test function needs 1 < q < p < inf");
  }
}

}  // namespace detail

/// epsilon = min(eps1, eps2, eps3) / 2, where each eps_i is the value at
/// which the corresponding constraint slack reaches zero.
inline SchurWitness schur_epsilon(const Parameters& prm) {
  detail::require_schur_cell(prm);
  const double p = prm.p.value();
  const double q = prm.q.value();
  const double eps1 = (p - q) / p * (prm.a + (prm.beta + 1.0) / q);
  const double eps2 = (p - q) / (q * (p - 1.0)) * (prm.b + 1.0 - (prm.alpha + 1.0) / p);
  const double eps3 =
      prm.n + 1.0 + prm.a + prm.b + (1.0 + prm.beta) / q - (1.0 + prm.alpha) / p - prm.c;
  if (!(eps1 > 0.0 && eps2 > 0.0 && eps3 > 0.0)) {
    throw PreconditionError("schur_epsilon: parameters are not strictly inside the bounded region");
  }
  SchurWitness w;
  w.epsilon = 0.5 * std::min({eps1, eps2, eps3});
  w.phi_exponent = q * w.epsilon / (p - q) - (prm.alpha + 1.0) / p;
  w.constraint_slacks = detail::schur_slacks(prm, w.epsilon);
  return w;
}

/// S^K phi(u) / phi(u) at |u| = rho for each rho in radii, where
///   S^K phi(u) = [\int K(z,u) (\int K(z,w) phi(w) dv_alpha(w))^{q-1} dv_beta(z)]^{p'-1}.
///
/// The inner integral is (1-|z|^2)^a I_{c, b+e}(|z|) with e the phi
/// exponent; the outer one is a zonal radial integral of it. The witness may
/// be any exponent; outside the admissible range the ratio grows or the inner
/// integral diverges (reported as +inf).
inline std::vector<double> schur_ratio_profile(const Parameters& prm, const SchurWitness& witness,
                                               const std::vector<double>& radii,
                                               const QuadratureConfig& cfg) {
  detail::require_schur_cell(prm);
  cfg.validate();
  const int n = prm.n;
  const double p = prm.p.value();
  const double q = prm.q.value();
  const double pc = prm.p.conjugate().value();
  const double e = witness.phi_exponent;
  const double t_inner = prm.b + e;
  std::vector<double> out;
  out.reserve(radii.size());
  if (!(t_inner > -1.0)) {
    out.assign(radii.size(), std::numeric_limits<double>::infinity());
    return out;
  }
  SeriesConfig inner_cfg;
  inner_cfg.boundary_cutoff = 1.0 - 1e-13;

  // h(v) = inner integral at |z|^2 = v, to the power q-1.
  auto h_pow = [&](double v, double one_minus_v) {
    const double rho = std::sqrt(v);
    const double val = std::pow(one_minus_v, prm.a) * i_ct(n, rho, prm.c, t_inner, inner_cfg);
    return std::pow(val, q - 1.0);
  };
  // Boundary power of the outer integrand beyond (1-v)^{a+beta}: the inner
  // integral grows like (1-|z|^2)^{-((beta+1)/q - p eps/(p-q))}.
  const double growth = (prm.beta + 1.0) / q - p * witness.epsilon / (p - q);
  const double tail = -(q - 1.0) * std::max(growth, 0.0);
  const double outer_t = prm.a + prm.beta;
  const double ratio_const = c_alpha(n, prm.beta) / c_alpha(n, prm.alpha);

  for (double rho_u : radii) {
    if (!(rho_u >= 0.0 && rho_u <= cfg.boundary_cutoff)) {
      throw BoundaryError("schur_ratio: radius beyond the boundary cutoff");
    }
    const double u2 = rho_u * rho_u;
    const double gap_u = (1.0 - rho_u) * (1.0 + rho_u);
    if (!(outer_t + tail > -1.0)) {
      out.push_back(std::numeric_limits<double>::infinity());
      continue;
    }
    RadialOptions opt;
    opt.scale = std::min(gap_u, 1e-4);
    opt.tail = tail;
    auto integrand = [&](double v, double one_minus_v) {
      const double y = one_minus_v + v * gap_u;
      const double zonal = hyp2f1_with_complement(0.5 * prm.c, 0.5 * prm.c, n, v * u2, y, inner_cfg);
      return n * std::pow(v, n - 1.0) * h_pow(v, one_minus_v) * zonal;
    };
    double prev = 0.0;
    double cur = 0.0;
    for (int order = 16; order <= 128; order *= 2) {
      opt.order = order;
      cur = radial_integral<double>(integrand, outer_t, opt);
      if (order > 16 && std::abs(cur - prev) <= 1e-6 * std::abs(cur)) break;
      prev = cur;
    }
    const double outer = ratio_const * std::pow(gap_u, prm.b - prm.alpha) * cur;
    const double skphi = std::pow(outer, pc - 1.0);
    out.push_back(skphi / std::pow(gap_u, e));
  }
  return out;
}

/// max over the radii of S^K phi / phi.
inline double schur_ratio(const Parameters& prm, const SchurWitness& witness,
                          const std::vector<double>& radii, const QuadratureConfig& cfg) {
  const auto prof = schur_ratio_profile(prm, witness, radii, cfg);
  double m = 0.0;
  for (double v : prof) m = std::max(m, v);
  return m;
}

namespace detail {

inline void require_modulus(const KernelSpec& spec, const char* what) {
  if (!spec.modulus_kernel) {
    throw PreconditionError(std::string(what) + " is defined for the nonnegative S-type kernel");
  }
}

inline SeriesConfig series_for(const QuadratureConfig& cfg) {
  SeriesConfig s;
  s.boundary_cutoff = cfg.boundary_cutoff;
  return s;
}

inline NormEstimate infinite_norm() {
  NormEstimate est;
  est.value = std::numeric_limits<double>::infinity();
  est.diverged = true;
  return est;
}

}  // namespace detail

/// ||S_{a,b,c}||_{L^inf -> L^q_beta} = || (1-|z|^2)^a I_{c,b}(|z|) ||_{q,beta}.
inline NormEstimate exact_norm_p_infty(const KernelSpec& spec, int n, double beta,
                                       const ExtendedExponent& q, const QuadratureConfig& cfg) {
  detail::require_modulus(spec, "exact_norm_p_infty");
  if (!(spec.b > -1.0)) return detail::infinite_norm();
  const SeriesConfig series = detail::series_for(cfg);
  return radial_norm(
      [&](double r) {
        return std::pow((1.0 - r) * (1.0 + r), spec.a) * i_ct(n, r, spec.c, spec.b, series);
      },
      n, q, beta, cfg);
}

/// ||S_{a,b,c}||_{L^p_alpha -> L^1_beta}
///   = || (c_beta/c_alpha) (1-|w|^2)^{b-alpha} I_{c,a+beta}(|w|) ||_{p',alpha}.
inline NormEstimate exact_norm_q1(const KernelSpec& spec, int n, double alpha, double beta,
                                  const ExtendedExponent& p, const QuadratureConfig& cfg) {
  detail::require_modulus(spec, "exact_norm_q1");
  if (!(spec.a + beta > -1.0)) return detail::infinite_norm();
  const double k = c_alpha(n, beta) / c_alpha(n, alpha);
  const SeriesConfig series = detail::series_for(cfg);
  return radial_norm(
      [&](double r) {
        return k * std::pow((1.0 - r) * (1.0 + r), spec.b - alpha) *
               i_ct(n, r, spec.c, spec.a + beta, series);
      },
      n, p.conjugate(), alpha, cfg);
}

namespace detail {

// sup over real s in [-cut, cut] of (1-s^2)^{b-alpha} |1 - r s|^{-c}; w on
// the complex line through z attains the sup of the kernel for fixed |w|.
inline double axis_sup(double r, double c, double w_exp, double cut) {
  double sup = 0.0;
  auto eval = [&](double s) {
    const double v = std::pow((1.0 - s) * (1.0 + s), w_exp) * std::pow(std::abs(1.0 - r * s), -c);
    sup = std::max(sup, v);
  };
  constexpr int kLinear = 2001;
  for (int i = 0; i < kLinear; ++i) eval(-cut + 2.0 * cut * i / (kLinear - 1));
  // Geometric grid in the distance to +-1, down to the cutoff.
  const double dmin = 1.0 - cut;
  for (double d = 1.0; d >= dmin; d /= std::pow(10.0, 1.0 / 40.0)) {
    eval(1.0 - d);
    eval(-(1.0 - d));
  }
  eval(cut);
  eval(-cut);
  return sup;
}

}  // namespace detail

/// max over |z| in radii of ||K(z, .)||_{L^{p'}_alpha}, the L^p_alpha -> L^inf
/// operator norm when the radii are dense toward the boundary.
///
/// p' finite: ||K(z,.)||_{p',alpha} = c_alpha^{-1} (1-|z|^2)^a [c_alpha I_{c p', (b-alpha) p' + alpha}(|z|)]^{1/p'}.
/// p = 1: sup over the line through z, truncated at the cutoff.
/// The divergence flag is raised when the maximum over all radii exceeds 1.5
/// times the maximum over the radii at least ten times farther from the
/// boundary, or when the p = 1 supremum is unstable under cutoff refinement.
inline NormEstimate sup_kernel_norm(const KernelSpec& spec, int n, double alpha, const ExtendedExponent& p,
                                    const std::vector<double>& radii, const QuadratureConfig& cfg) {
  cfg.validate();
  if (!(alpha > -1.0)) throw DomainError("alpha must be > -1");
  if (radii.empty()) throw PreconditionError("sup_kernel_norm needs at least one radius");
  const double ca = c_alpha(n, alpha);
  const ExtendedExponent pc = p.conjugate();
  const double w_exp = spec.b - alpha;
  if (pc.is_finite()) {
    const double pcv = pc.value();
    const double t = w_exp * pcv + alpha;
    if (!(t > -1.0)) return detail::infinite_norm();
  }
  const SeriesConfig series = detail::series_for(cfg);

  // Returns {value, value with the inner sup taken at the coarse cutoff}.
  auto norm_at = [&](double r) -> std::pair<double, double> {
    if (!(r >= 0.0 && r <= cfg.boundary_cutoff)) {
      throw BoundaryError("sup_kernel_norm: radius beyond the boundary cutoff");
    }
    const double pre = std::pow((1.0 - r) * (1.0 + r), spec.a) / ca;
    if (pc.is_infinite()) {
      return {pre * detail::axis_sup(r, spec.c, w_exp, cfg.boundary_cutoff),
              pre * detail::axis_sup(r, spec.c, w_exp, cfg.coarse_cutoff())};
    }
    const double pcv = pc.value();
    const double t = w_exp * pcv + alpha;
    const double v = pre * std::pow(ca * i_ct(n, r, spec.c * pcv, t, series), 1.0 / pcv);
    return {v, v};
  };

  double r_max = 0.0;
  for (double r : radii) r_max = std::max(r_max, r);
  double sup_all = 0.0;
  double sup_coarse = 0.0;
  double sup_inner = 0.0;
  bool has_inner = false;
  for (double r : radii) {
    const auto [v, v_coarse] = norm_at(r);
    sup_all = std::max(sup_all, v);
    sup_coarse = std::max(sup_coarse, v_coarse);
    if (1.0 - r >= 10.0 * (1.0 - r_max)) {
      sup_inner = std::max(sup_inner, v);
      has_inner = true;
    }
  }
  NormEstimate est;
  est.value = sup_all;
  est.diverged = refinement_unstable(sup_coarse, sup_all) || (has_inner && refinement_unstable(sup_inner, sup_all));
  return est;
}

/// Radii 1 - 10^{-k/4} for k = 0..4*decades, the default schedule for
/// sup_kernel_norm and schur_ratio.
inline std::vector<double> boundary_radii(int decades) {
  std::vector<double> r;
  for (int k = 0; k <= 4 * decades; ++k) r.push_back(1.0 - std::pow(10.0, -k / 4.0));
  return r;
}

}  // namespace frlab
