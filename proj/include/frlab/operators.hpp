#pragma once

// Pointwise evaluation of
//
//   T_{a,b,c} f(z) = (1-|z|^2)^a \int (1-|w|^2)^b (1-<z,w>)^{-c} f(w) dv(w)
//   S_{a,b,c} f(z) = (1-|z|^2)^a \int (1-|w|^2)^b |1-<z,w>|^{-c} f(w) dv(w)
//
// together with the weighted Bergman projection, the Berezin transform, the
// closed-form images of the standard test families, and the reproducing
// identity as a residual.
//
// Complex powers use the principal branch; Re(1-<z,w>) >= 1-|z||w| > 0 on
// the ball, so (1-<z,w>)^{-c} is smooth there.

#include <algorithm>
#include <cmath>
#include <complex>
#include <functional>
#include <type_traits>
#include <string>
#include <utility>
#include <variant>

#include "frlab/ball_quadrature.hpp"
#include "frlab/classifier.hpp"
#include "frlab/errors.hpp"
#include "frlab/special/gamma.hpp"

namespace frlab {

struct KernelSpec {
  double a = 0.0;
  double b = 0.0;
  double c = 0.0;
  /// true: |1-<z,w>|^{-c} (S-type); false: (1-<z,w>)^{-c} (T-type).
  bool modulus_kernel = false;
};

/// (1-<z,w>)^{-c} or |1-<z,w>|^{-c}.
inline cplx kernel_power(const Point& z, const Point& w, double c, bool modulus) {
  const cplx base = 1.0 - inner(z, w);
  if (modulus) return std::pow(std::abs(base), -c);
  return std::exp(-c * std::log(base));
}

inline cplx kernel_power(const Point& z, const Point& w, const KernelSpec& spec) {
  return kernel_power(z, w, spec.c, spec.modulus_kernel);
}

using EstimateC = Estimate<cplx>;

namespace detail {

inline void require_inside(const Point& z, double cutoff, const char* what) {
  if (std::sqrt(norm_sq(z)) > cutoff) {
    throw BoundaryError(std::string(what) + ": evaluation point lies beyond the boundary cutoff");
  }
}

}  // namespace detail

/// \int_B g(w) (1-|w|^2)^t dv(w).
///
/// n = 1, t > -1: Gauss-Jacobi rule in |w|^2 with weight (1-u)^t over the
/// whole disk; the divergence flag compares against the half-order rule.
/// n = 1, t <= -1: graded rule truncated at the cutoff, flagged by cutoff
/// refinement. n >= 2: Monte Carlo with the sampler matched to max(t, 0)
/// weight exponent, truncated and flagged the same way when t <= -1.
template <class G>
EstimateC integrate_weighted(int n, double t, G&& g, const QuadratureConfig& cfg) {
  cfg.validate();
  EstimateC est;
  if (n == 1 && t > -1.0) {
    const DiskRule fine = weighted_disk_rule(t, cfg);
    QuadratureConfig half = cfg;
    half.radial_nodes = std::max(2, cfg.radial_nodes / 2);
    const DiskRule coarse = weighted_disk_rule(t, half);
    double mass = 0.0;
    est.value = apply_rule<cplx>(fine, [&](const Point& w) {
      const cplx v = g(w);
      mass += std::abs(v);
      return v;
    });
    mass /= static_cast<double>(fine.nodes.size());
    const cplx check = apply_rule<cplx>(coarse, g);
    // Halving the radial order of a convergent Gauss rule barely moves the
    // value; a jump of half its size means the integrand is not resolved.
    const double diff = std::abs(check - est.value);
    est.diverged = diff > 0.5 * std::max({std::abs(est.value), std::abs(check), 1e-12 * mass});
    return est;
  }
  if (n == 1) {
    auto truncated = [&](double cutoff) {
      const DiskRule rule = disk_rule(cfg, cutoff);
      return apply_rule<cplx>(rule, [&](const Point& w) {
        return g(w) * std::pow(1.0 - norm_sq(w), t);
      });
    };
    est.value = truncated(cfg.boundary_cutoff);
    est.diverged = refinement_unstable(std::abs(truncated(cfg.coarse_cutoff())), std::abs(est.value));
    return est;
  }
  if (t > -1.0) {
    const BallSampler sampler(n, t, cfg.seed);
    return mc_integral<cplx>(sampler, g, cfg.mc_samples);
  }
  const BallSampler sampler(n, 0.0, cfg.seed);
  auto truncated = [&](double cutoff) {
    return mc_integral<cplx>(
        sampler,
        [&](const Point& w) -> cplx {
          const double u = norm_sq(w);
          if (u > cutoff * cutoff) return 0.0;
          return g(w) * std::pow(1.0 - u, t);
        },
        cfg.mc_samples);
  };
  est = truncated(cfg.boundary_cutoff);
  est.diverged = refinement_unstable(std::abs(truncated(cfg.coarse_cutoff()).value), std::abs(est.value));
  return est;
}

/// (T f)(z) or (S f)(z) according to spec.modulus_kernel.
template <class F>
EstimateC apply_operator(const KernelSpec& spec, F&& f, const Point& z, const QuadratureConfig& cfg) {
  detail::require_inside(z, cfg.boundary_cutoff, "apply_operator");
  const int n = static_cast<int>(z.size());
  auto est = integrate_weighted(
      n, spec.b, [&](const Point& w) { return kernel_power(z, w, spec) * static_cast<cplx>(f(w)); }, cfg);
  const double pre = std::pow(1.0 - norm_sq(z), spec.a);
  est.value *= pre;
  est.std_error *= pre;
  return est;
}

/// The adjoint of T_{a,b,c}: L^q_beta -> L^p_alpha realized as the operator
/// with the mapped parameters, scaled by the dropped constant
/// c_beta / c_alpha (q finite) or 1 / c_alpha (q = inf).
template <class F>
EstimateC apply_adjoint(const Parameters& prm, bool modulus_kernel, F&& f, const Point& z,
                        const QuadratureConfig& cfg) {
  const Parameters adj = adjoint_parameters(prm);
  const KernelSpec spec{adj.a, adj.b, adj.c, modulus_kernel};
  const double scale = prm.q.is_finite() ? c_alpha(prm.n, prm.beta) / c_alpha(prm.n, prm.alpha)
                                         : 1.0 / c_alpha(prm.n, prm.alpha);
  auto est = apply_operator(spec, std::forward<F>(f), z, cfg);
  est.value *= scale;
  est.std_error *= scale;
  return est;
}

// ---------------------------------------------------------------------------
// Test families and their closed-form images.

/// f_N(z) = (1-|z|^2)^N.
struct PowerFN {
  double N = 0.0;
};
/// f_xi(z) = (1-|xi|^2)^{n+1+alpha} / |1-<z,xi>|^{2(n+1+alpha)}, for b = alpha.
struct KernelFXiEqual {
  Point xi;
};
/// f_xi(z) = (1-|xi|^2)^{b-alpha} / (1-<z,xi>)^{n+1+b}, for alpha < b.
struct KernelFXiLess {
  Point xi;
};

using TestFamily = std::variant<PowerFN, KernelFXiEqual, KernelFXiLess>;

/// Evaluator for the family member; b and alpha enter the f_xi variants.
inline std::function<cplx(const Point&)> family_function(const TestFamily& fam, double b,
                                                         double alpha) {
  return std::visit(
      [&](const auto& v) -> std::function<cplx(const Point&)> {
        using V = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<V, PowerFN>) {
          const double N = v.N;
          return [N](const Point& w) { return cplx(std::pow(1.0 - norm_sq(w), N)); };
        } else if constexpr (std::is_same_v<V, KernelFXiEqual>) {
          const Point xi = v.xi;
          const double e = xi.size() + 1.0 + alpha;
          const double scale = std::pow(1.0 - norm_sq(xi), e);
          return [xi, e, scale](const Point& w) {
            return cplx(scale * std::pow(std::abs(1.0 - inner(w, xi)), -2.0 * e));
          };
        } else {
          const Point xi = v.xi;
          const double e = xi.size() + 1.0 + b;
          const double scale = std::pow(1.0 - norm_sq(xi), b - alpha);
          return [xi, e, scale](const Point& w) { return scale * std::exp(-e * std::log(1.0 - inner(w, xi))); };
        }
      },
      fam);
}

struct ClosedImageFN {
  double constant = 0.0;
  double a = 0.0;
  [[nodiscard]] cplx operator()(const Point& z) const {
    return constant * std::pow(1.0 - norm_sq(z), a);
  }
};

/// T_{a,b,c} f_N = C_N (1-|z|^2)^a with C_N = n! Gamma(b+N+1) / Gamma(n+b+N+1):
/// only the constant term of the kernel's expansion survives the angular
/// integration.
inline ClosedImageFN closed_image_fn(const KernelSpec& spec, int n, double N) {
  if (spec.modulus_kernel) throw PreconditionError("closed_image_fn applies to T-type kernels");
  if (!(spec.b + N > -1.0)) throw DomainError("closed_image_fn requires b + N > -1");
  return {weighted_volume(n, spec.b + N), spec.a};
}

/// Closed form of T_{a,b,c} f_xi:
///   b = alpha: (1/c_alpha) (1-|z|^2)^a (1-<z,xi>)^{-c}
///   alpha < b: (1/c_b) (1-|z|^2)^a (1-|xi|^2)^{b-alpha} (1-<z,xi>)^{-c}
/// The first follows from the Berezin transform fixing the bounded
/// antiholomorphic function w -> (1-<z,w>)^{-c}; the second from the
/// reproducing property of the weight-b Bergman kernel.
inline std::function<cplx(const Point&)> closed_image_fxi(const KernelSpec& spec, int n, double alpha,
                                                          const TestFamily& fam) {
  if (spec.modulus_kernel) throw PreconditionError("closed_image_fxi applies to T-type kernels");
  if (const auto* eq = std::get_if<KernelFXiEqual>(&fam)) {
    if (spec.b != alpha) throw PreconditionError("KernelFXiEqual requires b == alpha");
    const double k = 1.0 / c_alpha(n, alpha);
    const Point xi = eq->xi;
    const KernelSpec s = spec;
    return [k, xi, s](const Point& z) {
      return k * std::pow(1.0 - norm_sq(z), s.a) * std::exp(-s.c * std::log(1.0 - inner(z, xi)));
    };
  }
  if (const auto* less = std::get_if<KernelFXiLess>(&fam)) {
    if (!(alpha < spec.b)) throw PreconditionError("KernelFXiLess requires alpha < b");
    const Point xi = less->xi;
    const double k = std::pow(1.0 - norm_sq(xi), spec.b - alpha) / c_alpha(n, spec.b);
    const KernelSpec s = spec;
    return [k, xi, s](const Point& z) {
      return k * std::pow(1.0 - norm_sq(z), s.a) * std::exp(-s.c * std::log(1.0 - inner(z, xi)));
    };
  }
  throw PreconditionError("closed_image_fxi needs a KernelFXi family member");
}

// ---------------------------------------------------------------------------
// Projection, Berezin transform, reproducing identity.

/// B_alpha f(z) = \int (1-|z|^2)^{n+1+alpha} |1-<z,w>|^{-2(n+1+alpha)} f(w) dv_alpha(w).
template <class F>
EstimateC berezin(double alpha, F&& f, const Point& z, const QuadratureConfig& cfg) {
  const int n = static_cast<int>(z.size());
  const double e = n + 1.0 + alpha;
  const double ca = c_alpha(n, alpha);
  auto est = apply_operator(KernelSpec{e, alpha, 2.0 * e, true}, std::forward<F>(f), z, cfg);
  est.value *= ca;
  est.std_error *= ca;
  return est;
}

/// P_gamma f(z) = \int f(w) (1-<z,w>)^{-(n+1+gamma)} dv_gamma(w).
template <class F>
EstimateC bergman_project(double gamma, F&& f, const Point& z, const QuadratureConfig& cfg) {
  const int n = static_cast<int>(z.size());
  const double cg = c_alpha(n, gamma);
  auto est = apply_operator(KernelSpec{0.0, gamma, n + 1.0 + gamma, false}, std::forward<F>(f), z, cfg);
  est.value *= cg;
  est.std_error *= cg;
  return est;
}

/// |\int (1-|xi|^2)^{n+1+alpha} (1-<z,w>)^{-c} |1-<xi,w>|^{-2(n+1+alpha)} dv_alpha(w)
///   - (1-<z,xi>)^{-c}|.
inline double reproducing_residual(double alpha, double c, const Point& z, const Point& xi,
                                   const QuadratureConfig& cfg) {
  detail::require_inside(z, cfg.boundary_cutoff, "reproducing_residual");
  detail::require_inside(xi, cfg.boundary_cutoff, "reproducing_residual");
  const int n = static_cast<int>(z.size());
  const double e = n + 1.0 + alpha;
  const double scale = c_alpha(n, alpha) * std::pow(1.0 - norm_sq(xi), e);
  const auto lhs = integrate_weighted(
      n, alpha,
      [&](const Point& w) {
        return kernel_power(z, w, c, false) * std::pow(std::abs(1.0 - inner(xi, w)), -2.0 * e);
      },
      cfg);
  const cplx rhs = std::exp(-c * std::log(1.0 - inner(z, xi)));
  return std::abs(scale * lhs.value - rhs);
}

}  // namespace frlab
