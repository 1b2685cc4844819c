#pragma once

// Integration over the unit ball B_n of C^n.
//
// Measure convention: dv is normalized Lebesgue measure (v(B_n) = 1) and
// dv_alpha = c_alpha (1-|z|^2)^alpha dv. In polar form with u = |w|^2 the
// normalized measure is n u^{n-1} du dsigma, so for n = 1 it is
// du dtheta / (2 pi).
//
// n = 1 uses deterministic tensor rules (graded Gauss-Legendre or
// Gauss-Jacobi in u, trapezoid in theta). n >= 2 uses weighted Monte Carlo.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <limits>
#include <numbers>
#include <random>
#include <string>
#include <thread>
#include <type_traits>
#include <vector>

#include <Eigen/Core>

#include "frlab/errors.hpp"
#include "frlab/exponent.hpp"
#include "frlab/special/gamma.hpp"
#include "frlab/special/gauss_jacobi.hpp"

namespace frlab {

using cplx = std::complex<double>;
using Point = Eigen::VectorXcd;

/// <z, w> = sum_k z_k conj(w_k).
inline cplx inner(const Point& z, const Point& w) { return w.dot(z); }

inline double norm_sq(const Point& z) { return z.squaredNorm(); }

/// (r, 0, ..., 0) in C^n.
inline Point axis_point(int n, cplx r) {
  Point z = Point::Zero(n);
  z(0) = r;
  return z;
}

inline Point make_point(std::initializer_list<cplx> coords) {
  Point z(static_cast<Eigen::Index>(coords.size()));
  Eigen::Index i = 0;
  for (const auto& c : coords) z(i++) = c;
  return z;
}

struct QuadratureConfig {
  int radial_nodes = 64;
  int angular_nodes = 256;
  long long mc_samples = 200000;
  double boundary_cutoff = 1.0 - 1e-6;
  std::uint64_t seed = 20240601;

  void validate() const {
    if (radial_nodes < 2) throw DomainError("radial_nodes must be >= 2");
    if (angular_nodes < 4) throw DomainError("angular_nodes must be >= 4");
    if (mc_samples < 100) throw DomainError("mc_samples must be >= 100");
    if (!(boundary_cutoff > 0.0 && boundary_cutoff < 1.0)) {
      throw DomainError("boundary_cutoff must lie in (0, 1)");
    }
  }

  /// The coarser cutoff used for divergence detection: ten times farther
  /// from the boundary in the squared-distance sense (1-1e-6 -> 1-1e-4).
  [[nodiscard]] double coarse_cutoff() const { return 1.0 - 100.0 * (1.0 - boundary_cutoff); }
};

enum class Method { kGridQuad, kMonteCarlo, kClosedForm };

inline const char* method_tag(Method m) {
  switch (m) {
    case Method::kGridQuad: return "GridQuad";
    case Method::kMonteCarlo: return "MonteCarlo";
    case Method::kClosedForm: return "ClosedForm";
  }
  return "?";
}

/// A computed quantity with its standard error (0 unless Monte Carlo) and a
/// flag raised when cutoff refinement showed the truncated value still
/// growing.
template <class T>
struct Estimate {
  T value{};
  double std_error = 0.0;
  Method method = Method::kGridQuad;
  bool diverged = false;
};

using NormEstimate = Estimate<double>;

/// Flags divergence when moving the cutoff toward the boundary changes the
/// value by more than 50%.
inline bool refinement_unstable(double coarse, double fine) {
  const double lo = std::min(std::abs(coarse), std::abs(fine));
  const double hi = std::max(std::abs(coarse), std::abs(fine));
  if (!std::isfinite(hi)) return true;
  if (hi == 0.0) return false;
  return lo == 0.0 || hi / lo > 1.5;
}

// ---------------------------------------------------------------------------
// Radial rules in u = |w|^2.

namespace detail {

// Panel breakpoints 0, 1/2, 1 - 2^{-1} 4^{-k}, ... refined geometrically
// toward u = 1 until the gap falls below `scale`, ending at `upper`.
inline std::vector<double> graded_breakpoints(double upper, double scale) {
  std::vector<double> pts{0.0};
  double gap = 0.5;
  while (1.0 - gap < upper && gap > scale) {
    if (1.0 - gap > pts.back()) pts.push_back(1.0 - gap);
    gap *= 0.25;
  }
  pts.push_back(upper);
  return pts;
}

}  // namespace detail

/// Options for radial_integral().
struct RadialOptions {
  /// Upper limit of integration; 1 means the full interval.
  double upper = 1.0;
  /// Length scale near u = 1 on which the integrand varies; the panels are
  /// refined geometrically down to it.
  double scale = 1e-3;
  /// Gauss nodes per panel.
  int order = 16;
  /// The integrand behaves like (1-u)^tail near u = 1; only used when
  /// upper == 1, to fold that power into the last panel's Jacobi weight.
  double tail = 0.0;
};

namespace detail {

// Integrands may take (u) or (u, 1-u); the second form receives 1-u
// computed without cancellation near u = 1.
template <class G>
decltype(auto) call_radial(G& g, double u, double one_minus_u) {
  if constexpr (std::is_invocable_v<G&, double, double>) {
    return g(u, one_minus_u);
  } else {
    return g(u);
  }
}

}  // namespace detail

/// \int_0^{upper} g(u) (1-u)^t du by composite Gauss rules on graded panels.
/// With upper == 1 the last panel uses the Jacobi weight (1-u)^{t+tail}.
template <class T, class G>
T radial_integral(G&& g, double t, const RadialOptions& opt) {
  const bool full = (opt.upper >= 1.0);
  const double scale = full ? std::max(opt.scale, 1e-300) : std::max(opt.scale, 0.5 * (1.0 - opt.upper));
  const auto pts = detail::graded_breakpoints(full ? 1.0 : opt.upper, scale);
  const auto& gl = legendre_rule(opt.order);
  T sum{};
  const std::size_t last = pts.size() - 1;
  for (std::size_t k = 0; k + 1 < pts.size(); ++k) {
    const double lo = pts[k];
    const double hi = pts[k + 1];
    const double len = hi - lo;
    if (full && k + 1 == last) {
      const double w_exp = t + opt.tail;
      if (!(w_exp > -1.0)) throw DomainError("radial_integral: non-integrable endpoint weight");
      const auto& gj = jacobi_rule(opt.order, w_exp, 0.0);
      // u = lo + len s, (1-u) = len (1-s).
      const double factor = std::pow(len, w_exp + 1.0);
      T panel{};
      for (std::size_t i = 0; i < gj.nodes.size(); ++i) {
        const double s = gj.nodes[i];
        const double u = lo + len * s;
        const double one_minus = len * (1.0 - s);
        panel += gj.weights[i] * (detail::call_radial(g, u, one_minus) * std::pow(one_minus, -opt.tail));
      }
      sum += factor * panel;
    } else {
      T panel{};
      for (std::size_t i = 0; i < gl.nodes.size(); ++i) {
        const double u = lo + len * gl.nodes[i];
        const double one_minus = (1.0 - hi) + len * (1.0 - gl.nodes[i]);
        panel += gl.weights[i] * (detail::call_radial(g, u, one_minus) * std::pow(one_minus, t));
      }
      sum += len * panel;
    }
  }
  return sum;
}

// ---------------------------------------------------------------------------
// Deterministic disk rules (n = 1).

struct DiskRule {
  std::vector<cplx> nodes;
  std::vector<double> weights;
};

namespace detail {

inline DiskRule tensor_with_angles(const std::vector<double>& us, const std::vector<double>& wu,
                                   int angular) {
  DiskRule rule;
  rule.nodes.reserve(us.size() * angular);
  rule.weights.reserve(us.size() * angular);
  std::vector<cplx> unit(angular);
  for (int j = 0; j < angular; ++j) {
    const double th = 2.0 * std::numbers::pi * j / angular;
    unit[j] = cplx(std::cos(th), std::sin(th));
  }
  for (std::size_t i = 0; i < us.size(); ++i) {
    const double r = std::sqrt(us[i]);
    for (int j = 0; j < angular; ++j) {
      rule.nodes.push_back(r * unit[j]);
      rule.weights.push_back(wu[i] / angular);
    }
  }
  return rule;
}

inline int panel_order(const QuadratureConfig& cfg) { return std::max(8, cfg.radial_nodes / 4); }

}  // namespace detail

/// Tensor rule on the truncated disk |w| <= cutoff for normalized area
/// measure: graded Gauss-Legendre in u = |w|^2 on [0, cutoff^2] times the
/// trapezoid rule in angle. The weights sum to cutoff^2.
inline DiskRule disk_rule(const QuadratureConfig& cfg, double cutoff) {
  cfg.validate();
  const double upper = cutoff * cutoff;
  const auto pts = detail::graded_breakpoints(upper, 0.5 * (1.0 - upper));
  const auto& gl = legendre_rule(detail::panel_order(cfg));
  std::vector<double> us;
  std::vector<double> wu;
  for (std::size_t k = 0; k + 1 < pts.size(); ++k) {
    const double len = pts[k + 1] - pts[k];
    for (std::size_t i = 0; i < gl.nodes.size(); ++i) {
      us.push_back(pts[k] + len * gl.nodes[i]);
      wu.push_back(len * gl.weights[i]);
    }
  }
  return detail::tensor_with_angles(us, wu, cfg.angular_nodes);
}

inline DiskRule disk_rule(const QuadratureConfig& cfg) { return disk_rule(cfg, cfg.boundary_cutoff); }

/// Rule for \int_D g(w) (1-|w|^2)^t dA(w)/pi over the whole disk: Gauss-Jacobi
/// in u with weight (1-u)^t (radial_nodes points) times the trapezoid rule.
inline DiskRule weighted_disk_rule(double t, const QuadratureConfig& cfg) {
  cfg.validate();
  const auto& gj = jacobi_rule(cfg.radial_nodes, t, 0.0);
  return detail::tensor_with_angles(gj.nodes, gj.weights, cfg.angular_nodes);
}

template <class T, class G>
T apply_rule(const DiskRule& rule, G&& g) {
  T sum{};
  Point w(1);
  for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
    w(0) = rule.nodes[i];
    sum += rule.weights[i] * static_cast<T>(g(w));
  }
  return sum;
}

// ---------------------------------------------------------------------------
// Monte Carlo.

/// Counter-based generator: every (seed, index) pair owns an independent
/// SplitMix64 stream, so a sample depends only on its index and never on the
/// order in which samples are drawn.
class CounterRng {
 public:
  using result_type = std::uint64_t;

  CounterRng(std::uint64_t seed, std::uint64_t index)
      : state_(mix(seed ^ mix(index + 0x632be59bd9b4e019ULL))) {}

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }

  result_type operator()() {
    state_ += 0x9e3779b97f4a7c15ULL;
    return mix(state_);
  }

 private:
  static std::uint64_t mix(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  std::uint64_t state_;
};

/// Draws w = r zeta with zeta uniform on the sphere and r^2 ~ Beta(n, t+1),
/// i.e. with density c_t (1-|w|^2)^t against dv. The importance weight 1/c_t
/// makes weight * g(w) an unbiased estimate of \int g(w) (1-|w|^2)^t dv(w).
class BallSampler {
 public:
  BallSampler(int n, double t, std::uint64_t seed) : n_(n), t_(t), seed_(seed) {
    if (n < 1) throw DomainError("n must be >= 1");
    if (!(t > -1.0)) throw DomainError("sampler weight exponent must be > -1");
    weight_ = weighted_volume(n, t);
  }

  [[nodiscard]] int dimension() const { return n_; }
  [[nodiscard]] double importance_weight() const { return weight_; }

  /// Fills `w` with sample number `index`; returns the importance weight.
  double sample(std::uint64_t index, Point& w) const {
    CounterRng rng(seed_, index);
    std::normal_distribution<double> normal(0.0, 1.0);
    w.resize(n_);
    double len2 = 0.0;
    for (int k = 0; k < n_; ++k) {
      const double re = normal(rng);
      const double im = normal(rng);
      w(k) = cplx(re, im);
      len2 += re * re + im * im;
    }
    std::gamma_distribution<double> g1(static_cast<double>(n_), 1.0);
    std::gamma_distribution<double> g2(t_ + 1.0, 1.0);
    const double x = g1(rng);
    const double y = g2(rng);
    const double u = x / (x + y);
    w *= std::sqrt(u / len2);
    return weight_;
  }

 private:
  int n_;
  double t_;
  std::uint64_t seed_;
  double weight_ = 1.0;
};

namespace detail {

template <class T>
double sq_dev(const T& x) {
  if constexpr (std::is_same_v<T, cplx>) {
    return std::norm(x);
  } else {
    return x * x;
  }
}

// Running mean and sum of squared deviations; merged pairwise.
template <class T>
struct Moments {
  long long count = 0;
  T mean{};
  double m2 = 0.0;

  void push(const T& x) {
    ++count;
    const T delta = x - mean;
    mean += delta / static_cast<double>(count);
    const T delta2 = x - mean;
    if constexpr (std::is_same_v<T, cplx>) {
      m2 += std::real(delta * std::conj(delta2));
    } else {
      m2 += delta * delta2;
    }
  }

  void merge(const Moments& other) {
    if (other.count == 0) return;
    if (count == 0) {
      *this = other;
      return;
    }
    const double na = static_cast<double>(count);
    const double nb = static_cast<double>(other.count);
    const T delta = other.mean - mean;
    mean += delta * (nb / (na + nb));
    m2 += other.m2 + sq_dev(delta) * na * nb / (na + nb);
    count += other.count;
  }
};

inline unsigned worker_count() {
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1u : hw;
}

// Runs body(block) for block in [0, blocks); blocks are split statically
// across `threads` threads (0: one per hardware thread).
template <class Body>
void for_each_block(std::size_t blocks, Body&& body, unsigned threads = 0) {
  const unsigned workers = std::min<std::size_t>(threads == 0 ? worker_count() : threads, blocks);
  if (workers <= 1) {
    for (std::size_t b = 0; b < blocks; ++b) body(b);
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (unsigned id = 0; id < workers; ++id) {
    pool.emplace_back([&, id] {
      for (std::size_t b = id; b < blocks; b += workers) body(b);
    });
  }
  for (auto& th : pool) th.join();
}

inline constexpr std::size_t kBlockSize = 8192;

}  // namespace detail

/// Monte Carlo estimate of \int g(w) (1-|w|^2)^t dv(w) with the sampler's
/// weight exponent t. The reduction order is fixed, so the result is
/// bitwise reproducible for any thread count (0: one per hardware thread).
template <class T, class G>
Estimate<T> mc_integral(const BallSampler& sampler, G&& g, long long samples, unsigned threads = 0) {
  if (samples < 2) throw DomainError("Monte Carlo needs at least two samples");
  const std::size_t total = static_cast<std::size_t>(samples);
  const std::size_t blocks = (total + detail::kBlockSize - 1) / detail::kBlockSize;
  std::vector<detail::Moments<T>> partial(blocks);
  detail::for_each_block(blocks, [&](std::size_t b) {
    Point w(sampler.dimension());
    detail::Moments<T> m;
    const std::size_t lo = b * detail::kBlockSize;
    const std::size_t hi = std::min(total, lo + detail::kBlockSize);
    for (std::size_t i = lo; i < hi; ++i) {
      const double weight = sampler.sample(i, w);
      m.push(weight * static_cast<T>(g(w)));
    }
    partial[b] = m;
  }, threads);
  // Pairwise tree merge in block order.
  while (partial.size() > 1) {
    std::vector<detail::Moments<T>> next((partial.size() + 1) / 2);
    for (std::size_t i = 0; i < next.size(); ++i) {
      next[i] = partial[2 * i];
      if (2 * i + 1 < partial.size()) next[i].merge(partial[2 * i + 1]);
    }
    partial.swap(next);
  }
  const auto& m = partial.front();
  Estimate<T> est;
  est.value = m.mean;
  est.std_error = std::sqrt(m.m2 / static_cast<double>(m.count - 1) / static_cast<double>(m.count));
  est.method = Method::kMonteCarlo;
  return est;
}

// ---------------------------------------------------------------------------
// Weighted L^p norms.

namespace detail {

inline NormEstimate finish_norm(double integral, double integral_err, double coarse_integral,
                                double inv_p, Method method) {
  NormEstimate est;
  est.method = method;
  est.value = std::pow(std::max(integral, 0.0), inv_p);
  if (integral > 0.0 && integral_err > 0.0) {
    est.std_error = inv_p * std::pow(integral, inv_p - 1.0) * integral_err;
  }
  est.diverged = refinement_unstable(std::pow(std::max(coarse_integral, 0.0), inv_p), est.value);
  return est;
}

}  // namespace detail

/// ||f||_{p,alpha} over the truncated ball |z| <= cutoff. For p = inf the
/// maximum of |f| over the evaluation nodes. The divergence flag compares
/// against the same quantity at the coarse cutoff.
template <class F>
NormEstimate weighted_norm(F&& f, int n, const ExtendedExponent& p, double alpha,
                           const QuadratureConfig& cfg) {
  cfg.validate();
  const double ca = c_alpha(n, alpha);
  const double cut = cfg.boundary_cutoff;
  const double coarse = cfg.coarse_cutoff();

  if (n == 1) {
    const DiskRule rule = disk_rule(cfg, cut);
    Point w(1);
    if (p.is_infinite()) {
      double sup_all = 0.0;
      double sup_coarse = 0.0;
      for (const auto& node : rule.nodes) {
        w(0) = node;
        const double v = std::abs(static_cast<cplx>(f(w)));
        sup_all = std::max(sup_all, v);
        if (std::norm(node) <= coarse * coarse) sup_coarse = std::max(sup_coarse, v);
      }
      NormEstimate est;
      est.value = sup_all;
      est.diverged = refinement_unstable(sup_coarse, sup_all);
      return est;
    }
    const double pv = p.value();
    double fine_sum = 0.0;
    double coarse_sum = 0.0;
    for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
      w(0) = rule.nodes[i];
      const double u = std::norm(rule.nodes[i]);
      const double v = std::pow(std::abs(static_cast<cplx>(f(w))), pv) * std::pow(1.0 - u, alpha);
      const double term = rule.weights[i] * v;
      fine_sum += term;
      if (u <= coarse * coarse) coarse_sum += term;
    }
    return detail::finish_norm(ca * fine_sum, 0.0, ca * coarse_sum, p.inverse(), Method::kGridQuad);
  }

  const BallSampler sampler(n, alpha, cfg.seed);
  if (p.is_infinite()) {
    double sup_all = 0.0;
    double sup_coarse = 0.0;
    Point w(n);
    for (long long i = 0; i < cfg.mc_samples; ++i) {
      sampler.sample(static_cast<std::uint64_t>(i), w);
      const double u = norm_sq(w);
      if (u > cut * cut) continue;
      const double v = std::abs(static_cast<cplx>(f(w)));
      sup_all = std::max(sup_all, v);
      if (u <= coarse * coarse) sup_coarse = std::max(sup_coarse, v);
    }
    NormEstimate est;
    est.value = sup_all;
    est.method = Method::kMonteCarlo;
    est.diverged = refinement_unstable(sup_coarse, sup_all);
    return est;
  }
  const double pv = p.value();
  // The sampler's density already carries c_alpha (1-|w|^2)^alpha.
  auto pair = [&](const Point& w, double limit) {
    const double u = norm_sq(w);
    if (u > limit * limit) return 0.0;
    return std::pow(std::abs(static_cast<cplx>(f(w))), pv);
  };
  const auto fine = mc_integral<double>(
      sampler, [&](const Point& w) { return ca * pair(w, cut); }, cfg.mc_samples);
  const auto crude = mc_integral<double>(
      sampler, [&](const Point& w) { return ca * pair(w, coarse); }, cfg.mc_samples);
  return detail::finish_norm(fine.value, fine.std_error, crude.value, p.inverse(), Method::kMonteCarlo);
}

/// ||g(|z|)||_{p,alpha} for a radial function, by a 1-D graded rule in
/// u = |z|^2 truncated at the cutoff; p = inf takes the maximum over the
/// radial nodes.
template <class G>
NormEstimate radial_norm(G&& g, int n, const ExtendedExponent& p, double alpha,
                         const QuadratureConfig& cfg) {
  cfg.validate();
  const double ca = c_alpha(n, alpha);
  auto integral_to = [&](double cutoff) {
    RadialOptions opt;
    opt.upper = cutoff * cutoff;
    opt.order = detail::panel_order(cfg);
    if (p.is_infinite()) {
      // Maximum over the same nodes the finite-p rule would use.
      const auto pts = detail::graded_breakpoints(opt.upper, 0.5 * (1.0 - opt.upper));
      const auto& gl = legendre_rule(opt.order);
      double sup = 0.0;
      for (std::size_t k = 0; k + 1 < pts.size(); ++k) {
        for (double s : gl.nodes) {
          const double u = pts[k] + (pts[k + 1] - pts[k]) * s;
          sup = std::max(sup, std::abs(g(std::sqrt(u))));
        }
        sup = std::max(sup, std::abs(g(std::sqrt(pts[k + 1]))));
      }
      return sup;
    }
    const double pv = p.value();
    return ca * n *
           radial_integral<double>(
               [&](double u) { return std::pow(u, n - 1.0) * std::pow(std::abs(g(std::sqrt(u))), pv); },
               alpha, opt);
  };
  const double fine = integral_to(cfg.boundary_cutoff);
  const double coarse = integral_to(cfg.coarse_cutoff());
  if (p.is_infinite()) {
    NormEstimate est;
    est.value = fine;
    est.diverged = refinement_unstable(coarse, fine);
    return est;
  }
  return detail::finish_norm(fine, 0.0, coarse, p.inverse(), Method::kGridQuad);
}

}  // namespace frlab
