#pragma once

// Gauss hypergeometric function 2F1(A, B; C; x) for real parameters and
// 0 <= x < 1.
//
// For x <= 1/2 (or a terminating series) the defining series is summed
// directly. Above 1/2 the function is rewritten through the connection
// formulas around x = 1, which turn it into series in y = 1 - x <= 1/2. This
// keeps the term count bounded right up to the boundary cutoff, where the
// direct series would need ~1e7 terms. Integer m = C - A - B uses the
// logarithmic forms; m within 1e-2 of an integer goes through the generic
// form in extended precision to absorb the cancellation in Gamma(m) Gamma(-m).

#include <cmath>
#include <string>

#include <boost/math/special_functions/gamma.hpp>
#include <boost/multiprecision/cpp_bin_float.hpp>

#include "frlab/errors.hpp"
#include "frlab/special/gamma.hpp"

namespace frlab {

struct SeriesConfig {
  int max_terms = 100000;
  double rel_tol = 1e-16;
  /// Largest admissible |z|; 2F1 arguments are squared radii, so x may not
  /// exceed boundary_cutoff^2 when the function is unbounded at x = 1.
  double boundary_cutoff = 1.0 - 1e-6;

  void validate() const {
    if (max_terms < 1) throw DomainError("SeriesConfig.max_terms must be >= 1");
    if (!(rel_tol > 0.0)) throw DomainError("SeriesConfig.rel_tol must be > 0");
    if (!(boundary_cutoff > 0.0 && boundary_cutoff < 1.0)) {
      throw DomainError("SeriesConfig.boundary_cutoff must lie in (0, 1)");
    }
  }
};

namespace detail {

inline double hyp_series(double a, double b, double c, double x, const SeriesConfig& cfg) {
  double sum = 1.0;
  double term = 1.0;
  for (int k = 0; k < cfg.max_terms; ++k) {
    term *= (a + k) * (b + k) / ((c + k) * (k + 1.0)) * x;
    sum += term;
    if (term == 0.0 || std::abs(term) <= cfg.rel_tol * std::abs(sum)) return sum;
  }
  throw ConvergenceError("2F1 series did not converge within " + std::to_string(cfg.max_terms) +
                         " terms");
}

// sum_k t_k * g(k) where t_0 = t0 and t_{k+1}/t_k = ratio(k); stops once a
// term is below rel_tol of the partial sum (after a few terms, since g may
// change sign early).
template <class Ratio, class G>
double log_series(double t0, Ratio ratio, G g, const SeriesConfig& cfg) {
  double sum = 0.0;
  double t = t0;
  for (int k = 0; k < cfg.max_terms; ++k) {
    const double term = t * g(k);
    sum += term;
    if (k > 3 && std::abs(term) <= cfg.rel_tol * std::abs(sum)) return sum;
    t *= ratio(k);
    if (t == 0.0) return sum;
  }
  throw ConvergenceError("2F1 logarithmic series did not converge");
}

// m = C - A - B is a nonnegative integer.
inline double hyp_integer_m_nonneg(double a, double b, int m, double y, const SeriesConfig& cfg) {
  const double ly = std::log(y);
  double first = 0.0;
  if (m > 0) {
    double t = 1.0;
    for (int k = 0; k < m; ++k) {
      first += t;
      if (k + 1 < m) t *= (a + k) * (b + k) / ((k + 1.0) * (1.0 - m + k)) * y;
    }
    first *= gamma_fn(m) * gamma_fn(a + b + m) * rgamma(a + m) * rgamma(b + m);
  }
  const double t0 = 1.0 / std::tgamma(m + 1.0);
  const double s = log_series(
      t0, [&](int k) { return (a + m + k) * (b + m + k) / ((k + 1.0) * (k + m + 1.0)) * y; },
      [&](int k) {
        return ly - digamma(k + 1.0) - digamma(k + m + 1.0) + digamma(a + k + m) +
               digamma(b + k + m);
      },
      cfg);
  const double sign = (m % 2 == 0) ? 1.0 : -1.0;
  return first - sign * gamma_fn(a + b + m) * rgamma(a) * rgamma(b) * std::pow(y, m) * s;
}

// m = C - A - B = -M is a negative integer.
inline double hyp_integer_m_neg(double a, double b, int M, double y, const SeriesConfig& cfg) {
  const double ly = std::log(y);
  double first = 0.0;
  double t = 1.0;
  for (int k = 0; k < M; ++k) {
    first += t;
    if (k + 1 < M) t *= (a - M + k) * (b - M + k) / ((k + 1.0) * (1.0 - M + k)) * y;
  }
  first *= gamma_fn(M) * gamma_fn(a + b - M) * rgamma(a) * rgamma(b) * std::pow(y, -M);
  const double t0 = 1.0 / std::tgamma(M + 1.0);
  const double s = log_series(
      t0, [&](int k) { return (a + k) * (b + k) / ((k + 1.0) * (k + M + 1.0)) * y; },
      [&](int k) {
        return ly - digamma(k + 1.0) - digamma(k + M + 1.0) + digamma(a + k) + digamma(b + k);
      },
      cfg);
  const double sign = (M % 2 == 0) ? 1.0 : -1.0;
  return first - sign * gamma_fn(a + b - M) * rgamma(a - M) * rgamma(b - M) * s;
}

template <class Real>
Real hyp_series_t(Real a, Real b, Real c, Real x, const SeriesConfig& cfg) {
  Real sum = 1;
  Real term = 1;
  for (int k = 0; k < cfg.max_terms; ++k) {
    term *= (a + k) * (b + k) / ((c + k) * (k + 1)) * x;
    sum += term;
    if (term == 0 || abs(term) <= cfg.rel_tol * abs(sum)) return sum;
  }
  throw ConvergenceError("2F1 series did not converge");
}

template <class Real>
Real rgamma_t(Real x) {
  using std::floor;
  if (x <= 0 && x == floor(x)) return Real(0);
  return 1 / boost::math::tgamma(x);
}

// Connection formula around x = 1 for non-integer m = C - A - B, evaluated
// in the working precision Real.
template <class Real>
Real hyp_connection_generic_t(Real a, Real b, Real c, Real y, const SeriesConfig& cfg) {
  using std::pow;
  const Real m = c - a - b;
  const Real left = boost::math::tgamma(c) * boost::math::tgamma(m) * rgamma_t(c - a) * rgamma_t(c - b);
  const Real right = boost::math::tgamma(c) * boost::math::tgamma(Real(-m)) * rgamma_t(a) * rgamma_t(b);
  Real value = 0;
  if (left != 0) value += left * hyp_series_t<Real>(a, b, 1 - m, y, cfg);
  if (right != 0) value += right * pow(y, m) * hyp_series_t<Real>(c - a, c - b, 1 + m, y, cfg);
  return value;
}

inline double hyp_connection_generic(double a, double b, double c, double y, const SeriesConfig& cfg) {
  const double m = c - a - b;
  const double left = gamma_fn(c) * gamma_fn(m) * rgamma(c - a) * rgamma(c - b);
  const double right = gamma_fn(c) * gamma_fn(-m) * rgamma(a) * rgamma(b);
  double value = 0.0;
  if (left != 0.0) value += left * hyp_series(a, b, 1.0 - m, y, cfg);
  if (right != 0.0) value += right * std::pow(y, m) * hyp_series(c - a, c - b, 1.0 + m, y, cfg);
  return value;
}

// Near-integer m: the two terms are each of size ~1/d^2 for d = m - round(m)
// and cancel, so they are summed with 50 significant digits.
inline double hyp_connection_near_integer(double a, double b, double c, double y,
                                          const SeriesConfig& cfg) {
  using Wide = boost::multiprecision::cpp_bin_float_50;
  SeriesConfig wide_cfg = cfg;
  wide_cfg.rel_tol = 1e-30;
  const Wide v = hyp_connection_generic_t<Wide>(Wide(a), Wide(b), Wide(c), Wide(y), wide_cfg);
  return static_cast<double>(v);
}

inline double hyp_connection_exact_integer(double a, double b, int m, double y,
                                           const SeriesConfig& cfg) {
  return m >= 0 ? hyp_integer_m_nonneg(a, b, m, y, cfg) : hyp_integer_m_neg(a, b, -m, y, cfg);
}

inline bool is_terminating(double a, double b) {
  return is_nonpositive_integer(a) || is_nonpositive_integer(b);
}

}  // namespace detail

/// 2F1(A, B; C; x) given both x and y = 1 - x. Near x = 1 the caller can
/// usually form y without the cancellation in 1 - x, and only y enters the
/// connection formulas.
inline double hyp2f1_with_complement(double a, double b, double c, double x, double y,
                                     const SeriesConfig& cfg = {}) {
  cfg.validate();
  if (detail::is_nonpositive_integer(c)) {
    throw DomainError("hyp2f1 requires C not a nonpositive integer");
  }
  if (!(x >= 0.0 && y > 0.0)) {
    throw DomainError("hyp2f1 requires 0 <= x < 1 (got x = " + std::to_string(x) + ")");
  }
  const double m = c - a - b;
  const double cut = cfg.boundary_cutoff;
  if (m <= 0.0 && y < (1.0 - cut) * (1.0 + cut)) {
    throw BoundaryError("hyp2f1 argument beyond the boundary cutoff");
  }
  if (x <= 0.5 || detail::is_terminating(a, b)) return detail::hyp_series(a, b, c, x, cfg);

  const double mi = std::round(m);
  const double d = m - mi;
  if (d == 0.0) return detail::hyp_connection_exact_integer(a, b, static_cast<int>(mi), y, cfg);
  if (std::abs(d) >= 1e-2) return detail::hyp_connection_generic(a, b, c, y, cfg);
  return detail::hyp_connection_near_integer(a, b, c, y, cfg);
}

/// 2F1(A, B; C; x) for 0 <= x < 1.
inline double hyp2f1(double a, double b, double c, double x, const SeriesConfig& cfg = {}) {
  if (!(x >= 0.0 && x < 1.0)) {
    throw DomainError("hyp2f1 requires 0 <= x < 1 (got " + std::to_string(x) + ")");
  }
  return hyp2f1_with_complement(a, b, c, x, 1.0 - x, cfg);
}

}  // namespace frlab
