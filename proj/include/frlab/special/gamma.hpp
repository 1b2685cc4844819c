#pragma once

#include <cmath>
#include <string>

#include <boost/math/special_functions/digamma.hpp>
#include <boost/math/special_functions/gamma.hpp>

#include "frlab/errors.hpp"

namespace frlab {

/// log Gamma(x) for x > 0.
inline double log_gamma(double x) {
  if (!(x > 0.0)) throw DomainError("log_gamma requires x > 0 (got " + std::to_string(x) + ")");
  return boost::math::lgamma(x);
}

/// log B(x, y) = log Gamma(x) + log Gamma(y) - log Gamma(x + y).
inline double log_beta(double x, double y) {
  return log_gamma(x) + log_gamma(y) - log_gamma(x + y);
}

/// Normalizing constant c_alpha = Gamma(n+alpha+1) / (n! Gamma(alpha+1)),
/// chosen so that dv_alpha = c_alpha (1-|z|^2)^alpha dv is a probability
/// measure on the ball.
inline double c_alpha(int n, double alpha) {
  if (n < 1) throw DomainError("n must be >= 1");
  if (!(alpha > -1.0)) throw DomainError("alpha must be > -1 (got " + std::to_string(alpha) + ")");
  return std::exp(log_gamma(n + alpha + 1.0) - log_gamma(n + 1.0) - log_gamma(alpha + 1.0));
}

/// \int_B (1-|w|^2)^t dv(w) = n! Gamma(t+1) / Gamma(n+t+1) = 1 / c_t.
inline double weighted_volume(int n, double t) { return 1.0 / c_alpha(n, t); }

namespace detail {

// Gamma and its reciprocal with the poles handled; only used internally by
// the hypergeometric connection formulas where arguments can hit poles.
inline double gamma_fn(double x) { return boost::math::tgamma(x); }

inline bool is_nonpositive_integer(double x) { return x <= 0.0 && x == std::floor(x); }

inline double rgamma(double x) {
  if (is_nonpositive_integer(x)) return 0.0;
  return 1.0 / boost::math::tgamma(x);
}

inline double digamma(double x) { return boost::math::digamma(x); }

}  // namespace detail

}  // namespace frlab
