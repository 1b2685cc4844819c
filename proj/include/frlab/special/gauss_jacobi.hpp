#pragma once

// Gauss-Jacobi and Gauss-Legendre rules via Golub-Welsch, mapped to [0, 1].

#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <tuple>
#include <vector>

#include <Eigen/Eigenvalues>

#include "frlab/errors.hpp"
#include "frlab/special/gamma.hpp"

namespace frlab {

/// Nodes u_i in (0, 1) and weights w_i with
///   \int_0^1 (1-u)^a u^b g(u) du ~ sum_i w_i g(u_i).
struct UnitRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

namespace detail {

inline UnitRule build_jacobi_rule(int order, double a, double b) {
  // Monic Jacobi recurrence for the weight (1-x)^a (1+x)^b on [-1, 1].
  Eigen::VectorXd diag(order);
  Eigen::VectorXd sub(order > 1 ? order - 1 : 0);
  const double ab = a + b;
  for (int k = 0; k < order; ++k) {
    const double s = 2.0 * k + ab;
    if (k == 0) {
      diag(k) = (b - a) / (ab + 2.0);
    } else {
      diag(k) = (b * b - a * a) / (s * (s + 2.0));
    }
    if (k >= 1) {
      double beta = 0.0;
      if (k == 1) {
        beta = 4.0 * (1.0 + a) * (1.0 + b) / ((2.0 + ab) * (2.0 + ab) * (3.0 + ab));
      } else {
        beta = 4.0 * k * (k + a) * (k + b) * (k + ab) / (s * s * (s + 1.0) * (s - 1.0));
      }
      sub(k - 1) = std::sqrt(beta);
    }
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver;
  solver.computeFromTridiagonal(diag, sub, Eigen::ComputeEigenvectors);
  if (solver.info() != Eigen::Success) {
    throw ConvergenceError("Golub-Welsch eigensolve failed for order " + std::to_string(order));
  }
  const double log_mu0 =
      (ab + 1.0) * std::log(2.0) + log_gamma(a + 1.0) + log_gamma(b + 1.0) - log_gamma(ab + 2.0);
  const double mu0 = std::exp(log_mu0);
  // x = 2u - 1 turns (1-x)^a (1+x)^b dx into 2^{a+b+1} (1-u)^a u^b du.
  const double scale = std::exp(-(ab + 1.0) * std::log(2.0));
  UnitRule rule;
  rule.nodes.resize(order);
  rule.weights.resize(order);
  for (int i = 0; i < order; ++i) {
    const double v0 = solver.eigenvectors()(0, i);
    rule.nodes[i] = 0.5 * (1.0 + solver.eigenvalues()(i));
    rule.weights[i] = mu0 * v0 * v0 * scale;
  }
  return rule;
}

}  // namespace detail

/// Cached Gauss-Jacobi rule on [0, 1] for the weight (1-u)^a u^b.
/// Returned references stay valid for the life of the process.
inline const UnitRule& jacobi_rule(int order, double a, double b = 0.0) {
  if (order < 1) throw DomainError("quadrature order must be >= 1");
  if (!(a > -1.0) || !(b > -1.0)) throw DomainError("Jacobi exponents must be > -1");
  static std::mutex mutex;
  static std::map<std::tuple<int, double, double>, std::unique_ptr<UnitRule>> cache;
  const std::lock_guard<std::mutex> lock(mutex);
  auto& slot = cache[{order, a, b}];
  if (!slot) slot = std::make_unique<UnitRule>(detail::build_jacobi_rule(order, a, b));
  return *slot;
}

/// Gauss-Legendre rule on [0, 1].
inline const UnitRule& legendre_rule(int order) { return jacobi_rule(order, 0.0, 0.0); }

}  // namespace frlab
