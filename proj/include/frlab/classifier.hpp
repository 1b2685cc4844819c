#pragma once

// Closed-form boundedness predicate for the weighted kernel operators
//
//   T_{a,b,c} f(z) = (1-|z|^2)^a \int (1-|w|^2)^b (1-<z,w>)^{-c} f(w) dv(w)
//   S_{a,b,c} f(z) = (1-|z|^2)^a \int (1-|w|^2)^b |1-<z,w>|^{-c} f(w) dv(w)
//
// acting L^p_alpha -> L^q_beta on the unit ball of C^n, for every (p, q) in
// [1, inf]^2. T and S are bounded for exactly the same parameters, so one
// predicate answers for both.
//
// All comparisons are exact floating-point comparisons on the given inputs.
// In particular the alpha == b branch of the p = 1 cell is an exact equality;
// callers that want "alpha ~ b" semantics must canonicalize their inputs.
// Each Verdict carries per-condition slacks so that near-boundary inputs can
// be recognised.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "frlab/errors.hpp"
#include "frlab/exponent.hpp"

namespace frlab {

struct Parameters {
  int n = 1;
  double a = 0.0;
  double b = 0.0;
  double c = 0.0;
  double alpha = 0.0;
  double beta = 0.0;
  ExtendedExponent p;
  ExtendedExponent q;
};

/// Parameters without the exponent pair; the base of a (1/p, 1/q) sweep.
struct OperatorParameters {
  int n = 1;
  double a = 0.0;
  double b = 0.0;
  double c = 0.0;
  double alpha = 0.0;
  double beta = 0.0;

  [[nodiscard]] Parameters with(const ExtendedExponent& p, const ExtendedExponent& q) const {
    return Parameters{n, a, b, c, alpha, beta, p, q};
  }
};

/// The (p, q) cell of [1, inf]^2 whose characterization applies.
enum class Regime {
  kInteriorPLeQ,  // 1 < p <= q < inf
  kSourceL1,      // p = 1 <= q < inf
  kInteriorQLtP,  // 1 <= q < p < inf
  kSourceLInf,    // p = inf, 1 <= q < inf
  kL1ToLInf,      // p = 1, q = inf
  kTargetLInf,    // 1 < p < inf, q = inf
  kLInfToLInf,    // p = q = inf
};

/// Wire tags used in reports and CSV output.
inline std::string_view regime_tag(Regime r) {
  switch (r) {
    case Regime::kInteriorPLeQ: return "ThmA";
    case Regime::kSourceL1: return "ThmB";
    case Regime::kInteriorQLtP: return "Thm1.1";
    case Regime::kSourceLInf: return "Thm1.1-pInf";
    case Regime::kL1ToLInf: return "Thm1.2";
    case Regime::kTargetLInf: return "Thm1.3";
    case Regime::kLInfToLInf: return "Thm1.3-pInf";
  }
  return "?";
}

inline Regime regime_for(const ExtendedExponent& p, const ExtendedExponent& q) {
  if (q.is_infinite()) {
    if (p.is_one()) return Regime::kL1ToLInf;
    if (p.is_infinite()) return Regime::kLInfToLInf;
    return Regime::kTargetLInf;
  }
  if (p.is_one()) return Regime::kSourceL1;
  if (p.is_infinite()) return Regime::kSourceLInf;
  return p.inverse() >= q.inverse() ? Regime::kInteriorPLeQ : Regime::kInteriorQLtP;
}

enum class Relation { kLess, kLessEqual, kEqual };

/// One inequality (or equality) of a characterization, evaluated.
///
/// slack = rhs - lhs for the inequalities and -|rhs - lhs| for equalities,
/// so a positive slack is satisfied with margin and zero is the boundary.
/// Slacks within detail::kBoundaryTolerance (relative) are reported as 0.
struct Condition {
  std::string_view name;
  Relation relation = Relation::kLess;
  double slack = 0.0;
  bool satisfied = false;
  int branch = 0;
};

/// Boundedness decision for T_{a,b,c} and S_{a,b,c} (they always agree).
///
/// `bounded` is the OR over branches of the AND of the branch's conditions;
/// single-branch regimes have all conditions in branch 0.
struct Verdict {
  bool bounded = false;
  Regime regime = Regime::kInteriorPLeQ;
  std::vector<Condition> conditions;

  [[nodiscard]] const Condition* find(std::string_view name) const {
    for (const auto& c : conditions) {
      if (c.name == name) return &c;
    }
    return nullptr;
  }
};

namespace detail {

/// Relative width of the band around a region boundary treated as on it.
inline constexpr double kBoundaryTolerance = 1e-12;

class ConditionList {
 public:
  void less(std::string_view name, double lhs, double rhs, int branch = 0) {
    const double slack = snapped(lhs, rhs);
    conds_.push_back({name, Relation::kLess, slack, slack > 0.0, branch});
  }
  void less_equal(std::string_view name, double lhs, double rhs, int branch = 0) {
    const double slack = snapped(lhs, rhs);
    conds_.push_back({name, Relation::kLessEqual, slack, slack >= 0.0, branch});
  }
  void equal(std::string_view name, double lhs, double rhs, int branch = 0) {
    const double slack = -std::abs(snapped(lhs, rhs));
    conds_.push_back({name, Relation::kEqual, slack, slack == 0.0, branch});
  }

  Verdict finish(Regime regime) && {
    Verdict v;
    v.regime = regime;
    int max_branch = 0;
    for (const auto& c : conds_) max_branch = std::max(max_branch, c.branch);
    for (int br = 0; br <= max_branch; ++br) {
      bool all = true;
      bool any = false;
      for (const auto& c : conds_) {
        if (c.branch != br) continue;
        any = true;
        all = all && c.satisfied;
      }
      if (any && all) v.bounded = true;
    }
    v.conditions = std::move(conds_);
    return v;
  }

 private:
  // rhs - lhs, set to exactly 0 within rounding of the operands so that
  // points on a region boundary classify the same way whichever algebraic
  // form of the inequality is evaluated.
  static double snapped(double lhs, double rhs) {
    const double slack = rhs - lhs;
    const double tol = kBoundaryTolerance * std::max({1.0, std::abs(lhs), std::abs(rhs)});
    return std::abs(slack) <= tol ? 0.0 : slack;
  }

  std::vector<Condition> conds_;
};

inline void require_weight(double w, const char* name) {
  if (!(w > -1.0)) {
    throw DomainError(std::string(name) + " must be > -1 (weighted measure not locally finite)");
  }
}

inline void require_dimension(int n) {
  if (n < 1) throw DomainError("n must be >= 1");
}

}  // namespace detail

inline void validate(const Parameters& prm) {
  detail::require_dimension(prm.n);
  detail::require_weight(prm.alpha, "alpha");
  detail::require_weight(prm.beta, "beta");
}

/// Boundedness of S_{a,b,c} (equivalently T_{a,b,c}) from L^p_alpha to L^q_beta.
inline Verdict classify(const Parameters& prm) {
  validate(prm);
  const double n1 = prm.n + 1.0;
  const double a = prm.a;
  const double b = prm.b;
  const double c = prm.c;
  const double al = prm.alpha;
  const double be = prm.beta;
  const double ip = prm.p.inverse();
  const double iq = prm.q.inverse();
  const Regime regime = regime_for(prm.p, prm.q);

  detail::ConditionList conds;
  switch (regime) {
    case Regime::kInteriorPLeQ: {
      const double q = prm.q.value();
      const double p = prm.p.value();
      conds.less("-q*a < beta+1", -q * a, be + 1.0);
      conds.less("alpha+1 < p*(b+1)", al + 1.0, p * (b + 1.0));
      conds.less_equal("c <= n+1+a+b+(n+1+beta)/q-(n+1+alpha)/p", c,
                       n1 + a + b + (n1 + be) * iq - (n1 + al) * ip);
      break;
    }
    case Regime::kSourceL1: {
      const double q = prm.q.value();
      conds.less("-q*a < beta+1", -q * a, be + 1.0, 0);
      conds.less("alpha < b", al, b, 0);
      conds.less_equal("c <= a+b-alpha+(n+1+beta)/q", c, a + b - al + (n1 + be) * iq, 0);
      conds.less("-q*a < beta+1", -q * a, be + 1.0, 1);
      conds.equal("alpha == b", al, b, 1);
      conds.less("c < a+(n+1+beta)/q", c, a + (n1 + be) * iq, 1);
      break;
    }
    case Regime::kInteriorQLtP: {
      const double q = prm.q.value();
      const double p = prm.p.value();
      conds.less("-q*a < beta+1", -q * a, be + 1.0);
      conds.less("alpha+1 < p*(b+1)", al + 1.0, p * (b + 1.0));
      conds.less("c < n+1+a+b+(1+beta)/q-(1+alpha)/p", c,
                 n1 + a + b + (1.0 + be) * iq - (1.0 + al) * ip);
      break;
    }
    case Regime::kSourceLInf: {
      const double q = prm.q.value();
      conds.less("-q*a < beta+1", -q * a, be + 1.0);
      conds.less("b > -1", -1.0, b);
      conds.less("c < n+1+a+b+(beta+1)/q", c, n1 + a + b + (be + 1.0) * iq);
      break;
    }
    case Regime::kL1ToLInf: {
      conds.less_equal("a >= 0", 0.0, a);
      conds.less_equal("alpha <= b", al, b);
      conds.less_equal("c <= a+b-alpha", c, a + b - al);
      break;
    }
    case Regime::kTargetLInf: {
      const double p = prm.p.value();
      conds.equal("a == 0", a, 0.0, 0);
      conds.less("alpha+1 < p*(b+1)", al + 1.0, p * (b + 1.0), 0);
      conds.less("c < n+1+b-(n+1+alpha)/p", c, n1 + b - (n1 + al) * ip, 0);
      conds.less("a > 0", 0.0, a, 1);
      conds.less("alpha+1 < p*(b+1)", al + 1.0, p * (b + 1.0), 1);
      conds.less_equal("c <= n+1+a+b-(n+1+alpha)/p", c, n1 + a + b - (n1 + al) * ip, 1);
      break;
    }
    case Regime::kLInfToLInf: {
      conds.equal("a == 0", a, 0.0, 0);
      conds.less("b > -1", -1.0, b, 0);
      conds.less("c < n+1+b", c, n1 + b, 0);
      conds.less("a > 0", 0.0, a, 1);
      conds.less("b > -1", -1.0, b, 1);
      conds.less_equal("c <= n+1+a+b", c, n1 + a + b, 1);
      break;
    }
  }
  return std::move(conds).finish(regime);
}

/// Boundedness of K_c^alpha f(z) = \int f(w) (1-<z,w>)^{-c} dv_alpha(w) on
/// L^p_alpha -> L^q_alpha, read off the explicit (1/p, 1/q) region
/// descriptions rather than from classify().
inline Verdict classify_kc(int n, double c, double alpha, const ExtendedExponent& p,
                           const ExtendedExponent& q) {
  detail::require_dimension(n);
  detail::require_weight(alpha, "alpha");
  const double big = n + 1.0 + alpha;          // n+1+alpha
  const double top = n + 2.0 * (1.0 + alpha);  // n+2(1+alpha)
  const double ip = p.inverse();
  const double iq = q.inverse();
  const Regime regime = regime_for(p, q);

  detail::ConditionList conds;
  if (c <= 0.0) {
    conds.less_equal("c <= 0", c, 0.0);
  } else if (c <= big) {
    // Critical source exponent p* = (n+1+alpha)/(n+1+alpha-c), via 1/p*.
    const double icrit = (big - c) / big;
    conds.equal("p == 1", ip, 1.0, 0);
    conds.less("1/q > c/(n+1+alpha)", c / big, iq, 0);

    conds.less("1 < p", ip, 1.0, 1);
    conds.less("p < p*", icrit, ip, 1);
    conds.less_equal("1/q >= 1/p + c/(n+1+alpha) - 1", ip + c / big - 1.0, iq, 1);

    conds.equal("p == p*", ip, icrit, 2);
    conds.less("q < inf", 0.0, iq, 2);

    conds.less("p > p*", ip, icrit, 3);
  } else if (c < top) {
    const double gap = (c - big) / (1.0 + alpha);
    conds.less("p > (1+alpha)/(n+2(1+alpha)-c)", ip, (top - c) / (1.0 + alpha));
    conds.less("1/q > 1/p + (c-(n+1+alpha))/(1+alpha)", ip + gap, iq);
  } else {
    conds.less("c < n+2(1+alpha)", c, top);
  }
  return std::move(conds).finish(regime);
}

/// Which of the two classical operators classify_projection() answers for.
enum class ProjectionKind {
  kBergman,  // P_gamma = c_gamma T_{0, gamma, n+1+gamma}
  kBerezin,  // B_gamma = c_gamma S_{n+1+gamma, gamma, 2(n+1+gamma)}
};

/// Boundedness of the weighted Bergman projection P_gamma (or the Berezin
/// transform B_gamma) from L^p_alpha to L^q_beta, encoded from the operators'
/// own (p, q) case list.
inline Verdict classify_projection(int n, double gamma, double alpha, double beta,
                                   const ExtendedExponent& p, const ExtendedExponent& q,
                                   ProjectionKind kind = ProjectionKind::kBergman) {
  detail::require_dimension(n);
  detail::require_weight(gamma, "gamma");
  detail::require_weight(alpha, "alpha");
  detail::require_weight(beta, "beta");
  const double n1 = n + 1.0;
  const double ip = p.inverse();
  const double iq = q.inverse();
  const Regime regime = regime_for(p, q);

  detail::ConditionList conds;
  switch (regime) {
    case Regime::kInteriorPLeQ:
      conds.less("alpha+1 < p*(gamma+1)", alpha + 1.0, p.value() * (gamma + 1.0));
      conds.less_equal("(n+1+alpha)/p <= (n+1+beta)/q", (n1 + alpha) * ip, (n1 + beta) * iq);
      break;
    case Regime::kSourceL1:
      conds.less("alpha < gamma", alpha, gamma, 0);
      conds.less_equal("n+1+alpha <= (n+1+beta)/q", n1 + alpha, (n1 + beta) * iq, 0);
      conds.equal("alpha == gamma", alpha, gamma, 1);
      conds.less("n+1+alpha < (n+1+beta)/q", n1 + alpha, (n1 + beta) * iq, 1);
      break;
    case Regime::kInteriorQLtP:
      conds.less("alpha+1 < p*(gamma+1)", alpha + 1.0, p.value() * (gamma + 1.0));
      conds.less("(1+alpha)/p < (1+beta)/q", (1.0 + alpha) * ip, (1.0 + beta) * iq);
      break;
    case Regime::kSourceLInf:
      // Both operators map L^inf into every L^q_beta with q finite.
      conds.less("q < inf", 0.0, iq);
      break;
    case Regime::kLInfToLInf:
      if (kind == ProjectionKind::kBergman) {
        conds.less("q < inf", 0.0, iq);
      } else {
        conds.less_equal("q <= inf", 0.0, iq);
      }
      break;
    case Regime::kL1ToLInf:
    case Regime::kTargetLInf:
      // Neither operator maps a finite-exponent L^p_alpha into L^inf.
      conds.less("p == inf", ip, 0.0);
      break;
  }
  return std::move(conds).finish(regime);
}

/// True iff some (p, q) in [1, inf]^2 makes K_c^alpha bounded.
inline bool exists_bounded_pair(int n, double c, double alpha) {
  return c < n + 2.0 * (1.0 + alpha);
}

struct ExponentPair {
  ExtendedExponent p;
  ExtendedExponent q;
};

/// A concrete (p, q) for which K_c^alpha is bounded, when one exists.
///
/// c <= 0 gives (2, 2). For 0 < c <= n+1+alpha the pair sits on the diagonal
/// 1/p + 1/q = 1 at half the admissible gap 1/p - 1/q. For larger c the pair
/// is q = 1 with 1/p at half its admissible bound.
inline ExponentPair witness_pair(int n, double c, double alpha) {
  detail::require_dimension(n);
  detail::require_weight(alpha, "alpha");
  if (!exists_bounded_pair(n, c, alpha)) {
    throw PreconditionError("witness_pair requires c < n+2(1+alpha)");
  }
  const double big = n + 1.0 + alpha;
  if (c <= 0.0) {
    return {ExtendedExponent::finite(2.0), ExtendedExponent::finite(2.0)};
  }
  if (c <= big) {
    const double tau = big - c;
    const double shift = tau / (4.0 * big);
    return {ExtendedExponent::from_inverse(0.5 + shift), ExtendedExponent::from_inverse(0.5 - shift)};
  }
  const double tau = n + 2.0 * (1.0 + alpha) - c;
  return {ExtendedExponent::from_inverse(tau / (2.0 * (1.0 + alpha))), ExtendedExponent::finite(1.0)};
}

/// Parameters of the adjoint operator L^{q'}_beta -> L^{p'}_alpha, dropping
/// the positive constant c_beta/c_alpha. For q = inf the adjoint acts on the
/// unweighted L^1 (alpha* = 0) and the kernel weight loses beta.
inline Parameters adjoint_parameters(const Parameters& prm) {
  validate(prm);
  Parameters adj;
  adj.n = prm.n;
  adj.c = prm.c;
  adj.a = prm.b - prm.alpha;
  adj.beta = prm.alpha;
  adj.p = prm.q.conjugate();
  adj.q = prm.p.conjugate();
  if (prm.q.is_finite()) {
    adj.b = prm.a + prm.beta;
    adj.alpha = prm.beta;
  } else {
    adj.b = prm.a;
    adj.alpha = 0.0;
  }
  return adj;
}

struct RegionPoint {
  double inv_p = 0.0;
  double inv_q = 0.0;
  Verdict verdict;
};

/// classify() at each (1/p, 1/q) grid point, in input order.
inline std::vector<RegionPoint> region_sweep(const OperatorParameters& base,
                                             const std::vector<std::pair<double, double>>& grid) {
  std::vector<RegionPoint> out;
  out.reserve(grid.size());
  for (const auto& [ip, iq] : grid) {
    auto prm = base.with(ExtendedExponent::from_inverse(ip), ExtendedExponent::from_inverse(iq));
    out.push_back({ip, iq, classify(prm)});
  }
  return out;
}

/// Uniform res x res grid over [0,1]^2, row-major in 1/p then 1/q.
inline std::vector<std::pair<double, double>> unit_square_grid(int res) {
  if (res < 2) throw DomainError("grid resolution must be >= 2");
  std::vector<std::pair<double, double>> grid;
  grid.reserve(static_cast<std::size_t>(res) * static_cast<std::size_t>(res));
  for (int i = 0; i < res; ++i) {
    for (int j = 0; j < res; ++j) {
      // i/(res-1) keeps the endpoints exactly 0 and 1.
      grid.emplace_back(static_cast<double>(i) / (res - 1), static_cast<double>(j) / (res - 1));
    }
  }
  return grid;
}

}  // namespace frlab
