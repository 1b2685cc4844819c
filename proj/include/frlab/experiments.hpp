#pragma once

// Reproducible experiments behind the command-line front end: classification
// queries, region sweeps, blow-up curves along the test families, exact-norm
// rows, and the identity verification suite. Each returns an
// ExperimentReport whose rows are plain strings, ready for CSV or JSON.

#include <charconv>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <ctime>
#include <functional>
#include <limits>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "frlab/ball_quadrature.hpp"
#include "frlab/classifier.hpp"
#include "frlab/errors.hpp"
#include "frlab/operators.hpp"
#include "frlab/schur_norms.hpp"
#include "frlab/special_functions.hpp"

#ifndef FRLAB_VERSION
#define FRLAB_VERSION "0.0.0"
#endif

namespace frlab {

/// Shortest round-trip decimal; "inf"/"-inf"/"nan" for non-finite values.
inline std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[32];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, ptr);
}

inline std::string format_bool(bool b) { return b ? "true" : "false"; }

struct ExperimentReport {
  std::string command;
  std::vector<std::pair<std::string, std::string>> inputs;
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;
  nlohmann::ordered_json metadata = nlohmann::ordered_json::object();

  void add_row(std::vector<std::string> row) {
    if (row.size() != columns.size()) throw PreconditionError("report row width mismatch");
    rows.push_back(std::move(row));
  }
};

/// Header row then one line per row; cells never contain commas or quotes.
inline void write_csv(const ExperimentReport& rep, std::ostream& out) {
  for (std::size_t i = 0; i < rep.columns.size(); ++i) out << (i ? "," : "") << rep.columns[i];
  out << '\n';
  for (const auto& row : rep.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << row[i];
    out << '\n';
  }
}

inline nlohmann::ordered_json report_metadata_json(const ExperimentReport& rep) {
  nlohmann::ordered_json j;
  j["command"] = rep.command;
  nlohmann::ordered_json inputs = nlohmann::ordered_json::object();
  for (const auto& [k, v] : rep.inputs) inputs[k] = v;
  j["inputs"] = inputs;
  j["columns"] = rep.columns;
  j["metadata"] = rep.metadata;
  return j;
}

inline nlohmann::ordered_json report_json(const ExperimentReport& rep) {
  auto j = report_metadata_json(rep);
  nlohmann::ordered_json rows = nlohmann::ordered_json::array();
  for (const auto& row : rep.rows) {
    nlohmann::ordered_json r;
    for (std::size_t i = 0; i < row.size(); ++i) r[rep.columns[i]] = row[i];
    rows.push_back(r);
  }
  j["rows"] = rows;
  return j;
}

/// Seconds since the epoch from SOURCE_DATE_EPOCH when set, otherwise the
/// wall clock, as an ISO-8601 UTC string.
inline std::string report_timestamp() {
  std::time_t t = std::time(nullptr);
  if (const char* env = std::getenv("SOURCE_DATE_EPOCH")) {
    long long v = 0;
    const std::string s(env);
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec == std::errc{} && ptr == s.data() + s.size()) t = static_cast<std::time_t>(v);
  }
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

inline void stamp_metadata(ExperimentReport& rep, const QuadratureConfig* cfg) {
  rep.metadata["version"] = FRLAB_VERSION;
  rep.metadata["timestamp"] = report_timestamp();
  if (cfg != nullptr) {
    rep.metadata["seed"] = cfg->seed;
    rep.metadata["config"] = {{"radial_nodes", cfg->radial_nodes},
                              {"angular_nodes", cfg->angular_nodes},
                              {"mc_samples", cfg->mc_samples},
                              {"boundary_cutoff", cfg->boundary_cutoff}};
  }
}

inline void add_parameter_inputs(ExperimentReport& rep, const Parameters& prm) {
  rep.inputs = {{"n", std::to_string(prm.n)},        {"a", format_double(prm.a)},
                {"b", format_double(prm.b)},         {"c", format_double(prm.c)},
                {"alpha", format_double(prm.alpha)}, {"beta", format_double(prm.beta)},
                {"p", prm.p.to_string()},            {"q", prm.q.to_string()}};
}

inline const char* relation_symbol(Relation r) {
  switch (r) {
    case Relation::kLess: return "<";
    case Relation::kLessEqual: return "<=";
    case Relation::kEqual: return "==";
  }
  return "?";
}

// ---------------------------------------------------------------------------

inline ExperimentReport run_classify(const Parameters& prm) {
  const Verdict v = classify(prm);
  ExperimentReport rep;
  rep.command = "classify";
  add_parameter_inputs(rep, prm);
  rep.columns = {"verdict", "regime", "branch", "condition", "relation", "satisfied", "slack"};
  const std::string verdict = v.bounded ? "Bounded" : "Unbounded";
  for (const auto& c : v.conditions) {
    rep.add_row({verdict, std::string(regime_tag(v.regime)), std::to_string(c.branch), std::string(c.name),
                 relation_symbol(c.relation), format_bool(c.satisfied), format_double(c.slack)});
  }
  if (rep.rows.empty()) rep.add_row({verdict, std::string(regime_tag(v.regime)), "0", "", "", "", ""});
  stamp_metadata(rep, nullptr);
  rep.metadata["bounded"] = v.bounded;
  rep.metadata["regime"] = std::string(regime_tag(v.regime));
  return rep;
}

/// Which predicate a region sweep evaluates.
enum class RegionPreset {
  kGeneral,     // classify with the full parameter tuple
  kKc,          // classify_kc(n, c, alpha)
  kProjection,  // classify_projection with gamma = b
  kBerezin,     // classify_projection (Berezin) with gamma = b
};

inline RegionPreset parse_region_preset(const std::string& s) {
  if (s == "general") return RegionPreset::kGeneral;
  if (s == "kc") return RegionPreset::kKc;
  if (s == "projection") return RegionPreset::kProjection;
  if (s == "berezin") return RegionPreset::kBerezin;
  throw DomainError("unknown region preset '" + s + "' (expected general|kc|projection|berezin)");
}

inline Verdict region_verdict(RegionPreset preset, const OperatorParameters& base,
                              const ExtendedExponent& p, const ExtendedExponent& q) {
  switch (preset) {
    case RegionPreset::kGeneral: return classify(base.with(p, q));
    case RegionPreset::kKc: return classify_kc(base.n, base.c, base.alpha, p, q);
    case RegionPreset::kProjection:
      return classify_projection(base.n, base.b, base.alpha, base.beta, p, q, ProjectionKind::kBergman);
    case RegionPreset::kBerezin:
      return classify_projection(base.n, base.b, base.alpha, base.beta, p, q, ProjectionKind::kBerezin);
  }
  throw DomainError("unknown region preset");
}

inline ExperimentReport run_region(RegionPreset preset, const OperatorParameters& base, int resolution) {
  const auto grid = unit_square_grid(resolution);
  // Validate once up front so that an invalid tuple fails before any row.
  validate(base.with(ExtendedExponent::finite(2.0), ExtendedExponent::finite(2.0)));
  ExperimentReport rep;
  rep.command = "region";
  rep.inputs = {{"n", std::to_string(base.n)},        {"a", format_double(base.a)},
                {"b", format_double(base.b)},         {"c", format_double(base.c)},
                {"alpha", format_double(base.alpha)}, {"beta", format_double(base.beta)},
                {"grid", std::to_string(resolution)}};
  rep.columns = {"inv_p", "inv_q", "bounded", "regime"};
  rep.rows.reserve(grid.size());
  for (const auto& [ip, iq] : grid) {
    const Verdict v = region_verdict(preset, base, ExtendedExponent::from_inverse(ip),
                                     ExtendedExponent::from_inverse(iq));
    rep.add_row({format_double(ip), format_double(iq), format_bool(v.bounded),
                 std::string(regime_tag(v.regime))});
  }
  stamp_metadata(rep, nullptr);
  return rep;
}

// ---------------------------------------------------------------------------
// Blow-up curves.

enum class FamilyKind { kPower, kKernelEqual, kKernelLess };

inline FamilyKind parse_family(const std::string& s) {
  if (s == "power") return FamilyKind::kPower;
  if (s == "fxi-equal") return FamilyKind::kKernelEqual;
  if (s == "fxi-less") return FamilyKind::kKernelLess;
  throw DomainError("unknown family '" + s + "' (expected power|fxi-equal|fxi-less)");
}

/// One point of a blow-up curve.
struct BlowupRow {
  double radius = 0.0;
  NormEstimate source;
  NormEstimate image;
  double ratio = 0.0;
};

namespace detail {

// ||(1-|z|^2)^a (1-<z,xi>)^{-c}||_{q,beta} times `scale`, with |xi| = r.
inline NormEstimate kernel_image_norm(int n, double a, double c, double beta, const ExtendedExponent& q,
                                      double r, double scale, const QuadratureConfig& cfg) {
  NormEstimate est;
  est.method = Method::kClosedForm;
  if (q.is_infinite()) {
    est.value = scale * axis_sup(r, c, a, cfg.boundary_cutoff);
    const double coarse = scale * axis_sup(r, c, a, cfg.coarse_cutoff());
    est.diverged = refinement_unstable(coarse, est.value);
    return est;
  }
  const double qv = q.value();
  const double t = a * qv + beta;
  if (!(t > -1.0)) {
    est.value = std::numeric_limits<double>::infinity();
    est.diverged = true;
    return est;
  }
  est.value = scale * std::pow(c_alpha(n, beta) * i_ct(n, r, c * qv, t, series_for(cfg)), 1.0 / qv);
  return est;
}

}  // namespace detail

/// Norm quotients ||T f||_{q,beta} / ||f||_{p,alpha} along a test family.
///
/// The kernel families use the closed-form image of T, so both norms reduce
/// to kernel integrals at |xi|; `radii` are the |xi| values. For the power
/// family f_N the source and image are radial, `radii` are truncation
/// cutoffs, and each norm is taken over |z| <= radius with divergence judged
/// by the same cutoff refinement as weighted_norm.
inline std::vector<BlowupRow> blowup_curve(const Parameters& prm, FamilyKind family, double N,
                                           const std::vector<double>& radii, const QuadratureConfig& cfg) {
  validate(prm);
  cfg.validate();
  const int n = prm.n;
  const KernelSpec spec{prm.a, prm.b, prm.c, false};
  std::vector<BlowupRow> out;
  for (double r : radii) {
    if (!(r >= 0.0 && r < 1.0)) throw DomainError("blow-up radii must lie in [0, 1)");
    BlowupRow row;
    row.radius = r;
    const double gap = (1.0 - r) * (1.0 + r);
    switch (family) {
      case FamilyKind::kPower: {
        QuadratureConfig local = cfg;
        local.boundary_cutoff = r;
        const auto image = closed_image_fn(spec, n, N);
        row.source = radial_norm([&](double s) { return std::pow((1.0 - s) * (1.0 + s), N); }, n, prm.p,
                                 prm.alpha, local);
        row.image = radial_norm(
            [&](double s) { return image.constant * std::pow((1.0 - s) * (1.0 + s), prm.a); }, n, prm.q,
            prm.beta, local);
        // The refinement check needs a positive coarse cutoff.
        if (!(local.coarse_cutoff() > 0.0)) row.source.diverged = row.image.diverged = false;
        break;
      }
      case FamilyKind::kKernelEqual: {
        if (prm.b != prm.alpha) throw PreconditionError("fxi-equal needs b == alpha");
        const double e = n + 1.0 + prm.alpha;
        row.source.method = Method::kClosedForm;
        if (prm.p.is_infinite()) {
          row.source.value = std::pow((1.0 + r) / (1.0 - r), e);
        } else {
          const double pv = prm.p.value();
          row.source.value = std::pow(gap, e) *
                             std::pow(c_alpha(n, prm.alpha) *
                                          i_ct(n, r, 2.0 * e * pv, prm.alpha, detail::series_for(cfg)),
                                      1.0 / pv);
        }
        row.image = detail::kernel_image_norm(n, prm.a, prm.c, prm.beta, prm.q, r,
                                              1.0 / c_alpha(n, prm.alpha), cfg);
        break;
      }
      case FamilyKind::kKernelLess: {
        if (!(prm.alpha < prm.b)) throw PreconditionError("fxi-less needs alpha < b");
        const double e = n + 1.0 + prm.b;
        const double lead = std::pow(gap, prm.b - prm.alpha);
        row.source.method = Method::kClosedForm;
        if (prm.p.is_infinite()) {
          row.source.value = lead * std::pow(1.0 - r, -e);
        } else {
          const double pv = prm.p.value();
          row.source.value =
              lead * std::pow(c_alpha(n, prm.alpha) * i_ct(n, r, e * pv, prm.alpha, detail::series_for(cfg)),
                              1.0 / pv);
        }
        row.image = detail::kernel_image_norm(n, prm.a, prm.c, prm.beta, prm.q, r,
                                              lead / c_alpha(n, prm.b), cfg);
        break;
      }
    }
    row.ratio = row.image.value / row.source.value;
    out.push_back(row);
  }
  return out;
}

inline ExperimentReport run_blowup(const Parameters& prm, FamilyKind family, double N,
                                   const std::vector<double>& radii, const QuadratureConfig& cfg) {
  const auto curve = blowup_curve(prm, family, N, radii, cfg);
  ExperimentReport rep;
  rep.command = "blowup";
  add_parameter_inputs(rep, prm);
  rep.inputs.emplace_back("family", family == FamilyKind::kPower        ? "power"
                                    : family == FamilyKind::kKernelEqual ? "fxi-equal"
                                                                         : "fxi-less");
  if (family == FamilyKind::kPower) rep.inputs.emplace_back("N", format_double(N));
  rep.columns = {"radius", "source_norm", "image_norm", "ratio", "diverged"};
  for (const auto& row : curve) {
    rep.add_row({format_double(row.radius), format_double(row.source.value), format_double(row.image.value),
                 format_double(row.ratio), format_bool(row.source.diverged || row.image.diverged)});
  }
  stamp_metadata(rep, &cfg);
  const Verdict v = classify(prm);
  rep.metadata["bounded"] = v.bounded;
  rep.metadata["regime"] = std::string(regime_tag(v.regime));
  return rep;
}

// ---------------------------------------------------------------------------
// Exact-norm rows.

enum class NormRow { kPInfinity, kQOne, kQInfinity };

inline NormRow parse_norm_row(const std::string& s) {
  if (s == "p-inf") return NormRow::kPInfinity;
  if (s == "q-1") return NormRow::kQOne;
  if (s == "q-inf") return NormRow::kQInfinity;
  throw DomainError("unknown norm row '" + s + "' (expected p-inf|q-1|q-inf)");
}

/// Radii 1 - 10^{-k/4} truncated at the cutoff (which is always included).
inline std::vector<double> radii_to_cutoff(double cutoff) {
  std::vector<double> r;
  for (int k = 0;; ++k) {
    const double v = 1.0 - std::pow(10.0, -k / 4.0);
    if (v >= cutoff) break;
    r.push_back(v);
  }
  r.push_back(cutoff);
  return r;
}

/// The S-type operator norm for one of the rows with an exact formula. The
/// selector fixes the corresponding exponent: p = inf, q = 1, or q = inf.
inline NormEstimate exact_row_norm(const Parameters& prm, NormRow row, const QuadratureConfig& cfg) {
  const KernelSpec spec{prm.a, prm.b, prm.c, true};
  switch (row) {
    case NormRow::kPInfinity: return exact_norm_p_infty(spec, prm.n, prm.beta, prm.q, cfg);
    case NormRow::kQOne: return exact_norm_q1(spec, prm.n, prm.alpha, prm.beta, prm.p, cfg);
    case NormRow::kQInfinity:
      return sup_kernel_norm(spec, prm.n, prm.alpha, prm.p, radii_to_cutoff(cfg.boundary_cutoff), cfg);
  }
  throw DomainError("unknown norm row");
}

inline Parameters with_row_exponent(Parameters prm, NormRow row) {
  switch (row) {
    case NormRow::kPInfinity: prm.p = ExtendedExponent::infinity(); break;
    case NormRow::kQOne: prm.q = ExtendedExponent::finite(1.0); break;
    case NormRow::kQInfinity: prm.q = ExtendedExponent::infinity(); break;
  }
  return prm;
}

inline ExperimentReport run_norm(const Parameters& input, NormRow row, const QuadratureConfig& cfg) {
  const Parameters prm = with_row_exponent(input, row);
  validate(prm);
  const NormEstimate est = exact_row_norm(prm, row, cfg);
  const Verdict v = classify(prm);
  ExperimentReport rep;
  rep.command = "norm";
  add_parameter_inputs(rep, prm);
  rep.columns = {"row", "norm", "std_error", "method", "diverged", "bounded", "regime"};
  const char* name = row == NormRow::kPInfinity ? "p-inf" : row == NormRow::kQOne ? "q-1" : "q-inf";
  rep.add_row({name, format_double(est.value), format_double(est.std_error), method_tag(est.method),
               format_bool(est.diverged), format_bool(v.bounded), std::string(regime_tag(v.regime))});
  stamp_metadata(rep, &cfg);
  return rep;
}

// ---------------------------------------------------------------------------
// Identity verification suite.

struct VerifyCheck {
  std::string name;
  double residual = 0.0;
  double tolerance = 0.0;
  [[nodiscard]] bool passed() const { return residual <= tolerance; }
};

namespace detail {

inline double rel_err(cplx got, cplx want) {
  const double scale = std::abs(want);
  return scale > 0.0 ? std::abs(got - want) / scale : std::abs(got - want);
}

}  // namespace detail

/// Runs the identity suite. A non-empty `tolerance_override` replaces every
/// check's tolerance.
inline std::vector<VerifyCheck> run_verify_checks(const QuadratureConfig& cfg,
                                                  std::optional<double> tolerance_override = std::nullopt) {
  cfg.validate();
  std::vector<VerifyCheck> checks;
  auto add = [&](std::string name, double residual, double tol) {
    checks.push_back({std::move(name), residual, tolerance_override.value_or(tol)});
  };

  const std::vector<cplx> zs{{0.0, 0.0}, {0.3, 0.0}, {-0.2, 0.5}, {0.6, -0.3}, {0.0, 0.7}};
  const Point xi = make_point({cplx(0.5, 0.2)});

  // Reproducing identity.
  for (double alpha : {0.0, 1.0}) {
    for (double c : {1.0, 2.0}) {
      double worst = 0.0;
      for (const auto& z : zs) worst = std::max(worst, reproducing_residual(alpha, c, make_point({z}), xi, cfg));
      add("reproducing alpha=" + format_double(alpha) + " c=" + format_double(c), worst, 1e-3);
    }
  }

  // Closed-form image of f_N.
  {
    const KernelSpec spec{0.5, 0.0, 2.0, false};
    const double N = 1.0;
    const auto image = closed_image_fn(spec, 1, N);
    const auto f = family_function(PowerFN{N}, spec.b, 0.0);
    double worst = 0.0;
    for (const auto& z : zs) {
      const Point p = make_point({z});
      worst = std::max(worst, detail::rel_err(apply_operator(spec, f, p, cfg).value, image(p)));
    }
    add("closed image f_N", worst, 1e-4);
  }

  // Closed-form images of f_xi (b = alpha and alpha < b).
  {
    const KernelSpec spec{0.5, 0.0, 2.0, false};
    const TestFamily fam = KernelFXiEqual{xi};
    const auto f = family_function(fam, spec.b, 0.0);
    const auto image = closed_image_fxi(spec, 1, 0.0, fam);
    double worst = 0.0;
    for (const auto& z : zs) {
      const Point p = make_point({z});
      worst = std::max(worst, detail::rel_err(apply_operator(spec, f, p, cfg).value, image(p)));
    }
    add("closed image f_xi (b = alpha)", worst, 1e-4);
  }
  {
    const KernelSpec spec{0.5, 1.0, 2.5, false};
    const TestFamily fam = KernelFXiLess{xi};
    const auto f = family_function(fam, spec.b, 0.0);
    const auto image = closed_image_fxi(spec, 1, 0.0, fam);
    double worst = 0.0;
    for (const auto& z : zs) {
      const Point p = make_point({z});
      worst = std::max(worst, detail::rel_err(apply_operator(spec, f, p, cfg).value, image(p)));
    }
    add("closed image f_xi (alpha < b)", worst, 1e-4);
  }

  // Berezin transform fixes holomorphic monomials.
  for (int k = 0; k <= 3; ++k) {
    double worst = 0.0;
    for (const auto& z : zs) {
      const Point p = make_point({z});
      const auto est = berezin(0.0, [k](const Point& w) { return std::pow(w(0), k); }, p, cfg);
      worst = std::max(worst, std::abs(est.value - std::pow(z, k)));
    }
    add("berezin fixes z^" + std::to_string(k), worst, 1e-4);
  }

  // Bergman projection reproduces its own kernel.
  {
    const double gamma = 0.5;
    const double e = 2.0 + gamma;
    double worst = 0.0;
    for (const auto& z : zs) {
      const Point p = make_point({z});
      auto kern = [&](const Point& w) { return std::exp(-e * std::log(1.0 - inner(w, xi))); };
      const auto est = bergman_project(gamma, kern, p, cfg);
      worst = std::max(worst, detail::rel_err(est.value, kern(p)));
    }
    add("projection fixes its kernel", worst, 1e-4);
  }

  // Exact norm of the L^inf -> L^1 row by both formulas.
  {
    const KernelSpec spec{0.5, 0.3, 2.2, true};
    const auto lhs = exact_norm_p_infty(spec, 1, 0.2, ExtendedExponent::finite(1.0), cfg);
    const auto rhs = exact_norm_q1(spec, 1, 0.4, 0.2, ExtendedExponent::infinity(), cfg);
    add("exact norm inf->1 cross-formula", std::abs(lhs.value - rhs.value) / rhs.value, 1e-3);
  }

  // Zonal reduction against Monte Carlo in C^2, in units of standard errors.
  {
    const Point z = axis_point(2, 0.5);
    const auto mc = i_ct_mc(z, 3.0, 0.0, cfg);
    const double exact = i_ct(2, 0.5, 3.0, 0.0);
    add("i_ct vs Monte Carlo (stderr units)", std::abs(exact - mc.value) / mc.std_error, 3.0);
  }
  return checks;
}

inline ExperimentReport run_verify(const QuadratureConfig& cfg, std::optional<double> tolerance_override) {
  const auto checks = run_verify_checks(cfg, tolerance_override);
  ExperimentReport rep;
  rep.command = "verify";
  if (tolerance_override) rep.inputs.emplace_back("tol", format_double(*tolerance_override));
  rep.columns = {"check", "residual", "tolerance", "pass"};
  bool all = true;
  for (const auto& c : checks) {
    rep.add_row({c.name, format_double(c.residual), format_double(c.tolerance), format_bool(c.passed())});
    all = all && c.passed();
  }
  stamp_metadata(rep, &cfg);
  rep.metadata["all_passed"] = all;
  return rep;
}

}  // namespace frlab
