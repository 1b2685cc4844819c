#include <catch_amalgamated.hpp>

#include <sstream>

#include "frlab/experiments.hpp"

using frlab::ExtendedExponent;
using frlab::FamilyKind;
using frlab::Parameters;
using frlab::QuadratureConfig;

namespace {

Parameters tuple(double c, ExtendedExponent p, ExtendedExponent q) {
  return Parameters{1, 0.0, 0.0, c, 0.0, 0.0, p, q};
}

std::string csv(const frlab::ExperimentReport& rep) {
  std::ostringstream out;
  frlab::write_csv(rep, out);
  return out.str();
}

}  // namespace

TEST_CASE("number formatting round-trips and spells non-finite values") {
  CHECK(frlab::format_double(0.1) == "0.1");
  CHECK(frlab::format_double(std::numeric_limits<double>::infinity()) == "inf");
  CHECK(frlab::format_double(-std::numeric_limits<double>::infinity()) == "-inf");
  CHECK(frlab::format_double(std::nan("")) == "nan");
  const double x = 1.0 / 3.0;
  CHECK(std::stod(frlab::format_double(x)) == x);
}

TEST_CASE("classify report lists every condition with its slack") {
  const auto rep = frlab::run_classify(tuple(2.0, ExtendedExponent::finite(2.0), ExtendedExponent::finite(2.0)));
  REQUIRE_FALSE(rep.rows.empty());
  CHECK(rep.columns.front() == "verdict");
  for (const auto& row : rep.rows) {
    CHECK(row[0] == "Bounded");
    CHECK(row[1] == "ThmA");
  }
  const auto text = csv(rep);
  CHECK(text.rfind("verdict,regime,branch,condition,relation,satisfied,slack\n", 0) == 0);
  CHECK(static_cast<std::size_t>(std::count(text.begin(), text.end(), '\n')) == rep.rows.size() + 1);
}

TEST_CASE("region report matches classify_kc at every grid point") {
  const frlab::OperatorParameters base{2, 0.0, 0.5, 3.0, 0.5, 0.5};
  const int res = 101;
  const auto rep = frlab::run_region(frlab::RegionPreset::kKc, base, res);
  const auto grid = frlab::unit_square_grid(res);
  REQUIRE(rep.rows.size() == grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const auto v = frlab::classify_kc(2, 3.0, 0.5, ExtendedExponent::from_inverse(grid[i].first),
                                      ExtendedExponent::from_inverse(grid[i].second));
    CHECK(rep.rows[i][2] == frlab::format_bool(v.bounded));
  }
  CHECK_THROWS_AS(frlab::parse_region_preset("square"), frlab::DomainError);
}

TEST_CASE("JSON report carries inputs, columns, metadata and rows") {
  const auto rep = frlab::run_region(frlab::RegionPreset::kGeneral, frlab::OperatorParameters{1, 0, 0, 2, 0, 0}, 3);
  const auto j = frlab::report_json(rep);
  CHECK(j["command"] == "region");
  CHECK(j["inputs"]["grid"] == "3");
  CHECK(j["rows"].size() == 9);
  CHECK(j["rows"][0]["inv_p"] == "0");
  CHECK(j["metadata"].contains("version"));
  CHECK(j["metadata"].contains("timestamp"));
  CHECK_FALSE(frlab::report_metadata_json(rep).contains("rows"));
}

TEST_CASE("blow-up ratios grow for an unbounded tuple and stay flat for a bounded one") {
  QuadratureConfig cfg;
  const std::vector<double> radii{0.9, 0.99, 0.999};
  const auto p2 = ExtendedExponent::finite(2.0);
  const auto bad = frlab::blowup_curve(tuple(3.5, p2, p2), FamilyKind::kKernelEqual, 0.0, radii, cfg);
  CHECK(bad.back().ratio / bad.front().ratio > 10.0);
  const auto good = frlab::blowup_curve(tuple(1.0, p2, p2), FamilyKind::kKernelEqual, 0.0, radii, cfg);
  CHECK(good.back().ratio / good.front().ratio < 2.0);
  // Power family: T f_N is a multiple of (1-|z|^2)^a, so at a = 0 the image norm is finite.
  const auto power = frlab::blowup_curve(Parameters{1, 0.0, 0.0, 1.0, 0.0, 0.0, p2, p2}, FamilyKind::kPower, 1.0,
                                         radii, cfg);
  for (const auto& row : power) CHECK(std::isfinite(row.ratio));
  CHECK_THROWS_AS(frlab::blowup_curve(Parameters{1, 0.0, 0.5, 1.0, 0.0, 0.0, p2, p2}, FamilyKind::kKernelEqual, 0.0,
                                      radii, cfg),
                  frlab::PreconditionError);
  CHECK_THROWS_AS(frlab::blowup_curve(tuple(1.0, p2, p2), FamilyKind::kPower, 1.0, {1.0}, cfg), frlab::DomainError);
}

TEST_CASE("blow-up report is deterministic") {
  QuadratureConfig cfg;
  const auto prm = tuple(2.5, ExtendedExponent::finite(3.0), ExtendedExponent::finite(2.0));
  const auto a = frlab::run_blowup(prm, FamilyKind::kKernelEqual, 0.0, {0.5, 0.9}, cfg);
  const auto b = frlab::run_blowup(prm, FamilyKind::kKernelEqual, 0.0, {0.5, 0.9}, cfg);
  CHECK(a.rows == b.rows);
  CHECK(a.metadata["bounded"] == false);
}

TEST_CASE("norm rows fix the matching exponent") {
  QuadratureConfig cfg;
  const auto prm = tuple(1.0, ExtendedExponent::finite(2.0), ExtendedExponent::finite(2.0));
  CHECK(frlab::with_row_exponent(prm, frlab::NormRow::kPInfinity).p.is_infinite());
  CHECK(frlab::with_row_exponent(prm, frlab::NormRow::kQOne).q.is_one());
  CHECK(frlab::with_row_exponent(prm, frlab::NormRow::kQInfinity).q.is_infinite());
  const auto rep = frlab::run_norm(prm, frlab::NormRow::kQOne, cfg);
  REQUIRE(rep.rows.size() == 1);
  CHECK(rep.rows[0][0] == "q-1");
  CHECK(rep.rows[0][4] == "false");
  CHECK(rep.rows[0][5] == "true");
  const auto radii = frlab::radii_to_cutoff(0.999);
  CHECK(radii.back() == 0.999);
  CHECK(std::is_sorted(radii.begin(), radii.end()));
}

TEST_CASE("verify suite passes at default tolerances and fails with zero tolerance") {
  QuadratureConfig cfg;
  cfg.mc_samples = 20000;
  const auto checks = frlab::run_verify_checks(cfg, std::nullopt);
  REQUIRE(checks.size() >= 10);
  for (const auto& c : checks) {
    INFO(c.name << " residual " << c.residual);
    CHECK(c.passed());
  }
  const auto rep = frlab::run_verify(cfg, 0.0);
  CHECK(rep.metadata["all_passed"] == false);
}
