#include <catch_amalgamated.hpp>

#include <random>

#include "frlab/special_functions.hpp"
#include "oracles.hpp"
#include "reference/reference_values.hpp"

using Catch::Matchers::WithinRel;

TEST_CASE("log_gamma and the normalizing constants") {
  for (double x : {0.1, 0.5, 1.0, 2.5, 10.0, 170.5}) CHECK_THAT(frlab::log_gamma(x), WithinRel(std::lgamma(x), 1e-14));
  CHECK_THROWS_AS(frlab::log_gamma(0.0), frlab::DomainError);
  CHECK_THROWS_AS(frlab::log_gamma(-1.5), frlab::DomainError);
  for (int n : {1, 2, 5}) CHECK_THAT(frlab::c_alpha(n, 0.0), WithinRel(1.0, 1e-14));
  CHECK_THAT(frlab::c_alpha(1, 1.0), WithinRel(2.0, 1e-14));
  CHECK_THAT(frlab::c_alpha(2, 1.0), WithinRel(3.0, 1e-14));
  CHECK_THAT(frlab::weighted_volume(3, 0.5), WithinRel(frlab_test::weighted_mass(3, 0.5), 1e-14));
  CHECK_THROWS_AS(frlab::c_alpha(1, -1.0), frlab::DomainError);
}

TEST_CASE("hyp2f1 matches 40-digit reference values") {
  for (const auto& ref : frlab_test::kHypReference) {
    INFO("a=" << ref.a << " b=" << ref.b << " c=" << ref.c << " x=" << ref.x);
    CHECK_THAT(frlab::hyp2f1(ref.a, ref.b, ref.c, ref.x), WithinRel(ref.value, 1e-13));
  }
}

TEST_CASE("hyp2f1 elementary cases") {
  CHECK(frlab::hyp2f1(1.3, 2.1, 0.7, 0.0) == 1.0);
  // (1-x)^{-a}
  CHECK_THAT(frlab::hyp2f1(1.7, 2.0, 2.0, 0.95), WithinRel(std::pow(0.05, -1.7), 1e-13));
  // -log(1-x)/x
  CHECK_THAT(frlab::hyp2f1(1.0, 1.0, 2.0, 0.99), WithinRel(-std::log(0.01) / 0.99, 1e-13));
  // Terminating polynomial: 2F1(-2, b; c; x) = 1 - 2bx/c + b(b+1)x^2/(c(c+1)).
  const double b = 1.5, c = 2.5, x = 0.9;
  CHECK_THAT(frlab::hyp2f1(-2.0, b, c, x), WithinRel(1 - 2 * b * x / c + b * (b + 1) * x * x / (c * (c + 1)), 1e-14));
}

TEST_CASE("hyp2f1 satisfies Euler's transformation") {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int i = 0; i < 300; ++i) {
    const double a = 3 * u(rng), b = 3 * u(rng), c = 0.2 + 4 * u(rng);
    const double x = 0.999 * u(rng);
    const double lhs = frlab::hyp2f1(a, b, c, x);
    const double rhs = std::pow(1 - x, c - a - b) * frlab::hyp2f1(c - a, c - b, c, x);
    INFO("a=" << a << " b=" << b << " c=" << c << " x=" << x);
    CHECK_THAT(lhs, WithinRel(rhs, 1e-11));
  }
}

TEST_CASE("hyp2f1 agrees with Boost's generic pFq away from x = 1") {
  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int i = 0; i < 200; ++i) {
    const double a = 3 * u(rng), b = 3 * u(rng), c = 0.5 + 4 * u(rng), x = 0.9 * u(rng);
    CHECK_THAT(frlab::hyp2f1(a, b, c, x), WithinRel(boost::math::hypergeometric_pFq({a, b}, {c}, x), 1e-12));
  }
}

TEST_CASE("hyp2f1 errors") {
  CHECK_THROWS_AS(frlab::hyp2f1(1, 1, 0, 0.5), frlab::DomainError);
  CHECK_THROWS_AS(frlab::hyp2f1(1, 1, -2, 0.5), frlab::DomainError);
  CHECK_THROWS_AS(frlab::hyp2f1(1, 1, 2, 1.0), frlab::DomainError);
  CHECK_THROWS_AS(frlab::hyp2f1(1, 1, 2, -0.1), frlab::DomainError);
  // Divergent at x = 1 (c - a - b <= 0) and beyond the cutoff.
  CHECK_THROWS_AS(frlab::hyp2f1(2, 2, 3, 1 - 1e-9), frlab::BoundaryError);
  CHECK_NOTHROW(frlab::hyp2f1(0.5, 0.5, 3, 1 - 1e-9));
}

TEST_CASE("Gauss-Jacobi rules integrate polynomials exactly") {
  for (double a : {-0.5, 0.0, 1.3, 4.0}) {
    const auto& rule = frlab::jacobi_rule(12, a);
    for (int k = 0; k < 20; ++k) {
      double sum = 0.0;
      for (std::size_t i = 0; i < rule.nodes.size(); ++i) sum += rule.weights[i] * std::pow(rule.nodes[i], k);
      CHECK_THAT(sum, WithinRel(std::exp(frlab::log_beta(k + 1.0, a + 1.0)), 1e-12));
    }
  }
  const auto& gl = frlab::legendre_rule(16);
  double s = 0.0;
  for (double w : gl.weights) s += w;
  CHECK_THAT(s, WithinRel(1.0, 1e-14));
}

TEST_CASE("i_ct matches 40-digit reference values including near the boundary") {
  for (const auto& ref : frlab_test::kKernelIntegralReference) {
    INFO("n=" << ref.n << " r=" << ref.r << " c=" << ref.c << " t=" << ref.t);
    CHECK_THAT(frlab::i_ct(ref.n, ref.r, ref.c, ref.t), WithinRel(ref.value, 1e-10));
  }
}

TEST_CASE("i_ct agrees with the closed-form series oracle") {
  std::mt19937_64 rng(13);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int i = 0; i < 100; ++i) {
    const int n = 1 + static_cast<int>(3 * u(rng));
    const double r = 0.9 * u(rng), c = 8 * u(rng), t = -0.9 + 3 * u(rng);
    INFO("n=" << n << " r=" << r << " c=" << c << " t=" << t);
    CHECK_THAT(frlab::i_ct(n, r, c, t), WithinRel(frlab_test::kernel_integral_closed_form(n, r, c, t), 1e-10));
  }
}

TEST_CASE("i_ct reduces to the weighted volume at c = 0 or r = 0") {
  CHECK(frlab::i_ct(2, 0.7, 0.0, 1.5) == frlab::weighted_volume(2, 1.5));
  CHECK(frlab::i_ct(3, 0.0, 4.0, 0.5) == frlab::weighted_volume(3, 0.5));
}

TEST_CASE("i_ct is increasing in r for c > 0") {
  double prev = 0.0;
  for (double r = 0.0; r < 0.999; r += 0.037) {
    const double v = frlab::i_ct(2, r, 3.5, 0.2);
    CHECK(v > prev);
    prev = v;
  }
}

TEST_CASE("i_ct rejects bad arguments") {
  CHECK_THROWS_AS(frlab::i_ct(1, 0.5, 2, -1.0), frlab::DomainError);
  CHECK_THROWS_AS(frlab::i_ct(0, 0.5, 2, 0), frlab::DomainError);
  CHECK_THROWS_AS(frlab::i_ct(1, 1 - 1e-7, 2, 0), frlab::BoundaryError);
  frlab::SeriesConfig tight;
  tight.boundary_cutoff = 0.9;
  CHECK_THROWS_AS(frlab::i_ct(1, 0.95, 2, 0, tight), frlab::BoundaryError);
}

TEST_CASE("i_ct_mc is within four standard errors of i_ct and of an independent sampler") {
  frlab::QuadratureConfig cfg;
  cfg.mc_samples = 200000;
  for (double r : {0.0, 0.5, 0.8}) {
    const auto z = frlab::axis_point(2, r);
    const auto mc = frlab::i_ct_mc(z, 3.0, 0.0, cfg);
    const double exact = frlab::i_ct(2, r, 3.0, 0.0);
    CHECK(std::abs(mc.value - exact) < 4 * mc.std_error + 1e-12);
    const auto ref = frlab_test::uniform_ball_mc(
        2, [&](const std::vector<frlab_test::cplx>& w) { return std::pow(std::abs(1.0 - r * std::conj(w[0])), -3.0); },
        200000, 77);
    CHECK(std::abs(ref.mean - exact) < 4 * ref.std_error + 1e-12);
  }
}

TEST_CASE("asymptotic classes split at c = n+1+t") {
  CHECK(frlab::asym_class(1, 1.0, 0.0).tag == frlab::AsymTag::kBounded);
  CHECK(frlab::asym_class(1, 2.0, 0.0).tag == frlab::AsymTag::kLog);
  const auto pw = frlab::asym_class(2, 5.0, 0.5);
  CHECK(pw.tag == frlab::AsymTag::kPower);
  CHECK(pw.exponent == -1.5);
  CHECK(std::string(frlab::asym_tag_name(pw.tag)) == "PowerRegime");
}

TEST_CASE("normalized boundary growth settles in each asymptotic class") {
  auto normalized = [](double c, double t, double r) {
    const double g = (1 - r) * (1 + r);
    const auto cls = frlab::asym_class(1, c, t);
    const double v = frlab::i_ct(1, r, c, t);
    if (cls.tag == frlab::AsymTag::kBounded) return v;
    if (cls.tag == frlab::AsymTag::kLog) return v / std::log(1 / g);
    return v / std::pow(g, cls.exponent);
  };
  for (auto [c, t] : {std::pair{1.0, 0.0}, std::pair{2.0, 0.0}, std::pair{3.5, 0.5}}) {
    const double a = normalized(c, t, 0.999);
    const double b = normalized(c, t, 0.99999);
    INFO("c=" << c << " t=" << t);
    CHECK(std::max(a, b) / std::min(a, b) < 1.25);
  }
}

TEST_CASE("kernel_in_lp threshold") {
  const auto p2 = frlab::ExtendedExponent::finite(2.0);
  // s < n+1+t+(alpha+1)/p
  CHECK(frlab::kernel_in_lp(1, 2.49, 0.0, p2, 0.0));
  CHECK_FALSE(frlab::kernel_in_lp(1, 2.5, 0.0, p2, 0.0));
  CHECK_FALSE(frlab::kernel_in_lp(1, 0.0, -1.0, p2, 0.0));
  CHECK_THROWS_AS(frlab::kernel_in_lp(1, 1.0, 0.0, frlab::ExtendedExponent::infinity(), 0.0),
                  frlab::PreconditionError);
}
