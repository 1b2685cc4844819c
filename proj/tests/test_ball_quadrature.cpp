#include <catch_amalgamated.hpp>

#include <cstring>

#include "frlab/ball_quadrature.hpp"
#include "oracles.hpp"

using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;
using frlab::ExtendedExponent;
using frlab::Point;
using frlab::QuadratureConfig;

namespace {

double beta_fn(double x, double y) { return std::exp(frlab::log_beta(x, y)); }

bool same_bits(double x, double y) { return std::memcmp(&x, &y, sizeof x) == 0; }

}  // namespace

TEST_CASE("counter RNG streams depend only on seed and index") {
  frlab::CounterRng a(1, 42), b(1, 42), c(1, 43), d(2, 42);
  const auto x = a();
  CHECK(x == b());
  CHECK(x != c());
  CHECK(x != d());
}

TEST_CASE("ball sampler draws |w|^2 from Beta(n, t+1)") {
  for (auto [n, t] : {std::pair{1, 0.0}, std::pair{2, 1.5}, std::pair{3, -0.5}}) {
    const frlab::BallSampler sampler(n, t, 99);
    CHECK_THAT(sampler.importance_weight(), WithinRel(frlab::weighted_volume(n, t), 1e-14));
    Point w;
    double sum = 0.0, sum2 = 0.0;
    const int m = 100000;
    for (int i = 0; i < m; ++i) {
      sampler.sample(static_cast<std::uint64_t>(i), w);
      const double u = frlab::norm_sq(w);
      REQUIRE(u < 1.0);
      sum += u;
      sum2 += u * u;
    }
    const double mean = sum / m;
    const double se = std::sqrt((sum2 / m - mean * mean) / m);
    CHECK(std::abs(mean - n / (n + t + 1.0)) < 4 * se);
  }
}

TEST_CASE("Monte Carlo integral is bitwise reproducible across thread counts") {
  const frlab::BallSampler sampler(2, 0.5, 7);
  auto g = [](const Point& w) { return std::exp(std::real(w(0))) * frlab::norm_sq(w); };
  const auto one = frlab::mc_integral<double>(sampler, g, 50000, 1);
  const auto three = frlab::mc_integral<double>(sampler, g, 50000, 3);
  const auto again = frlab::mc_integral<double>(sampler, g, 50000, 1);
  CHECK(same_bits(one.value, three.value));
  CHECK(same_bits(one.std_error, three.std_error));
  CHECK(same_bits(one.value, again.value));
}

TEST_CASE("Monte Carlo integral of |w_1|^2 over the ball of C^2") {
  // \int |w_1|^2 dv = 1/(n+1); compared with an independent rejection sampler.
  const frlab::BallSampler sampler(2, 0.0, 3);
  const auto est = frlab::mc_integral<double>(sampler, [](const Point& w) { return std::norm(w(0)); }, 200000);
  CHECK(std::abs(est.value - 1.0 / 3.0) < 4 * est.std_error);
  const auto ref = frlab_test::uniform_ball_mc(
      2, [](const std::vector<frlab_test::cplx>& w) { return std::norm(w[0]); }, 200000, 5);
  CHECK(std::abs(est.value - ref.mean) < 4 * std::hypot(est.std_error, ref.std_error));
}

TEST_CASE("disk rules carry the right mass and moments") {
  QuadratureConfig cfg;
  const auto plain = frlab::disk_rule(cfg, 0.9);
  double mass = 0.0;
  for (double w : plain.weights) mass += w;
  CHECK_THAT(mass, WithinRel(0.81, 1e-13));

  for (double t : {-0.5, 0.0, 2.0}) {
    const auto rule = frlab::weighted_disk_rule(t, cfg);
    for (int k = 0; k < 5; ++k) {
      const double v = frlab::apply_rule<double>(rule, [k](const Point& w) { return std::pow(frlab::norm_sq(w), k); });
      CHECK_THAT(v, WithinRel(beta_fn(k + 1.0, t + 1.0), 1e-12));
    }
    // Angular moments vanish.
    const auto z = frlab::apply_rule<frlab::cplx>(rule, [](const Point& w) { return w(0) * w(0); });
    CHECK_THAT(std::abs(z), WithinAbs(0.0, 1e-14));
  }
}

TEST_CASE("disk rule agrees with a midpoint oracle on a smooth integrand") {
  QuadratureConfig cfg;
  auto g = [](frlab::cplx w) { return std::exp(w) * std::conj(w) + 1.0; };
  const auto rule = frlab::weighted_disk_rule(0.0, cfg);
  const auto v = frlab::apply_rule<frlab::cplx>(rule, [&](const Point& w) { return g(w(0)); });
  const auto ref = frlab_test::disk_midpoint(g, 800, 400);
  CHECK(std::abs(v - ref) < 1e-5);
}

TEST_CASE("radial integral reproduces Beta integrals, with and without a tail") {
  for (double t : {-0.7, 0.0, 1.5}) {
    frlab::RadialOptions opt;
    CHECK_THAT(frlab::radial_integral<double>([](double u) { return u * u; }, t, opt),
               WithinRel(beta_fn(3.0, t + 1.0), 1e-12));
    opt.tail = -0.5;
    auto tailed = [](double u, double om) { return u * std::pow(om, -0.5); };
    if (t - 0.5 > -1.0) {
      CHECK_THAT(frlab::radial_integral<double>(tailed, t, opt), WithinRel(beta_fn(2.0, t + 0.5), 1e-10));
    } else {
      CHECK_THROWS_AS(frlab::radial_integral<double>(tailed, t, opt), frlab::DomainError);
    }
  }
  frlab::RadialOptions part;
  part.upper = 0.5;
  CHECK_THAT(frlab::radial_integral<double>([](double) { return 1.0; }, 0.0, part), WithinRel(0.5, 1e-14));
}

TEST_CASE("refinement_unstable flags a 50% change") {
  CHECK_FALSE(frlab::refinement_unstable(1.0, 1.4));
  CHECK(frlab::refinement_unstable(1.0, 1.6));
  CHECK(frlab::refinement_unstable(0.0, 1.0));
  CHECK_FALSE(frlab::refinement_unstable(0.0, 0.0));
  CHECK(frlab::refinement_unstable(1.0, std::numeric_limits<double>::infinity()));
}

TEST_CASE("weighted norms of powers of (1-|z|^2) match the closed form") {
  QuadratureConfig cfg;
  // ||(1-|z|^2)^s||_{p,alpha}^p = c_alpha / c_{alpha+sp}.
  for (auto [s, p, alpha] : {std::tuple{0.5, 2.0, 0.0}, std::tuple{-0.2, 3.0, 1.0}, std::tuple{1.0, 1.0, -0.5}}) {
    const double exact = std::pow(frlab::c_alpha(1, alpha) / frlab::c_alpha(1, alpha + s * p), 1.0 / p);
    auto f = [s = s](const Point& w) { return std::pow(1.0 - frlab::norm_sq(w), s); };
    const auto grid = frlab::weighted_norm(f, 1, ExtendedExponent::finite(p), alpha, cfg);
    CHECK_THAT(grid.value, WithinRel(exact, 1e-4));
    CHECK_FALSE(grid.diverged);
    const auto radial =
        frlab::radial_norm([s = s](double r) { return std::pow((1 - r) * (1 + r), s); }, 2, ExtendedExponent::finite(p), alpha, cfg);
    const double exact2 = std::pow(frlab::c_alpha(2, alpha) / frlab::c_alpha(2, alpha + s * p), 1.0 / p);
    CHECK_THAT(radial.value, WithinRel(exact2, 1e-4));
  }
}

TEST_CASE("weighted norm flags non-integrable boundary growth") {
  QuadratureConfig cfg;
  auto f = [](const Point& w) { return std::pow(1.0 - frlab::norm_sq(w), -1.5); };
  CHECK(frlab::weighted_norm(f, 1, ExtendedExponent::finite(1.0), 0.0, cfg).diverged);
  CHECK(frlab::weighted_norm(f, 1, ExtendedExponent::infinity(), 0.0, cfg).diverged);
  CHECK(frlab::radial_norm([](double r) { return std::pow((1 - r) * (1 + r), -1.5); }, 1,
                           ExtendedExponent::finite(1.0), 0.0, cfg)
            .diverged);
  auto bounded = [](const Point& w) { return std::abs(w(0)); };
  const auto sup = frlab::weighted_norm(bounded, 1, ExtendedExponent::infinity(), 0.0, cfg);
  CHECK_FALSE(sup.diverged);
  CHECK_THAT(sup.value, WithinRel(1.0, 1e-5));
}

TEST_CASE("weighted norm in C^2 uses Monte Carlo with a standard error") {
  QuadratureConfig cfg;
  cfg.mc_samples = 100000;
  const auto est =
      frlab::weighted_norm([](const Point& w) { return w(0); }, 2, ExtendedExponent::finite(2.0), 0.0, cfg);
  CHECK(est.method == frlab::Method::kMonteCarlo);
  CHECK(est.std_error > 0.0);
  CHECK(std::abs(est.value - std::sqrt(1.0 / 3.0)) < 4 * est.std_error);
}

TEST_CASE("configuration validation") {
  QuadratureConfig cfg;
  cfg.boundary_cutoff = 1.0;
  CHECK_THROWS_AS(cfg.validate(), frlab::DomainError);
  cfg = {};
  cfg.mc_samples = 10;
  CHECK_THROWS_AS(cfg.validate(), frlab::DomainError);
  CHECK(QuadratureConfig{}.coarse_cutoff() == Catch::Approx(1 - 1e-4));
}
