#include <catch_amalgamated.hpp>

#include <random>

#include "frlab/errors.hpp"
#include "frlab/exponent.hpp"

using frlab::ExtendedExponent;

TEST_CASE("parse accepts numbers and every spelling of infinity") {
  CHECK(ExtendedExponent::parse("2.5").value() == 2.5);
  CHECK(ExtendedExponent::parse("1").is_one());
  for (const char* s : {"inf", "INF", "Infinity", "+inf"}) {
    CHECK(ExtendedExponent::parse(s).is_infinite());
  }
  CHECK_THROWS_AS(ExtendedExponent::parse("0.5"), frlab::DomainError);
  CHECK_THROWS_AS(ExtendedExponent::parse("two"), frlab::DomainError);
  CHECK_THROWS_AS(ExtendedExponent::parse(""), frlab::DomainError);
  CHECK_THROWS_AS(ExtendedExponent::parse("2x"), frlab::DomainError);
}

TEST_CASE("infinity has reciprocal exactly zero") {
  const auto inf = ExtendedExponent::infinity();
  CHECK(inf.inverse() == 0.0);
  CHECK(std::isinf(inf.value()));
  CHECK(inf.to_string() == "inf");
  CHECK(ExtendedExponent::from_inverse(0.0) == inf);
}

TEST_CASE("conjugate pairs 1 with inf and fixes 2") {
  CHECK(ExtendedExponent::finite(1.0).conjugate().is_infinite());
  CHECK(ExtendedExponent::infinity().conjugate().is_one());
  CHECK(ExtendedExponent::finite(2.0).conjugate().value() == 2.0);
  CHECK(ExtendedExponent::finite(4.0).conjugate().value() == Catch::Approx(4.0 / 3.0));
}

TEST_CASE("conjugation is an exact involution and reciprocals sum to one") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> inv(0.0, 1.0);
  for (int i = 0; i < 1000; ++i) {
    const auto e = ExtendedExponent::from_inverse(inv(rng));
    CHECK(e.conjugate().conjugate() == e);
    CHECK(e.inverse() + e.conjugate().inverse() == Catch::Approx(1.0).epsilon(1e-15));
  }
}

TEST_CASE("constructors reject values outside [1, inf]") {
  CHECK_THROWS_AS(ExtendedExponent::finite(0.999), frlab::DomainError);
  CHECK_THROWS_AS(ExtendedExponent::finite(std::nan("")), frlab::DomainError);
  CHECK_THROWS_AS(ExtendedExponent::from_inverse(-0.1), frlab::DomainError);
  CHECK_THROWS_AS(ExtendedExponent::from_inverse(1.5), frlab::DomainError);
}
