#pragma once

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <limits>
#include <string>
#include <string_view>

#include "frlab/errors.hpp"

namespace frlab {

/// Lebesgue exponent in [1, inf] with an exact infinity.
///
/// The value and its reciprocal are stored together, as are those of the
/// conjugate exponent. Whichever of p or 1/p the caller supplies is kept
/// bit-exact, and conjugate() only swaps the two pairs, so conjugation is an
/// exact involution and 1/inf is exactly 0.
class ExtendedExponent {
 public:
  /// p = 2 by default.
  constexpr ExtendedExponent() = default;

  static ExtendedExponent finite(double p) {
    if (!(p >= 1.0) || !std::isfinite(p)) {
      throw DomainError("exponent must be a finite value >= 1 (got " + std::to_string(p) + ")");
    }
    ExtendedExponent e;
    e.value_ = p;
    e.inverse_ = 1.0 / p;
    e.conj_inverse_ = 1.0 - e.inverse_;
    e.conj_value_ = (p == 1.0) ? kInf : p / (p - 1.0);
    return e;
  }

  static ExtendedExponent infinity() {
    ExtendedExponent e;
    e.value_ = kInf;
    e.inverse_ = 0.0;
    e.conj_value_ = 1.0;
    e.conj_inverse_ = 1.0;
    return e;
  }

  /// Builds the exponent whose reciprocal is exactly `inv`; 0 maps to inf
  /// and 1 maps to 1.
  static ExtendedExponent from_inverse(double inv) {
    if (!(inv >= 0.0 && inv <= 1.0)) {
      throw DomainError("reciprocal exponent must lie in [0, 1] (got " + std::to_string(inv) + ")");
    }
    if (inv == 0.0) return infinity();
    ExtendedExponent e;
    e.inverse_ = inv;
    e.value_ = 1.0 / inv;
    e.conj_inverse_ = 1.0 - inv;
    e.conj_value_ = (e.conj_inverse_ == 0.0) ? kInf : 1.0 / e.conj_inverse_;
    return e;
  }

  /// Accepts a decimal number >= 1 or "inf"/"infinity" (any case).
  static ExtendedExponent parse(std::string_view text) {
    std::string lowered(text);
    std::transform(lowered.begin(), lowered.end(), lowered.begin(),
                   [](unsigned char ch) { return static_cast<char>(std::tolower(ch)); });
    if (lowered == "inf" || lowered == "infinity" || lowered == "+inf") return infinity();
    double v = 0.0;
    const auto* first = lowered.data();
    const auto* last = lowered.data() + lowered.size();
    auto [ptr, ec] = std::from_chars(first, last, v);
    if (ec != std::errc{} || ptr != last) {
      throw DomainError("cannot parse exponent '" + std::string(text) + "'");
    }
    return finite(v);
  }

  [[nodiscard]] bool is_infinite() const { return inverse_ == 0.0; }
  [[nodiscard]] bool is_one() const { return inverse_ == 1.0; }
  [[nodiscard]] bool is_finite() const { return !is_infinite(); }

  /// p itself; +inf for the infinite exponent.
  [[nodiscard]] double value() const { return value_; }
  /// 1/p, exactly 0 for p = inf.
  [[nodiscard]] double inverse() const { return inverse_; }

  [[nodiscard]] ExtendedExponent conjugate() const {
    ExtendedExponent e;
    e.value_ = conj_value_;
    e.inverse_ = conj_inverse_;
    e.conj_value_ = value_;
    e.conj_inverse_ = inverse_;
    return e;
  }

  [[nodiscard]] std::string to_string() const {
    if (is_infinite()) return "inf";
    char buf[32];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value_);
    return std::string(buf, ptr);
  }

  friend bool operator==(const ExtendedExponent& x, const ExtendedExponent& y) {
    return x.inverse_ == y.inverse_ && x.value_ == y.value_;
  }

 private:
  static constexpr double kInf = std::numeric_limits<double>::infinity();

  double value_ = 2.0;
  double inverse_ = 0.5;
  double conj_value_ = 2.0;
  double conj_inverse_ = 0.5;
};

inline ExtendedExponent conjugate(const ExtendedExponent& e) { return e.conjugate(); }

}  // namespace frlab
