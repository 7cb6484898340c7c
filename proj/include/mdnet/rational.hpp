#pragma once

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <string>

namespace mdnet {

/// Exact rational number with a normalized 64-bit numerator/denominator pair.
///
/// The denominator is always positive and gcd(num, den) == 1. Intermediate
/// products are computed in 128-bit; a result that does not fit back into
/// 64 bits throws std::overflow_error instead of wrapping.
class Rational {
 public:
  constexpr Rational() = default;
  constexpr Rational(std::int64_t value) : num_(value) {}  // NOLINT(implicit)
  Rational(std::int64_t num, std::int64_t den);

  std::int64_t num() const { return num_; }
  std::int64_t den() const { return den_; }

  Rational operator-() const;
  Rational& operator+=(const Rational& o);
  Rational& operator-=(const Rational& o);
  Rational& operator*=(const Rational& o);
  Rational& operator/=(const Rational& o);

  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }

  friend bool operator==(const Rational& a, const Rational& b) = default;
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b);

  double to_double() const { return static_cast<double>(num_) / static_cast<double>(den_); }

  /// "num/den", or just "num" when the denominator is 1.
  std::string str() const;

 private:
  static Rational from_wide(__int128 num, __int128 den);

  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
};

std::ostream& operator<<(std::ostream& os, const Rational& r);

/// Parses "p", "p/q", or a finite decimal such as "-16.5".
Rational parse_rational(const std::string& text);

/// Rounds half away from zero to `digits` significant digits and trims
/// trailing zeros, e.g. 227/12 -> "18.9167", 4001/510 -> "7.8451".
std::string to_significant(const Rational& r, int digits = 6);

/// Rounds half away from zero to a fixed number of decimal places without
/// trimming, e.g. to_fixed(1/3, 5) -> "0.33333".
std::string to_fixed(const Rational& r, int places);

}  // namespace mdnet
