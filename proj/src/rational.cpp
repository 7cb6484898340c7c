#include "mdnet/rational.hpp"

#include <algorithm>
#include <cstdlib>
#include <limits>
#include <numeric>
#include <ostream>
#include <stdexcept>

namespace mdnet {

namespace {

using i128 = __int128;

i128 abs128(i128 v) { return v < 0 ? -v : v; }

i128 gcd128(i128 a, i128 b) {
  a = abs128(a);
  b = abs128(b);
  while (b != 0) {
    i128 t = a % b;
    a = b;
    b = t;
  }
  return a;
}

bool fits64(i128 v) {
  return v >= std::numeric_limits<std::int64_t>::min() && v <= std::numeric_limits<std::int64_t>::max();
}

std::string u128_to_string(unsigned __int128 v) {
  if (v == 0) return "0";
  std::string s;
  while (v > 0) {
    s.insert(s.begin(), static_cast<char>('0' + static_cast<int>(v % 10)));
    v /= 10;
  }
  return s;
}

unsigned __int128 pow10_128(int e) {
  unsigned __int128 p = 1;
  for (int i = 0; i < e; ++i) p *= 10;
  return p;
}

// round(|num|/den * 10^places) half-up; num/den already normalized
unsigned __int128 scaled_round(const Rational& r, int places) {
  if (places > 30) throw std::overflow_error("too many decimal places");
  unsigned __int128 a = static_cast<unsigned __int128>(abs128(r.num()));
  unsigned __int128 d = static_cast<unsigned __int128>(r.den());
  unsigned __int128 ip = a / d;
  unsigned __int128 rem = a % d;
  unsigned __int128 p = pow10_128(places);
  // rem < d < 2^63 and p fits 10^30 < 2^100; split to avoid overflow
  unsigned __int128 frac = 0;
  unsigned __int128 carry = rem;
  for (int i = 0; i < places; ++i) {
    carry *= 10;
    frac = frac * 10 + carry / d;
    carry %= d;
  }
  if (2 * carry >= d) ++frac;
  return ip * p + frac;
}

std::string render_scaled(bool negative, unsigned __int128 scaled, int places, bool trim) {
  std::string digits = u128_to_string(scaled);
  if (places > 0) {
    if (static_cast<int>(digits.size()) <= places) {
      digits.insert(0, static_cast<std::size_t>(places) + 1 - digits.size(), '0');
    }
    digits.insert(digits.size() - static_cast<std::size_t>(places), ".");
    if (trim) {
      while (digits.back() == '0') digits.pop_back();
      if (digits.back() == '.') digits.pop_back();
    }
  }
  bool zero = digits.find_first_not_of("0.") == std::string::npos;
  return (negative && !zero ? "-" : "") + digits;
}

}  // namespace

Rational::Rational(std::int64_t num, std::int64_t den) {
  if (den == 0) throw std::domain_error("rational with zero denominator");
  *this = from_wide(num, den);
}

Rational Rational::from_wide(i128 num, i128 den) {
  if (den == 0) throw std::domain_error("division by zero");
  if (den < 0) {
    num = -num;
    den = -den;
  }
  i128 g = gcd128(num, den);
  if (g > 1) {
    num /= g;
    den /= g;
  }
  if (!fits64(num) || !fits64(den)) throw std::overflow_error("rational overflow");
  Rational r;
  r.num_ = static_cast<std::int64_t>(num);
  r.den_ = static_cast<std::int64_t>(den);
  return r;
}

Rational Rational::operator-() const {
  return from_wide(-static_cast<i128>(num_), den_);
}

Rational& Rational::operator+=(const Rational& o) {
  if (den_ == o.den_) return *this = from_wide(static_cast<i128>(num_) + o.num_, den_);
  return *this = from_wide(static_cast<i128>(num_) * o.den_ + static_cast<i128>(o.num_) * den_,
                           static_cast<i128>(den_) * o.den_);
}

Rational& Rational::operator-=(const Rational& o) { return *this += -o; }

Rational& Rational::operator*=(const Rational& o) {
  return *this = from_wide(static_cast<i128>(num_) * o.num_, static_cast<i128>(den_) * o.den_);
}

Rational& Rational::operator/=(const Rational& o) {
  if (o.num_ == 0) throw std::domain_error("division by zero");
  return *this = from_wide(static_cast<i128>(num_) * o.den_, static_cast<i128>(den_) * o.num_);
}

std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
  i128 lhs = static_cast<i128>(a.num_) * b.den_;
  i128 rhs = static_cast<i128>(b.num_) * a.den_;
  if (lhs < rhs) return std::strong_ordering::less;
  if (lhs > rhs) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

std::string Rational::str() const {
  if (den_ == 1) return std::to_string(num_);
  return std::to_string(num_) + "/" + std::to_string(den_);
}

std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

Rational parse_rational(const std::string& text) {
  auto bad = [&] { return std::invalid_argument("not a rational number: '" + text + "'"); };
  if (text.empty()) throw bad();
  auto parse_int = [&](const std::string& s) -> std::int64_t {
    std::size_t pos = 0;
    long long v = 0;
    try {
      v = std::stoll(s, &pos);
    } catch (const std::exception&) {
      throw bad();
    }
    if (pos != s.size()) throw bad();
    return v;
  };
  if (auto slash = text.find('/'); slash != std::string::npos) {
    return Rational(parse_int(text.substr(0, slash)), parse_int(text.substr(slash + 1)));
  }
  if (auto dot = text.find('.'); dot != std::string::npos) {
    std::string ip = text.substr(0, dot);
    std::string fp = text.substr(dot + 1);
    if (fp.empty() || fp.find_first_not_of("0123456789") != std::string::npos || fp.size() > 17) throw bad();
    bool neg = !ip.empty() && ip[0] == '-';
    std::int64_t whole = (ip.empty() || ip == "-" || ip == "+") ? 0 : parse_int(ip);
    std::int64_t scale = 1;
    for (std::size_t i = 0; i < fp.size(); ++i) scale *= 10;
    Rational frac(parse_int(fp), scale);
    return neg ? Rational(whole) - frac : Rational(whole) + frac;
  }
  return Rational(parse_int(text));
}

std::string to_significant(const Rational& r, int digits) {
  if (digits < 1) throw std::invalid_argument("significant digits must be positive");
  if (r.num() == 0) return "0";
  // count integer digits of |r|, or leading fractional zeros when |r| < 1
  unsigned __int128 a = static_cast<unsigned __int128>(abs128(r.num()));
  unsigned __int128 d = static_cast<unsigned __int128>(r.den());
  int places = 0;
  if (a >= d) {
    int int_digits = static_cast<int>(u128_to_string(a / d).size());
    places = std::max(0, digits - int_digits);
  } else {
    int zeros = 0;
    unsigned __int128 x = a;
    while (x * 10 < d) {
      x *= 10;
      ++zeros;
    }
    places = zeros + digits;
  }
  return render_scaled(r.num() < 0, scaled_round(r, places), places, true);
}

std::string to_fixed(const Rational& r, int places) {
  if (places < 0) throw std::invalid_argument("decimal places must be non-negative");
  return render_scaled(r.num() < 0, scaled_round(r, places), places, false);
}

}  // namespace mdnet
