#pragma once

// Exact rational arithmetic on 128-bit integers. Conservation checks compare
// sums of word counts against (2^m - N)/N with zero tolerance, so everything
// in that path stays rational; floating point appears only in reports.

#include <compare>
#include <stdexcept>
#include <string>
#include <string_view>

#include "wordcount/int128.hpp"

namespace wordcount {

class Rational {
 public:
  Rational() : num_(0), den_(1) {}
  Rational(Int128 value) : num_(value), den_(1) {}  // NOLINT(google-explicit-constructor)
  Rational(Int128 numerator, Int128 denominator) : num_(numerator), den_(denominator) {
    if (den_ == 0) throw std::domain_error("rational with zero denominator");
    normalize();
  }

  Int128 numerator() const { return num_; }
  Int128 denominator() const { return den_; }

  Rational operator-() const { return Rational(-num_, den_, raw_tag{}); }

  friend Rational operator+(const Rational& a, const Rational& b) {
    return Rational(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
  }
  friend Rational operator-(const Rational& a, const Rational& b) {
    return Rational(a.num_ * b.den_ - b.num_ * a.den_, a.den_ * b.den_);
  }
  friend Rational operator*(const Rational& a, const Rational& b) {
    return Rational(a.num_ * b.num_, a.den_ * b.den_);
  }
  friend Rational operator/(const Rational& a, const Rational& b) {
    if (b.num_ == 0) throw std::domain_error("rational division by zero");
    return Rational(a.num_ * b.den_, a.den_ * b.num_);
  }
  Rational& operator+=(const Rational& o) { return *this = *this + o; }
  Rational& operator-=(const Rational& o) { return *this = *this - o; }

  friend bool operator==(const Rational& a, const Rational& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;  // both normalized
  }
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    const Int128 lhs = a.num_ * b.den_;
    const Int128 rhs = b.num_ * a.den_;
    if (lhs < rhs) return std::strong_ordering::less;
    if (lhs > rhs) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
  }

  // Canonical "p/q" form, q >= 1, also used in JSON reports.
  std::string str() const {
    return wordcount::to_string(num_) + "/" + wordcount::to_string(den_);
  }

  // Accepts "p" or "p/q"; exact inverse of str().
  static Rational parse(std::string_view text) {
    const auto slash = text.find('/');
    if (slash == std::string_view::npos)
      return Rational(parse_int128(text));
    return Rational(parse_int128(text.substr(0, slash)),
                    parse_int128(text.substr(slash + 1)));
  }

  long double to_long_double() const {
    return static_cast<long double>(num_) / static_cast<long double>(den_);
  }
  double to_double() const { return static_cast<double>(to_long_double()); }

 private:
  struct raw_tag {};
  Rational(Int128 n, Int128 d, raw_tag) : num_(n), den_(d) {}

  static Int128 gcd128(Int128 a, Int128 b) {
    a = abs128(a);
    b = abs128(b);
    while (b != 0) {
      const Int128 t = a % b;
      a = b;
      b = t;
    }
    return a;
  }

  void normalize() {
    if (den_ < 0) {
      num_ = -num_;
      den_ = -den_;
    }
    if (num_ == 0) {
      den_ = 1;
      return;
    }
    const Int128 g = gcd128(num_, den_);
    num_ /= g;
    den_ /= g;
  }

  Int128 num_;
  Int128 den_;  // > 0, gcd(num_, den_) == 1
};

}  // namespace wordcount
