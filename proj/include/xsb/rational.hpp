#pragma once

// Exact rational arithmetic for the region classifiers. Small by design:
// int64 numerator/denominator, always normalized, every product/sum checked
// through __int128 so overflow throws instead of wrapping.

#include <cstdint>
#include <stdexcept>
#include <string>

namespace xsb {

class Rational {
 public:
  Rational() : num_(0), den_(1) {}
  Rational(std::int64_t n) : num_(n), den_(1) {}  // NOLINT: implicit by intent
  Rational(std::int64_t n, std::int64_t d);

  std::int64_t num() const { return num_; }
  std::int64_t den() const { return den_; }

  double to_double() const { return static_cast<double>(num_) / static_cast<double>(den_); }
  std::string str() const;

  Rational operator-() const { return Rational(-num_, den_); }
  Rational& operator+=(const Rational& o);
  Rational& operator-=(const Rational& o);
  Rational& operator*=(const Rational& o);
  Rational& operator/=(const Rational& o);

  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }

  friend bool operator==(const Rational& a, const Rational& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }
  friend bool operator!=(const Rational& a, const Rational& b) { return !(a == b); }
  friend bool operator<(const Rational& a, const Rational& b);
  friend bool operator>(const Rational& a, const Rational& b) { return b < a; }
  friend bool operator<=(const Rational& a, const Rational& b) { return !(b < a); }
  friend bool operator>=(const Rational& a, const Rational& b) { return !(a < b); }

  bool is_negative() const { return num_ < 0; }
  bool is_zero() const { return num_ == 0; }

  // max(x, 0) -- the (.)_+ truncation used throughout the exponent conditions
  Rational positive_part() const { return num_ > 0 ? *this : Rational(0); }

  // Exact square root if this is a perfect square of a rational, else nullopt
  // semantics via the bool flag.
  bool sqrt_exact(Rational& out) const;

 private:
  void normalize();
  std::int64_t num_, den_;  // den_ > 0 always
};

// Accepts "p/q", plain integers, and decimal literals ("-0.35" -> -7/20).
Rational parse_rational(const std::string& text);

Rational rat_min(const Rational& a, const Rational& b);
Rational rat_max(const Rational& a, const Rational& b);

}  // namespace xsb
