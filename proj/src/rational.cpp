#include "xsb/rational.hpp"

#include <cmath>
#include <cstdlib>
#include <numeric>

namespace xsb {

namespace {

using i128 = __int128;

std::int64_t checked_narrow(i128 v) {
  if (v > INT64_MAX || v < INT64_MIN) throw std::overflow_error("rational overflow");
  return static_cast<std::int64_t>(v);
}

}  // namespace

Rational::Rational(std::int64_t n, std::int64_t d) : num_(n), den_(d) {
  if (d == 0) throw std::invalid_argument("rational with zero denominator");
  normalize();
}

void Rational::normalize() {
  if (den_ < 0) {
    num_ = -num_;
    den_ = -den_;
  }
  std::int64_t g = std::gcd(num_ < 0 ? -num_ : num_, den_);
  if (g > 1) {
    num_ /= g;
    den_ /= g;
  }
  if (num_ == 0) den_ = 1;
}

Rational& Rational::operator+=(const Rational& o) {
  i128 n = i128(num_) * o.den_ + i128(o.num_) * den_;
  i128 d = i128(den_) * o.den_;
  num_ = checked_narrow(n);
  den_ = checked_narrow(d);
  normalize();
  return *this;
}

Rational& Rational::operator-=(const Rational& o) { return *this += Rational(-o.num_, o.den_); }

Rational& Rational::operator*=(const Rational& o) {
  i128 n = i128(num_) * o.num_;
  i128 d = i128(den_) * o.den_;
  num_ = checked_narrow(n);
  den_ = checked_narrow(d);
  normalize();
  return *this;
}

Rational& Rational::operator/=(const Rational& o) {
  if (o.num_ == 0) throw std::domain_error("rational division by zero");
  return *this *= Rational(o.den_, o.num_);
}

bool operator<(const Rational& a, const Rational& b) {
  return i128(a.num_) * b.den_ < i128(b.num_) * a.den_;
}

std::string Rational::str() const {
  if (den_ == 1) return std::to_string(num_);
  return std::to_string(num_) + "/" + std::to_string(den_);
}

bool Rational::sqrt_exact(Rational& out) const {
  if (num_ < 0) return false;
  auto isqrt = [](std::int64_t v, std::int64_t& root) {
    auto r = static_cast<std::int64_t>(std::llround(std::sqrt(static_cast<double>(v))));
    for (std::int64_t c = r - 2; c <= r + 2; ++c) {
      if (c >= 0 && c * c == v) {
        root = c;
        return true;
      }
    }
    return false;
  };
  std::int64_t rn, rd;
  if (!isqrt(num_, rn) || !isqrt(den_, rd)) return false;
  out = Rational(rn, rd);
  return true;
}

Rational parse_rational(const std::string& text) {
  if (text.empty()) throw std::invalid_argument("empty rational literal");
  auto slash = text.find('/');
  if (slash != std::string::npos) {
    std::int64_t p = std::stoll(text.substr(0, slash));
    std::int64_t q = std::stoll(text.substr(slash + 1));
    return Rational(p, q);
  }
  auto dot = text.find('.');
  if (dot == std::string::npos) return Rational(std::stoll(text));
  std::string digits = text.substr(0, dot) + text.substr(dot + 1);
  int frac = static_cast<int>(text.size() - dot - 1);
  std::int64_t den = 1;
  for (int i = 0; i < frac; ++i) {
    if (den > INT64_MAX / 10) throw std::overflow_error("rational literal too long");
    den *= 10;
  }
  return Rational(std::stoll(digits), den);
}

Rational rat_min(const Rational& a, const Rational& b) { return a < b ? a : b; }
Rational rat_max(const Rational& a, const Rational& b) { return a < b ? b : a; }

}  // namespace xsb
