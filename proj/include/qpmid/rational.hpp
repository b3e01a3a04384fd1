#pragma once

// Exact rational scalar over int64 with overflow detection. The frequency
// bound expansion runs on these so that polynomial coefficients can be
// compared exactly; magnitudes stay small for the inputs we accept, and any
// overflow throws instead of silently wrapping.

#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>

namespace qpmid {

struct RationalOverflow : std::overflow_error {
  RationalOverflow() : std::overflow_error("rational arithmetic overflow") {}
};

class Rational {
 public:
  Rational() = default;
  Rational(std::int64_t value) : num_(value), den_(1) {}
  Rational(std::int64_t num, std::int64_t den) : num_(num), den_(den) { normalize(); }

  std::int64_t num() const { return num_; }
  std::int64_t den() const { return den_; }

  friend Rational operator+(Rational a, Rational b) {
    return Rational(checked(mul_wide(a.num_, b.den_) + mul_wide(b.num_, a.den_)),
                    checked(mul_wide(a.den_, b.den_)));
  }
  friend Rational operator-(Rational a, Rational b) { return a + (-b); }
  friend Rational operator-(Rational a) { return Rational(-a.num_, a.den_); }
  friend Rational operator*(Rational a, Rational b) {
    return Rational(checked(mul_wide(a.num_, b.num_)), checked(mul_wide(a.den_, b.den_)));
  }
  friend Rational operator/(Rational a, Rational b) {
    if (b.num_ == 0) throw std::domain_error("rational division by zero");
    return Rational(checked(mul_wide(a.num_, b.den_)), checked(mul_wide(a.den_, b.num_)));
  }

  Rational& operator+=(Rational o) { return *this = *this + o; }
  Rational& operator-=(Rational o) { return *this = *this - o; }
  Rational& operator*=(Rational o) { return *this = *this * o; }

  friend bool operator==(Rational a, Rational b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }
  friend bool operator!=(Rational a, Rational b) { return !(a == b); }

  double to_double() const { return static_cast<double>(num_) / static_cast<double>(den_); }

  std::string str() const {
    return den_ == 1 ? std::to_string(num_) : std::to_string(num_) + "/" + std::to_string(den_);
  }

 private:
  static __int128 mul_wide(std::int64_t a, std::int64_t b) {
    return static_cast<__int128>(a) * static_cast<__int128>(b);
  }
  static std::int64_t checked(__int128 v) {
    if (v > INT64_MAX || v < INT64_MIN) throw RationalOverflow();
    return static_cast<std::int64_t>(v);
  }

  void normalize() {
    if (den_ == 0) throw std::domain_error("rational with zero denominator");
    if (den_ < 0) { num_ = -num_; den_ = -den_; }
    std::int64_t g = std::gcd(num_ < 0 ? -num_ : num_, den_);
    if (g > 1) { num_ /= g; den_ /= g; }
  }

  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
};

}  // namespace qpmid
