#pragma once

#include <compare>
#include <cstdint>
#include <numeric>
#include <string>

#include "qv/error.hpp"

namespace qv {

// Exact rational scalar over checked 64-bit integers. Coefficients in this
// workbench count path decompositions and stay tiny, so 64 bits is plenty;
// arithmetic that would overflow throws instead of wrapping, so exactness is
// never silently lost.
class Rational {
 public:
  Rational() = default;
  Rational(long long n) : num_(n) {}
  Rational(long long n, long long d) : num_(n), den_(d) {
    check(d != 0, "rational with zero denominator");
    reduce();
  }

  long long num() const { return num_; }
  long long den() const { return den_; }

  bool is_zero() const { return num_ == 0; }
  bool is_one() const { return num_ == 1 && den_ == 1; }

  Rational operator-() const {
    Rational r;
    r.num_ = checked_neg(num_);
    r.den_ = den_;
    return r;
  }

  friend Rational operator+(const Rational& a, const Rational& b) {
    // a/b + c/d over lcm to keep intermediates small.
    long long g = std::gcd(a.den_, b.den_);
    long long bd = b.den_ / g;
    long long n = checked_add(checked_mul(a.num_, bd), checked_mul(b.num_, a.den_ / g));
    long long d = checked_mul(a.den_, bd);
    return Rational(n, d);
  }
  friend Rational operator-(const Rational& a, const Rational& b) { return a + (-b); }
  friend Rational operator*(const Rational& a, const Rational& b) {
    long long g1 = std::gcd(std::abs(a.num_), b.den_);
    long long g2 = std::gcd(std::abs(b.num_), a.den_);
    Rational r;
    r.num_ = checked_mul(a.num_ / g1, b.num_ / g2);
    r.den_ = checked_mul(a.den_ / g2, b.den_ / g1);
    return r;
  }
  friend Rational operator/(const Rational& a, const Rational& b) {
    check(!b.is_zero(), "rational division by zero");
    Rational inv;
    inv.num_ = b.den_;
    inv.den_ = b.num_;
    if (inv.den_ < 0) {
      inv.num_ = checked_neg(inv.num_);
      inv.den_ = checked_neg(inv.den_);
    }
    return a * inv;
  }

  Rational& operator+=(const Rational& b) { return *this = *this + b; }
  Rational& operator-=(const Rational& b) { return *this = *this - b; }
  Rational& operator*=(const Rational& b) { return *this = *this * b; }

  friend bool operator==(const Rational& a, const Rational& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    // Compare via cross products; denominators are positive.
    long long l = checked_mul(a.num_, b.den_);
    long long r = checked_mul(b.num_, a.den_);
    return l <=> r;
  }

  std::string str() const {
    std::string s = std::to_string(num_);
    if (den_ != 1) s += "/" + std::to_string(den_);
    return s;
  }

 private:
  static long long checked_add(long long a, long long b) {
    long long r;
    check(!__builtin_add_overflow(a, b, &r), "rational overflow in addition");
    return r;
  }
  static long long checked_mul(long long a, long long b) {
    long long r;
    check(!__builtin_mul_overflow(a, b, &r), "rational overflow in multiplication");
    return r;
  }
  static long long checked_neg(long long a) {
    long long r;
    check(!__builtin_sub_overflow(0ll, a, &r), "rational overflow in negation");
    return r;
  }
  void reduce() {
    if (den_ < 0) {
      num_ = checked_neg(num_);
      den_ = checked_neg(den_);
    }
    long long g = std::gcd(std::abs(num_), den_);
    if (g > 1) {
      num_ /= g;
      den_ /= g;
    }
    if (num_ == 0) den_ = 1;
  }

  long long num_ = 0;
  long long den_ = 1;
};

}  // namespace qv
