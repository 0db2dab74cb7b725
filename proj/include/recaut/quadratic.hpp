#pragma once

#include <utility>

#include "recaut/rational.hpp"

namespace recaut {

/// Exact element a + b*sqrt(d) of Q(sqrt(d)), d a positive non-square integer.
/// Elements with b = 0 are plain rationals and combine with any field.
class QuadraticNumber {
 public:
  QuadraticNumber() = default;
  QuadraticNumber(Rational a) : a_(std::move(a)) {}  // NOLINT(google-explicit-constructor)
  QuadraticNumber(Rational a, Rational b, Integer d);

  /// sqrt(x) for x >= 0; rational when x is the square of a rational.
  static QuadraticNumber sqrt_of(const Rational& x);

  const Rational& rational_part() const { return a_; }
  const Rational& radical_part() const { return b_; }
  const Integer& radicand() const { return d_; }
  bool is_rational() const { return b_.is_zero(); }

  int sign() const;
  bool is_zero() const { return a_.is_zero() && b_.is_zero(); }
  QuadraticNumber abs() const { return sign() < 0 ? -*this : *this; }
  QuadraticNumber conjugate() const { return {a_, -b_, d_}; }

  /// Rational enclosure [lo, hi] using sqrt(d) to `bits` binary digits.
  std::pair<Rational, Rational> bounds(unsigned bits) const;

  friend QuadraticNumber operator+(const QuadraticNumber& x, const QuadraticNumber& y);
  friend QuadraticNumber operator-(const QuadraticNumber& x, const QuadraticNumber& y);
  friend QuadraticNumber operator*(const QuadraticNumber& x, const QuadraticNumber& y);
  friend QuadraticNumber operator/(const QuadraticNumber& x, const QuadraticNumber& y);
  friend QuadraticNumber operator-(const QuadraticNumber& x) { return {-x.a_, -x.b_, x.d_}; }

  friend bool operator==(const QuadraticNumber& x, const QuadraticNumber& y) { return (x - y).is_zero(); }
  friend bool operator<(const QuadraticNumber& x, const QuadraticNumber& y) { return (x - y).sign() < 0; }
  friend bool operator>(const QuadraticNumber& x, const QuadraticNumber& y) { return (x - y).sign() > 0; }

 private:
  Rational a_;
  Rational b_;
  Integer d_ = 1;
};

}  // namespace recaut
