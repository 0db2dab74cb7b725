#pragma once

#include <gmpxx.h>

#include <compare>
#include <concepts>
#include <cstddef>
#include <functional>
#include <ostream>
#include <string>
#include <string_view>

namespace recaut {

/// Arbitrary-precision integer, used for denominators, lcms and square roots.
using Integer = mpz_class;

/// Exact rational number kept in canonical form (gcd(num, den) = 1, den > 0).
///
/// Thin value type over GMP's mpq_class. All arithmetic returns canonical
/// results, so equality is structural.
class Rational {
 public:
  Rational() = default;

  template <std::integral I>
  Rational(I value) {  // NOLINT(google-explicit-constructor)
    if constexpr (std::is_signed_v<I>) {
      value_ = static_cast<long>(value);
    } else {
      value_ = static_cast<unsigned long>(value);
    }
  }

  Rational(const Integer& numerator);  // NOLINT(google-explicit-constructor)
  Rational(const Integer& numerator, const Integer& denominator);

  /// Parses "p", "-p", "p/q" (whitespace not allowed). Non-canonical input is
  /// accepted and normalized; a zero denominator throws FormatError.
  static Rational parse(std::string_view text);

  std::string str() const;

  Integer numerator() const { return value_.get_num(); }
  Integer denominator() const { return value_.get_den(); }

  int sign() const { return sgn(value_); }
  bool is_zero() const { return sign() == 0; }
  bool is_integer() const { return value_.get_den() == 1; }

  Rational abs() const;
  Rational inverse() const;

  /// Largest integer not exceeding the value.
  Integer floor() const;

  const mpq_class& raw() const { return value_; }

  Rational& operator+=(const Rational& other);
  Rational& operator-=(const Rational& other);
  Rational& operator*=(const Rational& other);
  Rational& operator/=(const Rational& other);

  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }
  friend Rational operator-(const Rational& a);

  friend bool operator==(const Rational& a, const Rational& b) { return cmp(a.value_, b.value_) == 0; }
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    const int c = cmp(a.value_, b.value_);
    return c < 0 ? std::strong_ordering::less
                 : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
  }

  friend std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

 private:
  mpq_class value_;
};

Rational pow(const Rational& base, unsigned long exponent);
Integer lcm(const Integer& a, const Integer& b);
inline Rational conj(const Rational& r) { return r; }

/// Exact Gaussian rational re + i*im.
struct GaussianRational {
  Rational re;
  Rational im;

  GaussianRational() = default;
  template <std::integral I>
  GaussianRational(I v) : re(v) {}  // NOLINT(google-explicit-constructor)
  GaussianRational(Rational r) : re(std::move(r)) {}  // NOLINT(google-explicit-constructor)
  GaussianRational(Rational r, Rational i) : re(std::move(r)), im(std::move(i)) {}

  bool is_zero() const { return re.is_zero() && im.is_zero(); }
  bool is_real() const { return im.is_zero(); }
  /// |z|^2
  Rational norm() const { return re * re + im * im; }
  std::string str() const;

  GaussianRational& operator+=(const GaussianRational& o);
  GaussianRational& operator-=(const GaussianRational& o);
  GaussianRational& operator*=(const GaussianRational& o);
  GaussianRational& operator/=(const GaussianRational& o);

  friend GaussianRational operator+(GaussianRational a, const GaussianRational& b) { return a += b; }
  friend GaussianRational operator-(GaussianRational a, const GaussianRational& b) { return a -= b; }
  friend GaussianRational operator*(GaussianRational a, const GaussianRational& b) { return a *= b; }
  friend GaussianRational operator/(GaussianRational a, const GaussianRational& b) { return a /= b; }
  friend GaussianRational operator-(const GaussianRational& a) { return {-a.re, -a.im}; }
  friend bool operator==(const GaussianRational& a, const GaussianRational& b) = default;

  friend std::ostream& operator<<(std::ostream& os, const GaussianRational& z) { return os << z.str(); }
};

inline GaussianRational conj(const GaussianRational& z) { return {z.re, -z.im}; }

}  // namespace recaut

template <>
struct std::hash<recaut::Rational> {
  std::size_t operator()(const recaut::Rational& r) const noexcept;
};
