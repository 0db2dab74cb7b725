#include "recaut/quadratic.hpp"

#include <stdexcept>

namespace recaut {

namespace {

bool is_square(const Integer& n) { return mpz_perfect_square_p(n.get_mpz_t()) != 0; }

Integer isqrt(const Integer& n) {
  Integer r;
  mpz_sqrt(r.get_mpz_t(), n.get_mpz_t());
  return r;
}

const Integer& common_radicand(const QuadraticNumber& x, const QuadraticNumber& y) {
  if (x.is_rational()) return y.radicand();
  if (y.is_rational()) return x.radicand();
  if (x.radicand() != y.radicand()) throw std::invalid_argument("quadratic numbers from different fields");
  return x.radicand();
}

}  // namespace

QuadraticNumber::QuadraticNumber(Rational a, Rational b, Integer d) : a_(std::move(a)), b_(std::move(b)), d_(std::move(d)) {
  if (d_ <= 0) throw std::invalid_argument("radicand must be positive");
  if (is_square(d_)) {
    a_ += b_ * Rational(isqrt(d_));
    b_ = Rational(0);
    d_ = 1;
  }
  if (b_.is_zero()) d_ = 1;
}

QuadraticNumber QuadraticNumber::sqrt_of(const Rational& x) {
  if (x.sign() < 0) throw std::domain_error("square root of a negative number");
  // sqrt(p/q) = sqrt(p q) / q
  if (x.is_zero()) return {};
  const Integer pq = x.numerator() * x.denominator();
  return {Rational(0), Rational(Integer(1), x.denominator()), pq};
}

int QuadraticNumber::sign() const {
  const int sa = a_.sign();
  const int sb = b_.sign();
  if (sb == 0) return sa;
  if (sa == 0 || sa == sb) return sb;
  // Opposite signs: compare a^2 with b^2 d.
  const Rational lhs = a_ * a_;
  const Rational rhs = b_ * b_ * Rational(d_);
  if (lhs == rhs) return 0;  // impossible for non-square d, kept for safety
  return lhs > rhs ? sa : sb;
}

std::pair<Rational, Rational> QuadraticNumber::bounds(unsigned bits) const {
  if (is_rational()) return {a_, a_};
  Integer scale = 1;
  scale <<= bits;
  const Integer s = isqrt(d_ * scale * scale);
  const Rational lo_root(s, scale);
  const Rational hi_root(s + 1, scale);
  Rational lo = a_ + b_ * (b_.sign() > 0 ? lo_root : hi_root);
  Rational hi = a_ + b_ * (b_.sign() > 0 ? hi_root : lo_root);
  return {std::move(lo), std::move(hi)};
}

QuadraticNumber operator+(const QuadraticNumber& x, const QuadraticNumber& y) {
  return {x.a_ + y.a_, x.b_ + y.b_, common_radicand(x, y)};
}

QuadraticNumber operator-(const QuadraticNumber& x, const QuadraticNumber& y) {
  return {x.a_ - y.a_, x.b_ - y.b_, common_radicand(x, y)};
}

QuadraticNumber operator*(const QuadraticNumber& x, const QuadraticNumber& y) {
  const Integer& d = common_radicand(x, y);
  return {x.a_ * y.a_ + x.b_ * y.b_ * Rational(d), x.a_ * y.b_ + x.b_ * y.a_, d};
}

QuadraticNumber operator/(const QuadraticNumber& x, const QuadraticNumber& y) {
  if (y.is_zero()) throw std::domain_error("division by zero");
  const Integer& d = common_radicand(x, y);
  const Rational norm = y.a_ * y.a_ - y.b_ * y.b_ * Rational(d);
  const QuadraticNumber num = x * y.conjugate();
  return {num.a_ / norm, num.b_ / norm, d};
}

}  // namespace recaut
