#include "recaut/matrix.hpp"

namespace recaut {

std::vector<Rational> char_poly(const RatMatrix& a) {
  if (!a.is_square()) throw DimensionError("characteristic polynomial of non-square " + a.shape());
  const std::size_t n = a.rows();
  std::vector<Rational> coeffs{Rational(1)};
  coeffs.reserve(n + 1);
  // M_k = A M_{k-1} + c_{k-1} I,  c_k = -tr(A M_k) / k
  RatMatrix m(n, n);
  for (std::size_t k = 1; k <= n; ++k) {
    m = a * m;
    for (std::size_t i = 0; i < n; ++i) m(i, i) += coeffs.back();
    coeffs.push_back(-trace(a * m) / Rational(k));
  }
  return coeffs;
}

RatMatrix evaluate_polynomial(std::span<const Rational> coeffs, const RatMatrix& a) {
  if (!a.is_square()) throw DimensionError("polynomial of non-square " + a.shape());
  const std::size_t n = a.rows();
  RatMatrix acc(n, n);
  for (const Rational& c : coeffs) {
    acc = acc * a;
    for (std::size_t i = 0; i < n; ++i) acc(i, i) += c;
  }
  return acc;
}


std::vector<Rational> column_sums(const RatMatrix& a) {
  std::vector<Rational> sums(a.cols());
  for (std::size_t r = 0; r < a.rows(); ++r)
    for (std::size_t c = 0; c < a.cols(); ++c) sums[c] += a(r, c);
  return sums;
}

std::vector<Rational> row_sums(const RatMatrix& a) {
  std::vector<Rational> sums(a.rows());
  for (std::size_t r = 0; r < a.rows(); ++r)
    for (std::size_t c = 0; c < a.cols(); ++c) sums[r] += a(r, c);
  return sums;
}

bool is_nonnegative(const RatMatrix& a) {
  for (const auto& x : a.entries())
    if (x.sign() < 0) return false;
  return true;
}

bool is_column_stochastic(const RatMatrix& a) {
  if (!is_nonnegative(a)) return false;
  for (const auto& s : column_sums(a))
    if (s != Rational(1)) return false;
  return true;
}

}  // namespace recaut
