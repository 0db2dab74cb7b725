#pragma once

// Random instance generators shared by the unit and acceptance tests.

#include <random>
#include <string>
#include <vector>

#include "recaut/automata.hpp"
#include "recaut/sequences.hpp"

namespace recaut::testing {

using Rng = std::mt19937_64;

inline long uniform(Rng& rng, long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(rng); }

inline std::vector<Rational> integers(Rng& rng, std::size_t count, long bound) {
  std::vector<Rational> out;
  for (std::size_t i = 0; i < count; ++i) out.emplace_back(uniform(rng, -bound, bound));
  return out;
}

/// Integer recurrence of depth 1..max_depth with entries in [-bound, bound]
/// and a nonzero last coefficient.
inline LinRec random_linrec(Rng& rng, std::size_t max_depth, long bound) {
  const auto k = static_cast<std::size_t>(uniform(rng, 1, static_cast<long>(max_depth)));
  auto coeffs = integers(rng, k, bound);
  while (coeffs.back().is_zero()) coeffs.back() = Rational(uniform(rng, -bound, bound));
  return LinRec(integers(rng, k, bound), std::move(coeffs));
}

/// Entries (-2..2) / (1 or 2).
inline Rational small_rational(Rng& rng) { return Rational(uniform(rng, -2, 2), uniform(rng, 1, 2)); }

inline RatMatrix random_matrix(Rng& rng, std::size_t rows, std::size_t cols) {
  RatMatrix m(rows, cols);
  for (std::size_t i = 0; i < rows * cols; ++i) m[i] = small_rational(rng);
  return m;
}

inline Gfa random_gfa(Rng& rng, std::size_t states, const std::string& alphabet = "a") {
  std::map<char, RatMatrix> transitions;
  for (char c : alphabet) transitions.emplace(c, random_matrix(rng, states, states));
  return Gfa(alphabet, std::move(transitions), random_matrix(rng, states, 1), random_matrix(rng, 1, states));
}

/// Column-stochastic n x n matrix with entries in multiples of 1/4, some zero.
inline RatMatrix random_stochastic(Rng& rng, std::size_t n) {
  RatMatrix m(n, n);
  for (std::size_t c = 0; c < n; ++c) {
    for (int unit = 0; unit < 4; ++unit) m(static_cast<std::size_t>(uniform(rng, 0, static_cast<long>(n) - 1)), c) += Rational(1, 4);
  }
  return m;
}

inline Pfa random_pfa(Rng& rng, std::size_t n, const std::string& alphabet = "a") {
  std::map<char, RatMatrix> transitions;
  for (char c : alphabet) transitions.emplace(c, random_stochastic(rng, n));
  transitions.emplace('$', random_stochastic(rng, n));
  std::vector<std::size_t> accepting;
  for (std::size_t q = 0; q < n; ++q)
    if (uniform(rng, 0, 2) == 0) accepting.push_back(q);
  RatMatrix initial = RatMatrix::unit_column(n, static_cast<std::size_t>(uniform(rng, 0, static_cast<long>(n) - 1)));
  return Pfa(alphabet, std::move(transitions), std::move(initial), std::move(accepting));
}

}  // namespace recaut::testing
