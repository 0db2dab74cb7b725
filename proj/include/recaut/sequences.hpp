#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "recaut/matrix.hpp"
#include "recaut/rational.hpp"
#include "recaut/validation.hpp"

namespace recaut {

/// Scalar linear recurrence u_n = a_1 u_{n-1} + ... + a_k u_{n-k} (n >= k).
class LinRec {
 public:
  LinRec(std::vector<Rational> initials, std::vector<Rational> coeffs);

  std::size_t depth() const { return initials_.size(); }
  const std::vector<Rational>& initials() const { return initials_; }
  /// (a_1, ..., a_k); a_i multiplies u_{n-i}.
  const std::vector<Rational>& coeffs() const { return coeffs_; }

  friend bool operator==(const LinRec&, const LinRec&) = default;

 private:
  std::vector<Rational> initials_;
  std::vector<Rational> coeffs_;
};

/// Value(n) = final * step^n * initial, the common matrix reading of
/// recurrences and unary automata.
struct LinearForm {
  RatMatrix final;    // 1 x d
  RatMatrix step;     // d x d
  RatMatrix initial;  // d x 1

  std::size_t dimension() const { return step.rows(); }
  /// value(0), ..., value(count - 1) by iterating the state vector.
  std::vector<Rational> values(std::size_t count) const;
};

Rational lr_eval(const LinRec& u, std::size_t n);

/// u_0, ..., u_{count-1}.
std::vector<Rational> lr_terms(const LinRec& u, std::size_t count);

/// Companion reading: state (u_{n+k-1}, ..., u_n), read off by e_k. Valid for all n >= 0.
LinearForm companion_form(const LinRec& u);

/// The k x k companion block with first row (a_1, ..., a_k) and a shifted identity below.
RatMatrix companion_matrix(const LinRec& u);

/// Recurrence of depth dim(form) satisfied by form.value(n) for all n >= 0,
/// coefficients taken from the characteristic polynomial of form.step.
LinRec linrec_from_form(const LinearForm& form);

enum class CombineKind { Sum, Product };

/// w_n = u_n + v_n or u_n * v_n, through direct sum / tensor product of the
/// companion forms. Depth k_u + k_v (sum) or k_u * k_v (product).
LinRec lr_combine(CombineKind kind, const LinRec& u, const LinRec& v);

LinRec lr_constant(const Rational& c);

enum class Reduction {
  SkolemToStrictPositivity,      // v = 1 - u^2:  v_n > 0  <=> u_n = 0
  SkolemToPositivity,            // v = -u^2:     v_n >= 0 <=> u_n = 0
  StrictPositivityToPositivity,  // v = 2u + 1:   v_n > 0  <=> u_n >= 0
};

LinRec lr_reduce(Reduction kind, const LinRec& u);

/// Shortest recurrence generating the same sequence (Berlekamp-Massey on
/// 2k terms). The all-zero sequence maps to the depth-1 constant 0.
LinRec lr_minimize(const LinRec& u);

/// Linear recurrence automaton: reads a^j and outputs u_j.
struct Lra {
  LinRec rec;
  char symbol = 'a';

  friend bool operator==(const Lra&, const Lra&) = default;
};

Rational lra_eval(const Lra& automaton, std::string_view word);

/// Recurrence on the binary tree of words over {first, second}:
/// t_w = sum_i c_i t_{w[0, n-i)} where c_i = a_i if w[n-i] == first else b_i.
class TreeLinRec {
 public:
  TreeLinRec(std::size_t depth, std::map<std::string, Rational> initials, std::vector<Rational> coeffs_first,
             std::vector<Rational> coeffs_second, char first = 'a', char second = 'b');

  std::size_t depth() const { return depth_; }
  char first() const { return first_; }
  char second() const { return second_; }
  const std::map<std::string, Rational>& initials() const { return initials_; }
  const std::vector<Rational>& coeffs_first() const { return coeffs_first_; }
  const std::vector<Rational>& coeffs_second() const { return coeffs_second_; }

  friend bool operator==(const TreeLinRec&, const TreeLinRec&) = default;

 private:
  std::size_t depth_;
  std::map<std::string, Rational> initials_;
  std::vector<Rational> coeffs_first_;
  std::vector<Rational> coeffs_second_;
  char first_;
  char second_;
};

Rational tlr_eval(const TreeLinRec& t, std::string_view word);

/// v_n = A_1 v_{n-1} + ... + A_k v_{n-k} over column vectors of dimension m.
class VectorLinRec {
 public:
  VectorLinRec(std::vector<RatMatrix> initials, std::vector<RatMatrix> matrices);

  std::size_t dimension() const { return initials_.front().rows(); }
  std::size_t depth() const { return initials_.size(); }
  const std::vector<RatMatrix>& initials() const { return initials_; }
  const std::vector<RatMatrix>& matrices() const { return matrices_; }

  friend bool operator==(const VectorLinRec&, const VectorLinRec&) = default;

 private:
  std::vector<RatMatrix> initials_;
  std::vector<RatMatrix> matrices_;
};

RatMatrix vlr_eval(const VectorLinRec& v, std::size_t n);

/// Vector recurrence automaton f_V(a^j) = f . v_j. When `probabilistic` is
/// set the PLRVA constraints are checked at construction and evaluation of
/// a violating automaton throws InvalidModelError.
class Lrva {
 public:
  Lrva(VectorLinRec rec, RatMatrix final, char symbol = 'a', bool probabilistic = false);

  const VectorLinRec& rec() const { return rec_; }
  const RatMatrix& final() const { return final_; }
  char symbol() const { return symbol_; }
  bool probabilistic() const { return probabilistic_; }
  const ValidationReport& report() const { return report_; }

  friend bool operator==(const Lrva& a, const Lrva& b) {
    return a.rec_ == b.rec_ && a.final_ == b.final_ && a.symbol_ == b.symbol_ && a.probabilistic_ == b.probabilistic_;
  }

 private:
  VectorLinRec rec_;
  RatMatrix final_;
  char symbol_;
  bool probabilistic_;
  ValidationReport report_;
};

Rational lrva_eval(const Lrva& v, std::string_view word);

/// PLRVA conditions. Rules are named "condition 1" (stochastic initial
/// vectors), "condition 2" (A_i = d_i B_i, B_i column-stochastic, d_i >= 0,
/// sum d_i = 1) and "condition 3" (final entries in [0, 1]), in that order.
ValidationReport plrva_validate(const Lrva& v);

/// Throws AlphabetError unless every character of `word` is `symbol`.
void require_unary_word(std::string_view word, char symbol);

}  // namespace recaut
