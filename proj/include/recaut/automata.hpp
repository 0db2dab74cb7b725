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

// Conventions shared by all automata in this library: state vectors are
// columns, a symbol acts by left multiplication (v' = A_sigma v), and entry
// A(j, i) is the weight of the move from state i to state j.

/// Generalized finite automaton: f_G(w) = f A_{w_k} ... A_{w_1} v_0.
class Gfa {
 public:
  Gfa(std::string alphabet, std::map<char, RatMatrix> transitions, RatMatrix initial, RatMatrix final);

  std::size_t states() const { return initial_.rows(); }
  const std::string& alphabet() const { return alphabet_; }
  bool is_unary() const { return alphabet_.size() == 1; }
  const std::map<char, RatMatrix>& transitions() const { return transitions_; }
  const RatMatrix& transition(char symbol) const;
  const RatMatrix& initial() const { return initial_; }
  const RatMatrix& final() const { return final_; }

  friend bool operator==(const Gfa&, const Gfa&) = default;

 private:
  std::string alphabet_;
  std::map<char, RatMatrix> transitions_;
  RatMatrix initial_;
  RatMatrix final_;
};

Rational gfa_eval(const Gfa& g, std::string_view word);

/// Probabilistic finite automaton reading w followed by the end-marker.
///
/// Stochasticity is checked once at construction; the report is available
/// through validate() and evaluation of an invalid automaton throws.
class Pfa {
 public:
  /// `accepting` holds 0-based state indices.
  Pfa(std::string alphabet, std::map<char, RatMatrix> transitions, RatMatrix initial, std::vector<std::size_t> accepting,
      char end_marker = '$');

  std::size_t states() const { return initial_.rows(); }
  const std::string& alphabet() const { return alphabet_; }
  char end_marker() const { return end_marker_; }
  bool is_unary() const { return alphabet_.size() == 1; }
  const std::map<char, RatMatrix>& transitions() const { return transitions_; }
  const RatMatrix& transition(char symbol) const;
  const RatMatrix& initial() const { return initial_; }
  const std::vector<std::size_t>& accepting() const { return accepting_; }
  const ValidationReport& report() const { return report_; }

  friend bool operator==(const Pfa& a, const Pfa& b) {
    return a.alphabet_ == b.alphabet_ && a.transitions_ == b.transitions_ && a.initial_ == b.initial_ &&
           a.accepting_ == b.accepting_ && a.end_marker_ == b.end_marker_;
  }

 private:
  std::string alphabet_;
  std::map<char, RatMatrix> transitions_;
  RatMatrix initial_;
  std::vector<std::size_t> accepting_;
  char end_marker_;
  ValidationReport report_;
};

Rational pfa_eval(const Pfa& p, std::string_view word);

/// True iff every transition matrix (end-marker included) also has unit row sums.
bool is_bistochastic(const Pfa& p);

/// Quantum finite automaton over mixed states with Gaussian-rational
/// operation elements. Reads w followed by the end-marker.
class Qfa {
 public:
  using Superoperator = std::vector<ComplexMatrix>;

  Qfa(std::string alphabet, std::map<char, Superoperator> superoperators, ComplexMatrix initial,
      std::vector<std::size_t> accepting, char end_marker = '$');

  std::size_t states() const { return initial_.rows(); }
  const std::string& alphabet() const { return alphabet_; }
  char end_marker() const { return end_marker_; }
  bool is_unary() const { return alphabet_.size() == 1; }
  const std::map<char, Superoperator>& superoperators() const { return superoperators_; }
  const Superoperator& superoperator(char symbol) const;
  const ComplexMatrix& initial() const { return initial_; }
  const std::vector<std::size_t>& accepting() const { return accepting_; }
  const ValidationReport& report() const { return report_; }

  friend bool operator==(const Qfa& a, const Qfa& b) {
    return a.alphabet_ == b.alphabet_ && a.superoperators_ == b.superoperators_ && a.initial_ == b.initial_ &&
           a.accepting_ == b.accepting_ && a.end_marker_ == b.end_marker_;
  }

 private:
  std::string alphabet_;
  std::map<char, Superoperator> superoperators_;
  ComplexMatrix initial_;
  std::vector<std::size_t> accepting_;
  char end_marker_;
  ValidationReport report_;
};

/// rho <- sum_k E_k rho E_k^dagger.
ComplexMatrix apply_superoperator(const Qfa::Superoperator& op, const ComplexMatrix& rho);

Rational qfa_eval(const Qfa& m, std::string_view word);

/// Exact positive-semidefiniteness of a Hermitian matrix (symmetric
/// pivoting on positive diagonal entries, Schur complements).
bool is_positive_semidefinite(const ComplexMatrix& a);
bool is_hermitian(const ComplexMatrix& a);

ValidationReport validate(const Gfa& g);
ValidationReport validate(const Pfa& p);
ValidationReport validate(const Qfa& m);

enum class Relation { Less, LessEqual, Equal, NotEqual, GreaterEqual, Greater };

std::string_view relation_symbol(Relation r);
/// Accepts "<", "<=", "=", "==", "!=", ">=", ">" and the names lt, le, eq, ne, ge, gt.
Relation parse_relation(std::string_view text);

/// Names the language L(., rel cutpoint); with include_empty_word = false
/// the empty word is removed (the L+ variant).
struct ThresholdQuery {
  Rational cutpoint;
  Relation relation = Relation::Greater;
  bool include_empty_word = true;
};

enum class Side { Below, Equal, Above };

struct Classification {
  Side side;
  bool member;
};

bool relation_holds(const Rational& value, Relation r, const Rational& cutpoint);

Classification classify_value(const Rational& value, const ThresholdQuery& q, std::size_t word_length);

}  // namespace recaut
