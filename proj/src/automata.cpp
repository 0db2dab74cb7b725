#include "recaut/automata.hpp"

#include <algorithm>
#include <set>

#include "recaut/errors.hpp"

namespace recaut {

namespace {

void require_distinct(const std::string& alphabet) {
  if (alphabet.empty()) throw DimensionError("alphabet must not be empty");
  std::set<char> seen(alphabet.begin(), alphabet.end());
  if (seen.size() != alphabet.size()) throw DimensionError("alphabet has repeated symbols");
}

template <class Map>
void require_keys(const Map& transitions, const std::string& symbols) {
  if (transitions.size() != symbols.size()) {
    throw DimensionError("expected transitions for exactly the symbols '" + symbols + "'");
  }
  for (char c : symbols) {
    if (!transitions.contains(c)) throw DimensionError(std::string("missing transition for symbol '") + c + "'");
  }
}

void require_word(std::string_view word, const std::string& alphabet) {
  for (char c : word) {
    if (alphabet.find(c) == std::string::npos) {
      throw AlphabetError(std::string("symbol '") + c + "' not in alphabet '" + alphabet + "'");
    }
  }
}

std::vector<std::size_t> normalize_accepting(std::vector<std::size_t> accepting, std::size_t states) {
  std::sort(accepting.begin(), accepting.end());
  accepting.erase(std::unique(accepting.begin(), accepting.end()), accepting.end());
  if (!accepting.empty() && accepting.back() >= states) {
    throw DimensionError("accepting state " + std::to_string(accepting.back() + 1) + " out of range");
  }
  return accepting;
}

std::string symbol_name(char c) { return std::string("'") + c + "'"; }

}  // namespace

Gfa::Gfa(std::string alphabet, std::map<char, RatMatrix> transitions, RatMatrix initial, RatMatrix final)
    : alphabet_(std::move(alphabet)),
      transitions_(std::move(transitions)),
      initial_(std::move(initial)),
      final_(std::move(final)) {
  require_distinct(alphabet_);
  require_keys(transitions_, alphabet_);
  const std::size_t n = initial_.rows();
  if (n == 0 || initial_.cols() != 1) throw DimensionError("GFA initial vector must be a non-empty column");
  if (final_.rows() != 1 || final_.cols() != n) throw DimensionError("GFA final vector must be 1x" + std::to_string(n));
  for (const auto& [symbol, a] : transitions_) {
    if (a.rows() != n || a.cols() != n) throw DimensionError("GFA transition for " + symbol_name(symbol) + " is not " + std::to_string(n) + "x" + std::to_string(n));
  }
}

const RatMatrix& Gfa::transition(char symbol) const {
  const auto it = transitions_.find(symbol);
  if (it == transitions_.end()) throw AlphabetError("symbol " + symbol_name(symbol) + " not in alphabet");
  return it->second;
}

Rational gfa_eval(const Gfa& g, std::string_view word) {
  require_word(word, g.alphabet());
  RatMatrix state = g.initial();
  for (char c : word) state = g.transition(c) * state;
  return (g.final() * state)(0, 0);
}

Pfa::Pfa(std::string alphabet, std::map<char, RatMatrix> transitions, RatMatrix initial,
         std::vector<std::size_t> accepting, char end_marker)
    : alphabet_(std::move(alphabet)),
      transitions_(std::move(transitions)),
      initial_(std::move(initial)),
      end_marker_(end_marker) {
  require_distinct(alphabet_);
  if (alphabet_.find(end_marker_) != std::string::npos) throw DimensionError("end-marker must not be in the alphabet");
  require_keys(transitions_, alphabet_ + end_marker_);
  const std::size_t n = initial_.rows();
  if (n == 0 || initial_.cols() != 1) throw DimensionError("PFA initial vector must be a non-empty column");
  for (const auto& [symbol, a] : transitions_) {
    if (a.rows() != n || a.cols() != n) throw DimensionError("PFA transition for " + symbol_name(symbol) + " is not " + std::to_string(n) + "x" + std::to_string(n));
  }
  accepting_ = normalize_accepting(std::move(accepting), n);

  if (!is_column_stochastic(initial_)) report_.add("stochastic", "initial vector is not stochastic");
  for (const auto& [symbol, a] : transitions_) {
    if (!is_nonnegative(a)) report_.add("stochastic", "transition for " + symbol_name(symbol) + " has a negative entry");
    const auto sums = column_sums(a);
    for (std::size_t j = 0; j < sums.size(); ++j) {
      if (sums[j] != Rational(1)) {
        report_.add("stochastic", "transition for " + symbol_name(symbol) + ": column " + std::to_string(j + 1) +
                                      " sums to " + sums[j].str());
      }
    }
  }
}

const RatMatrix& Pfa::transition(char symbol) const {
  const auto it = transitions_.find(symbol);
  if (it == transitions_.end()) throw AlphabetError("symbol " + symbol_name(symbol) + " not in alphabet");
  return it->second;
}

Rational pfa_eval(const Pfa& p, std::string_view word) {
  require_word(word, p.alphabet());
  if (!p.report().ok()) throw InvalidModelError("invalid PFA: " + p.report().str());
  RatMatrix state = p.initial();
  for (char c : word) state = p.transition(c) * state;
  state = p.transition(p.end_marker()) * state;
  Rational mass;
  for (std::size_t i : p.accepting()) mass += state[i];
  return mass;
}

bool is_bistochastic(const Pfa& p) {
  for (const auto& [symbol, a] : p.transitions()) {
    for (const auto& s : row_sums(a))
      if (s != Rational(1)) return false;
  }
  return true;
}

bool is_hermitian(const ComplexMatrix& a) { return a.is_square() && conj_transpose(a) == a; }

bool is_positive_semidefinite(const ComplexMatrix& a) {
  if (!is_hermitian(a)) return false;
  ComplexMatrix m = a;
  std::vector<std::size_t> alive(a.rows());
  for (std::size_t i = 0; i < alive.size(); ++i) alive[i] = i;
  while (!alive.empty()) {
    std::size_t pivot = alive.size();
    for (std::size_t t = 0; t < alive.size(); ++t) {
      const Rational& d = m(alive[t], alive[t]).re;
      if (d.sign() < 0) return false;
      if (d.sign() > 0 && pivot == alive.size()) pivot = t;
    }
    if (pivot == alive.size()) {
      // Zero diagonal: PSD forces the whole remaining block to vanish.
      for (std::size_t r : alive)
        for (std::size_t c : alive)
          if (!m(r, c).is_zero()) return false;
      return true;
    }
    const std::size_t p = alive[pivot];
    alive.erase(alive.begin() + static_cast<std::ptrdiff_t>(pivot));
    const GaussianRational inv = GaussianRational(m(p, p).re.inverse());
    for (std::size_t r : alive) {
      if (m(r, p).is_zero()) continue;
      const GaussianRational factor = m(r, p) * inv;
      for (std::size_t c : alive) m(r, c) -= factor * m(p, c);
    }
  }
  return true;
}

Qfa::Qfa(std::string alphabet, std::map<char, Superoperator> superoperators, ComplexMatrix initial,
         std::vector<std::size_t> accepting, char end_marker)
    : alphabet_(std::move(alphabet)),
      superoperators_(std::move(superoperators)),
      initial_(std::move(initial)),
      end_marker_(end_marker) {
  require_distinct(alphabet_);
  if (alphabet_.find(end_marker_) != std::string::npos) throw DimensionError("end-marker must not be in the alphabet");
  require_keys(superoperators_, alphabet_ + end_marker_);
  const std::size_t n = initial_.rows();
  if (n == 0 || initial_.cols() != n) throw DimensionError("QFA initial state must be a non-empty square density matrix");
  for (const auto& [symbol, op] : superoperators_) {
    if (op.empty()) throw DimensionError("superoperator for " + symbol_name(symbol) + " has no operation elements");
    for (const auto& e : op) {
      if (e.rows() != n || e.cols() != n) throw DimensionError("operation element for " + symbol_name(symbol) + " is not " + std::to_string(n) + "x" + std::to_string(n));
    }
  }
  accepting_ = normalize_accepting(std::move(accepting), n);

  const auto identity = ComplexMatrix::identity(n);
  for (const auto& [symbol, op] : superoperators_) {
    ComplexMatrix completeness(n, n);
    for (const auto& e : op) completeness += conj_transpose(e) * e;
    if (completeness != identity) {
      report_.add("completeness", "operation elements for " + symbol_name(symbol) + " do not satisfy sum E^dagger E = I");
    }
  }
  if (!is_hermitian(initial_)) report_.add("density", "initial state is not Hermitian");
  const GaussianRational tr = trace(initial_);
  if (tr != GaussianRational(1)) report_.add("density", "initial state has trace " + tr.str());
  if (is_hermitian(initial_) && !is_positive_semidefinite(initial_)) {
    report_.add("density", "initial state is not positive semidefinite");
  }
}

const Qfa::Superoperator& Qfa::superoperator(char symbol) const {
  const auto it = superoperators_.find(symbol);
  if (it == superoperators_.end()) throw AlphabetError("symbol " + symbol_name(symbol) + " not in alphabet");
  return it->second;
}

ComplexMatrix apply_superoperator(const Qfa::Superoperator& op, const ComplexMatrix& rho) {
  ComplexMatrix out(rho.rows(), rho.cols());
  for (const auto& e : op) out += e * rho * conj_transpose(e);
  return out;
}

Rational qfa_eval(const Qfa& m, std::string_view word) {
  require_word(word, m.alphabet());
  if (!m.report().ok()) throw InvalidModelError("invalid QFA: " + m.report().str());
  ComplexMatrix rho = m.initial();
  for (char c : word) rho = apply_superoperator(m.superoperator(c), rho);
  rho = apply_superoperator(m.superoperator(m.end_marker()), rho);
  Rational mass;
  for (std::size_t i : m.accepting()) mass += rho(i, i).re;
  return mass;
}

ValidationReport validate(const Gfa&) { return {}; }
ValidationReport validate(const Pfa& p) { return p.report(); }
ValidationReport validate(const Qfa& m) { return m.report(); }

std::string_view relation_symbol(Relation r) {
  switch (r) {
    case Relation::Less: return "<";
    case Relation::LessEqual: return "<=";
    case Relation::Equal: return "=";
    case Relation::NotEqual: return "!=";
    case Relation::GreaterEqual: return ">=";
    case Relation::Greater: return ">";
  }
  return "?";
}

Relation parse_relation(std::string_view text) {
  if (text == "<" || text == "lt") return Relation::Less;
  if (text == "<=" || text == "le") return Relation::LessEqual;
  if (text == "=" || text == "==" || text == "eq") return Relation::Equal;
  if (text == "!=" || text == "ne") return Relation::NotEqual;
  if (text == ">=" || text == "ge") return Relation::GreaterEqual;
  if (text == ">" || text == "gt") return Relation::Greater;
  throw FormatError("unknown relation '" + std::string(text) + "'");
}

bool relation_holds(const Rational& value, Relation r, const Rational& cutpoint) {
  switch (r) {
    case Relation::Less: return value < cutpoint;
    case Relation::LessEqual: return value <= cutpoint;
    case Relation::Equal: return value == cutpoint;
    case Relation::NotEqual: return value != cutpoint;
    case Relation::GreaterEqual: return value >= cutpoint;
    case Relation::Greater: return value > cutpoint;
  }
  return false;
}

Classification classify_value(const Rational& value, const ThresholdQuery& q, std::size_t word_length) {
  const Side side = value < q.cutpoint ? Side::Below : (value == q.cutpoint ? Side::Equal : Side::Above);
  const bool in_domain = q.include_empty_word || word_length > 0;
  return {side, in_domain && relation_holds(value, q.relation, q.cutpoint)};
}

}  // namespace recaut
