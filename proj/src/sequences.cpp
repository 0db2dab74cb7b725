#include "recaut/sequences.hpp"

#include <algorithm>
#include <deque>

#include "recaut/errors.hpp"

namespace recaut {

LinRec::LinRec(std::vector<Rational> initials, std::vector<Rational> coeffs)
    : initials_(std::move(initials)), coeffs_(std::move(coeffs)) {
  if (initials_.empty()) throw DimensionError("recurrence depth must be positive");
  if (initials_.size() != coeffs_.size()) {
    throw DimensionError("recurrence has " + std::to_string(initials_.size()) + " initial values but " +
                         std::to_string(coeffs_.size()) + " coefficients");
  }
}

std::vector<Rational> lr_terms(const LinRec& u, std::size_t count) {
  const std::size_t k = u.depth();
  std::vector<Rational> out;
  out.reserve(count);
  for (std::size_t n = 0; n < count; ++n) {
    if (n < k) {
      out.push_back(u.initials()[n]);
      continue;
    }
    Rational next;
    for (std::size_t i = 1; i <= k; ++i) {
      const Rational& a = u.coeffs()[i - 1];
      if (!a.is_zero()) next += a * out[n - i];
    }
    out.push_back(std::move(next));
  }
  return out;
}

Rational lr_eval(const LinRec& u, std::size_t n) {
  const std::size_t k = u.depth();
  if (n < k) return u.initials()[n];
  // Sliding window holding u_{m-k}, ..., u_{m-1}.
  std::deque<Rational> window(u.initials().begin(), u.initials().end());
  for (std::size_t m = k; m <= n; ++m) {
    Rational next;
    for (std::size_t i = 1; i <= k; ++i) {
      const Rational& a = u.coeffs()[i - 1];
      if (!a.is_zero()) next += a * window[k - i];
    }
    window.pop_front();
    window.push_back(std::move(next));
  }
  return window.back();
}

std::vector<Rational> LinearForm::values(std::size_t count) const {
  std::vector<Rational> out;
  out.reserve(count);
  RatMatrix state = initial;
  for (std::size_t n = 0; n < count; ++n) {
    if (n > 0) state = step * state;
    out.push_back((final * state)(0, 0));
  }
  return out;
}

RatMatrix companion_matrix(const LinRec& u) {
  const std::size_t k = u.depth();
  RatMatrix m(k, k);
  for (std::size_t j = 0; j < k; ++j) m(0, j) = u.coeffs()[j];
  for (std::size_t i = 1; i < k; ++i) m(i, i - 1) = Rational(1);
  return m;
}

LinearForm companion_form(const LinRec& u) {
  const std::size_t k = u.depth();
  std::vector<Rational> state(u.initials().rbegin(), u.initials().rend());
  return {RatMatrix::unit_row(k, k - 1), companion_matrix(u), RatMatrix::column(std::move(state))};
}

LinRec linrec_from_form(const LinearForm& form) {
  const auto poly = char_poly(form.step);
  const std::size_t d = form.dimension();
  std::vector<Rational> coeffs;
  coeffs.reserve(d);
  for (std::size_t i = 1; i <= d; ++i) coeffs.push_back(-poly[i]);
  return LinRec(form.values(d), std::move(coeffs));
}

LinRec lr_combine(CombineKind kind, const LinRec& u, const LinRec& v) {
  const LinearForm fu = companion_form(u);
  const LinearForm fv = companion_form(v);
  LinearForm combined;
  if (kind == CombineKind::Sum) {
    combined = {concat_rows(fu.final, fv.final), direct_sum(fu.step, fv.step),
                concat_columns(fu.initial, fv.initial)};
  } else {
    combined = {tensor_product(fu.final, fv.final), tensor_product(fu.step, fv.step),
                tensor_product(fu.initial, fv.initial)};
  }
  return linrec_from_form(combined);
}

LinRec lr_constant(const Rational& c) { return LinRec({c}, {Rational(1)}); }

LinRec lr_reduce(Reduction kind, const LinRec& u) {
  switch (kind) {
    case Reduction::SkolemToStrictPositivity: {
      const LinRec neg_square = lr_combine(CombineKind::Product, lr_constant(-1), lr_combine(CombineKind::Product, u, u));
      return lr_combine(CombineKind::Sum, neg_square, lr_constant(1));
    }
    case Reduction::SkolemToPositivity:
      return lr_combine(CombineKind::Product, lr_constant(-1), lr_combine(CombineKind::Product, u, u));
    case Reduction::StrictPositivityToPositivity:
      return lr_combine(CombineKind::Sum, lr_combine(CombineKind::Product, lr_constant(2), u), lr_constant(1));
  }
  throw std::invalid_argument("unknown reduction");
}

LinRec lr_minimize(const LinRec& u) {
  const auto s = lr_terms(u, 2 * u.depth());
  std::vector<Rational> c{Rational(1)};
  std::vector<Rational> b{Rational(1)};
  std::size_t len = 0;
  std::size_t shift = 1;
  Rational last_discrepancy(1);
  for (std::size_t n = 0; n < s.size(); ++n) {
    Rational d = s[n];
    for (std::size_t i = 1; i <= len && i < c.size(); ++i) d += c[i] * s[n - i];
    if (d.is_zero()) {
      ++shift;
      continue;
    }
    const Rational factor = d / last_discrepancy;
    std::vector<Rational> next = c;
    if (next.size() < b.size() + shift) next.resize(b.size() + shift);
    for (std::size_t i = 0; i < b.size(); ++i) next[i + shift] -= factor * b[i];
    if (2 * len <= n) {
      b = std::move(c);
      len = n + 1 - len;
      last_discrepancy = d;
      shift = 1;
    } else {
      ++shift;
    }
    c = std::move(next);
  }
  if (len == 0) return lr_constant(0);
  c.resize(len + 1);
  std::vector<Rational> coeffs;
  coeffs.reserve(len);
  for (std::size_t i = 1; i <= len; ++i) coeffs.push_back(-c[i]);
  return LinRec(std::vector<Rational>(s.begin(), s.begin() + static_cast<std::ptrdiff_t>(len)), std::move(coeffs));
}

void require_unary_word(std::string_view word, char symbol) {
  for (char c : word) {
    if (c != symbol) {
      throw AlphabetError(std::string("symbol '") + c + "' not in alphabet {" + symbol + "}");
    }
  }
}

Rational lra_eval(const Lra& automaton, std::string_view word) {
  require_unary_word(word, automaton.symbol);
  return lr_eval(automaton.rec, word.size());
}

namespace {

void enumerate_words(std::string& prefix, std::size_t max_len, char first, char second,
                     std::vector<std::string>& out) {
  out.push_back(prefix);
  if (prefix.size() == max_len) return;
  for (char c : {first, second}) {
    prefix.push_back(c);
    enumerate_words(prefix, max_len, first, second, out);
    prefix.pop_back();
  }
}

}  // namespace

TreeLinRec::TreeLinRec(std::size_t depth, std::map<std::string, Rational> initials, std::vector<Rational> coeffs_first,
                       std::vector<Rational> coeffs_second, char first, char second)
    : depth_(depth),
      initials_(std::move(initials)),
      coeffs_first_(std::move(coeffs_first)),
      coeffs_second_(std::move(coeffs_second)),
      first_(first),
      second_(second) {
  if (depth_ == 0) throw DimensionError("tree recurrence depth must be positive");
  if (first_ == second_) throw DimensionError("tree recurrence needs two distinct symbols");
  if (coeffs_first_.size() != depth_ || coeffs_second_.size() != depth_) {
    throw DimensionError("tree recurrence needs " + std::to_string(depth_) + " coefficients per symbol");
  }
  std::vector<std::string> keys;
  std::string prefix;
  enumerate_words(prefix, depth_ - 1, first_, second_, keys);
  if (initials_.size() != keys.size()) {
    throw DimensionError("tree recurrence of depth " + std::to_string(depth_) + " needs " +
                         std::to_string(keys.size()) + " initial values, got " + std::to_string(initials_.size()));
  }
  for (const auto& key : keys) {
    if (!initials_.contains(key)) throw DimensionError("missing initial value for word '" + key + "'");
  }
}

Rational tlr_eval(const TreeLinRec& t, std::string_view word) {
  for (char c : word) {
    if (c != t.first() && c != t.second()) {
      throw AlphabetError(std::string("symbol '") + c + "' not in tree alphabet");
    }
  }
  const std::size_t k = t.depth();
  if (word.size() < k) return t.initials().at(std::string(word));
  std::vector<Rational> prefix_values;
  prefix_values.reserve(word.size() + 1);
  for (std::size_t len = 0; len <= word.size(); ++len) {
    if (len < k) {
      prefix_values.push_back(t.initials().at(std::string(word.substr(0, len))));
      continue;
    }
    Rational value;
    for (std::size_t i = 1; i <= k; ++i) {
      // c_i is chosen by the symbol right after the referenced prefix.
      const auto& coeffs = word[len - i] == t.first() ? t.coeffs_first() : t.coeffs_second();
      value += coeffs[i - 1] * prefix_values[len - i];
    }
    prefix_values.push_back(std::move(value));
  }
  return prefix_values.back();
}

VectorLinRec::VectorLinRec(std::vector<RatMatrix> initials, std::vector<RatMatrix> matrices)
    : initials_(std::move(initials)), matrices_(std::move(matrices)) {
  if (initials_.empty()) throw DimensionError("vector recurrence depth must be positive");
  if (initials_.size() != matrices_.size()) throw DimensionError("vector recurrence: initials/matrices count mismatch");
  const std::size_t m = initials_.front().rows();
  if (m == 0) throw DimensionError("vector recurrence dimension must be positive");
  for (const auto& v : initials_) {
    if (v.rows() != m || v.cols() != 1) throw DimensionError("vector recurrence initial is not " + std::to_string(m) + "x1");
  }
  for (const auto& a : matrices_) {
    if (a.rows() != m || a.cols() != m) throw DimensionError("vector recurrence matrix is not square of size " + std::to_string(m));
  }
}

RatMatrix vlr_eval(const VectorLinRec& v, std::size_t n) {
  const std::size_t k = v.depth();
  if (n < k) return v.initials()[n];
  std::deque<RatMatrix> window(v.initials().begin(), v.initials().end());
  for (std::size_t m = k; m <= n; ++m) {
    RatMatrix next(v.dimension(), 1);
    for (std::size_t i = 1; i <= k; ++i) next += v.matrices()[i - 1] * window[k - i];
    window.pop_front();
    window.push_back(std::move(next));
  }
  return window.back();
}

namespace {

ValidationReport check_plrva(const VectorLinRec& rec, const RatMatrix& final) {
  ValidationReport report;
  for (std::size_t i = 0; i < rec.depth(); ++i) {
    if (!is_column_stochastic(rec.initials()[i])) {
      report.add("condition 1", "initial vector v_" + std::to_string(i) + " is not stochastic");
    }
  }
  Rational total;
  bool decomposable = true;
  for (std::size_t i = 0; i < rec.depth(); ++i) {
    const RatMatrix& a = rec.matrices()[i];
    const std::string name = "A_" + std::to_string(i + 1);
    if (!is_nonnegative(a)) {
      report.add("condition 2", name + " has a negative entry");
      decomposable = false;
      continue;
    }
    const auto sums = column_sums(a);
    if (std::adjacent_find(sums.begin(), sums.end(), std::not_equal_to<>()) != sums.end()) {
      report.add("condition 2", name + " is not a multiple of a stochastic matrix (unequal column sums)");
      decomposable = false;
      continue;
    }
    total += sums.front();
  }
  if (decomposable && total != Rational(1)) {
    report.add("condition 2", "multipliers d_i sum to " + total.str() + ", not 1");
  }
  for (std::size_t j = 0; j < final.cols(); ++j) {
    if (final[j].sign() < 0 || final[j] > Rational(1)) {
      report.add("condition 3", "final entry " + std::to_string(j + 1) + " = " + final[j].str() + " outside [0,1]");
    }
  }
  return report;
}

}  // namespace

Lrva::Lrva(VectorLinRec rec, RatMatrix final, char symbol, bool probabilistic)
    : rec_(std::move(rec)), final_(std::move(final)), symbol_(symbol), probabilistic_(probabilistic) {
  if (final_.rows() != 1 || final_.cols() != rec_.dimension()) {
    throw DimensionError("LRVA final vector must be 1x" + std::to_string(rec_.dimension()) + ", got " + final_.shape());
  }
  if (probabilistic_) report_ = check_plrva(rec_, final_);
}

ValidationReport plrva_validate(const Lrva& v) { return check_plrva(v.rec(), v.final()); }

Rational lrva_eval(const Lrva& v, std::string_view word) {
  require_unary_word(word, v.symbol());
  if (!v.report().ok()) throw InvalidModelError("invalid PLRVA: " + v.report().str());
  return (v.final() * vlr_eval(v.rec(), word.size()))(0, 0);
}

}  // namespace recaut
