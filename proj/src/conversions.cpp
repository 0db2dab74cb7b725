#include "recaut/conversions.hpp"

#include <random>

#include "recaut/errors.hpp"

namespace recaut {

Rational ConversionCertificate::predict(const Rational& source_value, std::size_t length) const {
  return pow(gamma, length) * alpha * source_value + beta;
}

Converted<Gfa> linrec_to_gfa(const LinRec& u, char symbol) {
  const std::size_t k = u.depth();
  const RatMatrix m1 = companion_matrix(u);
  std::vector<Rational> state(u.initials().rbegin(), u.initials().rend());
  const RatMatrix z = m1 * RatMatrix::column(std::move(state));  // (u_k, ..., u_1)

  RatMatrix m(k + 1, k + 1);
  for (std::size_t i = 0; i < k; ++i) {
    m(i + 1, 0) = z[i];
    for (std::size_t j = 0; j < k; ++j) m(i + 1, j + 1) = m1(i, j);
  }
  Gfa g(std::string(1, symbol), {{symbol, std::move(m)}}, RatMatrix::unit_column(k + 1, 0),
        RatMatrix::unit_row(k + 1, k));
  ConversionCertificate cert{.source = "lrr", .target = "gfa", .valid_from = 1};
  return {std::move(g), std::move(cert)};
}

Converted<Gfa> linrec_to_gfa(const Lra& u) {
  auto out = linrec_to_gfa(u.rec, u.symbol);
  out.certificate.source = "lra";
  return out;
}

Converted<LinRec> gfa_to_linrec(const Gfa& g) {
  if (!g.is_unary()) throw ConversionError("GFA over '" + g.alphabet() + "' is not unary");
  const LinearForm form{g.final(), g.transition(g.alphabet().front()), g.initial()};
  return {linrec_from_form(form), ConversionCertificate{.source = "gfa", .target = "lrr"}};
}

Converted<Gfa> shift_cutpoint(const Gfa& g, const Rational& lambda) {
  std::map<char, RatMatrix> transitions;
  const RatMatrix one{{Rational(1)}};
  for (const auto& [symbol, a] : g.transitions()) transitions.emplace(symbol, direct_sum(a, one));
  Gfa shifted(g.alphabet(), std::move(transitions), concat_columns(g.initial(), RatMatrix::column({Rational(1)})),
              concat_rows(g.final(), RatMatrix::row({-lambda})));
  ConversionCertificate cert{.source = "gfa", .target = "gfa", .beta = -lambda};
  cert.source_cutpoint = lambda;
  cert.target_cutpoint = Rational(0);
  return {std::move(shifted), std::move(cert)};
}

namespace {

Integer denominator_lcm(const RatMatrix& a) {
  Integer d = 1;
  for (const auto& x : a.entries()) d = lcm(d, x.denominator());
  return d;
}

}  // namespace

bool is_integer_gfa(const Gfa& g) {
  auto integral = [](const RatMatrix& a) {
    for (const auto& x : a.entries())
      if (!x.is_integer()) return false;
    return true;
  };
  for (const auto& [symbol, a] : g.transitions())
    if (!integral(a)) return false;
  return integral(g.initial()) && integral(g.final());
}

Converted<Gfa> rationalize_to_integer(const Gfa& g) {
  Integer d = 1;
  for (const auto& [symbol, a] : g.transitions()) d = lcm(d, denominator_lcm(a));
  const Rational scale_transitions(d);
  const Rational scale_initial(denominator_lcm(g.initial()));
  const Rational scale_final(denominator_lcm(g.final()));

  std::map<char, RatMatrix> transitions;
  for (const auto& [symbol, a] : g.transitions()) transitions.emplace(symbol, a * scale_transitions);
  Gfa scaled(g.alphabet(), std::move(transitions), g.initial() * scale_initial, g.final() * scale_final);
  ConversionCertificate cert{
      .source = "gfa", .target = "gfa", .alpha = scale_initial * scale_final, .gamma = scale_transitions};
  cert.source_cutpoint = Rational(0);
  cert.target_cutpoint = Rational(0);
  return {std::move(scaled), std::move(cert)};
}

PfaConversion gfa_to_pfa(const Gfa& g) {
  const char end_marker = '$';
  if (g.alphabet().find(end_marker) != std::string::npos) {
    throw ConversionError("GFA alphabet already uses the end-marker '$'");
  }
  const std::size_t n = g.states();
  // Layout: start | n GFA states | accept | column-sum slack | row-sum slack.
  const std::size_t start = 0;
  const std::size_t accept = n + 1;
  const std::size_t core = n + 2;
  const std::size_t col_slack = n + 2;
  const std::size_t row_slack = n + 3;
  const std::size_t total = n + 4;

  auto pad = [&](const RatMatrix& b) {
    RatMatrix p(total, total);
    for (std::size_t i = 0; i < core; ++i)
      for (std::size_t j = 0; j < core; ++j) p(i, j) = b(i, j);
    const auto cols = column_sums(b);
    const auto rows = row_sums(b);
    Rational grand;
    for (std::size_t j = 0; j < core; ++j) {
      p(col_slack, j) = -cols[j];
      grand += cols[j];
    }
    for (std::size_t i = 0; i < core; ++i) p(i, row_slack) = -rows[i];
    p(col_slack, row_slack) = grand;
    return p;
  };

  std::map<char, RatMatrix> padded;
  for (const auto& [symbol, a] : g.transitions()) {
    RatMatrix b(core, core);
    const RatMatrix first_step = a * g.initial();
    for (std::size_t i = 0; i < n; ++i) {
      b(1 + i, start) = first_step[i];
      for (std::size_t j = 0; j < n; ++j) b(1 + i, 1 + j) = a(i, j);
    }
    padded.emplace(symbol, pad(b));
  }
  {
    RatMatrix b(core, core);
    b(accept, start) = (g.final() * g.initial())(0, 0);
    for (std::size_t j = 0; j < n; ++j) b(accept, 1 + j) = g.final()[j];
    padded.emplace(end_marker, pad(b));
  }

  Rational max_abs;
  for (const auto& [symbol, b] : padded)
    for (const auto& x : b.entries())
      if (x.abs() > max_abs) max_abs = x.abs();
  Rational c(1);
  while (c <= max_abs) c *= Rational(2);

  const Rational states(total);
  const Rational norm = (c * states).inverse();
  std::map<char, RatMatrix> stochastic;
  for (auto& [symbol, b] : padded) {
    RatMatrix m = b;
    for (std::size_t i = 0; i < total; ++i)
      for (std::size_t j = 0; j < total; ++j) m(i, j) = (m(i, j) + c) * norm;
    stochastic.emplace(symbol, std::move(m));
  }

  const Rational cutpoint = states.inverse();
  Pfa p(g.alphabet(), std::move(stochastic), RatMatrix::unit_column(total, start), {accept}, end_marker);
  ConversionCertificate cert{.source = "gfa", .target = "pfa", .alpha = norm, .beta = cutpoint, .gamma = norm};
  cert.source_cutpoint = Rational(0);
  cert.target_cutpoint = cutpoint;
  return {std::move(p), cutpoint, std::move(cert)};
}

namespace {

/// Coordinates of a Hermitian matrix: diagonal entries, then Re and Im of
/// each upper-triangular entry (i < j).
RatMatrix hermitian_coordinates(const ComplexMatrix& rho) {
  const std::size_t n = rho.rows();
  RatMatrix out(n * n, 1);
  std::size_t idx = 0;
  for (std::size_t i = 0; i < n; ++i) {
    if (!rho(i, i).is_real()) throw ConversionError("non-Hermitian matrix in QFA vectorization");
    out[idx++] = rho(i, i).re;
  }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      if (rho(j, i) != conj(rho(i, j))) throw ConversionError("non-Hermitian matrix in QFA vectorization");
      out[idx++] = rho(i, j).re;
      out[idx++] = rho(i, j).im;
    }
  return out;
}

std::vector<ComplexMatrix> hermitian_basis(std::size_t n) {
  std::vector<ComplexMatrix> basis;
  basis.reserve(n * n);
  for (std::size_t i = 0; i < n; ++i) {
    ComplexMatrix e(n, n);
    e(i, i) = GaussianRational(1);
    basis.push_back(std::move(e));
  }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      ComplexMatrix x(n, n);
      x(i, j) = GaussianRational(1);
      x(j, i) = GaussianRational(1);
      basis.push_back(std::move(x));
      ComplexMatrix y(n, n);
      y(i, j) = GaussianRational(Rational(0), Rational(1));
      y(j, i) = GaussianRational(Rational(0), Rational(-1));
      basis.push_back(std::move(y));
    }
  return basis;
}

RatMatrix vectorize(const Qfa::Superoperator& op, const std::vector<ComplexMatrix>& basis) {
  const std::size_t d = basis.size();
  RatMatrix out(d, d);
  for (std::size_t b = 0; b < d; ++b) {
    const RatMatrix column = hermitian_coordinates(apply_superoperator(op, basis[b]));
    for (std::size_t r = 0; r < d; ++r) out(r, b) = column[r];
  }
  return out;
}

}  // namespace

Converted<Gfa> qfa_to_gfa(const Qfa& m) {
  if (!m.report().ok()) throw InvalidModelError("invalid QFA: " + m.report().str());
  const std::size_t n = m.states();
  const auto basis = hermitian_basis(n);
  std::map<char, RatMatrix> transitions;
  for (char symbol : m.alphabet()) transitions.emplace(symbol, vectorize(m.superoperator(symbol), basis));
  RatMatrix accept(1, n * n);
  for (std::size_t i : m.accepting()) accept[i] = Rational(1);
  RatMatrix final = accept * vectorize(m.superoperator(m.end_marker()), basis);
  Gfa g(m.alphabet(), std::move(transitions), hermitian_coordinates(m.initial()), std::move(final));
  return {std::move(g), ConversionCertificate{.source = "qfa", .target = "gfa"}};
}

Converted<Gfa> pfa_to_gfa(const Pfa& p) {
  if (!p.report().ok()) throw InvalidModelError("invalid PFA: " + p.report().str());
  RatMatrix accept(1, p.states());
  for (std::size_t i : p.accepting()) accept[i] = Rational(1);
  std::map<char, RatMatrix> transitions;
  for (char symbol : p.alphabet()) transitions.emplace(symbol, p.transition(symbol));
  Gfa g(p.alphabet(), std::move(transitions), p.initial(), accept * p.transition(p.end_marker()));
  return {std::move(g), ConversionCertificate{.source = "pfa", .target = "gfa"}};
}

Gfa lrva_depth1_gfa(const Lrva& v) {
  if (v.rec().depth() != 1) {
    throw ConversionError("LRVA of depth " + std::to_string(v.rec().depth()) + " is not a GFA; use lrva_to_gfa");
  }
  return Gfa(std::string(1, v.symbol()), {{v.symbol(), v.rec().matrices().front()}}, v.rec().initials().front(),
             v.final());
}

Lrva gfa_to_lrva(const Gfa& g) {
  if (!g.is_unary()) throw ConversionError("GFA over '" + g.alphabet() + "' is not unary");
  const char symbol = g.alphabet().front();
  return Lrva(VectorLinRec({g.initial()}, {g.transition(symbol)}), g.final(), symbol);
}

Converted<Gfa> lrva_to_gfa(const Lrva& v) {
  const std::size_t m = v.rec().dimension();
  const std::size_t k = v.rec().depth();
  RatMatrix step(m * k, m * k);
  for (std::size_t block = 0; block < k; ++block) {
    const RatMatrix& a = v.rec().matrices()[block];
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = 0; j < m; ++j) step(i, block * m + j) = a(i, j);
  }
  for (std::size_t block = 1; block < k; ++block)
    for (std::size_t i = 0; i < m; ++i) step(block * m + i, (block - 1) * m + i) = Rational(1);

  RatMatrix initial(m * k, 1);
  for (std::size_t block = 0; block < k; ++block) {
    const RatMatrix& vi = v.rec().initials()[k - 1 - block];
    for (std::size_t i = 0; i < m; ++i) initial[block * m + i] = vi[i];
  }
  RatMatrix final(1, m * k);
  for (std::size_t j = 0; j < m; ++j) final[(k - 1) * m + j] = v.final()[j];

  Gfa g(std::string(1, v.symbol()), {{v.symbol(), std::move(step)}}, std::move(initial), std::move(final));
  return {std::move(g), ConversionCertificate{.source = "lrva", .target = "gfa"}};
}

std::vector<std::string> sample_words(const std::string& alphabet, std::size_t max_length) {
  std::vector<std::string> words;
  if (alphabet.size() == 1) {
    for (std::size_t n = 0; n <= max_length; ++n) words.emplace_back(n, alphabet.front());
    return words;
  }
  // Exhaustive while the level stays small, then a fixed random sample.
  constexpr std::size_t kLevelCap = 1024;
  std::vector<std::string> level{""};
  std::size_t exhaustive = 0;
  while (true) {
    words.insert(words.end(), level.begin(), level.end());
    if (exhaustive == max_length || level.size() * alphabet.size() > kLevelCap) break;
    std::vector<std::string> next;
    next.reserve(level.size() * alphabet.size());
    for (const auto& w : level)
      for (char c : alphabet) next.push_back(w + c);
    level = std::move(next);
    ++exhaustive;
  }
  std::mt19937 rng(0x5eed);
  std::uniform_int_distribution<std::size_t> pick(0, alphabet.size() - 1);
  for (std::size_t len = exhaustive + 1; len <= max_length; ++len) {
    for (int sample = 0; sample < 4; ++sample) {
      std::string w;
      for (std::size_t i = 0; i < len; ++i) w.push_back(alphabet[pick(rng)]);
      words.push_back(std::move(w));
    }
  }
  return words;
}

bool check_certificate(const ConversionCertificate& cert, const AnyModel& source, const AnyModel& target,
                       std::size_t max_length) {
  if (cert.alpha.sign() <= 0 || cert.gamma.sign() <= 0) return false;
  for (const auto& w : sample_words(model_alphabet(source), max_length)) {
    if (w.size() < cert.valid_from) continue;
    if (evaluate(target, w) != cert.predict(evaluate(source, w), w.size())) return false;
  }
  return true;
}

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};

/// Route to a GFA; the certificate is empty when the source already is one.
std::pair<Gfa, std::optional<ConversionCertificate>> route_to_gfa(const AnyModel& source) {
  auto step = [](Converted<Gfa> c) {
    return std::pair<Gfa, std::optional<ConversionCertificate>>{std::move(c.model), std::move(c.certificate)};
  };
  return std::visit(overloaded{
                        [&](const LinRec& u) { return step(linrec_to_gfa(u)); },
                        [&](const Lra& u) { return step(linrec_to_gfa(u)); },
                        [&](const Lrva& v) { return step(lrva_to_gfa(v)); },
                        [&](const Pfa& p) { return step(pfa_to_gfa(p)); },
                        [&](const Qfa& m) { return step(qfa_to_gfa(m)); },
                        [](const Gfa& g) { return std::pair<Gfa, std::optional<ConversionCertificate>>{g, std::nullopt}; },
                        [](const TreeLinRec&) -> std::pair<Gfa, std::optional<ConversionCertificate>> {
                          throw ConversionError("no conversion from tlrr");
                        },
                    },
                    source);
}

}  // namespace

ConvertedModel convert(const AnyModel& source, std::string_view target, const std::optional<Rational>& shift) {
  const std::string_view kind = model_kind(source);
  if (target == kind && !shift) throw ConversionError("source is already " + std::string(kind));
  if (shift && target != "gfa" && target != "pfa" && target != "int-gfa") {
    throw ConversionError("a cutpoint shift only applies to gfa, int-gfa and pfa targets");
  }
  if (target != "gfa" && target != "lrr" && target != "pfa" && target != "int-gfa" && target != "lrva") {
    throw ConversionError("unknown target '" + std::string(target) + "'");
  }
  if (target == "lrr") {
    if (const auto* u = std::get_if<Lra>(&source)) {
      return {u->rec, {ConversionCertificate{.source = "lra", .target = "lrr"}}, std::nullopt};
    }
  }
  const ValidationReport report = validate(source);
  if (!report.ok()) throw InvalidModelError(std::string(kind) + " is invalid: " + report.str());

  auto [g, first] = route_to_gfa(source);
  ConvertedModel out{g, {}, std::nullopt};
  if (first) out.chain.push_back(std::move(*first));
  if (shift) {
    auto shifted = shift_cutpoint(g, *shift);
    g = std::move(shifted.model);
    out.chain.push_back(std::move(shifted.certificate));
    out.cutpoint = Rational(0);
  }
  if (target == "gfa") {
    out.model = g;
  } else if (target == "lrr") {
    auto c = gfa_to_linrec(g);
    out.model = std::move(c.model);
    out.chain.push_back(std::move(c.certificate));
  } else if (target == "int-gfa") {
    auto c = rationalize_to_integer(g);
    out.model = std::move(c.model);
    out.chain.push_back(std::move(c.certificate));
  } else if (target == "lrva") {
    out.model = gfa_to_lrva(g);
    out.chain.push_back(ConversionCertificate{.source = "gfa", .target = "lrva"});
  } else {
    auto c = gfa_to_pfa(g);
    out.model = std::move(c.model);
    out.cutpoint = c.cutpoint;
    out.chain.push_back(std::move(c.certificate));
  }
  return out;
}

}  // namespace recaut
