#include "recaut/decision.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <set>
#include <stdexcept>
#include <variant>

#include "recaut/conversions.hpp"
#include "recaut/errors.hpp"
#include "recaut/quadratic.hpp"

namespace recaut {

namespace {

constexpr std::size_t kOrbitCap = 4096;
constexpr std::size_t kCrossoverCap = 1'000'000;
constexpr std::size_t kWitnessSafetyCap = 1'000'000;

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};

std::size_t domain_start(const ThresholdQuery& q) { return q.include_empty_word ? 0 : 1; }

char unary_symbol(const AnyModel& target) { return model_alphabet(target).front(); }

bool is_stochastic_target(const AnyModel& target) {
  return std::holds_alternative<Pfa>(target) || std::holds_alternative<Qfa>(target);
}

}  // namespace

std::string_view problem_kind_name(ProblemKind kind) {
  switch (kind) {
    case ProblemKind::Skolem: return "skolem";
    case ProblemKind::Positivity: return "positivity";
    case ProblemKind::StrictPositivity: return "strict-positivity";
    case ProblemKind::Exclusivity: return "exclusivity";
  }
  return "?";
}

ProblemKind parse_problem_kind(std::string_view text) {
  if (text == "skolem") return ProblemKind::Skolem;
  if (text == "positivity") return ProblemKind::Positivity;
  if (text == "strict-positivity" || text == "strict_positivity") return ProblemKind::StrictPositivity;
  if (text == "exclusivity") return ProblemKind::Exclusivity;
  throw InvalidProblemError("unknown problem kind '" + std::string(text) + "'");
}

Relation default_relation(ProblemKind kind) {
  switch (kind) {
    case ProblemKind::Skolem: return Relation::Equal;
    case ProblemKind::Positivity: return Relation::GreaterEqual;
    case ProblemKind::StrictPositivity: return Relation::Greater;
    case ProblemKind::Exclusivity: return Relation::NotEqual;
  }
  return Relation::Equal;
}

bool relation_matches(ProblemKind kind, Relation relation) {
  switch (kind) {
    case ProblemKind::Skolem: return relation == Relation::Equal;
    case ProblemKind::Positivity: return relation == Relation::GreaterEqual || relation == Relation::LessEqual;
    case ProblemKind::StrictPositivity: return relation == Relation::Greater || relation == Relation::Less;
    case ProblemKind::Exclusivity: return relation == Relation::NotEqual;
  }
  return false;
}

Problem Problem::make(ProblemKind kind, AnyModel target, Rational cutpoint, std::optional<Relation> relation,
                      bool include_empty_word) {
  const Relation rel = relation.value_or(default_relation(kind));
  if (!relation_matches(kind, rel)) {
    throw InvalidProblemError("relation " + std::string(relation_symbol(rel)) + " does not belong to the " +
                              std::string(problem_kind_name(kind)) + " problem");
  }
  if (is_stochastic_target(target) && (cutpoint.sign() < 0 || cutpoint > Rational(1))) {
    throw InvalidProblemError("cutpoint " + cutpoint.str() + " outside [0,1] for a " +
                              std::string(model_kind(target)) + " target");
  }
  return Problem{kind, ThresholdQuery{std::move(cutpoint), rel, include_empty_word}, std::move(target)};
}

std::string_view certificate_name(CertificateKind kind) {
  switch (kind) {
    case CertificateKind::BoundedWitness: return "bounded_witness";
    case CertificateKind::ConstantCheck: return "constant_check";
    case CertificateKind::Reachability: return "reachability";
    case CertificateKind::Powerset: return "powerset";
    case CertificateKind::PeriodicOrbit: return "periodic_orbit";
    case CertificateKind::Depth2Analysis: return "depth2_analysis";
  }
  return "?";
}

Verdict Verdict::empty(CertificateKind kind) {
  Verdict v;
  v.status = Status::Decided;
  v.answer = Answer::Empty;
  v.certificate = kind;
  return v;
}

Verdict Verdict::non_empty(std::string witness, CertificateKind kind) {
  Verdict v;
  v.status = Status::Decided;
  v.answer = Answer::NonEmpty;
  v.witness = std::move(witness);
  v.certificate = kind;
  return v;
}

Verdict Verdict::unknown(std::size_t bound, CertificateKind kind) {
  Verdict v;
  v.status = Status::Unknown;
  v.certificate = kind;
  v.searched_bound = bound;
  return v;
}

std::optional<Gfa> unary_gfa(const AnyModel& target) {
  auto from_linrec = [](const LinRec& u, char symbol) {
    LinearForm form = companion_form(u);
    return Gfa(std::string(1, symbol), {{symbol, std::move(form.step)}}, std::move(form.initial),
               std::move(form.final));
  };
  return std::visit(overloaded{
                        [&](const LinRec& u) -> std::optional<Gfa> { return from_linrec(u, 'a'); },
                        [&](const Lra& u) -> std::optional<Gfa> { return from_linrec(u.rec, u.symbol); },
                        [](const TreeLinRec&) -> std::optional<Gfa> { return std::nullopt; },
                        [](const Lrva& v) -> std::optional<Gfa> { return lrva_to_gfa(v).model; },
                        [](const Gfa& g) -> std::optional<Gfa> {
                          if (!g.is_unary()) return std::nullopt;
                          return g;
                        },
                        [](const Pfa& p) -> std::optional<Gfa> {
                          if (!p.is_unary()) return std::nullopt;
                          return pfa_to_gfa(p).model;
                        },
                        [](const Qfa& m) -> std::optional<Gfa> {
                          if (!m.is_unary()) return std::nullopt;
                          return qfa_to_gfa(m).model;
                        },
                    },
                    target);
}

std::optional<LinRec> unary_linrec(const AnyModel& target) {
  if (const auto* u = std::get_if<LinRec>(&target)) return *u;
  if (const auto* u = std::get_if<Lra>(&target)) return u->rec;
  auto g = unary_gfa(target);
  if (!g) return std::nullopt;
  return gfa_to_linrec(*g).model;
}

Verdict bounded_search(const Problem& problem, std::size_t bound) {
  const auto& q = problem.query;
  const std::size_t start = domain_start(q);
  if (auto g = unary_gfa(problem.target)) {
    const char symbol = g->alphabet().front();
    const RatMatrix& step = g->transition(symbol);
    RatMatrix state = g->initial();
    for (std::size_t n = 0; n <= bound; ++n) {
      if (n > 0) state = step * state;
      if (n >= start && relation_holds((g->final() * state)(0, 0), q.relation, q.cutpoint)) {
        return Verdict::non_empty(std::string(n, symbol), CertificateKind::BoundedWitness);
      }
    }
    return Verdict::unknown(bound);
  }
  const std::string alphabet = model_alphabet(problem.target);
  std::deque<std::string> queue{""};
  std::size_t examined = 0;
  while (!queue.empty() && examined < bound) {
    std::string w = std::move(queue.front());
    queue.pop_front();
    if (w.size() >= start) {
      ++examined;
      if (relation_holds(evaluate(problem.target, w), q.relation, q.cutpoint)) {
        return Verdict::non_empty(std::move(w), CertificateKind::BoundedWitness);
      }
    }
    for (char c : alphabet) queue.push_back(w + c);
  }
  return Verdict::unknown(bound);
}

Verdict decide_exclusivity(const Problem& problem) {
  if (problem.kind != ProblemKind::Exclusivity) throw InvalidProblemError("not an exclusivity problem");
  const auto u = unary_linrec(problem.target);
  if (!u) throw ConversionError("exclusivity decider needs a unary target");
  const LinRec shifted = lr_combine(CombineKind::Sum, *u, lr_constant(-problem.query.cutpoint));
  const std::size_t start = domain_start(problem.query);
  const auto terms = lr_terms(shifted, start + shifted.depth());
  for (std::size_t n = start; n < terms.size(); ++n) {
    if (!terms[n].is_zero()) {
      return Verdict::non_empty(std::string(n, unary_symbol(problem.target)), CertificateKind::ConstantCheck);
    }
  }
  return Verdict::empty(CertificateKind::ConstantCheck);
}

namespace {

using Support = std::vector<bool>;

struct SupportGraph {
  // successors[symbol][i] = states j with A_symbol(j, i) > 0
  std::map<char, std::vector<std::vector<std::size_t>>> successors;

  explicit SupportGraph(const Pfa& p) {
    const std::size_t n = p.states();
    for (const auto& [symbol, a] : p.transitions()) {
      auto& table = successors[symbol];
      table.resize(n);
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
          if (a(j, i).sign() > 0) table[i].push_back(j);
    }
  }

  Support post(const Support& s, char symbol) const {
    Support out(s.size(), false);
    const auto& table = successors.at(symbol);
    for (std::size_t i = 0; i < s.size(); ++i)
      if (s[i])
        for (std::size_t j : table[i]) out[j] = true;
    return out;
  }
};

Support initial_support(const Pfa& p) {
  Support s(p.states(), false);
  for (std::size_t i = 0; i < p.states(); ++i) s[i] = p.initial()[i].sign() > 0;
  return s;
}

void require_valid(const Pfa& p) {
  if (!p.report().ok()) throw InvalidModelError("invalid PFA: " + p.report().str());
}

}  // namespace

Verdict decide_pfa_cutpoint(const Pfa& p, const ThresholdQuery& query) {
  require_valid(p);
  if (query.cutpoint != Rational(0) && query.cutpoint != Rational(1)) {
    throw InvalidProblemError("support-based PFA decision needs cutpoint 0 or 1, got " + query.cutpoint.str());
  }
  const SupportGraph graph(p);
  Support accepting(p.states(), false);
  for (std::size_t i : p.accepting()) accepting[i] = true;

  // Any value strictly between 0 and 1 relates to the cutpoint like 1/2.
  auto representative = [&](const Support& after_end) {
    bool hits = false;
    bool inside = true;
    for (std::size_t i = 0; i < after_end.size(); ++i) {
      if (!after_end[i]) continue;
      if (accepting[i]) hits = true;
      else inside = false;
    }
    if (!hits) return Rational(0);
    return inside ? Rational(1) : Rational(1, 2);
  };

  std::deque<std::pair<Support, std::string>> queue;
  std::set<Support> seen;
  const Support start = initial_support(p);
  if (query.include_empty_word) {
    queue.emplace_back(start, "");
    seen.insert(start);
  } else {
    for (char c : p.alphabet()) {
      Support next = graph.post(start, c);
      if (seen.insert(next).second) queue.emplace_back(std::move(next), std::string(1, c));
    }
  }
  while (!queue.empty()) {
    auto [support, word] = std::move(queue.front());
    queue.pop_front();
    if (relation_holds(representative(graph.post(support, p.end_marker())), query.relation, query.cutpoint)) {
      return Verdict::non_empty(std::move(word), CertificateKind::Powerset);
    }
    for (char c : p.alphabet()) {
      Support next = graph.post(support, c);
      if (seen.insert(next).second) queue.emplace_back(std::move(next), word + c);
    }
  }
  return Verdict::empty(CertificateKind::Powerset);
}

Verdict decide_pfa_boundary(const Pfa& p, PfaBoundary which, bool include_empty_word) {
  switch (which) {
    case PfaBoundary::Eq0: return decide_pfa_cutpoint(p, {Rational(0), Relation::Equal, include_empty_word});
    case PfaBoundary::Eq1: return decide_pfa_cutpoint(p, {Rational(1), Relation::Equal, include_empty_word});
    case PfaBoundary::Lt1: return decide_pfa_cutpoint(p, {Rational(1), Relation::Less, include_empty_word});
    case PfaBoundary::Gt0: break;
  }
  require_valid(p);
  const SupportGraph graph(p);
  const std::size_t n = p.states();
  std::vector<bool> good(n, false);
  const auto& end_step = graph.successors.at(p.end_marker());
  for (std::size_t q = 0; q < n; ++q)
    for (std::size_t j : end_step[q])
      if (std::binary_search(p.accepting().begin(), p.accepting().end(), j)) good[q] = true;

  std::deque<std::pair<std::size_t, std::string>> queue;
  std::vector<bool> seen(n, false);
  const Support start = initial_support(p);
  for (std::size_t q = 0; q < n; ++q) {
    if (!start[q]) continue;
    if (include_empty_word) {
      if (!seen[q]) queue.emplace_back(q, "");
      seen[q] = true;
      continue;
    }
    for (char c : p.alphabet())
      for (std::size_t j : graph.successors.at(c)[q]) {
        if (!seen[j]) queue.emplace_back(j, std::string(1, c));
        seen[j] = true;
      }
  }
  // With the empty word excluded the first frontier holds length-1 words
  // only; stable BFS order still yields a shortest witness.
  if (!include_empty_word) {
    std::stable_sort(queue.begin(), queue.end(), [](const auto& x, const auto& y) { return x.second < y.second; });
  }
  while (!queue.empty()) {
    auto [q, word] = std::move(queue.front());
    queue.pop_front();
    if (good[q]) return Verdict::non_empty(std::move(word), CertificateKind::Reachability);
    for (char c : p.alphabet())
      for (std::size_t j : graph.successors.at(c)[q]) {
        if (seen[j]) continue;
        seen[j] = true;
        queue.emplace_back(j, word + c);
      }
  }
  return Verdict::empty(CertificateKind::Reachability);
}

std::optional<PeriodicOrbit> detect_periodic_orbit(const Gfa& g, std::size_t cap) {
  if (!g.is_unary()) throw ConversionError("periodic-orbit detection needs a unary GFA");
  const RatMatrix& step = g.transition(g.alphabet().front());
  std::map<std::vector<Rational>, std::size_t> seen;
  PeriodicOrbit orbit;
  RatMatrix state = g.initial();
  for (std::size_t n = 0; n <= cap; ++n) {
    if (n > 0) state = step * state;
    std::vector<Rational> key(state.entries().begin(), state.entries().end());
    const Rational value = (g.final() * state)(0, 0);
    auto [it, inserted] = seen.emplace(std::move(key), n);
    if (!inserted) {
      orbit.preperiod = it->second;
      orbit.period = n - it->second;
      orbit.values.push_back(value);
      return orbit;
    }
    orbit.values.push_back(value);
  }
  return std::nullopt;
}

Verdict decide_on_orbit(const PeriodicOrbit& orbit, const ThresholdQuery& query, char symbol) {
  const std::size_t start = domain_start(query);
  const std::size_t p = orbit.preperiod;
  const std::size_t q = orbit.period;
  auto value = [&](std::size_t n) -> const Rational& {
    return n < orbit.values.size() ? orbit.values[n] : orbit.values[p + (n - p) % q];
  };
  for (std::size_t n = start; n < start + p + q; ++n) {
    if (relation_holds(value(n), query.relation, query.cutpoint)) {
      return Verdict::non_empty(std::string(n, symbol), CertificateKind::PeriodicOrbit);
    }
  }
  return Verdict::empty(CertificateKind::PeriodicOrbit);
}

namespace {

/// sign(w_{n + period}) = sign(w_n) for every n >= start.
struct SignSchedule {
  std::size_t start;
  std::size_t period;
};
/// Both signs recur forever.
struct Oscillating {};
/// Every value has this sign or is zero, and zero occurs at most once.
struct Touching {
  int sign;
};
struct CrossoverTooLarge {};

using SignAnalysis = std::variant<SignSchedule, Oscillating, Touching, CrossoverTooLarge>;

std::size_t geometric_period(int sign) { return sign > 0 ? 1 : 2; }

bool is_scalar(const RatMatrix& m) {
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) {
      if (i != j && !m(i, j).is_zero()) return false;
      if (i == j && m(i, i) != m(0, 0)) return false;
    }
  return true;
}

/// A^p = mu I for some p in {2, 3, 4, 6}: the root ratio is a root of unity.
std::optional<std::pair<std::size_t, Rational>> scalar_power(const LinRec& w) {
  const RatMatrix a = companion_matrix(w);
  RatMatrix power = a;
  for (std::size_t p = 2; p <= 6; ++p) {
    power = power * a;
    if (p != 5 && is_scalar(power)) return std::pair{p, power(0, 0)};
  }
  return std::nullopt;
}

/// w = s + kappa with s of depth <= 2. A minimal depth-3 recurrence splits
/// this way when 1 is a simple root of its characteristic polynomial.
struct ConstantSplit {
  LinRec s;
  Rational kappa;
};

std::optional<ConstantSplit> split_constant(const LinRec& w) {
  if (w.depth() <= 2) return ConstantSplit{w, Rational(0)};
  if (w.depth() != 3) return std::nullopt;
  const auto& c = w.coeffs();
  const Rational one(1);
  if (!(one - c[0] - c[1] - c[2]).is_zero()) return std::nullopt;
  // x^3 - c1 x^2 - c2 x - c3 = (x - 1)(x^2 - b1 x - b2)
  const Rational b1 = c[0] - one;
  const Rational b2 = c[0] + c[1] - one;
  const Rational q1 = one - b1 - b2;
  if (q1.is_zero()) return std::nullopt;
  const auto& v = w.initials();
  const Rational kappa = (v[2] - b1 * v[1] - b2 * v[0]) / q1;
  return ConstantSplit{lr_minimize(LinRec({v[0] - kappa, v[1] - kappa}, {b1, b2})), kappa};
}

// ---- zero threshold ----

SignAnalysis analyse_depth1(const LinRec& w) {
  const Rational& a = w.coeffs()[0];
  if (w.initials()[0].is_zero() || a.is_zero()) return SignSchedule{1, 1};
  return SignSchedule{0, geometric_period(a.sign())};
}

SignAnalysis analyse_depth2(const LinRec& w) {
  const Rational& a1 = w.coeffs()[0];
  const Rational& a2 = w.coeffs()[1];
  const Rational& u0 = w.initials()[0];
  const Rational& u1 = w.initials()[1];

  if (a2.is_zero()) {
    // Geometric from n = 1 on: u_n = u_1 a_1^{n-1}.
    if (a1.is_zero()) return SignSchedule{2, 1};
    return SignSchedule{1, geometric_period(a1.sign())};
  }
  if (u0.is_zero() && u1.is_zero()) return SignSchedule{0, 1};

  if (const auto scalar = scalar_power(w)) {
    return SignSchedule{0, scalar->first * geometric_period(scalar->second.sign())};
  }

  const Rational disc = a1 * a1 + Rational(4) * a2;
  if (disc.sign() < 0) return Oscillating{};

  if (disc.is_zero()) {
    // u_n = (A + B n) r^n with the double root r = a_1 / 2.
    const Rational r = a1 / Rational(2);
    const Rational b = u1 / r - u0;
    const std::size_t period = geometric_period(r.sign());
    if (b.is_zero()) return SignSchedule{0, period};
    const Integer cross = (-u0 / b).floor() + 1;
    const std::size_t start = cross <= 0 ? 0 : static_cast<std::size_t>(cross.get_ui());
    if (cross > static_cast<unsigned long>(kCrossoverCap)) return CrossoverTooLarge{};
    return SignSchedule{start, period};
  }

  // Distinct real roots r± = (a_1 ± sqrt(disc)) / 2, u_n = c+ r+^n + c- r-^n.
  const QuadraticNumber root_disc = QuadraticNumber::sqrt_of(disc);
  const QuadraticNumber half(Rational(1, 2));
  const QuadraticNumber r_plus = (QuadraticNumber(a1) + root_disc) * half;
  const QuadraticNumber r_minus = (QuadraticNumber(a1) - root_disc) * half;
  const QuadraticNumber c_plus = (QuadraticNumber(u1) - r_minus * QuadraticNumber(u0)) / root_disc;
  const QuadraticNumber c_minus = (r_plus * QuadraticNumber(u0) - QuadraticNumber(u1)) / root_disc;

  // a_1 = 0 gives equal moduli and was caught by the periodicity test.
  const bool plus_dominates = a1.sign() > 0;
  const QuadraticNumber& r_dom = plus_dominates ? r_plus : r_minus;
  const QuadraticNumber& r_sub = plus_dominates ? r_minus : r_plus;
  const QuadraticNumber& c_dom = plus_dominates ? c_plus : c_minus;
  const QuadraticNumber& c_sub = plus_dominates ? c_minus : c_plus;

  if (c_dom.is_zero()) return SignSchedule{0, geometric_period(r_sub.sign())};
  const std::size_t period = geometric_period(r_dom.sign());
  if (c_sub.is_zero()) return SignSchedule{0, period};

  // For n >= start: |c_sub r_sub^n| < |c_dom r_dom^n|, so the dominant term fixes the sign.
  const QuadraticNumber ratio = (r_sub / r_dom).abs();
  const QuadraticNumber weight = (c_sub / c_dom).abs();
  unsigned bits = 32;
  Rational ratio_hi = ratio.bounds(bits).second;
  while (ratio_hi >= Rational(1)) {
    bits *= 2;
    ratio_hi = ratio.bounds(bits).second;
  }
  Rational product = weight.bounds(bits).second;
  std::size_t start = 0;
  while (product >= Rational(1)) {
    product *= ratio_hi;
    if (++start > kCrossoverCap) return CrossoverTooLarge{};
  }
  return SignSchedule{start, period};
}

// ---- nonzero threshold: w = s + kappa ----

/// s_k = s0 a^k. The schedule is in terms of k.
SignAnalysis geometric_shifted(const Rational& s0, const Rational& a, const Rational& kappa) {
  if (s0.is_zero()) return SignSchedule{0, 1};
  if (a.is_zero()) return SignSchedule{1, 1};
  const Rational modulus = a.abs();
  const int against_one = (modulus - Rational(1)).sign();
  if (against_one == 0) return SignSchedule{0, geometric_period(a.sign())};
  // |s_k| is strictly monotone, so the first k past |kappa| settles the sign.
  const Rational bound = kappa.abs();
  Rational value = s0.abs();
  for (std::size_t k = 0; k <= kCrossoverCap; ++k) {
    if (against_one < 0 ? value < bound : value > bound) {
      return SignSchedule{k, against_one < 0 ? 1 : geometric_period(a.sign())};
    }
    value *= modulus;
  }
  return CrossoverTooLarge{};
}

/// Tightens enclosures until `ok` accepts them.
template <typename Accept>
unsigned refine_bits(Accept ok) {
  unsigned bits = 32;
  while (!ok(bits)) bits *= 2;
  return bits;
}

SignAnalysis analyse_shifted(const LinRec& s, const Rational& kappa) {
  const Rational kappa_abs = kappa.abs();
  if (s.depth() == 1) return geometric_shifted(s.initials()[0], s.coeffs()[0], kappa);

  const Rational& a1 = s.coeffs()[0];
  const Rational& a2 = s.coeffs()[1];
  const Rational& s0 = s.initials()[0];
  const Rational& s1 = s.initials()[1];
  if (s0.is_zero() && s1.is_zero()) return SignSchedule{0, 1};

  if (a2.is_zero()) {
    SignAnalysis tail = geometric_shifted(s1, a1, kappa);
    if (auto* schedule = std::get_if<SignSchedule>(&tail)) ++schedule->start;
    return tail;
  }

  if (const auto scalar = scalar_power(s)) {
    // Each residue class mod p is geometric with ratio mu.
    const auto& [p, mu] = *scalar;
    const auto head = lr_terms(s, p);
    std::size_t start = 0;
    for (std::size_t j = 0; j < p; ++j) {
      const SignAnalysis part = geometric_shifted(head[j], mu, kappa);
      const auto* schedule = std::get_if<SignSchedule>(&part);
      if (!schedule) return part;
      start = std::max(start, j + p * schedule->start);
    }
    return SignSchedule{start, p * geometric_period(mu.sign())};
  }

  const Rational disc = a1 * a1 + Rational(4) * a2;
  const Rational one(1);

  if (disc.sign() < 0) {
    // s_n = 2 Re(c r^n) with |r|^2 = -a_2 and |c|^2 below; the angle is not
    // a rational multiple of pi, so cos(n theta + phi) is dense in [-1, 1].
    const Rational m = -a2;
    const Rational c_sq = (s1 * s1 - a1 * s0 * s1 - a2 * s0 * s0) / (-disc);
    const Rational amplitude_sq = Rational(4) * c_sq;
    const Rational kappa_sq = kappa * kappa;
    const int growth = (m - one).sign();
    if (growth > 0) return Oscillating{};
    if (growth == 0) {
      const int cmp = (amplitude_sq - kappa_sq).sign();
      if (cmp < 0) return SignSchedule{0, 1};
      if (cmp > 0) return Oscillating{};
      return Touching{kappa.sign()};
    }
    Rational bound = amplitude_sq;
    for (std::size_t n = 0; n <= kCrossoverCap; ++n) {
      if (bound < kappa_sq) return SignSchedule{n, 1};
      bound *= m;
    }
    return CrossoverTooLarge{};
  }

  if (disc.is_zero()) {
    // s_n = (A + B n) r^n; B != 0 because s is minimal.
    const Rational r = a1 / Rational(2);
    const Rational a = s0;
    const Rational b = s1 / r - s0;
    const Rational r_abs = r.abs();
    if (r_abs >= one) {
      // Past -A/B the factor |A + B n| grows strictly and |r|^n does not shrink.
      const Integer cross = (-a / b).floor() + 1;
      if (cross > static_cast<unsigned long>(kCrossoverCap)) return CrossoverTooLarge{};
      std::size_t n = cross <= 0 ? 0 : static_cast<std::size_t>(cross.get_ui());
      Rational power = pow(r_abs, static_cast<unsigned long>(n));
      for (; n <= kCrossoverCap; ++n) {
        if ((a + b * Rational(static_cast<long>(n))).abs() * power > kappa_abs) {
          return SignSchedule{n, geometric_period(r.sign())};
        }
        power *= r_abs;
      }
      return CrossoverTooLarge{};
    }
    // g(n) = (|A| + |B| n) |r|^n bounds |s_n|; g(n+1)/g(n) decreases in n.
    auto g = [&](std::size_t n) {
      return (a.abs() + b.abs() * Rational(static_cast<long>(n))) * pow(r_abs, static_cast<unsigned long>(n));
    };
    for (std::size_t n = 0; n <= kCrossoverCap; ++n) {
      const Rational here = g(n);
      if (here < kappa_abs && g(n + 1) <= here) return SignSchedule{n, 1};
    }
    return CrossoverTooLarge{};
  }

  const QuadraticNumber root_disc = QuadraticNumber::sqrt_of(disc);
  const QuadraticNumber half(Rational(1, 2));
  const QuadraticNumber r_plus = (QuadraticNumber(a1) + root_disc) * half;
  const QuadraticNumber r_minus = (QuadraticNumber(a1) - root_disc) * half;
  const QuadraticNumber c_plus = (QuadraticNumber(s1) - r_minus * QuadraticNumber(s0)) / root_disc;
  const QuadraticNumber c_minus = (r_plus * QuadraticNumber(s0) - QuadraticNumber(s1)) / root_disc;
  const bool plus_dominates = a1.sign() > 0;
  const QuadraticNumber& r_dom = plus_dominates ? r_plus : r_minus;
  const QuadraticNumber& r_sub = plus_dominates ? r_minus : r_plus;
  const QuadraticNumber c_dom = (plus_dominates ? c_plus : c_minus).abs();
  const QuadraticNumber c_sub = (plus_dominates ? c_minus : c_plus).abs();
  if (c_dom.is_zero() || c_sub.is_zero()) throw std::logic_error("depth-2 solver: recurrence is not minimal");
  const QuadraticNumber rho = r_dom.abs();
  const QuadraticNumber sub = r_sub.abs();
  const int growth = (rho - QuadraticNumber(one)).sign();

  if (growth == 0) {
    // r_dom = ±1, so both roots and weights are rational.
    const Rational rd = r_dom.rational_part();
    const Rational rs = r_sub.rational_part();
    const Rational cd = (plus_dominates ? c_plus : c_minus).rational_part();
    const Rational cs_abs = c_sub.rational_part();
    std::optional<Rational> gap;
    for (const Rational& level : {cd + kappa, cd * rd + kappa}) {
      if (!level.is_zero() && (!gap || level.abs() < *gap)) gap = level.abs();
    }
    // Per parity the sign is that of cd rd^n + kappa, or of cs rs^n where that vanishes.
    if (!gap) return SignSchedule{0, 2};
    Rational tail = cs_abs;
    const Rational rs_abs = rs.abs();
    for (std::size_t n = 0; n <= kCrossoverCap; ++n) {
      if (tail < *gap) return SignSchedule{n, 2};
      tail *= rs_abs;
    }
    return CrossoverTooLarge{};
  }

  if (growth > 0) {
    // For n >= start: |c_sub r_sub^n| + |kappa| < |c_dom r_dom^n|.
    const unsigned bits = refine_bits([&](unsigned b) {
      const Rational lo = rho.bounds(b).first;
      return lo > one && sub.bounds(b).second < lo && c_dom.bounds(b).first.sign() > 0;
    });
    const Rational rho_lo = rho.bounds(bits).first;
    const Rational sub_hi = sub.bounds(bits).second;
    Rational dom_term = c_dom.bounds(bits).first;
    Rational sub_term = c_sub.bounds(bits).second;
    const Rational two(2);
    for (std::size_t n = 0; n <= kCrossoverCap; ++n) {
      if (two * sub_term <= dom_term && two * kappa_abs < dom_term) {
        return SignSchedule{n, geometric_period(r_dom.sign())};
      }
      dom_term *= rho_lo;
      sub_term *= sub_hi;
    }
    return CrossoverTooLarge{};
  }

  // Both roots inside the unit disc: s_n -> 0 and kappa fixes the sign.
  const unsigned bits = refine_bits([&](unsigned b) { return rho.bounds(b).second < one; });
  const Rational rho_hi = rho.bounds(bits).second;
  const Rational sub_hi = sub.bounds(bits).second;
  Rational dom_term = c_dom.bounds(bits).second;
  Rational sub_term = c_sub.bounds(bits).second;
  for (std::size_t n = 0; n <= kCrossoverCap; ++n) {
    if (dom_term + sub_term < kappa_abs) return SignSchedule{n, 1};
    dom_term *= rho_hi;
    sub_term *= sub_hi;
  }
  return CrossoverTooLarge{};
}

/// First n in [first, limit] with member(w_n).
template <typename Member>
std::optional<std::size_t> scan(const LinRec& w, std::size_t first, std::size_t limit, Member member) {
  const std::size_t k = w.depth();
  std::deque<Rational> window(w.initials().begin(), w.initials().end());
  for (std::size_t n = 0; n <= limit; ++n) {
    if (n >= k) {
      Rational next;
      for (std::size_t i = 0; i < k; ++i) next += w.coeffs()[i] * window[k - 1 - i];
      window.pop_front();
      window.push_back(std::move(next));
    }
    const Rational& value = n < k ? window[n] : window.back();
    if (n >= first && member(value)) return n;
  }
  return std::nullopt;
}

}  // namespace

Verdict decide_depth2(const LinRec& u, const ThresholdQuery& query, char symbol, std::size_t skolem_search_bound) {
  const LinRec shifted =
      query.cutpoint.is_zero() ? u : lr_combine(CombineKind::Sum, u, lr_constant(-query.cutpoint));
  const LinRec w = lr_minimize(shifted);
  const auto split = split_constant(w);
  if (!split) {
    throw InvalidProblemError("depth-2 solver: u - cutpoint has minimal depth " + std::to_string(w.depth()) +
                              " and is not a depth-2 sequence plus a constant");
  }
  const std::size_t first = domain_start(query);
  const Rational zero;
  auto member = [&](const Rational& value) { return relation_holds(value, query.relation, zero); };
  auto witness = [&](std::size_t n) { return Verdict::non_empty(std::string(n, symbol), CertificateKind::Depth2Analysis); };

  const SignAnalysis analysis = !split->kappa.is_zero() ? analyse_shifted(split->s, split->kappa)
                                : w.depth() == 1       ? analyse_depth1(w)
                                                       : analyse_depth2(w);

  if (const auto* schedule = std::get_if<SignSchedule>(&analysis)) {
    const std::size_t last = std::max(first, schedule->start) + schedule->period;
    if (const auto n = scan(w, first, last - 1, member)) return witness(*n);
    return Verdict::empty(CertificateKind::Depth2Analysis);
  }
  if (std::holds_alternative<CrossoverTooLarge>(analysis)) {
    return Verdict::unknown(0, CertificateKind::Depth2Analysis);
  }

  bool guaranteed = query.relation != Relation::Equal;
  if (const auto* touching = std::get_if<Touching>(&analysis)) {
    guaranteed = member(Rational(touching->sign));
    if (!guaranteed && !member(zero)) return Verdict::empty(CertificateKind::Depth2Analysis);
  }
  // Oscillating or touching: signed witnesses are guaranteed, zeros are not.
  const std::size_t limit = guaranteed ? kWitnessSafetyCap : skolem_search_bound;
  if (const auto n = scan(w, first, limit, member)) return witness(*n);
  if (!guaranteed) return Verdict::unknown(skolem_search_bound, CertificateKind::Depth2Analysis);
  throw std::logic_error("depth-2 solver: no witness within the safety cap for an oscillating sequence");
}

Verdict decide(const Problem& problem, std::size_t budget) {
  const ValidationReport report = validate(problem.target);
  if (!report.ok()) throw InvalidModelError(std::string(model_kind(problem.target)) + " is invalid: " + report.str());
  if (!relation_matches(problem.kind, problem.query.relation)) {
    throw InvalidProblemError("relation does not belong to the problem kind");
  }

  const auto unary = unary_gfa(problem.target);
  if (problem.kind == ProblemKind::Exclusivity && unary) return decide_exclusivity(problem);

  if (const auto* pfa = std::get_if<Pfa>(&problem.target)) {
    const Rational& lambda = problem.query.cutpoint;
    if (lambda == Rational(0) || lambda == Rational(1)) return decide_pfa_cutpoint(*pfa, problem.query);
  }

  std::size_t searched = 0;
  if (unary) {
    const char symbol = unary->alphabet().front();
    if (auto orbit = detect_periodic_orbit(*unary, std::min(budget, kOrbitCap))) {
      return decide_on_orbit(*orbit, problem.query, symbol);
    }
    const LinRec u = *unary_linrec(problem.target);
    const LinRec shifted = lr_minimize(lr_combine(CombineKind::Sum, u, lr_constant(-problem.query.cutpoint)));
    if (split_constant(shifted)) {
      ThresholdQuery at_zero = problem.query;
      at_zero.cutpoint = Rational(0);
      Verdict v = decide_depth2(shifted, at_zero, symbol, budget);
      if (v.decided()) return v;
      searched = v.searched_bound;
    }
  }
  Verdict v = bounded_search(problem, budget);
  if (!v.decided()) v.searched_bound = std::max(v.searched_bound, searched);
  return v;
}

bool check_verdict(const Problem& problem, const Verdict& verdict, std::size_t recheck_bound) {
  if (!verdict.decided()) return !verdict.answer.has_value();
  if (verdict.is_non_empty()) {
    return verdict.witness && classify(problem.target, problem.query, *verdict.witness).member;
  }
  return !bounded_search(problem, recheck_bound).decided();
}

}  // namespace recaut
