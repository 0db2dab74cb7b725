// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any fails.
// Usage: acceptance [path-to-recaut-cli]

#include <array>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <sys/wait.h>
#include <unistd.h>

#include "../support.hpp"
#include "recaut/conversions.hpp"
#include "recaut/decision.hpp"
#include "recaut/errors.hpp"
#include "recaut/model_io.hpp"

using namespace recaut;
namespace fs = std::filesystem;
using testing::Rng;
using testing::uniform;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;

  void fail(const std::string& why) {
    if (pass) detail = why;
    pass = false;
  }
};

std::string a(std::size_t n) { return std::string(n, 'a'); }

/// f(a^0), ..., f(a^max) for a unary GFA by iterating the state vector.
std::vector<Rational> unary_values(const Gfa& g, std::size_t max) {
  std::vector<Rational> out;
  RatMatrix state = g.initial();
  const RatMatrix& step = g.transition(g.alphabet().front());
  for (std::size_t n = 0; n <= max; ++n) {
    if (n > 0) state = step * state;
    out.push_back((g.final() * state)(0, 0));
  }
  return out;
}

std::vector<Rational> unary_pfa_values(const Pfa& p, std::size_t max) {
  std::vector<Rational> out;
  RatMatrix state = p.initial();
  const RatMatrix& step = p.transition(p.alphabet().front());
  const RatMatrix& end = p.transition(p.end_marker());
  for (std::size_t n = 0; n <= max; ++n) {
    if (n > 0) state = step * state;
    const RatMatrix final_state = end * state;
    Rational value;
    for (std::size_t q : p.accepting()) value += final_state[q];
    out.push_back(value);
  }
  return out;
}

Outcome linrec_forward() {
  Rng rng(101);
  Outcome o;
  for (int trial = 0; trial < 100; ++trial) {
    const LinRec u = testing::random_linrec(rng, 5, 3);
    const Gfa g = linrec_to_gfa(u).model;
    const auto terms = lr_terms(u, 41);
    for (std::size_t n = 1; n <= 40; ++n)
      if (gfa_eval(g, a(n)) != terms[n]) o.fail("mismatch at trial " + std::to_string(trial) + ", n=" + std::to_string(n));
  }
  o.detail = o.pass ? "100 recurrences, 1<=n<=40" : o.detail;
  return o;
}

Outcome linrec_backward() {
  Rng rng(102);
  Outcome o;
  for (int trial = 0; trial < 100; ++trial) {
    const Gfa g = testing::random_gfa(rng, static_cast<std::size_t>(uniform(rng, 1, 4)));
    const auto terms = lr_terms(gfa_to_linrec(g).model, 41);
    for (std::size_t n = 0; n <= 40; ++n)
      if (gfa_eval(g, a(n)) != terms[n]) o.fail("mismatch at trial " + std::to_string(trial) + ", n=" + std::to_string(n));
  }
  o.detail = o.pass ? "100 unary GFAs, 0<=n<=40" : o.detail;
  return o;
}

bool cayley_hamilton(const RatMatrix& m) {
  const auto p = char_poly(m);
  RatMatrix acc(m.rows(), m.cols());
  for (const auto& c : p) acc = acc * m + RatMatrix::identity(m.rows()) * c;
  return acc == RatMatrix(m.rows(), m.cols());
}

Outcome closures() {
  Rng rng(103);
  Outcome o;
  std::size_t companions = 0;
  for (int trial = 0; trial < 100; ++trial) {
    const LinRec u = testing::random_linrec(rng, 3, 3), v = testing::random_linrec(rng, 3, 3);
    const auto tu = lr_terms(u, 41), tv = lr_terms(v, 41);
    const auto sum = lr_terms(lr_combine(CombineKind::Sum, u, v), 41);
    const auto product = lr_terms(lr_combine(CombineKind::Product, u, v), 41);
    for (std::size_t n = 0; n <= 40; ++n) {
      if (sum[n] != tu[n] + tv[n]) o.fail("sum mismatch, trial " + std::to_string(trial));
      if (product[n] != tu[n] * tv[n]) o.fail("product mismatch, trial " + std::to_string(trial));
    }
    const LinRec w = testing::random_linrec(rng, 5, 3);
    for (const LinRec* x : {&u, &v, &w}) {
      ++companions;
      if (!cayley_hamilton(companion_matrix(*x))) o.fail("Cayley-Hamilton fails, trial " + std::to_string(trial));
    }
  }
  if (o.pass) o.detail = "100 pairs, n<=40; " + std::to_string(companions) + " companion matrices up to 5x5";
  return o;
}

Outcome reductions() {
  Rng rng(104);
  Outcome o;
  for (int trial = 0; trial < 100; ++trial) {
    const LinRec u = testing::random_linrec(rng, 3, 3);
    const auto tu = lr_terms(u, 201);
    const auto ta = lr_terms(lr_reduce(Reduction::SkolemToStrictPositivity, u), 201);
    const auto tb = lr_terms(lr_reduce(Reduction::SkolemToPositivity, u), 201);
    const auto tc = lr_terms(lr_reduce(Reduction::StrictPositivityToPositivity, u), 201);
    for (std::size_t n = 0; n <= 200; ++n) {
      if ((ta[n].sign() > 0) != tu[n].is_zero()) o.fail("skolem->strict, trial " + std::to_string(trial));
      if ((tb[n].sign() >= 0) != tu[n].is_zero()) o.fail("skolem->positivity, trial " + std::to_string(trial));
      if ((tc[n].sign() > 0) != (tu[n].sign() >= 0)) o.fail("strict->positivity, trial " + std::to_string(trial));
    }
  }
  if (o.pass) o.detail = "100 recurrences x 3 kinds, n<=200";
  return o;
}

Outcome mod_k() {
  Outcome o;
  for (std::size_t k = 1; k <= 8; ++k) {
    std::vector<Rational> initials(k), coeffs(k);
    initials[0] = 1;
    coeffs[k - 1] = 1;
    const AnyModel model = Lra{LinRec(initials, coeffs)};
    const std::array<ThresholdQuery, 4> queries{{{Rational(1), Relation::Equal},
                                                 {Rational(1), Relation::GreaterEqual},
                                                 {Rational(0), Relation::Greater},
                                                 {Rational(0), Relation::NotEqual}}};
    for (std::size_t n = 0; n <= 100; ++n) {
      for (const auto& q : queries) {
        if (classify(model, q, a(n)).member != (n % k == 0)) {
          o.fail("k=" + std::to_string(k) + ", n=" + std::to_string(n) + ", relation " + std::string(relation_symbol(q.relation)));
        }
      }
    }
  }
  if (o.pass) o.detail = "k<=8, n<=100, four languages equal {a^n : k | n}";
  return o;
}

Outcome gfa_to_pfa_check() {
  Rng rng(106);
  Outcome o;
  std::size_t largest = 0;
  for (int trial = 0; trial < 50; ++trial) {
    const Gfa g = testing::random_gfa(rng, 3);
    const PfaConversion p = gfa_to_pfa(g);
    if (!validate(p.model).ok()) o.fail("invalid PFA, trial " + std::to_string(trial));
    const std::size_t n_p = p.model.states();
    largest = std::max(largest, n_p);
    if (n_p > g.states() + 4) o.fail("too many states");
    if (p.cutpoint != Rational(static_cast<long>(p.model.accepting().size()), static_cast<long>(n_p))) {
      o.fail("cutpoint not |Q_a|/n_P, trial " + std::to_string(trial));
    }
    const auto gv = unary_values(g, 30);
    const auto pv = unary_pfa_values(p.model, 30);
    for (std::size_t n = 0; n <= 30; ++n)
      if ((pv[n] - p.cutpoint).sign() != gv[n].sign()) o.fail("sign mismatch, trial " + std::to_string(trial));
  }
  // Two-letter machines on the sampled word set as extra evidence.
  for (int trial = 0; trial < 10; ++trial) {
    const Gfa g = testing::random_gfa(rng, 3, "ab");
    const PfaConversion p = gfa_to_pfa(g);
    for (const auto& w : sample_words("ab", 12))
      if ((pfa_eval(p.model, w) - p.cutpoint).sign() != gfa_eval(g, w).sign()) o.fail("two-letter sign mismatch");
  }
  if (o.pass) o.detail = "50 unary 3-state GFAs, |w|<=30, n_P=" + std::to_string(largest) + " (<= n+4); 10 two-letter GFAs sampled";
  return o;
}

Outcome qfa_to_gfa_check() {
  Outcome o;
  std::size_t count = 0;
  for (const char* name : {"id.qfa.json", "dephase.qfa.json", "bitflip.qfa.json", "rotate.qfa.json"}) {
    const Qfa m = std::get<Qfa>(load_model(fs::path(RECAUT_FIXTURE_DIR) / name));
    const Gfa g = qfa_to_gfa(m).model;
    ++count;
    if (g.states() != m.states() * m.states()) o.fail(std::string(name) + ": wrong state count");
    for (const auto& w : sample_words(m.alphabet(), 30))
      if (gfa_eval(g, w) != qfa_eval(m, w)) o.fail(std::string(name) + ": value mismatch on '" + w + "'");
  }
  if (o.pass) o.detail = std::to_string(count) + " fixtures, n^2 states, |w|<=30";
  return o;
}

Outcome exclusivity() {
  Rng rng(108);
  Outcome o;
  const std::array<long, 4> cutpoints{-1, 0, 1, 3};
  std::size_t empties = 0;
  for (int trial = 0; trial < 200; ++trial) {
    const LinRec u = testing::random_linrec(rng, 4, 3);
    const Rational lambda(cutpoints[static_cast<std::size_t>(uniform(rng, 0, 3))]);
    const bool with_empty = trial % 2 == 0;
    const Problem p = Problem::make(ProblemKind::Exclusivity, u, lambda, std::nullopt, with_empty);
    const Verdict v = decide_exclusivity(p);
    const Verdict brute = bounded_search(p, u.depth() + 2 + 50);
    if (!v.decided()) o.fail("undecided, trial " + std::to_string(trial));
    if (v.is_non_empty() != brute.is_non_empty()) o.fail("disagreement, trial " + std::to_string(trial));
    if (v.is_non_empty() && v.witness != brute.witness) o.fail("different least witness, trial " + std::to_string(trial));
    if (v.is_empty()) ++empties;
  }
  if (o.pass) o.detail = "200 recurrences, all decided (" + std::to_string(empties) + " empty)";
  return o;
}

Outcome pfa_boundary() {
  Rng rng(109);
  Outcome o;
  const std::array<std::pair<PfaBoundary, ThresholdQuery>, 4> queries{{
      {PfaBoundary::Gt0, {Rational(0), Relation::Greater}},
      {PfaBoundary::Eq0, {Rational(0), Relation::Equal}},
      {PfaBoundary::Eq1, {Rational(1), Relation::Equal}},
      {PfaBoundary::Lt1, {Rational(1), Relation::Less}},
  }};
  for (int trial = 0; trial < 100; ++trial) {
    const Pfa p = testing::random_pfa(rng, 3);
    const auto values = unary_pfa_values(p, 200);
    for (const auto& [which, query] : queries) {
      const Verdict v = decide_pfa_boundary(p, which);
      std::optional<std::size_t> first;
      for (std::size_t n = 0; n <= 200 && !first; ++n)
        if (relation_holds(values[n], query.relation, query.cutpoint)) first = n;
      if (!v.decided()) o.fail("undecided");
      if (v.is_non_empty() != first.has_value()) o.fail("disagreement, trial " + std::to_string(trial));
      if (v.is_non_empty() && first && v.witness_length() != *first) o.fail("witness not least, trial " + std::to_string(trial));
    }
  }
  if (o.pass) o.detail = "100 3-state PFAs x 4 queries, n<=200";
  return o;
}

Outcome depth2() {
  Rng rng(110);
  Outcome o;
  constexpr std::size_t kBrute = 10000;
  std::size_t decided_zero = 0, unknown_zero = 0;
  const std::array<Relation, 5> relations{Relation::Equal, Relation::Less, Relation::LessEqual, Relation::Greater,
                                          Relation::GreaterEqual};
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<Rational> coeffs{Rational(uniform(rng, -3, 3)), Rational(uniform(rng, 1, 3) * (uniform(rng, 0, 1) ? 1 : -1))};
    const LinRec u(testing::integers(rng, 2, 3), coeffs);
    const auto terms = lr_terms(u, kBrute + 1);
    for (Relation r : relations) {
      Verdict v;
      try {
        v = decide_depth2(u, {Rational(0), r, true});
      } catch (const std::exception& e) {
        o.fail(std::string("solver error: ") + e.what());
        continue;
      }
      std::optional<std::size_t> first;
      for (std::size_t n = 0; n <= kBrute && !first; ++n)
        if (relation_holds(terms[n], r, Rational(0))) first = n;
      if (!v.decided()) {
        if (r != Relation::Equal) o.fail("undecided sign query, trial " + std::to_string(trial));
        if (first) o.fail("Unknown although a zero exists, trial " + std::to_string(trial));
        ++unknown_zero;
        continue;
      }
      if (r == Relation::Equal) ++decided_zero;
      if (v.is_empty() && first) o.fail("Empty but brute force finds n=" + std::to_string(*first) + ", trial " + std::to_string(trial));
      if (v.is_non_empty() && (!first || v.witness_length() != *first)) o.fail("witness disagreement, trial " + std::to_string(trial));
    }
  }
  const LinRec period6({1, 1}, {1, -1});
  const auto start = std::chrono::steady_clock::now();
  const Verdict zero = decide_depth2(period6, {Rational(0), Relation::Equal});
  const Verdict violation = decide_depth2(period6, {Rational(0), Relation::Less});
  const double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  if (zero.witness_length() != 2 || violation.witness_length() != 3 || !zero.decided() || !violation.decided()) {
    o.fail("period-6 instance not decided as expected");
  }
  if (ms >= 1000) o.fail("period-6 instance too slow");
  if (o.pass) {
    std::ostringstream s;
    s << "200 recurrences x 5 relations vs n<=10^4; zero queries decided " << decided_zero << ", unknown "
      << unknown_zero << "; period-6 decided in " << ms << " ms";
    o.detail = s.str();
  }
  return o;
}

struct Run {
  int status;
  std::string out;
};

Run run(const std::string& command) {
  Run r{-1, {}};
  FILE* pipe = popen((command + " 2>/dev/null").c_str(), "r");
  if (!pipe) return r;
  std::array<char, 4096> buffer{};
  while (std::size_t got = fread(buffer.data(), 1, buffer.size(), pipe)) r.out.append(buffer.data(), got);
  const int status = pclose(pipe);
  r.status = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

Outcome cli_pipeline(const std::string& cli) {
  Outcome o;
  if (cli.empty()) {
    o.fail("no CLI path given");
    return o;
  }
  const fs::path fixtures(RECAUT_FIXTURE_DIR);
  const fs::path dir = fs::temp_directory_path() / ("recaut-acceptance-" + std::to_string(::getpid()));
  fs::create_directories(dir);
  const std::string exe = "'" + cli + "' ";
  const std::string fib = "'" + (fixtures / "fib.lrr.json").string() + "'";
  const std::string gfa = "'" + (dir / "fib.gfa.json").string() + "'";
  const std::string pfa = "'" + (dir / "fib.pfa.json").string() + "'";

  if (run(exe + "convert --to gfa -o " + gfa + " " + fib).status != 0) o.fail("lrr -> gfa failed");
  if (run(exe + "convert --to pfa -o " + pfa + " " + gfa).status != 0) o.fail("gfa -> pfa failed");
  if (!o.pass) return o;
  const auto chain = certificates_from_text(slurp(dir / "fib.pfa.cert.json"));
  if (chain.size() != 1 || !chain.front().target_cutpoint) {
    o.fail("missing PFA cutpoint in certificate");
    return o;
  }
  const std::string cut = chain.front().target_cutpoint->str();
  if (run(exe + "validate " + pfa).status != 0) o.fail("converted PFA does not validate");

  // Exclusivity of the PFA at its cutpoint must match exclusivity of u at 0.
  const Run direct = run(exe + "decide --problem exclusivity --cutpoint 0 " + fib);
  const Run via = run(exe + "decide --problem exclusivity --cutpoint " + cut + " " + pfa);
  if (direct.status != 0 || via.status != 0) o.fail("exclusivity not decided (exit " + std::to_string(via.status) + ")");
  if (direct.out != via.out) o.fail("verdicts differ between lrr and pfa");
  if (via.out.find("\"witness\": \"a\"") == std::string::npos) o.fail("unexpected witness: " + via.out);

  const Run skolem = run(exe + "decide --problem skolem --cutpoint " + cut + " --bound 100 " + pfa);
  if (skolem.status != 0 || skolem.out.find("\"witness_length\": 0") == std::string::npos) o.fail("skolem on PFA");

  if (run(exe + "decide --problem positivity --bound 1000 '" + (fixtures / "hard5.lrr.json").string() + "'").status != 2) {
    o.fail("hard instance should exit 2");
  }
  if (run(exe + "validate '" + (fixtures / "badqfa.json").string() + "'").status != 1) o.fail("invalid QFA should exit 1");
  {
    std::ofstream broken(dir / "broken.json");
    broken << "{\"format\": 1, \"model\": \"lrr\"";
  }
  if (run(exe + "eval '" + (dir / "broken.json").string() + "' 3").status != 3) o.fail("malformed file should exit 3");
  if (run(exe + "decide --problem positivity --cutpoint 2 " + pfa).status != 1) o.fail("cutpoint outside [0,1] should exit 1");

  // Canonical round trip for every fixture and the generated files.
  std::size_t files = 0;
  std::vector<fs::path> paths{dir / "fib.gfa.json", dir / "fib.pfa.json"};
  for (const auto& e : fs::directory_iterator(fixtures))
    if (e.path().extension() == ".json") paths.push_back(e.path());
  for (const auto& p : paths) {
    ++files;
    const Run once = run(exe + "canonical '" + p.string() + "'");
    if (once.status != 0 || once.out != slurp(p)) o.fail("not canonical: " + p.filename().string());
  }
  fs::remove_all(dir);
  if (o.pass) o.detail = "lrr -> gfa -> pfa -> exclusivity at " + cut + " agrees with the recurrence; exit codes 0/1/2/3; " +
                         std::to_string(files) + " files canonical";
  return o;
}

}  // namespace

int main(int argc, char** argv) {
  const std::string cli = argc > 1 ? argv[1] : "";
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"recurrence -> GFA forward", linrec_forward},
      {"unary GFA -> recurrence backward", linrec_backward},
      {"sum/product closures and Cayley-Hamilton", closures},
      {"reductions between Skolem and positivity", reductions},
      {"MOD_k languages", mod_k},
      {"GFA -> PFA sign preservation", gfa_to_pfa_check},
      {"QFA -> GFA vectorization", qfa_to_gfa_check},
      {"exclusivity decider vs bounded search", exclusivity},
      {"PFA boundary decider vs enumeration", pfa_boundary},
      {"depth-2 solver vs brute force", depth2},
      {"end-to-end CLI pipeline", [&] { return cli_pipeline(cli); }},
  };
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o.fail(std::string("exception: ") + e.what());
    }
    if (!o.pass) ++failures;
    std::cout << (o.pass ? "PASS" : "FAIL") << "  " << (i + 1) << ". " << criteria[i].first << ": " << o.detail << std::endl;
  }
  std::cout << (criteria.size() - failures) << "/" << criteria.size() << " criteria passed" << std::endl;
  return failures == 0 ? 0 : 1;
}
