// recaut: evaluate, convert and decide exactly on recurrence and automaton models.
//
// Exit codes: 0 success (or Decided), 1 evaluation error / unsupported
// conversion / invalid problem / invalid model, 2 Unknown, 3 malformed file.

#include <CLI11.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "recaut/conversions.hpp"
#include "recaut/decision.hpp"
#include "recaut/errors.hpp"
#include "recaut/model_io.hpp"

namespace fs = std::filesystem;
using namespace recaut;

namespace {

enum ExitCode { kOk = 0, kFailure = 1, kUnknown = 2, kMalformed = 3 };

constexpr std::size_t kDefaultBound = 1000;

std::size_t default_bound() {
  if (const char* env = std::getenv("RECAUT_BOUND")) {
    try {
      return std::stoull(env);
    } catch (const std::exception&) {
      std::cerr << "warning: ignoring RECAUT_BOUND=" << env << "\n";
    }
  }
  return kDefaultBound;
}

void write_text(const std::optional<std::string>& path, const std::string& text) {
  if (!path) {
    std::cout << text;
    return;
  }
  std::ofstream out(*path);
  if (!out) throw Error("cannot write " + *path);
  out << text;
}

/// out.json -> out.cert.json
std::string certificate_path(const std::string& output) {
  fs::path p(output);
  const std::string stem = p.stem().string();
  return (p.parent_path() / (stem + ".cert" + p.extension().string())).string();
}

// A bad rational on the command line is a usage error, not a malformed file.
Rational cutpoint_arg(const std::string& text) {
  try {
    return Rational::parse(text);
  } catch (const FormatError& e) {
    throw InvalidProblemError(std::string("bad cutpoint: ") + e.what());
  }
}

LinRec as_linrec(const AnyModel& model) {
  auto u = unary_linrec(model);
  if (!u) throw ConversionError(std::string(model_kind(model)) + " model is not unary");
  return *u;
}

Reduction parse_reduction(const std::string& text) {
  if (text == "skolem-to-strict-pos") return Reduction::SkolemToStrictPositivity;
  if (text == "skolem-to-pos") return Reduction::SkolemToPositivity;
  if (text == "strict-pos-to-pos") return Reduction::StrictPositivityToPositivity;
  throw InvalidProblemError("unknown reduction '" + text + "'");
}

struct Options {
  std::string file;
  std::vector<std::string> files;
  std::string word;
  std::string to;
  std::optional<std::string> cutpoint;
  std::optional<std::string> output;
  std::string problem;
  std::optional<std::string> relation;
  std::size_t bound = 0;
  bool exclude_empty = false;
  std::string op = "sum";
  std::string kind;
};

int cmd_eval(const Options& o) {
  const AnyModel model = load_model(o.file);
  std::cout << evaluate(model, parse_word(o.word, model)).str() << "\n";
  return kOk;
}

int cmd_convert(const Options& o) {
  const AnyModel source = load_model(o.file);
  std::optional<Rational> shift;
  if (o.cutpoint) shift = cutpoint_arg(*o.cutpoint);
  const ConvertedModel result = convert(source, o.to, shift);
  const std::string model_text = model_to_text(result.model);
  const std::string cert_text = certificates_to_text(result.chain);
  if (o.output) {
    write_text(o.output, model_text);
    write_text(certificate_path(*o.output), cert_text);
  } else {
    std::cout << model_text << cert_text;
  }
  if (result.cutpoint) std::cerr << "cutpoint " << result.cutpoint->str() << "\n";
  return kOk;
}

int cmd_decide(const Options& o) {
  const AnyModel target = load_model(o.file);
  std::optional<Relation> relation;
  if (o.relation) relation = parse_relation(*o.relation);
  const Rational lambda = o.cutpoint ? cutpoint_arg(*o.cutpoint) : Rational(0);
  const Problem problem = Problem::make(parse_problem_kind(o.problem), target, lambda, relation, !o.exclude_empty);
  const Verdict verdict = decide(problem, o.bound ? o.bound : default_bound());
  std::cout << verdict_to_text(verdict);
  return verdict.decided() ? kOk : kUnknown;
}

int cmd_closure(const Options& o) {
  const LinRec u = as_linrec(load_model(o.files.at(0)));
  const LinRec v = as_linrec(load_model(o.files.at(1)));
  CombineKind kind;
  if (o.op == "sum") kind = CombineKind::Sum;
  else if (o.op == "product") kind = CombineKind::Product;
  else throw InvalidProblemError("unknown closure operation '" + o.op + "'");
  write_text(o.output, model_to_text(lr_combine(kind, u, v)));
  return kOk;
}

int cmd_reduce(const Options& o) {
  const LinRec u = as_linrec(load_model(o.file));
  write_text(o.output, model_to_text(lr_reduce(parse_reduction(o.kind), u)));
  return kOk;
}

int cmd_validate(const Options& o) {
  int code = kOk;
  for (const auto& file : o.files) {
    const ValidationReport report = validate(load_model(file));
    std::cout << file << ": " << (report.ok() ? "valid" : "invalid") << "\n";
    if (!report.ok()) {
      std::cout << report.str();
      if (!report.str().empty() && report.str().back() != '\n') std::cout << "\n";
      code = kFailure;
    }
  }
  return code;
}

int cmd_canonical(const Options& o) {
  write_text(o.output, model_to_text(load_model(o.file)));
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact evaluation, conversion and emptiness decisions for recurrences and weighted automata"};
  app.require_subcommand(1);
  Options o;
  int (*handler)(const Options&) = nullptr;

  auto* eval = app.add_subcommand("eval", "Print the exact value on a word (\"a^12\", a literal, or an index)");
  eval->add_option("file", o.file, "model file")->required();
  eval->add_option("word", o.word, "word")->required();
  eval->callback([&] { handler = cmd_eval; });

  auto* conv = app.add_subcommand("convert", "Convert a model and write its certificate");
  conv->add_option("--to", o.to, "gfa, lrr, pfa, int-gfa or lrva")->required();
  conv->add_option("--cutpoint", o.cutpoint, "shift this cutpoint of the source to 0 first");
  conv->add_option("-o,--output", o.output, "output model file; the certificate goes to <stem>.cert.json");
  conv->add_option("file", o.file, "model file")->required();
  conv->callback([&] { handler = cmd_convert; });

  auto* dec = app.add_subcommand("decide", "Decide emptiness of L(model, rel cutpoint)");
  dec->add_option("--problem", o.problem, "skolem, positivity, strict-positivity or exclusivity")->required();
  dec->add_option("--cutpoint", o.cutpoint, "rational cutpoint (default 0)");
  dec->add_option("--relation", o.relation, "override the kind's default relation (e.g. <= for positivity)");
  dec->add_option("--bound", o.bound, "search bound (default $RECAUT_BOUND or 1000)");
  dec->add_flag("--no-empty-word", o.exclude_empty, "exclude the empty word");
  dec->add_option("file", o.file, "model file")->required();
  dec->callback([&] { handler = cmd_decide; });

  auto* clo = app.add_subcommand("closure", "Pointwise sum or product of two unary sequences");
  clo->add_option("--op", o.op, "sum or product")->check(CLI::IsMember({"sum", "product"}));
  clo->add_option("-o,--output", o.output, "output file");
  clo->add_option("files", o.files, "two model files")->required()->expected(2);
  clo->callback([&] { handler = cmd_closure; });

  auto* red = app.add_subcommand("reduce", "Rewrite a sequence for a different emptiness problem");
  red->add_option("--kind", o.kind, "skolem-to-strict-pos, skolem-to-pos or strict-pos-to-pos")->required();
  red->add_option("-o,--output", o.output, "output file");
  red->add_option("file", o.file, "model file")->required();
  red->callback([&] { handler = cmd_reduce; });

  auto* val = app.add_subcommand("validate", "Check structural and stochastic validity");
  val->add_option("files", o.files, "model files")->required();
  val->callback([&] { handler = cmd_validate; });

  auto* can = app.add_subcommand("canonical", "Rewrite a model file in canonical form");
  can->add_option("-o,--output", o.output, "output file");
  can->add_option("file", o.file, "model file")->required();
  can->callback([&] { handler = cmd_canonical; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kFailure;
  }

  try {
    return handler(o);
  } catch (const FormatError& e) {
    std::cerr << "malformed input: " << e.what() << "\n";
    return kMalformed;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kFailure;
  }
}
