#include "recaut/model_io.hpp"

#include <cctype>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "recaut/errors.hpp"

namespace recaut {

using nlohmann::json;

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};

[[noreturn]] void malformed(const std::string& what) { throw FormatError(what); }

const json& field(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) malformed(std::string("missing field \"") + key + "\"");
  return j.at(key);
}

// Rationals: "p/q" or "p" strings; bare JSON integers tolerated on input.
Rational rational_in(const json& j) {
  if (j.is_string()) return Rational::parse(j.get<std::string>());
  if (j.is_number_integer()) return Rational(Integer(j.dump()));
  malformed("expected a rational string, got " + j.dump());
}

json rational_out(const Rational& r) { return r.str(); }

GaussianRational complex_in(const json& j) {
  if (j.is_object()) return {rational_in(field(j, "re")), j.contains("im") ? rational_in(j.at("im")) : Rational()};
  return {rational_in(j), Rational()};
}

json complex_out(const GaussianRational& z) { return {{"re", z.re.str()}, {"im", z.im.str()}}; }

std::vector<Rational> rationals_in(const json& j) {
  if (!j.is_array()) malformed("expected an array of rationals, got " + j.dump());
  std::vector<Rational> out;
  for (const auto& x : j) out.push_back(rational_in(x));
  return out;
}

json rationals_out(const std::vector<Rational>& xs) {
  json out = json::array();
  for (const auto& x : xs) out.push_back(rational_out(x));
  return out;
}

template <class T, class F>
Matrix<T> matrix_in(const json& j, F entry) {
  if (!j.is_array() || j.empty()) malformed("expected a non-empty array of rows, got " + j.dump());
  const std::size_t cols = j.front().is_array() ? j.front().size() : 0;
  if (cols == 0) malformed("matrix rows must be non-empty arrays");
  Matrix<T> m(j.size(), cols);
  for (std::size_t r = 0; r < j.size(); ++r) {
    if (!j[r].is_array() || j[r].size() != cols) malformed("ragged matrix row " + std::to_string(r + 1));
    for (std::size_t c = 0; c < cols; ++c) m(r, c) = entry(j[r][c]);
  }
  return m;
}

template <class T, class F>
json matrix_out(const Matrix<T>& m, F entry) {
  json out = json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (std::size_t c = 0; c < m.cols(); ++c) row.push_back(entry(m(r, c)));
    out.push_back(std::move(row));
  }
  return out;
}

RatMatrix rat_matrix_in(const json& j) { return matrix_in<Rational>(j, rational_in); }
json rat_matrix_out(const RatMatrix& m) { return matrix_out(m, rational_out); }
ComplexMatrix complex_matrix_in(const json& j) { return matrix_in<GaussianRational>(j, complex_in); }
json complex_matrix_out(const ComplexMatrix& m) { return matrix_out(m, complex_out); }

// Vectors are flat arrays in files.
RatMatrix column_in(const json& j) { return RatMatrix::column(rationals_in(j)); }
RatMatrix row_in(const json& j) { return RatMatrix::row(rationals_in(j)); }
json vector_out(const RatMatrix& v) { return rationals_out(std::vector<Rational>(v.entries().begin(), v.entries().end())); }

char symbol_in(const json& j) {
  if (!j.is_string() || j.get<std::string>().size() != 1) malformed("symbols must be one-character strings, got " + j.dump());
  return j.get<std::string>().front();
}

std::string alphabet_in(const json& j) {
  if (!j.is_array() || j.empty()) malformed("\"alphabet\" must be a non-empty array");
  std::string out;
  for (const auto& s : j) out.push_back(symbol_in(s));
  return out;
}

json alphabet_out(const std::string& alphabet) {
  json out = json::array();
  for (char c : alphabet) out.push_back(std::string(1, c));
  return out;
}

std::string alphabet_or(const json& j, const std::string& fallback) {
  return j.contains("alphabet") ? alphabet_in(j.at("alphabet")) : fallback;
}

char end_marker_in(const json& j) { return j.contains("end_marker") ? symbol_in(j.at("end_marker")) : '$'; }

std::vector<std::size_t> accepting_in(const json& j) {
  if (!j.is_array()) malformed("\"accepting\" must be an array of 1-based indices");
  std::vector<std::size_t> out;
  for (const auto& x : j) {
    if (!x.is_number_integer() || x.get<long long>() < 1) malformed("accepting state indices are 1-based integers");
    out.push_back(x.get<std::size_t>() - 1);
  }
  return out;
}

json accepting_out(const std::vector<std::size_t>& states) {
  json out = json::array();
  for (std::size_t q : states) out.push_back(q + 1);
  return out;
}

template <class Step, class F>
std::map<char, Step> transitions_in(const json& j, F step) {
  if (!j.is_object()) malformed("\"transitions\" must map symbols to matrices");
  std::map<char, Step> out;
  for (const auto& [key, value] : j.items()) {
    if (key.size() != 1) malformed("transition key \"" + key + "\" is not a single symbol");
    out.emplace(key.front(), step(value));
  }
  return out;
}

LinRec linrec_in(const json& j) { return LinRec(rationals_in(field(j, "initials")), rationals_in(field(j, "coeffs"))); }

AnyModel model_from_json(const json& j) {
  if (!j.is_object()) malformed("model document must be a JSON object");
  const json& format = field(j, "format");
  if (!format.is_number_integer() || format.get<int>() != kModelFormatVersion) {
    malformed("unsupported format version " + format.dump());
  }
  const json& kind_field = field(j, "model");
  if (!kind_field.is_string()) malformed("\"model\" must be a string");
  const std::string kind = kind_field.get<std::string>();

  if (kind == "lrr") return linrec_in(j);
  if (kind == "lra") {
    const std::string alphabet = alphabet_or(j, "a");
    if (alphabet.size() != 1) malformed("an LRA has a one-letter alphabet");
    return Lra{linrec_in(j), alphabet.front()};
  }
  if (kind == "tlrr") {
    const std::string alphabet = alphabet_or(j, "ab");
    if (alphabet.size() != 2) malformed("a T-LRR has a two-letter alphabet");
    const json& initials = field(j, "initials");
    if (!initials.is_object()) malformed("T-LRR \"initials\" must map words to rationals");
    std::map<std::string, Rational> table;
    for (const auto& [word, value] : initials.items()) table.emplace(word, rational_in(value));
    const json& depth = field(j, "depth");
    if (!depth.is_number_unsigned()) malformed("T-LRR \"depth\" must be a positive integer");
    return TreeLinRec(depth.get<std::size_t>(), std::move(table), rationals_in(field(j, "coeffs_first")),
                      rationals_in(field(j, "coeffs_second")), alphabet[0], alphabet[1]);
  }
  if (kind == "lrva") {
    const std::string alphabet = alphabet_or(j, "a");
    if (alphabet.size() != 1) malformed("an LRVA has a one-letter alphabet");
    std::vector<RatMatrix> initials;
    std::vector<RatMatrix> matrices;
    for (const auto& v : field(j, "initials")) initials.push_back(column_in(v));
    for (const auto& m : field(j, "matrices")) matrices.push_back(rat_matrix_in(m));
    const bool probabilistic = j.value("probabilistic", false);
    return Lrva(VectorLinRec(std::move(initials), std::move(matrices)), row_in(field(j, "final")), alphabet.front(),
                probabilistic);
  }
  if (kind == "gfa") {
    return Gfa(alphabet_in(field(j, "alphabet")), transitions_in<RatMatrix>(field(j, "transitions"), rat_matrix_in),
               column_in(field(j, "initial")), row_in(field(j, "final")));
  }
  if (kind == "pfa") {
    return Pfa(alphabet_in(field(j, "alphabet")), transitions_in<RatMatrix>(field(j, "transitions"), rat_matrix_in),
               column_in(field(j, "initial")), accepting_in(field(j, "accepting")), end_marker_in(j));
  }
  if (kind == "qfa") {
    auto superoperator = [](const json& ops) {
      if (!ops.is_array()) malformed("QFA transitions map symbols to lists of Kraus matrices");
      Qfa::Superoperator out;
      for (const auto& e : ops) out.push_back(complex_matrix_in(e));
      return out;
    };
    return Qfa(alphabet_in(field(j, "alphabet")), transitions_in<Qfa::Superoperator>(field(j, "transitions"), superoperator),
               complex_matrix_in(field(j, "initial")), accepting_in(field(j, "accepting")), end_marker_in(j));
  }
  malformed("unknown model kind \"" + kind + "\"");
}

json model_to_json(const AnyModel& model) {
  json j = std::visit(
      overloaded{
          [](const LinRec& u) -> json { return {{"initials", rationals_out(u.initials())}, {"coeffs", rationals_out(u.coeffs())}}; },
          [](const Lra& u) -> json {
            return {{"alphabet", alphabet_out(std::string(1, u.symbol))},
                    {"initials", rationals_out(u.rec.initials())},
                    {"coeffs", rationals_out(u.rec.coeffs())}};
          },
          [](const TreeLinRec& t) -> json {
            json initials = json::object();
            for (const auto& [word, value] : t.initials()) initials[word] = rational_out(value);
            return {{"alphabet", alphabet_out(std::string{t.first(), t.second()})},
                    {"depth", t.depth()},
                    {"initials", std::move(initials)},
                    {"coeffs_first", rationals_out(t.coeffs_first())},
                    {"coeffs_second", rationals_out(t.coeffs_second())}};
          },
          [](const Lrva& v) -> json {
            json initials = json::array();
            json matrices = json::array();
            for (const auto& x : v.rec().initials()) initials.push_back(vector_out(x));
            for (const auto& m : v.rec().matrices()) matrices.push_back(rat_matrix_out(m));
            return {{"alphabet", alphabet_out(std::string(1, v.symbol()))},
                    {"initials", std::move(initials)},
                    {"matrices", std::move(matrices)},
                    {"final", vector_out(v.final())},
                    {"probabilistic", v.probabilistic()}};
          },
          [](const Gfa& g) -> json {
            json transitions = json::object();
            for (const auto& [symbol, m] : g.transitions()) transitions[std::string(1, symbol)] = rat_matrix_out(m);
            return {{"alphabet", alphabet_out(g.alphabet())},
                    {"transitions", std::move(transitions)},
                    {"initial", vector_out(g.initial())},
                    {"final", vector_out(g.final())}};
          },
          [](const Pfa& p) -> json {
            json transitions = json::object();
            for (const auto& [symbol, m] : p.transitions()) transitions[std::string(1, symbol)] = rat_matrix_out(m);
            return {{"alphabet", alphabet_out(p.alphabet())},
                    {"end_marker", std::string(1, p.end_marker())},
                    {"transitions", std::move(transitions)},
                    {"initial", vector_out(p.initial())},
                    {"accepting", accepting_out(p.accepting())}};
          },
          [](const Qfa& m) -> json {
            json transitions = json::object();
            for (const auto& [symbol, ops] : m.superoperators()) {
              json list = json::array();
              for (const auto& e : ops) list.push_back(complex_matrix_out(e));
              transitions[std::string(1, symbol)] = std::move(list);
            }
            return {{"alphabet", alphabet_out(m.alphabet())},
                    {"end_marker", std::string(1, m.end_marker())},
                    {"transitions", std::move(transitions)},
                    {"initial", complex_matrix_out(m.initial())},
                    {"accepting", accepting_out(m.accepting())}};
          },
      },
      model);
  j["format"] = kModelFormatVersion;
  j["model"] = std::string(model_kind(model));
  return j;
}

json parse_json(std::string_view text) {
  try {
    return json::parse(text);
  } catch (const json::exception& e) {
    malformed(std::string("invalid JSON: ") + e.what());
  }
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) malformed("cannot read " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void write_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write " + path.string());
  out << text;
}

std::string pretty(const json& j) { return j.dump(2) + "\n"; }

}  // namespace

AnyModel model_from_text(std::string_view text) {
  const json j = parse_json(text);
  try {
    return model_from_json(j);
  } catch (const FormatError&) {
    throw;
  } catch (const json::exception& e) {
    malformed(std::string("bad model document: ") + e.what());
  } catch (const Error& e) {
    // Shape and alphabet errors raised by the model constructors.
    malformed(e.what());
  }
}

AnyModel load_model(const std::filesystem::path& path) {
  try {
    return model_from_text(read_file(path));
  } catch (const FormatError& e) {
    throw FormatError(path.string() + ": " + e.what());
  }
}

std::string model_to_text(const AnyModel& model) { return pretty(model_to_json(model)); }

void save_model(const std::filesystem::path& path, const AnyModel& model) { write_file(path, model_to_text(model)); }

std::string canonicalize(std::string_view text) { return model_to_text(model_from_text(text)); }

namespace {

json certificate_json(const ConversionCertificate& cert) {
  json j = {{"source", cert.source},
            {"target", cert.target},
            {"alpha", rational_out(cert.alpha)},
            {"beta", rational_out(cert.beta)},
            {"gamma", rational_out(cert.gamma)},
            {"valid_from", cert.valid_from}};
  if (cert.source_cutpoint) j["source_cutpoint"] = rational_out(*cert.source_cutpoint);
  if (cert.target_cutpoint) j["target_cutpoint"] = rational_out(*cert.target_cutpoint);
  return j;
}

ConversionCertificate certificate_of(const json& j) {
  try {
    ConversionCertificate cert;
    cert.source = field(j, "source").get<std::string>();
    cert.target = field(j, "target").get<std::string>();
    cert.alpha = rational_in(field(j, "alpha"));
    cert.beta = rational_in(field(j, "beta"));
    cert.gamma = rational_in(field(j, "gamma"));
    cert.valid_from = field(j, "valid_from").get<std::size_t>();
    if (j.contains("source_cutpoint")) cert.source_cutpoint = rational_in(j.at("source_cutpoint"));
    if (j.contains("target_cutpoint")) cert.target_cutpoint = rational_in(j.at("target_cutpoint"));
    return cert;
  } catch (const json::exception& e) {
    malformed(std::string("bad certificate: ") + e.what());
  }
}

}  // namespace

std::string certificate_to_text(const ConversionCertificate& cert) { return pretty(certificate_json(cert)); }

ConversionCertificate certificate_from_text(std::string_view text) { return certificate_of(parse_json(text)); }

std::string certificates_to_text(const std::vector<ConversionCertificate>& chain) {
  if (chain.size() == 1) return certificate_to_text(chain.front());
  json out = json::array();
  for (const auto& cert : chain) out.push_back(certificate_json(cert));
  return pretty(out);
}

std::vector<ConversionCertificate> certificates_from_text(std::string_view text) {
  const json j = parse_json(text);
  if (!j.is_array()) return {certificate_of(j)};
  std::vector<ConversionCertificate> chain;
  for (const auto& x : j) chain.push_back(certificate_of(x));
  return chain;
}

std::string verdict_to_text(const Verdict& verdict) {
  json j = {{"status", verdict.decided() ? "decided" : "unknown"},
            {"certificate", std::string(certificate_name(verdict.certificate))}};
  if (verdict.answer) j["answer"] = verdict.is_empty() ? "empty" : "non-empty";
  if (verdict.witness) {
    j["witness"] = *verdict.witness;
    j["witness_length"] = verdict.witness->size();
  }
  if (!verdict.decided()) j["searched_bound"] = verdict.searched_bound;
  return pretty(j);
}

std::string parse_word(std::string_view text, const AnyModel& model) {
  if (text.empty() || text == "eps") return {};
  const std::string alphabet = model_alphabet(model);
  auto all_digits = [](std::string_view s) {
    return !s.empty() && std::all_of(s.begin(), s.end(), [](unsigned char c) { return std::isdigit(c); });
  };
  auto count = [&](std::string_view digits) {
    try {
      return static_cast<std::size_t>(std::stoull(std::string(digits)));
    } catch (const std::exception&) {
      malformed("word length \"" + std::string(digits) + "\" out of range");
    }
  };
  if (text.size() >= 3 && text[1] == '^' && all_digits(text.substr(2))) {
    return std::string(count(text.substr(2)), text[0]);
  }
  if (all_digits(text) && alphabet.size() == 1 && alphabet.find(text[0]) == std::string::npos) {
    return std::string(count(text), alphabet.front());
  }
  return std::string(text);
}

}  // namespace recaut
