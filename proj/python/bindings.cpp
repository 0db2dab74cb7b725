#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>
#include <string>
#include <vector>

#include "recaut/conversions.hpp"
#include "recaut/decision.hpp"
#include "recaut/errors.hpp"
#include "recaut/model_io.hpp"

namespace py = pybind11;
using namespace recaut;

namespace {

// pybind11/stl.h converts std::variant itself, so models cross the boundary in a handle.
struct Model {
  AnyModel value;
};

std::vector<Rational> parse_all(const std::vector<std::string>& values) {
  std::vector<Rational> out;
  out.reserve(values.size());
  for (const auto& v : values) out.push_back(Rational::parse(v));
  return out;
}

std::vector<std::string> str_all(const std::vector<Rational>& values) {
  std::vector<std::string> out;
  out.reserve(values.size());
  for (const auto& v : values) out.push_back(v.str());
  return out;
}

std::vector<std::string> violations(const Model& m) {
  std::vector<std::string> out;
  for (const auto& v : validate(m.value).violations) out.push_back(v.rule + ": " + v.detail);
  return out;
}

std::string decide_text(const Model& m, const std::string& problem, std::optional<std::string> relation,
                        const std::string& cutpoint, std::size_t bound, bool include_empty_word) {
  std::optional<Relation> rel;
  if (relation) rel = parse_relation(*relation);
  const Problem p = Problem::make(parse_problem_kind(problem), m.value, Rational::parse(cutpoint), rel, include_empty_word);
  return verdict_to_text(decide(p, bound));
}

py::tuple convert_model(const Model& m, const std::string& target, std::optional<std::string> cutpoint) {
  std::optional<Rational> shift;
  if (cutpoint) shift = Rational::parse(*cutpoint);
  const ConvertedModel out = convert(m.value, target, shift);
  std::optional<std::string> cut;
  if (out.cutpoint) cut = out.cutpoint->str();
  return py::make_tuple(Model{out.model}, certificates_to_text(out.chain), cut);
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Exact recurrences, weighted automata and threshold emptiness.";

  static py::exception<Error> base(m, "RecautError");
  static py::exception<FormatError> format(m, "FormatError", base.ptr());
  static py::exception<InvalidProblemError> problem(m, "InvalidProblemError", base.ptr());
  static py::exception<ConversionError> conversion(m, "ConversionError", base.ptr());
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const FormatError& e) {
      PyErr_SetString(format.ptr(), e.what());
    } catch (const InvalidProblemError& e) {
      PyErr_SetString(problem.ptr(), e.what());
    } catch (const ConversionError& e) {
      PyErr_SetString(conversion.ptr(), e.what());
    } catch (const Error& e) {
      PyErr_SetString(base.ptr(), e.what());
    }
  });

  py::class_<Model>(m, "Model")
      .def_static("from_json", [](const std::string& text) { return Model{model_from_text(text)}; })
      .def_static("load", [](const std::string& path) { return Model{load_model(path)}; })
      .def("to_json", [](const Model& self) { return model_to_text(self.value); })
      .def_property_readonly("kind", [](const Model& self) { return std::string(model_kind(self.value)); })
      .def_property_readonly("alphabet", [](const Model& self) { return model_alphabet(self.value); })
      .def(
          "eval",
          [](const Model& self, const std::string& word) { return evaluate(self.value, parse_word(word, self.value)).str(); },
          py::arg("word"))
      .def("violations", &violations)
      .def("__eq__", [](const Model& a, const Model& b) { return a.value == b.value; })
      .def("__repr__", [](const Model& self) { return "<recaut." + std::string(model_kind(self.value)) + ">"; });

  m.def("decide", &decide_text, py::arg("model"), py::arg("problem"), py::arg("relation") = py::none(),
        py::arg("cutpoint") = "0", py::arg("bound") = 1000, py::arg("include_empty_word") = true);
  m.def("convert", &convert_model, py::arg("model"), py::arg("to"), py::arg("cutpoint") = py::none());
  m.def("canonicalize", [](const std::string& text) { return canonicalize(text); });

  m.def(
      "lr_terms",
      [](const std::vector<std::string>& initials, const std::vector<std::string>& coeffs, std::size_t count) {
        return str_all(lr_terms(LinRec(parse_all(initials), parse_all(coeffs)), count));
      },
      py::arg("initials"), py::arg("coeffs"), py::arg("count"));
  m.def(
      "lr_minimize",
      [](const std::vector<std::string>& initials, const std::vector<std::string>& coeffs) {
        const LinRec w = lr_minimize(LinRec(parse_all(initials), parse_all(coeffs)));
        return py::make_tuple(str_all(w.initials()), str_all(w.coeffs()));
      },
      py::arg("initials"), py::arg("coeffs"));
}
