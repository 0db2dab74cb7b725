#include "recaut/model.hpp"

namespace recaut {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};

}  // namespace

std::string_view model_kind(const AnyModel& model) {
  return std::visit(overloaded{
                        [](const LinRec&) { return std::string_view{"lrr"}; },
                        [](const Lra&) { return std::string_view{"lra"}; },
                        [](const TreeLinRec&) { return std::string_view{"tlrr"}; },
                        [](const Lrva&) { return std::string_view{"lrva"}; },
                        [](const Gfa&) { return std::string_view{"gfa"}; },
                        [](const Pfa&) { return std::string_view{"pfa"}; },
                        [](const Qfa&) { return std::string_view{"qfa"}; },
                    },
                    model);
}

std::string model_alphabet(const AnyModel& model) {
  return std::visit(overloaded{
                        [](const LinRec&) { return std::string("a"); },
                        [](const Lra& u) { return std::string(1, u.symbol); },
                        [](const TreeLinRec& t) { return std::string{t.first(), t.second()}; },
                        [](const Lrva& v) { return std::string(1, v.symbol()); },
                        [](const auto& m) { return m.alphabet(); },
                    },
                    model);
}

Rational evaluate(const AnyModel& model, std::string_view word) {
  return std::visit(overloaded{
                        [&](const LinRec& u) {
                          require_unary_word(word, 'a');
                          return lr_eval(u, word.size());
                        },
                        [&](const Lra& u) { return lra_eval(u, word); },
                        [&](const TreeLinRec& t) { return tlr_eval(t, word); },
                        [&](const Lrva& v) { return lrva_eval(v, word); },
                        [&](const Gfa& g) { return gfa_eval(g, word); },
                        [&](const Pfa& p) { return pfa_eval(p, word); },
                        [&](const Qfa& m) { return qfa_eval(m, word); },
                    },
                    model);
}

ValidationReport validate(const AnyModel& model) {
  return std::visit(overloaded{
                        [](const Lrva& v) { return v.report(); },
                        [](const Pfa& p) { return p.report(); },
                        [](const Qfa& m) { return m.report(); },
                        [](const auto&) { return ValidationReport{}; },
                    },
                    model);
}

Classification classify(const AnyModel& model, const ThresholdQuery& query, std::string_view word) {
  return classify_value(evaluate(model, word), query, word.size());
}

}  // namespace recaut
