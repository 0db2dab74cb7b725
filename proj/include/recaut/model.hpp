#pragma once

#include <string>
#include <string_view>
#include <variant>

#include "recaut/automata.hpp"
#include "recaut/sequences.hpp"

namespace recaut {

/// Any model the library can evaluate. A bare LinRec reads unary words over 'a'.
using AnyModel = std::variant<LinRec, Lra, TreeLinRec, Lrva, Gfa, Pfa, Qfa>;

/// File-format tag: "lrr", "lra", "tlrr", "lrva", "gfa", "pfa" or "qfa".
std::string_view model_kind(const AnyModel& model);

/// Input symbols (end-marker excluded).
std::string model_alphabet(const AnyModel& model);

Rational evaluate(const AnyModel& model, std::string_view word);

ValidationReport validate(const AnyModel& model);

/// Compares the model's value on `word` against the query's cutpoint.
Classification classify(const AnyModel& model, const ThresholdQuery& query, std::string_view word);

}  // namespace recaut
