#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "recaut/conversions.hpp"
#include "recaut/decision.hpp"
#include "recaut/model.hpp"

namespace recaut {

/// Version written to, and required in, the "format" field.
inline constexpr int kModelFormatVersion = 1;

/// Parses a model document. Malformed JSON, missing fields and shape errors
/// raise FormatError; semantic validity (stochasticity, Kraus completeness)
/// is left to validate().
AnyModel model_from_text(std::string_view text);
AnyModel load_model(const std::filesystem::path& path);

/// Canonical form: sorted keys, two-space indent, reduced rationals, trailing newline.
std::string model_to_text(const AnyModel& model);
void save_model(const std::filesystem::path& path, const AnyModel& model);

/// model_to_text(model_from_text(text)).
std::string canonicalize(std::string_view text);

std::string certificate_to_text(const ConversionCertificate& cert);
ConversionCertificate certificate_from_text(std::string_view text);
/// A single certificate as an object, a longer chain as an array of them.
std::string certificates_to_text(const std::vector<ConversionCertificate>& chain);
std::vector<ConversionCertificate> certificates_from_text(std::string_view text);

std::string verdict_to_text(const Verdict& verdict);

/// Word argument for `model`: "a^12" shorthand, a bare index n for unary
/// models, "" or "eps" for the empty word, otherwise the literal string.
std::string parse_word(std::string_view text, const AnyModel& model);

}  // namespace recaut
