#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "recaut/automata.hpp"
#include "recaut/model.hpp"
#include "recaut/sequences.hpp"

namespace recaut {

/// Value relation between a conversion's source and target:
///
///   target(w) = gamma^|w| * alpha * source(w) + beta    for |w| >= valid_from
///
/// with alpha, gamma > 0, so the sign of source(w) relative to 0 matches the
/// sign of target(w) relative to beta. Exact conversions have alpha = gamma = 1
/// and beta = 0.
struct ConversionCertificate {
  std::string source;
  std::string target;
  Rational alpha{1};
  Rational beta{0};
  Rational gamma{1};
  std::size_t valid_from = 0;
  /// When set, L(source, source_cutpoint) = L(target, target_cutpoint) as triples.
  std::optional<Rational> source_cutpoint;
  std::optional<Rational> target_cutpoint;

  bool exact() const { return alpha == Rational(1) && beta.is_zero() && gamma == Rational(1); }
  Rational predict(const Rational& source_value, std::size_t length) const;

  friend bool operator==(const ConversionCertificate&, const ConversionCertificate&) = default;
};

template <class Target>
struct Converted {
  Target model;
  ConversionCertificate certificate;
};

/// (k+1)-state unary GFA with transition [[0, 0], [z, M_1]], z = (u_k, ..., u_1),
/// v_0 = e_1 and f = e_{k+1}; f_G(a^n) = u_n for n >= 1.
Converted<Gfa> linrec_to_gfa(const LinRec& u, char symbol = 'a');
Converted<Gfa> linrec_to_gfa(const Lra& u);

/// Depth-n recurrence from the characteristic polynomial of A_a (Cayley-Hamilton),
/// initial values f A^j v_0 for j < n. Exact for all n >= 0.
Converted<LinRec> gfa_to_linrec(const Gfa& g);

/// Adds one state carrying the constant 1 so that f'(w) = f(w) - lambda.
Converted<Gfa> shift_cutpoint(const Gfa& g, const Rational& lambda);

/// Scales transitions by the lcm D of their denominators and both vectors by
/// the lcm of theirs: f''(w) = alpha * D^|w| * f(w) with integer entries.
Converted<Gfa> rationalize_to_integer(const Gfa& g);

bool is_integer_gfa(const Gfa& g);

struct PfaConversion {
  Pfa model;
  Rational cutpoint;
  ConversionCertificate certificate;
};

/// Stochastic automaton with n + 4 states whose value crosses `cutpoint`
/// exactly where f_G crosses 0. The value embedding is padded to zero row and
/// column sums and then mixed with the all-ones matrix, C = (B + cJ) / (c N).
PfaConversion gfa_to_pfa(const Gfa& g);

/// n^2-state rational GFA acting on the coordinates of rho in the Hermitian
/// basis {e_ii, e_ij + e_ji, i e_ij - i e_ji}; the end-marker step is folded
/// into the final vector. Exact for all words.
Converted<Gfa> qfa_to_gfa(const Qfa& m);

/// Folds the end-marker matrix and accepting set into a final vector.
Converted<Gfa> pfa_to_gfa(const Pfa& p);

Gfa lrva_depth1_gfa(const Lrva& v);
Lrva gfa_to_lrva(const Gfa& g);

/// Block-companion GFA with m*k states on the stacked state
/// (v_{n+k-1}, ..., v_n). Exact for all n >= 0.
Converted<Gfa> lrva_to_gfa(const Lrva& v);

struct ConvertedModel {
  AnyModel model;
  /// One certificate per construction step, applied left to right.
  std::vector<ConversionCertificate> chain;
  /// Cutpoint of the result matching cutpoint 0 (or the shift) of the source, if any.
  std::optional<Rational> cutpoint;
};

/// Conversion by target name: gfa, lrr, pfa, int-gfa or lrva. Sources are
/// routed through a GFA where needed; `shift` first moves the source cutpoint
/// to 0. Throws ConversionError for unsupported pairs.
ConvertedModel convert(const AnyModel& source, std::string_view target, const std::optional<Rational>& shift = std::nullopt);

/// Checks the certificate's value relation exactly on every unary word up to
/// `max_length`, or for larger alphabets on all short words plus a fixed
/// pseudo-random sample of words up to `max_length`.
bool check_certificate(const ConversionCertificate& cert, const AnyModel& source, const AnyModel& target,
                       std::size_t max_length = 30);

/// Words used by check_certificate, in shortlex order for the exhaustive part.
std::vector<std::string> sample_words(const std::string& alphabet, std::size_t max_length);

}  // namespace recaut
