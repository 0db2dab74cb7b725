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

/// Emptiness questions about L(target, rel cutpoint). The kind fixes the
/// relation family: skolem uses =, positivity >= (or the mirrored <=),
/// strict positivity > (or <), exclusivity !=.
enum class ProblemKind { Skolem, Positivity, StrictPositivity, Exclusivity };

std::string_view problem_kind_name(ProblemKind kind);
/// Accepts skolem, positivity, strict-positivity (or strict_positivity), exclusivity.
ProblemKind parse_problem_kind(std::string_view text);
Relation default_relation(ProblemKind kind);
bool relation_matches(ProblemKind kind, Relation relation);

struct Problem {
  ProblemKind kind;
  ThresholdQuery query;
  AnyModel target;

  /// Throws InvalidProblemError when the relation does not belong to the
  /// kind, or when the cutpoint of a PFA/QFA problem lies outside [0, 1].
  static Problem make(ProblemKind kind, AnyModel target, Rational cutpoint,
                      std::optional<Relation> relation = std::nullopt, bool include_empty_word = true);
};

enum class Status { Decided, Unknown };
enum class Answer { Empty, NonEmpty };
enum class CertificateKind { BoundedWitness, ConstantCheck, Reachability, Powerset, PeriodicOrbit, Depth2Analysis };

std::string_view certificate_name(CertificateKind kind);

struct Verdict {
  Status status = Status::Unknown;
  std::optional<Answer> answer;
  /// Member of the language when answer is NonEmpty.
  std::optional<std::string> witness;
  CertificateKind certificate = CertificateKind::BoundedWitness;
  /// Largest index (unary) or number of words (otherwise) examined when Unknown.
  std::size_t searched_bound = 0;

  static Verdict empty(CertificateKind kind);
  static Verdict non_empty(std::string witness, CertificateKind kind);
  static Verdict unknown(std::size_t bound, CertificateKind kind = CertificateKind::BoundedWitness);

  bool decided() const { return status == Status::Decided; }
  bool is_empty() const { return answer == Answer::Empty; }
  bool is_non_empty() const { return answer == Answer::NonEmpty; }
  std::size_t witness_length() const { return witness ? witness->size() : 0; }
};

/// Exact unary GFA reading of a unary target, valid for every n >= 0
/// (companion form for recurrences, folded end-marker for PFA/QFA).
/// Returns nullopt for non-unary targets.
std::optional<Gfa> unary_gfa(const AnyModel& target);

/// The target as a scalar recurrence, exact for every n >= 0; nullopt when not unary.
std::optional<LinRec> unary_linrec(const AnyModel& target);

/// Semi-decision: examines n = 0..bound (1..bound without the empty word)
/// for unary targets, or the first `bound` words in shortlex order
/// otherwise. Never answers Empty.
Verdict bounded_search(const Problem& problem, std::size_t bound);

/// Always decides: u - lambda of depth d is identically zero on the domain
/// iff its first d terms there vanish.
Verdict decide_exclusivity(const Problem& problem);

enum class PfaBoundary { Gt0, Eq0, Eq1, Lt1 };

/// L(P, >0) by state reachability in the support graph; L(P, =0),
/// L(P, =1) and L(P, <1) by the subset construction over supports.
Verdict decide_pfa_boundary(const Pfa& p, PfaBoundary which, bool include_empty_word = true);

/// Any relation against cutpoint 0 or 1 through the subset construction.
Verdict decide_pfa_cutpoint(const Pfa& p, const ThresholdQuery& query);

struct PeriodicOrbit {
  std::size_t preperiod = 0;
  std::size_t period = 0;
  /// f A^n v_0 for n <= preperiod + period.
  std::vector<Rational> values;
};

/// Iterates the exact state vectors A^n v_0 (n <= cap) looking for a repeat.
std::optional<PeriodicOrbit> detect_periodic_orbit(const Gfa& g, std::size_t cap);

/// Decides any query over a periodic unary value sequence.
Verdict decide_on_orbit(const PeriodicOrbit& orbit, const ThresholdQuery& query, char symbol = 'a');

/// Exact sign analysis for recurrences whose shifted sequence u - lambda is a
/// depth <= 2 sequence, or one plus a constant (minimal depth 3 with 1 as a
/// simple characteristic root). Zero queries (relation =) on aperiodic
/// complex-root sequences return Unknown after searching n <= skolem_search_bound.
/// Throws InvalidProblemError outside that class.
Verdict decide_depth2(const LinRec& u, const ThresholdQuery& query, char symbol = 'a',
                      std::size_t skolem_search_bound = 10000);

/// Dispatcher. Tries, in order: the exclusivity decider, the PFA boundary
/// decider (cutpoint 0 or 1), the periodic-orbit detector, the depth-2
/// solver and finally bounded search with `budget`.
Verdict decide(const Problem& problem, std::size_t budget);

/// Soundness check: a NonEmpty witness must classify as a member; an Empty
/// verdict must survive bounded search up to `recheck_bound`.
bool check_verdict(const Problem& problem, const Verdict& verdict, std::size_t recheck_bound = 200);

}  // namespace recaut
