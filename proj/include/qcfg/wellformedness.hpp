#pragma once

#include "qcfg/amplitude.hpp"
#include "qcfg/grammar.hpp"
#include "qcfg/reachability.hpp"

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

namespace qcfg {

/// The three well-formedness conditions:
///   row_norm               sum over R(A) of |c(A, beta)|^2 = 1
///   context_orthogonality  productions whose results collide on a reachable
///                          form have orthogonal amplitudes
///   length_orthogonality   rules of one nonterminal with right-hand sides of
///                          different length have orthogonal amplitudes
enum class Condition { row_norm, context_orthogonality, length_orthogonality };

/// strict: every pair must be orthogonal. aggregate: only the summed inner
/// product (per nonterminal for C3, per colliding form for C2) must vanish.
enum class CheckMode { strict, aggregate };

const char* condition_label(Condition c) noexcept;  // "C1", "C2", "C3"
const char* mode_name(CheckMode m) noexcept;

struct ConditionViolation {
  Condition condition = Condition::row_norm;
  std::string nonterminal;               // empty when the subject is a production pair
  std::vector<std::size_t> productions;  // production indices involved
  Complex measured;
  Complex expected;
  std::optional<SententialForm> witness;  // colliding form for C2
  std::string description;
};

struct Collision {
  SententialForm form;
  std::vector<std::pair<SententialForm, std::size_t>> parents;  // (parent form, production)
};

struct WellFormednessOptions {
  std::size_t max_len = 10;
  CheckMode mode = CheckMode::strict;
  double tolerance = kDefaultTolerance;
  /// Also test every pair of distinct productions for orthogonality, as if
  /// any two right-hand sides could collide in some context. Reported in
  /// structural_diagnostics only; never affects `passed`.
  bool structural_c2 = false;
};

struct WellFormednessReport {
  bool passed = true;
  std::vector<ConditionViolation> violations;
  std::size_t c2_search_bound = 0;
  /// The collision search discarded forms longer than the bound, so C2 is
  /// verified only up to c2_search_bound.
  bool c2_search_truncated = false;
  CheckMode mode = CheckMode::strict;
  std::vector<ConditionViolation> structural_diagnostics;
};

std::vector<ConditionViolation> check_row_norm(const QuantumGrammar& g,
                                               double tol = kDefaultTolerance);

std::vector<ConditionViolation> check_length_orthogonality(const QuantumGrammar& g,
                                                           CheckMode mode = CheckMode::strict,
                                                           double tol = kDefaultTolerance);

/// Forms of length <= max_len reached by two or more distinct (parent,
/// production) leftmost edges, with every such edge.
std::vector<Collision> find_reachable_collisions(const QuantumGrammar& g, std::size_t max_len);
std::vector<Collision> find_reachable_collisions(const ReachableGraph& graph);

std::vector<ConditionViolation> check_context_orthogonality(const QuantumGrammar& g,
                                                            std::size_t max_len,
                                                            CheckMode mode = CheckMode::strict,
                                                            double tol = kDefaultTolerance);

/// Every pair of distinct productions with non-orthogonal amplitudes.
std::vector<ConditionViolation> check_structural_orthogonality(const QuantumGrammar& g,
                                                               double tol = kDefaultTolerance);

WellFormednessReport check_all(const QuantumGrammar& g, const WellFormednessOptions& opts = {});

}  // namespace qcfg
