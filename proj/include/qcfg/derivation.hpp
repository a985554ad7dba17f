#pragma once

#include "qcfg/amplitude.hpp"
#include "qcfg/grammar.hpp"

#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

namespace qcfg {

/// One rewrite: the production at `production` (index into the grammar's
/// production list) applied to the symbol at `position`.
struct DerivationStep {
  std::size_t production = 0;
  std::size_t position = 0;

  friend bool operator==(const DerivationStep&, const DerivationStep&) = default;
};

struct Derivation {
  SententialForm start;
  std::vector<DerivationStep> steps;
  SententialForm end;
};

struct DerivationLimits {
  /// Upper bound on derivation length. Required when the grammar has an
  /// epsilon rule or a unit cycle, since then one form can have infinitely
  /// many derivations.
  std::optional<std::size_t> max_steps;
};

class DerivationError : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

/// s with s[pos] replaced by p.rhs. Throws std::out_of_range for a bad
/// position and DerivationError when s[pos] != p.lhs.
SententialForm apply_production(const SententialForm& s, const Production& p, std::size_t pos);

struct Successor {
  std::size_t production;
  SententialForm form;
};

/// One entry per rule of the leftmost nonterminal, in declaration order.
/// Empty for a word.
std::vector<Successor> leftmost_successors(const QuantumGrammar& g, const SententialForm& s);

/// Every intermediate form of d, starting with d.start. Throws
/// DerivationError if a step does not apply.
std::vector<SententialForm> replay(const QuantumGrammar& g, const Derivation& d);

/// True iff d replays to d.end and every step rewrites the leftmost nonterminal.
bool is_leftmost_derivation(const QuantumGrammar& g, const Derivation& d);

struct EnumerationResult {
  std::vector<Derivation> derivations;
  /// False when the step cap cut off a branch that could still reach the target.
  bool complete = true;
};

/// All leftmost derivations start -> target within the step cap, ordered
/// lexicographically by the rule indices used.
EnumerationResult enumerate_derivations(const QuantumGrammar& g, const SententialForm& target,
                                        const DerivationLimits& limits = {});

/// Component-wise product of the step amplitudes; all-ones for an empty chain.
AmplitudeVector derivation_amplitude(const QuantumGrammar& g, const Derivation& d);

struct AmplitudeResult {
  AmplitudeVector amplitude;
  std::uint64_t derivations = 0;
  bool complete = true;
};

/// c(I =>* target): the sum of derivation amplitudes over all leftmost
/// derivations, computed by memoised recursion on (unexpanded suffix,
/// unmatched target suffix). Works for targets containing nonterminals.
AmplitudeResult sentential_amplitude(const QuantumGrammar& g, const SententialForm& target,
                                     const DerivationLimits& limits = {});

struct ProbabilityResult {
  double probability = 0.0;
  AmplitudeVector amplitude;
  std::uint64_t derivations = 0;
  bool complete = true;
};

/// f(w) = sum_k |c_k(w)|^2. Throws DerivationError if w is not a word.
ProbabilityResult word_probability(const QuantumGrammar& g, const SententialForm& w,
                                   const DerivationLimits& limits = {});

}  // namespace qcfg
