#pragma once

#include "qcfg/amplitude.hpp"

#include <compare>
#include <cstddef>
#include <functional>
#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace qcfg {

enum class SymbolKind { terminal, nonterminal };

/// A grammar symbol. Identity is the name; the kind is carried along so a
/// sentential form can be inspected without consulting the grammar.
struct Symbol {
  std::string name;
  SymbolKind kind = SymbolKind::terminal;

  bool is_terminal() const noexcept { return kind == SymbolKind::terminal; }
  bool is_nonterminal() const noexcept { return kind == SymbolKind::nonterminal; }

  friend bool operator==(const Symbol& a, const Symbol& b) noexcept {
    return a.name == b.name;
  }
  friend std::strong_ordering operator<=>(const Symbol& a, const Symbol& b) noexcept {
    return a.name <=> b.name;
  }
};

inline Symbol terminal(std::string name) { return {std::move(name), SymbolKind::terminal}; }
inline Symbol nonterminal(std::string name) {
  return {std::move(name), SymbolKind::nonterminal};
}

/// A finite sequence over N and T. The empty form is the empty word.
class SententialForm {
public:
  SententialForm() = default;
  explicit SententialForm(std::vector<Symbol> symbols) : s_(std::move(symbols)) {}
  SententialForm(std::initializer_list<Symbol> symbols) : s_(symbols) {}

  std::size_t size() const noexcept { return s_.size(); }
  bool empty() const noexcept { return s_.empty(); }
  const Symbol& operator[](std::size_t i) const { return s_[i]; }
  std::span<const Symbol> symbols() const noexcept { return s_; }
  auto begin() const noexcept { return s_.begin(); }
  auto end() const noexcept { return s_.end(); }

  /// Index of the leftmost nonterminal, if any.
  std::optional<std::size_t> leftmost_nonterminal() const noexcept;
  std::size_t count_terminals() const noexcept;
  std::size_t count(const Symbol& sym) const noexcept;
  bool contains(const Symbol& sym) const noexcept;

  /// Concatenated names; names are space separated when any is longer than
  /// one character, so the rendering stays unambiguous.
  std::string to_string() const;

  friend bool operator==(const SententialForm&, const SententialForm&) = default;
  friend auto operator<=>(const SententialForm&, const SententialForm&) = default;

private:
  std::vector<Symbol> s_;
};

/// True iff the form contains no nonterminal (a word of T*).
bool is_word(const SententialForm& s) noexcept;

struct Production {
  Symbol lhs;
  std::vector<Symbol> rhs;
  AmplitudeVector amplitude;

  /// "I -> a I B"; an empty right-hand side renders as "I -> ε".
  std::string to_string() const;
};

enum class Severity { error, warning };

struct ValidationIssue {
  Severity severity = Severity::error;
  std::optional<std::size_t> production;  // index into productions()
  std::string symbol;
  std::string message;
};

struct ValidationReport {
  std::vector<ValidationIssue> issues;

  bool ok() const noexcept;  // no error-severity issue
  std::size_t error_count() const noexcept;
  std::size_t warning_count() const noexcept;
};

class UnknownSymbol : public std::invalid_argument {
public:
  explicit UnknownSymbol(const std::string& name)
      : std::invalid_argument("unknown symbol '" + name + "'") {}
};

/// G = (N, T, I, P) with amplitude dimension n. Construction never throws on
/// structural problems; call validate() to get them as data.
class QuantumGrammar {
public:
  QuantumGrammar() = default;
  QuantumGrammar(std::size_t dimension, Symbol start, std::vector<Symbol> nonterminals,
                 std::vector<Symbol> terminals, std::vector<Production> productions);

  /// Convenience for hand-built grammars: rule right-hand sides are given as
  /// whitespace separated names and resolved against the declared alphabets.
  struct RuleSpec {
    std::string lhs;
    std::string rhs;
    AmplitudeVector amplitude;
  };
  static QuantumGrammar from_rules(std::size_t dimension, const std::string& start,
                                   const std::vector<std::string>& nonterminals,
                                   const std::vector<std::string>& terminals,
                                   const std::vector<RuleSpec>& rules);

  std::size_t dimension() const noexcept { return dimension_; }
  const Symbol& start() const noexcept { return start_; }
  std::span<const Symbol> nonterminals() const noexcept { return nonterminals_; }
  std::span<const Symbol> terminals() const noexcept { return terminals_; }
  std::span<const Production> productions() const noexcept { return productions_; }
  const Production& production(std::size_t i) const { return productions_.at(i); }

  bool has_nonterminal(std::string_view name) const noexcept;
  bool has_terminal(std::string_view name) const noexcept;
  /// Resolve a name to a declared symbol.
  std::optional<Symbol> lookup(std::string_view name) const;

  /// Indices of the productions with lhs == a, in declaration order. Empty for
  /// a nonterminal without rules.
  /// Throws UnknownSymbol if a is not a declared nonterminal.
  std::span<const std::size_t> rule_indices(const Symbol& a) const;

  bool has_epsilon_rule() const noexcept;
  /// Some nonterminal derives itself through unit productions (A -> B -> ... -> A).
  bool has_unit_cycle() const;

  SententialForm start_form() const { return SententialForm{start_}; }

  /// Split text into declared symbols. Whitespace-separated tokens are
  /// resolved by name; a token that is not a symbol name is split by longest
  /// match over the declared names. Throws UnknownSymbol on failure.
  SententialForm parse_form(std::string_view text) const;

  /// Symbols, start, dimension and rule order equal; amplitudes within tol.
  bool approx_equal(const QuantumGrammar& other, double tol = kDefaultTolerance) const;

private:
  void build_index();

  std::size_t dimension_ = 0;
  Symbol start_;
  std::vector<Symbol> nonterminals_;
  std::vector<Symbol> terminals_;
  std::vector<Production> productions_;
  std::map<std::string, std::vector<std::size_t>, std::less<>> by_lhs_;
};

ValidationReport validate(const QuantumGrammar& g);

/// Productions with lhs == a, in declaration order (the set R(A) with the
/// amplitudes attached). Throws UnknownSymbol for an undeclared nonterminal.
std::vector<std::reference_wrapper<const Production>> rules_for(const QuantumGrammar& g,
                                                                 const Symbol& a);

}  // namespace qcfg

template <>
struct std::hash<qcfg::SententialForm> {
  std::size_t operator()(const qcfg::SententialForm& s) const noexcept;
};
