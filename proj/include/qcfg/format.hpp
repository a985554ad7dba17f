#pragma once

#include "qcfg/amplitude.hpp"
#include "qcfg/grammar.hpp"

#include <cstddef>
#include <filesystem>
#include <memory>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace qcfg {

/// Diagnostic for grammar files and amplitude expressions. Line and column
/// are 1-based; 0 means "not tied to a location".
class FormatError : public std::runtime_error {
public:
  FormatError(std::size_t line, std::size_t column, const std::string& message);

  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }
  const std::string& message() const noexcept { return message_; }

private:
  std::size_t line_;
  std::size_t column_;
  std::string message_;
};

// ---------------------------------------------------------------------------
// Amplitude expressions: numeric literals, the imaginary unit `i`, unary
// minus/plus, + - * /, sqrt(...) and parentheses.

struct AmplitudeExpression {
  enum class Op { add, sub, mul, div };
  struct Literal {
    Complex value;
  };
  struct Negate {
    std::unique_ptr<AmplitudeExpression> operand;
  };
  struct Sqrt {
    std::unique_ptr<AmplitudeExpression> operand;
  };
  struct Binary {
    Op op;
    std::unique_ptr<AmplitudeExpression> lhs;
    std::unique_ptr<AmplitudeExpression> rhs;
  };

  std::variant<Literal, Negate, Sqrt, Binary> node;
  std::size_t column = 0;  // position of the node in the source text
};

/// Parse an expression. `line` and `column_offset` place diagnostics inside a
/// larger file.
AmplitudeExpression parse_amplitude_expr(std::string_view text, std::size_t line = 0,
                                         std::size_t column_offset = 0);

/// Throws FormatError on division by zero or sqrt of a negative / complex value.
Complex eval_amplitude_expr(const AmplitudeExpression& e, std::size_t line = 0);
Complex eval_amplitude_expr(std::string_view text);

// ---------------------------------------------------------------------------
// Grammar files
//
//   dimension 4
//   start I
//   terminals a b
//   nonterminals I A B
//   rule I -> a I B : [1/(2*sqrt(3)), 1/(2*sqrt(3)), 1/(2*sqrt(3)), 1/(2*sqrt(3))]
//   rule X -> : [1]          # empty right-hand side
//
// `dimension` and `start` are required. When `nonterminals` is omitted the
// left-hand sides (and the start symbol) are taken, in order of appearance;
// when `terminals` is omitted every other symbol used in a rule is a terminal.

/// Returns a grammar that passed validate() (warnings allowed).
QuantumGrammar parse_grammar(std::string_view text);
QuantumGrammar load_grammar(const std::filesystem::path& path);

/// Line-oriented text that parse_grammar reads back to an equal grammar.
/// Amplitudes are written as decimal literals with 17 significant digits.
std::string serialize_grammar(const QuantumGrammar& g);

/// Decimal rendering of a complex value as an amplitude expression, e.g.
/// "0.5", "-0.5*i", "0.25 - 0.75*i".
std::string format_amplitude_literal(Complex z);

}  // namespace qcfg
