#include "qcfg/format.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <optional>
#include <set>
#include <sstream>

namespace qcfg {

FormatError::FormatError(std::size_t line, std::size_t column, const std::string& message)
    : std::runtime_error([&] {
        std::string where;
        if (line) {
          where = "line " + std::to_string(line);
          if (column) where += ", column " + std::to_string(column);
          where += ": ";
        } else if (column) {
          where = "column " + std::to_string(column) + ": ";
        }
        return where + message;
      }()),
      line_(line),
      column_(column),
      message_(message) {}

// ---------------------------------------------------------------------------
// Expression parser: recursive descent over
//   expr    := term (('+' | '-') term)*
//   term    := unary (('*' | '/') unary)*
//   unary   := ('-' | '+') unary | primary
//   primary := number | 'i' | 'sqrt' '(' expr ')' | '(' expr ')'

namespace {

using Expr = AmplitudeExpression;

class ExprParser {
public:
  ExprParser(std::string_view text, std::size_t line, std::size_t column_offset)
      : text_(text), line_(line), offset_(column_offset) {}

  Expr parse() {
    skip_ws();
    if (at_end()) fail("empty amplitude expression");
    Expr e = expr();
    skip_ws();
    if (!at_end()) fail(std::string("unexpected '") + text_[pos_] + "'");
    return e;
  }

private:
  [[noreturn]] void fail(const std::string& msg) const {
    throw FormatError(line_, offset_ + pos_ + 1, msg);
  }

  bool at_end() const { return pos_ >= text_.size(); }

  void skip_ws() {
    while (!at_end() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip_ws();
    if (!at_end() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  std::size_t column() const { return offset_ + pos_ + 1; }

  static Expr binary(Expr::Op op, Expr lhs, Expr rhs, std::size_t col) {
    Expr e;
    e.column = col;
    e.node = Expr::Binary{op, std::make_unique<Expr>(std::move(lhs)),
                          std::make_unique<Expr>(std::move(rhs))};
    return e;
  }

  Expr expr() {
    Expr lhs = term();
    for (;;) {
      skip_ws();
      const std::size_t col = column();
      if (accept('+')) {
        lhs = binary(Expr::Op::add, std::move(lhs), term(), col);
      } else if (accept('-')) {
        lhs = binary(Expr::Op::sub, std::move(lhs), term(), col);
      } else {
        return lhs;
      }
    }
  }

  Expr term() {
    Expr lhs = unary();
    for (;;) {
      skip_ws();
      const std::size_t col = column();
      if (accept('*')) {
        lhs = binary(Expr::Op::mul, std::move(lhs), unary(), col);
      } else if (accept('/')) {
        lhs = binary(Expr::Op::div, std::move(lhs), unary(), col);
      } else {
        return lhs;
      }
    }
  }

  Expr unary() {
    skip_ws();
    const std::size_t col = column();
    if (accept('-')) {
      Expr e;
      e.column = col;
      e.node = Expr::Negate{std::make_unique<Expr>(unary())};
      return e;
    }
    if (accept('+')) return unary();
    return primary();
  }

  Expr primary() {
    skip_ws();
    if (at_end()) fail("expected a value");
    const std::size_t col = column();
    const char c = text_[pos_];

    if (c == '(') {
      ++pos_;
      Expr inner = expr();
      if (!accept(')')) fail("expected ')'");
      return inner;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return number();
    if (std::isalpha(static_cast<unsigned char>(c))) {
      std::size_t end = pos_;
      while (end < text_.size() && std::isalnum(static_cast<unsigned char>(text_[end]))) ++end;
      const std::string_view word = text_.substr(pos_, end - pos_);
      if (word == "i") {
        pos_ = end;
        Expr e;
        e.column = col;
        e.node = Expr::Literal{Complex{0.0, 1.0}};
        return e;
      }
      if (word == "sqrt") {
        pos_ = end;
        if (!accept('(')) fail("expected '(' after sqrt");
        Expr arg = expr();
        if (!accept(')')) fail("expected ')' to close sqrt");
        Expr e;
        e.column = col;
        e.node = Expr::Sqrt{std::make_unique<Expr>(std::move(arg))};
        return e;
      }
      fail("unknown identifier '" + std::string(word) + "'");
    }
    fail(std::string("unexpected '") + c + "'");
  }

  Expr number() {
    const std::size_t col = column();
    std::size_t end = pos_;
    auto digits = [&] {
      while (end < text_.size() && std::isdigit(static_cast<unsigned char>(text_[end]))) ++end;
    };
    digits();
    if (end < text_.size() && text_[end] == '.') {
      ++end;
      digits();
    }
    if (end < text_.size() && (text_[end] == 'e' || text_[end] == 'E')) {
      std::size_t exp = end + 1;
      if (exp < text_.size() && (text_[exp] == '+' || text_[exp] == '-')) ++exp;
      if (exp < text_.size() && std::isdigit(static_cast<unsigned char>(text_[exp]))) {
        end = exp;
        digits();
      }
    }
    double value = 0.0;
    const auto* first = text_.data() + pos_;
    const auto* last = text_.data() + end;
    const auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc{} || ptr != last) fail("malformed number");
    pos_ = end;
    Expr e;
    e.column = col;
    e.node = Expr::Literal{Complex{value, 0.0}};
    return e;
  }

  std::string_view text_;
  std::size_t line_;
  std::size_t offset_;
  std::size_t pos_ = 0;
};

}  // namespace

AmplitudeExpression parse_amplitude_expr(std::string_view text, std::size_t line,
                                         std::size_t column_offset) {
  return ExprParser(text, line, column_offset).parse();
}

Complex eval_amplitude_expr(const AmplitudeExpression& e, std::size_t line) {
  struct Visitor {
    std::size_t line;
    std::size_t column;

    Complex operator()(const Expr::Literal& lit) const { return lit.value; }
    Complex operator()(const Expr::Negate& n) const {
      return -eval_amplitude_expr(*n.operand, line);
    }
    Complex operator()(const Expr::Sqrt& s) const {
      const Complex arg = eval_amplitude_expr(*s.operand, line);
      if (arg.imag() != 0.0 || arg.real() < 0.0) {
        throw FormatError(line, column, "sqrt of a negative or complex value");
      }
      return Complex{std::sqrt(arg.real()), 0.0};
    }
    Complex operator()(const Expr::Binary& b) const {
      const Complex l = eval_amplitude_expr(*b.lhs, line);
      const Complex r = eval_amplitude_expr(*b.rhs, line);
      switch (b.op) {
        case Expr::Op::add: return l + r;
        case Expr::Op::sub: return l - r;
        case Expr::Op::mul: return l * r;
        case Expr::Op::div:
          if (r == Complex{}) throw FormatError(line, column, "division by zero");
          return l / r;
      }
      return {};
    }
  };
  const Complex v = std::visit(Visitor{line, e.column}, e.node);
  if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) {
    throw FormatError(line, e.column, "amplitude expression is not finite");
  }
  return v;
}

Complex eval_amplitude_expr(std::string_view text) {
  return eval_amplitude_expr(parse_amplitude_expr(text));
}

// ---------------------------------------------------------------------------
// Grammar files

namespace {

struct Token {
  std::string text;
  std::size_t column;  // 1-based
};

std::vector<Token> split_words(std::string_view s, std::size_t base) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
    if (i >= s.size()) break;
    std::size_t j = i;
    while (j < s.size() && !std::isspace(static_cast<unsigned char>(s[j]))) ++j;
    out.push_back({std::string(s.substr(i, j - i)), base + i + 1});
    i = j;
  }
  return out;
}

struct RawRule {
  std::size_t line;
  Token lhs;
  std::vector<Token> rhs;
  AmplitudeVector amplitude;
};

bool valid_identifier(std::string_view name) {
  if (name.empty()) return false;
  for (char c : name) {
    if (std::isspace(static_cast<unsigned char>(c)) || c == '#' || c == ':' || c == '[' ||
        c == ']' || c == ',') {
      return false;
    }
  }
  return name != "->";
}

RawRule parse_rule_line(std::string_view line, std::size_t lineno, std::size_t body_start) {
  const std::string_view body = line.substr(body_start);
  const auto colon = body.find(':');
  if (colon == std::string_view::npos) {
    throw FormatError(lineno, body_start + 1, "rule is missing ':' before its amplitudes");
  }
  auto head = split_words(body.substr(0, colon), body_start);
  if (head.size() < 2 || head[1].text != "->") {
    throw FormatError(lineno, body_start + 1, "rule must have the form 'rule X -> ... : [...]'");
  }
  RawRule rule;
  rule.line = lineno;
  rule.lhs = head[0];
  for (std::size_t k = 2; k < head.size(); ++k) {
    if (!valid_identifier(head[k].text) || head[k].text == "->") {
      throw FormatError(lineno, head[k].column, "bad symbol '" + head[k].text + "'");
    }
    rule.rhs.push_back(head[k]);
  }

  const std::size_t list_base = body_start + colon + 1;
  const std::string_view list = body.substr(colon + 1);
  const auto open = list.find('[');
  const auto close = list.rfind(']');
  if (open == std::string_view::npos || close == std::string_view::npos || close < open) {
    throw FormatError(lineno, list_base + 1, "amplitudes must be a bracketed list '[...]'");
  }
  for (std::size_t k = 0; k < open; ++k) {
    if (!std::isspace(static_cast<unsigned char>(list[k]))) {
      throw FormatError(lineno, list_base + k + 1, "unexpected text before '['");
    }
  }
  for (std::size_t k = close + 1; k < list.size(); ++k) {
    if (!std::isspace(static_cast<unsigned char>(list[k]))) {
      throw FormatError(lineno, list_base + k + 1, "unexpected text after ']'");
    }
  }

  const std::string_view inner = list.substr(open + 1, close - open - 1);
  const std::size_t inner_base = list_base + open + 1;
  std::vector<Complex> values;
  std::size_t start = 0;
  int depth = 0;
  for (std::size_t k = 0; k <= inner.size(); ++k) {
    if (k < inner.size()) {
      if (inner[k] == '(') ++depth;
      if (inner[k] == ')') --depth;
      if (inner[k] != ',' || depth != 0) continue;
    }
    const auto piece = inner.substr(start, k - start);
    const bool blank = piece.find_first_not_of(" \t\r") == std::string_view::npos;
    if (blank && k == inner.size() && values.empty()) break;  // "[]"
    if (blank) throw FormatError(lineno, inner_base + start + 1, "empty amplitude entry");
    values.push_back(
        eval_amplitude_expr(parse_amplitude_expr(piece, lineno, inner_base + start), lineno));
    start = k + 1;
  }
  rule.amplitude = AmplitudeVector(std::move(values));
  return rule;
}

}  // namespace

QuantumGrammar parse_grammar(std::string_view text) {
  std::optional<std::size_t> dimension;
  std::optional<Token> start;
  std::optional<std::vector<Token>> terminals;
  std::optional<std::vector<Token>> nonterminals;
  std::vector<RawRule> rules;

  std::size_t lineno = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto nl = text.find('\n', pos);
    std::string_view line = text.substr(pos, nl == std::string_view::npos ? text.size() - pos
                                                                          : nl - pos);
    pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
    ++lineno;

    if (const auto hash = line.find('#'); hash != std::string_view::npos) {
      line = line.substr(0, hash);
    }
    const auto words = split_words(line, 0);
    if (words.empty()) continue;
    const std::string& directive = words[0].text;

    auto once = [&](bool already) {
      if (already) {
        throw FormatError(lineno, words[0].column, "duplicate '" + directive + "' directive");
      }
    };

    if (directive == "dimension") {
      once(dimension.has_value());
      if (words.size() != 2) throw FormatError(lineno, words[0].column, "expected 'dimension N'");
      std::size_t n = 0;
      const auto& w = words[1].text;
      const auto [ptr, ec] = std::from_chars(w.data(), w.data() + w.size(), n);
      if (ec != std::errc{} || ptr != w.data() + w.size() || n == 0) {
        throw FormatError(lineno, words[1].column, "dimension must be a positive integer");
      }
      dimension = n;
    } else if (directive == "start") {
      once(start.has_value());
      if (words.size() != 2) throw FormatError(lineno, words[0].column, "expected 'start X'");
      start = words[1];
    } else if (directive == "terminals" || directive == "nonterminals") {
      auto& slot = directive == "terminals" ? terminals : nonterminals;
      once(slot.has_value());
      std::vector<Token> names(words.begin() + 1, words.end());
      for (const auto& t : names) {
        if (!valid_identifier(t.text)) {
          throw FormatError(lineno, t.column, "bad symbol name '" + t.text + "'");
        }
      }
      slot = std::move(names);
    } else if (directive == "rule") {
      rules.push_back(parse_rule_line(line, lineno, words[0].column - 1 + directive.size()));
    } else {
      throw FormatError(lineno, words[0].column, "unknown directive '" + directive + "'");
    }
  }

  if (!dimension) throw FormatError(0, 0, "missing 'dimension' directive");
  if (!start) throw FormatError(0, 0, "missing 'start' directive");

  // Resolve alphabets.
  std::vector<std::string> nt_names;
  std::vector<std::string> t_names;
  std::set<std::string> nt_set;
  std::set<std::string> t_set;
  const bool declared_nts = nonterminals.has_value();
  const bool declared_ts = terminals.has_value();
  if (declared_nts) {
    for (const auto& t : *nonterminals) {
      nt_names.push_back(t.text);
      nt_set.insert(t.text);
    }
  } else {
    auto add = [&](const std::string& n) {
      if (nt_set.insert(n).second) nt_names.push_back(n);
    };
    add(start->text);
    for (const auto& r : rules) add(r.lhs.text);
  }
  if (declared_ts) {
    for (const auto& t : *terminals) {
      t_names.push_back(t.text);
      t_set.insert(t.text);
    }
  } else {
    for (const auto& r : rules) {
      for (const auto& s : r.rhs) {
        if (!nt_set.contains(s.text) && t_set.insert(s.text).second) t_names.push_back(s.text);
      }
    }
  }
  for (const auto& n : nt_names) {
    if (t_set.contains(n)) {
      throw FormatError(0, 0, "symbol '" + n + "' declared as both terminal and nonterminal");
    }
  }
  if (!nt_set.contains(start->text)) {
    throw FormatError(0, 0, "start symbol '" + start->text + "' is not a declared nonterminal");
  }

  std::vector<Production> prods;
  for (const auto& r : rules) {
    if (!nt_set.contains(r.lhs.text)) {
      throw FormatError(r.line, r.lhs.column,
                        "rule left-hand side '" + r.lhs.text + "' is not a declared nonterminal");
    }
    Production p;
    p.lhs = nonterminal(r.lhs.text);
    for (const auto& s : r.rhs) {
      if (nt_set.contains(s.text)) {
        p.rhs.push_back(nonterminal(s.text));
      } else if (t_set.contains(s.text)) {
        p.rhs.push_back(terminal(s.text));
      } else {
        throw FormatError(r.line, s.column, "undeclared symbol '" + s.text + "'");
      }
    }
    p.amplitude = r.amplitude;
    if (p.amplitude.size() != *dimension) {
      throw FormatError(r.line, r.lhs.column,
                        "rule " + p.to_string() + " has " + std::to_string(p.amplitude.size()) +
                            " amplitude entries but dimension is " +
                            std::to_string(*dimension));
    }
    prods.push_back(std::move(p));
  }

  std::vector<Symbol> nts;
  std::vector<Symbol> ts;
  for (const auto& n : nt_names) nts.push_back(nonterminal(n));
  for (const auto& t : t_names) ts.push_back(terminal(t));
  QuantumGrammar g(*dimension, nonterminal(start->text), std::move(nts), std::move(ts),
                   std::move(prods));

  const auto report = validate(g);
  for (const auto& issue : report.issues) {
    if (issue.severity != Severity::error) continue;
    std::size_t line = 0;
    if (issue.production && *issue.production < rules.size()) {
      line = rules[*issue.production].line;
    }
    throw FormatError(line, 0, issue.message);
  }
  return g;
}

QuantumGrammar load_grammar(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FormatError(0, 0, "cannot open grammar file '" + path.string() + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_grammar(ss.str());
}

namespace {

std::string decimal17(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

}  // namespace

std::string format_amplitude_literal(Complex z) {
  const double re = z.real();
  const double im = z.imag();
  if (im == 0.0) return decimal17(re);
  if (re == 0.0) return decimal17(im) + "*i";
  return decimal17(re) + (std::signbit(im) ? " - " : " + ") + decimal17(std::abs(im)) + "*i";
}

std::string serialize_grammar(const QuantumGrammar& g) {
  std::ostringstream out;
  out << "dimension " << g.dimension() << '\n';
  out << "start " << g.start().name << '\n';
  out << "terminals";
  for (const auto& t : g.terminals()) out << ' ' << t.name;
  out << '\n';
  out << "nonterminals";
  for (const auto& n : g.nonterminals()) out << ' ' << n.name;
  out << '\n';
  for (const auto& p : g.productions()) {
    out << "rule " << p.lhs.name << " ->";
    for (const auto& s : p.rhs) out << ' ' << s.name;
    out << " : [";
    for (std::size_t k = 0; k < p.amplitude.size(); ++k) {
      if (k) out << ", ";
      out << format_amplitude_literal(p.amplitude[k]);
    }
    out << "]\n";
  }
  return out.str();
}

}  // namespace qcfg
