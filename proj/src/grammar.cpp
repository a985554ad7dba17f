#include "qcfg/grammar.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace qcfg {

// ---------------------------------------------------------------------------
// SententialForm

std::optional<std::size_t> SententialForm::leftmost_nonterminal() const noexcept {
  for (std::size_t i = 0; i < s_.size(); ++i) {
    if (s_[i].is_nonterminal()) return i;
  }
  return std::nullopt;
}

std::size_t SententialForm::count_terminals() const noexcept {
  return static_cast<std::size_t>(
      std::count_if(s_.begin(), s_.end(), [](const Symbol& x) { return x.is_terminal(); }));
}

std::size_t SententialForm::count(const Symbol& sym) const noexcept {
  return static_cast<std::size_t>(std::count(s_.begin(), s_.end(), sym));
}

bool SententialForm::contains(const Symbol& sym) const noexcept {
  return std::find(s_.begin(), s_.end(), sym) != s_.end();
}

std::string SententialForm::to_string() const {
  const bool spaced = std::any_of(s_.begin(), s_.end(),
                                  [](const Symbol& x) { return x.name.size() != 1; });
  std::string out;
  for (std::size_t i = 0; i < s_.size(); ++i) {
    if (spaced && i) out += ' ';
    out += s_[i].name;
  }
  return out;
}

bool is_word(const SententialForm& s) noexcept {
  return !s.leftmost_nonterminal().has_value();
}

std::string Production::to_string() const {
  std::string out = lhs.name + " ->";
  if (rhs.empty()) return out + " ε";
  for (const auto& s : rhs) out += " " + s.name;
  return out;
}

// ---------------------------------------------------------------------------
// ValidationReport

bool ValidationReport::ok() const noexcept { return error_count() == 0; }

std::size_t ValidationReport::error_count() const noexcept {
  return static_cast<std::size_t>(std::count_if(
      issues.begin(), issues.end(), [](const auto& i) { return i.severity == Severity::error; }));
}

std::size_t ValidationReport::warning_count() const noexcept {
  return issues.size() - error_count();
}

// ---------------------------------------------------------------------------
// QuantumGrammar

QuantumGrammar::QuantumGrammar(std::size_t dimension, Symbol start,
                               std::vector<Symbol> nonterminals, std::vector<Symbol> terminals,
                               std::vector<Production> productions)
    : dimension_(dimension),
      start_(std::move(start)),
      nonterminals_(std::move(nonterminals)),
      terminals_(std::move(terminals)),
      productions_(std::move(productions)) {
  build_index();
}

QuantumGrammar QuantumGrammar::from_rules(std::size_t dimension, const std::string& start,
                                          const std::vector<std::string>& nonterminals,
                                          const std::vector<std::string>& terminals,
                                          const std::vector<RuleSpec>& rules) {
  std::vector<Symbol> nts;
  std::vector<Symbol> ts;
  for (const auto& n : nonterminals) nts.push_back(nonterminal(n));
  for (const auto& t : terminals) ts.push_back(terminal(t));
  const std::set<std::string> nt_names(nonterminals.begin(), nonterminals.end());
  auto resolve = [&](const std::string& name) {
    return nt_names.contains(name) ? nonterminal(name) : terminal(name);
  };

  std::vector<Production> prods;
  for (const auto& r : rules) {
    Production p;
    p.lhs = resolve(r.lhs);
    std::istringstream is(r.rhs);
    for (std::string tok; is >> tok;) p.rhs.push_back(resolve(tok));
    p.amplitude = r.amplitude;
    prods.push_back(std::move(p));
  }
  return QuantumGrammar(dimension, resolve(start), std::move(nts), std::move(ts),
                        std::move(prods));
}

void QuantumGrammar::build_index() {
  by_lhs_.clear();
  for (const auto& n : nonterminals_) by_lhs_[n.name];
  for (std::size_t i = 0; i < productions_.size(); ++i) {
    by_lhs_[productions_[i].lhs.name].push_back(i);
  }
}

bool QuantumGrammar::has_nonterminal(std::string_view name) const noexcept {
  return std::any_of(nonterminals_.begin(), nonterminals_.end(),
                     [&](const Symbol& s) { return s.name == name; });
}

bool QuantumGrammar::has_terminal(std::string_view name) const noexcept {
  return std::any_of(terminals_.begin(), terminals_.end(),
                     [&](const Symbol& s) { return s.name == name; });
}

std::optional<Symbol> QuantumGrammar::lookup(std::string_view name) const {
  if (has_nonterminal(name)) return nonterminal(std::string(name));
  if (has_terminal(name)) return terminal(std::string(name));
  return std::nullopt;
}

std::span<const std::size_t> QuantumGrammar::rule_indices(const Symbol& a) const {
  if (!has_nonterminal(a.name)) throw UnknownSymbol(a.name);
  const auto it = by_lhs_.find(a.name);
  return it->second;
}

bool QuantumGrammar::has_epsilon_rule() const noexcept {
  return std::any_of(productions_.begin(), productions_.end(),
                     [](const Production& p) { return p.rhs.empty(); });
}

bool QuantumGrammar::has_unit_cycle() const {
  // Unit edges A -> B; look for a cycle with a colouring DFS.
  std::map<std::string, std::vector<std::string>> edges;
  for (const auto& p : productions_) {
    if (p.rhs.size() == 1 && p.rhs[0].is_nonterminal()) {
      edges[p.lhs.name].push_back(p.rhs[0].name);
    }
  }
  std::map<std::string, int> colour;  // 0 white, 1 grey, 2 black
  std::function<bool(const std::string&)> visit = [&](const std::string& v) {
    colour[v] = 1;
    for (const auto& w : edges[v]) {
      if (colour[w] == 1) return true;
      if (colour[w] == 0 && visit(w)) return true;
    }
    colour[v] = 2;
    return false;
  };
  for (const auto& [v, _] : edges) {
    if (colour[v] == 0 && visit(v)) return true;
  }
  return false;
}

SententialForm QuantumGrammar::parse_form(std::string_view text) const {
  std::vector<Symbol> out;
  std::istringstream is{std::string(text)};
  for (std::string tok; is >> tok;) {
    if (auto sym = lookup(tok)) {
      out.push_back(*sym);
      continue;
    }
    std::size_t pos = 0;
    while (pos < tok.size()) {
      std::optional<Symbol> best;
      for (auto alphabet : {std::span<const Symbol>(nonterminals_),
                            std::span<const Symbol>(terminals_)}) {
        for (const auto& s : alphabet) {
          if (tok.compare(pos, s.name.size(), s.name) == 0 &&
              (!best || s.name.size() > best->name.size())) {
            best = s;
          }
        }
      }
      if (!best || best->name.empty()) throw UnknownSymbol(tok.substr(pos));
      out.push_back(*best);
      pos += best->name.size();
    }
  }
  return SententialForm(std::move(out));
}

bool QuantumGrammar::approx_equal(const QuantumGrammar& other, double tol) const {
  auto same_kinds = [](std::span<const Symbol> a, std::span<const Symbol> b) {
    return std::equal(a.begin(), a.end(), b.begin(), b.end(),
                      [](const Symbol& x, const Symbol& y) {
                        return x.name == y.name && x.kind == y.kind;
                      });
  };
  if (dimension_ != other.dimension_ || !(start_ == other.start_) ||
      !same_kinds(nonterminals_, other.nonterminals_) ||
      !same_kinds(terminals_, other.terminals_) ||
      productions_.size() != other.productions_.size()) {
    return false;
  }
  for (std::size_t i = 0; i < productions_.size(); ++i) {
    const auto& p = productions_[i];
    const auto& q = other.productions_[i];
    if (!(p.lhs == q.lhs) || !same_kinds(p.rhs, q.rhs) ||
        !approx_eq(p.amplitude, q.amplitude, tol)) {
      return false;
    }
  }
  return true;
}

// ---------------------------------------------------------------------------

ValidationReport validate(const QuantumGrammar& g) {
  ValidationReport report;
  auto error = [&](std::optional<std::size_t> prod, std::string sym, std::string msg) {
    report.issues.push_back({Severity::error, prod, std::move(sym), std::move(msg)});
  };

  if (g.dimension() == 0) error(std::nullopt, "", "dimension must be at least 1");

  std::set<std::string> seen;
  for (auto alphabet : {g.nonterminals(), g.terminals()}) {
    for (const auto& s : alphabet) {
      if (s.name.empty()) {
        error(std::nullopt, s.name, "empty symbol name");
      } else if (!seen.insert(s.name).second) {
        error(std::nullopt, s.name, "symbol '" + s.name + "' declared more than once");
      }
    }
  }

  if (!g.has_nonterminal(g.start().name)) {
    error(std::nullopt, g.start().name,
          "start symbol '" + g.start().name + "' is not a declared nonterminal");
  }

  auto check_symbol = [&](std::size_t i, const Symbol& s) {
    const bool declared = s.is_nonterminal() ? g.has_nonterminal(s.name) : g.has_terminal(s.name);
    if (!declared) {
      error(i, s.name, "production " + std::to_string(i) + " uses undeclared symbol '" +
                           s.name + "'");
    }
  };

  const auto prods = g.productions();
  for (std::size_t i = 0; i < prods.size(); ++i) {
    const auto& p = prods[i];
    if (!p.lhs.is_nonterminal() || !g.has_nonterminal(p.lhs.name)) {
      error(i, p.lhs.name, "production " + std::to_string(i) + " (" + p.to_string() +
                               ") has a left-hand side that is not a declared nonterminal");
    }
    for (const auto& s : p.rhs) check_symbol(i, s);
    if (p.amplitude.size() != g.dimension()) {
      error(i, p.lhs.name,
            "production " + std::to_string(i) + " (" + p.to_string() + ") has " +
                std::to_string(p.amplitude.size()) + " amplitude components, expected " +
                std::to_string(g.dimension()));
    } else if (!p.amplitude.is_finite()) {
      error(i, p.lhs.name, "production " + std::to_string(i) + " has a non-finite amplitude");
    }
    if (p.rhs.empty()) {
      report.issues.push_back({Severity::warning, i, p.lhs.name,
                               "production " + std::to_string(i) + " (" + p.to_string() +
                                   ") is an epsilon rule; derivations need a step cap"});
    }
    for (std::size_t j = 0; j < i; ++j) {
      const auto& q = prods[j];
      if (q.lhs == p.lhs && q.rhs == p.rhs && q.amplitude == p.amplitude) {
        error(i, p.lhs.name, "production " + std::to_string(i) + " duplicates production " +
                                 std::to_string(j));
        break;
      }
    }
  }
  return report;
}

std::vector<std::reference_wrapper<const Production>> rules_for(const QuantumGrammar& g,
                                                                const Symbol& a) {
  std::vector<std::reference_wrapper<const Production>> out;
  for (auto i : g.rule_indices(a)) out.emplace_back(g.production(i));
  return out;
}

}  // namespace qcfg

std::size_t std::hash<qcfg::SententialForm>::operator()(
    const qcfg::SententialForm& s) const noexcept {
  std::size_t h = 0xcbf29ce484222325ULL;
  for (const auto& sym : s) {
    h ^= std::hash<std::string>{}(sym.name) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  }
  return h;
}
