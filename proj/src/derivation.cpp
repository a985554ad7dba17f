#include "qcfg/derivation.hpp"

#include <limits>
#include <map>
#include <tuple>

namespace qcfg {

SententialForm apply_production(const SententialForm& s, const Production& p, std::size_t pos) {
  if (pos >= s.size()) {
    throw std::out_of_range("position " + std::to_string(pos) + " outside form of length " +
                            std::to_string(s.size()));
  }
  if (!(s[pos] == p.lhs)) {
    throw DerivationError("symbol '" + s[pos].name + "' at position " + std::to_string(pos) +
                          " does not match rule " + p.to_string());
  }
  std::vector<Symbol> out;
  out.reserve(s.size() + p.rhs.size() - 1);
  out.insert(out.end(), s.begin(), s.begin() + static_cast<std::ptrdiff_t>(pos));
  out.insert(out.end(), p.rhs.begin(), p.rhs.end());
  out.insert(out.end(), s.begin() + static_cast<std::ptrdiff_t>(pos) + 1, s.end());
  return SententialForm(std::move(out));
}

std::vector<Successor> leftmost_successors(const QuantumGrammar& g, const SententialForm& s) {
  std::vector<Successor> out;
  const auto pos = s.leftmost_nonterminal();
  if (!pos) return out;
  for (auto idx : g.rule_indices(s[*pos])) {
    out.push_back({idx, apply_production(s, g.production(idx), *pos)});
  }
  return out;
}

std::vector<SententialForm> replay(const QuantumGrammar& g, const Derivation& d) {
  std::vector<SententialForm> forms{d.start};
  for (const auto& step : d.steps) {
    forms.push_back(apply_production(forms.back(), g.production(step.production), step.position));
  }
  return forms;
}

bool is_leftmost_derivation(const QuantumGrammar& g, const Derivation& d) {
  SententialForm cur = d.start;
  for (const auto& step : d.steps) {
    if (cur.leftmost_nonterminal() != step.position) return false;
    try {
      cur = apply_production(cur, g.production(step.production), step.position);
    } catch (const std::exception&) {
      return false;
    }
  }
  return cur == d.end;
}

namespace {

void require_cap_if_needed(const QuantumGrammar& g, const DerivationLimits& limits) {
  if (!limits.max_steps && (g.has_epsilon_rule() || g.has_unit_cycle())) {
    throw DerivationError(
        "grammar has an epsilon rule or a unit cycle; a step cap is required");
  }
}

// A partial leftmost form can still reach the target only if its fixed
// prefix (everything before the leftmost nonterminal) matches, it does not
// hold more terminals than the target, and, without epsilon rules, it is
// not already longer than the target.
bool viable(const SententialForm& form, const SententialForm& target, bool epsilon_free,
            std::size_t target_terminals) {
  if (epsilon_free && form.size() > target.size()) return false;
  if (form.count_terminals() > target_terminals) return false;
  const std::size_t fixed = form.leftmost_nonterminal().value_or(form.size());
  if (fixed > target.size()) return false;
  for (std::size_t i = 0; i < fixed; ++i) {
    if (!(form[i] == target[i])) return false;
  }
  if (fixed == form.size()) return form == target;
  return true;
}

}  // namespace

EnumerationResult enumerate_derivations(const QuantumGrammar& g, const SententialForm& target,
                                        const DerivationLimits& limits) {
  require_cap_if_needed(g, limits);
  const bool epsilon_free = !g.has_epsilon_rule();
  const std::size_t target_terminals = target.count_terminals();
  const std::size_t cap = limits.max_steps.value_or(std::numeric_limits<std::size_t>::max());

  EnumerationResult result;
  Derivation current;
  current.start = g.start_form();

  auto dfs = [&](auto&& self, const SententialForm& form) -> void {
    if (!viable(form, target, epsilon_free, target_terminals)) return;
    if (form == target) {
      current.end = form;
      result.derivations.push_back(current);
    }
    const auto pos = form.leftmost_nonterminal();
    if (!pos) return;
    if (current.steps.size() >= cap) {
      if (!g.rule_indices(form[*pos]).empty()) result.complete = false;
      return;
    }
    for (const auto& succ : leftmost_successors(g, form)) {
      current.steps.push_back({succ.production, *pos});
      self(self, succ.form);
      current.steps.pop_back();
    }
  };
  dfs(dfs, current.start);
  return result;
}

AmplitudeVector derivation_amplitude(const QuantumGrammar& g, const Derivation& d) {
  auto amp = AmplitudeVector::ones(g.dimension());
  for (const auto& step : d.steps) amp = hadamard(amp, g.production(step.production).amplitude);
  return amp;
}

namespace {

class AmplitudeSolver {
public:
  AmplitudeSolver(const QuantumGrammar& g, const SententialForm& target,
                  std::optional<std::size_t> cap)
      : g_(g),
        target_(target.begin(), target.end()),
        epsilon_free_(!g.has_epsilon_rule()),
        cap_(cap),
        ones_(AmplitudeVector::ones(g.dimension())),
        zero_(AmplitudeVector::zeros(g.dimension())) {
    suffix_terminals_.assign(target_.size() + 1, 0);
    for (std::size_t j = target_.size(); j-- > 0;) {
      suffix_terminals_[j] = suffix_terminals_[j + 1] + (target_[j].is_terminal() ? 1 : 0);
    }
  }

  AmplitudeResult solve() {
    return solve(std::vector<Symbol>{g_.start()}, 0, cap_.value_or(0));
  }

private:
  using Key = std::tuple<std::vector<Symbol>, std::size_t, std::size_t>;

  // Leftmost derivations of target_[j..] from `form`, using at most `budget`
  // steps when a cap is set.
  AmplitudeResult solve(std::vector<Symbol> form, std::size_t j, std::size_t budget) {
    // Strip matching terminals; they are never rewritten again.
    std::size_t k = 0;
    while (k < form.size() && form[k].is_terminal()) {
      if (j >= target_.size() || !(target_[j] == form[k])) return miss();
      ++k;
      ++j;
    }
    if (k) form.erase(form.begin(), form.begin() + static_cast<std::ptrdiff_t>(k));
    if (form.empty()) return j == target_.size() ? hit() : miss();

    const std::size_t remaining = target_.size() - j;
    if (epsilon_free_ && form.size() > remaining) return miss();
    std::size_t form_terminals = 0;
    for (const auto& s : form) form_terminals += s.is_terminal() ? 1 : 0;
    if (form_terminals > suffix_terminals_[j]) return miss();

    Key key{form, j, cap_ ? budget : 0};
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;

    AmplitudeResult out{zero_, 0, true};
    if (form.size() == remaining &&
        std::equal(form.begin(), form.end(), target_.begin() + static_cast<std::ptrdiff_t>(j))) {
      out.amplitude = ones_;
      out.derivations = 1;
    }

    const auto rules = g_.rule_indices(form.front());
    if (cap_ && budget == 0) {
      if (!rules.empty()) out.complete = false;
    } else {
      for (auto idx : rules) {
        const auto& p = g_.production(idx);
        std::vector<Symbol> next;
        next.reserve(p.rhs.size() + form.size() - 1);
        next.insert(next.end(), p.rhs.begin(), p.rhs.end());
        next.insert(next.end(), form.begin() + 1, form.end());
        const auto sub = solve(std::move(next), j, cap_ ? budget - 1 : 0);
        if (sub.derivations) out.amplitude += hadamard(sub.amplitude, p.amplitude);
        out.derivations += sub.derivations;
        out.complete = out.complete && sub.complete;
      }
    }
    memo_.emplace(std::move(key), out);
    return out;
  }

  AmplitudeResult hit() const { return {ones_, 1, true}; }
  AmplitudeResult miss() const { return {zero_, 0, true}; }

  const QuantumGrammar& g_;
  std::vector<Symbol> target_;
  std::vector<std::size_t> suffix_terminals_;
  bool epsilon_free_;
  std::optional<std::size_t> cap_;
  AmplitudeVector ones_;
  AmplitudeVector zero_;
  std::map<Key, AmplitudeResult> memo_;
};

}  // namespace

AmplitudeResult sentential_amplitude(const QuantumGrammar& g, const SententialForm& target,
                                     const DerivationLimits& limits) {
  require_cap_if_needed(g, limits);
  return AmplitudeSolver(g, target, limits.max_steps).solve();
}

ProbabilityResult word_probability(const QuantumGrammar& g, const SententialForm& w,
                                   const DerivationLimits& limits) {
  if (!is_word(w)) {
    throw DerivationError("'" + w.to_string() + "' contains a nonterminal; not a word");
  }
  auto amp = sentential_amplitude(g, w, limits);
  ProbabilityResult out;
  out.probability = norm_sq(amp.amplitude);
  out.amplitude = std::move(amp.amplitude);
  out.derivations = amp.derivations;
  out.complete = amp.complete;
  return out;
}

}  // namespace qcfg
