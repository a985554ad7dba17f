#include "qcfg/wellformedness.hpp"

#include <algorithm>
#include <set>

namespace qcfg {

const char* condition_label(Condition c) noexcept {
  switch (c) {
    case Condition::row_norm: return "C1";
    case Condition::context_orthogonality: return "C2";
    case Condition::length_orthogonality: return "C3";
  }
  return "?";
}

const char* mode_name(CheckMode m) noexcept {
  return m == CheckMode::strict ? "strict" : "aggregate";
}

std::vector<ConditionViolation> check_row_norm(const QuantumGrammar& g, double tol) {
  std::vector<ConditionViolation> out;
  for (const auto& a : g.nonterminals()) {
    double sum = 0.0;
    const auto rules = g.rule_indices(a);
    for (auto idx : rules) sum += norm_sq(g.production(idx).amplitude);
    if (!approx_eq(sum, 1.0, tol)) {
      ConditionViolation v;
      v.condition = Condition::row_norm;
      v.nonterminal = a.name;
      v.productions.assign(rules.begin(), rules.end());
      v.measured = sum;
      v.expected = 1.0;
      v.description = "sum of squared amplitude norms over the rules of " + a.name + " is " +
                      format_complex(sum) + ", expected 1";
      out.push_back(std::move(v));
    }
  }
  return out;
}

std::vector<ConditionViolation> check_length_orthogonality(const QuantumGrammar& g,
                                                           CheckMode mode, double tol) {
  std::vector<ConditionViolation> out;
  for (const auto& a : g.nonterminals()) {
    const auto rules = g.rule_indices(a);
    Complex total{};
    std::vector<std::size_t> involved;
    for (std::size_t x = 0; x < rules.size(); ++x) {
      for (std::size_t y = x + 1; y < rules.size(); ++y) {
        const auto& p = g.production(rules[x]);
        const auto& q = g.production(rules[y]);
        if (p.rhs.size() == q.rhs.size()) continue;
        const Complex ip = inner_product(p.amplitude, q.amplitude);
        total += ip;
        involved.push_back(rules[x]);
        involved.push_back(rules[y]);
        if (mode == CheckMode::strict && !approx_eq(ip, Complex{}, tol)) {
          ConditionViolation v;
          v.condition = Condition::length_orthogonality;
          v.nonterminal = a.name;
          v.productions = {rules[x], rules[y]};
          v.measured = ip;
          v.expected = 0.0;
          v.description = "<c(" + p.to_string() + "), c(" + q.to_string() + ")> = " +
                          format_complex(ip) + " for right-hand sides of lengths " +
                          std::to_string(p.rhs.size()) + " and " + std::to_string(q.rhs.size());
          out.push_back(std::move(v));
        }
      }
    }
    if (mode == CheckMode::aggregate && !approx_eq(total, Complex{}, tol)) {
      std::sort(involved.begin(), involved.end());
      involved.erase(std::unique(involved.begin(), involved.end()), involved.end());
      ConditionViolation v;
      v.condition = Condition::length_orthogonality;
      v.nonterminal = a.name;
      v.productions = std::move(involved);
      v.measured = total;
      v.expected = 0.0;
      v.description = "summed inner product over unequal-length rule pairs of " + a.name +
                      " is " + format_complex(total);
      out.push_back(std::move(v));
    }
  }
  return out;
}

std::vector<Collision> find_reachable_collisions(const ReachableGraph& graph) {
  std::vector<Collision> out;
  for (std::size_t i = 0; i < graph.forms.size(); ++i) {
    const auto& in = graph.parents[i];
    if (in.size() < 2) continue;
    Collision c;
    c.form = graph.forms[i];
    for (const auto& e : in) c.parents.emplace_back(graph.forms[e.parent], e.production);
    out.push_back(std::move(c));
  }
  return out;
}

std::vector<Collision> find_reachable_collisions(const QuantumGrammar& g, std::size_t max_len) {
  return find_reachable_collisions(explore_reachable(g, max_len));
}

namespace {

std::vector<ConditionViolation> context_violations(const QuantumGrammar& g,
                                                   const std::vector<Collision>& collisions,
                                                   CheckMode mode, double tol) {
  std::vector<ConditionViolation> out;
  for (const auto& c : collisions) {
    std::set<std::size_t> distinct;
    for (const auto& [parent, prod] : c.parents) distinct.insert(prod);
    const std::vector<std::size_t> prods(distinct.begin(), distinct.end());

    Complex total{};
    for (std::size_t x = 0; x < prods.size(); ++x) {
      for (std::size_t y = x + 1; y < prods.size(); ++y) {
        const auto& p = g.production(prods[x]);
        const auto& q = g.production(prods[y]);
        const Complex ip = inner_product(p.amplitude, q.amplitude);
        total += ip;
        if (mode == CheckMode::strict && !approx_eq(ip, Complex{}, tol)) {
          ConditionViolation v;
          v.condition = Condition::context_orthogonality;
          v.productions = {prods[x], prods[y]};
          v.measured = ip;
          v.expected = 0.0;
          v.witness = c.form;
          v.description = "<c(" + p.to_string() + "), c(" + q.to_string() + ")> = " +
                          format_complex(ip) + "; both reach " + c.form.to_string();
          out.push_back(std::move(v));
        }
      }
    }
    if (mode == CheckMode::aggregate && prods.size() > 1 && !approx_eq(total, Complex{}, tol)) {
      ConditionViolation v;
      v.condition = Condition::context_orthogonality;
      v.productions = prods;
      v.measured = total;
      v.expected = 0.0;
      v.witness = c.form;
      v.description = "summed inner product of the productions reaching " + c.form.to_string() +
                      " is " + format_complex(total);
      out.push_back(std::move(v));
    }
  }
  return out;
}

}  // namespace

std::vector<ConditionViolation> check_context_orthogonality(const QuantumGrammar& g,
                                                            std::size_t max_len, CheckMode mode,
                                                            double tol) {
  return context_violations(g, find_reachable_collisions(g, max_len), mode, tol);
}

std::vector<ConditionViolation> check_structural_orthogonality(const QuantumGrammar& g,
                                                               double tol) {
  std::vector<ConditionViolation> out;
  const auto prods = g.productions();
  for (std::size_t x = 0; x < prods.size(); ++x) {
    for (std::size_t y = x + 1; y < prods.size(); ++y) {
      const Complex ip = inner_product(prods[x].amplitude, prods[y].amplitude);
      if (approx_eq(ip, Complex{}, tol)) continue;
      ConditionViolation v;
      v.condition = Condition::context_orthogonality;
      v.productions = {x, y};
      v.measured = ip;
      v.expected = 0.0;
      v.description = "structural: <c(" + prods[x].to_string() + "), c(" +
                      prods[y].to_string() + ")> = " + format_complex(ip);
      out.push_back(std::move(v));
    }
  }
  return out;
}

WellFormednessReport check_all(const QuantumGrammar& g, const WellFormednessOptions& opts) {
  WellFormednessReport report;
  report.mode = opts.mode;
  report.c2_search_bound = opts.max_len;

  auto append = [&](std::vector<ConditionViolation> vs) {
    std::move(vs.begin(), vs.end(), std::back_inserter(report.violations));
  };
  append(check_row_norm(g, opts.tolerance));

  const auto graph = explore_reachable(g, opts.max_len);
  report.c2_search_truncated = graph.truncated;
  append(context_violations(g, find_reachable_collisions(graph), opts.mode, opts.tolerance));

  append(check_length_orthogonality(g, opts.mode, opts.tolerance));

  if (opts.structural_c2) {
    report.structural_diagnostics = check_structural_orthogonality(g, opts.tolerance);
  }
  report.passed = report.violations.empty();
  return report;
}

}  // namespace qcfg
