#include "doctest.h"

#include "qcfg/grammar.hpp"
#include "support/fixtures.hpp"

#include <algorithm>

using namespace qcfg;
using qcfg::testing::example_grammar;

TEST_CASE("validate") {
  SUBCASE("example grammar is valid") {
    const auto g = example_grammar();
    CHECK(g.dimension() == 4);
    CHECK(g.productions().size() == 5);
    CHECK(validate(g).issues.empty());
  }

  SUBCASE("amplitude length differs from the dimension") {
    const auto g = QuantumGrammar::from_rules(4, "I", {"I"}, {"a"},
                                              {{"I", "a", AmplitudeVector(3, 1.0)}});
    const auto report = validate(g);
    REQUIRE(report.issues.size() == 1);
    CHECK(report.issues[0].production == 0u);
    CHECK(report.issues[0].message.find("I -> a") != std::string::npos);
  }

  SUBCASE("start symbol outside N") {
    const auto g = QuantumGrammar::from_rules(1, "S", {"I"}, {"a"},
                                              {{"I", "a", AmplitudeVector(1, 1.0)}});
    const auto report = validate(g);
    REQUIRE(report.issues.size() == 1);
    CHECK(report.issues[0].symbol == "S");
  }

  SUBCASE("undeclared symbol, shared name, duplicate rule") {
    const auto g = QuantumGrammar::from_rules(
        1, "I", {"I", "a"}, {"a"},
        {{"I", "a q", AmplitudeVector(1, 1.0)}, {"I", "a q", AmplitudeVector(1, 1.0)}});
    const auto report = validate(g);
    CHECK_FALSE(report.ok());
    auto has = [&](const std::string& text) {
      return std::any_of(report.issues.begin(), report.issues.end(),
                         [&](const auto& i) { return i.message.find(text) != std::string::npos; });
    };
    CHECK(has("declared more than once"));
    CHECK(has("undeclared symbol 'q'"));
    CHECK(has("duplicates production 0"));
  }

  SUBCASE("same rule with different amplitudes is allowed") {
    const auto g = QuantumGrammar::from_rules(
        1, "I", {"I"}, {"a"},
        {{"I", "a", AmplitudeVector{0.6}}, {"I", "a", AmplitudeVector{0.8}}});
    CHECK(validate(g).issues.empty());
  }

  SUBCASE("epsilon rule is a warning") {
    const auto g = QuantumGrammar::from_rules(1, "I", {"I"}, {"a"},
                                              {{"I", "", AmplitudeVector{1.0}}});
    const auto report = validate(g);
    CHECK(report.ok());
    CHECK(report.warning_count() == 1);
  }

  SUBCASE("idempotent") {
    const auto g = QuantumGrammar::from_rules(2, "S", {"I"}, {"a"},
                                              {{"I", "a", AmplitudeVector(3)}});
    const auto a = validate(g);
    const auto b = validate(g);
    CHECK(a.issues.size() == b.issues.size());
  }
}

TEST_CASE("rules_for") {
  const auto g = example_grammar();
  const auto i_rules = rules_for(g, nonterminal("I"));
  REQUIRE(i_rules.size() == 3);
  CHECK(i_rules[0].get().to_string() == "I -> a I B");
  CHECK(i_rules[1].get().to_string() == "I -> a B");
  CHECK(i_rules[2].get().to_string() == "I -> a A B B");

  const auto b_rules = rules_for(g, nonterminal("B"));
  REQUIRE(b_rules.size() == 1);
  CHECK(b_rules[0].get().to_string() == "B -> b");

  const auto bare = QuantumGrammar::from_rules(1, "I", {"I", "Z"}, {"a"},
                                               {{"I", "a", AmplitudeVector{1.0}}});
  CHECK(rules_for(bare, nonterminal("Z")).empty());
  CHECK_THROWS_AS(rules_for(bare, nonterminal("Q")), UnknownSymbol);

  SUBCASE("the rule sets partition the productions") {
    std::size_t total = 0;
    for (const auto& a : g.nonterminals()) {
      for (const auto& p : rules_for(g, a)) CHECK(p.get().lhs == a);
      total += rules_for(g, a).size();
    }
    CHECK(total == g.productions().size());
  }
}

TEST_CASE("is_word and form helpers") {
  const auto g = example_grammar();
  CHECK(is_word(g.parse_form("ab")));
  CHECK_FALSE(is_word(g.parse_form("aIB")));
  CHECK(is_word(SententialForm{}));

  const auto f = g.parse_form("aaIBB");
  CHECK(f.size() == 5);
  CHECK(f.leftmost_nonterminal() == 2u);
  CHECK(f.count_terminals() == 2);
  CHECK(f.to_string() == "aaIBB");
  CHECK(g.parse_form("a a I B B") == f);
  CHECK_THROWS_AS(g.parse_form("abc"), UnknownSymbol);

  SUBCASE("multi-character names render with spaces") {
    const auto h = QuantumGrammar::from_rules(1, "Start", {"Start"}, {"x", "yy"},
                                              {{"Start", "x yy", AmplitudeVector{1.0}}});
    const auto w = h.parse_form("xyyx");
    CHECK(w.size() == 3);
    CHECK(w.to_string() == "x yy x");
  }
}

TEST_CASE("unit cycles and epsilon rules are detected") {
  const auto cyc = QuantumGrammar::from_rules(
      1, "I", {"I", "J"}, {"a"},
      {{"I", "J", AmplitudeVector{1.0}}, {"J", "I", AmplitudeVector{1.0}},
       {"J", "a", AmplitudeVector{1.0}}});
  CHECK(cyc.has_unit_cycle());
  CHECK_FALSE(cyc.has_epsilon_rule());
  CHECK_FALSE(example_grammar().has_unit_cycle());
}
