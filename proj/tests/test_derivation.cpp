#include "doctest.h"

#include "qcfg/derivation.hpp"
#include "support/fixtures.hpp"
#include "support/oracle.hpp"

using namespace qcfg;
using namespace qcfg::testing;

namespace {

std::size_t rule_index(const QuantumGrammar& g, const std::string& text) {
  for (std::size_t i = 0; i < g.productions().size(); ++i) {
    if (g.production(i).to_string() == text) return i;
  }
  throw std::runtime_error("no rule " + text);
}

std::vector<std::string> names(const SententialForm& f) {
  std::vector<std::string> out;
  for (const auto& s : f) out.push_back(s.name);
  return out;
}

}  // namespace

TEST_CASE("apply_production") {
  const auto g = example_grammar();
  const auto& aB = g.production(rule_index(g, "I -> a B"));
  const auto& aIB = g.production(rule_index(g, "I -> a I B"));
  const auto& aABB = g.production(rule_index(g, "I -> a A B B"));

  CHECK(apply_production(g.parse_form("aIB"), aB, 1) == g.parse_form("aaBB"));
  CHECK(apply_production(g.parse_form("I"), aIB, 0) == g.parse_form("aIB"));
  CHECK(apply_production(g.parse_form("aaIBB"), aABB, 2) == g.parse_form("aaaABBBB"));

  CHECK_THROWS_AS(apply_production(g.parse_form("aIB"), aB, 3), std::out_of_range);
  CHECK_THROWS_AS(apply_production(g.parse_form("aIB"), aB, 0), DerivationError);
}

TEST_CASE("leftmost_successors") {
  const auto g = example_grammar();
  const auto s = leftmost_successors(g, g.parse_form("aIB"));
  REQUIRE(s.size() == 3);
  CHECK(s[0].form == g.parse_form("aaIBB"));
  CHECK(s[1].form == g.parse_form("aaBB"));
  CHECK(s[2].form == g.parse_form("aaABBB"));

  CHECK(leftmost_successors(g, g.parse_form("aaabbb")).empty());

  const auto t = leftmost_successors(g, g.parse_form("aABB"));
  REQUIRE(t.size() == 1);
  CHECK(g.production(t[0].production).to_string() == "A -> a");
  CHECK(t[0].form == g.parse_form("aaBB"));
}

TEST_CASE("enumerate_derivations") {
  const auto g = example_grammar();

  const auto ab = enumerate_derivations(g, g.parse_form("ab"));
  CHECK(ab.complete);
  REQUIRE(ab.derivations.size() == 1);
  const auto& d = ab.derivations[0];
  REQUIRE(d.steps.size() == 2);
  CHECK(g.production(d.steps[0].production).to_string() == "I -> a B");
  CHECK(g.production(d.steps[1].production).to_string() == "B -> b");
  CHECK(is_leftmost_derivation(g, d));

  const auto aabb = enumerate_derivations(g, g.parse_form("aabb"));
  REQUIRE(aabb.derivations.size() == 2);
  // lexicographic by rule index: I -> aIB (0) first, I -> aABB (2) second
  CHECK(aabb.derivations[0].steps[0].production == 0);
  CHECK(aabb.derivations[1].steps[0].production == 2);
  const auto forms = replay(g, aabb.derivations[1]);
  CHECK(forms[1] == g.parse_form("aABB"));
  for (const auto& x : aabb.derivations) CHECK(is_leftmost_derivation(g, x));

  CHECK(enumerate_derivations(g, g.parse_form("ba")).derivations.empty());

  SUBCASE("exactly two derivations of a^n b^n for n >= 2") {
    for (int n = 2; n <= 7; ++n) {
      CAPTURE(n);
      CHECK(enumerate_derivations(g, anbn_word(g, n)).derivations.size() == 2);
    }
  }
}

TEST_CASE("derivation_amplitude") {
  const auto g = example_grammar();
  const double q = kInvTwoSqrt3 / 2.0;

  Derivation ab{g.start_form(), {{1, 0}, {4, 1}}, g.parse_form("ab")};
  CHECK(approx_eq(derivation_amplitude(g, ab),
                  {Complex{0, q}, Complex{0, q}, Complex{0, -q}, Complex{0, -q}}, 1e-15));

  Derivation empty{g.start_form(), {}, g.start_form()};
  CHECK(derivation_amplitude(g, empty) == AmplitudeVector::ones(4));

  Derivation twice{g.start_form(), {{0, 0}, {0, 1}}, g.parse_form("aaIBB")};
  CHECK(approx_eq(derivation_amplitude(g, twice), AmplitudeVector(4, 1.0 / 12.0), 1e-15));
}

TEST_CASE("sentential_amplitude") {
  const auto g = example_grammar();
  for (int n = 2; n <= 6; ++n) {
    CAPTURE(n);
    const auto r = sentential_amplitude(g, anbn_word(g, n));
    CHECK(r.derivations == 2);
    CHECK(approx_eq(r.amplitude, anbn_closed_form(n), 1e-12));
  }
  const auto ba = sentential_amplitude(g, g.parse_form("ba"));
  CHECK(ba.derivations == 0);
  CHECK(ba.amplitude.is_zero());

  SUBCASE("a non-word target sums both partial chains") {
    const auto target = g.parse_form("aaBB");
    const auto r = sentential_amplitude(g, target);
    const auto oracle = naive_form_amplitude(g, names(target), 4);
    CHECK(r.derivations == 2);
    CHECK(oracle.derivations == 2);
    CHECK(approx_eq(r.amplitude, oracle.amplitude, 1e-15));
    // I -> aIB, I -> aB  plus  I -> aABB, A -> a
    const double c = kInvTwoSqrt3;
    const AmplitudeVector expected{c * c + c * 0.5, -c * c - c * 0.5, c * c + c * 0.5,
                                   -c * c - c * 0.5};
    CHECK(approx_eq(r.amplitude, expected, 1e-15));
  }
}

TEST_CASE("word_probability") {
  const auto g = example_grammar();
  CHECK(approx_eq(word_probability(g, g.parse_form("ab")).probability, 1.0 / 12.0, 1e-12));
  for (int n = 2; n <= 6; ++n) {
    CAPTURE(n);
    CHECK(approx_eq(word_probability(g, anbn_word(g, n)).probability, anbn_probability(n),
                    1e-15));
  }
  CHECK(word_probability(g, g.parse_form("ba")).probability == 0.0);
  CHECK_THROWS_AS(word_probability(g, g.parse_form("aB")), DerivationError);
}

TEST_CASE("memoised amplitudes agree with the naive enumeration") {
  SUBCASE("example grammar") {
    const auto g = example_grammar();
    const auto oracle = naive_word_amplitudes(g, 6, 64);
    for (const auto& w : all_words({"a", "b"}, 6)) {
      const auto r = sentential_amplitude(g, to_form(g, w));
      const auto it = oracle.find(w);
      const auto expected = it == oracle.end() ? AmplitudeVector(4) : it->second.amplitude;
      CHECK(approx_eq(r.amplitude, expected, 1e-12));
      CHECK(r.derivations == (it == oracle.end() ? 0 : it->second.derivations));
    }
  }

  SUBCASE("random epsilon-free grammars") {
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
      CAPTURE(seed);
      const auto g = random_grammar(seed);
      const auto oracle = naive_word_amplitudes(g, 6, 64);
      for (const auto& w : all_words({"a", "b"}, 6)) {
        const auto r = sentential_amplitude(g, to_form(g, w));
        const auto it = oracle.find(w);
        const auto expected =
            it == oracle.end() ? AmplitudeVector(g.dimension()) : it->second.amplitude;
        CHECK(approx_eq(r.amplitude, expected, 1e-12));
        CHECK(word_probability(g, to_form(g, w)).probability >= 0.0);
      }
    }
  }
}

TEST_CASE("step caps") {
  SUBCASE("unit cycle needs a cap and reports truncation") {
    const auto g = QuantumGrammar::from_rules(
        1, "I", {"I", "J"}, {"a"},
        {{"I", "J", AmplitudeVector{1.0}}, {"J", "I", AmplitudeVector{0.5}},
         {"J", "a", AmplitudeVector{0.5}}});
    const auto a = g.parse_form("a");
    CHECK_THROWS_AS(sentential_amplitude(g, a), DerivationError);
    CHECK_THROWS_AS(enumerate_derivations(g, a), DerivationError);

    // I J a (2 steps) and I J I J a (4 steps) fit under a cap of 5.
    const auto r = sentential_amplitude(g, a, {5});
    CHECK_FALSE(r.complete);
    CHECK(r.derivations == 2);
    CHECK(approx_eq(r.amplitude[0], Complex{0.5 + 0.25}, 1e-15));
    const auto e = enumerate_derivations(g, a, {5});
    CHECK_FALSE(e.complete);
    CHECK(e.derivations.size() == 2);
  }

  SUBCASE("epsilon rule") {
    const auto g = QuantumGrammar::from_rules(
        1, "S", {"S"}, {"a", "b"},
        {{"S", "a S b", AmplitudeVector{0.6}}, {"S", "", AmplitudeVector{0.8}}});
    CHECK_THROWS_AS(word_probability(g, g.parse_form("ab")), DerivationError);
    const auto p = word_probability(g, g.parse_form("aabb"), {64});
    CHECK(p.complete);
    CHECK(p.derivations == 1);
    CHECK(approx_eq(p.probability, std::norm(0.6 * 0.6 * 0.8), 1e-15));
    const auto empty = word_probability(g, SententialForm{}, {64});
    CHECK(approx_eq(empty.probability, 0.64, 1e-15));
    CHECK(enumerate_derivations(g, g.parse_form("aabb"), {64}).derivations.size() == 1);
  }
}
