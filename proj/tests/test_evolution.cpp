#include "doctest.h"

#include "qcfg/derivation.hpp"
#include "qcfg/evolution.hpp"
#include "support/fixtures.hpp"

#include <algorithm>
#include <set>

using namespace qcfg;
using namespace qcfg::testing;

namespace {

std::optional<std::size_t> find_row(const EvolutionMatrixSlice& m, const SententialForm& f) {
  const auto it = std::find(m.rows.begin(), m.rows.end(), f);
  if (it == m.rows.end()) return std::nullopt;
  return static_cast<std::size_t>(it - m.rows.begin());
}

std::optional<std::size_t> find_col(const EvolutionMatrixSlice& m, const SententialForm& f,
                                    std::size_t production) {
  for (std::size_t c = 0; c < m.cols.size(); ++c) {
    if (m.cols[c].form == f && m.cols[c].production == production) return c;
  }
  return std::nullopt;
}

QuantumGrammar trivial() {
  return QuantumGrammar::from_rules(1, "I", {"I"}, {"a"}, {{"I", "a", AmplitudeVector{1.0}}});
}

}  // namespace

TEST_CASE("enumerate_reachable_forms") {
  const auto g = example_grammar();
  const auto forms = enumerate_reachable_forms(g, 3);
  const std::set<SententialForm> got(forms.begin(), forms.end());
  const std::set<SententialForm> want{g.parse_form("I"), g.parse_form("aIB"), g.parse_form("aB"),
                                      g.parse_form("ab")};
  CHECK(got == want);
  CHECK(forms.size() == 4);
  CHECK(forms.front() == g.start_form());

  CHECK(enumerate_reachable_forms(g, 1) == std::vector<SententialForm>{g.start_form()});

  const auto t = trivial();
  CHECK(enumerate_reachable_forms(t, 2) ==
        std::vector<SententialForm>{t.parse_form("I"), t.parse_form("a")});

  SUBCASE("breadth-first, lexicographic within a level") {
    const auto f = enumerate_reachable_forms(g, 6);
    // symbol names compare bytewise, so A < B < I < a
    CHECK(f[1] == g.parse_form("aABB"));
    CHECK(f[2] == g.parse_form("aB"));
    CHECK(f[3] == g.parse_form("aIB"));
  }
}

TEST_CASE("build_evolution_matrix") {
  const auto g = example_grammar();
  const auto ua = build_evolution_matrix(g, terminal("a"), 8);

  const auto row_i = find_row(ua, g.parse_form("I"));
  const auto col = find_col(ua, g.parse_form("aIB"), 0);
  REQUIRE(row_i);
  REQUIRE(col);
  REQUIRE(ua.entry(*row_i, *col) != nullptr);
  CHECK(*ua.entry(*row_i, *col) == g.production(0).amplitude);

  // aIB rewritten with I -> aIB gives aaIBB, never aaBB
  const auto row_aib = find_row(ua, g.parse_form("aIB"));
  REQUIRE(row_aib);
  CHECK_FALSE(find_col(ua, g.parse_form("aaBB"), 0).has_value());
  for (std::size_t c = 0; c < ua.cols.size(); ++c) {
    if (ua.cols[c].form == g.parse_form("aaBB") && ua.entry(*row_aib, c)) {
      CHECK(ua.cols[c].production == 1);
    }
  }

  SUBCASE("columns of U_b for a^n b B^(n-1) have one parent") {
    const auto ub = build_evolution_matrix(g, terminal("b"), 8);
    for (int n = 1; n <= 4; ++n) {
      CAPTURE(n);
      const auto form = g.parse_form(std::string(n, 'a') + "b" + std::string(n - 1, 'B'));
      const auto c = find_col(ub, form, 4);
      REQUIRE(c);
      std::vector<std::size_t> rows;
      for (const auto& e : ub.entries) {
        if (e.col == *c) rows.push_back(e.row);
      }
      REQUIRE(rows.size() == 1);
      CHECK(ub.rows[rows[0]] == g.parse_form(std::string(n, 'a') + std::string(n, 'B')));
    }
  }

  SUBCASE("every entry is one production amplitude") {
    for (const auto& e : ua.entries) {
      CHECK(*ua.entry(e.row, e.col) == g.production(ua.cols[e.col].production).amplitude);
      CHECK(ua.rows[e.row].size() <= 8);
      CHECK(ua.cols[e.col].form.contains(terminal("a")));
    }
  }

  CHECK_THROWS_AS(build_evolution_matrix(g, terminal("c"), 4), UnknownSymbol);
}

TEST_CASE("check_truncated_orthogonality") {
  const auto g = example_grammar();
  for (const char* t : {"a", "b"}) {
    CAPTURE(t);
    const auto m = build_evolution_matrix(g, terminal(t), 8);
    const auto r = check_truncated_orthogonality(m);
    CHECK(r.rows_orthonormal());
    CHECK(r.columns_orthogonal());
    CHECK(r.judged_rows > 0);
    CHECK(r.split_rows == 0);
  }

  SUBCASE("row aIB has unit norm; the a^n B^n column pair is checked") {
    const auto m = build_evolution_matrix(g, terminal("a"), 8);
    const auto r = check_truncated_orthogonality(m);
    const auto row = find_row(m, g.parse_form("aIB"));
    REQUIRE(row);
    CHECK(m.row_status[*row] == RowStatus::complete);
    double diag = 0.0;
    for (const auto& e : m.entries) {
      if (e.row == *row) diag += norm_sq(e.value);
    }
    CHECK(approx_eq(diag, 1.0, 1e-12));
    const auto c1 = find_col(m, g.parse_form("aaBB"), 1);
    const auto c2 = find_col(m, g.parse_form("aaBB"), 3);
    REQUIRE(c1);
    REQUIRE(c2);
    CHECK(r.column_pairs_checked >= 1);
  }

  SUBCASE("trivial grammar is the 1x1 identity") {
    const auto t = trivial();
    const auto m = build_evolution_matrix(t, terminal("a"), 4);
    REQUIRE(m.rows.size() == 1);
    REQUIRE(m.cols.size() == 1);
    CHECK(m.component_matrix(0) == std::vector<std::vector<Complex>>{{Complex{1.0}}});
    CHECK(check_truncated_orthogonality(m).passed());
  }

  SUBCASE("row diagonal matches the row-norm sum of the leftmost nonterminal") {
    for (const auto& grammar : {g, load_grammar(data_path("broken.qcfg"))}) {
      for (const char* t : {"a", "b"}) {
        const auto m = build_evolution_matrix(grammar, terminal(t), 8);
        for (std::size_t r = 0; r < m.rows.size(); ++r) {
          if (m.row_status[r] != RowStatus::complete) continue;
          double diag = 0.0;
          for (const auto& e : m.entries) {
            if (e.row == r) diag += norm_sq(e.value);
          }
          const auto lhs = m.rows[r][*m.rows[r].leftmost_nonterminal()];
          double rule_sum = 0.0;
          for (const auto& p : rules_for(grammar, lhs)) rule_sum += norm_sq(p.get().amplitude);
          CHECK(approx_eq(diag, rule_sum, 1e-12));
        }
      }
    }
    const auto broken_ub = build_evolution_matrix(load_grammar(data_path("broken.qcfg")),
                                                  terminal("b"), 8);
    CHECK_FALSE(check_truncated_orthogonality(broken_ub).rows_orthonormal());
  }

  SUBCASE("rows sharing a column are not orthogonal") {
    // AaB and aAB both become aaB through A -> a.
    const auto h = QuantumGrammar::from_rules(
        1, "S", {"S", "A", "B"}, {"a", "b"},
        {{"S", "A a B", AmplitudeVector{std::sqrt(0.5)}},
         {"S", "a A B", AmplitudeVector{std::sqrt(0.5)}},
         {"A", "a", AmplitudeVector{1.0}},
         {"B", "b", AmplitudeVector{1.0}}});
    const auto m = build_evolution_matrix(h, terminal("a"), 4);
    const auto r = check_truncated_orthogonality(m);
    CHECK_FALSE(r.rows_orthonormal());
    const auto it = std::find_if(r.row_issues.begin(), r.row_issues.end(),
                                 [](const GramIssue& i) { return i.first != i.second; });
    REQUIRE(it != r.row_issues.end());
    CHECK(approx_eq(it->value, Complex{1.0}, 1e-15));
  }
}

TEST_CASE("apply_step") {
  const auto g = example_grammar();
  const SuperpositionState start{{g.start_form(), AmplitudeVector::ones(4)}};

  const auto one = apply_step(g, start, 10);
  REQUIRE(one.size() == 3);
  CHECK(one.at(g.parse_form("aIB")) == g.production(0).amplitude);
  CHECK(one.at(g.parse_form("aB")) == g.production(1).amplitude);
  CHECK(one.at(g.parse_form("aABB")) == g.production(2).amplitude);

  const SuperpositionState words{{g.parse_form("ab"), AmplitudeVector::ones(4)},
                                 {g.parse_form("aabb"), AmplitudeVector(4, 0.5)}};
  CHECK(apply_step(g, words, 10) == words);

  const auto two = apply_step(g, one, 10);
  CHECK(approx_eq(two.at(g.parse_form("aaIBB")), AmplitudeVector(4, 1.0 / 12.0), 1e-15));

  SUBCASE("matches summed derivation amplitudes") {
    SuperpositionState psi = start;
    for (std::size_t k = 1; k <= 6; ++k) {
      psi = apply_step(g, psi, 12);
      for (const auto& [form, vec] : psi) {
        if (!is_word(form)) continue;
        CAPTURE(form.to_string());
        CAPTURE(k);
        const auto ds = enumerate_derivations(g, form, {k});
        auto sum = AmplitudeVector::zeros(4);
        for (const auto& d : ds.derivations) sum += derivation_amplitude(g, d);
        CHECK(approx_eq(vec, sum, 1e-12));
      }
    }
    // ab after two steps, aabb after four
    CHECK(psi.contains(g.parse_form("ab")));
    CHECK(psi.contains(g.parse_form("aabb")));
  }

  SUBCASE("exact cancellations are dropped") {
    const auto h = QuantumGrammar::from_rules(
        1, "S", {"S"}, {"a"},
        {{"S", "a", AmplitudeVector{0.5}}, {"S", "a", AmplitudeVector{-0.5}}});
    const auto out = apply_step(h, {{h.start_form(), AmplitudeVector{1.0}}}, 4);
    CHECK(out.empty());
  }
}
