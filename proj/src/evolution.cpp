#include "qcfg/evolution.hpp"

#include "qcfg/derivation.hpp"
#include "qcfg/reachability.hpp"

#include <algorithm>
#include <tuple>

namespace qcfg {

std::vector<SententialForm> enumerate_reachable_forms(const QuantumGrammar& g,
                                                      std::size_t max_len) {
  return explore_reachable(g, max_len).forms;
}

const char* row_status_name(RowStatus s) noexcept {
  switch (s) {
    case RowStatus::complete: return "complete";
    case RowStatus::boundary: return "boundary";
    case RowStatus::outside: return "outside";
    case RowStatus::split: return "split";
  }
  return "?";
}

const AmplitudeVector* EvolutionMatrixSlice::entry(std::size_t row, std::size_t col) const {
  const auto it = std::lower_bound(entries.begin(), entries.end(), std::pair{row, col},
                                   [](const MatrixEntry& e, const std::pair<std::size_t, std::size_t>& k) {
                                     return std::tie(e.row, e.col) < std::tie(k.first, k.second);
                                   });
  if (it == entries.end() || it->row != row || it->col != col) return nullptr;
  return &it->value;
}

std::vector<std::vector<Complex>> EvolutionMatrixSlice::component_matrix(std::size_t k) const {
  std::vector<std::vector<Complex>> dense(rows.size(), std::vector<Complex>(cols.size()));
  for (const auto& e : entries) dense[e.row][e.col] = e.value[k];
  return dense;
}

EvolutionMatrixSlice build_evolution_matrix(const QuantumGrammar& g, const Symbol& a,
                                            std::size_t max_len) {
  if (!g.has_terminal(a.name)) throw UnknownSymbol(a.name);

  const auto graph = explore_reachable(g, max_len);
  EvolutionMatrixSlice m;
  m.terminal = terminal(a.name);
  m.max_len = max_len;
  m.dimension = g.dimension();

  // (column form index in graph, production) -> accumulated entries per row
  std::map<std::pair<std::size_t, std::size_t>, std::map<std::size_t, AmplitudeVector>> raw;

  for (std::size_t f = 0; f < graph.forms.size(); ++f) {
    const auto& form = graph.forms[f];
    if (is_word(form)) continue;
    const std::size_t row = m.rows.size();
    m.rows.push_back(form);

    bool over = false;
    std::size_t with_a = 0;
    std::size_t without_a = 0;
    for (const auto& succ : leftmost_successors(g, form)) {
      if (succ.form.size() > max_len) {
        over = true;
        continue;
      }
      if (!succ.form.contains(a)) {
        ++without_a;
        continue;
      }
      ++with_a;
      const auto target = graph.index.at(succ.form);
      auto& cell = raw[{target, succ.production}];
      const auto& amp = g.production(succ.production).amplitude;
      if (auto it = cell.find(row); it != cell.end()) {
        it->second += amp;  // same rule, same row, same result form: multiplicity
      } else {
        cell.emplace(row, amp);
      }
    }
    RowStatus status = RowStatus::complete;
    if (over) {
      status = RowStatus::boundary;
    } else if (with_a == 0 && without_a > 0) {
      status = RowStatus::outside;
    } else if (with_a > 0 && without_a > 0) {
      status = RowStatus::split;
    }
    m.row_status.push_back(status);
  }

  for (auto& [key, cells] : raw) {
    const std::size_t col = m.cols.size();
    m.cols.push_back({graph.forms[key.first], key.second});
    for (auto& [row, value] : cells) m.entries.push_back({row, col, std::move(value)});
  }
  std::sort(m.entries.begin(), m.entries.end(), [](const MatrixEntry& x, const MatrixEntry& y) {
    return std::tie(x.row, x.col) < std::tie(y.row, y.col);
  });
  return m;
}

TruncatedOrthogonalityReport check_truncated_orthogonality(const EvolutionMatrixSlice& m,
                                                           double tol) {
  TruncatedOrthogonalityReport rep;

  std::vector<std::vector<const MatrixEntry*>> by_row(m.rows.size());
  std::vector<std::vector<const MatrixEntry*>> by_col(m.cols.size());
  for (const auto& e : m.entries) {
    by_row[e.row].push_back(&e);
    by_col[e.col].push_back(&e);
  }

  std::vector<bool> judged(m.rows.size(), false);
  for (std::size_t r = 0; r < m.rows.size(); ++r) {
    double diag = 0.0;
    for (const auto* e : by_row[r]) diag += norm_sq(e->value);
    switch (m.row_status[r]) {
      case RowStatus::complete:
        judged[r] = true;
        ++rep.judged_rows;
        if (!approx_eq(diag, 1.0, tol)) rep.row_issues.push_back({r, r, diag, 1.0});
        continue;
      case RowStatus::boundary: ++rep.boundary_rows; break;
      case RowStatus::outside: ++rep.outside_rows; break;
      case RowStatus::split: ++rep.split_rows; break;
    }
    rep.excluded_row_norms.emplace_back(r, diag);
  }

  // Off-diagonal row Gram entries: rows interact only through shared columns.
  std::map<std::pair<std::size_t, std::size_t>, Complex> off;
  for (const auto& col : by_col) {
    for (std::size_t x = 0; x < col.size(); ++x) {
      for (std::size_t y = x + 1; y < col.size(); ++y) {
        const auto* p = col[x];
        const auto* q = col[y];
        if (!judged[p->row] || !judged[q->row]) continue;
        const auto key = std::minmax(p->row, q->row);
        const Complex ip = p->row < q->row ? inner_product(p->value, q->value)
                                           : inner_product(q->value, p->value);
        off[{key.first, key.second}] += ip;
      }
    }
  }
  for (const auto& [key, v] : off) {
    if (!approx_eq(v, Complex{}, tol)) rep.row_issues.push_back({key.first, key.second, v, 0.0});
  }
  std::sort(rep.row_issues.begin(), rep.row_issues.end(), [](const GramIssue& x, const GramIssue& y) {
    return std::tie(x.first, x.second) < std::tie(y.first, y.second);
  });

  // Column pairs sharing a form; columns are sorted by form already.
  for (std::size_t c = 0; c < m.cols.size(); ++c) {
    for (std::size_t d = c + 1; d < m.cols.size() && m.cols[d].form == m.cols[c].form; ++d) {
      ++rep.column_pairs_checked;
      Complex ip{};
      for (const auto* e : by_col[c]) {
        if (const auto* other = m.entry(e->row, d)) ip += inner_product(e->value, *other);
      }
      if (!approx_eq(ip, Complex{}, tol)) rep.column_issues.push_back({c, d, ip, 0.0});
    }
  }
  return rep;
}

SuperpositionState apply_step(const QuantumGrammar& g, const SuperpositionState& psi,
                              std::size_t max_len, double drop_tol) {
  SuperpositionState out;
  auto accumulate = [&](const SententialForm& s, const AmplitudeVector& v) {
    if (auto it = out.find(s); it != out.end()) {
      it->second += v;
    } else {
      out.emplace(s, v);
    }
  };
  for (const auto& [form, vec] : psi) {
    if (is_word(form)) {
      accumulate(form, vec);
      continue;
    }
    for (const auto& succ : leftmost_successors(g, form)) {
      if (succ.form.size() > max_len) continue;
      accumulate(succ.form, hadamard(vec, g.production(succ.production).amplitude));
    }
  }
  std::erase_if(out, [&](const auto& kv) {
    return std::all_of(kv.second.begin(), kv.second.end(),
                       [&](const Complex& z) { return std::abs(z) <= drop_tol; });
  });
  return out;
}

}  // namespace qcfg
