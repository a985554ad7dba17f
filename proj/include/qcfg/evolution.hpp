#pragma once

#include "qcfg/amplitude.hpp"
#include "qcfg/grammar.hpp"

#include <cstddef>
#include <map>
#include <optional>
#include <vector>

namespace qcfg {

/// All forms of length <= max_len reachable from the start form by leftmost
/// rewriting, breadth-first, lexicographic within a level. Includes words.
std::vector<SententialForm> enumerate_reachable_forms(const QuantumGrammar& g,
                                                      std::size_t max_len);

struct MatrixColumn {
  SententialForm form;
  std::size_t production;
};

struct MatrixEntry {
  std::size_t row;
  std::size_t col;
  AmplitudeVector value;
};

/// How a row of U_a relates to the truncation and to the terminal a.
enum class RowStatus {
  complete,  // every leftmost successor fits the bound and contains a
  boundary,  // some successor is longer than max_len
  outside,   // no successor contains a: the row lies outside U_a's support
  split,     // successors both with and without a
};

const char* row_status_name(RowStatus s) noexcept;

/// Finite section of the evolution matrix U_a. Rows are reachable forms
/// holding a nonterminal; columns are (form containing a, rule) pairs hit by
/// some row in one leftmost step. Entries are whole amplitude vectors.
class EvolutionMatrixSlice {
public:
  Symbol terminal;
  std::size_t max_len = 0;
  std::size_t dimension = 0;
  std::vector<SententialForm> rows;
  std::vector<MatrixColumn> cols;
  std::vector<RowStatus> row_status;  // parallel to rows
  std::vector<MatrixEntry> entries;   // sorted by (row, col), no duplicates

  const AmplitudeVector* entry(std::size_t row, std::size_t col) const;

  /// Dense matrix of component k of every entry, rows x cols.
  std::vector<std::vector<Complex>> component_matrix(std::size_t k) const;
};

/// Throws UnknownSymbol if `a` is not a declared terminal.
EvolutionMatrixSlice build_evolution_matrix(const QuantumGrammar& g, const Symbol& a,
                                            std::size_t max_len);

struct GramIssue {
  std::size_t first;
  std::size_t second;
  Complex value;
  Complex expected;
};

struct TruncatedOrthogonalityReport {
  std::size_t judged_rows = 0;
  std::size_t boundary_rows = 0;
  std::size_t outside_rows = 0;
  std::size_t split_rows = 0;
  /// Diagonal Gram values of the excluded rows, for reference.
  std::vector<std::pair<std::size_t, double>> excluded_row_norms;
  std::vector<GramIssue> row_issues;     // indices into rows
  std::size_t column_pairs_checked = 0;
  std::vector<GramIssue> column_issues;  // indices into cols

  bool rows_orthonormal() const noexcept { return row_issues.empty(); }
  bool columns_orthogonal() const noexcept { return column_issues.empty(); }
  bool passed() const noexcept { return rows_orthonormal() && columns_orthogonal(); }
};

/// Row Gram matrix over judged (complete) rows must be the identity; column
/// pairs that share a form must be orthogonal. Column norms are not checked.
TruncatedOrthogonalityReport check_truncated_orthogonality(const EvolutionMatrixSlice& m,
                                                           double tol = kDefaultTolerance);

/// A superposition of sentential forms, each carrying an amplitude vector.
using SuperpositionState = std::map<SententialForm, AmplitudeVector>;

/// One application of the evolution operator: every form with a nonterminal
/// is replaced by its leftmost successors (weighted by the rule amplitudes)
/// that fit max_len; words are carried over. Entries whose components all
/// have modulus <= drop_tol are removed.
SuperpositionState apply_step(const QuantumGrammar& g, const SuperpositionState& psi,
                              std::size_t max_len, double drop_tol = 0.0);

}  // namespace qcfg
