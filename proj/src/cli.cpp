#include "qcfg/cli.hpp"

#include "qcfg/derivation.hpp"
#include "qcfg/format.hpp"

#include <algorithm>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"

namespace qcfg::cli {

using nlohmann::json;

// ---------------------------------------------------------------------------
// JSON encodings

json to_json(Complex z) { return json::array({z.real(), z.imag()}); }

json to_json(const AmplitudeVector& v) {
  json arr = json::array();
  for (const auto& z : v) arr.push_back(to_json(z));
  return arr;
}

json to_json(const QuantumGrammar& g, const ConditionViolation& v) {
  json prods = json::array();
  for (auto idx : v.productions) {
    prods.push_back({{"index", idx}, {"rule", g.production(idx).to_string()}});
  }
  json j = {{"condition", condition_label(v.condition)},
            {"productions", prods},
            {"measured", to_json(v.measured)},
            {"expected", to_json(v.expected)},
            {"description", v.description}};
  j["nonterminal"] = v.nonterminal.empty() ? json(nullptr) : json(v.nonterminal);
  j["witness"] = v.witness ? json(v.witness->to_string()) : json(nullptr);
  return j;
}

json to_json(const QuantumGrammar& g, const WellFormednessReport& r) {
  json violations = json::array();
  for (const auto& v : r.violations) violations.push_back(to_json(g, v));
  json structural = json::array();
  for (const auto& v : r.structural_diagnostics) structural.push_back(to_json(g, v));
  return {{"passed", r.passed},
          {"mode", mode_name(r.mode)},
          {"c2_search_bound", r.c2_search_bound},
          {"c2_search_truncated", r.c2_search_truncated},
          {"violations", violations},
          {"structural_diagnostics", structural}};
}

json to_json(const QuantumGrammar& g, const EvolutionMatrixSlice& m, bool dense) {
  json rows = json::array();
  for (std::size_t r = 0; r < m.rows.size(); ++r) {
    rows.push_back({{"index", r},
                    {"form", m.rows[r].to_string()},
                    {"status", row_status_name(m.row_status[r])}});
  }
  json cols = json::array();
  for (std::size_t c = 0; c < m.cols.size(); ++c) {
    cols.push_back({{"index", c},
                    {"form", m.cols[c].form.to_string()},
                    {"production", m.cols[c].production},
                    {"rule", g.production(m.cols[c].production).to_string()}});
  }
  json entries = json::array();
  for (const auto& e : m.entries) {
    entries.push_back({{"row", e.row}, {"col", e.col}, {"amplitude", to_json(e.value)}});
  }
  json j = {{"terminal", m.terminal.name},
            {"max_len", m.max_len},
            {"dimension", m.dimension},
            {"rows", rows},
            {"cols", cols},
            {"entries", entries}};
  if (dense) {
    json comps = json::array();
    for (std::size_t k = 0; k < m.dimension; ++k) {
      json mat = json::array();
      for (const auto& row : m.component_matrix(k)) {
        json jr = json::array();
        for (const auto& z : row) jr.push_back(to_json(z));
        mat.push_back(std::move(jr));
      }
      comps.push_back(std::move(mat));
    }
    j["dense_components"] = std::move(comps);
  }
  return j;
}

json to_json(const TruncatedOrthogonalityReport& r) {
  auto issues = [](const std::vector<GramIssue>& v) {
    json arr = json::array();
    for (const auto& i : v) {
      arr.push_back({{"first", i.first},
                     {"second", i.second},
                     {"value", to_json(i.value)},
                     {"expected", to_json(i.expected)}});
    }
    return arr;
  };
  return {{"rows_orthonormal", r.rows_orthonormal()},
          {"columns_orthogonal", r.columns_orthogonal()},
          {"judged_rows", r.judged_rows},
          {"boundary_rows", r.boundary_rows},
          {"outside_rows", r.outside_rows},
          {"split_rows", r.split_rows},
          {"column_pairs_checked", r.column_pairs_checked},
          {"row_issues", issues(r.row_issues)},
          {"column_issues", issues(r.column_issues)}};
}

std::vector<WordRow> language_table(const QuantumGrammar& g, std::size_t max_len,
                                    std::size_t steps, double tolerance) {
  std::vector<WordRow> rows;
  for (const auto& form : enumerate_reachable_forms(g, max_len)) {
    if (!is_word(form)) continue;
    const auto p = word_probability(g, form, {steps});
    if (p.probability > tolerance * tolerance) {
      rows.push_back({form, p.probability, p.derivations, p.complete});
    }
  }
  std::sort(rows.begin(), rows.end(), [](const WordRow& x, const WordRow& y) {
    if (x.word.size() != y.word.size()) return x.word.size() < y.word.size();
    return x.word < y.word;
  });
  return rows;
}

// ---------------------------------------------------------------------------

namespace {

std::string num(double x) {
  std::ostringstream os;
  os << std::setprecision(12) << x;
  return os.str();
}

json envelope(const CliConfig& cfg) {
  return {{"tool_version", kToolVersion},
          {"grammar", cfg.grammar_path.string()},
          {"command", cfg.command},
          {"result", json::object()},
          {"violations", json::array()},
          {"notes", json::array()}};
}

void emit(std::ostream& out, const json& doc) { out << doc.dump(2) << '\n'; }

int usage_error(const CliConfig& cfg, std::ostream& out, std::ostream& err,
                const std::string& message) {
  if (cfg.json) {
    auto doc = envelope(cfg);
    doc["result"] = {{"error", message}};
    emit(out, doc);
  }
  err << "qcfg: " << message << '\n';
  return kUsageError;
}

// Loads the grammar or reports a usage error; returns nullopt on failure.
std::optional<QuantumGrammar> load(const CliConfig& cfg, std::ostream& out, std::ostream& err,
                                   int& status) {
  try {
    return load_grammar(cfg.grammar_path);
  } catch (const FormatError& e) {
    status = usage_error(cfg, out, err, cfg.grammar_path.string() + ": " + e.what());
    return std::nullopt;
  }
}

std::optional<SententialForm> parse_word(const QuantumGrammar& g, const CliConfig& cfg,
                                         std::ostream& out, std::ostream& err, int& status) {
  SententialForm w;
  try {
    w = g.parse_form(cfg.argument);
  } catch (const UnknownSymbol& e) {
    status = usage_error(cfg, out, err, std::string("cannot read word: ") + e.what());
    return std::nullopt;
  }
  if (!is_word(w)) {
    status = usage_error(cfg, out, err, "'" + cfg.argument + "' contains a nonterminal");
    return std::nullopt;
  }
  return w;
}

std::string matrix_summary(const TruncatedOrthogonalityReport& r) {
  std::ostringstream os;
  os << "rows orthonormal (non-boundary): " << (r.rows_orthonormal() ? "yes" : "no")
     << "; same-form column pairs orthogonal: " << (r.columns_orthogonal() ? "yes" : "no");
  return os.str();
}

std::string matrix_counts(const TruncatedOrthogonalityReport& r) {
  std::ostringstream os;
  os << "judged rows " << r.judged_rows << ", boundary " << r.boundary_rows << ", outside "
     << r.outside_rows << ", split " << r.split_rows << ", column pairs "
     << r.column_pairs_checked;
  return os.str();
}

}  // namespace

int run_check(const CliConfig& cfg, std::ostream& out, std::ostream& err) {
  int status = kPass;
  const auto g = load(cfg, out, err, status);
  if (!g) return status;

  WellFormednessOptions opts;
  opts.max_len = cfg.max_len;
  opts.mode = cfg.mode;
  opts.tolerance = cfg.tolerance;
  opts.structural_c2 = cfg.structural;
  const auto report = check_all(*g, opts);

  std::vector<std::string> notes;
  json matrices = json::array();
  std::vector<std::string> matrix_lines;
  bool matrices_ok = true;
  for (const auto& a : g->terminals()) {
    const auto m = build_evolution_matrix(*g, a, cfg.max_len);
    const auto orth = check_truncated_orthogonality(m, cfg.tolerance);
    matrices_ok = matrices_ok && orth.passed();
    auto jm = to_json(orth);
    jm["terminal"] = a.name;
    matrices.push_back(std::move(jm));
    matrix_lines.push_back("U_" + a.name + " (max_len " + std::to_string(cfg.max_len) +
                           "): " + matrix_summary(orth) + " [" + matrix_counts(orth) + "]");
  }

  if (report.c2_search_truncated) {
    notes.push_back("C2 verified up to sentential-form length " +
                    std::to_string(report.c2_search_bound));
  }
  if (report.passed != matrices_ok) {
    notes.push_back(std::string("disagreement: direct conditions ") +
                    (report.passed ? "pass" : "fail") + " but the truncated matrix check " +
                    (matrices_ok ? "passes" : "fails"));
  }
  for (const auto& s : report.structural_diagnostics) {
    notes.push_back(s.description);
  }

  const std::string verdict = std::string(report.passed ? "PASS" : "FAIL") + " (C1, C2@len≤" +
                              std::to_string(report.c2_search_bound) + ", C3)";
  if (cfg.json) {
    auto doc = envelope(cfg);
    doc["result"] = to_json(*g, report);
    doc["result"]["verdict"] = verdict;
    doc["result"]["matrices"] = std::move(matrices);
    doc["result"]["matrices_passed"] = matrices_ok;
    doc["result"]["disagreement"] = report.passed != matrices_ok;
    doc["violations"] = doc["result"]["violations"];
    doc["notes"] = notes;
    emit(out, doc);
  } else {
    out << "grammar " << cfg.grammar_path.string() << ": dimension " << g->dimension() << ", "
        << g->productions().size() << " rules, mode " << mode_name(cfg.mode) << '\n';
    for (const auto& v : report.violations) {
      out << condition_label(v.condition) << " violation: " << v.description
          << " (measured " << format_complex(v.measured) << ", expected "
          << format_complex(v.expected) << ")\n";
    }
    for (const auto& line : matrix_lines) out << line << '\n';
    for (const auto& n : notes) out << "note: " << n << '\n';
    out << verdict << '\n';
  }
  return report.passed ? kPass : kCheckFailed;
}

int run_prob(const CliConfig& cfg, std::ostream& out, std::ostream& err) {
  int status = kPass;
  const auto g = load(cfg, out, err, status);
  if (!g) return status;
  const auto w = parse_word(*g, cfg, out, err, status);
  if (!w) return status;

  ProbabilityResult p;
  try {
    p = word_probability(*g, *w, {cfg.steps});
  } catch (const DerivationError& e) {
    return usage_error(cfg, out, err, e.what());
  }
  std::vector<std::string> notes;
  if (!p.complete) {
    notes.push_back("step cap " + std::to_string(cfg.steps) +
                    " reached; the value may be incomplete");
  }

  if (cfg.json) {
    auto doc = envelope(cfg);
    doc["result"] = {{"word", w->to_string()},
                     {"probability", p.probability},
                     {"amplitude", to_json(p.amplitude)},
                     {"derivations", p.derivations},
                     {"complete", p.complete}};
    doc["notes"] = notes;
    emit(out, doc);
  } else {
    out << "f(" << w->to_string() << ") = " << num(p.probability) << " (" << p.derivations
        << (p.derivations == 1 ? " derivation" : " derivations") << ")\n";
    out << "amplitude " << format_vector(p.amplitude) << '\n';
    for (const auto& n : notes) out << "note: " << n << '\n';
  }
  return kPass;
}

int run_derive(const CliConfig& cfg, std::ostream& out, std::ostream& err) {
  int status = kPass;
  const auto g = load(cfg, out, err, status);
  if (!g) return status;
  const auto w = parse_word(*g, cfg, out, err, status);
  if (!w) return status;

  EnumerationResult result;
  try {
    result = enumerate_derivations(*g, *w, {cfg.steps});
  } catch (const DerivationError& e) {
    return usage_error(cfg, out, err, e.what());
  }

  json chains = json::array();
  for (const auto& d : result.derivations) {
    const auto forms = replay(*g, d);
    json steps = json::array();
    for (const auto& s : d.steps) {
      steps.push_back({{"production", s.production},
                       {"rule", g->production(s.production).to_string()},
                       {"position", s.position}});
    }
    json jforms = json::array();
    for (const auto& f : forms) jforms.push_back(f.to_string());
    chains.push_back({{"forms", jforms},
                      {"steps", steps},
                      {"amplitude", to_json(derivation_amplitude(*g, d))}});
  }

  if (cfg.json) {
    auto doc = envelope(cfg);
    doc["result"] = {{"word", w->to_string()},
                     {"derivations", chains},
                     {"count", result.derivations.size()},
                     {"complete", result.complete}};
    if (!result.complete) doc["notes"].push_back("step cap reached; listing may be incomplete");
    emit(out, doc);
    return kPass;
  }

  if (result.derivations.empty()) out << "no derivations of " << w->to_string() << '\n';
  for (std::size_t i = 0; i < result.derivations.size(); ++i) {
    const auto& d = result.derivations[i];
    const auto forms = replay(*g, d);
    out << "derivation " << (i + 1) << ": ";
    for (std::size_t k = 0; k < forms.size(); ++k) {
      if (k) out << " => ";
      out << forms[k].to_string();
    }
    out << '\n';
    for (std::size_t k = 0; k < d.steps.size(); ++k) {
      out << "  " << forms[k].to_string() << " => " << forms[k + 1].to_string() << "  ["
          << g->production(d.steps[k].production).to_string() << "]\n";
    }
    out << "  amplitude " << format_vector(derivation_amplitude(*g, d)) << '\n';
  }
  if (!result.complete) out << "note: step cap reached; listing may be incomplete\n";
  return kPass;
}

int run_words(const CliConfig& cfg, std::ostream& out, std::ostream& err) {
  int status = kPass;
  const auto g = load(cfg, out, err, status);
  if (!g) return status;

  std::vector<WordRow> rows;
  try {
    rows = language_table(*g, cfg.max_len, cfg.steps, cfg.tolerance);
  } catch (const DerivationError& e) {
    return usage_error(cfg, out, err, e.what());
  }
  std::vector<std::string> notes;
  if (g->has_epsilon_rule()) {
    notes.push_back("grammar has epsilon rules; words whose derivations pass through forms "
                    "longer than max_len are not listed");
  }

  if (cfg.json) {
    auto doc = envelope(cfg);
    json words = json::array();
    for (const auto& r : rows) {
      words.push_back({{"word", r.word.to_string()},
                       {"probability", r.probability},
                       {"derivations", r.derivations}});
    }
    doc["result"] = {{"max_len", cfg.max_len}, {"words", words}};
    doc["notes"] = notes;
    emit(out, doc);
  } else {
    if (rows.empty()) out << "no words of length <= " << cfg.max_len << '\n';
    for (const auto& r : rows) {
      out << std::left << std::setw(static_cast<int>(cfg.max_len) + 2) << r.word.to_string()
          << num(r.probability) << "  " << r.derivations << '\n';
    }
    for (const auto& n : notes) out << "note: " << n << '\n';
  }
  return kPass;
}

int run_matrix(const CliConfig& cfg, std::ostream& out, std::ostream& err) {
  int status = kPass;
  const auto g = load(cfg, out, err, status);
  if (!g) return status;
  if (!g->has_terminal(cfg.argument)) {
    return usage_error(cfg, out, err, "unknown terminal '" + cfg.argument + "'");
  }
  const auto m = build_evolution_matrix(*g, terminal(cfg.argument), cfg.max_len);
  const auto orth = check_truncated_orthogonality(m, cfg.tolerance);
  const json exported = to_json(*g, m, cfg.dense);

  if (cfg.out_path) {
    std::ofstream f(*cfg.out_path);
    if (!f) return usage_error(cfg, out, err, "cannot write " + cfg.out_path->string());
    f << exported.dump(2) << '\n';
  }

  if (cfg.json) {
    auto doc = envelope(cfg);
    doc["result"] = {{"summary", to_json(orth)},
                     {"rows", m.rows.size()},
                     {"cols", m.cols.size()}};
    if (!cfg.out_path) doc["result"]["matrix"] = exported;
    emit(out, doc);
  } else {
    out << "U_" << cfg.argument << " truncated at length " << cfg.max_len << ": "
        << m.rows.size() << " rows, " << m.cols.size() << " columns, " << m.entries.size()
        << " nonzero entries\n";
    out << matrix_summary(orth) << '\n';
    out << matrix_counts(orth) << '\n';
    for (const auto& i : orth.row_issues) {
      out << "  row Gram (" << m.rows[i.first].to_string() << ", "
          << m.rows[i.second].to_string() << ") = " << format_complex(i.value) << ", expected "
          << format_complex(i.expected) << '\n';
    }
    for (const auto& i : orth.column_issues) {
      out << "  columns (" << m.cols[i.first].form.to_string() << ", "
          << g->production(m.cols[i.first].production).to_string() << ") and ("
          << m.cols[i.second].form.to_string() << ", "
          << g->production(m.cols[i.second].production).to_string()
          << ") inner product " << format_complex(i.value) << '\n';
    }
    if (cfg.out_path) out << "wrote " << cfg.out_path->string() << '\n';
  }
  return orth.passed() ? kPass : kCheckFailed;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Quantum context-free grammar toolkit", "qcfg"};
  app.require_subcommand(1);
  CliConfig cfg;
  std::string mode = "strict";

  auto common = [&](CLI::App* sub) {
    sub->add_option("grammar", cfg.grammar_path, "grammar file")->required();
    sub->add_option("--tolerance", cfg.tolerance, "comparison tolerance")
        ->check(CLI::PositiveNumber);
    sub->add_option("--max-len", cfg.max_len, "sentential-form length bound")
        ->check(CLI::Range(std::size_t{1}, std::numeric_limits<std::size_t>::max()));
    sub->add_option("--steps", cfg.steps, "derivation step cap")
        ->check(CLI::Range(std::size_t{1}, std::numeric_limits<std::size_t>::max()));
    sub->add_option("--mode", mode, "strict or aggregate")
        ->check(CLI::IsMember({"strict", "aggregate"}));
    sub->add_flag("--json", cfg.json, "emit a JSON report");
    sub->add_option("--out", cfg.out_path, "output path for exports");
  };

  auto* check = app.add_subcommand("check", "check the well-formedness conditions");
  common(check);
  check->add_flag("--structural", cfg.structural,
                  "also report every non-orthogonal production pair (diagnostic only)");
  auto* prob = app.add_subcommand("prob", "probability of a word");
  common(prob);
  prob->add_option("word", cfg.argument, "word")->required();
  auto* derive = app.add_subcommand("derive", "list the leftmost derivations of a word");
  common(derive);
  derive->add_option("word", cfg.argument, "word")->required();
  auto* words = app.add_subcommand("words", "table of words with nonzero probability");
  common(words);
  auto* matrix = app.add_subcommand("matrix", "export a truncated evolution matrix");
  common(matrix);
  matrix->add_option("terminal", cfg.argument, "terminal symbol")->required();
  matrix->add_flag("--dense", cfg.dense, "include dense per-component matrices");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kPass;
  } catch (const CLI::ParseError& e) {
    err << "qcfg: " << e.what() << '\n' << app.help();
    return kUsageError;
  }
  cfg.mode = mode == "aggregate" ? CheckMode::aggregate : CheckMode::strict;

  try {
    if (check->parsed()) {
      cfg.command = "check";
      return run_check(cfg, out, err);
    }
    if (prob->parsed()) {
      cfg.command = "prob";
      return run_prob(cfg, out, err);
    }
    if (derive->parsed()) {
      cfg.command = "derive";
      return run_derive(cfg, out, err);
    }
    if (words->parsed()) {
      cfg.command = "words";
      return run_words(cfg, out, err);
    }
    cfg.command = "matrix";
    return run_matrix(cfg, out, err);
  } catch (const std::exception& e) {
    return usage_error(cfg, out, err, e.what());
  }
}

}  // namespace qcfg::cli
