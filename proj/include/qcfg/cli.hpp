#pragma once

#include "qcfg/evolution.hpp"
#include "qcfg/wellformedness.hpp"

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

namespace qcfg::cli {

inline constexpr const char* kToolVersion = "0.1.0";

/// Exit codes of the qcfg tool.
enum ExitCode : int { kPass = 0, kCheckFailed = 1, kUsageError = 2 };

struct CliConfig {
  std::filesystem::path grammar_path;
  std::string command;
  std::string argument;  // word for prob/derive, terminal for matrix
  double tolerance = kDefaultTolerance;
  std::size_t max_len = 10;
  std::size_t steps = 64;
  CheckMode mode = CheckMode::strict;
  bool json = false;
  bool structural = false;
  bool dense = false;
  std::optional<std::filesystem::path> out_path;
};

/// Parse argv-style arguments (without the program name) and dispatch.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

int run_check(const CliConfig& cfg, std::ostream& out, std::ostream& err);
int run_prob(const CliConfig& cfg, std::ostream& out, std::ostream& err);
int run_derive(const CliConfig& cfg, std::ostream& out, std::ostream& err);
int run_words(const CliConfig& cfg, std::ostream& out, std::ostream& err);
int run_matrix(const CliConfig& cfg, std::ostream& out, std::ostream& err);

// JSON encodings shared by the tool and the Python bindings.
nlohmann::json to_json(Complex z);
nlohmann::json to_json(const AmplitudeVector& v);
nlohmann::json to_json(const QuantumGrammar& g, const ConditionViolation& v);
nlohmann::json to_json(const QuantumGrammar& g, const WellFormednessReport& r);
nlohmann::json to_json(const QuantumGrammar& g, const EvolutionMatrixSlice& m, bool dense);
nlohmann::json to_json(const TruncatedOrthogonalityReport& r);

/// Words of length <= max_len with f(w) > tolerance^2, shortest first, then
/// lexicographic. Candidates come from the reachable forms within the bound.
struct WordRow {
  SententialForm word;
  double probability;
  std::uint64_t derivations;
  bool complete;
};
std::vector<WordRow> language_table(const QuantumGrammar& g, std::size_t max_len,
                                    std::size_t steps, double tolerance);

}  // namespace qcfg::cli
