#pragma once

#include "qcfg/format.hpp"

#include <cmath>
#include <filesystem>
#include <string>

namespace qcfg::testing {

inline std::filesystem::path data_path(const std::string& name) {
  return std::filesystem::path(QCFG_DATA_DIR) / name;
}

inline QuantumGrammar example_grammar() { return load_grammar(data_path("anbn.qcfg")); }

// 1/(2*sqrt(3)), evaluated to 40 digits with mpmath and rounded.
inline constexpr double kInvTwoSqrt3 = 0.28867513459481288225457439025098;

/// Closed-form word amplitude of a^n b^n (n >= 2) in the example grammar.
inline AmplitudeVector anbn_closed_form(int n) {
  const Complex i_half{0.0, 0.5};
  const Complex neg_i_half{0.0, -0.5};
  const double scale = (1.0 + std::sqrt(3.0)) / std::pow(2.0 * std::sqrt(3.0), n);
  return {std::pow(i_half, n) * scale, -std::pow(neg_i_half, n) * scale,
          std::pow(neg_i_half, n) * scale, -std::pow(i_half, n) * scale};
}

inline double anbn_probability(int n) {
  return 8.0 * (2.0 + std::sqrt(3.0)) / std::pow(48.0, n);
}

inline SententialForm anbn_word(const QuantumGrammar& g, int n) {
  return g.parse_form(std::string(n, 'a') + std::string(n, 'b'));
}

}  // namespace qcfg::testing
