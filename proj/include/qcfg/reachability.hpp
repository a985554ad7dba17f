#pragma once

#include "qcfg/grammar.hpp"

#include <cstddef>
#include <optional>
#include <unordered_map>
#include <vector>

namespace qcfg {

/// An incoming one-step leftmost edge: `parent` rewritten with `production`.
struct ParentEdge {
  std::size_t parent;  // index into ReachableGraph::forms
  std::size_t production;

  friend bool operator==(const ParentEdge&, const ParentEdge&) = default;
};

/// Breadth-first closure of the start form under leftmost rewriting, cut at
/// forms longer than max_len. Forms are ordered by discovery level, and
/// lexicographically (by symbol name) inside a level.
struct ReachableGraph {
  std::size_t max_len = 0;
  std::vector<SententialForm> forms;
  std::vector<std::size_t> level;
  std::vector<std::vector<ParentEdge>> parents;  // parallel to forms
  /// Some successor was discarded for exceeding max_len.
  bool truncated = false;

  std::optional<std::size_t> index_of(const SententialForm& s) const;

  std::unordered_map<SententialForm, std::size_t> index;
};

ReachableGraph explore_reachable(const QuantumGrammar& g, std::size_t max_len);

}  // namespace qcfg
