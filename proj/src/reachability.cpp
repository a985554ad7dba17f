#include "qcfg/reachability.hpp"

#include "qcfg/derivation.hpp"

#include <algorithm>

namespace qcfg {

std::optional<std::size_t> ReachableGraph::index_of(const SententialForm& s) const {
  const auto it = index.find(s);
  if (it == index.end()) return std::nullopt;
  return it->second;
}

ReachableGraph explore_reachable(const QuantumGrammar& g, std::size_t max_len) {
  ReachableGraph graph;
  graph.max_len = max_len;

  auto add = [&](SententialForm s, std::size_t lvl) {
    const std::size_t id = graph.forms.size();
    graph.index.emplace(s, id);
    graph.forms.push_back(std::move(s));
    graph.level.push_back(lvl);
    graph.parents.emplace_back();
    return id;
  };

  const auto start = g.start_form();
  if (start.size() > max_len) {
    graph.truncated = true;
    return graph;
  }
  add(start, 0);

  std::vector<std::size_t> frontier{0};
  for (std::size_t lvl = 1; !frontier.empty(); ++lvl) {
    std::vector<SententialForm> fresh;
    std::vector<std::pair<SententialForm, ParentEdge>> edges;
    for (auto id : frontier) {
      for (auto& succ : leftmost_successors(g, graph.forms[id])) {
        if (succ.form.size() > max_len) {
          graph.truncated = true;
          continue;
        }
        if (!graph.index.contains(succ.form)) fresh.push_back(succ.form);
        edges.emplace_back(std::move(succ.form), ParentEdge{id, succ.production});
      }
    }
    std::sort(fresh.begin(), fresh.end());
    fresh.erase(std::unique(fresh.begin(), fresh.end()), fresh.end());
    frontier.clear();
    for (auto& s : fresh) frontier.push_back(add(std::move(s), lvl));
    for (auto& [form, edge] : edges) {
      auto& in = graph.parents[graph.index.at(form)];
      if (std::find(in.begin(), in.end(), edge) == in.end()) in.push_back(edge);
    }
  }
  return graph;
}

}  // namespace qcfg
