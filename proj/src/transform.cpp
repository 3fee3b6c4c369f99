// The worklist transform and the three radical expansion rules.
#include "atag/transform.hpp"

#include <bit>
#include <deque>
#include <utility>

namespace atag {

namespace {

// Validates the shared expansion preconditions and returns the edge's
// transition (copied, since expansion removes it).
Transition pending_transition(const AttackGraph& graph, const PendingEdge& edge,
                              const Radical& radical) {
  if (edge.action != radical.root) {
    throw GraphInvariantError("expansion: edge action \"" + edge.action +
                              "\" does not match radical \"" + radical.root +
                              "\"");
  }
  if (radical.children.empty()) {
    throw GraphInvariantError("expansion: radical \"" + radical.root +
                              "\" has no children");
  }
  const Transition& t = graph.transition(edge.source, edge.action);
  if (t.expanded) {
    throw GraphInvariantError("expansion: edge (s" +
                              std::to_string(edge.source) + ", \"" +
                              edge.action + "\") is already expanded");
  }
  return t;
}

// New pending edges introduced by the latest subgraph copy: every pending
// transition whose source is a state created by that copy, in creation order.
void collect_copied_pending(const AttackGraph& graph, StateId first_new_state,
                            std::vector<PendingEdge>& pending) {
  for (const Transition& t : graph.transitions()) {
    if (t.source >= first_new_state && !t.expanded) {
      pending.push_back({t.source, t.action, t.target});
    }
  }
}

void check_budget(const AttackGraph& graph, const PendingEdge& edge,
                  const Radical& radical, const TransformOptions& options) {
  const std::size_t n = radical.children.size();
  std::uint64_t new_states = 0;
  std::uint64_t new_transitions = 0;
  if (n == 1 || radical.op == Operator::Sand) {
    new_states = n;
    new_transitions = n + 1;
  } else if (radical.op == Operator::Or) {
    auto [sub_states, sub_transitions] = graph.subgraph_size(edge.target);
    new_states = n + (n - 1) * static_cast<std::uint64_t>(sub_states);
    new_transitions =
        2 * n + (n - 1) * static_cast<std::uint64_t>(sub_transitions);
  } else {
    // The lattice needs 2^n - 1 states; refuse before allocating any of them.
    if (n >= 63 || ((std::uint64_t{1} << n) - 1) > options.state_budget) {
      throw ResourceLimitError(
          "AND radical \"" + radical.root + "\" needs 2^" + std::to_string(n) +
          "-1 states, exceeding the state budget of " +
          std::to_string(options.state_budget));
    }
    new_states = (std::uint64_t{1} << n) - 1;
    new_transitions = n * (std::uint64_t{1} << (n - 1)) + 1;
  }
  if (graph.state_count() + new_states > options.state_budget) {
    throw ResourceLimitError(
        "expanding \"" + radical.root + "\" would raise the state count to " +
        std::to_string(graph.state_count() + new_states) +
        ", exceeding the state budget of " +
        std::to_string(options.state_budget));
  }
  if (graph.transition_count() + new_transitions - 1 > options.state_budget) {
    throw ResourceLimitError(
        "expanding \"" + radical.root +
        "\" would raise the transition count to " +
        std::to_string(graph.transition_count() + new_transitions - 1) +
        ", exceeding the budget of " + std::to_string(options.state_budget));
  }
}

}  // namespace

std::vector<PendingEdge> expand_or(AttackGraph& graph, const PendingEdge& edge,
                                   const Radical& radical) {
  if (radical.op != Operator::Or) {
    throw GraphInvariantError("expand_or: radical \"" + radical.root +
                              "\" is not an OR radical");
  }
  const Transition replaced = pending_transition(graph, edge, radical);
  graph.remove_transition(edge.source, edge.action);

  std::vector<PendingEdge> pending;
  const std::size_t n = radical.children.size();
  for (std::size_t i = 0; i < n; ++i) {
    const StateId leg = graph.add_state(Provenance::Q);
    graph.add_transition(edge.source, radical.children[i], leg, false);
    pending.push_back({edge.source, radical.children[i], leg});
    if (i == 0) {
      // The first leg keeps the original subgraph below the replaced edge.
      graph.add_transition(leg, radical.root, replaced.target, true);
    } else {
      const StateId first_new_state =
          static_cast<StateId>(graph.state_count());
      auto [copy_entry, mapping] = graph.copy_subgraph(replaced.target);
      graph.add_transition(leg, radical.root, copy_entry, true);
      // The copy may itself contain pending edges; they expand like any other.
      collect_copied_pending(graph, first_new_state, pending);
    }
  }
  return pending;
}

std::vector<PendingEdge> expand_and(AttackGraph& graph, const PendingEdge& edge,
                                    const Radical& radical) {
  if (radical.op != Operator::And) {
    throw GraphInvariantError("expand_and: radical \"" + radical.root +
                              "\" is not an AND radical");
  }
  const Transition replaced = pending_transition(graph, edge, radical);
  const std::size_t n = radical.children.size();
  if (n >= 63) {
    throw ResourceLimitError("expand_and: lattice over " + std::to_string(n) +
                             " children is not representable");
  }
  graph.remove_transition(edge.source, edge.action);

  // One state per non-empty child subset, allocated row by row (subset size),
  // ascending bitmask within a row. Each edge applies one more child action.
  const std::uint64_t full = (std::uint64_t{1} << n) - 1;
  std::vector<StateId> subset_state(full + 1, 0);
  for (std::size_t size = 1; size <= n; ++size) {
    for (std::uint64_t mask = 1; mask <= full; ++mask) {
      if (static_cast<std::size_t>(std::popcount(mask)) == size) {
        subset_state[mask] = graph.add_state(Provenance::Q);
      }
    }
  }

  std::vector<PendingEdge> pending;
  for (std::size_t i = 0; i < n; ++i) {
    const StateId target = subset_state[std::uint64_t{1} << i];
    graph.add_transition(edge.source, radical.children[i], target, false);
    pending.push_back({edge.source, radical.children[i], target});
  }
  for (std::size_t size = 1; size < n; ++size) {
    for (std::uint64_t mask = 1; mask <= full; ++mask) {
      if (static_cast<std::size_t>(std::popcount(mask)) != size) continue;
      for (std::size_t i = 0; i < n; ++i) {
        if ((mask >> i) & 1) continue;
        const StateId source = subset_state[mask];
        const StateId target = subset_state[mask | (std::uint64_t{1} << i)];
        graph.add_transition(source, radical.children[i], target, false);
        pending.push_back({source, radical.children[i], target});
      }
    }
  }
  graph.add_transition(subset_state[full], radical.root, replaced.target, true);
  return pending;
}

std::vector<PendingEdge> expand_sand(AttackGraph& graph,
                                     const PendingEdge& edge,
                                     const Radical& radical) {
  if (radical.op != Operator::Sand && radical.children.size() != 1) {
    throw GraphInvariantError("expand_sand: radical \"" + radical.root +
                              "\" is not a SAND or single-child radical");
  }
  const Transition replaced = pending_transition(graph, edge, radical);
  graph.remove_transition(edge.source, edge.action);

  std::vector<PendingEdge> pending;
  StateId previous = edge.source;
  for (const ActionLabel& child : radical.children) {
    const StateId next = graph.add_state(Provenance::Q);
    graph.add_transition(previous, child, next, false);
    pending.push_back({previous, child, next});
    previous = next;
  }
  graph.add_transition(previous, radical.root, replaced.target, true);
  return pending;
}

TransformResult transform(const AttackTree& tree,
                          const TransformOptions& options) {
  ValidationReport report = validate_tree(tree);
  if (!report.ok) throw ValidationError(std::move(report));

  const RadicalDictionary dictionary = build_radical_dictionary(tree);
  TransformResult result;
  result.graph = new_seed_graph(top(tree));
  std::deque<PendingEdge> worklist;
  worklist.push_back({0, top(tree), 1});

  while (!worklist.empty()) {
    const PendingEdge edge = std::move(worklist.front());
    worklist.pop_front();
    auto entry = dictionary.find(edge.action);
    if (entry == dictionary.end()) continue;  // leaf action, stays as-is
    const Radical& radical = entry->second;

    check_budget(result.graph, edge, radical, options);
    std::vector<PendingEdge> created;
    if (radical.children.size() == 1) {
      created = expand_sand(result.graph, edge, radical);
      ++result.stats.expansions_sand;
    } else {
      switch (radical.op) {
        case Operator::Or:
          created = expand_or(result.graph, edge, radical);
          ++result.stats.expansions_or;
          break;
        case Operator::And:
          created = expand_and(result.graph, edge, radical);
          ++result.stats.expansions_and;
          break;
        case Operator::Sand:
          created = expand_sand(result.graph, edge, radical);
          ++result.stats.expansions_sand;
          break;
      }
    }
    for (PendingEdge& p : created) worklist.push_back(std::move(p));
  }

  for (const Transition& t : result.graph.transitions()) {
    if (!t.expanded && dictionary.count(t.action) != 0) {
      throw GraphInvariantError("transform: pending edge (s" +
                                std::to_string(t.source) + ", \"" + t.action +
                                "\") survived the worklist");
    }
  }
  label_states(result.graph);

  result.stats.states_total = result.graph.state_count();
  result.stats.transitions_total = result.graph.transition_count();
  result.stats.success_states = result.graph.success_states().size();
  return result;
}

}  // namespace atag
