// Attack graph storage plus the path, labeling, and invariant machinery.
#include "atag/graph.hpp"

#include <algorithm>
#include <deque>
#include <optional>
#include <unordered_map>
#include <unordered_set>

namespace atag {

namespace {

std::string state_name(StateId state) { return "s" + std::to_string(state); }

std::string format_cycle(const std::vector<StateId>& cycle) {
  std::string out;
  for (StateId state : cycle) {
    if (!out.empty()) out += " -> ";
    out += state_name(state);
  }
  return out;
}

std::string format_label_set(const std::set<ActionLabel>& labels) {
  std::string out = "{";
  const char* sep = "";
  for (const ActionLabel& label : labels) {
    out += sep;
    out += label;
    sep = ", ";
  }
  return out + "}";
}

// First directed cycle found, as s -> ... -> s, or nullopt if acyclic.
// Scans every state, not just the ones reachable from initial states.
std::optional<std::vector<StateId>> find_cycle(const AttackGraph& g) {
  enum class Color { White, Gray, Black };
  const std::size_t n = g.state_count();
  std::vector<Color> color(n, Color::White);

  struct Frame {
    StateId state;
    std::vector<Transition> out;
    std::size_t next;
  };

  for (StateId root = 0; root < n; ++root) {
    if (color[root] != Color::White) continue;
    std::vector<Frame> stack;
    std::vector<StateId> chain;
    stack.push_back({root, g.out_transitions(root), 0});
    color[root] = Color::Gray;
    chain.push_back(root);
    while (!stack.empty()) {
      Frame& frame = stack.back();
      if (frame.next < frame.out.size()) {
        StateId target = frame.out[frame.next++].target;
        if (color[target] == Color::Gray) {
          auto begin = std::find(chain.begin(), chain.end(), target);
          std::vector<StateId> cycle(begin, chain.end());
          cycle.push_back(target);
          return cycle;
        }
        if (color[target] == Color::White) {
          color[target] = Color::Gray;
          chain.push_back(target);
          stack.push_back({target, g.out_transitions(target), 0});
        }
      } else {
        color[frame.state] = Color::Black;
        chain.pop_back();
        stack.pop_back();
      }
    }
  }
  return std::nullopt;
}

// Kahn's algorithm with an ordered ready set; requires an acyclic graph.
std::vector<StateId> topological_order(const AttackGraph& g) {
  const std::size_t n = g.state_count();
  std::vector<std::size_t> in_degree(n, 0);
  for (const Transition& t : g.transitions()) ++in_degree[t.target];
  std::set<StateId> ready;
  for (StateId s = 0; s < n; ++s) {
    if (in_degree[s] == 0) ready.insert(s);
  }
  std::vector<StateId> order;
  order.reserve(n);
  while (!ready.empty()) {
    StateId s = *ready.begin();
    ready.erase(ready.begin());
    order.push_back(s);
    for (const Transition& t : g.out_transitions(s)) {
      if (--in_degree[t.target] == 0) ready.insert(t.target);
    }
  }
  return order;
}

std::set<StateId> forward_reachable(const AttackGraph& g,
                                    const std::set<StateId>& from) {
  std::set<StateId> seen = from;
  std::deque<StateId> queue(from.begin(), from.end());
  while (!queue.empty()) {
    StateId s = queue.front();
    queue.pop_front();
    for (const Transition& t : g.out_transitions(s)) {
      if (seen.insert(t.target).second) queue.push_back(t.target);
    }
  }
  return seen;
}

// Propagates label sets in topological order; returns a witness message on
// the first inconsistency. Used by both label_states and check_invariants.
struct LabelResult {
  std::vector<std::set<ActionLabel>> labels;
  std::optional<std::string> inconsistency;
};

LabelResult propagate_labels(const AttackGraph& g) {
  const std::size_t n = g.state_count();
  std::vector<std::optional<std::set<ActionLabel>>> partial(n);
  for (StateId s : g.initial_states()) partial[s] = std::set<ActionLabel>{};
  LabelResult result;
  for (StateId s : topological_order(g)) {
    if (!partial[s].has_value()) continue;  // not reachable from an initial state
    for (const Transition& t : g.out_transitions(s)) {
      std::set<ActionLabel> candidate = *partial[s];
      candidate.insert(t.action);
      if (!partial[t.target].has_value()) {
        partial[t.target] = std::move(candidate);
      } else if (*partial[t.target] != candidate) {
        result.inconsistency =
            "state " + state_name(t.target) + " reachable with label sets " +
            format_label_set(*partial[t.target]) + " and " +
            format_label_set(candidate);
        return result;
      }
    }
  }
  result.labels.resize(n);
  for (StateId s = 0; s < n; ++s) {
    if (partial[s].has_value()) result.labels[s] = std::move(*partial[s]);
  }
  return result;
}

}  // namespace

StateId AttackGraph::add_state(Provenance provenance) {
  const StateId id = static_cast<StateId>(provenance_.size());
  provenance_.push_back(provenance);
  out_.emplace_back();
  if (!labels_.empty()) labels_.emplace_back();
  return id;
}

void AttackGraph::require_state(StateId state, const char* role) const {
  if (state >= provenance_.size()) {
    throw GraphInvariantError("unknown " + std::string(role) + " state " +
                              state_name(state));
  }
}

void AttackGraph::add_transition(StateId source, ActionLabel action,
                                 StateId target, bool expanded) {
  require_state(source, "source");
  require_state(target, "target");
  auto& index = out_[source];
  if (index.count(action) != 0) {
    throw GraphInvariantError(
        "duplicate transition (" + state_name(source) + ", \"" + action +
        "\"): the transition relation must remain a partial function");
  }
  const std::uint64_t seq = next_seq_++;
  index.emplace(action, seq);
  transitions_.emplace(
      seq, Transition{source, std::move(action), target, expanded});
}

void AttackGraph::remove_transition(StateId source, const ActionLabel& action) {
  require_state(source, "source");
  auto& index = out_[source];
  auto it = index.find(action);
  if (it == index.end()) {
    throw GraphInvariantError("no transition (" + state_name(source) + ", \"" +
                              action + "\") to remove");
  }
  transitions_.erase(it->second);
  index.erase(it);
}

bool AttackGraph::has_transition(StateId source,
                                 const ActionLabel& action) const {
  return source < out_.size() && out_[source].count(action) != 0;
}

const Transition& AttackGraph::transition(StateId source,
                                          const ActionLabel& action) const {
  require_state(source, "source");
  auto it = out_[source].find(action);
  if (it == out_[source].end()) {
    throw GraphInvariantError("no transition (" + state_name(source) + ", \"" +
                              action + "\")");
  }
  return transitions_.at(it->second);
}

std::pair<StateId, std::map<StateId, StateId>> AttackGraph::copy_subgraph(
    StateId entry) {
  require_state(entry, "entry");
  std::set<StateId> reachable = forward_reachable(*this, {entry});
  std::map<StateId, StateId> mapping;
  for (StateId original : reachable) {  // ascending original-id order
    StateId copy = add_state(provenance_[original]);
    if (success_.count(original) != 0) mark_success(copy);
    mapping.emplace(original, copy);
  }
  std::vector<Transition> to_copy;
  for (const auto& [seq, t] : transitions_) {
    if (reachable.count(t.source) != 0) to_copy.push_back(t);
  }
  for (const Transition& t : to_copy) {
    add_transition(mapping.at(t.source), t.action, mapping.at(t.target),
                   t.expanded);
  }
  return {mapping.at(entry), std::move(mapping)};
}

Provenance AttackGraph::provenance(StateId state) const {
  require_state(state, "queried");
  return provenance_[state];
}

void AttackGraph::mark_initial(StateId state) {
  require_state(state, "initial");
  if (state_count() > 1 && success_.count(state) != 0) {
    throw GraphInvariantError("state " + state_name(state) +
                              " cannot be both initial and success");
  }
  initial_.insert(state);
}

void AttackGraph::mark_success(StateId state) {
  require_state(state, "success");
  if (state_count() > 1 && initial_.count(state) != 0) {
    throw GraphInvariantError("state " + state_name(state) +
                              " cannot be both initial and success");
  }
  success_.insert(state);
}

std::vector<Transition> AttackGraph::transitions() const {
  std::vector<Transition> out;
  out.reserve(transitions_.size());
  for (const auto& [seq, t] : transitions_) out.push_back(t);
  return out;
}

std::vector<Transition> AttackGraph::out_transitions(StateId state) const {
  require_state(state, "queried");
  std::vector<Transition> out;
  out.reserve(out_[state].size());
  for (const auto& [action, seq] : out_[state]) {
    out.push_back(transitions_.at(seq));
  }
  return out;
}

std::pair<std::size_t, std::size_t> AttackGraph::subgraph_size(
    StateId entry) const {
  require_state(entry, "entry");
  std::set<StateId> reachable = forward_reachable(*this, {entry});
  std::size_t edges = 0;
  for (StateId s : reachable) edges += out_[s].size();
  return {reachable.size(), edges};
}

const std::set<ActionLabel>& AttackGraph::state_labels(StateId state) const {
  require_state(state, "queried");
  if (labels_.empty()) {
    throw GraphInvariantError("state labels have not been assigned");
  }
  return labels_[state];
}

void AttackGraph::set_labels(std::vector<std::set<ActionLabel>> labels) {
  if (labels.size() != state_count()) {
    throw GraphInvariantError("label vector size " +
                              std::to_string(labels.size()) +
                              " does not match state count " +
                              std::to_string(state_count()));
  }
  labels_ = std::move(labels);
}

void AttackGraph::clear_labels() { labels_.clear(); }

bool AttackGraph::operator==(const AttackGraph& other) const {
  if (provenance_ != other.provenance_ || labels_ != other.labels_ ||
      initial_ != other.initial_ || success_ != other.success_ ||
      transitions_.size() != other.transitions_.size()) {
    return false;
  }
  // Creation order matters; the sequence numbers themselves do not.
  auto it = transitions_.begin();
  auto jt = other.transitions_.begin();
  for (; it != transitions_.end(); ++it, ++jt) {
    if (!(it->second == jt->second)) return false;
  }
  return true;
}

AttackGraph new_seed_graph(const ActionLabel& root_action) {
  AttackGraph g;
  StateId s0 = g.add_state(Provenance::P);
  StateId ss = g.add_state(Provenance::P);
  g.mark_initial(s0);
  g.mark_success(ss);
  g.add_transition(s0, root_action, ss, false);
  return g;
}

TraceSet enumerate_paths(const AttackGraph& graph, std::size_t max_length,
                         std::size_t max_traces) {
  if (max_length == 0) {
    throw std::invalid_argument("enumerate_paths: max_length must be positive");
  }
  if (auto cycle = find_cycle(graph)) {
    throw GraphInvariantError("enumerate_paths: graph is cyclic (" +
                              format_cycle(*cycle) + ")");
  }
  TraceSet traces;
  auto record = [&](const Trace& prefix) {
    if (prefix.empty()) return;  // a trace needs at least one action
    traces.insert(prefix);
    if (traces.size() > max_traces) {
      throw ResourceLimitError("enumerate_paths: more than " +
                               std::to_string(max_traces) + " paths");
    }
  };

  struct Frame {
    std::vector<Transition> out;
    std::size_t next;
  };
  for (StateId start : graph.initial_states()) {
    std::vector<Frame> stack;
    Trace prefix;
    if (graph.success_states().count(start) != 0) record(prefix);
    stack.push_back({graph.out_transitions(start), 0});
    while (!stack.empty()) {
      Frame& frame = stack.back();
      if (frame.next < frame.out.size()) {
        const Transition& t = frame.out[frame.next++];
        if (prefix.size() + 1 > max_length) {
          throw ResourceLimitError(
              "enumerate_paths: path longer than the bound " +
              std::to_string(max_length));
        }
        prefix.push_back(t.action);
        if (graph.success_states().count(t.target) != 0) record(prefix);
        stack.push_back({graph.out_transitions(t.target), 0});
      } else {
        stack.pop_back();
        if (!prefix.empty()) prefix.pop_back();
      }
    }
  }
  return traces;
}

void label_states(AttackGraph& graph) {
  if (auto cycle = find_cycle(graph)) {
    throw GraphInvariantError("label_states: graph is cyclic (" +
                              format_cycle(*cycle) + ")");
  }
  LabelResult result = propagate_labels(graph);
  if (result.inconsistency.has_value()) {
    throw GraphInvariantError("label_states: " + *result.inconsistency);
  }
  graph.set_labels(std::move(result.labels));
}

InvariantReport check_invariants(const AttackGraph& graph) {
  InvariantReport report;
  const std::size_t n = graph.state_count();
  const std::vector<Transition> transitions = graph.transitions();

  report.deterministic = true;
  {
    std::set<std::pair<StateId, ActionLabel>> seen;
    for (const Transition& t : transitions) {
      if (!seen.emplace(t.source, t.action).second) {
        report.deterministic = false;
        report.violations.push_back("two transitions from " +
                                    state_name(t.source) + " on \"" +
                                    t.action + "\"");
      }
    }
  }

  auto cycle = find_cycle(graph);
  report.acyclic = !cycle.has_value();
  if (cycle) report.violations.push_back("cycle: " + format_cycle(*cycle));

  const std::set<StateId> reach =
      forward_reachable(graph, graph.initial_states());
  report.all_states_reachable = true;
  for (StateId s = 0; s < n; ++s) {
    if (reach.count(s) == 0) {
      report.all_states_reachable = false;
      report.violations.push_back("state " + state_name(s) +
                                  " is not reachable from any initial state");
    }
  }

  {
    std::map<StateId, std::vector<StateId>> reverse;
    for (const Transition& t : transitions) {
      reverse[t.target].push_back(t.source);
    }
    std::set<StateId> coreach = graph.success_states();
    std::deque<StateId> queue(coreach.begin(), coreach.end());
    while (!queue.empty()) {
      StateId s = queue.front();
      queue.pop_front();
      auto it = reverse.find(s);
      if (it == reverse.end()) continue;
      for (StateId p : it->second) {
        if (coreach.insert(p).second) queue.push_back(p);
      }
    }
    report.all_states_coreachable = true;
    for (StateId s = 0; s < n; ++s) {
      if (coreach.count(s) == 0) {
        report.all_states_coreachable = false;
        report.violations.push_back("state " + state_name(s) +
                                    " cannot reach a success state");
      }
    }
  }

  if (!report.acyclic) {
    report.monotone = false;
    report.path_set_consistent = false;
    report.violations.push_back(
        "monotonicity and path-set consistency not evaluated: graph is cyclic");
    return report;
  }

  // Monotone iff no initial-rooted path uses two transitions with the same
  // action: for same-action transitions e1, e2 that means e1 is reachable
  // from an initial state and e2's source is reachable from e1's target.
  report.monotone = true;
  {
    std::map<ActionLabel, std::vector<const Transition*>> by_action;
    for (const Transition& t : transitions) by_action[t.action].push_back(&t);
    std::map<StateId, std::set<StateId>> memo;
    auto reachable_from = [&](StateId s) -> const std::set<StateId>& {
      auto it = memo.find(s);
      if (it == memo.end()) {
        it = memo.emplace(s, forward_reachable(graph, {s})).first;
      }
      return it->second;
    };
    for (const auto& [action, edges] : by_action) {
      if (edges.size() < 2) continue;
      bool reported = false;
      for (const Transition* e1 : edges) {
        if (reported) break;
        if (reach.count(e1->source) == 0) continue;
        const std::set<StateId>& below = reachable_from(e1->target);
        for (const Transition* e2 : edges) {
          if (e1 == e2 || below.count(e2->source) == 0) continue;
          report.monotone = false;
          report.violations.push_back(
              "action \"" + action + "\" repeats along a path: " +
              state_name(e1->source) + "->" + state_name(e1->target) +
              " then " + state_name(e2->source) + "->" +
              state_name(e2->target));
          reported = true;
          break;
        }
      }
    }
  }

  LabelResult labels = propagate_labels(graph);
  report.path_set_consistent = !labels.inconsistency.has_value();
  if (labels.inconsistency) report.violations.push_back(*labels.inconsistency);

  return report;
}

}  // namespace atag
