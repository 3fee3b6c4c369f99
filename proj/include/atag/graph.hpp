// State-based attack graph: a deterministic partial transition function over
// action labels, with initial/success state sets and per-state provenance.
#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "atag/errors.hpp"
#include "atag/types.hpp"

namespace atag {

// Dense index, allocated monotonically within one graph and never reused.
using StateId = std::uint32_t;

// P: carried over from the graph an expansion rewrote (seed states and their
// copies); Q: freshly generated by an expansion (leg, chain, lattice states).
enum class Provenance { P, Q };

struct Transition {
  StateId source;
  ActionLabel action;
  StateId target;
  bool expanded;  // true once an expansion produced or re-inserted this edge

  bool operator==(const Transition&) const = default;
};

struct InvariantReport {
  bool acyclic = false;
  bool deterministic = false;
  bool monotone = false;  // no action repeats along any initial-rooted path
  bool all_states_reachable = false;
  bool all_states_coreachable = false;
  bool path_set_consistent = false;  // all paths to a state carry one label set
  std::vector<std::string> violations;

  bool all_ok() const {
    return acyclic && deterministic && monotone && all_states_reachable &&
           all_states_coreachable && path_set_consistent;
  }
};

// Mutations preserve determinism by construction: adding a second transition
// with an existing (source, action) pair throws GraphInvariantError.
// Transitions keep a stable creation order that survives removals; emission
// and equality use that order.
class AttackGraph {
 public:
  AttackGraph() = default;

  StateId add_state(Provenance provenance);
  void add_transition(StateId source, ActionLabel action, StateId target,
                      bool expanded);
  void remove_transition(StateId source, const ActionLabel& action);

  bool has_transition(StateId source, const ActionLabel& action) const;
  const Transition& transition(StateId source, const ActionLabel& action) const;

  // Deep copy of everything reachable from entry, appended with fresh ids in
  // ascending original-id order. Provenance, success membership, and expanded
  // flags carry over; initial membership and labels do not.
  // Returns the copy of entry plus the old-to-new id mapping.
  std::pair<StateId, std::map<StateId, StateId>> copy_subgraph(StateId entry);

  std::size_t state_count() const { return provenance_.size(); }
  std::size_t transition_count() const { return transitions_.size(); }
  Provenance provenance(StateId state) const;

  void mark_initial(StateId state);
  void mark_success(StateId state);
  const std::set<StateId>& initial_states() const { return initial_; }
  const std::set<StateId>& success_states() const { return success_; }

  // All transitions in creation order.
  std::vector<Transition> transitions() const;
  // Outgoing transitions of one state, ordered by action.
  std::vector<Transition> out_transitions(StateId state) const;

  // States and transitions reachable from entry, entry included.
  std::pair<std::size_t, std::size_t> subgraph_size(StateId entry) const;

  bool has_labels() const { return !labels_.empty(); }
  const std::set<ActionLabel>& state_labels(StateId state) const;
  // Replaces all state label sets; size must equal state_count().
  void set_labels(std::vector<std::set<ActionLabel>> labels);
  void clear_labels();

  bool operator==(const AttackGraph& other) const;

 private:
  void require_state(StateId state, const char* role) const;

  std::vector<Provenance> provenance_;
  std::vector<std::set<ActionLabel>> labels_;  // empty until set_labels
  std::set<StateId> initial_;
  std::set<StateId> success_;
  std::map<std::uint64_t, Transition> transitions_;        // seq -> transition
  std::vector<std::map<ActionLabel, std::uint64_t>> out_;  // per-source index
  std::uint64_t next_seq_ = 0;
};

// Two P states s0 (initial) and ss (success) joined by the pending transition
// (s0, root_action) -> ss: the whole tree as a single unexpanded step.
AttackGraph new_seed_graph(const ActionLabel& root_action);

// Action sequences along all initial-to-success paths. The graph must be
// acyclic (GraphInvariantError otherwise). Paths longer than max_length and
// enumerations beyond max_traces raise ResourceLimitError.
TraceSet enumerate_paths(const AttackGraph& graph, std::size_t max_length,
                         std::size_t max_traces = kDefaultTraceBound);

// Assigns each state the set of actions on any initial-rooted path to it
// (unreachable states get the empty set). Requires an acyclic graph with
// consistent path label sets; throws GraphInvariantError naming a witness
// state otherwise.
void label_states(AttackGraph& graph);

InvariantReport check_invariants(const AttackGraph& graph);

}  // namespace atag
