// Worklist compiler from attack trees to attack graphs.
//
// The seed graph carries the whole tree as one pending edge. The worklist
// then repeatedly pops pending edges; an edge whose action keys the radical
// dictionary is replaced in place by that radical's expansion:
//
//   OR    one disjoint leg per child: a fresh intermediate state and a copy
//         of the subgraph below the replaced edge (the first leg reuses the
//         original), so alternatives never share downstream states;
//   AND   the subset lattice over the children: one fresh state per
//         non-empty subset, one edge per "apply one more child action";
//   SAND  a chain through the children in listed order.
//
// Every expansion re-inserts the radical's own action as an edge marked
// expanded, which is what terminates the rewriting: the dictionary is never
// consumed, edges are. Pending edges inside copied subgraphs re-enter the
// worklist and expand like any other.
#pragma once

#include <cstddef>
#include <vector>

#include "atag/graph.hpp"
#include "atag/tree.hpp"

namespace atag {

// A not-yet-expanded transition, as carried by the worklist.
struct PendingEdge {
  StateId source;
  ActionLabel action;
  StateId target;
};

struct TransformOptions {
  // Upper bound on output states and on output transitions. An expansion
  // whose result would exceed it fails with ResourceLimitError before
  // allocating (an AND radical needs 2^n - 1 fresh states).
  std::size_t state_budget = 1'000'000;
};

struct TransformStats {
  std::size_t states_total = 0;
  std::size_t transitions_total = 0;
  std::size_t success_states = 0;
  std::size_t expansions_or = 0;
  std::size_t expansions_and = 0;
  // Single-child radicals of any operator are equivalent and take the SAND
  // code path, so they count here.
  std::size_t expansions_sand = 0;
};

struct TransformResult {
  AttackGraph graph;
  TransformStats stats;
};

// Compiles the tree and assigns state labels. The result is acyclic,
// deterministic, monotone, fully reachable and co-reachable, and its
// initial-to-success paths are exactly the tree's traces.
// Throws ValidationError (invalid tree), ResourceLimitError (budget), or
// GraphInvariantError (internal bug).
TransformResult transform(const AttackTree& tree,
                          const TransformOptions& options = {});

// The three expansion rules. Each consumes the pending edge
// (source, action) -> target, rewrites the graph around it, and returns the
// newly created pending edges in creation order. Preconditions: the edge
// exists and is pending, edge.action == radical.root, and the radical's
// operator matches (expand_sand also accepts any single-child radical).
std::vector<PendingEdge> expand_or(AttackGraph& graph, const PendingEdge& edge,
                                   const Radical& radical);
std::vector<PendingEdge> expand_and(AttackGraph& graph, const PendingEdge& edge,
                                    const Radical& radical);
std::vector<PendingEdge> expand_sand(AttackGraph& graph, const PendingEdge& edge,
                                     const Radical& radical);

}  // namespace atag
