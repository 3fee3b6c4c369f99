// Trace semantics of attack trees: the independent oracle the transform is
// checked against. Computed directly on the tree, never via the graph.
//
//   leaf b        {[b]}
//   b <- OR(..)   union over children of {sigma ++ [b]}
//   b <- AND(..)  every permutation of whole child traces, concatenated,
//                 then [b]  (children interleave as blocks, never element-wise)
//   b <- SAND(..) child traces concatenated in listed order, then [b]
#pragma once

#include <cstdint>

#include "atag/graph.hpp"
#include "atag/tree.hpp"
#include "atag/types.hpp"

namespace atag {

struct EquivalenceReport {
  bool equal = false;
  TraceSet missing_in_graph;  // oracle traces the graph does not realize
  TraceSet extra_in_graph;    // graph paths the oracle does not predict
};

// Exact trace count (labels are unique tree-wide, so no collisions),
// computed without enumeration; saturates instead of overflowing.
std::uint64_t estimate_trace_count(const AttackTree& tree);

// Throws ResourceLimitError before enumerating when the exact count exceeds
// max_traces.
TraceSet tree_traces(const AttackTree& tree,
                     std::uint64_t max_traces = kDefaultTraceBound);

// Compares tree_traces(tree) with enumerate_paths(graph). Resource errors
// from either side propagate.
EquivalenceReport check_equivalence(const AttackTree& tree,
                                    const AttackGraph& graph,
                                    std::uint64_t max_traces = kDefaultTraceBound);

}  // namespace atag
