// DOT and JSON emission for attack graphs, plus JSON re-ingestion.
// All emitters are deterministic: states in ascending id order, transitions
// in creation order, no trailing newline.
#pragma once

#include <string>

#include "atag/graph.hpp"

namespace atag {

// Graphviz digraph. Node s<i> per state; initial states get peripheries=2,
// success states shape=doublecircle; labeled graphs carry the label set as a
// node tooltip; edges are labeled with their action.
std::string emit_dot(const AttackGraph& graph);

std::string emit_graph_json(const AttackGraph& graph);

// Strict schema: top-level keys states/transitions/initial/success, state ids
// dense and ascending from 0. Schema problems raise ParseError; violated
// graph invariants (duplicate (source, action), bad endpoint, cycle,
// initial/success overlap) raise GraphInvariantError.
// parse_graph_json(emit_graph_json(g)) == g.
AttackGraph parse_graph_json(const std::string& text);

}  // namespace atag
