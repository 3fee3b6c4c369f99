// Text formats for attack trees: canonical JSON and a compact DSL.
//
// JSON: {"action": "..."} for leaves, {"action": "...", "operator":
// "OR"|"AND"|"SAND", "children": [...]} for refined nodes, keys in that order.
//
// DSL:  tree  := label | label "<-" OP "(" tree ("," tree)* ")"
//       label := '"' chars '"' | [A-Za-z0-9_]+
// Whitespace outside quotes is insignificant. Quoted labels may escape '"'
// and '\' with a backslash. Serialization always quotes labels.
#pragma once

#include <string>

#include "atag/tree.hpp"

namespace atag {

enum class TreeFormat { Json, Dsl };

struct TreeDocument {
  AttackTree tree;
  TreeFormat source_format;
};

// Both parsers reject malformed input with ParseError (1-based position) and
// structurally well-formed but invalid trees with ValidationError.
TreeDocument parse_tree_json(const std::string& text);
TreeDocument parse_tree_dsl(const std::string& text);

// Deterministic; no trailing newline. JSON is compact single-line.
std::string serialize_tree(const AttackTree& tree, TreeFormat format);

}  // namespace atag
