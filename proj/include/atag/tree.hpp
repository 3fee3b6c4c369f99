// Attack tree grammar, structural validation, and radical decomposition.
#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "atag/types.hpp"

namespace atag {

enum class Operator { Or, And, Sand };

// Canonical spellings used by every text format: "OR", "AND", "SAND".
std::string to_string(Operator op);
std::optional<Operator> operator_from_string(const std::string& text);

// Recursive attack tree: an action, optionally refined by an operator over
// one or more subtrees. OR and AND are commutative; SAND children complete
// strictly in listed order, so child order is always preserved.
struct AttackTree {
  ActionLabel action;
  std::optional<Operator> op;        // absent for a leaf
  std::vector<AttackTree> children;  // empty for a leaf

  bool is_leaf() const { return !op.has_value(); }
  bool operator==(const AttackTree&) const = default;
};

AttackTree leaf(ActionLabel action);
AttackTree node(ActionLabel action, Operator op, std::vector<AttackTree> children);

// Depth-one subtree: root action, operator, and child actions in order.
struct Radical {
  ActionLabel root;
  Operator op;
  std::vector<ActionLabel> children;

  bool operator==(const Radical&) const = default;
};

// One entry per refined node, keyed by that node's action label. Well-defined
// because action labels are unique tree-wide.
using RadicalDictionary = std::map<ActionLabel, Radical>;

enum class Severity { Error, Warning };

struct ValidationIssue {
  Severity severity;
  std::string path;  // "/" for the root, then child indices: "/1/0"
  std::string message;
};

struct ValidationReport {
  bool ok = true;  // true iff no Error-severity issue
  std::vector<ValidationIssue> issues;
};

// Raised where an operation requires a valid tree and validation failed.
class ValidationError : public std::runtime_error {
 public:
  explicit ValidationError(ValidationReport report);
  const ValidationReport& report() const { return report_; }

 private:
  ValidationReport report_;
};

// Checks label well-formedness (non-empty, no newline), tree-wide label
// uniqueness, and that an operator is present exactly when children are.
ValidationReport validate_tree(const AttackTree& tree);

// Action of the root node.
const ActionLabel& top(const AttackTree& tree);

// Uppermost radical of the tree; absent for a leaf.
std::optional<Radical> rad(const AttackTree& tree);

// Root actions of the children, in child order.
// Throws std::invalid_argument for a leaf.
std::vector<ActionLabel> kid(const AttackTree& tree);

// Radical per refined node. Throws ValidationError for an invalid tree.
RadicalDictionary build_radical_dictionary(const AttackTree& tree);

std::size_t node_count(const AttackTree& tree);
std::size_t leaf_count(const AttackTree& tree);
std::size_t internal_count(const AttackTree& tree);
std::size_t operator_count(const AttackTree& tree, Operator op);

// All action labels in pre-order (parents before children, left to right).
std::vector<ActionLabel> all_labels(const AttackTree& tree);

}  // namespace atag
