// Implements tree validation, the rad/kid/top accessors, and the radical
// dictionary build.
#include "atag/tree.hpp"

#include <unordered_map>
#include <utility>

namespace atag {

namespace {

std::string child_path(const std::string& parent, std::size_t index) {
  return (parent == "/" ? "/" : parent + "/") + std::to_string(index);
}

void collect_issues(const AttackTree& tree, const std::string& path,
                    std::unordered_map<std::string, std::string>& first_seen,
                    std::vector<ValidationIssue>& issues) {
  if (tree.action.empty()) {
    issues.push_back({Severity::Error, path, "empty action label"});
  } else if (tree.action.find('\n') != std::string::npos) {
    issues.push_back({Severity::Error, path, "action label contains a newline"});
  }
  auto [it, inserted] = first_seen.emplace(tree.action, path);
  if (!inserted) {
    issues.push_back({Severity::Error, path,
                      "duplicate action label \"" + tree.action +
                          "\" (also at " + it->second + ")"});
  }
  if (tree.op.has_value() && tree.children.empty()) {
    issues.push_back({Severity::Error, path, "operator with no children"});
  }
  if (!tree.op.has_value() && !tree.children.empty()) {
    issues.push_back({Severity::Error, path, "children without an operator"});
  }
  for (std::size_t i = 0; i < tree.children.size(); ++i) {
    collect_issues(tree.children[i], child_path(path, i), first_seen, issues);
  }
}

std::string format_report(const ValidationReport& report) {
  std::string out = "invalid attack tree";
  const char* sep = ": ";
  for (const ValidationIssue& issue : report.issues) {
    out += sep;
    out += issue.message + " at " + issue.path;
    sep = "; ";
  }
  return out;
}

void walk_dictionary(const AttackTree& tree, RadicalDictionary& dictionary) {
  if (!tree.is_leaf()) {
    dictionary.emplace(tree.action, Radical{tree.action, *tree.op, kid(tree)});
    for (const AttackTree& child : tree.children) {
      walk_dictionary(child, dictionary);
    }
  }
}

}  // namespace

std::string to_string(Operator op) {
  switch (op) {
    case Operator::Or:
      return "OR";
    case Operator::And:
      return "AND";
    case Operator::Sand:
      return "SAND";
  }
  return "?";
}

std::optional<Operator> operator_from_string(const std::string& text) {
  if (text == "OR") return Operator::Or;
  if (text == "AND") return Operator::And;
  if (text == "SAND") return Operator::Sand;
  return std::nullopt;
}

AttackTree leaf(ActionLabel action) {
  return AttackTree{std::move(action), std::nullopt, {}};
}

AttackTree node(ActionLabel action, Operator op,
                std::vector<AttackTree> children) {
  return AttackTree{std::move(action), op, std::move(children)};
}

ValidationError::ValidationError(ValidationReport report)
    : std::runtime_error(format_report(report)), report_(std::move(report)) {}

ValidationReport validate_tree(const AttackTree& tree) {
  ValidationReport report;
  std::unordered_map<std::string, std::string> first_seen;
  collect_issues(tree, "/", first_seen, report.issues);
  for (const ValidationIssue& issue : report.issues) {
    if (issue.severity == Severity::Error) {
      report.ok = false;
      break;
    }
  }
  return report;
}

const ActionLabel& top(const AttackTree& tree) { return tree.action; }

std::optional<Radical> rad(const AttackTree& tree) {
  if (tree.is_leaf()) return std::nullopt;
  return Radical{tree.action, *tree.op, kid(tree)};
}

std::vector<ActionLabel> kid(const AttackTree& tree) {
  if (tree.is_leaf()) {
    throw std::invalid_argument("kid: \"" + tree.action + "\" is a leaf");
  }
  std::vector<ActionLabel> labels;
  labels.reserve(tree.children.size());
  for (const AttackTree& child : tree.children) {
    labels.push_back(child.action);
  }
  return labels;
}

RadicalDictionary build_radical_dictionary(const AttackTree& tree) {
  ValidationReport report = validate_tree(tree);
  if (!report.ok) throw ValidationError(std::move(report));
  RadicalDictionary dictionary;
  walk_dictionary(tree, dictionary);
  return dictionary;
}

std::size_t node_count(const AttackTree& tree) {
  std::size_t count = 1;
  for (const AttackTree& child : tree.children) count += node_count(child);
  return count;
}

std::size_t leaf_count(const AttackTree& tree) {
  if (tree.is_leaf()) return 1;
  std::size_t count = 0;
  for (const AttackTree& child : tree.children) count += leaf_count(child);
  return count;
}

std::size_t internal_count(const AttackTree& tree) {
  return node_count(tree) - leaf_count(tree);
}

std::size_t operator_count(const AttackTree& tree, Operator op) {
  std::size_t count = tree.op == op ? 1 : 0;
  for (const AttackTree& child : tree.children) {
    count += operator_count(child, op);
  }
  return count;
}

std::vector<ActionLabel> all_labels(const AttackTree& tree) {
  std::vector<ActionLabel> labels;
  labels.push_back(tree.action);
  for (const AttackTree& child : tree.children) {
    for (ActionLabel& label : all_labels(child)) {
      labels.push_back(std::move(label));
    }
  }
  return labels;
}

}  // namespace atag
