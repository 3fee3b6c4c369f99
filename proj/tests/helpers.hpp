// Shared fixtures, generators, and trace predicates for the test suite.
// Doctest-free so the acceptance binary can use it too.
#pragma once

#include <fstream>
#include <random>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "atag/semantics.hpp"
#include "atag/tree.hpp"
#include "atag/types.hpp"

namespace testutil {

using namespace atag;

inline std::string fixtures_dir() { return ATAG_FIXTURES_DIR; }

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

// The worked example used throughout: root choice between a technical
// exploit and a social-engineering AND whose second step is a strict
// sequence.
inline AttackTree running_example_tree() {
  return node(
      "Get Root Access", Operator::Or,
      {node("Exploit Buffer Overflow", Operator::Or,
            {leaf("Deploy .rhhost file"), leaf("Remote login")}),
       node("Exploit Administrator", Operator::And,
            {leaf("Invent Need For Root Access"),
             node("Befriend Administrator", Operator::Sand,
                  {leaf("Get Phone Number"),
                   leaf("Invite to Social Function")})})});
}

// Hand-derived from the semantics; the graph side must reproduce it exactly.
inline TraceSet running_example_traces() {
  return TraceSet{
      {"Remote login", "Exploit Buffer Overflow", "Get Root Access"},
      {"Deploy .rhhost file", "Exploit Buffer Overflow", "Get Root Access"},
      {"Invent Need For Root Access", "Get Phone Number",
       "Invite to Social Function", "Befriend Administrator",
       "Exploit Administrator", "Get Root Access"},
      {"Get Phone Number", "Invite to Social Function",
       "Befriend Administrator", "Invent Need For Root Access",
       "Exploit Administrator", "Get Root Access"}};
}

// Random valid trees: depth <= 4, fanout <= 3, unique labels, mixed
// operators. Trees whose exact trace count exceeds trace_cap are re-rolled so
// oracle comparisons stay tractable. Deterministic for a fixed seed.
class TreeGen {
 public:
  explicit TreeGen(std::uint32_t seed) : rng_(seed) {}

  AttackTree tree(std::uint64_t trace_cap = 5000) {
    for (;;) {
      int counter = 0;
      AttackTree candidate = gen(0, counter);
      if (estimate_trace_count(candidate) <= trace_cap) return candidate;
    }
  }

 private:
  AttackTree gen(int depth, int& counter) {
    const std::string label = "n" + std::to_string(counter++);
    std::uniform_int_distribution<int> percent(0, 99);
    const bool make_leaf =
        depth >= 4 || percent(rng_) < (depth == 0 ? 10 : 35);
    if (make_leaf) return leaf(label);
    std::uniform_int_distribution<int> op_pick(0, 2);
    const auto op = static_cast<Operator>(op_pick(rng_));
    std::uniform_int_distribution<int> fan(1, 3);
    const int fanout = fan(rng_);
    std::vector<AttackTree> children;
    children.reserve(fanout);
    for (int i = 0; i < fanout; ++i) children.push_back(gen(depth + 1, counter));
    return node(label, op, std::move(children));
  }

  std::mt19937 rng_;
};

inline bool no_repeats(const Trace& trace) {
  const std::set<ActionLabel> seen(trace.begin(), trace.end());
  return seen.size() == trace.size();
}

inline void collect_or_child_labels(
    const AttackTree& tree,
    std::vector<std::vector<std::set<ActionLabel>>>& out) {
  if (!tree.is_leaf() && *tree.op == Operator::Or && tree.children.size() > 1) {
    std::vector<std::set<ActionLabel>> sets;
    for (const AttackTree& child : tree.children) {
      const std::vector<ActionLabel> labels = all_labels(child);
      sets.emplace_back(labels.begin(), labels.end());
    }
    out.push_back(std::move(sets));
  }
  for (const AttackTree& child : tree.children) {
    collect_or_child_labels(child, out);
  }
}

// True iff no trace mixes labels from two distinct child subtrees of any OR
// node: the alternatives are exclusive.
inline bool exclusive_or_paths(const AttackTree& tree, const TraceSet& traces) {
  std::vector<std::vector<std::set<ActionLabel>>> or_sets;
  collect_or_child_labels(tree, or_sets);
  for (const Trace& trace : traces) {
    const std::set<ActionLabel> used(trace.begin(), trace.end());
    for (const std::vector<std::set<ActionLabel>>& children : or_sets) {
      int touched = 0;
      for (const std::set<ActionLabel>& child_labels : children) {
        for (const ActionLabel& action : used) {
          if (child_labels.count(action) != 0) {
            ++touched;
            break;
          }
        }
      }
      if (touched > 1) return false;
    }
  }
  return true;
}

}  // namespace testutil
