// The trace oracle: tree semantics computed without touching the transform.
#include "atag/semantics.hpp"

#include <algorithm>
#include <limits>
#include <numeric>

namespace atag {

namespace {

constexpr std::uint64_t kSaturated = std::numeric_limits<std::uint64_t>::max();

std::uint64_t sat_add(std::uint64_t a, std::uint64_t b) {
  return a > kSaturated - b ? kSaturated : a + b;
}

std::uint64_t sat_mul(std::uint64_t a, std::uint64_t b) {
  if (a == 0 || b == 0) return 0;
  return a > kSaturated / b ? kSaturated : a * b;
}

std::uint64_t sat_factorial(std::uint64_t n) {
  std::uint64_t result = 1;
  for (std::uint64_t i = 2; i <= n; ++i) result = sat_mul(result, i);
  return result;
}

// Concatenates one pick from each part, in part order.
std::vector<Trace> cartesian_concat(
    const std::vector<const std::vector<Trace>*>& parts) {
  std::vector<Trace> acc{Trace{}};
  for (const std::vector<Trace>* part : parts) {
    std::vector<Trace> next;
    next.reserve(acc.size() * part->size());
    for (const Trace& prefix : acc) {
      for (const Trace& piece : *part) {
        Trace combined = prefix;
        combined.insert(combined.end(), piece.begin(), piece.end());
        next.push_back(std::move(combined));
      }
    }
    acc = std::move(next);
  }
  return acc;
}

std::vector<Trace> traces_of(const AttackTree& tree) {
  if (tree.is_leaf()) return {Trace{tree.action}};

  std::vector<std::vector<Trace>> child_traces;
  child_traces.reserve(tree.children.size());
  for (const AttackTree& child : tree.children) {
    child_traces.push_back(traces_of(child));
  }

  std::vector<Trace> out;
  switch (*tree.op) {
    case Operator::Or:
      for (const std::vector<Trace>& traces : child_traces) {
        for (const Trace& trace : traces) {
          Trace extended = trace;
          extended.push_back(tree.action);
          out.push_back(std::move(extended));
        }
      }
      break;
    case Operator::Sand: {
      std::vector<const std::vector<Trace>*> parts;
      for (const std::vector<Trace>& traces : child_traces) {
        parts.push_back(&traces);
      }
      for (Trace& trace : cartesian_concat(parts)) {
        trace.push_back(tree.action);
        out.push_back(std::move(trace));
      }
      break;
    }
    case Operator::And: {
      // Children interleave as whole blocks: every permutation of complete
      // child traces, never element-wise shuffles.
      std::vector<std::size_t> order(child_traces.size());
      std::iota(order.begin(), order.end(), 0);
      do {
        std::vector<const std::vector<Trace>*> parts;
        for (std::size_t index : order) parts.push_back(&child_traces[index]);
        for (Trace& trace : cartesian_concat(parts)) {
          trace.push_back(tree.action);
          out.push_back(std::move(trace));
        }
      } while (std::next_permutation(order.begin(), order.end()));
      break;
    }
  }
  return out;
}

}  // namespace

std::uint64_t estimate_trace_count(const AttackTree& tree) {
  if (tree.is_leaf()) return 1;
  std::uint64_t sum = 0;
  std::uint64_t product = 1;
  for (const AttackTree& child : tree.children) {
    const std::uint64_t count = estimate_trace_count(child);
    sum = sat_add(sum, count);
    product = sat_mul(product, count);
  }
  switch (*tree.op) {
    case Operator::Or:
      return sum;
    case Operator::Sand:
      return product;
    case Operator::And:
      return sat_mul(product, sat_factorial(tree.children.size()));
  }
  return 0;
}

TraceSet tree_traces(const AttackTree& tree, std::uint64_t max_traces) {
  const std::uint64_t count = estimate_trace_count(tree);
  if (count > max_traces) {
    throw ResourceLimitError("tree_traces: " +
                             (count == std::numeric_limits<std::uint64_t>::max()
                                  ? std::string("more than 2^64")
                                  : std::to_string(count)) +
                             " traces exceed the bound of " +
                             std::to_string(max_traces));
  }
  std::vector<Trace> traces = traces_of(tree);
  return TraceSet(traces.begin(), traces.end());
}

EquivalenceReport check_equivalence(const AttackTree& tree,
                                    const AttackGraph& graph,
                                    std::uint64_t max_traces) {
  const TraceSet expected = tree_traces(tree, max_traces);
  // No monotone path can be longer than the number of distinct actions.
  const TraceSet actual =
      enumerate_paths(graph, node_count(tree) + 1, max_traces);
  EquivalenceReport report;
  std::set_difference(
      expected.begin(), expected.end(), actual.begin(), actual.end(),
      std::inserter(report.missing_in_graph, report.missing_in_graph.end()));
  std::set_difference(
      actual.begin(), actual.end(), expected.begin(), expected.end(),
      std::inserter(report.extra_in_graph, report.extra_in_graph.end()));
  report.equal =
      report.missing_in_graph.empty() && report.extra_in_graph.empty();
  return report;
}

}  // namespace atag
