// atag: compiles attack trees (OR/AND/SAND) into state-based attack graphs,
// checks the result against the tree's trace semantics, and renders graphs.
//
// Exit codes: 0 success, 1 parse/validation error, 2 internal invariant
// failure, 3 check failure, 4 resource limit.
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "atag/errors.hpp"
#include "atag/graph_io.hpp"
#include "atag/semantics.hpp"
#include "atag/transform.hpp"
#include "atag/tree_io.hpp"

namespace {

using namespace atag;

// Unreadable or unwritable files map to exit 1 like any other input problem.
struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  if (in.bad()) throw InputError("cannot read " + path);
  return buffer.str();
}

void write_output(const std::string& path, const std::string& content) {
  if (path.empty()) {
    std::cout << content << "\n";
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot open " + path + " for writing");
  out << content << "\n";
  if (!out) throw InputError("cannot write " + path);
}

TreeDocument load_tree(const std::string& path) {
  const std::string text = read_file(path);
  const bool is_json =
      path.size() >= 5 && path.compare(path.size() - 5, 5, ".json") == 0;
  return is_json ? parse_tree_json(text) : parse_tree_dsl(text);
}

std::string stats_line(const TransformStats& stats) {
  std::ostringstream out;
  out << "states=" << stats.states_total
      << " transitions=" << stats.transitions_total
      << " success=" << stats.success_states
      << " expansions_or=" << stats.expansions_or
      << " expansions_and=" << stats.expansions_and
      << " expansions_sand=" << stats.expansions_sand;
  return out.str();
}

struct CommonArgs {
  std::string input;
  std::string output;
  std::string emit = "json";
  std::size_t max_paths = kDefaultTraceBound;
  std::size_t state_budget = 1'000'000;
  bool quiet = false;
};

int cmd_transform(const CommonArgs& args) {
  const TreeDocument document = load_tree(args.input);
  const TransformResult result =
      transform(document.tree, TransformOptions{args.state_budget});
  const std::string text = args.emit == "dot" ? emit_dot(result.graph)
                                              : emit_graph_json(result.graph);
  write_output(args.output, text);
  if (!args.quiet) std::cout << stats_line(result.stats) << "\n";
  return 0;
}

int cmd_check(const CommonArgs& args) {
  const TreeDocument document = load_tree(args.input);
  const TransformResult result =
      transform(document.tree, TransformOptions{args.state_budget});

  const InvariantReport invariants = check_invariants(result.graph);
  const auto flag_line = [&](const char* name, bool ok) {
    if (!args.quiet || !ok) {
      std::cout << name << "=" << (ok ? "pass" : "fail") << "\n";
    }
  };
  flag_line("acyclic", invariants.acyclic);
  flag_line("deterministic", invariants.deterministic);
  flag_line("monotone", invariants.monotone);
  flag_line("all_states_reachable", invariants.all_states_reachable);
  flag_line("all_states_coreachable", invariants.all_states_coreachable);
  flag_line("path_set_consistent", invariants.path_set_consistent);
  for (const std::string& violation : invariants.violations) {
    std::cerr << "violation: " << violation << "\n";
  }

  const EquivalenceReport equivalence =
      check_equivalence(document.tree, result.graph, args.max_paths);
  if (equivalence.equal) {
    const TraceSet traces = tree_traces(document.tree, args.max_paths);
    std::cout << "traces=" << traces.size() << " match\n";
  } else {
    std::cout << "traces_missing=" << equivalence.missing_in_graph.size()
              << " traces_extra=" << equivalence.extra_in_graph.size()
              << " mismatch\n";
    for (const Trace& trace : equivalence.missing_in_graph) {
      std::cerr << "missing in graph:";
      for (const ActionLabel& action : trace) std::cerr << " [" << action << "]";
      std::cerr << "\n";
    }
    for (const Trace& trace : equivalence.extra_in_graph) {
      std::cerr << "extra in graph:";
      for (const ActionLabel& action : trace) std::cerr << " [" << action << "]";
      std::cerr << "\n";
    }
  }
  return invariants.all_ok() && equivalence.equal ? 0 : 3;
}

int cmd_stats(const CommonArgs& args) {
  const TreeDocument document = load_tree(args.input);
  const AttackTree& tree = document.tree;
  std::cout << "nodes=" << node_count(tree)
            << " internal=" << internal_count(tree)
            << " leaves=" << leaf_count(tree)
            << " or=" << operator_count(tree, Operator::Or)
            << " and=" << operator_count(tree, Operator::And)
            << " sand=" << operator_count(tree, Operator::Sand) << "\n";

  // Closed-form prediction for depth<=1 trees (a bare radical or a leaf).
  bool is_radical = !tree.is_leaf();
  for (const AttackTree& child : tree.children) {
    is_radical = is_radical && child.is_leaf();
  }
  const std::size_t n = tree.children.size();
  if (tree.is_leaf()) {
    std::cout << "predicted_states=2\n";
  } else if (is_radical && n == 1) {
    std::cout << "predicted_states=3\n";
  } else if (is_radical && (tree.op != Operator::And || n < 63)) {
    std::size_t predicted = 0;
    switch (*tree.op) {
      case Operator::Or:
        predicted = 2 * n + 1;
        break;
      case Operator::And:
        predicted = (std::size_t{1} << n) + 1;
        break;
      case Operator::Sand:
        predicted = n + 2;
        break;
    }
    std::cout << "predicted_states=" << predicted << "\n";
  }
  return 0;
}

int cmd_render(const CommonArgs& args) {
  AttackGraph graph;
  try {
    graph = parse_graph_json(read_file(args.input));
  } catch (const GraphInvariantError& error) {
    // Invariant violations in an input file are input errors, not bugs.
    std::cerr << "error: " << args.input << ": " << error.what() << "\n";
    return 1;
  }
  write_output(args.output, emit_dot(graph));
  return 0;
}

template <typename Command>
int guarded(const std::string& input, Command&& command) {
  try {
    return command();
  } catch (const ParseError& error) {
    std::cerr << "error: " << input << ":" << error.what() << "\n";
    return 1;
  } catch (const ValidationError& error) {
    std::cerr << "error: " << input << ": " << error.what() << "\n";
    return 1;
  } catch (const InputError& error) {
    std::cerr << "error: " << error.what() << "\n";
    return 1;
  } catch (const ResourceLimitError& error) {
    std::cerr << "error: resource limit: " << error.what() << "\n";
    return 4;
  } catch (const GraphInvariantError& error) {
    std::cerr << "internal error: " << error.what() << "\n";
    return 2;
  } catch (const std::exception& error) {
    std::cerr << "internal error: " << error.what() << "\n";
    return 2;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"attack tree to attack graph compiler"};
  app.require_subcommand(1);
  CommonArgs args;

  CLI::App* transform_cmd = app.add_subcommand(
      "transform", "compile a tree (.at or .at.json) into an attack graph");
  transform_cmd->add_option("input", args.input, "tree file")->required();
  transform_cmd->add_option("--emit", args.emit, "output format")
      ->check(CLI::IsMember({"json", "dot"}))
      ->default_str("json");
  transform_cmd->add_option("--output", args.output,
                            "output file (default: stdout)");
  transform_cmd->add_option("--state-budget", args.state_budget,
                            "state/transition budget for the transform");
  transform_cmd->add_flag("--quiet", args.quiet, "suppress the stats line");

  CLI::App* check_cmd = app.add_subcommand(
      "check", "transform, then verify invariants and trace equivalence");
  check_cmd->add_option("input", args.input, "tree file")->required();
  check_cmd->add_option("--max-paths", args.max_paths,
                        "bound on enumerated traces");
  check_cmd->add_option("--state-budget", args.state_budget,
                        "state/transition budget for the transform");
  check_cmd->add_flag("--quiet", args.quiet, "only report failures and traces");

  CLI::App* stats_cmd =
      app.add_subcommand("stats", "print tree metrics and predicted sizes");
  stats_cmd->add_option("input", args.input, "tree file")->required();

  CLI::App* render_cmd =
      app.add_subcommand("render", "render a graph (.ag.json) as DOT");
  render_cmd->add_option("input", args.input, "graph file")->required();
  render_cmd->add_option("--output", args.output,
                         "output file (default: stdout)");

  CLI11_PARSE(app, argc, argv);

  if (transform_cmd->parsed()) {
    return guarded(args.input, [&] { return cmd_transform(args); });
  }
  if (check_cmd->parsed()) {
    return guarded(args.input, [&] { return cmd_check(args); });
  }
  if (stats_cmd->parsed()) {
    return guarded(args.input, [&] { return cmd_stats(args); });
  }
  return guarded(args.input, [&] { return cmd_render(args); });
}
