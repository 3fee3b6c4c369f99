// DOT and JSON emitters for attack graphs, and the strict JSON reader.
#include "atag/graph_io.hpp"

#include <sstream>
#include <utility>

#include <json.hpp>

#include "atag/errors.hpp"

namespace atag {

namespace {

using ordered_json = nlohmann::ordered_json;

std::string dot_escape(const std::string& text) {
  std::string out;
  out.reserve(text.size());
  for (char c : text) {
    if (c == '"' || c == '\\') {
      out += '\\';
      out += c;
    } else if (c == '\n') {
      out += "\\n";
    } else {
      out += c;
    }
  }
  return out;
}

std::string label_set_text(const std::set<ActionLabel>& labels) {
  std::string out = "{";
  const char* sep = "";
  for (const ActionLabel& label : labels) {
    out += sep;
    out += label;
    sep = ", ";
  }
  return out + "}";
}

std::pair<int, int> position_of_offset(const std::string& text,
                                       std::size_t offset) {
  int line = 1;
  int column = 1;
  for (std::size_t i = 0; i < offset && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      column = 1;
    } else {
      ++column;
    }
  }
  return {line, column};
}

[[noreturn]] void fail_schema(const std::string& where,
                              const std::string& what) {
  throw ParseError(1, 1,
                   (where.empty() ? "at document root" : "at " + where) + ": " +
                       what);
}

std::uint64_t require_uint(const ordered_json& value, const std::string& where) {
  if (!value.is_number_unsigned()) {
    fail_schema(where, "expected a non-negative integer");
  }
  return value.get<std::uint64_t>();
}

}  // namespace

std::string emit_dot(const AttackGraph& graph) {
  std::ostringstream out;
  out << "digraph AttackGraph {\n";
  out << "  rankdir=TB;\n";
  out << "  node [shape=circle];\n";
  for (StateId s = 0; s < graph.state_count(); ++s) {
    std::vector<std::string> attributes;
    if (graph.initial_states().count(s) != 0) {
      attributes.push_back("peripheries=2");
    }
    if (graph.success_states().count(s) != 0) {
      attributes.push_back("shape=doublecircle");
    }
    if (graph.has_labels()) {
      attributes.push_back(
          "tooltip=\"" + dot_escape(label_set_text(graph.state_labels(s))) +
          "\"");
    }
    out << "  s" << s;
    if (!attributes.empty()) {
      out << " [";
      const char* sep = "";
      for (const std::string& attribute : attributes) {
        out << sep << attribute;
        sep = ", ";
      }
      out << "]";
    }
    out << ";\n";
  }
  for (const Transition& t : graph.transitions()) {
    out << "  s" << t.source << " -> s" << t.target << " [label=\""
        << dot_escape(t.action) << "\"];\n";
  }
  out << "}";
  return out.str();
}

std::string emit_graph_json(const AttackGraph& graph) {
  ordered_json document;
  ordered_json states = ordered_json::array();
  for (StateId s = 0; s < graph.state_count(); ++s) {
    ordered_json state;
    state["id"] = s;
    state["provenance"] = graph.provenance(s) == Provenance::P ? "P" : "Q";
    if (graph.has_labels()) {
      ordered_json label_set = ordered_json::array();
      for (const ActionLabel& label : graph.state_labels(s)) {
        label_set.push_back(label);
      }
      state["label_set"] = std::move(label_set);
    }
    states.push_back(std::move(state));
  }
  document["states"] = std::move(states);

  ordered_json transitions = ordered_json::array();
  for (const Transition& t : graph.transitions()) {
    ordered_json transition;
    transition["source"] = t.source;
    transition["action"] = t.action;
    transition["target"] = t.target;
    transition["expanded"] = t.expanded;
    transitions.push_back(std::move(transition));
  }
  document["transitions"] = std::move(transitions);

  ordered_json initial = ordered_json::array();
  for (StateId s : graph.initial_states()) initial.push_back(s);
  document["initial"] = std::move(initial);

  ordered_json success = ordered_json::array();
  for (StateId s : graph.success_states()) success.push_back(s);
  document["success"] = std::move(success);

  return document.dump(2);
}

AttackGraph parse_graph_json(const std::string& text) {
  ordered_json document;
  try {
    document = ordered_json::parse(text);
  } catch (const nlohmann::json::parse_error& error) {
    auto [line, column] = position_of_offset(
        text, error.byte > 0 ? static_cast<std::size_t>(error.byte) - 1 : 0);
    throw ParseError(line, column, "malformed JSON");
  }
  if (!document.is_object()) fail_schema("", "expected an object");
  for (auto it = document.begin(); it != document.end(); ++it) {
    if (it.key() != "states" && it.key() != "transitions" &&
        it.key() != "initial" && it.key() != "success") {
      fail_schema("", "unexpected key \"" + it.key() + "\"");
    }
  }
  for (const char* key : {"states", "transitions", "initial", "success"}) {
    if (!document.contains(key)) {
      fail_schema("", std::string("missing \"") + key + "\"");
    }
    if (!document[key].is_array()) {
      fail_schema(std::string("/") + key, "expected an array");
    }
  }

  AttackGraph graph;
  std::vector<std::set<ActionLabel>> labels;
  bool any_labeled = false;
  bool any_unlabeled = false;
  std::size_t index = 0;
  for (const ordered_json& state : document["states"]) {
    const std::string where = "/states/" + std::to_string(index);
    if (!state.is_object()) fail_schema(where, "expected an object");
    for (auto it = state.begin(); it != state.end(); ++it) {
      if (it.key() != "id" && it.key() != "provenance" &&
          it.key() != "label_set") {
        fail_schema(where, "unexpected key \"" + it.key() + "\"");
      }
    }
    if (!state.contains("id")) fail_schema(where, "missing \"id\"");
    if (require_uint(state["id"], where + "/id") != index) {
      fail_schema(where + "/id",
                  "state ids must be dense and ascending from 0");
    }
    if (!state.contains("provenance") || !state["provenance"].is_string()) {
      fail_schema(where, "missing or non-string \"provenance\"");
    }
    const std::string provenance = state["provenance"].get<std::string>();
    if (provenance != "P" && provenance != "Q") {
      fail_schema(where + "/provenance",
                  "expected \"P\" or \"Q\", got \"" + provenance + "\"");
    }
    graph.add_state(provenance == "P" ? Provenance::P : Provenance::Q);
    if (state.contains("label_set")) {
      any_labeled = true;
      if (!state["label_set"].is_array()) {
        fail_schema(where + "/label_set", "expected an array");
      }
      std::set<ActionLabel> label_set;
      for (const ordered_json& label : state["label_set"]) {
        if (!label.is_string()) {
          fail_schema(where + "/label_set", "expected strings");
        }
        label_set.insert(label.get<std::string>());
      }
      labels.push_back(std::move(label_set));
    } else {
      any_unlabeled = true;
      labels.emplace_back();
    }
    ++index;
  }
  if (any_labeled && any_unlabeled) {
    fail_schema("/states", "either all states carry label_set or none do");
  }

  index = 0;
  for (const ordered_json& transition : document["transitions"]) {
    const std::string where = "/transitions/" + std::to_string(index);
    if (!transition.is_object()) fail_schema(where, "expected an object");
    for (auto it = transition.begin(); it != transition.end(); ++it) {
      if (it.key() != "source" && it.key() != "action" &&
          it.key() != "target" && it.key() != "expanded") {
        fail_schema(where, "unexpected key \"" + it.key() + "\"");
      }
    }
    for (const char* key : {"source", "action", "target", "expanded"}) {
      if (!transition.contains(key)) {
        fail_schema(where, std::string("missing \"") + key + "\"");
      }
    }
    if (!transition["action"].is_string()) {
      fail_schema(where + "/action", "expected a string");
    }
    if (!transition["expanded"].is_boolean()) {
      fail_schema(where + "/expanded", "expected a boolean");
    }
    const std::uint64_t source =
        require_uint(transition["source"], where + "/source");
    const std::uint64_t target =
        require_uint(transition["target"], where + "/target");
    if (source >= graph.state_count() || target >= graph.state_count()) {
      throw GraphInvariantError("transition " + std::to_string(index) +
                                " references an unknown state");
    }
    graph.add_transition(static_cast<StateId>(source),
                         transition["action"].get<std::string>(),
                         static_cast<StateId>(target),
                         transition["expanded"].get<bool>());
    ++index;
  }

  for (const char* key : {"initial", "success"}) {
    std::size_t i = 0;
    for (const ordered_json& value : document[key]) {
      const std::string where =
          std::string("/") + key + "/" + std::to_string(i);
      const std::uint64_t state = require_uint(value, where);
      if (state >= graph.state_count()) {
        throw GraphInvariantError(std::string(key) + " state s" +
                                  std::to_string(state) + " does not exist");
      }
      if (std::string(key) == "initial") {
        graph.mark_initial(static_cast<StateId>(state));
      } else {
        graph.mark_success(static_cast<StateId>(state));
      }
      ++i;
    }
  }

  if (any_labeled) graph.set_labels(std::move(labels));

  // Re-ingested graphs satisfy the same structural guarantees as built ones:
  // determinism, endpoints, and initial/success disjointness were enforced
  // during construction above; acyclicity still needs a pass.
  {
    const std::size_t n = graph.state_count();
    std::vector<std::size_t> in_degree(n, 0);
    std::size_t consumed = 0;
    for (const Transition& t : graph.transitions()) ++in_degree[t.target];
    std::vector<StateId> ready;
    for (StateId s = 0; s < n; ++s) {
      if (in_degree[s] == 0) ready.push_back(s);
    }
    while (!ready.empty()) {
      const StateId s = ready.back();
      ready.pop_back();
      ++consumed;
      for (const Transition& t : graph.out_transitions(s)) {
        if (--in_degree[t.target] == 0) ready.push_back(t.target);
      }
    }
    if (consumed != n) {
      throw GraphInvariantError("graph contains a directed cycle");
    }
  }
  return graph;
}

}  // namespace atag
