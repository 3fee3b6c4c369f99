// DOT and JSON emission, and strict JSON re-ingestion.
#include <doctest.h>

#include <string>

#include "atag/graph_io.hpp"
#include "atag/transform.hpp"
#include "helpers.hpp"

using namespace atag;

namespace {

int count_occurrences(const std::string& text, const std::string& needle) {
  int count = 0;
  for (std::string::size_type pos = text.find(needle);
       pos != std::string::npos; pos = text.find(needle, pos + needle.size())) {
    ++count;
  }
  return count;
}

}  // namespace

TEST_CASE("dot output lists every state and transition with its markers") {
  const AttackGraph g = transform(testutil::running_example_tree()).graph;
  const std::string dot = emit_dot(g);
  CHECK(dot.rfind("digraph AttackGraph {", 0) == 0);
  CHECK(dot.back() == '}');  // no trailing newline
  CHECK(count_occurrences(dot, " -> ") == 16);
  for (StateId s = 0; s < g.state_count(); ++s) {
    CHECK(dot.find("  s" + std::to_string(s) + " [") != std::string::npos);
  }
  CHECK(dot.find("s0 [peripheries=2") != std::string::npos);
  CHECK(count_occurrences(dot, "shape=doublecircle") == 3);
  CHECK(count_occurrences(dot, "tooltip=") == 16);  // labeled graph
  CHECK(dot.find("label=\"Get Root Access\"") != std::string::npos);
}

TEST_CASE("dot matches the frozen rendering of the running example") {
  const AttackGraph g = parse_graph_json(
      testutil::read_file(testutil::fixtures_dir() + "/fig2.ag.json"));
  const std::string golden =
      testutil::read_file(testutil::fixtures_dir() + "/fig2.dot");
  CHECK(emit_dot(g) + "\n" == golden);
}

TEST_CASE("dot escapes quotes and backslashes in labels") {
  AttackGraph g = new_seed_graph("say \"hi\" \\ bye");
  const std::string dot = emit_dot(g);
  CHECK(dot.find("label=\"say \\\"hi\\\" \\\\ bye\"") != std::string::npos);
}

TEST_CASE("unlabeled graphs emit no tooltips") {
  AttackGraph g = new_seed_graph("a");
  CHECK(emit_dot(g).find("tooltip") == std::string::npos);
  label_states(g);
  CHECK(emit_dot(g).find("tooltip=\"{a}\"") != std::string::npos);
}

TEST_CASE("emission is deterministic") {
  const AttackGraph g = transform(testutil::running_example_tree()).graph;
  CHECK(emit_dot(g) == emit_dot(g));
  CHECK(emit_graph_json(g) == emit_graph_json(g));
}

TEST_CASE("graph json round trips to an equal graph") {
  const AttackGraph seed = new_seed_graph("a");
  CHECK(parse_graph_json(emit_graph_json(seed)) == seed);

  const AttackGraph example = transform(testutil::running_example_tree()).graph;
  const AttackGraph reparsed = parse_graph_json(emit_graph_json(example));
  CHECK(reparsed == example);
  REQUIRE(reparsed.has_labels());  // label sets survive the round trip
  for (StateId s = 0; s < example.state_count(); ++s) {
    CHECK(reparsed.state_labels(s) == example.state_labels(s));
  }

  testutil::TreeGen gen(17);
  for (int i = 0; i < 10; ++i) {
    const AttackGraph g = transform(gen.tree()).graph;
    CHECK(parse_graph_json(emit_graph_json(g)) == g);
  }
}

TEST_CASE("the graph fixture is parsed and re-emitted byte-identically") {
  const std::string bytes =
      testutil::read_file(testutil::fixtures_dir() + "/fig2.ag.json");
  const AttackGraph g = parse_graph_json(bytes);
  CHECK(g.state_count() == 16);
  CHECK(g.transition_count() == 16);
  CHECK(g.initial_states() == std::set<StateId>{0});
  CHECK(g.success_states() == std::set<StateId>{1, 4, 7});
  CHECK(emit_graph_json(g) + "\n" == bytes);
}

TEST_CASE("graph json rejects invariant violations") {
  const char* duplicate_pair = R"({
    "states": [{"id":0,"provenance":"P"},{"id":1,"provenance":"P"},{"id":2,"provenance":"Q"}],
    "transitions": [
      {"source":0,"action":"a","target":1,"expanded":false},
      {"source":0,"action":"a","target":2,"expanded":false}],
    "initial": [0], "success": [1]})";
  CHECK_THROWS_AS(parse_graph_json(duplicate_pair), GraphInvariantError);

  const char* cyclic = R"({
    "states": [{"id":0,"provenance":"P"},{"id":1,"provenance":"P"}],
    "transitions": [
      {"source":0,"action":"a","target":1,"expanded":false},
      {"source":1,"action":"b","target":0,"expanded":false}],
    "initial": [0], "success": [1]})";
  CHECK_THROWS_AS(parse_graph_json(cyclic), GraphInvariantError);

  const char* unknown_endpoint = R"({
    "states": [{"id":0,"provenance":"P"},{"id":1,"provenance":"P"}],
    "transitions": [{"source":0,"action":"a","target":9,"expanded":false}],
    "initial": [0], "success": [1]})";
  CHECK_THROWS_AS(parse_graph_json(unknown_endpoint), GraphInvariantError);

  const char* overlap = R"({
    "states": [{"id":0,"provenance":"P"},{"id":1,"provenance":"P"}],
    "transitions": [{"source":0,"action":"a","target":1,"expanded":false}],
    "initial": [0], "success": [0]})";
  CHECK_THROWS_AS(parse_graph_json(overlap), GraphInvariantError);
}

TEST_CASE("graph json rejects schema violations with a locus") {
  auto expect_parse_error = [](const std::string& text, const std::string& needle) {
    CAPTURE(text);
    try {
      parse_graph_json(text);
      FAIL_CHECK("expected ParseError");
    } catch (const ParseError& e) {
      CHECK(e.message().find(needle) != std::string::npos);
    }
  };
  expect_parse_error("[]", "expected an object");
  expect_parse_error(R"({"states":[],"transitions":[],"initial":[]})",
                     "missing \"success\"");
  expect_parse_error(
      R"({"states":[{"id":0,"provenance":"P"}],"transitions":[],"initial":[],"success":[],"extra":1})",
      "unexpected key \"extra\"");
  expect_parse_error(
      R"({"states":[{"id":1,"provenance":"P"}],"transitions":[],"initial":[],"success":[]})",
      "dense and ascending");
  expect_parse_error(
      R"({"states":[{"id":0,"provenance":"X"}],"transitions":[],"initial":[],"success":[]})",
      "provenance");
  expect_parse_error(
      R"({"states":[{"id":0,"provenance":"P","label_set":[]},{"id":1,"provenance":"P"}],"transitions":[],"initial":[],"success":[]})",
      "label_set");
  expect_parse_error("{not json", "malformed JSON");
}
