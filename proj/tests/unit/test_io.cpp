#include <doctest.h>

#include <string>

#include "skewcp/errors.hpp"
#include "skewcp/io.hpp"

using namespace skewcp;

namespace {

const std::string kFixtures = SKEWCP_FIXTURES;

std::string message_of(auto&& f) {
  try {
    f();
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::ParseError);
    return e.what();
  }
  FAIL("no error raised");
  return {};
}

}  // namespace

TEST_CASE("fixtures load") {
  const FiniteGroup z2 = load_group(kFixtures + "/z2.json");
  CHECK(z2.order() == 2);
  CHECK(load_group(kFixtures + "/z3.json").order() == 3);
  CHECK(load_group(kFixtures + "/z4.json").order() == 4);
  CHECK(load_group(kFixtures + "/klein.json").order() == 4);
  CHECK(load_group(kFixtures + "/trivial.json").order() == 1);

  const GraphInput e1 = load_graph(kFixtures + "/e1.json");
  CHECK(e1.graph.vertex_count() == 2);
  CHECK(e1.labels.at("f") == "g");
  CHECK(make_labeling(e1.graph, e1.labels, z2).values == std::vector<GroupElement>{1});
  CHECK(load_graph(kFixtures + "/chain2.json").graph.edge_count() == 2);

  const GroupoidInput pair = load_groupoid(kFixtures + "/pair-groupoid.json");
  CHECK(pair.groupoid.unit_count() == 2);
  CHECK(pair.groupoid.arrow_count() == 4);
  const Cocycle c = make_cocycle(pair.groupoid, pair.cocycle, z2);
  CHECK(c(*pair.groupoid.find_arrow("x12")) == 1);
  CHECK(c(*pair.groupoid.find_arrow("1")) == 0);
}

TEST_CASE("parse errors name the origin and the key") {
  CHECK(message_of([] { parse_group("{", "g.json"); }).find("g.json") != std::string::npos);
  CHECK(message_of([] { parse_group(R"({"elements": ["e"]})", "g.json"); }).find("table") != std::string::npos);
  const std::string bad_edge = message_of([] {
    parse_graph(R"({"vertices": ["v"], "edges": [{"id": "f", "src": "v", "rng": "x"}]})", "e.json");
  });
  CHECK(bad_edge.find("edges[0].rng") != std::string::npos);
  CHECK(bad_edge.find("\"x\"") != std::string::npos);
  const std::string no_inverse = message_of([] {
    parse_groupoid(R"({"units": ["u", "v"], "arrows": [{"id": "x", "src": "u", "rng": "v"}]})", "q.json");
  });
  CHECK(no_inverse.find("inverse") != std::string::npos);
  CHECK(message_of([] { read_file("/nonexistent/file.json"); }).find("/nonexistent/file.json") != std::string::npos);
}

TEST_CASE("library errors keep their code and gain the origin") {
  try {
    parse_group(R"({"elements": ["e", "g"], "table": [[0, 1], [1, 1]]})", "bad.json");
    FAIL("accepted");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NotLatinSquare);
    const std::string what = e.what();
    CHECK(what.find("bad.json") != std::string::npos);
    CHECK(what.find("NotLatinSquare") == what.rfind("NotLatinSquare"));
  }
}

TEST_CASE("cocycle assignment errors") {
  const GroupoidInput pair = load_groupoid(kFixtures + "/pair-groupoid.json");
  const FiniteGroup z2 = load_group(kFixtures + "/z2.json");
  try {
    make_cocycle(pair.groupoid, {{"x12", "g"}}, z2);
    FAIL("accepted");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::MissingEdge);
  }
  try {
    make_cocycle(pair.groupoid, {{"x12", "g"}, {"x21", "h"}}, z2);
    FAIL("accepted");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::UnknownElement);
  }
}

TEST_CASE("round trips") {
  const FiniteGroup v4 = load_group(kFixtures + "/klein.json");
  const FiniteGroup again = parse_group(group_to_json(v4));
  CHECK(again.table() == v4.table());
  CHECK(again.names() == v4.names());

  const GraphInput e1 = load_graph(kFixtures + "/e1.json");
  const FiniteGroup z2 = load_group(kFixtures + "/z2.json");
  const Labeling c = make_labeling(e1.graph, e1.labels, z2);
  const GraphInput back = parse_graph(graph_to_json(e1.graph, &c, &z2));
  CHECK(back.graph.vertices() == e1.graph.vertices());
  CHECK(back.labels == e1.labels);

  const GroupoidInput pair = load_groupoid(kFixtures + "/pair-groupoid.json");
  const Cocycle cc = make_cocycle(pair.groupoid, pair.cocycle, z2);
  const GroupoidInput qback = parse_groupoid(groupoid_to_json(pair.groupoid, &cc, &z2));
  CHECK(qback.groupoid.product_table() == pair.groupoid.product_table());
  CHECK(qback.groupoid.inverse_table() == pair.groupoid.inverse_table());
  CHECK(make_cocycle(qback.groupoid, qback.cocycle, z2).values == cc.values);
}

TEST_CASE("graph actions") {
  const DirectedGraph two({"v1", "w1", "v2", "w2"}, {Edge{"f1", 0, 1}, Edge{"f2", 2, 3}});
  const FiniteGroup z2 = load_group(kFixtures + "/z2.json");
  const GraphAction a = parse_graph_action(
      R"({"g": {"v1": "v2", "v2": "v1", "w1": "w2", "w2": "w1", "f1": "f2", "f2": "f1"}})", two, z2);
  CHECK(a.vertex(1, 0) == 2);
  CHECK(a.edge(1, 1) == 0);
  CHECK(message_of([&] { parse_graph_action("{}", two, z2); }).find("lacks element") != std::string::npos);
  try {
    parse_graph_action(R"({"g": {"v1": "v2", "v2": "v1"}})", two, z2);
    FAIL("accepted");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::ActionInvalid);
  }
}

TEST_CASE("report JSON is stable") {
  VerificationReport r;
  r.instance = "e1/z2";
  r.theorem = "t";
  r.passed = true;
  r.source_dim = r.target_dim = 16;
  r.source_signature = r.target_signature = {4};
  r.tolerance = 1e-9;
  r.seed = 7;
  r.wall_seconds = 1.25;
  r.checks.push_back(Check{"a", true, 0.0, ""});
  const std::string without = report_to_json(r, false);
  CHECK(without.find("wall_seconds") == std::string::npos);
  r.wall_seconds = 9.0;
  CHECK(report_to_json(r, false) == without);
  CHECK(report_to_json(r, true).find("wall_seconds") != std::string::npos);
  // Keys in a fixed order.
  CHECK(without.find("\"instance\"") < without.find("\"theorem\""));
  CHECK(without.find("\"theorem\"") < without.find("\"checks\""));
  CHECK(report_summary(r).find("PASS") != std::string::npos);
}
