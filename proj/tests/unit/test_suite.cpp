#include <doctest.h>

#include <set>

#include "oracles.hpp"
#include "skewcp/suite.hpp"

using namespace skewcp;

TEST_CASE("graph cases respect the limits and are reproducible") {
  const GraphSuiteLimits limits;
  std::set<int> orders;
  for (int k = 0; k < 20; ++k) {
    const GraphCase a = random_graph_case(42, k, limits), b = random_graph_case(42, k, limits);
    CHECK(a.name == b.name);
    CHECK(a.labeling.values == b.labeling.values);
    CHECK(a.graph.is_acyclic());
    CHECK(a.graph.vertex_count() <= 8);
    CHECK(a.graph.edge_count() <= 12);
    CHECK(a.labeling.size() == a.graph.edge_count());
    const std::size_t n = static_cast<std::size_t>(a.group.order());
    CHECK(oracle::paths_ending_at(a.graph).size() == a.graph.vertex_count());
    std::size_t sink_paths = 0;
    for (std::size_t k2 : oracle::ck_signature(a.graph)) sink_paths += k2;
    CHECK(sink_paths * n * n <= limits.max_ambient);
    orders.insert(a.group.order());
  }
  CHECK(orders == std::set<int>{2, 3, 4});
}

TEST_CASE("free-action cases are free") {
  for (int k = 0; k < 8; ++k) {
    const FreeActionCase f = random_free_action_case(42, k);
    CHECK(is_free(f.graph, f.group, f.action));
  }
}

TEST_CASE("groupoid cases respect the limits") {
  const GroupoidSuiteLimits limits;
  std::set<int> orders;
  bool isotropy = false, several = false;
  for (int k = 0; k < 30; ++k) {
    const GroupoidCase q = random_groupoid_case(42, k, limits);
    CHECK(q.groupoid.unit_count() <= 6);
    CHECK(q.groupoid.arrow_count() <= 24);
    CHECK_NOTHROW(validate_cocycle(q.groupoid, q.group, q.cocycle));
    orders.insert(q.group.order());
    const auto comps = oracle::components(q.groupoid);
    several = several || comps.size() > 1;
    for (const auto& c : comps) isotropy = isotropy || c.isotropy > 1;
  }
  CHECK(orders == std::set<int>{2, 3});
  CHECK(isotropy);
  CHECK(several);
}

TEST_CASE("homomorphisms by exhaustion") {
  const FiniteGroup z2 = FiniteGroup::cyclic(2), z3 = FiniteGroup::cyclic(3), z4 = FiniteGroup::cyclic(4);
  CHECK(homomorphisms(z2, z3).size() == 1);
  CHECK(homomorphisms(z3, z3).size() == 3);
  CHECK(homomorphisms(z2, z4).size() == 2);
  CHECK(homomorphisms(z4, z2).size() == 2);
}

TEST_CASE("a small suite passes and keeps case order") {
  SuiteOptions o;
  o.graph_cases = 3;
  o.free_cases = 2;
  o.groupoid_cases = 2;
  o.samples = 10;
  o.workers = 2;
  const SuiteReport r = run_suite(o);
  CHECK(r.all_passed());
  REQUIRE(r.cases.size() == 7);
  CHECK(r.cases[0].family == "graph");
  CHECK(r.cases[3].family == "free-action");
  CHECK(r.cases[6].family == "groupoid");
  for (int k = 0; k < 3; ++k) CHECK(r.cases[k].index == k);
  CHECK(suite_to_json(r, false) == suite_to_json(run_suite(o), false));
}
