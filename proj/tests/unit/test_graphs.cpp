#include <doctest.h>

#include "oracles.hpp"
#include "skewcp/errors.hpp"
#include "skewcp/graphs.hpp"

using namespace skewcp;

namespace {

const FiniteGroup kZ2 = FiniteGroup::make({{0, 1}, {1, 0}}, {"e", "g"});

DirectedGraph e1() { return DirectedGraph({"v", "w"}, {Edge{"f", 0, 1}}); }

DirectedGraph chain2() { return DirectedGraph({"u", "v", "w"}, {Edge{"e1", 0, 1}, Edge{"e2", 1, 2}}); }

}  // namespace

TEST_CASE("graph validation") {
  CHECK_THROWS_AS(DirectedGraph({"v"}, {Edge{"f", 0, 3}}), Error);
  CHECK_THROWS_AS(DirectedGraph({"v", "v"}, {}), Error);
  const DirectedGraph loop({"v"}, {Edge{"f", 0, 0}});
  CHECK_FALSE(loop.is_acyclic());
  CHECK(e1().is_acyclic());
  CHECK(e1().is_sink(1));
  CHECK_FALSE(e1().is_sink(0));
}

TEST_CASE("sink paths") {
  const auto p1 = enumerate_sink_paths(e1());
  CHECK(p1.size() == 2);  // w and f
  const auto p2 = enumerate_sink_paths(chain2());
  CHECK(p2.size() == 3);  // w, e2, e1e2
  for (const Path& mu : p2) CHECK(mu.range(chain2()) == 2);
  try {
    enumerate_sink_paths(DirectedGraph({"v"}, {Edge{"f", 0, 0}}));
    FAIL("cycle accepted");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::GraphHasCycle);
  }
}

TEST_CASE("path counts agree with the oracle") {
  const DirectedGraph diamond({"a", "b", "c", "d"},
                              {Edge{"x", 0, 1}, Edge{"y", 0, 2}, Edge{"z", 1, 3}, Edge{"t", 2, 3}});
  CHECK(enumerate_sink_paths(diamond).size() == oracle::paths_ending_at(diamond)[3]);
  CHECK(enumerate_paths(diamond).size() == 4 + 4 + 2);
}

TEST_CASE("skew product of E1 by Z2") {
  const Labeling c{{1}};
  const DirectedGraph s = skew_product(e1(), kZ2, c);
  REQUIRE(s.vertex_count() == 4);
  REQUIRE(s.edge_count() == 2);
  // (f,e): (v,g) → (w,e) and (f,g): (v,e) → (w,g).
  const int fe = skew_cell(0, 0, kZ2), fg = skew_cell(0, 1, kZ2);
  CHECK(s.source(fe) == skew_cell(0, 1, kZ2));
  CHECK(s.range(fe) == skew_cell(1, 0, kZ2));
  CHECK(s.source(fg) == skew_cell(0, 0, kZ2));
  CHECK(s.range(fg) == skew_cell(1, 1, kZ2));
  CHECK(s.edge_id(fe) == "(f,e)");
}

TEST_CASE("trivial labeling gives disjoint copies") {
  const DirectedGraph s = skew_product(e1(), kZ2, trivial_labeling(1, kZ2));
  const auto iso = find_graph_iso(s, DirectedGraph({"v1", "w1", "v2", "w2"}, {Edge{"f1", 0, 1}, Edge{"f2", 2, 3}}));
  CHECK(iso.has_value());
}

TEST_CASE("translation action") {
  const DirectedGraph s = skew_product(e1(), kZ2, Labeling{{1}});
  const GraphAction a = translation_action(s, kZ2);
  validate_action(s, kZ2, a);
  CHECK(a.vertex(1, skew_cell(0, 0, kZ2)) == skew_cell(0, 1, kZ2));
  CHECK(a.vertex(1, skew_cell(1, 1, kZ2)) == skew_cell(1, 0, kZ2));
  CHECK(is_free(s, kZ2, a));
  CHECK_FALSE(is_free(e1(), kZ2, trivial_action(e1(), kZ2)));
  const auto fixed = find_fixed_cell(e1(), kZ2, trivial_action(e1(), kZ2));
  REQUIRE(fixed.has_value());
  CHECK(fixed->element == 1);
}

TEST_CASE("invalid actions are rejected") {
  GraphAction a = trivial_action(e1(), kZ2);
  a.vertex_perm[1] = {1, 0};  // swaps v and w but fixes f
  CHECK_THROWS_AS(validate_action(e1(), kZ2, a), Error);
}

TEST_CASE("Gross–Tucker on E1×_cZ2") {
  const DirectedGraph f = skew_product(e1(), kZ2, Labeling{{1}});
  const GrossTucker gt = quotient_and_gross_tucker(f, kZ2, translation_action(f, kZ2));
  CHECK(gt.quotient.vertex_count() == 2);
  CHECK(gt.quotient.edge_count() == 1);
  CHECK(find_graph_iso(gt.quotient, e1()).has_value());
  CHECK(is_graph_iso(skew_product(gt.quotient, kZ2, gt.labeling), f, gt.iso));
}

TEST_CASE("Gross–Tucker on two copies of E1 with the swap") {
  const DirectedGraph two({"v1", "w1", "v2", "w2"}, {Edge{"f1", 0, 1}, Edge{"f2", 2, 3}});
  GraphAction swap = trivial_action(two, kZ2);
  swap.vertex_perm[1] = {2, 3, 0, 1};
  swap.edge_perm[1] = {1, 0};
  validate_action(two, kZ2, swap);
  CHECK(is_free(two, kZ2, swap));
  const GrossTucker gt = quotient_and_gross_tucker(two, kZ2, swap);
  CHECK(gt.quotient.vertex_count() == 2);
  CHECK(gt.quotient.edge_count() == 1);
  CHECK(is_graph_iso(skew_product(gt.quotient, kZ2, gt.labeling), two, gt.iso));
  try {
    quotient_and_gross_tucker(e1(), kZ2, trivial_action(e1(), kZ2));
    FAIL("non-free action accepted");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::ActionNotFree);
  }
}

TEST_CASE("graph isomorphism search") {
  const DirectedGraph a({"p", "q", "r"}, {Edge{"x", 0, 1}, Edge{"y", 1, 2}});
  const auto iso = find_graph_iso(chain2(), a);
  REQUIRE(iso.has_value());
  CHECK(is_graph_iso(chain2(), a, *iso));
  CHECK(is_graph_iso(a, chain2(), inverse(*iso)));
  CHECK_FALSE(find_graph_iso(chain2(), DirectedGraph({"p", "q", "r"}, {Edge{"x", 0, 2}, Edge{"y", 1, 2}})));
}

TEST_CASE("skew conventions map onto E×_cG") {
  const FiniteGroup z3 = FiniteGroup::cyclic(3);
  const Labeling c{{1, 2}};
  const DirectedGraph standard = skew_product(chain2(), z3, c);
  for (SkewConvention conv : {SkewConvention::Standard, SkewConvention::KumjianPask, SkewConvention::GrossTucker}) {
    const DirectedGraph other = skew_product(chain2(), z3, c, conv);
    CHECK(is_graph_iso(other, standard, convention_iso(chain2(), z3, c, conv)));
  }
  const GraphIso id = convention_iso(chain2(), z3, c, SkewConvention::Standard);
  for (std::size_t v = 0; v < id.vertex_map.size(); ++v) CHECK(id.vertex_map[v] == static_cast<int>(v));
  for (std::size_t f = 0; f < id.edge_map.size(); ++f) CHECK(id.edge_map[f] == static_cast<int>(f));
}
