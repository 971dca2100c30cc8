#include <doctest.h>

#include "oracles.hpp"

using namespace skewcp;

// The oracles are checked on values small enough to count by hand.

TEST_CASE("path-count oracle") {
  const DirectedGraph chain2({"u", "v", "w"}, {Edge{"e1", 0, 1}, Edge{"e2", 1, 2}});
  CHECK(oracle::paths_ending_at(chain2) == std::vector<std::size_t>{1, 2, 3});
  CHECK(oracle::ck_signature(chain2) == std::vector<std::size_t>{3});
  CHECK(oracle::ck_dimension(chain2) == 9);

  const DirectedGraph e1({"v", "w"}, {Edge{"f", 0, 1}});
  CHECK(oracle::ck_dimension(e1) == 4);

  // Two parallel edges into one sink plus an isolated vertex.
  const DirectedGraph par({"a", "b", "c"}, {Edge{"x", 0, 1}, Edge{"y", 0, 1}});
  CHECK(oracle::ck_signature(par) == std::vector<std::size_t>{1, 3});
}

TEST_CASE("brute-force closure oracle") {
  DenseMatrix e01 = DenseMatrix::Zero(2, 2);
  e01(0, 1) = 1.0;
  CHECK(oracle::generated_dimension({e01}) == 4);
  DenseMatrix d = DenseMatrix::Zero(3, 3);
  d(0, 0) = 1.0;
  d(1, 1) = 2.0;
  CHECK(oracle::generated_dimension({d}) == 2);
}

TEST_CASE("orbit oracle") {
  const FiniteGroupoid q = transitive_groupoid({"a", "b"}, FiniteGroup::cyclic(2));
  const auto comps = oracle::components(q);
  REQUIRE(comps.size() == 1);
  CHECK(comps[0].units == 2);
  CHECK(comps[0].isotropy == 2);
  CHECK(oracle::groupoid_signature(q) == std::vector<std::size_t>{2, 2});
  CHECK(oracle::dimension_of({2, 2}) == q.arrow_count());
}
