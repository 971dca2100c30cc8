#include <doctest.h>

#include "oracles.hpp"
#include "skewcp/duality.hpp"
#include "skewcp/errors.hpp"

using namespace skewcp;

namespace {

const FiniteGroup kZ2 = FiniteGroup::make({{0, 1}, {1, 0}}, {"e", "g"});

DirectedGraph e1() { return DirectedGraph({"v", "w"}, {Edge{"f", 0, 1}}); }
DirectedGraph chain2() { return DirectedGraph({"u", "v", "w"}, {Edge{"e1", 0, 1}, Edge{"e2", 1, 2}}); }
DirectedGraph fan() {
  return DirectedGraph({"a", "b", "c", "d"},
                       {Edge{"x", 0, 1}, Edge{"y", 0, 2}, Edge{"z", 2, 1}, Edge{"t", 0, 3}});
}

DualityOptions with_signatures() {
  DualityOptions d;
  d.signatures = true;
  return d;
}

struct Instance {
  DirectedGraph e;
  FiniteGroup g;
  Labeling c;
};

std::vector<Instance> instances() {
  const FiniteGroup z3 = FiniteGroup::cyclic(3), z4 = FiniteGroup::cyclic(4), v4 = FiniteGroup::klein_four();
  return {
      {e1(), kZ2, Labeling{{1}}},           {e1(), kZ2, Labeling{{0}}},
      {chain2(), z3, Labeling{{1, 2}}},     {chain2(), z4, Labeling{{1, 3}}},
      {fan(), v4, Labeling{{1, 2, 3, 1}}},  {fan(), kZ2, Labeling{{1, 1, 0, 1}}},
      {e1(), FiniteGroup::trivial(), Labeling{{0}}},
  };
}

}  // namespace

TEST_CASE("equivariant isomorphism C*(E×_cG) ≅ C*(E)⋊_δG") {
  for (const Instance& in : instances()) {
    const IsomorphismCertificate cert = certify_eqvt_iso(in.e, in.g, in.c, with_signatures());
    CHECK_MESSAGE(cert.passed(), cert.failure());
    const DirectedGraph skew = skew_product(in.e, in.g, in.c);
    CHECK(cert.source_dim == oracle::ck_dimension(skew));
    CHECK(cert.target_dim == oracle::ck_dimension(in.e) * static_cast<std::size_t>(in.g.order()));
    CHECK(cert.source_signature == oracle::ck_signature(skew));
  }
}

TEST_CASE("direct isomorphism C*(E×_cG)⋊G ≅ C*(E)⊗M_|G|") {
  for (const Instance& in : instances()) {
    const IsomorphismCertificate cert = certify_direct_iso(in.e, in.g, in.c, with_signatures());
    CHECK_MESSAGE(cert.passed(), cert.failure());
    const std::size_t n = static_cast<std::size_t>(in.g.order());
    CHECK(cert.target_dim == oracle::ck_dimension(in.e) * n * n);
    CHECK(cert.source_dim == cert.target_dim);
    CHECK(cert.target_signature == oracle::scaled(oracle::ck_signature(in.e), n));
  }
}

TEST_CASE("E1/Z2 certificates") {
  const IsomorphismCertificate eqvt = certify_eqvt_iso(e1(), kZ2, Labeling{{1}}, with_signatures());
  CHECK(eqvt.source_dim == 8);
  CHECK(eqvt.target_dim == 8);
  const IsomorphismCertificate direct = certify_direct_iso(e1(), kZ2, Labeling{{1}}, with_signatures());
  CHECK(direct.source_dim == 16);
  CHECK(direct.source_signature == std::vector<std::size_t>{4});
  CHECK_NOTHROW(require(direct));
}

TEST_CASE("regular-representation diagram") {
  for (const Instance& in : instances()) {
    const DiagramReport d = certify_regular_diagram(in.e, in.g, in.c);
    CHECK_MESSAGE(d.passed(), d.witness);
    CHECK(d.crossed_dim == d.expected_dim);
  }
  // 6 graph generators and two unitaries for E1/Z2.
  CHECK(certify_regular_diagram(e1(), kZ2, Labeling{{1}}).generators.size() == 8);
}

TEST_CASE("free actions") {
  for (const Instance& in : instances()) {
    const DirectedGraph f = skew_product(in.e, in.g, in.c);
    const IsomorphismCertificate cert = certify_free_action(f, in.g, translation_action(f, in.g), with_signatures());
    CHECK_MESSAGE(cert.passed(), cert.failure());
    CHECK(cert.signatures_agree());
  }
  // Two copies of E1 swapped by Z2: C*(F)⋊Z2 ≅ C*(E1)⊗M₂.
  const DirectedGraph two({"v1", "w1", "v2", "w2"}, {Edge{"f1", 0, 1}, Edge{"f2", 2, 3}});
  GraphAction swap = trivial_action(two, kZ2);
  swap.vertex_perm[1] = {2, 3, 0, 1};
  swap.edge_perm[1] = {1, 0};
  const IsomorphismCertificate cert = certify_free_action(two, kZ2, swap, with_signatures());
  CHECK(cert.passed());
  CHECK(cert.target_signature == std::vector<std::size_t>{4});
}

TEST_CASE("non-free actions are refused") {
  try {
    certify_free_action(e1(), kZ2, trivial_action(e1(), kZ2));
    FAIL("trivial action accepted");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::ActionNotFree);
  }
}

TEST_CASE("trivial group gives C*(E)⊗M₁") {
  const IsomorphismCertificate cert = certify_direct_iso(e1(), FiniteGroup::trivial(), Labeling{{0}}, with_signatures());
  CHECK(cert.passed());
  CHECK(cert.target_signature == std::vector<std::size_t>{2});
}
