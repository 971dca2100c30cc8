#include <doctest.h>

#include <complex>
#include <numbers>

#include "oracles.hpp"
#include "skewcp/errors.hpp"
#include "skewcp/graphalg.hpp"

using namespace skewcp;

namespace {

const FiniteGroup kZ2 = FiniteGroup::make({{0, 1}, {1, 0}}, {"e", "g"});

DirectedGraph e1() { return DirectedGraph({"v", "w"}, {Edge{"f", 0, 1}}); }
DirectedGraph chain2() { return DirectedGraph({"u", "v", "w"}, {Edge{"e1", 0, 1}, Edge{"e2", 1, 2}}); }
DirectedGraph fan() {
  // Two sinks, one reached two ways.
  return DirectedGraph({"a", "b", "c", "d"},
                       {Edge{"x", 0, 1}, Edge{"y", 0, 2}, Edge{"z", 2, 1}, Edge{"t", 0, 3}});
}

}  // namespace

TEST_CASE("E1 family on path space") {
  const CKFamily fam = ck_representation(e1());
  REQUIRE(fam.dimension() == 2);
  // Basis (w, f): s_f = e_{f,w}, p_v = e_{f,f}, p_w = e_{w,w}.
  const Index w = fam.path_index(Path{1, {}}), f = fam.path_index(Path{0, {0}});
  REQUIRE(w >= 0);
  REQUIRE(f >= 0);
  CHECK(max_abs_diff(fam.s[0], matrix_unit(2, f, w)) == 0.0);
  CHECK(max_abs_diff(fam.p[0], matrix_unit(2, f, f)) == 0.0);
  CHECK(max_abs_diff(fam.p[1], matrix_unit(2, w, w)) == 0.0);
  CHECK(ck_algebra(fam).dimension() == 4);
}

TEST_CASE("CK relations hold and their violations are caught") {
  for (const DirectedGraph& e : {e1(), chain2(), fan()}) {
    const CKFamily fam = ck_representation(e);
    CHECK(check_ck_relations(e, fam.s, fam.p).passed());
  }
  const CKFamily fam = ck_representation(e1());
  std::vector<Matrix> doubled{Matrix(2.0 * fam.s[0])};
  const CKRelationReport bad = check_ck_relations(e1(), doubled, fam.p);
  CHECK_FALSE(bad.partial_isometries);
  CHECK_FALSE(bad.witness.empty());
}

TEST_CASE("dim C*(E) = Σ n_w² against the path-count oracle") {
  for (const DirectedGraph& e : {e1(), chain2(), fan()}) {
    const CKFamily fam = ck_representation(e);
    const AlgebraSpan a = ck_algebra(fam);
    CHECK(expected_ck_dimension(e) == oracle::ck_dimension(e));
    CHECK(a.dimension() == oracle::ck_dimension(e));
    CHECK(a.dimension() == oracle::generated_dimension(oracle::dense(fam.generators())));
    CHECK(wedderburn_signature(a) == oracle::ck_signature(e));
  }
  CHECK(oracle::ck_dimension(chain2()) == 9);
}

TEST_CASE("algebra representations require acyclic graphs") {
  const DirectedGraph loop({"v"}, {Edge{"f", 0, 0}});
  CHECK_THROWS_AS(ck_representation(loop), Error);
}

TEST_CASE("gauge automorphisms") {
  const std::vector<Complex> zs{1.0, -1.0, Complex(0.0, 1.0), std::polar(1.0, 2.0 * std::numbers::pi / 7.0)};
  for (const DirectedGraph& e : {e1(), chain2(), fan()}) {
    const CKFamily fam = ck_representation(e);
    const AlgebraSpan a = ck_algebra(fam);
    for (Complex z : zs) CHECK(gauge_check(fam, a, z).passed());
  }
}

TEST_CASE("coaction on E1/Z2") {
  const CKFamily fam = ck_representation(e1());
  const Labeling c{{1}};
  const RepresentedCoaction delta = coaction(fam, kZ2, c);
  const RegularRepresentations reps = regular_representations(kZ2);
  // δ(s_f) = s_f ⊗ λ_g, δ(p_v) = p_v ⊗ 1.
  CHECK(delta.delta_s[0].rows() == 4);
  CHECK(max_abs_diff(delta.delta_s[0], kron(fam.s[0], reps.lambda[1])) < 1e-15);
  CHECK(max_abs_diff(delta.delta_p[0], kron(fam.p[0], identity_matrix(2))) < 1e-15);
  CHECK(check_coaction(fam, delta, 1e-12).passed());
}

TEST_CASE("coaction identity on other graphs and groups") {
  const FiniteGroup z3 = FiniteGroup::cyclic(3), v4 = FiniteGroup::klein_four();
  const CKFamily fam = ck_representation(fan());
  CHECK(check_coaction(fam, coaction(fam, z3, Labeling{{1, 2, 0, 1}}), 1e-12).passed());
  CHECK(check_coaction(fam, coaction(fam, v4, Labeling{{1, 2, 3, 0}}), 1e-12).passed());
}

TEST_CASE("spectral subspaces of E1/Z2") {
  const CKFamily fam = ck_representation(e1());
  const Labeling c{{1}};
  const GradedBasis graded = spectral_subspaces(fam, kZ2, c);
  CHECK(graded.dimension(0) == 2);  // p_v, p_w
  CHECK(graded.dimension(1) == 2);  // s_f, s_f*
  const AlgebraSpan a = ck_algebra(fam);
  CHECK(check_grading(fam, graded, a, coaction(fam, kZ2, c)).passed());
}

TEST_CASE("path degrees") {
  const FiniteGroup z3 = FiniteGroup::cyclic(3);
  const Labeling c{{1, 1}};
  CHECK(path_degree(Path{0, {0, 1}}, z3, c) == 2);
  CHECK(path_degree(Path{2, {}}, z3, c) == 0);
}

TEST_CASE("path-space unitaries implement the translation action") {
  const DirectedGraph f = skew_product(e1(), kZ2, Labeling{{1}});
  const CKFamily fam = ck_representation(f);
  const GraphAction a = translation_action(f, kZ2);
  const auto u = path_space_unitaries(fam, kZ2, a);
  REQUIRE(u.size() == 2);
  for (std::size_t e = 0; e < f.edge_count(); ++e) {
    const Matrix moved = u[1] * fam.s[e] * adjoint(u[1]);
    CHECK(max_abs_diff(moved, fam.s[a.edge(1, static_cast<int>(e))]) < 1e-15);
  }
}
