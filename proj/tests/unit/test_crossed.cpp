#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "skewcp/crossed.hpp"
#include "skewcp/errors.hpp"

using namespace skewcp;

namespace {

const FiniteGroup kZ2 = FiniteGroup::make({{0, 1}, {1, 0}}, {"e", "g"});

DirectedGraph e1() { return DirectedGraph({"v", "w"}, {Edge{"f", 0, 1}}); }

ActionCrossedProduct translation_crossed(const DirectedGraph& f, const FiniteGroup& g, AlgebraSpan& base) {
  const CKFamily fam = ck_representation(f);
  base = ck_algebra(fam);
  const AlgebraAction act{g, path_space_unitaries(fam, g, translation_action(f, g))};
  return action_crossed_product(base, act);
}

}  // namespace

TEST_CASE("coaction crossed product of E1 by Z2") {
  const CKFamily fam = ck_representation(e1());
  const RepresentedCoaction delta = coaction(fam, kZ2, Labeling{{1}});
  const CoactionCrossedProduct cp = coaction_crossed_product(fam, delta);
  CHECK(cp.expected_dimension() == 8);
  CHECK(cp.span.dimension() == 8);
  CHECK(check_crossed_product(fam, delta, cp).passed());
  const AlgebraAction dual = dual_action(cp);
  CHECK(check_dual_action(cp, dual).passed());
}

TEST_CASE("coaction crossed product with the trivial group is C*(E)") {
  const FiniteGroup one = FiniteGroup::trivial();
  const CKFamily fam = ck_representation(e1());
  const CoactionCrossedProduct cp = coaction_crossed_product(fam, coaction(fam, one, Labeling{{0}}));
  CHECK(cp.span.dimension() == 4);
}

TEST_CASE("dual action permutes the second slot") {
  const CKFamily fam = ck_representation(e1());
  const CoactionCrossedProduct cp = coaction_crossed_product(fam, coaction(fam, kZ2, Labeling{{1}}));
  const AlgebraAction dual = dual_action(cp);
  // δ̂_g(p_v, e) = (p_v, g).
  const Matrix pve = cp.element(fam.p[0], 0, 0), pvg = cp.element(fam.p[0], 0, 1);
  CHECK(max_abs_diff(dual.apply(1, pve), pvg) < 1e-15);
}

TEST_CASE("action crossed product by translation on E1×_cZ2") {
  const DirectedGraph f = skew_product(e1(), kZ2, Labeling{{1}});
  AlgebraSpan base(1, 1e-7);
  const ActionCrossedProduct cp = translation_crossed(f, kZ2, base);
  CHECK(base.dimension() == 8);
  CHECK(cp.span.dimension() == 16);
  CHECK(cp.span.dimension() == oracle::generated_dimension(oracle::dense(cp.generators)));
  CHECK(check_action_crossed_product(base, cp).passed());
  CHECK(wedderburn_signature(cp.span) == std::vector<std::size_t>{4});
}

TEST_CASE("conditional expectation") {
  const DirectedGraph f = skew_product(e1(), kZ2, Labeling{{1}});
  AlgebraSpan base(1, 1e-7);
  const ActionCrossedProduct cp = translation_crossed(f, kZ2, base);
  for (const Matrix& b : base.basis()) {
    CHECK(max_abs_diff(conditional_expectation(cp, cp.pi(b)), b) < 1e-12);
    CHECK(max_abs(conditional_expectation(cp, Matrix(cp.pi(b) * cp.u(1)))) < 1e-12);
    const auto coeffs = crossed_coefficients(cp, Matrix(cp.pi(b) * cp.u(1)));
    CHECK(max_abs_diff(coeffs[1], b) < 1e-12);
  }
  std::mt19937_64 rng(3);
  const ExpectationReport r = check_conditional_expectation(base, cp, rng, 100);
  CHECK(r.passed());
  CHECK(r.min_faithful_norm > 1e-6);
  // A generic matrix lies outside the 16-dimensional crossed product.
  const Index n = cp.span.ambient_dim();
  std::normal_distribution<double> gauss;
  Matrix generic(n, n);
  for (Index i = 0; i < n; ++i)
    for (Index j = 0; j < n; ++j) generic.insert(i, j) = Complex(gauss(rng), gauss(rng));
  CHECK_THROWS_AS(conditional_expectation(cp, generic), Error);
}

TEST_CASE("invalid algebra actions") {
  const CKFamily fam = ck_representation(e1());
  const AlgebraSpan a = ck_algebra(fam);
  // A non-unitary "action".
  const AlgebraAction bad{kZ2, {identity_matrix(2), Matrix(2.0 * identity_matrix(2))}};
  CHECK_FALSE(validate_action(a, bad).passed());
  // U_g² = −1, so t ↦ U_t is not a homomorphism.
  Matrix rot(2, 2);
  rot.insert(0, 1) = -1.0;
  rot.insert(1, 0) = 1.0;
  const AlgebraAction twisted{kZ2, {identity_matrix(2), rot}};
  CHECK_FALSE(validate_action(a, twisted).homomorphism);
}
