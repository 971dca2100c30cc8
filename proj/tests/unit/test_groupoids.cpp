#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "skewcp/errors.hpp"
#include "skewcp/groupoids.hpp"

using namespace skewcp;

namespace {

const FiniteGroup kZ2 = FiniteGroup::make({{0, 1}, {1, 0}}, {"e", "g"});

int arrow(const FiniteGroupoid& q, const std::string& id) {
  const auto x = q.find_arrow(id);
  REQUIRE_MESSAGE(x.has_value(), id);
  return *x;
}

/// Pair groupoid on {1,2} with c(x_1_2) = c(x_2_1) = g.
struct PairExample {
  FiniteGroupoid q = pair_groupoid({"1", "2"});
  Cocycle c;
  PairExample() {
    c.values.assign(q.arrow_count(), 0);
    c.values[arrow(q, "x_1_2")] = 1;
    c.values[arrow(q, "x_2_1")] = 1;
  }
};

/// {a,b} with isotropy Z3, disjoint from the pair groupoid on {p,q,r}.
/// c(x_i_j_h) = β(i)·h·β(j)⁻¹ in Z3, a cocycle that is nontrivial on isotropy.
struct MixedExample {
  FiniteGroup z3 = FiniteGroup::cyclic(3);
  FiniteGroupoid q = disjoint_union(transitive_groupoid({"a", "b"}, z3), pair_groupoid({"p", "q", "r"}));
  Cocycle c;
  MixedExample() {
    REQUIRE(q.arrow_count() == 21);
    REQUIRE(q.arrow_id(12) == "x_p_p");
    const int beta1[2] = {0, 1}, beta2[3] = {0, 2, 1};
    c.values.assign(21, 0);
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j)
        for (int h = 0; h < 3; ++h) c.values[(i * 2 + j) * 3 + h] = (beta1[i] + h + 3 - beta1[j]) % 3;
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) c.values[12 + i * 3 + j] = (beta2[i] + 3 - beta2[j]) % 3;
  }
};

ConvolutionElement minus(const ConvolutionElement& a, const ConvolutionElement& b) {
  ConvolutionElement d(a.size());
  for (std::size_t k = 0; k < a.size(); ++k) d[k] = a[k] - b[k];
  return d;
}

}  // namespace

TEST_CASE("factories") {
  const FiniteGroupoid pair = pair_groupoid({"1", "2"});
  CHECK(pair.unit_count() == 2);
  CHECK(pair.arrow_count() == 4);
  const int x12 = arrow(pair, "x_1_2");
  CHECK(pair.source(x12) == 1);
  CHECK(pair.range(x12) == 0);
  CHECK(pair.product(x12, arrow(pair, "x_2_1")) == pair.unit_arrow(0));
  CHECK(pair.product(x12, x12) == -1);

  const FiniteGroupoid g = group_groupoid(kZ2);
  CHECK(g.unit_count() == 1);
  CHECK(g.arrow_count() == 2);

  const FiniteGroupoid two = disjoint_union(pair, pair_groupoid({"3", "4"}));
  CHECK(two.unit_count() == 4);
  CHECK(two.arrow_count() == 8);

  CHECK(units_only({"a", "b", "c"}).arrow_count() == 3);
  CHECK(transitive_groupoid({"a", "b", "c"}, FiniteGroup::cyclic(3)).arrow_count() == 27);
}

TEST_CASE("groupoid table validation") {
  const std::vector<GroupoidArrow> arrows{{"u", 0, 0}, {"x", 0, 0}};
  // x² = x makes x a second idempotent.
  CHECK_THROWS_AS(FiniteGroupoid::make({"u"}, arrows, {{0, 1}, {1, 1}}, {0, 1}), Error);
  const std::vector<std::vector<int>> z2{{0, 1}, {1, 0}};
  try {
    FiniteGroupoid::make({"u"}, arrows, z2, {0, 0});
    FAIL("bad inverse accepted");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::BadInverse);
  }
  CHECK_NOTHROW(FiniteGroupoid::make({"u"}, arrows, z2, {0, 1}));
}

TEST_CASE("convolution on the pair groupoid") {
  const FiniteGroupoid q = pair_groupoid({"1", "2"});
  const int x12 = arrow(q, "x_1_2"), x21 = arrow(q, "x_2_1");
  // δ_{x12} * δ_{x21} = δ_{x11}.
  const ConvolutionElement p = convolve(q, delta_function(q, x12), delta_function(q, x21));
  CHECK(sup_norm(minus(p, delta_function(q, q.unit_arrow(0)))) < 1e-15);
  CHECK(sup_norm(minus(involution(q, delta_function(q, x12)), delta_function(q, x21))) < 1e-15);
}

TEST_CASE("the regular representation is a faithful *-homomorphism") {
  const MixedExample m;
  std::mt19937_64 rng(11);
  for (int k = 0; k < 10; ++k) {
    const ConvolutionElement f = random_function(m.q, rng), g = random_function(m.q, rng);
    CHECK(max_abs_diff(regular(m.q, convolve(m.q, f, g)), Matrix(regular(m.q, f) * regular(m.q, g))) < 1e-12);
    CHECK(max_abs_diff(regular(m.q, involution(m.q, f)), adjoint(regular(m.q, f))) < 1e-12);
    CHECK(sup_norm(minus(function_of(m.q, regular(m.q, f)), f)) < 1e-12);
  }
}

TEST_CASE("convolution algebra signatures against the orbit oracle") {
  const std::vector<FiniteGroupoid> qs{
      pair_groupoid({"1", "2"}),
      group_groupoid(kZ2),
      units_only({"a", "b", "c"}),
      transitive_groupoid({"a", "b", "c"}, FiniteGroup::cyclic(3)),
      MixedExample{}.q,
  };
  for (const FiniteGroupoid& q : qs) {
    REQUIRE(oracle::abelian_isotropy(q));
    const AlgebraSpan a = convolution_algebra(q);
    CHECK(a.dimension() == q.arrow_count());
    CHECK(wedderburn_signature(a) == oracle::groupoid_signature(q));
  }
  CHECK(oracle::groupoid_signature(pair_groupoid({"1", "2"})) == std::vector<std::size_t>{2});
  CHECK(oracle::groupoid_signature(group_groupoid(kZ2)) == std::vector<std::size_t>{1, 1});
}

TEST_CASE("cocycle validation") {
  const PairExample ex;
  CHECK_NOTHROW(validate_cocycle(ex.q, kZ2, ex.c));
  Cocycle bad = ex.c;
  bad.values[arrow(ex.q, "x_2_1")] = 0;
  try {
    validate_cocycle(ex.q, kZ2, bad);
    FAIL("non-multiplicative cocycle accepted");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NotWellDefined);
  }
  const MixedExample m;
  CHECK_NOTHROW(validate_cocycle(m.q, m.z3, m.c));
}

TEST_CASE("skew-product groupoid") {
  const PairExample ex;
  const FiniteGroupoid s = skew_product_groupoid(ex.q, kZ2, ex.c);
  CHECK(s.unit_count() == 4);
  CHECK(s.arrow_count() == 8);
  CHECK(wedderburn_signature(convolution_algebra(s)) == std::vector<std::size_t>{2, 2});
  // r(x,s) = (r(x),c(x)s), s(x,s) = (s(x),s).
  const int n = kZ2.order();
  for (std::size_t x = 0; x < ex.q.arrow_count(); ++x)
    for (int t = 0; t < n; ++t) {
      const int xs = static_cast<int>(x) * n + t;
      CHECK(s.source(xs) == ex.q.source(static_cast<int>(x)) * n + t);
      CHECK(s.range(xs) == ex.q.range(static_cast<int>(x)) * n + kZ2.mul(ex.c(x), t));
    }
  // Trivial cocycle: |G| disjoint copies.
  const FiniteGroupoid copies = skew_product_groupoid(ex.q, kZ2, trivial_cocycle(ex.q, kZ2));
  CHECK(oracle::components(copies).size() == 2);
  CHECK(wedderburn_signature(convolution_algebra(copies)) == std::vector<std::size_t>{2, 2});
}

TEST_CASE("translation is an action by automorphisms") {
  const MixedExample m;
  const FiniteGroupoid s = skew_product_groupoid(m.q, m.z3, m.c);
  CHECK_NOTHROW(validate_action(s, m.z3, skew_translation(m.q, m.z3)));
  GroupoidAction broken = skew_translation(m.q, m.z3);
  std::swap(broken.arrow_perm[1][0], broken.arrow_perm[1][1]);
  CHECK_THROWS_AS(validate_action(s, m.z3, broken), Error);
}

TEST_CASE("semidirect products") {
  // Swap on two units: the transformation groupoid of a free transitive action.
  const FiniteGroupoid r = units_only({"a", "b"});
  GroupoidAction swap = trivial_action(r, kZ2);
  swap.arrow_perm[1] = {1, 0};
  const FiniteGroupoid sd = semidirect_product(r, kZ2, swap);
  CHECK(sd.arrow_count() == 4);
  CHECK(wedderburn_signature(convolution_algebra(sd)) == std::vector<std::size_t>{2});

  // R⋊{e} ≅ R.
  const FiniteGroupoid pair = pair_groupoid({"1", "2"});
  const FiniteGroup one = FiniteGroup::trivial();
  const FiniteGroupoid same = semidirect_product(pair, one, trivial_action(pair, one));
  CHECK(same.arrow_count() == pair.arrow_count());
  CHECK(wedderburn_signature(convolution_algebra(same)) == std::vector<std::size_t>{2});

  // (Q×_cZ2)⋊Z2 for the pair example.
  const PairExample ex;
  const FiniteGroupoid skew = skew_product_groupoid(ex.q, kZ2, ex.c);
  CHECK(semidirect_product(skew, kZ2, skew_translation(ex.q, kZ2)).arrow_count() == 16);
}

TEST_CASE("groupoid certificates on the pair example") {
  const PairExample ex;
  DualityOptions d;
  d.signatures = true;
  const IsomorphismCertificate iso = certify_gpd_iso(ex.q, kZ2, ex.c, d);
  CHECK_MESSAGE(iso.passed(), iso.failure());
  CHECK(iso.source_signature == std::vector<std::size_t>{2, 2});

  const FiniteGroupoid skew = skew_product_groupoid(ex.q, kZ2, ex.c);
  const IsomorphismCertificate semi = certify_semi_cross(skew, kZ2, skew_translation(ex.q, kZ2), 1, d);
  CHECK_MESSAGE(semi.passed(), semi.failure());
  CHECK(semi.source_dim == 16);

  const IsomorphismCertificate full = certify_full_groupoid(ex.q, kZ2, ex.c, d);
  CHECK_MESSAGE(full.passed(), full.failure());
  CHECK(full.target_signature == oracle::scaled(oracle::groupoid_signature(ex.q), 2));

  CHECK(check_groupoid_coaction(ex.q, kZ2, ex.c).passed());
  const GroupoidReport kernel = kernel_embedding_check(ex.q, kZ2, ex.c, 1, 20);
  CHECK_MESSAGE(kernel.passed(), kernel.failure());
  const GroupoidReport ex_norms = expectations_and_norm_identities(skew, kZ2, skew_translation(ex.q, kZ2), 1, 20);
  CHECK_MESSAGE(ex_norms.passed(), ex_norms.failure());
}

TEST_CASE("groupoid certificates with isotropy and a Z3 cocycle") {
  const MixedExample m;
  DualityOptions d;
  d.signatures = true;
  const IsomorphismCertificate iso = certify_gpd_iso(m.q, m.z3, m.c, d);
  CHECK_MESSAGE(iso.passed(), iso.failure());
  const IsomorphismCertificate full = certify_full_groupoid(m.q, m.z3, m.c, d);
  CHECK_MESSAGE(full.passed(), full.failure());
  CHECK(full.target_signature == oracle::scaled(oracle::groupoid_signature(m.q), 3));
  const FiniteGroupoid skew = skew_product_groupoid(m.q, m.z3, m.c);
  CHECK(wedderburn_signature(convolution_algebra(skew)) == oracle::groupoid_signature(skew));
}

TEST_CASE("equivalences") {
  const PairExample ex;
  for (EquivalenceKind kind : {EquivalenceKind::SkewSemidirect, EquivalenceKind::KernelReduction}) {
    const GroupoidReport r = certify_equivalence(kind, ex.q, kZ2, ex.c);
    CHECK_MESSAGE(r.passed(), r.failure());
  }
  // H = {(u,t) : t ∈ c(Q^u)} has four units here.
  CHECK(make_equivalence(EquivalenceKind::KernelReduction, ex.q, kZ2, ex.c).left.unit_count() == 4);

  const MixedExample m;
  for (EquivalenceKind kind : {EquivalenceKind::SkewSemidirect, EquivalenceKind::KernelReduction}) {
    CHECK(certify_equivalence(kind, m.q, m.z3, m.c).passed());
  }
}

TEST_CASE("broken bimodules are caught") {
  const PairExample ex;
  EquivalenceBimodule z = make_equivalence(EquivalenceKind::SkewSemidirect, ex.q, kZ2, ex.c);
  // Redirect one left-action entry.
  for (auto& row : z.left_action) {
    for (int& image : row) {
      if (image >= 0) {
        image = (image + 1) % static_cast<int>(z.carrier.size());
        goto done;
      }
    }
  }
done:
  CHECK_FALSE(certify_equivalence(z).passed());
}

TEST_CASE("inner products on C_c(Q)") {
  const MixedExample m;
  const NModule mod(m.q, m.z3, m.c);
  std::mt19937_64 rng(5);
  for (int k = 0; k < 20; ++k) {
    const ConvolutionElement a = random_function(m.q, rng), b = random_function(m.q, rng);
    const ConvolutionElement graded = mod.inner_graded(a, b);
    for (std::size_t choice = 0; choice < 3; ++choice) {
      CHECK(sup_norm(minus(mod.inner_general(a, b, choice), graded)) < 1e-9);
    }
  }
  BimoduleOptions o;
  o.samples = 30;
  const GroupoidReport r = bimodule_inner_products(m.q, m.z3, m.c, o);
  CHECK_MESSAGE(r.passed(), r.failure());
}

TEST_CASE("kernel groupoid of the pair example is the unit space") {
  const PairExample ex;
  const NModule mod(ex.q, kZ2, ex.c);
  CHECK(mod.n().arrow_count() == 2);
  CHECK(mod.n().unit_count() == 2);
}
