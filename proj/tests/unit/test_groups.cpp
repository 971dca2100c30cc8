#include <doctest.h>

#include "skewcp/errors.hpp"
#include "skewcp/groups.hpp"

using namespace skewcp;

namespace {

ErrorCode code_of(auto&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("no error raised");
  return ErrorCode::ParseError;
}

}  // namespace

TEST_CASE("cyclic and Klein tables") {
  const FiniteGroup z2 = FiniteGroup::make({{0, 1}, {1, 0}}, {"e", "g"});
  CHECK(z2.order() == 2);
  CHECK(z2.identity() == 0);
  CHECK(z2.inv(1) == 1);

  const FiniteGroup z3 = FiniteGroup::cyclic(3);
  CHECK(z3.order() == 3);
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b) CHECK(z3.mul(a, b) == (a + b) % 3);

  const FiniteGroup v4 = FiniteGroup::klein_four();
  for (int a = 0; a < 4; ++a) CHECK(v4.mul(a, a) == v4.identity());

  CHECK(FiniteGroup::trivial().order() == 1);
}

TEST_CASE("table validation names the failing axiom") {
  CHECK(code_of([] { FiniteGroup::make({{0, 1}, {1, 1}}); }) == ErrorCode::NotLatinSquare);
  // a·b = −a−b mod 3 is a Latin square without an identity.
  CHECK(code_of([] { FiniteGroup::make({{0, 2, 1}, {2, 1, 0}, {1, 0, 2}}); }) == ErrorCode::NoIdentity);
  // A Latin square with identity 0 that is not associative (a loop of order 5).
  const std::vector<std::vector<int>> loop{
      {0, 1, 2, 3, 4}, {1, 0, 3, 4, 2}, {2, 4, 0, 1, 3}, {3, 2, 4, 0, 1}, {4, 3, 1, 2, 0}};
  CHECK(code_of([&] { FiniteGroup::make(loop); }) == ErrorCode::NotAssociative);
}

TEST_CASE("element lookup by name") {
  const FiniteGroup z2 = FiniteGroup::make({{0, 1}, {1, 0}}, {"e", "g"});
  CHECK(z2.index_of("g") == 1);
  CHECK(code_of([&] { (void)z2.index_of("h"); }) == ErrorCode::UnknownElement);
}

TEST_CASE("regular representations") {
  const FiniteGroup z3 = FiniteGroup::cyclic(3);
  const RegularRepresentations reps = regular_representations(z3);
  CHECK(reps.dimension() == 3);
  for (int s = 0; s < 3; ++s) {
    for (int t = 0; t < 3; ++t) {
      // λ_s e_t = e_{st}, ρ_s e_t = e_{ts⁻¹}.
      CHECK(reps.lambda[s].coeff(z3.mul(s, t), t) == Complex(1.0));
      CHECK(reps.rho[s].coeff(z3.mul(t, z3.inv(s)), t) == Complex(1.0));
    }
    CHECK(reps.chi[s].coeff(s, s) == Complex(1.0));
  }
}

TEST_CASE("labelings") {
  const FiniteGroup z2 = FiniteGroup::make({{0, 1}, {1, 0}}, {"e", "g"});
  const std::vector<std::string> ids{"f", "h"};
  const Labeling c = make_labeling(ids, {{"f", "g"}, {"h", "e"}}, z2);
  CHECK(c(0) == 1);
  CHECK(c(1) == 0);
  CHECK(code_of([&] { make_labeling(ids, {{"f", "g"}}, z2); }) == ErrorCode::MissingEdge);
  CHECK(code_of([&] { make_labeling(ids, {{"f", "g"}, {"h", "x"}}, z2); }) == ErrorCode::UnknownElement);
  CHECK(trivial_labeling(3, z2).values == std::vector<GroupElement>{0, 0, 0});
}
