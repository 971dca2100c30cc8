#pragma once

#include <cstddef>
#include <random>
#include <string>
#include <vector>

#include "skewcp/graphalg.hpp"
#include "skewcp/groups.hpp"
#include "skewcp/matalg.hpp"

namespace skewcp {

/// C*(E)⋊_δG realized as the image of Indπ = ((π⊗λ)∘δ)×(1⊗M) inside
/// M_paths ⊗ M_|G|.
struct CoactionCrossedProduct {
  FiniteGroup group;
  RegularRepresentations reps;
  GradedBasis graded;
  Index base_dim = 0;
  /// Linear span of the spanning set {(a_t,u)}.
  AlgebraSpan span{1, 1e-7};

  /// (a_t, u) = a_t ⊗ λ_t χ_u.
  Matrix element(const Matrix& a_t, GroupElement t, GroupElement u) const;
  /// j_A(a) = (π⊗λ)δ(a) on a homogeneous a of degree t.
  Matrix j_a(const Matrix& a_t, GroupElement t) const;
  /// j_G(χ_u) = 1 ⊗ χ_u.
  Matrix j_g(GroupElement u) const;
  std::size_t expected_dimension() const;
};

CoactionCrossedProduct coaction_crossed_product(const CKFamily& family, const RepresentedCoaction& delta);

struct CrossedProductReport {
  bool multiplication_rule = false;  // (a_r,s)(a_t,u) = [s = tu](a_r a_t, u)
  bool adjoint_rule = false;         // (a_t,u)* = (a_t*, tu)
  bool dimension = false;            // spanning set independent, closure of j_A, j_G agrees
  std::size_t span_dim = 0;
  std::size_t closure_dim = 0;
  std::size_t expected_dim = 0;
  double max_error = 0.0;
  std::string witness;

  bool passed() const { return multiplication_rule && adjoint_rule && dimension; }
};

CrossedProductReport check_crossed_product(const CKFamily& family, const RepresentedCoaction& delta,
                                           const CoactionCrossedProduct& cp, double tol = Tolerances{}.entry);

/// A group acting on a matrix algebra by unitary conjugation:
/// γ_t(a) = U_t a U_t*. Every action in this library is spatial.
struct AlgebraAction {
  FiniteGroup group;
  std::vector<Matrix> unitaries;

  Matrix apply(GroupElement t, const Matrix& a) const;
};

struct ActionReport {
  bool unitary = false;
  bool homomorphism = false;  // U_s U_t = U_st, U_e = 1
  bool preserves = false;     // γ_t maps generators into the algebra
  bool automorphisms = false; // each γ_t passes check_star_map bijectively
  std::string witness;

  bool passed() const { return unitary && homomorphism && preserves && automorphisms; }
};

/// `full` adds the per-element check_star_map run.
ActionReport validate_action(const AlgebraSpan& a, const AlgebraAction& act, bool full = true,
                             double tol = Tolerances{}.entry);

/// δ̂_s = Ad(1⊗ρ_s) on the coaction crossed product.
AlgebraAction dual_action(const CoactionCrossedProduct& cp);

struct DualActionReport {
  bool permutation_rule = false;  // δ̂_s(a_t,u) = (a_t, us⁻¹)
  ActionReport action;
  std::string witness;
  bool passed() const { return permutation_rule && action.passed(); }
};

DualActionReport check_dual_action(const CoactionCrossedProduct& cp, const AlgebraAction& dual,
                                   double tol = Tolerances{}.entry);

/// A⋊_γG via the regular covariant representation on H⊗ℓ²(G):
/// π̃(a) = Σ_t γ_{t⁻¹}(a)⊗χ_t, ũ_s = 1⊗λ_s.
struct ActionCrossedProduct {
  AlgebraAction action;
  RegularRepresentations reps;
  Index base_dim = 0;
  std::size_t base_algebra_dim = 0;
  /// Closure of π̃(generators of A) ∪ {ũ_s}.
  AlgebraSpan span{1, 1e-7};

  Matrix pi(const Matrix& a) const;
  Matrix u(GroupElement s) const;
  /// Generators π̃(A.generators) followed by ũ_s.
  std::vector<Matrix> generators;
};

/// Throws Error{ActionInvalid} when the action fails validation.
ActionCrossedProduct action_crossed_product(const AlgebraSpan& a, const AlgebraAction& act,
                                            bool validate_fully = true);

struct ActionCrossedReport {
  bool covariance = false;  // ũ_s π̃(a) ũ_s* = π̃(γ_s(a))
  bool dimension = false;   // dim = dim A · |G|
  std::size_t dim = 0;
  std::size_t expected_dim = 0;
  std::string witness;
  bool passed() const { return covariance && dimension; }
};

ActionCrossedReport check_action_crossed_product(const AlgebraSpan& a, const ActionCrossedProduct& cp,
                                                 double tol = Tolerances{}.entry);

/// Block (g,h) of x ∈ M_n ⊗ M_|G|.
Matrix block(const Matrix& x, Index n, int group_order, int g, int h);

/// P(Σ_s π̃(a_s)ũ_s) = a_e, read off the (e,e) block. Throws Error{NotInSpan}
/// unless x lies in the crossed product.
Matrix conditional_expectation(const ActionCrossedProduct& cp, const Matrix& x);

/// The coefficients a_s of x = Σ_s π̃(a_s)ũ_s (block (e,s⁻¹) holds a_s).
std::vector<Matrix> crossed_coefficients(const ActionCrossedProduct& cp, const Matrix& x);

struct ExpectationReport {
  bool recovers_base = false;  // P(π̃(a)) = a, P(π̃(a)ũ_g) = 0 for g ≠ e
  bool idempotent = false;
  bool contractive = false;
  bool faithful = false;       // ‖P(x*x)‖ > threshold for random nonzero x
  double min_faithful_norm = 0.0;
  std::string witness;
  bool passed() const { return recovers_base && idempotent && contractive && faithful; }
};

ExpectationReport check_conditional_expectation(const AlgebraSpan& a, const ActionCrossedProduct& cp,
                                                std::mt19937_64& rng, int samples = 100,
                                                double tol = Tolerances{}.entry);

}  // namespace skewcp
