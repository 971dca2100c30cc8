#pragma once

#include <cstddef>
#include <optional>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "skewcp/crossed.hpp"
#include "skewcp/duality.hpp"
#include "skewcp/groups.hpp"
#include "skewcp/matalg.hpp"

namespace skewcp {

struct GroupoidArrow {
  std::string id;
  int source = 0;  // unit index
  int range = 0;   // unit index
};

/// A finite groupoid given by tables. Identity arrows are ordinary arrows;
/// unit_arrow(u) finds the one at unit u.
class FiniteGroupoid {
 public:
  FiniteGroupoid() = default;

  /// `product[x][y]` is xy, or -1 when s(x) ≠ r(y). Every axiom is checked
  /// exhaustively; throws Error{BadUnits|BadInverse|NotAssociative}.
  static FiniteGroupoid make(std::vector<std::string> units, std::vector<GroupoidArrow> arrows,
                             std::vector<std::vector<int>> product, std::vector<int> inverse);

  std::size_t unit_count() const { return units_.size(); }
  std::size_t arrow_count() const { return arrows_.size(); }
  const std::vector<std::string>& units() const { return units_; }
  const std::vector<GroupoidArrow>& arrows() const { return arrows_; }
  const std::string& unit_name(int u) const { return units_[u]; }
  const std::string& arrow_id(int x) const { return arrows_[x].id; }

  int source(int x) const { return arrows_[x].source; }
  int range(int x) const { return arrows_[x].range; }
  int unit_arrow(int u) const { return unit_arrow_[u]; }
  bool is_unit(int x) const { return unit_arrow_[arrows_[x].source] == x; }
  /// xy, or -1 if not composable.
  int product(int x, int y) const { return product_[x][y]; }
  int inverse(int x) const { return inverse_[x]; }
  const std::vector<std::vector<int>>& product_table() const { return product_; }
  const std::vector<int>& inverse_table() const { return inverse_; }

  std::optional<int> find_arrow(std::string_view id) const;
  std::optional<int> find_unit(std::string_view name) const;

 private:
  std::vector<std::string> units_;
  std::vector<GroupoidArrow> arrows_;
  std::vector<std::vector<int>> product_;
  std::vector<int> inverse_;
  std::vector<int> unit_arrow_;
};

/// Full equivalence relation on the named points; arrow "x_i_j" runs j → i.
FiniteGroupoid pair_groupoid(const std::vector<std::string>& points);
/// A group as a one-unit groupoid.
FiniteGroupoid group_groupoid(const FiniteGroup& g);
FiniteGroupoid units_only(const std::vector<std::string>& points);
/// (points × points) × H: transitive with isotropy H. Arrow "x_i_j_h" runs j → i.
FiniteGroupoid transitive_groupoid(const std::vector<std::string>& points, const FiniteGroup& isotropy);
FiniteGroupoid disjoint_union(const FiniteGroupoid& a, const FiniteGroupoid& b);
/// The subgroupoid on an arrow subset that contains all units of the subset's
/// arrows. Throws Error{BadUnits} unless closed under products and inverses.
FiniteGroupoid subgroupoid(const FiniteGroupoid& q, const std::vector<int>& arrows, std::vector<int>* embedding);

/// Homomorphism c: Q → G on arrows.
struct Cocycle {
  std::vector<GroupElement> values;
  GroupElement operator()(int x) const { return values[x]; }
};

/// Throws Error{NotWellDefined} naming the pair where c(xy) ≠ c(x)c(y).
void validate_cocycle(const FiniteGroupoid& q, const FiniteGroup& g, const Cocycle& c);
Cocycle trivial_cocycle(const FiniteGroupoid& q, const FiniteGroup& g);

/// A group acting on a groupoid by automorphisms (arrow permutations).
struct GroupoidAction {
  std::vector<std::vector<int>> arrow_perm;
  int operator()(GroupElement s, int x) const { return arrow_perm[s][x]; }
};

/// Throws Error{NotAutomorphism}.
void validate_action(const FiniteGroupoid& r, const FiniteGroup& g, const GroupoidAction& a);
GroupoidAction trivial_action(const FiniteGroupoid& r, const FiniteGroup& g);

// -- convolution ---------------------------------------------------------------

/// f ∈ C_c(Q) as coefficients on arrows.
using ConvolutionElement = std::vector<Complex>;

ConvolutionElement delta_function(const FiniteGroupoid& q, int x);
/// (fg)(x) = Σ_{r(y)=r(x)} f(y) g(y⁻¹x).
ConvolutionElement convolve(const FiniteGroupoid& q, const ConvolutionElement& f, const ConvolutionElement& g);
/// f*(x) = conj f(x⁻¹).
ConvolutionElement involution(const FiniteGroupoid& q, const ConvolutionElement& f);
/// f restricted to the units (zero elsewhere).
ConvolutionElement restrict_to_units(const FiniteGroupoid& q, const ConvolutionElement& f);
double sup_norm(const ConvolutionElement& f);
ConvolutionElement random_function(const FiniteGroupoid& q, std::mt19937_64& rng);

/// Left regular representation on ℓ²(arrows): λ(δ_y) e_z = e_{yz}.
Matrix regular(const FiniteGroupoid& q, const ConvolutionElement& f);
Matrix regular_delta(const FiniteGroupoid& q, int x);
/// Inverse of `regular` on its image: f(x) = λ(f)[x, unit_arrow(s(x))].
ConvolutionElement function_of(const FiniteGroupoid& q, const Matrix& m);

/// C*(Q) as span{λ(δ_x)}, generated by the λ(δ_x).
AlgebraSpan convolution_algebra(const FiniteGroupoid& q);

/// Unitaries U_s e_x = e_{s·x}, so Ad U_s is β_s(f) = f∘α_{s⁻¹}.
AlgebraAction induced_action(const FiniteGroupoid& r, const FiniteGroup& g, const GroupoidAction& a);

// -- constructions ---------------------------------------------------------------

/// Q×_cG: arrows (x,s) numbered x·|G| + s, units (u,s) numbered u·|G| + s;
/// (x,c(y)s)(y,s) = (xy,s), r(x,s) = (r(x),c(x)s).
FiniteGroupoid skew_product_groupoid(const FiniteGroupoid& q, const FiniteGroup& g, const Cocycle& c);
/// s·(x,t) = (x,ts⁻¹) on Q×_cG.
GroupoidAction skew_translation(const FiniteGroupoid& q, const FiniteGroup& g);

/// R⋊G: arrows (x,s) numbered x·|G| + s; (x,s)(y,t) = (x(s·y),st),
/// (x,s)⁻¹ = (s⁻¹·x⁻¹,s⁻¹). Units are (u,e), numbered as R's units.
FiniteGroupoid semidirect_product(const FiniteGroupoid& r, const FiniteGroup& g, const GroupoidAction& a);

// -- certifications --------------------------------------------------------------

struct GroupoidReport {
  std::vector<Check> checks;
  bool passed() const;
  std::string failure() const;
};

/// δ(f_s) = f_s ⊗ λ_s on C*(Q), the grading C_sC_t ⊆ C_st, C_s* = C_{s⁻¹}.
GroupoidReport check_groupoid_coaction(const FiniteGroupoid& q, const FiniteGroup& g, const Cocycle& c,
                                       double tol = 1e-12);

/// C*(R⋊G) ≅ C*(R)⋊_βG via Φ(f)(s)(x) = f(x,s), with inverse Ψ.
IsomorphismCertificate certify_semi_cross(const FiniteGroupoid& r, const FiniteGroup& g, const GroupoidAction& a,
                                          std::uint64_t seed = 1, const DualityOptions& options = {});

/// C*(Q)⋊_δG ≅ C*(Q×_cG) via Ψ(f,t)(x,u) = [t = u] f(x), equivariant for δ̂, β.
IsomorphismCertificate certify_gpd_iso(const FiniteGroupoid& q, const FiniteGroup& g, const Cocycle& c,
                                       const DualityOptions& options = {});

/// i: C*(N) → C*(Q) for N = c⁻¹(e): injective *-homomorphism, P_N = P_Q∘i.
GroupoidReport kernel_embedding_check(const FiniteGroupoid& q, const FiniteGroup& g, const Cocycle& c,
                                      std::uint64_t seed = 1, int samples = 100);

/// Norm identities around P_R and P_{C*(R)⋊G}, and faithfulness on positives.
GroupoidReport expectations_and_norm_identities(const FiniteGroupoid& r, const FiniteGroup& g,
                                                const GroupoidAction& a, std::uint64_t seed = 1,
                                                int samples = 100);

/// C*(Q×_cG)⋊_βG against C*(Q)⊗M_|G| by Wedderburn signature, plus the
/// composed dimension count through C*(Q×_cG⋊G).
IsomorphismCertificate certify_full_groupoid(const FiniteGroupoid& q, const FiniteGroup& g, const Cocycle& c,
                                             const DualityOptions& options = {});

// -- equivalences ----------------------------------------------------------------

enum class EquivalenceKind {
  SkewSemidirect,   // (Q×_cG)⋊G ~ Q, carried by Q×_cG
  KernelReduction,  // H ~ N = c⁻¹(e), carried by Q
};

/// A space Z with a left L-action and a right R-action.
struct EquivalenceBimodule {
  FiniteGroupoid left;
  FiniteGroupoid right;
  std::vector<std::string> carrier;
  std::vector<int> rho;    // Z → left units
  std::vector<int> sigma;  // Z → right units
  /// left_action[l][z] = lz or -1; right_action[z][y] = zy or -1.
  std::vector<std::vector<int>> left_action;
  std::vector<std::vector<int>> right_action;
};

EquivalenceBimodule make_equivalence(EquivalenceKind kind, const FiniteGroupoid& q, const FiniteGroup& g,
                                     const Cocycle& c);

/// Exhaustive check of every equivalence axiom. Failing checks name the axiom
/// and witness cells.
GroupoidReport certify_equivalence(const EquivalenceBimodule& z);
GroupoidReport certify_equivalence(EquivalenceKind kind, const FiniteGroupoid& q, const FiniteGroup& g,
                                   const Cocycle& c);

/// The pre-Hilbert C_c(N)-module structure on C_c(Q) from the H ~ N equivalence.
class NModule {
 public:
  NModule(const FiniteGroupoid& q, const FiniteGroup& g, const Cocycle& c);

  const FiniteGroupoid& q() const { return q_; }
  const FiniteGroupoid& n() const { return n_; }
  /// Arrow of Q for each arrow of N.
  const std::vector<int>& embedding() const { return embed_; }

  /// ⟨a,b⟩(n) = Σ_{r(x,s)=ρ(y)} conj a((x,s)⁻¹y) b((x,s)⁻¹yn) with (x,s) over H,
  /// for one y with s(y) = r(n); `y_choice` picks among them (wrapping).
  ConvolutionElement inner_general(const ConvolutionElement& a, const ConvolutionElement& b,
                                   std::size_t y_choice = 0) const;
  /// Σ_t a_t* b_t, restricted to N.
  ConvolutionElement inner_graded(const ConvolutionElement& a, const ConvolutionElement& b) const;
  /// ac(x) = Σ_{r(n)=s(x)} a(xn) c(n⁻¹), c ∈ C_c(N).
  ConvolutionElement right_action(const ConvolutionElement& a, const ConvolutionElement& c) const;
  /// Homogeneous component a_t.
  ConvolutionElement component(const ConvolutionElement& a, GroupElement t) const;
  /// λ_N of a function on N.
  Matrix represent(const ConvolutionElement& on_n) const;
  /// Number of admissible y for ⟨·,·⟩(n).
  std::size_t y_choices(int n) const;

 private:
  FiniteGroupoid q_;
  FiniteGroup g_;
  Cocycle c_;
  FiniteGroupoid n_;
  std::vector<int> embed_;
  std::vector<int> restrict_;  // Q arrow → N arrow or -1
  FiniteGroupoid h_;           // H ⊆ Q×_cG
  std::vector<int> h_embed_;   // H arrow → Q×_cG arrow
};

struct BimoduleOptions {
  int samples = 100;
  std::uint64_t seed = 1;
  double tol = 1e-9;
};

/// Both inner-product formulas, the module action, adjointability, Gram
/// positivity and ⟨ab,ab⟩ ≤ ‖a‖²⟨b,b⟩.
GroupoidReport bimodule_inner_products(const FiniteGroupoid& q, const FiniteGroup& g, const Cocycle& c,
                                       const BimoduleOptions& options = {});

}  // namespace skewcp
