#pragma once

#include <cstddef>
#include <map>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "skewcp/graphs.hpp"
#include "skewcp/groups.hpp"
#include "skewcp/matalg.hpp"

namespace skewcp {

/// Cuntz–Krieger E-family realized on ℓ²(sink-bound paths): s_f e_μ = e_{fμ}
/// when s(μ) = r(f), p_v e_μ = e_μ when s(μ) = v.
struct CKFamily {
  DirectedGraph graph;
  std::vector<Path> paths;
  std::vector<Matrix> s;  // one per edge
  std::vector<Matrix> p;  // one per vertex

  Index dimension() const { return static_cast<Index>(paths.size()); }
  /// Vertex projections first, then edge partial isometries.
  std::vector<Matrix> generators() const;
  std::vector<std::string> generator_labels() const;
  /// Position of a path in the basis, or -1.
  Index path_index(const Path& mu) const;
  /// s_μ for any path μ (p_v for length zero).
  Matrix path_isometry(const Path& mu) const;
};

/// Throws Error{EmptyGraph}, Error{GraphHasCycle} or, past kMaxAmbientDim
/// paths, Error{DimensionMismatch}.
CKFamily ck_representation(const DirectedGraph& e, Index max_dim = kMaxAmbientDim);

/// Σ over sinks w of (number of paths ending at w)².
std::size_t expected_ck_dimension(const DirectedGraph& e);

struct CKRelationReport {
  bool orthogonal_projections = false;  // p_v = p_v* = p_v², p_v p_w = 0
  bool partial_isometries = false;      // s_f* s_f = p_{r(f)}
  bool range_relation = false;          // p_v = Σ_{s(f)=v} s_f s_f* off sinks
  bool nondegenerate = false;           // Σ p_v = 1 and every p_v ≠ 0
  double max_error = 0.0;
  std::string witness;

  bool passed() const { return orthogonal_projections && partial_isometries && range_relation && nondegenerate; }
};

/// Checks the Cuntz–Krieger relations for an arbitrary candidate family.
CKRelationReport check_ck_relations(const DirectedGraph& e, std::span<const Matrix> s, std::span<const Matrix> p,
                                    double tol = Tolerances{}.entry);

/// C*(E) as the closure of the family.
AlgebraSpan ck_algebra(const CKFamily& family);

struct GaugeReport {
  Complex z;
  StarMapReport map;
  bool passed() const { return map.passed(); }
};

/// s_f ↦ z s_f, p_v ↦ p_v is an automorphism of C*(E).
GaugeReport gauge_check(const CKFamily& family, const AlgebraSpan& algebra, Complex z);

/// δ(s_f) = s_f ⊗ λ_{c(f)}, δ(p_v) = p_v ⊗ 1 on ℓ²(paths) ⊗ ℓ²(G).
struct RepresentedCoaction {
  FiniteGroup group;
  Labeling labeling;
  RegularRepresentations reps;
  std::vector<Matrix> delta_s;
  std::vector<Matrix> delta_p;

  /// δ of every generator, in CKFamily::generators() order.
  std::vector<Matrix> images() const;
  /// δ of s_μ s_ν*, computed from the generator images.
  Matrix delta_of(const CKFamily& family, const Path& mu, const Path& nu) const;
};

RepresentedCoaction coaction(const CKFamily& family, const FiniteGroup& g, const Labeling& c);

struct CoactionReport {
  bool ck_family = false;         // the images form a nondegenerate E-family
  bool coaction_identity = false; // (δ⊗id)δ = (id⊗δ_G)δ on generators and spectral monomials
  bool injective = false;
  bool nondegenerate = false;     // δ(s_f)(1⊗λ_{c(f)⁻¹t}) = s_f⊗λ_t, Σ δ(p_v) = 1
  double max_error = 0.0;
  std::string witness;

  bool passed() const { return ck_family && coaction_identity && injective && nondegenerate; }
};

CoactionReport check_coaction(const CKFamily& family, const RepresentedCoaction& delta, double tol = Tolerances{}.entry);

/// Spectral subspaces C*(E)_t = span{s_μ s_ν* : c(μ)c(ν)⁻¹ = t}.
struct GradedBasis {
  std::vector<std::vector<Matrix>> components;                // independent basis per degree
  std::vector<std::vector<std::pair<Path, Path>>> monomials;  // (μ, ν) for each basis element
  std::vector<AlgebraSpan> spans;

  std::size_t total_dimension() const;
  std::size_t dimension(GroupElement t) const { return components[t].size(); }
};

/// Degree of a path: product of its labels in order (identity for length zero).
GroupElement path_degree(const Path& mu, const FiniteGroup& g, const Labeling& c);

GradedBasis spectral_subspaces(const CKFamily& family, const FiniteGroup& g, const Labeling& c);

struct GradingReport {
  bool exhausts = false;         // Σ_t dim C_t = dim C*(E)
  bool orthogonal = false;       // tr(a*b) = 0 across degrees
  bool multiplicative = false;   // C_s C_t ⊆ C_st
  bool adjoint_closed = false;   // C_t* ⊆ C_{t⁻¹}
  bool degree_detected = false;  // δ(a_t) = a_t ⊗ λ_t
  std::size_t graded_dim = 0;
  std::size_t algebra_dim = 0;
  std::string witness;

  bool passed() const { return exhausts && orthogonal && multiplicative && adjoint_closed && degree_detected; }
};

GradingReport check_grading(const CKFamily& family, const GradedBasis& graded, const AlgebraSpan& algebra,
                            const RepresentedCoaction& delta, double tol = Tolerances{}.accumulated);

/// Spatial implementation of a graph automorphism group on ℓ²(sink paths):
/// U_t e_μ = e_{t·μ}. Throws Error{ActionInvalid} if t·μ leaves the basis.
std::vector<Matrix> path_space_unitaries(const CKFamily& family, const FiniteGroup& g, const GraphAction& a);

/// Permutation unitary carrying basis paths of `from` to their images in `to`.
Matrix path_space_transport(const CKFamily& from, const CKFamily& to, const GraphIso& iso);

}  // namespace skewcp
