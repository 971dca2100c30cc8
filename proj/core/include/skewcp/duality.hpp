#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "skewcp/crossed.hpp"
#include "skewcp/graphalg.hpp"
#include "skewcp/graphs.hpp"
#include "skewcp/groups.hpp"
#include "skewcp/matalg.hpp"

namespace skewcp {

/// A named sub-check of a certificate.
struct Check {
  std::string name;
  bool passed = false;
  double max_error = 0.0;
  std::string witness;
};

struct IsomorphismCertificate {
  std::string theorem;
  std::string source_name;
  std::string target_name;
  std::size_t source_dim = 0;
  std::size_t target_dim = 0;
  std::vector<std::string> generator_labels;
  StarMapReport map;
  /// Equivariances, inverse checks, relation checks.
  std::vector<Check> checks;
  std::vector<std::size_t> source_signature;
  std::vector<std::size_t> target_signature;

  bool dimensions_agree() const { return source_dim == target_dim; }
  bool signatures_agree() const { return source_signature == target_signature; }
  bool passed() const;
  /// First failing item, empty when passed.
  std::string failure() const;
};

/// Throws Error{CertificationFailed} with the certificate's failure.
void require(const IsomorphismCertificate& cert);

struct DualityOptions {
  double tol = 1e-8;
  /// Exact-equality checks (equivariance, generator chases).
  double exact_tol = 1e-12;
  bool split_checks = false;
  bool signatures = false;
  Index max_dim = kMaxAmbientDim;
};

/// Φ: C*(E×_cG) → C*(E)⋊_δG, s_(f,t) ↦ (s_f,t), p_(v,t) ↦ (p_v,t), with
/// Φ∘γ_r = δ̂_r∘Φ.
IsomorphismCertificate certify_eqvt_iso(const DirectedGraph& e, const FiniteGroup& g, const Labeling& c,
                                        const DualityOptions& options = {});

/// Θ: C*(E×_cG)⋊_γG → C*(E)⊗M_|G| and its inverse Υ.
IsomorphismCertificate certify_direct_iso(const DirectedGraph& e, const FiniteGroup& g, const Labeling& c,
                                          const DualityOptions& options = {});

struct DiagramReport {
  std::vector<Check> generators;  // one per generator of C*(E×_cG)⋊G
  bool dimension_preserved = false;
  std::size_t crossed_dim = 0;
  std::size_t expected_dim = 0;
  std::string witness;

  bool passed() const;
};

/// Chases generators around the regular-representation square: the route
/// through Φ and the Katayama composite must reproduce Θ.
DiagramReport certify_regular_diagram(const DirectedGraph& e, const FiniteGroup& g, const Labeling& c,
                                      const DualityOptions& options = {});

/// C*(F)⋊_βG ≅ C*(F/G)⊗M_|G| for a free action. Throws Error{ActionNotFree}.
IsomorphismCertificate certify_free_action(const DirectedGraph& f, const FiniteGroup& g, const GraphAction& action,
                                           const DualityOptions& options = {});

}  // namespace skewcp
