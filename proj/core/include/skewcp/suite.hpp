#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "skewcp/graphs.hpp"
#include "skewcp/groupoids.hpp"
#include "skewcp/groups.hpp"
#include "skewcp/io.hpp"

namespace skewcp {

/// ℤ₂, ℤ₃, ℤ₄ and the Klein four-group, in that order.
std::vector<FiniteGroup> suite_groups();

struct GraphCase {
  std::string name;
  DirectedGraph graph;
  FiniteGroup group;
  Labeling labeling;
};

struct GraphSuiteLimits {
  int max_vertices = 8;
  int max_edges = 12;
  /// Cap on |sink paths|·|G|², the ambient size of C*(E×_cG)⋊G.
  std::size_t max_ambient = 144;
};

/// Random acyclic graph with a random labeling; the group cycles through
/// suite_groups() with the case index. Deterministic in (seed, index).
GraphCase random_graph_case(std::uint64_t seed, int index, const GraphSuiteLimits& limits = {});

struct FreeActionCase {
  std::string name;
  DirectedGraph graph;
  FiniteGroup group;
  GraphAction action;
};

/// Translation action on the skew product of a random graph case.
FreeActionCase random_free_action_case(std::uint64_t seed, int index, const GraphSuiteLimits& limits = {});

struct GroupoidCase {
  std::string name;
  FiniteGroupoid groupoid;
  FiniteGroup group;
  Cocycle cocycle;
};

struct GroupoidSuiteLimits {
  int max_units = 6;
  int max_arrows = 24;
};

/// Disjoint union of transitive components (isotropy trivial, ℤ₂ or ℤ₃) with
/// a random cocycle into ℤ₂ or ℤ₃ (alternating with the index). Cocycles are
/// b(i)ψ(h)b(j)⁻¹ on (i,j,h) for a random homomorphism ψ and coboundary b.
GroupoidCase random_groupoid_case(std::uint64_t seed, int index, const GroupoidSuiteLimits& limits = {});

/// Every homomorphism H → G, by exhaustion.
std::vector<std::vector<GroupElement>> homomorphisms(const FiniteGroup& h, const FiniteGroup& g);

struct SuiteOptions {
  std::uint64_t seed = 42;
  int graph_cases = 50;
  int free_cases = 20;
  int groupoid_cases = 30;
  double tol = 1e-8;
  double exact_tol = 1e-12;
  Index max_dim = kMaxAmbientDim;
  /// Random samples per instance for the sampled checks.
  int samples = 100;
  /// Worker threads; 0 picks the hardware concurrency.
  unsigned workers = 0;
  GraphSuiteLimits graph_limits;
  GroupoidSuiteLimits groupoid_limits;
};

struct CaseResult {
  std::string family;  // "graph", "free-action" or "groupoid"
  int index = 0;
  std::string instance;
  std::vector<VerificationReport> reports;
  /// Set when the case threw instead of producing reports.
  std::string error;

  bool passed() const;
};

struct SuiteReport {
  std::uint64_t seed = 0;
  std::vector<CaseResult> cases;
  double wall_seconds = 0.0;

  int passed(const std::string& family) const;
  int total(const std::string& family) const;
  bool all_passed() const;
};

/// Reports for one graph case: eqvt-iso, direct-iso, diagram, coaction and
/// the gauge automorphisms at z ∈ {1, −1, i, e^{2πi/7}}.
CaseResult run_graph_case(const GraphCase& gc, int index, const SuiteOptions& options);
CaseResult run_free_action_case(const FreeActionCase& fc, int index, const SuiteOptions& options);
/// gpd-iso, semi-cross, both equivalences, the bimodule formulas, the kernel
/// embedding, the expectation identities and the full-groupoid signatures.
CaseResult run_groupoid_case(const GroupoidCase& qc, int index, const SuiteOptions& options);

/// Cases run concurrently; results keep case order.
SuiteReport run_suite(const SuiteOptions& options);

std::string suite_to_json(const SuiteReport& report, bool include_timing = true);
std::string suite_summary(const SuiteReport& report);

}  // namespace skewcp
