#pragma once

#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "skewcp/linalg.hpp"

namespace skewcp {

/// Group elements are indices into the Cayley table; names live only in I/O.
using GroupElement = int;

/// A finite group given by its Cayley table. Every group law is checked
/// exhaustively at construction, so the order is capped.
class FiniteGroup {
 public:
  static constexpr int kMaxOrder = 16;

  /// The trivial group.
  FiniteGroup() : table_{{0}}, names_{"e"}, inverse_{0} {}

  /// Validates `table` (Latin square, identity, inverses, associativity).
  /// Throws Error{NotLatinSquare|NoIdentity|NoInverse|NotAssociative} naming
  /// the witnessing indices.
  static FiniteGroup make(std::vector<std::vector<int>> table,
                          std::vector<std::string> names = {});

  static FiniteGroup trivial();
  static FiniteGroup cyclic(int n);
  static FiniteGroup klein_four();

  int order() const { return static_cast<int>(table_.size()); }
  GroupElement identity() const { return identity_; }
  GroupElement mul(GroupElement a, GroupElement b) const { return table_[a][b]; }
  GroupElement inv(GroupElement a) const { return inverse_[a]; }
  GroupElement mul(GroupElement a, GroupElement b, GroupElement c) const {
    return mul(mul(a, b), c);
  }

  const std::vector<std::vector<int>>& table() const { return table_; }
  const std::vector<std::string>& names() const { return names_; }
  const std::string& name(GroupElement a) const { return names_[a]; }

  /// Throws Error{UnknownElement}.
  GroupElement index_of(std::string_view name) const;

 private:
  std::vector<std::vector<int>> table_;
  std::vector<std::string> names_;
  std::vector<GroupElement> inverse_;
  GroupElement identity_ = 0;
};

/// λ, ρ and the diagonal projections χ, all acting on ℓ²(G) with the standard
/// basis indexed by the group:
///   λ_s e_t = e_{st},  ρ_s e_t = e_{ts⁻¹},  χ_r = e_{rr}.
struct RegularRepresentations {
  std::vector<Matrix> lambda;
  std::vector<Matrix> rho;
  std::vector<Matrix> chi;

  Index dimension() const { return lambda.empty() ? 0 : lambda.front().rows(); }
};

RegularRepresentations regular_representations(const FiniteGroup& g);

/// Group-valued function on the edges of a graph, indexed by edge position.
struct Labeling {
  std::vector<GroupElement> values;

  GroupElement operator()(std::size_t edge) const { return values[edge]; }
  std::size_t size() const { return values.size(); }
};

/// Builds a labeling from an edge-id -> element-name assignment. Throws
/// Error{MissingEdge} for an unassigned edge and Error{UnknownElement}.
Labeling make_labeling(std::span<const std::string> edge_ids,
                       const std::map<std::string, std::string>& assignment,
                       const FiniteGroup& g);

/// Constant labeling c ≡ e.
Labeling trivial_labeling(std::size_t edge_count, const FiniteGroup& g);

}  // namespace skewcp
