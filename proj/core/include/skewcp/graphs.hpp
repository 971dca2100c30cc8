#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "skewcp/groups.hpp"

namespace skewcp {

struct Edge {
  std::string id;
  int source = 0;
  int range = 0;
};

/// A finite directed graph E = (E⁰, E¹, r, s). Vertices and edges are
/// referred to by position; names are kept for I/O and reports.
class DirectedGraph {
 public:
  DirectedGraph() = default;
  /// Throws Error{InvalidGraph} on dangling endpoints or duplicate names.
  DirectedGraph(std::vector<std::string> vertices, std::vector<Edge> edges);

  std::size_t vertex_count() const { return vertices_.size(); }
  std::size_t edge_count() const { return edges_.size(); }
  const std::vector<std::string>& vertices() const { return vertices_; }
  const std::vector<Edge>& edges() const { return edges_; }
  const std::string& vertex_name(int v) const { return vertices_[v]; }
  const std::string& edge_id(int f) const { return edges_[f].id; }
  std::vector<std::string> edge_ids() const;

  int source(int f) const { return edges_[f].source; }
  int range(int f) const { return edges_[f].range; }
  const std::vector<int>& out_edges(int v) const { return out_[v]; }
  const std::vector<int>& in_edges(int v) const { return in_[v]; }
  bool is_sink(int v) const { return out_[v].empty(); }

  std::optional<int> find_vertex(std::string_view name) const;
  std::optional<int> find_edge(std::string_view id) const;

  /// A cycle as an edge list, if one exists.
  std::optional<std::vector<int>> find_cycle() const;
  bool is_acyclic() const { return !find_cycle().has_value(); }

 private:
  std::vector<std::string> vertices_;
  std::vector<Edge> edges_;
  std::vector<std::vector<int>> out_;
  std::vector<std::vector<int>> in_;
};

/// Graph-flavoured overload of make_labeling.
Labeling make_labeling(const DirectedGraph& e, const std::map<std::string, std::string>& assignment,
                       const FiniteGroup& g);

/// A path e₁…e_n with r(e_i) = s(e_{i+1}); an empty edge list denotes the
/// length-zero path at `base`.
struct Path {
  int base = 0;
  std::vector<int> edges;

  int source(const DirectedGraph& e) const { return edges.empty() ? base : e.source(edges.front()); }
  int range(const DirectedGraph& e) const { return edges.empty() ? base : e.range(edges.back()); }
  std::size_t length() const { return edges.size(); }
  std::string describe(const DirectedGraph& e) const;

  friend bool operator==(const Path&, const Path&) = default;
};

/// Every path whose range is a sink, grouped by sink, then by length.
/// Throws Error{GraphHasCycle} with a witnessing cycle.
std::vector<Path> enumerate_sink_paths(const DirectedGraph& e);

/// Every finite path (length zero included). Throws Error{GraphHasCycle}.
std::vector<Path> enumerate_paths(const DirectedGraph& e);

// -- skew products -----------------------------------------------------------

/// Cell numbering in E×_cG: (v,t) ↦ v·|G| + t, likewise for edges.
inline int skew_cell(int cell, GroupElement t, const FiniteGroup& g) { return cell * g.order() + t; }

/// E×_cG: vertices E⁰×G, edges E¹×G, r(f,t) = (r(f),t), s(f,t) = (s(f),c(f)t).
/// Cells are named "(x,t)".
DirectedGraph skew_product(const DirectedGraph& e, const FiniteGroup& g, const Labeling& c);

/// A group acting on a graph by automorphisms: per element, a vertex
/// permutation and an edge permutation.
struct GraphAction {
  std::vector<std::vector<int>> vertex_perm;
  std::vector<std::vector<int>> edge_perm;

  int vertex(GroupElement t, int v) const { return vertex_perm[t][v]; }
  int edge(GroupElement t, int f) const { return edge_perm[t][f]; }
};

/// Throws Error{ActionInvalid} unless every pair of permutations is a graph
/// automorphism and t ↦ (perms) is a homomorphism.
void validate_action(const DirectedGraph& f, const FiniteGroup& g, const GraphAction& a);

/// t·(v,s) = (v,st⁻¹), t·(f,s) = (f,st⁻¹). Throws Error{NotSkewProduct} if
/// `ec` is not laid out as a skew product over `g`.
GraphAction translation_action(const DirectedGraph& ec, const FiniteGroup& g);

/// Trivial action (every element acts as the identity).
GraphAction trivial_action(const DirectedGraph& f, const FiniteGroup& g);

struct FixedCell {
  GroupElement element;
  bool is_edge;
  int cell;
};

/// First non-identity element fixing a vertex or edge, if any.
std::optional<FixedCell> find_fixed_cell(const DirectedGraph& f, const FiniteGroup& g,
                                         const GraphAction& a);
bool is_free(const DirectedGraph& f, const FiniteGroup& g, const GraphAction& a);

/// Vertex and edge bijections between two graphs.
struct GraphIso {
  std::vector<int> vertex_map;
  std::vector<int> edge_map;
};

/// True iff the maps are bijections intertwining s and r.
bool is_graph_iso(const DirectedGraph& from, const DirectedGraph& to, const GraphIso& iso);

GraphIso compose(const GraphIso& second, const GraphIso& first);
GraphIso inverse(const GraphIso& iso);

/// Backtracking isomorphism search. Intended for small graphs (≤ 64 cells).
std::optional<GraphIso> find_graph_iso(const DirectedGraph& a, const DirectedGraph& b);

/// Result of factoring a free action: F ≅ (F/G)×_cG.
struct GrossTucker {
  DirectedGraph quotient;
  Labeling labeling;
  /// Isomorphism from quotient×_c G onto F, carrying translation to the
  /// given action.
  GraphIso iso;
  /// For each quotient vertex/edge, the representative chosen in F.
  std::vector<int> vertex_rep;
  std::vector<int> edge_rep;
};

/// Quotient by a free action plus a labeling realizing F as a skew product.
/// The vertex representative is the orbit member with least name.
/// Throws Error{ActionNotFree} with the witnessing element and fixed cell.
GrossTucker quotient_and_gross_tucker(const DirectedGraph& f, const FiniteGroup& g, const GraphAction& a);

// -- conventions ---------------------------------------------------------------

enum class SkewConvention {
  Standard,      // E×_cG: s(f,t) = (s(f),c(f)t), r(f,t) = (r(f),t)
  KumjianPask,   // E(c): cells (t,x), (t,f): (t,s(f)) → (t·c(f), r(f))
  GrossTucker,   // E^c:  cells (x,t), (f,t): (s(f),t) → (r(f), t·c(f))
};

/// Skew product in the chosen convention, cell numbering as skew_cell.
DirectedGraph skew_product(const DirectedGraph& e, const FiniteGroup& g, const Labeling& c,
                           SkewConvention convention);

/// Isomorphism from the `convention` skew product onto E×_cG:
/// (v,t) ↦ (v,t⁻¹), (f,t) ↦ (f,c(f)⁻¹t⁻¹). Identity for SkewConvention::Standard.
GraphIso convention_iso(const DirectedGraph& e, const FiniteGroup& g, const Labeling& c,
                        SkewConvention convention);

}  // namespace skewcp
