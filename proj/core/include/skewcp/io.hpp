#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "skewcp/duality.hpp"
#include "skewcp/graphs.hpp"
#include "skewcp/groupoids.hpp"
#include "skewcp/groups.hpp"

namespace skewcp {

/// Parse failures throw Error{ParseError} prefixed with `origin` (usually the
/// file name) and the offending key.

/// { "elements": [names], "table": [[indices]] }
FiniteGroup parse_group(std::string_view text, const std::string& origin = "<group>");
std::string group_to_json(const FiniteGroup& g);

/// A graph plus the optional per-edge "label" entries (edge id → element name).
struct GraphInput {
  DirectedGraph graph;
  std::map<std::string, std::string> labels;
};

/// { "vertices": [names], "edges": [{ "id", "src", "rng", "label"? }] }
GraphInput parse_graph(std::string_view text, const std::string& origin = "<graph>");
/// Labels are written when both `c` and `g` are given.
std::string graph_to_json(const DirectedGraph& e, const Labeling* c = nullptr, const FiniteGroup* g = nullptr);

/// { "g": { "v": "w", "f": "f2", ... }, ... }: one entry per non-identity
/// element, mapping vertex and edge names to their images; unlisted cells are
/// fixed. Throws Error{ParseError} or Error{ActionInvalid}.
GraphAction parse_graph_action(std::string_view text, const DirectedGraph& f, const FiniteGroup& g,
                               const std::string& origin = "<action>");

struct GroupoidInput {
  FiniteGroupoid groupoid;
  /// Arrow id → element name; identity arrows may be omitted.
  std::map<std::string, std::string> cocycle;
};

/// { "units": [...], "arrows": [{ "id", "src", "rng" }], "mult": [["x","y","xy"]],
///   "inv": { "x": "x⁻¹" }, "cocycle": { "x": "g" } }
/// Identity arrows may be left out of "arrows"; they are added under the
/// unit's name, with their products and inverses filled in.
GroupoidInput parse_groupoid(std::string_view text, const std::string& origin = "<groupoid>");
std::string groupoid_to_json(const FiniteGroupoid& q, const Cocycle* c = nullptr, const FiniteGroup* g = nullptr);

/// Throws Error{MissingEdge} for a non-identity arrow without a value and
/// Error{UnknownElement} for an unknown name.
Cocycle make_cocycle(const FiniteGroupoid& q, const std::map<std::string, std::string>& assignment,
                     const FiniteGroup& g);

/// Reads a whole file; throws Error{ParseError} if it cannot be opened.
std::string read_file(const std::string& path);

FiniteGroup load_group(const std::string& path);
GraphInput load_graph(const std::string& path);
GroupoidInput load_groupoid(const std::string& path);
GraphAction load_graph_action(const std::string& path, const DirectedGraph& f, const FiniteGroup& g);

/// Outcome of one certification, ready for serialization.
struct VerificationReport {
  std::string instance;
  std::string theorem;
  bool passed = false;
  std::size_t source_dim = 0;
  std::size_t target_dim = 0;
  std::vector<std::size_t> source_signature;
  std::vector<std::size_t> target_signature;
  double tolerance = 0.0;
  std::uint64_t seed = 0;
  double wall_seconds = 0.0;
  std::vector<Check> checks;
  std::string failure;
};

VerificationReport make_report(const IsomorphismCertificate& cert, std::string instance, double tolerance,
                               std::uint64_t seed, double wall_seconds);
VerificationReport make_report(const GroupoidReport& report, std::string theorem, std::string instance,
                               double tolerance, std::uint64_t seed, double wall_seconds);

/// Keys are emitted in a fixed order. Without timing the output is a pure
/// function of the report's contents.
std::string report_to_json(const VerificationReport& report, bool include_timing = true);

/// Plain-text summary, one line per check.
std::string report_summary(const VerificationReport& report);

}  // namespace skewcp
