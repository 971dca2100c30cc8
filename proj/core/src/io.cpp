#include "skewcp/io.hpp"

#include <fstream>
#include <sstream>

#include "report_json.hpp"
#include "skewcp/errors.hpp"

namespace skewcp {

namespace {

using nlohmann::json;
using nlohmann::ordered_json;

[[noreturn]] void fail(const std::string& origin, const std::string& what) {
  throw Error(ErrorCode::ParseError, origin + ": " + what);
}

json parse_text(std::string_view text, const std::string& origin) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    fail(origin, std::string("malformed JSON at byte ") + std::to_string(e.byte));
  }
}

const json& field(const json& j, const char* key, const std::string& origin, const std::string& where) {
  if (!j.is_object() || !j.contains(key)) fail(origin, where + " lacks \"" + key + "\"");
  return j.at(key);
}

std::string text_of(const json& j, const std::string& origin, const std::string& where) {
  if (!j.is_string()) fail(origin, where + " must be a string");
  return j.get<std::string>();
}

std::vector<std::string> names_of(const json& j, const std::string& origin, const std::string& where) {
  if (!j.is_array()) fail(origin, where + " must be an array");
  std::vector<std::string> out;
  for (std::size_t k = 0; k < j.size(); ++k) out.push_back(text_of(j[k], origin, where + "[" + std::to_string(k) + "]"));
  return out;
}

int index_in(const std::vector<std::string>& names, const std::string& name, const std::string& origin,
             const std::string& where) {
  for (std::size_t k = 0; k < names.size(); ++k)
    if (names[k] == name) return static_cast<int>(k);
  fail(origin, where + " names unknown \"" + name + "\"");
}

/// Library errors raised while building parsed data keep their code but
/// gain the origin.
template <class F>
auto with_origin(const std::string& origin, F&& build) {
  try {
    return build();
  } catch (const Error& e) {
    std::string what = e.what();
    const std::string code = std::string(to_string(e.code())) + ": ";
    if (what.starts_with(code)) what.erase(0, code.size());
    throw Error(e.code(), origin + ": " + what);
  }
}

ordered_json signature_json(const std::vector<std::size_t>& sig) {
  ordered_json out = ordered_json::array();
  for (std::size_t d : sig) out.push_back(d);
  return out;
}

}  // namespace

namespace detail {

ordered_json report_json(const VerificationReport& r, bool include_timing) {
  ordered_json j;
  j["instance"] = r.instance;
  j["theorem"] = r.theorem;
  j["passed"] = r.passed;
  j["dimensions"] = {{"source", r.source_dim}, {"target", r.target_dim}};
  j["signatures"] = {{"source", signature_json(r.source_signature)}, {"target", signature_json(r.target_signature)}};
  j["tolerance"] = r.tolerance;
  j["seed"] = r.seed;
  if (include_timing) j["wall_seconds"] = r.wall_seconds;
  ordered_json checks = ordered_json::array();
  for (const Check& c : r.checks) {
    ordered_json cj;
    cj["name"] = c.name;
    cj["passed"] = c.passed;
    cj["max_error"] = c.max_error;
    if (!c.witness.empty()) cj["witness"] = c.witness;
    checks.push_back(std::move(cj));
  }
  j["checks"] = std::move(checks);
  if (!r.failure.empty()) j["failure"] = r.failure;
  return j;
}

}  // namespace detail

FiniteGroup parse_group(std::string_view text, const std::string& origin) {
  const json j = parse_text(text, origin);
  const auto names = names_of(field(j, "elements", origin, "group"), origin, "elements");
  const json& t = field(j, "table", origin, "group");
  if (!t.is_array()) fail(origin, "table must be an array");
  std::vector<std::vector<int>> table;
  for (std::size_t r = 0; r < t.size(); ++r) {
    if (!t[r].is_array()) fail(origin, "table[" + std::to_string(r) + "] must be an array");
    std::vector<int> row;
    for (std::size_t c = 0; c < t[r].size(); ++c) {
      const json& cell = t[r][c];
      const std::string where = "table[" + std::to_string(r) + "][" + std::to_string(c) + "]";
      if (cell.is_number_integer()) {
        row.push_back(cell.get<int>());
      } else if (cell.is_string()) {
        row.push_back(index_in(names, cell.get<std::string>(), origin, where));
      } else {
        fail(origin, where + " must be an index or element name");
      }
    }
    table.push_back(std::move(row));
  }
  return with_origin(origin, [&] { return FiniteGroup::make(std::move(table), names); });
}

std::string group_to_json(const FiniteGroup& g) {
  ordered_json j;
  std::vector<std::string> names;
  std::vector<std::vector<int>> table(g.order(), std::vector<int>(g.order()));
  for (int a = 0; a < g.order(); ++a) {
    names.push_back(g.name(a));
    for (int b = 0; b < g.order(); ++b) table[a][b] = g.mul(a, b);
  }
  j["elements"] = names;
  j["table"] = table;
  return j.dump(2);
}

GraphInput parse_graph(std::string_view text, const std::string& origin) {
  const json j = parse_text(text, origin);
  const auto vertices = names_of(field(j, "vertices", origin, "graph"), origin, "vertices");
  const json& es = field(j, "edges", origin, "graph");
  if (!es.is_array()) fail(origin, "edges must be an array");
  GraphInput in;
  std::vector<Edge> edges;
  for (std::size_t k = 0; k < es.size(); ++k) {
    const std::string where = "edges[" + std::to_string(k) + "]";
    Edge e;
    e.id = text_of(field(es[k], "id", origin, where), origin, where + ".id");
    e.source = index_in(vertices, text_of(field(es[k], "src", origin, where), origin, where + ".src"), origin, where + ".src");
    e.range = index_in(vertices, text_of(field(es[k], "rng", origin, where), origin, where + ".rng"), origin, where + ".rng");
    if (es[k].contains("label")) in.labels[e.id] = text_of(es[k]["label"], origin, where + ".label");
    edges.push_back(std::move(e));
  }
  in.graph = with_origin(origin, [&] { return DirectedGraph(vertices, std::move(edges)); });
  return in;
}

std::string graph_to_json(const DirectedGraph& e, const Labeling* c, const FiniteGroup* g) {
  ordered_json j;
  j["vertices"] = e.vertices();
  ordered_json edges = ordered_json::array();
  for (std::size_t f = 0; f < e.edge_count(); ++f) {
    ordered_json ej;
    ej["id"] = e.edge_id(static_cast<int>(f));
    ej["src"] = e.vertex_name(e.source(static_cast<int>(f)));
    ej["rng"] = e.vertex_name(e.range(static_cast<int>(f)));
    if (c && g) ej["label"] = g->name((*c)(f));
    edges.push_back(std::move(ej));
  }
  j["edges"] = std::move(edges);
  return j.dump(2);
}

GroupoidInput parse_groupoid(std::string_view text, const std::string& origin) {
  const json j = parse_text(text, origin);
  const auto units = names_of(field(j, "units", origin, "groupoid"), origin, "units");
  const json& as = field(j, "arrows", origin, "groupoid");
  if (!as.is_array()) fail(origin, "arrows must be an array");

  std::vector<GroupoidArrow> arrows;
  std::vector<std::string> ids;
  for (std::size_t k = 0; k < as.size(); ++k) {
    const std::string where = "arrows[" + std::to_string(k) + "]";
    GroupoidArrow a;
    a.id = text_of(field(as[k], "id", origin, where), origin, where + ".id");
    a.source = index_in(units, text_of(field(as[k], "src", origin, where), origin, where + ".src"), origin, where + ".src");
    a.range = index_in(units, text_of(field(as[k], "rng", origin, where), origin, where + ".rng"), origin, where + ".rng");
    ids.push_back(a.id);
    arrows.push_back(std::move(a));
  }
  // Identity arrows are implicit unless listed under the unit's name.
  std::vector<int> unit_arrow(units.size(), -1);
  for (std::size_t u = 0; u < units.size(); ++u) {
    for (std::size_t k = 0; k < arrows.size(); ++k) {
      if (arrows[k].id == units[u]) {
        if (arrows[k].source != static_cast<int>(u) || arrows[k].range != static_cast<int>(u)) {
          fail(origin, "arrow \"" + units[u] + "\" shares a unit's name but is not a loop there");
        }
        unit_arrow[u] = static_cast<int>(k);
      }
    }
    if (unit_arrow[u] < 0) {
      unit_arrow[u] = static_cast<int>(arrows.size());
      arrows.push_back({units[u], static_cast<int>(u), static_cast<int>(u)});
      ids.push_back(units[u]);
    }
  }
  const int na = static_cast<int>(arrows.size());
  std::vector<std::vector<int>> product(na, std::vector<int>(na, -1));
  std::vector<int> inverse(na, -1);
  for (int x = 0; x < na; ++x) {
    product[unit_arrow[arrows[x].range]][x] = x;
    product[x][unit_arrow[arrows[x].source]] = x;
  }
  for (int u : unit_arrow) inverse[u] = u;

  if (j.contains("mult")) {
    const json& m = j["mult"];
    if (!m.is_array()) fail(origin, "mult must be an array");
    for (std::size_t k = 0; k < m.size(); ++k) {
      const std::string where = "mult[" + std::to_string(k) + "]";
      if (!m[k].is_array() || m[k].size() != 3) fail(origin, where + " must be a triple [x, y, xy]");
      const int x = index_in(ids, text_of(m[k][0], origin, where), origin, where);
      const int y = index_in(ids, text_of(m[k][1], origin, where), origin, where);
      const int xy = index_in(ids, text_of(m[k][2], origin, where), origin, where);
      if (product[x][y] >= 0 && product[x][y] != xy) fail(origin, where + " contradicts an earlier product");
      product[x][y] = xy;
    }
  }
  if (j.contains("inv")) {
    const json& inv = j["inv"];
    if (!inv.is_object()) fail(origin, "inv must be an object");
    for (const auto& [key, value] : inv.items()) {
      const int x = index_in(ids, key, origin, "inv");
      inverse[x] = index_in(ids, text_of(value, origin, "inv." + key), origin, "inv." + key);
    }
  }
  for (int x = 0; x < na; ++x) {
    if (inverse[x] < 0) fail(origin, "no inverse given for \"" + ids[x] + "\"");
  }

  GroupoidInput in;
  if (j.contains("cocycle")) {
    const json& c = j["cocycle"];
    if (!c.is_object()) fail(origin, "cocycle must be an object");
    for (const auto& [key, value] : c.items()) {
      index_in(ids, key, origin, "cocycle");
      in.cocycle[key] = text_of(value, origin, "cocycle." + key);
    }
  }
  in.groupoid = with_origin(origin, [&] {
    return FiniteGroupoid::make(units, std::move(arrows), std::move(product), std::move(inverse));
  });
  return in;
}

std::string groupoid_to_json(const FiniteGroupoid& q, const Cocycle* c, const FiniteGroup* g) {
  ordered_json j;
  j["units"] = q.units();
  ordered_json arrows = ordered_json::array(), mult = ordered_json::array(), inv = ordered_json::object();
  for (std::size_t x = 0; x < q.arrow_count(); ++x) {
    const int xi = static_cast<int>(x);
    arrows.push_back({{"id", q.arrow_id(xi)}, {"src", q.unit_name(q.source(xi))}, {"rng", q.unit_name(q.range(xi))}});
    inv[q.arrow_id(xi)] = q.arrow_id(q.inverse(xi));
    for (std::size_t y = 0; y < q.arrow_count(); ++y) {
      const int xy = q.product(xi, static_cast<int>(y));
      if (xy >= 0) mult.push_back({q.arrow_id(xi), q.arrow_id(static_cast<int>(y)), q.arrow_id(xy)});
    }
  }
  j["arrows"] = std::move(arrows);
  j["mult"] = std::move(mult);
  j["inv"] = std::move(inv);
  if (c && g) {
    ordered_json cj = ordered_json::object();
    for (std::size_t x = 0; x < q.arrow_count(); ++x) cj[q.arrow_id(static_cast<int>(x))] = g->name((*c)(static_cast<int>(x)));
    j["cocycle"] = std::move(cj);
  }
  return j.dump(2);
}

Cocycle make_cocycle(const FiniteGroupoid& q, const std::map<std::string, std::string>& assignment,
                     const FiniteGroup& g) {
  Cocycle c;
  for (std::size_t x = 0; x < q.arrow_count(); ++x) {
    const int xi = static_cast<int>(x);
    const auto it = assignment.find(q.arrow_id(xi));
    if (it == assignment.end()) {
      if (!q.is_unit(xi)) throw Error(ErrorCode::MissingEdge, "cocycle has no value on " + q.arrow_id(xi));
      c.values.push_back(g.identity());
    } else {
      c.values.push_back(g.index_of(it->second));
    }
  }
  for (const auto& [id, value] : assignment) {
    if (!q.find_arrow(id)) throw Error(ErrorCode::MissingEdge, "cocycle names unknown arrow " + id);
  }
  return c;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::ParseError, path + ": cannot open");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

FiniteGroup load_group(const std::string& path) { return parse_group(read_file(path), path); }
GraphInput load_graph(const std::string& path) { return parse_graph(read_file(path), path); }

GraphAction parse_graph_action(std::string_view text, const DirectedGraph& f, const FiniteGroup& g,
                               const std::string& origin) {
  const json j = parse_text(text, origin);
  if (!j.is_object()) fail(origin, "an action must be an object keyed by group element");
  GraphAction a = trivial_action(f, g);
  std::vector<bool> seen(g.order(), false);
  seen[g.identity()] = true;
  for (const auto& [element, cells] : j.items()) {
    const GroupElement t = index_in(g.names(), element, origin, "action");
    if (!cells.is_object()) fail(origin, "action." + element + " must map cell names to cell names");
    seen[t] = true;
    for (const auto& [cell, image] : cells.items()) {
      const std::string where = "action." + element + "." + cell;
      const std::string to = text_of(image, origin, where);
      const auto v = f.find_vertex(cell), e = f.find_edge(cell);
      if (v && e) fail(origin, where + " is both a vertex and an edge");
      if (v) {
        const auto w = f.find_vertex(to);
        if (!w) fail(origin, where + " maps a vertex to unknown vertex \"" + to + "\"");
        a.vertex_perm[t][*v] = *w;
      } else if (e) {
        const auto h = f.find_edge(to);
        if (!h) fail(origin, where + " maps an edge to unknown edge \"" + to + "\"");
        a.edge_perm[t][*e] = *h;
      } else {
        fail(origin, where + " names unknown cell \"" + cell + "\"");
      }
    }
  }
  for (int t = 0; t < g.order(); ++t) {
    if (!seen[t]) fail(origin, "action lacks element \"" + g.name(t) + "\"");
  }
  with_origin(origin, [&] {
    validate_action(f, g, a);
    return 0;
  });
  return a;
}

GraphAction load_graph_action(const std::string& path, const DirectedGraph& f, const FiniteGroup& g) {
  return parse_graph_action(read_file(path), f, g, path);
}

GroupoidInput load_groupoid(const std::string& path) { return parse_groupoid(read_file(path), path); }

VerificationReport make_report(const IsomorphismCertificate& cert, std::string instance, double tolerance,
                               std::uint64_t seed, double wall_seconds) {
  VerificationReport r;
  r.instance = std::move(instance);
  r.theorem = cert.theorem;
  r.passed = cert.passed();
  r.source_dim = cert.source_dim;
  r.target_dim = cert.target_dim;
  r.source_signature = cert.source_signature;
  r.target_signature = cert.target_signature;
  r.tolerance = tolerance;
  r.seed = seed;
  r.wall_seconds = wall_seconds;
  r.checks.push_back(Check{"dimensions agree", cert.dimensions_agree(), 0.0,
                           std::to_string(cert.source_dim) + " vs " + std::to_string(cert.target_dim)});
  r.checks.push_back(Check{"*-isomorphism on generators", cert.map.passed(), 0.0, cert.map.witness});
  r.checks.insert(r.checks.end(), cert.checks.begin(), cert.checks.end());
  for (Check& c : r.checks)
    if (c.passed) c.witness.clear();
  r.failure = cert.failure();
  return r;
}

VerificationReport make_report(const GroupoidReport& report, std::string theorem, std::string instance,
                               double tolerance, std::uint64_t seed, double wall_seconds) {
  VerificationReport r;
  r.instance = std::move(instance);
  r.theorem = std::move(theorem);
  r.passed = report.passed();
  r.tolerance = tolerance;
  r.seed = seed;
  r.wall_seconds = wall_seconds;
  r.checks = report.checks;
  r.failure = report.failure();
  return r;
}

std::string report_to_json(const VerificationReport& report, bool include_timing) {
  return detail::report_json(report, include_timing).dump(2);
}

std::string report_summary(const VerificationReport& r) {
  std::ostringstream os;
  os << (r.passed ? "PASS " : "FAIL ") << r.theorem;
  if (!r.instance.empty()) os << " [" << r.instance << "]";
  os << '\n';
  if (r.source_dim || r.target_dim) os << "  dims " << r.source_dim << "/" << r.target_dim << '\n';
  if (!r.source_signature.empty() || !r.target_signature.empty()) {
    os << "  signatures " << format_signature(r.source_signature) << " / " << format_signature(r.target_signature)
       << '\n';
  }
  for (const Check& c : r.checks) {
    os << "  " << (c.passed ? "ok   " : "FAIL ") << c.name;
    if (!c.passed && !c.witness.empty()) os << ": " << c.witness;
    os << '\n';
  }
  return os.str();
}

}  // namespace skewcp
