#include "skewcp/graphs.hpp"

#include <algorithm>
#include <functional>
#include <set>
#include <string>

#include "skewcp/errors.hpp"

namespace skewcp {

namespace {

std::string pair_name(const std::string& a, const std::string& b) { return "(" + a + "," + b + ")"; }

}  // namespace

DirectedGraph::DirectedGraph(std::vector<std::string> vertices, std::vector<Edge> edges)
    : vertices_(std::move(vertices)), edges_(std::move(edges)) {
  const int nv = static_cast<int>(vertices_.size());
  std::set<std::string> names(vertices_.begin(), vertices_.end());
  if (names.size() != vertices_.size()) throw Error(ErrorCode::InvalidGraph, "duplicate vertex name");
  std::set<std::string> ids;
  out_.assign(vertices_.size(), {});
  in_.assign(vertices_.size(), {});
  for (std::size_t f = 0; f < edges_.size(); ++f) {
    const Edge& e = edges_[f];
    if (!ids.insert(e.id).second) throw Error(ErrorCode::InvalidGraph, "duplicate edge id '" + e.id + "'");
    if (e.source < 0 || e.source >= nv || e.range < 0 || e.range >= nv) {
      throw Error(ErrorCode::InvalidGraph, "edge '" + e.id + "' has an endpoint outside the vertex set");
    }
    out_[e.source].push_back(static_cast<int>(f));
    in_[e.range].push_back(static_cast<int>(f));
  }
}

std::vector<std::string> DirectedGraph::edge_ids() const {
  std::vector<std::string> out;
  out.reserve(edges_.size());
  for (const auto& e : edges_) out.push_back(e.id);
  return out;
}

std::optional<int> DirectedGraph::find_vertex(std::string_view name) const {
  for (std::size_t i = 0; i < vertices_.size(); ++i)
    if (vertices_[i] == name) return static_cast<int>(i);
  return std::nullopt;
}

std::optional<int> DirectedGraph::find_edge(std::string_view id) const {
  for (std::size_t i = 0; i < edges_.size(); ++i)
    if (edges_[i].id == id) return static_cast<int>(i);
  return std::nullopt;
}

std::optional<std::vector<int>> DirectedGraph::find_cycle() const {
  // 0 = unvisited, 1 = on stack, 2 = done
  std::vector<int> color(vertices_.size(), 0);
  std::vector<int> via(vertices_.size(), -1);
  std::optional<std::vector<int>> cycle;

  std::function<void(int)> dfs = [&](int v) {
    color[v] = 1;
    for (int f : out_[v]) {
      if (cycle) return;
      const int w = range(f);
      if (color[w] == 1) {
        std::vector<int> c{f};
        for (int x = v; x != w; x = source(via[x])) c.push_back(via[x]);
        std::reverse(c.begin(), c.end());
        cycle = std::move(c);
        return;
      }
      if (color[w] == 0) {
        via[w] = f;
        dfs(w);
      }
    }
    color[v] = 2;
  };
  for (std::size_t v = 0; v < vertices_.size() && !cycle; ++v)
    if (color[v] == 0) dfs(static_cast<int>(v));
  return cycle;
}

Labeling make_labeling(const DirectedGraph& e, const std::map<std::string, std::string>& assignment,
                       const FiniteGroup& g) {
  const auto ids = e.edge_ids();
  return make_labeling(std::span<const std::string>(ids), assignment, g);
}

std::string Path::describe(const DirectedGraph& e) const {
  if (edges.empty()) return e.vertex_name(base);
  std::string out;
  for (int f : edges) out += (out.empty() ? "" : ".") + e.edge_id(f);
  return out;
}

namespace {

void require_acyclic(const DirectedGraph& e) {
  if (auto cycle = e.find_cycle()) {
    std::string w;
    for (int f : *cycle) w += (w.empty() ? "" : " ") + e.edge_id(f);
    throw Error(ErrorCode::GraphHasCycle, "cycle through edges [" + w + "]");
  }
}

std::vector<Path> paths_ending_at(const DirectedGraph& e, bool sinks_only) {
  require_acyclic(e);
  std::vector<Path> out;
  for (std::size_t w = 0; w < e.vertex_count(); ++w) {
    if (sinks_only && !e.is_sink(static_cast<int>(w))) continue;
    // Breadth-first by length: prepend edges entering the current source.
    std::vector<Path> layer{Path{static_cast<int>(w), {}}};
    while (!layer.empty()) {
      std::vector<Path> next;
      for (const Path& mu : layer) {
        out.push_back(mu);
        for (int f : e.in_edges(mu.source(e))) {
          Path longer{e.source(f), {f}};
          longer.edges.insert(longer.edges.end(), mu.edges.begin(), mu.edges.end());
          next.push_back(std::move(longer));
        }
      }
      layer = std::move(next);
    }
  }
  return out;
}

}  // namespace

std::vector<Path> enumerate_sink_paths(const DirectedGraph& e) { return paths_ending_at(e, true); }

std::vector<Path> enumerate_paths(const DirectedGraph& e) { return paths_ending_at(e, false); }

DirectedGraph skew_product(const DirectedGraph& e, const FiniteGroup& g, const Labeling& c) {
  return skew_product(e, g, c, SkewConvention::Standard);
}

DirectedGraph skew_product(const DirectedGraph& e, const FiniteGroup& g, const Labeling& c,
                           SkewConvention convention) {
  if (c.size() != e.edge_count()) {
    throw Error(ErrorCode::MissingEdge, "labeling covers " + std::to_string(c.size()) + " of " +
                                            std::to_string(e.edge_count()) + " edges");
  }
  const int n = g.order();
  const bool kp = convention == SkewConvention::KumjianPask;
  auto cell_name = [&](const std::string& x, GroupElement t) {
    return kp ? pair_name(g.name(t), x) : pair_name(x, g.name(t));
  };

  std::vector<std::string> vertices;
  for (std::size_t v = 0; v < e.vertex_count(); ++v)
    for (int t = 0; t < n; ++t) vertices.push_back(cell_name(e.vertex_name(static_cast<int>(v)), t));

  std::vector<Edge> edges;
  for (std::size_t fi = 0; fi < e.edge_count(); ++fi) {
    const int f = static_cast<int>(fi);
    for (int t = 0; t < n; ++t) {
      Edge edge;
      edge.id = cell_name(e.edge_id(f), t);
      if (convention == SkewConvention::Standard) {
        edge.source = skew_cell(e.source(f), g.mul(c(f), t), g);
        edge.range = skew_cell(e.range(f), t, g);
      } else {
        edge.source = skew_cell(e.source(f), t, g);
        edge.range = skew_cell(e.range(f), g.mul(t, c(f)), g);
      }
      edges.push_back(std::move(edge));
    }
  }
  return DirectedGraph(std::move(vertices), std::move(edges));
}

void validate_action(const DirectedGraph& f, const FiniteGroup& g, const GraphAction& a) {
  const int n = g.order();
  const int nv = static_cast<int>(f.vertex_count());
  const int ne = static_cast<int>(f.edge_count());
  if (static_cast<int>(a.vertex_perm.size()) != n || static_cast<int>(a.edge_perm.size()) != n) {
    throw Error(ErrorCode::ActionInvalid, "action must list a permutation pair for every group element");
  }
  auto is_perm = [](const std::vector<int>& p, int size) {
    if (static_cast<int>(p.size()) != size) return false;
    std::vector<bool> seen(size, false);
    for (int x : p) {
      if (x < 0 || x >= size || seen[x]) return false;
      seen[x] = true;
    }
    return true;
  };
  for (int t = 0; t < n; ++t) {
    if (!is_perm(a.vertex_perm[t], nv) || !is_perm(a.edge_perm[t], ne)) {
      throw Error(ErrorCode::ActionInvalid, "element " + g.name(t) + " does not act by bijections");
    }
    for (int e = 0; e < ne; ++e) {
      if (f.source(a.edge(t, e)) != a.vertex(t, f.source(e)) || f.range(a.edge(t, e)) != a.vertex(t, f.range(e))) {
        throw Error(ErrorCode::ActionInvalid,
                    "element " + g.name(t) + " does not commute with s/r at edge " + f.edge_id(e));
      }
    }
  }
  for (int s = 0; s < n; ++s)
    for (int t = 0; t < n; ++t) {
      const int st = g.mul(s, t);
      for (int v = 0; v < nv; ++v)
        if (a.vertex(s, a.vertex(t, v)) != a.vertex(st, v))
          throw Error(ErrorCode::ActionInvalid, "not a homomorphism at (" + g.name(s) + "," + g.name(t) +
                                                    ") on vertex " + f.vertex_name(v));
      for (int e = 0; e < ne; ++e)
        if (a.edge(s, a.edge(t, e)) != a.edge(st, e))
          throw Error(ErrorCode::ActionInvalid, "not a homomorphism at (" + g.name(s) + "," + g.name(t) +
                                                    ") on edge " + f.edge_id(e));
    }
}

GraphAction translation_action(const DirectedGraph& ec, const FiniteGroup& g) {
  const int n = g.order();
  if (ec.vertex_count() % n != 0 || ec.edge_count() % n != 0) {
    throw Error(ErrorCode::NotSkewProduct, "cell counts are not multiples of |G|");
  }
  auto check_names = [&](const std::string& name, int index) {
    const std::string suffix = "," + g.name(index % n) + ")";
    if (name.size() < suffix.size() + 1 || name.front() != '(' ||
        name.compare(name.size() - suffix.size(), suffix.size(), suffix) != 0) {
      throw Error(ErrorCode::NotSkewProduct, "cell '" + name + "' is not named (x," + g.name(index % n) + ")");
    }
    return name.substr(1, name.size() - suffix.size() - 1);
  };
  for (std::size_t v = 0; v < ec.vertex_count(); ++v) {
    const auto base = check_names(ec.vertex_name(static_cast<int>(v)), static_cast<int>(v));
    const auto first = check_names(ec.vertex_name(static_cast<int>(v - v % n)), static_cast<int>(v - v % n));
    if (base != first) throw Error(ErrorCode::NotSkewProduct, "vertex block mismatch at " + ec.vertex_name(static_cast<int>(v)));
  }
  for (std::size_t f = 0; f < ec.edge_count(); ++f) check_names(ec.edge_id(static_cast<int>(f)), static_cast<int>(f));

  GraphAction a;
  a.vertex_perm.assign(n, std::vector<int>(ec.vertex_count()));
  a.edge_perm.assign(n, std::vector<int>(ec.edge_count()));
  for (int t = 0; t < n; ++t) {
    for (std::size_t v = 0; v < ec.vertex_count(); ++v) {
      const int base = static_cast<int>(v) / n, s = static_cast<int>(v) % n;
      a.vertex_perm[t][v] = base * n + g.mul(s, g.inv(t));
    }
    for (std::size_t f = 0; f < ec.edge_count(); ++f) {
      const int base = static_cast<int>(f) / n, s = static_cast<int>(f) % n;
      a.edge_perm[t][f] = base * n + g.mul(s, g.inv(t));
    }
  }
  try {
    validate_action(ec, g, a);
  } catch (const Error& err) {
    throw Error(ErrorCode::NotSkewProduct, std::string("translation is not an action: ") + err.what());
  }
  return a;
}

GraphAction trivial_action(const DirectedGraph& f, const FiniteGroup& g) {
  GraphAction a;
  std::vector<int> iv(f.vertex_count()), ie(f.edge_count());
  for (std::size_t i = 0; i < iv.size(); ++i) iv[i] = static_cast<int>(i);
  for (std::size_t i = 0; i < ie.size(); ++i) ie[i] = static_cast<int>(i);
  a.vertex_perm.assign(g.order(), iv);
  a.edge_perm.assign(g.order(), ie);
  return a;
}

std::optional<FixedCell> find_fixed_cell(const DirectedGraph& f, const FiniteGroup& g, const GraphAction& a) {
  for (int t = 0; t < g.order(); ++t) {
    if (t == g.identity()) continue;
    for (std::size_t v = 0; v < f.vertex_count(); ++v)
      if (a.vertex(t, static_cast<int>(v)) == static_cast<int>(v)) return FixedCell{t, false, static_cast<int>(v)};
    for (std::size_t e = 0; e < f.edge_count(); ++e)
      if (a.edge(t, static_cast<int>(e)) == static_cast<int>(e)) return FixedCell{t, true, static_cast<int>(e)};
  }
  return std::nullopt;
}

bool is_free(const DirectedGraph& f, const FiniteGroup& g, const GraphAction& a) {
  return !find_fixed_cell(f, g, a).has_value();
}

bool is_graph_iso(const DirectedGraph& from, const DirectedGraph& to, const GraphIso& iso) {
  if (from.vertex_count() != to.vertex_count() || from.edge_count() != to.edge_count()) return false;
  if (iso.vertex_map.size() != from.vertex_count() || iso.edge_map.size() != from.edge_count()) return false;
  std::vector<bool> hit_v(to.vertex_count(), false), hit_e(to.edge_count(), false);
  for (int w : iso.vertex_map) {
    if (w < 0 || w >= static_cast<int>(to.vertex_count()) || hit_v[w]) return false;
    hit_v[w] = true;
  }
  for (std::size_t f = 0; f < from.edge_count(); ++f) {
    const int h = iso.edge_map[f];
    if (h < 0 || h >= static_cast<int>(to.edge_count()) || hit_e[h]) return false;
    hit_e[h] = true;
    if (to.source(h) != iso.vertex_map[from.source(static_cast<int>(f))]) return false;
    if (to.range(h) != iso.vertex_map[from.range(static_cast<int>(f))]) return false;
  }
  return true;
}

GraphIso compose(const GraphIso& second, const GraphIso& first) {
  GraphIso out;
  for (int v : first.vertex_map) out.vertex_map.push_back(second.vertex_map[v]);
  for (int f : first.edge_map) out.edge_map.push_back(second.edge_map[f]);
  return out;
}

GraphIso inverse(const GraphIso& iso) {
  GraphIso out;
  out.vertex_map.assign(iso.vertex_map.size(), -1);
  out.edge_map.assign(iso.edge_map.size(), -1);
  for (std::size_t v = 0; v < iso.vertex_map.size(); ++v) out.vertex_map[iso.vertex_map[v]] = static_cast<int>(v);
  for (std::size_t f = 0; f < iso.edge_map.size(); ++f) out.edge_map[iso.edge_map[f]] = static_cast<int>(f);
  return out;
}

std::optional<GraphIso> find_graph_iso(const DirectedGraph& a, const DirectedGraph& b) {
  const int nv = static_cast<int>(a.vertex_count());
  if (a.vertex_count() != b.vertex_count() || a.edge_count() != b.edge_count()) return std::nullopt;

  // Edge multiplicity between ordered vertex pairs decides extendability.
  auto multiplicity = [](const DirectedGraph& g, int x, int y) {
    int m = 0;
    for (int f : g.out_edges(x))
      if (g.range(f) == y) ++m;
    return m;
  };
  std::vector<int> map(nv, -1);
  std::vector<bool> used(nv, false);
  std::function<bool(int)> extend = [&](int v) {
    if (v == nv) return true;
    for (int w = 0; w < nv; ++w) {
      if (used[w]) continue;
      if (a.out_edges(v).size() != b.out_edges(w).size() || a.in_edges(v).size() != b.in_edges(w).size()) continue;
      bool ok = multiplicity(a, v, v) == multiplicity(b, w, w);
      for (int u = 0; u < v && ok; ++u) {
        ok = multiplicity(a, u, v) == multiplicity(b, map[u], w) && multiplicity(a, v, u) == multiplicity(b, w, map[u]);
      }
      if (!ok) continue;
      map[v] = w;
      used[w] = true;
      if (extend(v + 1)) return true;
      used[w] = false;
      map[v] = -1;
    }
    return false;
  };
  if (!extend(0)) return std::nullopt;

  GraphIso iso;
  iso.vertex_map = map;
  std::vector<bool> taken(b.edge_count(), false);
  for (std::size_t f = 0; f < a.edge_count(); ++f) {
    const int s = map[a.source(static_cast<int>(f))], r = map[a.range(static_cast<int>(f))];
    for (int h : b.out_edges(s)) {
      if (!taken[h] && b.range(h) == r) {
        taken[h] = true;
        iso.edge_map.push_back(h);
        break;
      }
    }
  }
  return iso;
}

GrossTucker quotient_and_gross_tucker(const DirectedGraph& f, const FiniteGroup& g, const GraphAction& a) {
  validate_action(f, g, a);
  if (auto fixed = find_fixed_cell(f, g, a)) {
    throw Error(ErrorCode::ActionNotFree,
                "element " + g.name(fixed->element) + " fixes " + (fixed->is_edge ? "edge " : "vertex ") +
                    (fixed->is_edge ? f.edge_id(fixed->cell) : f.vertex_name(fixed->cell)));
  }
  const int n = g.order();

  // Vertex orbits with least-name representatives, in order of first appearance.
  std::vector<int> vertex_orbit(f.vertex_count(), -1);
  std::vector<int> vertex_rep;
  for (std::size_t v = 0; v < f.vertex_count(); ++v) {
    if (vertex_orbit[v] >= 0) continue;
    int rep = static_cast<int>(v);
    for (int t = 0; t < n; ++t) {
      const int w = a.vertex(t, static_cast<int>(v));
      if (f.vertex_name(w) < f.vertex_name(rep)) rep = w;
    }
    for (int t = 0; t < n; ++t) vertex_orbit[a.vertex(t, static_cast<int>(v))] = static_cast<int>(vertex_rep.size());
    vertex_rep.push_back(rep);
  }
  // Group element carrying the orbit representative to a vertex: k·rep = v.
  auto translate_to = [&](int rep, int v) {
    for (int t = 0; t < n; ++t)
      if (a.vertex(t, rep) == v) return t;
    return -1;
  };

  std::vector<int> edge_orbit(f.edge_count(), -1);
  std::vector<int> edge_rep;
  for (std::size_t e = 0; e < f.edge_count(); ++e) {
    if (edge_orbit[e] >= 0) continue;
    // Representative: the orbit member whose range is the range-orbit representative.
    const int r_rep = vertex_rep[vertex_orbit[f.range(static_cast<int>(e))]];
    int rep = -1;
    for (int t = 0; t < n; ++t) {
      const int h = a.edge(t, static_cast<int>(e));
      edge_orbit[h] = static_cast<int>(edge_rep.size());
      if (f.range(h) == r_rep) rep = h;
    }
    edge_rep.push_back(rep);
  }

  std::vector<std::string> qv;
  for (int rep : vertex_rep) qv.push_back(f.vertex_name(rep));
  std::vector<Edge> qe;
  Labeling c;
  for (int rep : edge_rep) {
    const int src_orbit = vertex_orbit[f.source(rep)];
    qe.push_back(Edge{f.edge_id(rep), src_orbit, vertex_orbit[f.range(rep)]});
    // s(rep) = k·ŝ with c(f) = k⁻¹.
    const int k = translate_to(vertex_rep[src_orbit], f.source(rep));
    c.values.push_back(g.inv(k));
  }
  DirectedGraph quotient(std::move(qv), std::move(qe));

  // φ(x,s) = s⁻¹·x̂ on both vertices and edges.
  GraphIso iso;
  iso.vertex_map.resize(quotient.vertex_count() * n);
  iso.edge_map.resize(quotient.edge_count() * n);
  for (std::size_t v = 0; v < quotient.vertex_count(); ++v)
    for (int s = 0; s < n; ++s) iso.vertex_map[skew_cell(static_cast<int>(v), s, g)] = a.vertex(g.inv(s), vertex_rep[v]);
  for (std::size_t e = 0; e < quotient.edge_count(); ++e)
    for (int s = 0; s < n; ++s) iso.edge_map[skew_cell(static_cast<int>(e), s, g)] = a.edge(g.inv(s), edge_rep[e]);

  const DirectedGraph rebuilt = skew_product(quotient, g, c);
  if (!is_graph_iso(rebuilt, f, iso)) {
    throw Error(ErrorCode::CertificationFailed, "Gross-Tucker map is not a graph isomorphism");
  }
  const GraphAction translation = translation_action(rebuilt, g);
  for (int t = 0; t < n; ++t) {
    for (std::size_t v = 0; v < rebuilt.vertex_count(); ++v)
      if (iso.vertex_map[translation.vertex(t, static_cast<int>(v))] != a.vertex(t, iso.vertex_map[v]))
        throw Error(ErrorCode::CertificationFailed, "Gross-Tucker map is not equivariant on vertices");
    for (std::size_t e = 0; e < rebuilt.edge_count(); ++e)
      if (iso.edge_map[translation.edge(t, static_cast<int>(e))] != a.edge(t, iso.edge_map[e]))
        throw Error(ErrorCode::CertificationFailed, "Gross-Tucker map is not equivariant on edges");
  }
  return GrossTucker{std::move(quotient), std::move(c), std::move(iso), std::move(vertex_rep), std::move(edge_rep)};
}

GraphIso convention_iso(const DirectedGraph& e, const FiniteGroup& g, const Labeling& c, SkewConvention convention) {
  const int n = g.order();
  GraphIso iso;
  iso.vertex_map.resize(e.vertex_count() * n);
  iso.edge_map.resize(e.edge_count() * n);
  const bool identity = convention == SkewConvention::Standard;
  for (std::size_t v = 0; v < e.vertex_count(); ++v)
    for (int t = 0; t < n; ++t)
      iso.vertex_map[skew_cell(static_cast<int>(v), t, g)] = skew_cell(static_cast<int>(v), identity ? t : g.inv(t), g);
  for (std::size_t f = 0; f < e.edge_count(); ++f)
    for (int t = 0; t < n; ++t)
      iso.edge_map[skew_cell(static_cast<int>(f), t, g)] =
          skew_cell(static_cast<int>(f), identity ? t : g.mul(g.inv(c(static_cast<int>(f))), g.inv(t)), g);

  if (!is_graph_iso(skew_product(e, g, c, convention), skew_product(e, g, c), iso)) {
    throw Error(ErrorCode::CertificationFailed, "convention map does not intertwine s and r");
  }
  return iso;
}

}  // namespace skewcp
