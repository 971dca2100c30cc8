#include "skewcp/graphalg.hpp"

#include <map>
#include <string>

#include "skewcp/errors.hpp"

namespace skewcp {

namespace {

using PathKey = std::pair<int, std::vector<int>>;

PathKey key_of(const DirectedGraph& e, const Path& mu) { return {mu.source(e), mu.edges}; }

Matrix from_triplets(Index rows, Index cols, const std::vector<Eigen::Triplet<Complex>>& t) {
  Matrix m(rows, cols);
  m.setFromTriplets(t.begin(), t.end());
  return m;
}

/// Word in CKFamily::generators() letters for s_μ s_ν*.
std::vector<int> monomial_word(const DirectedGraph& e, const Path& mu, const Path& nu) {
  const int nv = static_cast<int>(e.vertex_count());
  std::vector<int> w;
  if (mu.edges.empty()) {
    w.push_back(mu.base);
  } else {
    for (int f : mu.edges) w.push_back(nv + f);
  }
  if (nu.edges.empty()) {
    if (!mu.edges.empty() || nu.base != mu.base) w.push_back(nu.base);
  } else {
    for (auto it = nu.edges.rbegin(); it != nu.edges.rend(); ++it) w.push_back(-(nv + *it) - 1);
  }
  return w;
}

double trace_pairing(const Matrix& a, const Matrix& b) {
  Complex sum = 0.0;
  for (Index k = 0; k < a.outerSize(); ++k) {
    for (Matrix::InnerIterator it(a, k); it; ++it) sum += std::conj(it.value()) * b.coeff(it.row(), it.col());
  }
  return std::abs(sum);
}

}  // namespace

std::vector<Matrix> CKFamily::generators() const {
  std::vector<Matrix> out(p.begin(), p.end());
  out.insert(out.end(), s.begin(), s.end());
  return out;
}

std::vector<std::string> CKFamily::generator_labels() const {
  std::vector<std::string> out;
  for (const auto& v : graph.vertices()) out.push_back("p_" + v);
  for (const auto& f : graph.edges()) out.push_back("s_" + f.id);
  return out;
}

Index CKFamily::path_index(const Path& mu) const {
  for (std::size_t i = 0; i < paths.size(); ++i) {
    if (paths[i].edges == mu.edges && paths[i].source(graph) == mu.source(graph)) return static_cast<Index>(i);
  }
  return -1;
}

Matrix CKFamily::path_isometry(const Path& mu) const {
  if (mu.edges.empty()) return p[mu.base];
  Matrix out = s[mu.edges.back()];
  for (auto it = mu.edges.rbegin() + 1; it != mu.edges.rend(); ++it) out = Matrix(s[*it] * out);
  return out;
}

CKFamily ck_representation(const DirectedGraph& e, Index max_dim) {
  if (e.vertex_count() == 0) throw Error(ErrorCode::EmptyGraph, "graph has no vertices");
  CKFamily fam;
  fam.graph = e;
  fam.paths = enumerate_sink_paths(e);
  const Index n = fam.dimension();
  if (n > max_dim) {
    throw Error(ErrorCode::DimensionMismatch,
                std::to_string(n) + " sink-bound paths exceed the ambient cap " + std::to_string(max_dim));
  }
  std::map<PathKey, Index> index;
  for (Index i = 0; i < n; ++i) index.emplace(key_of(e, fam.paths[i]), i);

  std::vector<std::vector<Eigen::Triplet<Complex>>> pt(e.vertex_count()), st(e.edge_count());
  for (Index i = 0; i < n; ++i) {
    const Path& mu = fam.paths[i];
    const int v = mu.source(e);
    pt[v].emplace_back(i, i, 1.0);
    for (int f : e.in_edges(v)) {
      std::vector<int> longer{f};
      longer.insert(longer.end(), mu.edges.begin(), mu.edges.end());
      st[f].emplace_back(index.at({e.source(f), longer}), i, 1.0);
    }
  }
  for (auto& t : pt) fam.p.push_back(from_triplets(n, n, t));
  for (auto& t : st) fam.s.push_back(from_triplets(n, n, t));
  return fam;
}

std::size_t expected_ck_dimension(const DirectedGraph& e) {
  std::map<int, std::size_t> into;
  for (const Path& mu : enumerate_sink_paths(e)) ++into[mu.range(e)];
  std::size_t total = 0;
  for (const auto& [w, n] : into) total += n * n;
  return total;
}

CKRelationReport check_ck_relations(const DirectedGraph& e, std::span<const Matrix> s, std::span<const Matrix> p,
                                    double tol) {
  if (s.size() != e.edge_count() || p.size() != e.vertex_count() || p.empty()) {
    throw Error(ErrorCode::DimensionMismatch, "family does not match the graph's vertex and edge counts");
  }
  CKRelationReport r;
  const Index n = p.front().rows();
  auto note = [&](double err, bool& flag, const std::string& what) {
    r.max_error = std::max(r.max_error, err);
    if (err > tol && flag) {
      flag = false;
      if (r.witness.empty()) r.witness = what;
    }
  };
  r.orthogonal_projections = r.partial_isometries = r.range_relation = r.nondegenerate = true;

  Matrix total(n, n);
  for (std::size_t v = 0; v < p.size(); ++v) {
    const std::string name = e.vertex_name(static_cast<int>(v));
    note(max_abs_diff(p[v], adjoint(p[v])), r.orthogonal_projections, "p_" + name + " is not self-adjoint");
    note(max_abs_diff(Matrix(p[v] * p[v]), p[v]), r.orthogonal_projections, "p_" + name + " is not idempotent");
    for (std::size_t w = v + 1; w < p.size(); ++w) {
      note(max_abs(Matrix(p[v] * p[w])), r.orthogonal_projections,
           "p_" + name + " p_" + e.vertex_name(static_cast<int>(w)) + " != 0");
    }
    if (max_abs(p[v]) <= tol && r.nondegenerate) {
      r.nondegenerate = false;
      if (r.witness.empty()) r.witness = "p_" + name + " = 0";
    }
    total += p[v];
  }
  note(max_abs_diff(total, identity_matrix(n)), r.nondegenerate, "sum of vertex projections is not the identity");

  for (std::size_t f = 0; f < s.size(); ++f) {
    const int fi = static_cast<int>(f);
    note(max_abs_diff(Matrix(adjoint(s[f]) * s[f]), p[e.range(fi)]), r.partial_isometries,
         "s_" + e.edge_id(fi) + "* s_" + e.edge_id(fi) + " != p_" + e.vertex_name(e.range(fi)));
    if (max_abs(s[f]) <= tol && r.nondegenerate) {
      r.nondegenerate = false;
      if (r.witness.empty()) r.witness = "s_" + e.edge_id(fi) + " = 0";
    }
  }
  for (std::size_t v = 0; v < p.size(); ++v) {
    const int vi = static_cast<int>(v);
    if (e.is_sink(vi)) continue;
    Matrix sum(n, n);
    for (int f : e.out_edges(vi)) sum += Matrix(s[f] * adjoint(s[f]));
    note(max_abs_diff(sum, p[v]), r.range_relation, "p_" + e.vertex_name(vi) + " != sum of s_f s_f* over s(f) = v");
  }
  return r;
}

AlgebraSpan ck_algebra(const CKFamily& family) {
  const auto gens = family.generators();
  AlgebraSpan a = span_closure(gens);
  a.set_name("C*(E)");
  return a;
}

GaugeReport gauge_check(const CKFamily& family, const AlgebraSpan& algebra, Complex z) {
  if (std::abs(std::abs(z) - 1.0) > 1e-12) throw Error(ErrorCode::DimensionMismatch, "gauge parameter must have modulus one");
  GaugeReport out;
  out.z = z;
  std::vector<Matrix> scaled;
  for (const Matrix& s : family.s) scaled.push_back(z * s);
  const auto rel = check_ck_relations(family.graph, scaled, family.p);
  std::vector<Matrix> images(family.p.begin(), family.p.end());
  images.insert(images.end(), scaled.begin(), scaled.end());
  StarMapOptions opts;
  opts.target = &algebra;
  opts.labels = family.generator_labels();
  const auto gens = family.generators();
  out.map = check_star_map(gens, images, opts);
  if (!rel.passed()) {
    out.map.well_defined = false;
    out.map.witness = "scaled family breaks a relation: " + rel.witness;
  }
  return out;
}

std::vector<Matrix> RepresentedCoaction::images() const {
  std::vector<Matrix> out(delta_p.begin(), delta_p.end());
  out.insert(out.end(), delta_s.begin(), delta_s.end());
  return out;
}

Matrix RepresentedCoaction::delta_of(const CKFamily& family, const Path& mu, const Path& nu) const {
  const auto letters = images();
  return evaluate_word(monomial_word(family.graph, mu, nu), letters);
}

RepresentedCoaction coaction(const CKFamily& family, const FiniteGroup& g, const Labeling& c) {
  if (c.size() != family.graph.edge_count()) {
    throw Error(ErrorCode::MissingEdge, "labeling covers " + std::to_string(c.size()) + " of " +
                                            std::to_string(family.graph.edge_count()) + " edges");
  }
  RepresentedCoaction d{g, c, regular_representations(g), {}, {}};
  const Matrix one = identity_matrix(g.order());
  for (std::size_t f = 0; f < family.s.size(); ++f) d.delta_s.push_back(kron(family.s[f], d.reps.lambda[c(f)]));
  for (const Matrix& p : family.p) d.delta_p.push_back(kron(p, one));
  return d;
}

CoactionReport check_coaction(const CKFamily& family, const RepresentedCoaction& delta, double tol) {
  CoactionReport r;
  const DirectedGraph& e = family.graph;
  const FiniteGroup& g = delta.group;
  const auto& lambda = delta.reps.lambda;
  const Index n = family.dimension(), ng = g.order();
  const Matrix one = identity_matrix(ng);

  const auto rel = check_ck_relations(e, delta.delta_s, delta.delta_p, tol);
  r.ck_family = rel.passed();
  r.max_error = rel.max_error;
  if (!r.ck_family) r.witness = "δ-images: " + rel.witness;

  // (δ⊗id)δ and (id⊗δ_G)δ as generator assignments on ℓ²(paths)⊗ℓ²(G)⊗ℓ²(G).
  std::vector<Matrix> lhs, rhs;
  for (std::size_t v = 0; v < family.p.size(); ++v) {
    lhs.push_back(kron(delta.delta_p[v], one));
    rhs.push_back(kron(family.p[v], kron(one, one)));
  }
  for (std::size_t f = 0; f < family.s.size(); ++f) {
    const GroupElement t = delta.labeling(f);
    lhs.push_back(kron(delta.delta_s[f], lambda[t]));
    rhs.push_back(kron(family.s[f], kron(lambda[t], lambda[t])));
  }
  r.coaction_identity = true;
  auto compare = [&](const Matrix& a, const Matrix& b, const std::string& where) {
    const double err = max_abs_diff(a, b);
    r.max_error = std::max(r.max_error, err);
    if (err > tol && r.coaction_identity) {
      r.coaction_identity = false;
      if (r.witness.empty()) r.witness = "coaction identity fails at " + where;
    }
  };
  const auto labels = family.generator_labels();
  for (std::size_t i = 0; i < lhs.size(); ++i) compare(lhs[i], rhs[i], labels[i]);
  const auto all = enumerate_paths(e);
  for (const Path& mu : all)
    for (const Path& nu : all) {
      if (mu.range(e) != nu.range(e)) continue;
      const auto w = monomial_word(e, mu, nu);
      compare(evaluate_word(w, lhs), evaluate_word(w, rhs), "s_" + mu.describe(e) + " s_" + nu.describe(e) + "*");
    }

  StarMapOptions opts;
  opts.split_checks = false;
  opts.labels = labels;
  const auto gens = family.generators();
  const auto imgs = delta.images();
  const auto map = check_star_map(gens, imgs, opts);
  r.injective = map.homomorphism() && map.injective;
  if (!r.injective && r.witness.empty()) r.witness = "δ not injective: " + map.witness;

  r.nondegenerate = true;
  Matrix total(n * ng, n * ng);
  for (const Matrix& d : delta.delta_p) total += d;
  if (max_abs_diff(total, identity_matrix(n * ng)) > tol) {
    r.nondegenerate = false;
    if (r.witness.empty()) r.witness = "sum of δ(p_v) is not the identity";
  }
  for (std::size_t f = 0; f < family.s.size() && r.nondegenerate; ++f) {
    const GroupElement cf = delta.labeling(f);
    for (GroupElement t = 0; t < ng; ++t) {
      const Matrix lhs_ft = delta.delta_s[f] * kron(identity_matrix(n), lambda[g.mul(g.inv(cf), t)]);
      if (max_abs_diff(lhs_ft, kron(family.s[f], lambda[t])) > tol) {
        r.nondegenerate = false;
        if (r.witness.empty()) r.witness = "δ(" + labels[family.p.size() + f] + ")(1⊗λ) misses s_f⊗λ_" + g.name(t);
        break;
      }
    }
  }
  return r;
}

std::size_t GradedBasis::total_dimension() const {
  std::size_t total = 0;
  for (const auto& c : components) total += c.size();
  return total;
}

GroupElement path_degree(const Path& mu, const FiniteGroup& g, const Labeling& c) {
  GroupElement d = g.identity();
  for (int f : mu.edges) d = g.mul(d, c(f));
  return d;
}

GradedBasis spectral_subspaces(const CKFamily& family, const FiniteGroup& g, const Labeling& c) {
  const DirectedGraph& e = family.graph;
  GradedBasis out;
  out.components.resize(g.order());
  out.monomials.resize(g.order());
  for (int t = 0; t < g.order(); ++t) out.spans.emplace_back(family.dimension(), Tolerances{}.accumulated);
  const auto all = enumerate_paths(e);
  for (const Path& mu : all)
    for (const Path& nu : all) {
      if (mu.range(e) != nu.range(e)) continue;
      const GroupElement t = g.mul(path_degree(mu, g, c), g.inv(path_degree(nu, g, c)));
      Matrix m = pruned(Matrix(family.path_isometry(mu) * adjoint(family.path_isometry(nu))));
      if (out.spans[t].add(m)) {
        out.components[t].push_back(std::move(m));
        out.monomials[t].emplace_back(mu, nu);
      }
    }
  return out;
}

GradingReport check_grading(const CKFamily& family, const GradedBasis& graded, const AlgebraSpan& algebra,
                            const RepresentedCoaction& delta, double tol) {
  const DirectedGraph& e = family.graph;
  const FiniteGroup& g = delta.group;
  const int ng = g.order();
  GradingReport r;
  r.graded_dim = graded.total_dimension();
  r.algebra_dim = algebra.dimension();
  r.exhausts = r.graded_dim == r.algebra_dim;
  for (int t = 0; t < ng && r.exhausts; ++t)
    for (const Matrix& a : graded.components[t])
      if (!algebra.contains(a)) {
        r.exhausts = false;
        r.witness = "degree-" + g.name(t) + " monomial outside C*(E)";
        break;
      }
  if (!r.exhausts && r.witness.empty()) {
    r.witness = "graded dimension " + std::to_string(r.graded_dim) + " vs " + std::to_string(r.algebra_dim);
  }

  r.orthogonal = true;
  for (int s = 0; s < ng && r.orthogonal; ++s)
    for (int t = s + 1; t < ng && r.orthogonal; ++t)
      for (const Matrix& a : graded.components[s])
        for (const Matrix& b : graded.components[t])
          if (trace_pairing(a, b) > tol) {
            r.orthogonal = false;
            if (r.witness.empty()) r.witness = "degrees " + g.name(s) + " and " + g.name(t) + " are not orthogonal";
          }

  // Graded generators: p_v in degree e, s_f in c(f), s_f* in c(f)⁻¹. Closing
  // C_s under right multiplication by these covers C_s·C_t ⊆ C_st.
  std::vector<std::pair<Matrix, GroupElement>> letters;
  for (const Matrix& p : family.p) letters.emplace_back(p, g.identity());
  for (std::size_t f = 0; f < family.s.size(); ++f) {
    letters.emplace_back(family.s[f], delta.labeling(f));
    letters.emplace_back(adjoint(family.s[f]), g.inv(delta.labeling(f)));
  }
  r.multiplicative = r.adjoint_closed = r.degree_detected = true;
  for (int t = 0; t < ng; ++t) {
    for (std::size_t i = 0; i < graded.components[t].size(); ++i) {
      const Matrix& a = graded.components[t][i];
      const auto& [mu, nu] = graded.monomials[t][i];
      const std::string label = "s_" + mu.describe(e) + " s_" + nu.describe(e) + "*";
      for (const auto& [x, d] : letters) {
        if (r.multiplicative && !graded.spans[g.mul(t, d)].contains(Matrix(a * x))) {
          r.multiplicative = false;
          if (r.witness.empty()) r.witness = "product of " + label + " with a generator leaves its degree";
        }
      }
      if (r.adjoint_closed && !graded.spans[g.inv(t)].contains(adjoint(a))) {
        r.adjoint_closed = false;
        if (r.witness.empty()) r.witness = "adjoint of " + label + " leaves degree " + g.name(g.inv(t));
      }
      if (r.degree_detected &&
          max_abs_diff(delta.delta_of(family, mu, nu), kron(a, delta.reps.lambda[t])) > Tolerances{}.entry) {
        r.degree_detected = false;
        if (r.witness.empty()) r.witness = "δ(" + label + ") != a ⊗ λ_" + g.name(t);
      }
    }
  }
  return r;
}

std::vector<Matrix> path_space_unitaries(const CKFamily& family, const FiniteGroup& g, const GraphAction& a) {
  const DirectedGraph& e = family.graph;
  const Index n = family.dimension();
  std::map<PathKey, Index> index;
  for (Index i = 0; i < n; ++i) index.emplace(key_of(e, family.paths[i]), i);
  std::vector<Matrix> out;
  for (GroupElement t = 0; t < g.order(); ++t) {
    std::vector<Eigen::Triplet<Complex>> trip;
    for (Index i = 0; i < n; ++i) {
      const Path& mu = family.paths[i];
      Path moved{a.vertex(t, mu.base), {}};
      for (int f : mu.edges) moved.edges.push_back(a.edge(t, f));
      auto it = index.find(key_of(e, moved));
      if (it == index.end()) {
        throw Error(ErrorCode::ActionInvalid, g.name(t) + " moves path " + mu.describe(e) + " off the path basis");
      }
      trip.emplace_back(it->second, i, 1.0);
    }
    out.push_back(from_triplets(n, n, trip));
  }
  return out;
}

Matrix path_space_transport(const CKFamily& from, const CKFamily& to, const GraphIso& iso) {
  std::map<PathKey, Index> index;
  for (Index i = 0; i < to.dimension(); ++i) index.emplace(key_of(to.graph, to.paths[i]), i);
  std::vector<Eigen::Triplet<Complex>> trip;
  for (Index i = 0; i < from.dimension(); ++i) {
    const Path& mu = from.paths[i];
    Path moved{iso.vertex_map[mu.base], {}};
    for (int f : mu.edges) moved.edges.push_back(iso.edge_map[f]);
    auto it = index.find(key_of(to.graph, moved));
    if (it == index.end()) throw Error(ErrorCode::CertificationFailed, "graph map does not carry path " + mu.describe(from.graph));
    trip.emplace_back(it->second, i, 1.0);
  }
  return from_triplets(to.dimension(), from.dimension(), trip);
}

}  // namespace skewcp
