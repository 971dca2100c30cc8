#pragma once

// Reference computations used to judge the library. None of them call the
// library's closure, Wedderburn or path-enumeration code.

#include <algorithm>
#include <cstddef>
#include <functional>
#include <map>
#include <numeric>
#include <vector>

#include <Eigen/Dense>

#include "skewcp/graphs.hpp"
#include "skewcp/groupoids.hpp"
#include "skewcp/linalg.hpp"

namespace oracle {

using skewcp::DenseMatrix;

/// Number of paths (length zero included) ending at each vertex.
inline std::vector<std::size_t> paths_ending_at(const skewcp::DirectedGraph& e) {
  const int n = static_cast<int>(e.vertex_count());
  std::vector<std::size_t> memo(n, 0);
  std::vector<bool> done(n, false);
  std::function<std::size_t(int)> count = [&](int w) -> std::size_t {
    if (done[w]) return memo[w];
    std::size_t total = 1;
    for (std::size_t f = 0; f < e.edge_count(); ++f) {
      if (e.range(static_cast<int>(f)) == w) total += count(e.source(static_cast<int>(f)));
    }
    done[w] = true;
    return memo[w] = total;
  };
  std::vector<std::size_t> out(n);
  for (int w = 0; w < n; ++w) out[w] = count(w);
  return out;
}

inline bool emits(const skewcp::DirectedGraph& e, int v) {
  for (std::size_t f = 0; f < e.edge_count(); ++f)
    if (e.source(static_cast<int>(f)) == v) return true;
  return false;
}

/// C*(E) ≅ ⊕_{sinks w} M_{n_w} with n_w the number of paths ending at w.
inline std::vector<std::size_t> ck_signature(const skewcp::DirectedGraph& e) {
  const auto n = paths_ending_at(e);
  std::vector<std::size_t> sig;
  for (std::size_t w = 0; w < e.vertex_count(); ++w)
    if (!emits(e, static_cast<int>(w))) sig.push_back(n[w]);
  std::sort(sig.begin(), sig.end());
  return sig;
}

inline std::size_t ck_dimension(const skewcp::DirectedGraph& e) {
  std::size_t d = 0;
  for (std::size_t k : ck_signature(e)) d += k * k;
  return d;
}

inline std::vector<std::size_t> scaled(std::vector<std::size_t> sig, std::size_t factor) {
  for (auto& d : sig) d *= factor;
  std::sort(sig.begin(), sig.end());
  return sig;
}

inline std::size_t dimension_of(const std::vector<std::size_t>& sig) {
  std::size_t d = 0;
  for (std::size_t k : sig) d += k * k;
  return d;
}

/// Dimension of the *-algebra generated by `gens`, by dense brute force:
/// keep multiplying the current span by generators and adjoints until the
/// rank of the flattened span stops growing.
inline std::size_t generated_dimension(const std::vector<DenseMatrix>& gens, double tol = 1e-8) {
  if (gens.empty()) return 0;
  const Eigen::Index n = gens.front().rows();
  std::vector<DenseMatrix> letters;
  for (const auto& g : gens) {
    letters.push_back(g);
    letters.push_back(g.adjoint());
  }
  std::vector<DenseMatrix> basis;
  Eigen::MatrixXcd stacked(n * n, 0);
  const auto try_add = [&](const DenseMatrix& m) {
    Eigen::MatrixXcd next(n * n, stacked.cols() + 1);
    next << stacked, Eigen::Map<const Eigen::VectorXcd>(m.data(), n * n);
    Eigen::ColPivHouseholderQR<Eigen::MatrixXcd> qr(next);
    qr.setThreshold(tol);
    if (qr.rank() > stacked.cols()) {
      stacked = std::move(next);
      basis.push_back(m);
      return true;
    }
    return false;
  };
  for (const auto& l : letters) try_add(l);
  for (std::size_t k = 0; k < basis.size(); ++k) {
    for (const auto& l : letters) try_add(DenseMatrix(l * basis[k]));
  }
  return basis.size();
}

inline std::vector<DenseMatrix> dense(const std::vector<skewcp::Matrix>& ms) {
  std::vector<DenseMatrix> out;
  for (const auto& m : ms) out.emplace_back(m);
  return out;
}

/// Transitive components of a finite groupoid: (units, isotropy order, isotropy abelian).
struct Component {
  std::size_t units = 0;
  std::size_t isotropy = 0;
  bool abelian = true;
};

inline std::vector<Component> components(const skewcp::FiniteGroupoid& q) {
  const int nu = static_cast<int>(q.unit_count());
  std::vector<int> parent(nu);
  std::iota(parent.begin(), parent.end(), 0);
  std::function<int(int)> find = [&](int u) { return parent[u] == u ? u : parent[u] = find(parent[u]); };
  for (std::size_t x = 0; x < q.arrow_count(); ++x) {
    parent[find(q.source(static_cast<int>(x)))] = find(q.range(static_cast<int>(x)));
  }
  std::map<int, Component> by_root;
  std::map<int, int> representative;
  for (int u = 0; u < nu; ++u) {
    const int r = find(u);
    by_root[r].units += 1;
    if (!representative.count(r)) representative[r] = u;
  }
  for (auto& [root, comp] : by_root) {
    const int u = representative[root];
    std::vector<int> loops;
    for (std::size_t x = 0; x < q.arrow_count(); ++x) {
      if (q.source(static_cast<int>(x)) == u && q.range(static_cast<int>(x)) == u) loops.push_back(static_cast<int>(x));
    }
    comp.isotropy = loops.size();
    for (int a : loops)
      for (int b : loops)
        if (q.product(a, b) != q.product(b, a)) comp.abelian = false;
  }
  std::vector<Component> out;
  for (auto& [root, comp] : by_root) out.push_back(comp);
  return out;
}

/// C*(Q) for abelian isotropy: each component with k units and isotropy of
/// order h contributes h blocks of size k.
inline std::vector<std::size_t> groupoid_signature(const skewcp::FiniteGroupoid& q) {
  std::vector<std::size_t> sig;
  for (const Component& c : components(q)) {
    for (std::size_t i = 0; i < c.isotropy; ++i) sig.push_back(c.units);
  }
  std::sort(sig.begin(), sig.end());
  return sig;
}

inline bool abelian_isotropy(const skewcp::FiniteGroupoid& q) {
  for (const Component& c : components(q))
    if (!c.abelian) return false;
  return true;
}

}  // namespace oracle
