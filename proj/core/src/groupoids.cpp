#include "skewcp/groupoids.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "skewcp/errors.hpp"

namespace skewcp {

namespace {

std::string pair_label(const std::string& a, const std::string& b) { return "(" + a + "," + b + ")"; }

}  // namespace

FiniteGroupoid FiniteGroupoid::make(std::vector<std::string> units, std::vector<GroupoidArrow> arrows,
                                    std::vector<std::vector<int>> product, std::vector<int> inverse) {
  const int nu = static_cast<int>(units.size());
  const int na = static_cast<int>(arrows.size());
  if (nu == 0) throw Error(ErrorCode::BadUnits, "groupoid has no units");
  if (static_cast<int>(product.size()) != na || static_cast<int>(inverse.size()) != na) {
    throw Error(ErrorCode::DimensionMismatch, "product or inverse table does not match the arrow count");
  }
  std::set<std::string> seen(units.begin(), units.end());
  if (static_cast<int>(seen.size()) != nu) throw Error(ErrorCode::BadUnits, "duplicate unit name");
  seen.clear();
  for (const auto& a : arrows) {
    if (!seen.insert(a.id).second) throw Error(ErrorCode::BadUnits, "duplicate arrow id " + a.id);
    if (a.source < 0 || a.source >= nu || a.range < 0 || a.range >= nu) {
      throw Error(ErrorCode::BadUnits, "arrow " + a.id + " has an endpoint outside the unit space");
    }
  }
  for (int x = 0; x < na; ++x) {
    if (static_cast<int>(product[x].size()) != na) {
      throw Error(ErrorCode::DimensionMismatch, "product table row " + arrows[x].id + " has the wrong length");
    }
    for (int y = 0; y < na; ++y) {
      const int xy = product[x][y];
      const bool composable = arrows[x].source == arrows[y].range;
      if (xy < -1 || xy >= na) throw Error(ErrorCode::NotAssociative, "product entry out of range");
      if (composable && xy < 0) {
        throw Error(ErrorCode::NotAssociative, "missing product " + arrows[x].id + "·" + arrows[y].id);
      }
      if (!composable && xy >= 0) {
        throw Error(ErrorCode::BadUnits,
                    "product " + arrows[x].id + "·" + arrows[y].id + " defined although s(x) ≠ r(y)");
      }
      if (composable && (arrows[xy].range != arrows[x].range || arrows[xy].source != arrows[y].source)) {
        throw Error(ErrorCode::BadUnits, "endpoints of " + arrows[x].id + "·" + arrows[y].id + " are wrong");
      }
    }
  }

  FiniteGroupoid q;
  q.unit_arrow_.assign(nu, -1);
  for (int x = 0; x < na; ++x) {
    const auto& a = arrows[x];
    if (a.source == a.range && product[x][x] == x) {
      if (q.unit_arrow_[a.source] >= 0) throw Error(ErrorCode::BadUnits, "two identity arrows at " + units[a.source]);
      q.unit_arrow_[a.source] = x;
    }
  }
  for (int u = 0; u < nu; ++u) {
    if (q.unit_arrow_[u] < 0) throw Error(ErrorCode::BadUnits, "no identity arrow at " + units[u]);
  }
  for (int x = 0; x < na; ++x) {
    if (product[q.unit_arrow_[arrows[x].range]][x] != x || product[x][q.unit_arrow_[arrows[x].source]] != x) {
      throw Error(ErrorCode::BadUnits, "identity arrows do not act trivially on " + arrows[x].id);
    }
  }
  for (int x = 0; x < na; ++x) {
    const int xi = inverse[x];
    if (xi < 0 || xi >= na || arrows[xi].source != arrows[x].range || arrows[xi].range != arrows[x].source ||
        product[x][xi] != q.unit_arrow_[arrows[x].range] || product[xi][x] != q.unit_arrow_[arrows[x].source]) {
      throw Error(ErrorCode::BadInverse, "bad inverse for " + arrows[x].id);
    }
  }
  for (int x = 0; x < na; ++x) {
    for (int y = 0; y < na; ++y) {
      const int xy = product[x][y];
      if (xy < 0) continue;
      for (int z = 0; z < na; ++z) {
        const int yz = product[y][z];
        if (yz < 0) continue;
        if (product[xy][z] != product[x][yz]) {
          throw Error(ErrorCode::NotAssociative,
                      "(" + arrows[x].id + "·" + arrows[y].id + ")·" + arrows[z].id + " ≠ " + arrows[x].id + "·(" +
                          arrows[y].id + "·" + arrows[z].id + ")");
        }
      }
    }
  }
  q.units_ = std::move(units);
  q.arrows_ = std::move(arrows);
  q.product_ = std::move(product);
  q.inverse_ = std::move(inverse);
  return q;
}

std::optional<int> FiniteGroupoid::find_arrow(std::string_view id) const {
  for (std::size_t x = 0; x < arrows_.size(); ++x)
    if (arrows_[x].id == id) return static_cast<int>(x);
  return std::nullopt;
}

std::optional<int> FiniteGroupoid::find_unit(std::string_view name) const {
  for (std::size_t u = 0; u < units_.size(); ++u)
    if (units_[u] == name) return static_cast<int>(u);
  return std::nullopt;
}

FiniteGroupoid transitive_groupoid(const std::vector<std::string>& points, const FiniteGroup& isotropy) {
  const int k = static_cast<int>(points.size());
  const int h = isotropy.order();
  const bool plain = h == 1;
  auto index = [&](int i, int j, int a) { return (i * k + j) * h + a; };
  std::vector<GroupoidArrow> arrows;
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j)
      for (int a = 0; a < h; ++a) {
        std::string id = "x_" + points[i] + "_" + points[j];
        if (!plain) id += "_" + isotropy.name(a);
        arrows.push_back({std::move(id), j, i});
      }
  const int na = static_cast<int>(arrows.size());
  std::vector<std::vector<int>> product(na, std::vector<int>(na, -1));
  std::vector<int> inverse(na);
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j)
      for (int a = 0; a < h; ++a) {
        inverse[index(i, j, a)] = index(j, i, isotropy.inv(a));
        for (int l = 0; l < k; ++l)
          for (int b = 0; b < h; ++b) product[index(i, j, a)][index(j, l, b)] = index(i, l, isotropy.mul(a, b));
      }
  return FiniteGroupoid::make(points, std::move(arrows), std::move(product), std::move(inverse));
}

FiniteGroupoid pair_groupoid(const std::vector<std::string>& points) {
  return transitive_groupoid(points, FiniteGroup::trivial());
}

FiniteGroupoid group_groupoid(const FiniteGroup& g) {
  const int n = g.order();
  std::vector<GroupoidArrow> arrows;
  for (int a = 0; a < n; ++a) arrows.push_back({g.name(a), 0, 0});
  std::vector<std::vector<int>> product(n, std::vector<int>(n));
  std::vector<int> inverse(n);
  for (int a = 0; a < n; ++a) {
    inverse[a] = g.inv(a);
    for (int b = 0; b < n; ++b) product[a][b] = g.mul(a, b);
  }
  return FiniteGroupoid::make({"*"}, std::move(arrows), std::move(product), std::move(inverse));
}

FiniteGroupoid units_only(const std::vector<std::string>& points) {
  const int k = static_cast<int>(points.size());
  std::vector<GroupoidArrow> arrows;
  std::vector<std::vector<int>> product(k, std::vector<int>(k, -1));
  std::vector<int> inverse(k);
  for (int i = 0; i < k; ++i) {
    arrows.push_back({points[i], i, i});
    product[i][i] = i;
    inverse[i] = i;
  }
  return FiniteGroupoid::make(points, std::move(arrows), std::move(product), std::move(inverse));
}

FiniteGroupoid disjoint_union(const FiniteGroupoid& a, const FiniteGroupoid& b) {
  const int ua = static_cast<int>(a.unit_count());
  const int na = static_cast<int>(a.arrow_count());
  const int n = na + static_cast<int>(b.arrow_count());
  std::vector<std::string> units = a.units();
  units.insert(units.end(), b.units().begin(), b.units().end());
  std::vector<GroupoidArrow> arrows = a.arrows();
  for (auto arrow : b.arrows()) {
    arrow.source += ua;
    arrow.range += ua;
    arrows.push_back(std::move(arrow));
  }
  std::vector<std::vector<int>> product(n, std::vector<int>(n, -1));
  std::vector<int> inverse(n);
  for (int x = 0; x < n; ++x) {
    const bool in_a = x < na;
    inverse[x] = in_a ? a.inverse(x) : b.inverse(x - na) + na;
    for (int y = 0; y < n; ++y) {
      if (in_a != (y < na)) continue;
      const int xy = in_a ? a.product(x, y) : b.product(x - na, y - na);
      product[x][y] = xy < 0 ? -1 : (in_a ? xy : xy + na);
    }
  }
  return FiniteGroupoid::make(std::move(units), std::move(arrows), std::move(product), std::move(inverse));
}

FiniteGroupoid subgroupoid(const FiniteGroupoid& q, const std::vector<int>& arrows, std::vector<int>* embedding) {
  std::vector<int> keep(arrows);
  std::sort(keep.begin(), keep.end());
  keep.erase(std::unique(keep.begin(), keep.end()), keep.end());
  std::vector<int> position(q.arrow_count(), -1);
  for (std::size_t k = 0; k < keep.size(); ++k) position[keep[k]] = static_cast<int>(k);

  std::vector<int> unit_index(q.unit_count(), -1);
  std::vector<std::string> units;
  for (int x : keep) {
    for (int u : {q.range(x), q.source(x)}) {
      if (position[q.unit_arrow(u)] < 0) {
        throw Error(ErrorCode::BadUnits, "subset misses the identity at " + q.unit_name(u));
      }
    }
  }
  for (int u = 0; u < static_cast<int>(q.unit_count()); ++u) {
    if (position[q.unit_arrow(u)] >= 0) {
      unit_index[u] = static_cast<int>(units.size());
      units.push_back(q.unit_name(u));
    }
  }
  const int n = static_cast<int>(keep.size());
  std::vector<GroupoidArrow> out;
  std::vector<std::vector<int>> product(n, std::vector<int>(n, -1));
  std::vector<int> inverse(n);
  for (int k = 0; k < n; ++k) {
    const int x = keep[k];
    out.push_back({q.arrow_id(x), unit_index[q.source(x)], unit_index[q.range(x)]});
    inverse[k] = position[q.inverse(x)];
    if (inverse[k] < 0) throw Error(ErrorCode::BadUnits, "subset is not closed under inverses at " + q.arrow_id(x));
    for (int l = 0; l < n; ++l) {
      const int xy = q.product(x, keep[l]);
      if (xy < 0) continue;
      product[k][l] = position[xy];
      if (position[xy] < 0) {
        throw Error(ErrorCode::BadUnits,
                    "subset is not closed under products at " + q.arrow_id(x) + "·" + q.arrow_id(keep[l]));
      }
    }
  }
  if (embedding) *embedding = keep;
  return FiniteGroupoid::make(std::move(units), std::move(out), std::move(product), std::move(inverse));
}

void validate_cocycle(const FiniteGroupoid& q, const FiniteGroup& g, const Cocycle& c) {
  const int na = static_cast<int>(q.arrow_count());
  if (static_cast<int>(c.values.size()) != na) {
    throw Error(ErrorCode::DimensionMismatch, "cocycle has " + std::to_string(c.values.size()) + " values for " +
                                                  std::to_string(na) + " arrows");
  }
  for (GroupElement v : c.values) {
    if (v < 0 || v >= g.order()) throw Error(ErrorCode::UnknownElement, "cocycle value outside the group");
  }
  for (int x = 0; x < na; ++x) {
    for (int y = 0; y < na; ++y) {
      const int xy = q.product(x, y);
      if (xy >= 0 && c(xy) != g.mul(c(x), c(y))) {
        throw Error(ErrorCode::NotWellDefined, "c(xy) ≠ c(x)c(y) at " + q.arrow_id(x) + "·" + q.arrow_id(y));
      }
    }
  }
}

Cocycle trivial_cocycle(const FiniteGroupoid& q, const FiniteGroup& g) {
  return Cocycle{std::vector<GroupElement>(q.arrow_count(), g.identity())};
}

void validate_action(const FiniteGroupoid& r, const FiniteGroup& g, const GroupoidAction& a) {
  const int na = static_cast<int>(r.arrow_count());
  if (static_cast<int>(a.arrow_perm.size()) != g.order()) {
    throw Error(ErrorCode::NotAutomorphism, "action needs one permutation per group element");
  }
  for (int s = 0; s < g.order(); ++s) {
    const auto& p = a.arrow_perm[s];
    std::vector<bool> hit(na, false);
    if (static_cast<int>(p.size()) != na) throw Error(ErrorCode::NotAutomorphism, "permutation has the wrong length");
    for (int x : p) {
      if (x < 0 || x >= na || hit[x]) {
        throw Error(ErrorCode::NotAutomorphism, "α_" + g.name(s) + " is not a bijection of the arrows");
      }
      hit[x] = true;
    }
    for (int x = 0; x < na; ++x) {
      if (s == g.identity() && p[x] != x) throw Error(ErrorCode::NotAutomorphism, "α_e is not the identity");
      for (int t = 0; t < g.order(); ++t) {
        if (a(s, a(t, x)) != a(g.mul(s, t), x)) {
          throw Error(ErrorCode::NotAutomorphism,
                      "α_" + g.name(s) + "α_" + g.name(t) + " ≠ α_" + g.name(g.mul(s, t)) + " at " + r.arrow_id(x));
        }
      }
      for (int y = 0; y < na; ++y) {
        const int xy = r.product(x, y);
        const int img = r.product(p[x], p[y]);
        if ((xy < 0) != (img < 0) || (xy >= 0 && p[xy] != img)) {
          throw Error(ErrorCode::NotAutomorphism, "α_" + g.name(s) + " does not preserve the product " +
                                                      r.arrow_id(x) + "·" + r.arrow_id(y));
        }
      }
    }
  }
}

GroupoidAction trivial_action(const FiniteGroupoid& r, const FiniteGroup& g) {
  std::vector<int> id(r.arrow_count());
  for (std::size_t x = 0; x < id.size(); ++x) id[x] = static_cast<int>(x);
  return GroupoidAction{std::vector<std::vector<int>>(g.order(), id)};
}

ConvolutionElement delta_function(const FiniteGroupoid& q, int x) {
  ConvolutionElement f(q.arrow_count(), 0.0);
  f[x] = 1.0;
  return f;
}

ConvolutionElement convolve(const FiniteGroupoid& q, const ConvolutionElement& f, const ConvolutionElement& g) {
  const int na = static_cast<int>(q.arrow_count());
  ConvolutionElement out(na, 0.0);
  for (int y = 0; y < na; ++y) {
    if (f[y] == Complex{}) continue;
    for (int z = 0; z < na; ++z) {
      const int yz = q.product(y, z);
      if (yz >= 0) out[yz] += f[y] * g[z];
    }
  }
  return out;
}

ConvolutionElement involution(const FiniteGroupoid& q, const ConvolutionElement& f) {
  ConvolutionElement out(f.size());
  for (std::size_t x = 0; x < f.size(); ++x) out[x] = std::conj(f[q.inverse(static_cast<int>(x))]);
  return out;
}

ConvolutionElement restrict_to_units(const FiniteGroupoid& q, const ConvolutionElement& f) {
  ConvolutionElement out(f.size(), 0.0);
  for (std::size_t u = 0; u < q.unit_count(); ++u) {
    const int x = q.unit_arrow(static_cast<int>(u));
    out[x] = f[x];
  }
  return out;
}

double sup_norm(const ConvolutionElement& f) {
  double m = 0.0;
  for (const Complex& z : f) m = std::max(m, std::abs(z));
  return m;
}

ConvolutionElement random_function(const FiniteGroupoid& q, std::mt19937_64& rng) {
  std::normal_distribution<double> n(0.0, 1.0);
  ConvolutionElement f(q.arrow_count());
  for (auto& z : f) z = Complex{n(rng), n(rng)};
  return f;
}

Matrix regular(const FiniteGroupoid& q, const ConvolutionElement& f) {
  const int na = static_cast<int>(q.arrow_count());
  std::vector<Eigen::Triplet<Complex>> trips;
  for (int y = 0; y < na; ++y) {
    if (f[y] == Complex{}) continue;
    for (int z = 0; z < na; ++z) {
      const int yz = q.product(y, z);
      if (yz >= 0) trips.emplace_back(yz, z, f[y]);
    }
  }
  Matrix m(na, na);
  m.setFromTriplets(trips.begin(), trips.end());
  return m;
}

Matrix regular_delta(const FiniteGroupoid& q, int x) { return regular(q, delta_function(q, x)); }

ConvolutionElement function_of(const FiniteGroupoid& q, const Matrix& m) {
  ConvolutionElement f(q.arrow_count());
  const DenseMatrix d(m);
  for (std::size_t x = 0; x < f.size(); ++x) {
    f[x] = d(static_cast<Index>(x), q.unit_arrow(q.source(static_cast<int>(x))));
  }
  return f;
}

AlgebraSpan convolution_algebra(const FiniteGroupoid& q) {
  const Index na = static_cast<Index>(q.arrow_count());
  AlgebraSpan span(na, Tolerances{}.accumulated, "C*(Q)");
  std::vector<Matrix> gens;
  for (Index x = 0; x < na; ++x) {
    gens.push_back(regular_delta(q, static_cast<int>(x)));
    span.add(gens.back(), {static_cast<int>(x)});
  }
  span.set_generators(std::move(gens));
  return span;
}

AlgebraAction induced_action(const FiniteGroupoid& r, const FiniteGroup& g, const GroupoidAction& a) {
  const Index na = static_cast<Index>(r.arrow_count());
  AlgebraAction act{g, {}};
  for (int s = 0; s < g.order(); ++s) {
    std::vector<Eigen::Triplet<Complex>> trips;
    for (Index x = 0; x < na; ++x) trips.emplace_back(a(s, static_cast<int>(x)), x, 1.0);
    Matrix u(na, na);
    u.setFromTriplets(trips.begin(), trips.end());
    act.unitaries.push_back(std::move(u));
  }
  return act;
}

FiniteGroupoid skew_product_groupoid(const FiniteGroupoid& q, const FiniteGroup& g, const Cocycle& c) {
  validate_cocycle(q, g, c);
  const int n = g.order();
  const int na = static_cast<int>(q.arrow_count());
  std::vector<std::string> units;
  for (const auto& u : q.units())
    for (int s = 0; s < n; ++s) units.push_back(pair_label(u, g.name(s)));
  std::vector<GroupoidArrow> arrows;
  for (int x = 0; x < na; ++x)
    for (int s = 0; s < n; ++s) {
      arrows.push_back({pair_label(q.arrow_id(x), g.name(s)), q.source(x) * n + s, q.range(x) * n + g.mul(c(x), s)});
    }
  const int m = na * n;
  std::vector<std::vector<int>> product(m, std::vector<int>(m, -1));
  std::vector<int> inverse(m);
  for (int x = 0; x < na; ++x)
    for (int s = 0; s < n; ++s) {
      inverse[x * n + s] = q.inverse(x) * n + g.mul(c(x), s);
      for (int y = 0; y < na; ++y) {
        const int xy = q.product(x, y);
        if (xy < 0) continue;
        // (x, c(y)s')(y, s') = (xy, s')
        for (int t = 0; t < n; ++t) {
          if (g.mul(c(y), t) == s) product[x * n + s][y * n + t] = xy * n + t;
        }
      }
    }
  return FiniteGroupoid::make(std::move(units), std::move(arrows), std::move(product), std::move(inverse));
}

GroupoidAction skew_translation(const FiniteGroupoid& q, const FiniteGroup& g) {
  const int n = g.order();
  const int na = static_cast<int>(q.arrow_count());
  GroupoidAction a;
  a.arrow_perm.assign(n, std::vector<int>(na * n));
  for (int s = 0; s < n; ++s)
    for (int x = 0; x < na; ++x)
      for (int t = 0; t < n; ++t) a.arrow_perm[s][x * n + t] = x * n + g.mul(t, g.inv(s));
  return a;
}

FiniteGroupoid semidirect_product(const FiniteGroupoid& r, const FiniteGroup& g, const GroupoidAction& a) {
  validate_action(r, g, a);
  const int n = g.order();
  const int na = static_cast<int>(r.arrow_count());
  auto unit_image = [&](int s, int u) { return r.source(a(s, r.unit_arrow(u))); };

  std::vector<GroupoidArrow> arrows;
  for (int x = 0; x < na; ++x)
    for (int s = 0; s < n; ++s) {
      arrows.push_back({pair_label(r.arrow_id(x), g.name(s)), unit_image(g.inv(s), r.source(x)), r.range(x)});
    }
  const int m = na * n;
  std::vector<std::vector<int>> product(m, std::vector<int>(m, -1));
  std::vector<int> inverse(m);
  for (int x = 0; x < na; ++x)
    for (int s = 0; s < n; ++s) {
      const int si = g.inv(s);
      inverse[x * n + s] = a(si, r.inverse(x)) * n + si;
      for (int y = 0; y < na; ++y) {
        const int xy = r.product(x, a(s, y));
        if (xy < 0) continue;
        for (int t = 0; t < n; ++t) product[x * n + s][y * n + t] = xy * n + g.mul(s, t);
      }
    }
  return FiniteGroupoid::make(r.units(), std::move(arrows), std::move(product), std::move(inverse));
}

}  // namespace skewcp
