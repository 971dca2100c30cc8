#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>

#include "check_util.hpp"
#include "skewcp/errors.hpp"
#include "skewcp/groupoids.hpp"

namespace skewcp {

namespace {

using detail::CheckAccumulator;
using detail::add_signatures;
using detail::flag;

double diff(const ConvolutionElement& a, const ConvolutionElement& b) {
  double m = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) m = std::max(m, std::abs(a[k] - b[k]));
  return m;
}

ConvolutionElement scaled(ConvolutionElement f, Complex z) {
  for (auto& v : f) v *= z;
  return f;
}

double min_eigenvalue(const Matrix& hermitian) {
  const DenseMatrix d(hermitian);
  Eigen::SelfAdjointEigenSolver<DenseMatrix> es(d, Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff();
}

/// Arrows of c⁻¹(e).
std::vector<int> kernel_arrows(const FiniteGroupoid& q, const FiniteGroup& g, const Cocycle& c) {
  std::vector<int> out;
  for (int x = 0; x < static_cast<int>(q.arrow_count()); ++x)
    if (c(x) == g.identity()) out.push_back(x);
  return out;
}

/// Extension by zero from a subgroupoid.
ConvolutionElement extend(const ConvolutionElement& f, const std::vector<int>& embedding, std::size_t size) {
  ConvolutionElement out(size, 0.0);
  for (std::size_t k = 0; k < embedding.size(); ++k) out[embedding[k]] = f[k];
  return out;
}

/// Ψ on C*(R)⋊G back to functions on R⋊G.
ConvolutionElement psi_semidirect(const FiniteGroupoid& r, const FiniteGroup& g, const ActionCrossedProduct& acp,
                                  const Matrix& m) {
  const int n = g.order();
  const auto coeffs = crossed_coefficients(acp, m);
  ConvolutionElement out(r.arrow_count() * n);
  for (int s = 0; s < n; ++s) {
    const auto f = function_of(r, coeffs[s]);
    for (std::size_t x = 0; x < f.size(); ++x) out[x * n + s] = f[x];
  }
  return out;
}

Matrix phi_semidirect(const FiniteGroupoid& r, const FiniteGroup& g, const ActionCrossedProduct& acp,
                      const ConvolutionElement& f) {
  const int n = g.order();
  const Index dim = acp.base_dim * n;
  Matrix out(dim, dim);
  for (int s = 0; s < n; ++s) {
    ConvolutionElement fs(r.arrow_count());
    for (std::size_t x = 0; x < fs.size(); ++x) fs[x] = f[x * n + s];
    out += acp.pi(regular(r, fs)) * acp.u(s);
  }
  return out;
}

/// Star-map certificate for a linear map defined on a basis that multiplies
/// like the arrows of `table`: both sides are checked against the table on
/// every basis pair, which determines multiplicativity completely.
StarMapReport table_star_map(const FiniteGroupoid& table, const std::vector<Matrix>& domain,
                             const std::vector<Matrix>& images, const AlgebraSpan* target,
                             const std::vector<std::string>& labels, double tol) {
  StarMapReport r;
  const int d = static_cast<int>(domain.size());
  auto independent = [&](const std::vector<Matrix>& ms) {
    AlgebraSpan span(ms.front().rows(), Tolerances{}.accumulated);
    for (const auto& m : ms) span.add(m);
    return span.dimension();
  };
  auto obeys = [&](const std::vector<Matrix>& ms, bool products, std::string& witness) {
    for (int x = 0; x < d; ++x) {
      if (!products) {
        if (max_abs_diff(adjoint(ms[x]), ms[table.inverse(x)]) > tol) {
          witness = labels[x] + "*";
          return false;
        }
        continue;
      }
      for (int y = 0; y < d; ++y) {
        const int xy = table.product(x, y);
        const Matrix prod = ms[x] * ms[y];
        const double err = xy < 0 ? max_abs(prod) : max_abs_diff(prod, ms[xy]);
        if (err > tol) {
          witness = labels[x] + "·" + labels[y];
          return false;
        }
      }
    }
    return true;
  };
  r.domain_dim = independent(domain);
  r.image_dim = independent(images);
  r.graph_dim = r.domain_dim;
  std::string w;
  r.well_defined = r.domain_dim == static_cast<std::size_t>(d) && obeys(domain, true, w) && obeys(domain, false, w);
  if (!r.well_defined) {
    r.witness = w.empty() ? "domain generators are dependent" : "domain breaks the table at " + w;
    return r;
  }
  r.multiplicative = obeys(images, true, w);
  r.star_preserving = r.multiplicative && obeys(images, false, w);
  if (!r.star_preserving) r.witness = "images break the table at " + w;
  r.injective = r.image_dim == static_cast<std::size_t>(d);
  if (!r.injective && r.witness.empty()) r.witness = "images are dependent";
  if (target) {
    r.target_dim = target->dimension();
    bool inside = true;
    for (int x = 0; x < d && inside; ++x) inside = target->contains(images[x]);
    r.surjective = inside && r.target_dim == r.image_dim;
    if (!r.surjective && r.witness.empty()) r.witness = inside ? "image is a proper subspace" : "image leaves the target";
  } else {
    r.target_dim = r.image_dim;
    r.surjective = true;
  }
  return r;
}

std::vector<std::string> q_labels(const FiniteGroupoid& q) {
  std::vector<std::string> out;
  for (const auto& a : q.arrows()) out.push_back(a.id);
  return out;
}

}  // namespace

bool GroupoidReport::passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.passed; });
}

std::string GroupoidReport::failure() const {
  for (const Check& c : checks)
    if (!c.passed) return c.name + ": " + c.witness;
  return {};
}

GroupoidReport check_groupoid_coaction(const FiniteGroupoid& q, const FiniteGroup& g, const Cocycle& c, double tol) {
  validate_cocycle(q, g, c);
  GroupoidReport report;
  const auto reps = regular_representations(g);
  const int na = static_cast<int>(q.arrow_count());
  std::vector<Matrix> gens, images;
  for (int x = 0; x < na; ++x) {
    gens.push_back(regular_delta(q, x));
    images.push_back(kron(gens.back(), reps.lambda[c(x)]));
  }

  CheckAccumulator identity("(δ⊗id)δ = (id⊗δ_G)δ");
  for (int x = 0; x < na; ++x) {
    const Matrix lhs = kron(images[x], reps.lambda[c(x)]);
    const Matrix rhs = kron(gens[x], kron(reps.lambda[c(x)], reps.lambda[c(x)]));
    identity.add(q.arrow_id(x), lhs, rhs, tol);
  }
  report.checks.push_back(identity.check);

  const StarMapReport map = table_star_map(q, gens, images, nullptr, q_labels(q), tol);
  report.checks.push_back(flag("δ is an injective *-homomorphism", map.homomorphism() && map.injective, map.witness));

  AlgebraSpan products(na * g.order(), Tolerances{}.accumulated);
  for (int x = 0; x < na; ++x) {
    for (int t = 0; t < g.order(); ++t) {
      products.add(Matrix(images[x] * kron(identity_matrix(na), reps.lambda[t])));
    }
  }
  const std::size_t want = static_cast<std::size_t>(na) * g.order();
  report.checks.push_back(flag("span δ(A)(1⊗C*(G)) = A⊗C*(G)", products.dimension() == want,
                               std::to_string(products.dimension()) + " vs " + std::to_string(want)));

  CheckAccumulator grading("C_sC_t ⊆ C_st"), star("C_s* = C_{s⁻¹}");
  for (int x = 0; x < na; ++x) {
    star.add(q.arrow_id(x), adjoint(gens[x]), gens[q.inverse(x)], tol);
    if (c(q.inverse(x)) != g.inv(c(x))) star.fail(q.arrow_id(x) + ": degree of the inverse");
    for (int y = 0; y < na; ++y) {
      const int xy = q.product(x, y);
      const Matrix prod = gens[x] * gens[y];
      if (xy < 0) {
        grading.add(q.arrow_id(x) + "·" + q.arrow_id(y), max_abs(prod), tol);
      } else {
        grading.add(q.arrow_id(x) + "·" + q.arrow_id(y), prod, gens[xy], tol);
        if (c(xy) != g.mul(c(x), c(y))) grading.fail(q.arrow_id(x) + "·" + q.arrow_id(y) + ": degree");
      }
    }
  }
  report.checks.push_back(grading.check);
  report.checks.push_back(star.check);
  return report;
}

IsomorphismCertificate certify_semi_cross(const FiniteGroupoid& r, const FiniteGroup& g, const GroupoidAction& a,
                                          std::uint64_t seed, const DualityOptions& options) {
  const int n = g.order();
  IsomorphismCertificate cert;
  cert.theorem = "C*(R⋊G) ≅ C*(R)⋊_βG";
  cert.source_name = "C*(R⋊G)";
  cert.target_name = "C*(R)⋊_βG";

  const FiniteGroupoid semi = semidirect_product(r, g, a);
  if (static_cast<Index>(semi.arrow_count()) > options.max_dim) {
    throw Error(ErrorCode::DimensionMismatch, "R⋊G exceeds the ambient cap");
  }
  const AlgebraSpan base = convolution_algebra(r);
  const ActionCrossedProduct acp = action_crossed_product(base, induced_action(r, g, a), false);
  cert.source_dim = semi.arrow_count();
  cert.target_dim = acp.span.dimension();
  for (const auto& arrow : semi.arrows()) cert.generator_labels.push_back("δ_" + arrow.id);
  if (!cert.dimensions_agree()) return cert;

  std::vector<Matrix> gens, images;
  for (int x = 0; x < static_cast<int>(r.arrow_count()); ++x) {
    for (int s = 0; s < n; ++s) {
      gens.push_back(regular_delta(semi, x * n + s));
      images.push_back(Matrix(acp.pi(regular_delta(r, x)) * acp.u(s)));
    }
  }
  cert.map = table_star_map(semi, gens, images, &acp.span, cert.generator_labels, options.tol);

  CheckAccumulator inverse_left("Ψ∘Φ = id on δ_(x,s)"), inverse_right("Φ∘Ψ = id"),
      convolution("Φ(f*g)(s) = Σ_t Φf(t)·β_t(Φg(t⁻¹s))");
  for (std::size_t k = 0; k < gens.size(); ++k) {
    inverse_left.add(cert.generator_labels[k], diff(psi_semidirect(r, g, acp, images[k]), delta_function(semi, static_cast<int>(k))),
                     options.exact_tol);
  }
  std::mt19937_64 rng(seed);
  const int na = static_cast<int>(r.arrow_count());
  auto section = [&](const ConvolutionElement& f, int s) {
    ConvolutionElement out(na);
    for (int x = 0; x < na; ++x) out[x] = f[x * n + s];
    return out;
  };
  auto beta = [&](int t, const ConvolutionElement& f) {
    ConvolutionElement out(na);
    for (int x = 0; x < na; ++x) out[a(t, x)] = f[x];
    return out;
  };
  for (int k = 0; k < 20; ++k) {
    const Matrix m = acp.span.random_element(rng);
    inverse_right.add("random element " + std::to_string(k), phi_semidirect(r, g, acp, psi_semidirect(r, g, acp, m)), m,
                      options.tol);
    const auto f = random_function(semi, rng);
    const auto h = random_function(semi, rng);
    const auto fh = convolve(semi, f, h);
    for (int s = 0; s < n; ++s) {
      ConvolutionElement expect(na, 0.0);
      for (int t = 0; t < n; ++t) {
        const auto term = convolve(r, section(f, t), beta(t, section(h, g.mul(g.inv(t), s))));
        for (int x = 0; x < na; ++x) expect[x] += term[x];
      }
      convolution.add("sample " + std::to_string(k) + ", s=" + g.name(s), diff(section(fh, s), expect), options.tol);
    }
  }
  cert.checks.push_back(inverse_left.check);
  cert.checks.push_back(inverse_right.check);
  cert.checks.push_back(convolution.check);

  if (options.signatures) add_signatures(cert, convolution_algebra(semi), acp.span);
  return cert;
}

IsomorphismCertificate certify_gpd_iso(const FiniteGroupoid& q, const FiniteGroup& g, const Cocycle& c,
                                       const DualityOptions& options) {
  const int n = g.order();
  const int na = static_cast<int>(q.arrow_count());
  IsomorphismCertificate cert;
  cert.theorem = "C*(Q)⋊_δG ≅ C*(Q×_cG)";
  cert.source_name = "C*(Q)⋊_δG";
  cert.target_name = "C*(Q×_cG)";

  const FiniteGroupoid skew = skew_product_groupoid(q, g, c);
  const auto reps = regular_representations(g);
  const Index amb = static_cast<Index>(na) * n;
  if (amb > options.max_dim) throw Error(ErrorCode::DimensionMismatch, "C*(Q)⋊_δG exceeds the ambient cap");

  // (L_x, t) = L_x ⊗ λ_{c(x)}χ_t, numbered x·|G| + t like the arrows of Q×_cG.
  std::vector<Matrix> L(na), elems, images;
  for (int x = 0; x < na; ++x) L[x] = regular_delta(q, x);
  AlgebraSpan cp(amb, Tolerances{}.accumulated, "C*(Q)⋊_δG");
  for (int x = 0; x < na; ++x) {
    for (int t = 0; t < n; ++t) {
      elems.push_back(kron(L[x], Matrix(reps.lambda[c(x)] * reps.chi[t])));
      cp.add(elems.back());
      images.push_back(regular_delta(skew, x * n + t));
      cert.generator_labels.push_back("(L_" + q.arrow_id(x) + "," + g.name(t) + ")");
    }
  }
  cp.set_generators(elems);
  cert.source_dim = cp.dimension();
  cert.target_dim = skew.arrow_count();

  // The spanning set is the closure of j_A and j_G.
  std::vector<Matrix> jgens;
  for (int x = 0; x < na; ++x) jgens.push_back(kron(L[x], reps.lambda[c(x)]));
  for (int t = 0; t < n; ++t) jgens.push_back(kron(identity_matrix(na), reps.chi[t]));
  ClosureOptions co;
  co.max_ambient_dim = options.max_dim;
  const AlgebraSpan closure = span_closure(jgens, co);
  cert.checks.push_back(flag("span{(L_x,t)} = C*(j_A(A) j_G(C(G)))", closure.dimension() == cp.dimension(),
                             std::to_string(closure.dimension()) + " vs " + std::to_string(cp.dimension())));

  CheckAccumulator mult("(f_s,tu)(g_t,u) = (f_s g_t,u)"), adj("(f_s,t)* = (f_s*,st)");
  for (int x = 0; x < na; ++x) {
    for (int t = 0; t < n; ++t) {
      const std::string lx = cert.generator_labels[x * n + t];
      adj.add(lx, adjoint(elems[x * n + t]), elems[q.inverse(x) * n + g.mul(c(x), t)], options.exact_tol);
      for (int y = 0; y < na; ++y) {
        for (int u = 0; u < n; ++u) {
          const Matrix prod = elems[x * n + t] * elems[y * n + u];
          const int xy = q.product(x, y);
          const std::string where = lx + "·" + cert.generator_labels[y * n + u];
          if (xy >= 0 && t == g.mul(c(y), u)) {
            mult.add(where, prod, elems[xy * n + u], options.exact_tol);
          } else {
            mult.add(where, max_abs(prod), options.exact_tol);
          }
        }
      }
    }
  }
  cert.checks.push_back(mult.check);
  cert.checks.push_back(adj.check);
  if (!cert.dimensions_agree()) return cert;

  const AlgebraSpan target = convolution_algebra(skew);
  cert.map = table_star_map(skew, elems, images, &target, cert.generator_labels, options.tol);

  // Ψ∘δ̂_s = β_s∘Ψ, with δ̂ = Ad(1⊗ρ_s) and β from s·(x,t) = (x,ts⁻¹).
  const AlgebraAction beta = induced_action(skew, g, skew_translation(q, g));
  const GroupoidAction transl = skew_translation(q, g);
  CheckAccumulator dual("δ̂_s(f,t) = (f,ts⁻¹)"), spatial("β_s(δ_(x,t)) = δ_(x,ts⁻¹)"), equiv("Ψ∘δ̂_s = β_s∘Ψ");
  for (int s = 0; s < n; ++s) {
    const Matrix w = kron(identity_matrix(na), reps.rho[s]);
    for (int k = 0; k < na * n; ++k) {
      const int moved = transl(s, k);
      const std::string where = cert.generator_labels[k] + ", s=" + g.name(s);
      const Matrix dk = pruned(Matrix(w * elems[k] * adjoint(w)));
      dual.add(where, dk, elems[moved], options.exact_tol);
      spatial.add(where, pruned(beta.apply(s, images[k])), images[moved], options.exact_tol);
      equiv.add(where, images[moved], pruned(beta.apply(s, images[k])), options.exact_tol);
    }
  }
  cert.checks.push_back(dual.check);
  cert.checks.push_back(spatial.check);
  cert.checks.push_back(equiv.check);

  for (auto& check : check_groupoid_coaction(q, g, c, options.exact_tol).checks) cert.checks.push_back(std::move(check));
  if (options.signatures) add_signatures(cert, cp, target);
  return cert;
}

GroupoidReport kernel_embedding_check(const FiniteGroupoid& q, const FiniteGroup& g, const Cocycle& c,
                                      std::uint64_t seed, int samples) {
  validate_cocycle(q, g, c);
  GroupoidReport report;
  std::vector<int> embed;
  const FiniteGroupoid nk = subgroupoid(q, kernel_arrows(q, g, c), &embed);
  const std::size_t size = q.arrow_count();
  const double tol = 1e-9;

  std::vector<Matrix> gens, images;
  for (std::size_t k = 0; k < embed.size(); ++k) {
    gens.push_back(regular_delta(nk, static_cast<int>(k)));
    images.push_back(regular_delta(q, embed[k]));
  }
  const StarMapReport map = table_star_map(nk, gens, images, nullptr, q_labels(nk), tol);
  report.checks.push_back(flag("i: C*(N) → C*(Q) is an injective *-homomorphism", map.homomorphism() && map.injective,
                               map.witness));

  CheckAccumulator products("i(δ_n δ_m) = i(δ_n) i(δ_m)");
  for (std::size_t k = 0; k < embed.size(); ++k) {
    for (std::size_t l = 0; l < embed.size(); ++l) {
      const auto lhs = extend(convolve(nk, delta_function(nk, static_cast<int>(k)), delta_function(nk, static_cast<int>(l))),
                              embed, size);
      const auto rhs = convolve(q, delta_function(q, embed[k]), delta_function(q, embed[l]));
      products.add(nk.arrow_id(static_cast<int>(k)) + "·" + nk.arrow_id(static_cast<int>(l)), diff(lhs, rhs), tol);
    }
  }
  report.checks.push_back(products.check);

  std::mt19937_64 rng(seed);
  CheckAccumulator expect("P_Q∘i = i∘P_N"), isometry("‖i(f)‖ = ‖f‖");
  for (int k = 0; k < samples; ++k) {
    const auto f = random_function(nk, rng);
    const auto fi = extend(f, embed, size);
    expect.add("sample " + std::to_string(k), diff(restrict_to_units(q, fi), extend(restrict_to_units(nk, f), embed, size)),
               tol);
    const double a = operator_norm(regular(nk, f)), b = operator_norm(regular(q, fi));
    isometry.add("sample " + std::to_string(k), std::abs(a - b) / std::max(1.0, a), 1e-7);
  }
  report.checks.push_back(expect.check);
  report.checks.push_back(isometry.check);
  return report;
}

GroupoidReport expectations_and_norm_identities(const FiniteGroupoid& r, const FiniteGroup& g,
                                                const GroupoidAction& a, std::uint64_t seed, int samples) {
  validate_action(r, g, a);
  GroupoidReport report;
  const int n = g.order();
  const int na = static_cast<int>(r.arrow_count());
  const FiniteGroupoid semi = semidirect_product(r, g, a);
  const AlgebraSpan base = convolution_algebra(r);
  const ActionCrossedProduct acp = action_crossed_product(base, induced_action(r, g, a), false);
  const double tol = 1e-9;
  std::mt19937_64 rng(seed);

  CheckAccumulator invariance("‖P_R β_s f‖ = sup_u |f(s⁻¹·u)| = ‖P_R f‖"),
      semi_norm("‖P_{R⋊G} b‖ = sup_u |b(u,e)| = ‖P_R P_{C*(R)⋊G} Φ(b)‖"),
      diagonal("‖λ(P_R f)‖ = sup_u |f(u)|");
  for (int k = 0; k < samples; ++k) {
    const std::string where = "sample " + std::to_string(k);
    const auto f = random_function(r, rng);
    const int s = static_cast<int>(rng() % n);
    ConvolutionElement bf(na);
    for (int x = 0; x < na; ++x) bf[a(s, x)] = f[x];
    double middle = 0.0;
    for (std::size_t u = 0; u < r.unit_count(); ++u) {
      const int moved = a(g.inv(s), r.unit_arrow(static_cast<int>(u)));
      middle = std::max(middle, std::abs(f[moved]));
    }
    const double lhs = sup_norm(restrict_to_units(r, bf)), rhs = sup_norm(restrict_to_units(r, f));
    invariance.add(where, std::max(std::abs(lhs - middle), std::abs(middle - rhs)), tol);
    diagonal.add(where, std::abs(operator_norm(regular(r, restrict_to_units(r, f))) - rhs), 1e-7);

    const auto b = random_function(semi, rng);
    const double p_semi = sup_norm(restrict_to_units(semi, b));
    double direct = 0.0;
    for (std::size_t u = 0; u < r.unit_count(); ++u) {
      direct = std::max(direct, std::abs(b[r.unit_arrow(static_cast<int>(u)) * n + g.identity()]));
    }
    const Matrix pb = conditional_expectation(acp, phi_semidirect(r, g, acp, b));
    const double routed = sup_norm(restrict_to_units(r, function_of(r, pb)));
    semi_norm.add(where, std::max(std::abs(p_semi - direct), std::abs(direct - routed)), tol);
  }
  report.checks.push_back(invariance.check);
  report.checks.push_back(diagonal.check);
  report.checks.push_back(semi_norm.check);

  const ExpectationReport er = check_conditional_expectation(base, acp, rng, samples);
  report.checks.push_back(flag("P_{C*(R)⋊G} is a faithful conditional expectation", er.passed(), er.witness));
  return report;
}

IsomorphismCertificate certify_full_groupoid(const FiniteGroupoid& q, const FiniteGroup& g, const Cocycle& c,
                                             const DualityOptions& options) {
  const int n = g.order();
  const int na = static_cast<int>(q.arrow_count());
  IsomorphismCertificate cert;
  cert.theorem = "C*(Q×_cG)⋊_βG ≅ C*(Q)⊗M_|G|";
  cert.source_name = "C*(Q×_cG)⋊_βG";
  cert.target_name = "C*(Q)⊗M_|G|";

  const FiniteGroupoid skew = skew_product_groupoid(q, g, c);
  if (static_cast<Index>(skew.arrow_count()) * n > options.max_dim) {
    throw Error(ErrorCode::DimensionMismatch, "C*(Q×_cG)⋊_βG exceeds the ambient cap");
  }
  const AlgebraSpan alg = convolution_algebra(skew);
  const ActionCrossedProduct acp = action_crossed_product(alg, induced_action(skew, g, skew_translation(q, g)), false);
  const AlgebraSpan target = tensor(convolution_algebra(q), full_matrix_algebra(n));
  cert.source_dim = acp.span.dimension();
  cert.target_dim = target.dimension();
  if (!cert.dimensions_agree()) return cert;

  // (Q×_cG)⋊G ≅ Q × (G×G) via ((x,s),t) ↦ (x, (c(x)s, st)).
  std::vector<Matrix> gens, images;
  for (int x = 0; x < na; ++x) {
    const Matrix lx = regular_delta(q, x);
    for (int s = 0; s < n; ++s) {
      for (int t = 0; t < n; ++t) {
        gens.push_back(Matrix(acp.pi(regular_delta(skew, x * n + s)) * acp.u(t)));
        images.push_back(kron(lx, matrix_unit(n, g.mul(c(x), s), g.mul(s, t))));
        cert.generator_labels.push_back("π(" + skew.arrow_id(x * n + s) + ")u_" + g.name(t));
      }
    }
  }
  const FiniteGroupoid semi = semidirect_product(skew, g, skew_translation(q, g));
  cert.map = table_star_map(semi, gens, images, &target, cert.generator_labels, options.tol);
  const bool dims = semi.arrow_count() == target.dimension();
  cert.checks.push_back(flag("dim C*((Q×_cG)⋊G) = |Q|·|G|²", dims,
                             std::to_string(semi.arrow_count()) + " vs " + std::to_string(target.dimension())));
  add_signatures(cert, acp.span, target);
  return cert;
}

EquivalenceBimodule make_equivalence(EquivalenceKind kind, const FiniteGroupoid& q, const FiniteGroup& g,
                                     const Cocycle& c) {
  const int n = g.order();
  const int na = static_cast<int>(q.arrow_count());
  const FiniteGroupoid skew = skew_product_groupoid(q, g, c);
  EquivalenceBimodule z;

  if (kind == EquivalenceKind::SkewSemidirect) {
    // Z = Q×_cG between (Q×_cG)⋊G and Q.
    z.left = semidirect_product(skew, g, skew_translation(q, g));
    z.right = q;
    const int nz = na * n;
    for (int k = 0; k < nz; ++k) z.carrier.push_back(skew.arrow_id(k));
    z.rho.resize(nz);
    z.sigma.resize(nz);
    for (int y = 0; y < na; ++y)
      for (int r = 0; r < n; ++r) {
        z.rho[y * n + r] = q.range(y) * n + g.mul(c(y), r);
        z.sigma[y * n + r] = q.source(y);
      }
    const int nl = static_cast<int>(z.left.arrow_count());
    z.left_action.assign(nl, std::vector<int>(nz, -1));
    for (int l = 0; l < nl; ++l) {
      const int x = l / (n * n), t = l % n;
      for (int y = 0; y < na; ++y)
        for (int r = 0; r < n; ++r) {
          if (z.left.source(l) != z.rho[y * n + r]) continue;
          // (x,s,t)(y,r) = (xy, rt⁻¹)
          z.left_action[l][y * n + r] = q.product(x, y) * n + g.mul(r, g.inv(t));
        }
    }
    z.right_action.assign(nz, std::vector<int>(na, -1));
    for (int y = 0; y < na; ++y)
      for (int r = 0; r < n; ++r)
        for (int w = 0; w < na; ++w) {
          const int yw = q.product(y, w);
          // (y,r)w = (yw, c(w)⁻¹r)
          if (yw >= 0) z.right_action[y * n + r][w] = yw * n + g.mul(g.inv(c(w)), r);
        }
    return z;
  }

  // Z = Q between H = {(x,c(y)) : s(x) = r(y)} ⊆ Q×_cG and N = c⁻¹(e).
  std::vector<std::vector<bool>> reach(q.unit_count(), std::vector<bool>(n, false));
  for (int y = 0; y < na; ++y) reach[q.range(y)][c(y)] = true;
  std::vector<int> h_arrows;
  for (int x = 0; x < na; ++x)
    for (int t = 0; t < n; ++t)
      if (reach[q.source(x)][t]) h_arrows.push_back(x * n + t);
  std::vector<int> h_embed, n_embed;
  z.left = subgroupoid(skew, h_arrows, &h_embed);
  z.right = subgroupoid(q, kernel_arrows(q, g, c), &n_embed);
  std::vector<int> h_unit(skew.unit_count(), -1);
  for (std::size_t k = 0; k < h_embed.size(); ++k) {
    if (z.left.is_unit(static_cast<int>(k))) h_unit[skew.source(h_embed[k])] = z.left.source(static_cast<int>(k));
  }
  std::vector<int> n_unit(q.unit_count(), -1);
  for (std::size_t k = 0; k < n_embed.size(); ++k) {
    if (z.right.is_unit(static_cast<int>(k))) n_unit[q.source(n_embed[k])] = z.right.source(static_cast<int>(k));
  }
  for (int y = 0; y < na; ++y) {
    z.carrier.push_back(q.arrow_id(y));
    z.rho.push_back(h_unit[q.range(y) * n + c(y)]);
    z.sigma.push_back(n_unit[q.source(y)]);
  }
  const int nl = static_cast<int>(z.left.arrow_count());
  z.left_action.assign(nl, std::vector<int>(na, -1));
  for (int l = 0; l < nl; ++l) {
    const int x = h_embed[l] / n;
    for (int y = 0; y < na; ++y) {
      // (x,t)y = xy when (s(x),t) = (r(y),c(y))
      if (z.left.source(l) == z.rho[y]) z.left_action[l][y] = q.product(x, y);
    }
  }
  const int nr = static_cast<int>(z.right.arrow_count());
  z.right_action.assign(na, std::vector<int>(nr, -1));
  for (int y = 0; y < na; ++y)
    for (int m = 0; m < nr; ++m) z.right_action[y][m] = q.product(y, n_embed[m]);
  return z;
}

GroupoidReport certify_equivalence(const EquivalenceBimodule& z) {
  GroupoidReport report;
  const auto& L = z.left;
  const auto& R = z.right;
  const int nz = static_cast<int>(z.carrier.size());
  const int nl = static_cast<int>(L.arrow_count());
  const int nr = static_cast<int>(R.arrow_count());

  CheckAccumulator defined("actions defined exactly on composable pairs"), moments("moment maps are equivariant"),
      units("units act trivially"), assoc_l("(l₁l₂)z = l₁(l₂z)"), assoc_r("z(y₁y₂) = (zy₁)y₂"),
      commute("(lz)y = l(zy)"), free_l("left action is free"), free_r("right action is free"),
      orbit_l("ρ(z) = ρ(z') ⇒ z' ∈ zR"), orbit_r("σ(z) = σ(z') ⇒ z' ∈ Lz"), surj("ρ and σ are onto");

  std::vector<bool> hit_l(L.unit_count(), false), hit_r(R.unit_count(), false);
  for (int k = 0; k < nz; ++k) {
    hit_l[z.rho[k]] = true;
    hit_r[z.sigma[k]] = true;
  }
  for (std::size_t u = 0; u < hit_l.size(); ++u)
    if (!hit_l[u]) surj.fail("left unit " + L.unit_name(static_cast<int>(u)) + " not in the image of ρ");
  for (std::size_t u = 0; u < hit_r.size(); ++u)
    if (!hit_r[u]) surj.fail("right unit " + R.unit_name(static_cast<int>(u)) + " not in the image of σ");

  for (int k = 0; k < nz; ++k) {
    const std::string& zk = z.carrier[k];
    if (z.left_action[L.unit_arrow(z.rho[k])][k] != k) units.fail(L.arrow_id(L.unit_arrow(z.rho[k])) + "·" + zk);
    if (z.right_action[k][R.unit_arrow(z.sigma[k])] != k) units.fail(zk + "·" + R.arrow_id(R.unit_arrow(z.sigma[k])));
    for (int l = 0; l < nl; ++l) {
      const int lz = z.left_action[l][k];
      const std::string where = L.arrow_id(l) + "·" + zk;
      if ((lz >= 0) != (L.source(l) == z.rho[k])) {
        defined.fail(where);
        continue;
      }
      if (lz < 0) continue;
      if (z.rho[lz] != L.range(l) || z.sigma[lz] != z.sigma[k]) moments.fail(where);
      if (lz == k && !L.is_unit(l)) free_l.fail(where);
      for (int l2 = 0; l2 < nl; ++l2) {
        const int l2l = L.product(l2, l);
        if (l2l < 0) continue;
        if (z.left_action[l2l][k] != z.left_action[l2][lz]) assoc_l.fail(L.arrow_id(l2) + "·" + where);
      }
      for (int y = 0; y < nr; ++y) {
        const int zy = z.right_action[k][y];
        if (zy < 0) continue;
        const int lzy = z.right_action[lz][y];
        if (lzy < 0 || z.left_action[l][zy] != lzy) commute.fail(where + "·" + R.arrow_id(y));
      }
    }
    for (int y = 0; y < nr; ++y) {
      const int zy = z.right_action[k][y];
      const std::string where = zk + "·" + R.arrow_id(y);
      if ((zy >= 0) != (z.sigma[k] == R.range(y))) {
        defined.fail(where);
        continue;
      }
      if (zy < 0) continue;
      if (z.sigma[zy] != R.source(y) || z.rho[zy] != z.rho[k]) moments.fail(where);
      if (zy == k && !R.is_unit(y)) free_r.fail(where);
      for (int y2 = 0; y2 < nr; ++y2) {
        const int yy2 = R.product(y, y2);
        if (yy2 < 0) continue;
        if (z.right_action[k][yy2] != z.right_action[zy][y2]) assoc_r.fail(where + "·" + R.arrow_id(y2));
      }
    }
    for (int k2 = 0; k2 < nz; ++k2) {
      if (z.rho[k] == z.rho[k2]) {
        bool found = false;
        for (int y = 0; y < nr && !found; ++y) found = z.right_action[k][y] == k2;
        if (!found) orbit_l.fail(zk + ", " + z.carrier[k2]);
      }
      if (z.sigma[k] == z.sigma[k2]) {
        bool found = false;
        for (int l = 0; l < nl && !found; ++l) found = z.left_action[l][k] == k2;
        if (!found) orbit_r.fail(zk + ", " + z.carrier[k2]);
      }
    }
  }
  for (auto* acc : {&surj, &defined, &moments, &units, &assoc_l, &assoc_r, &commute, &free_l, &free_r, &orbit_l, &orbit_r}) {
    report.checks.push_back(acc->check);
  }
  report.checks.push_back(flag("actions are proper (finite spaces)", true));
  return report;
}

GroupoidReport certify_equivalence(EquivalenceKind kind, const FiniteGroupoid& q, const FiniteGroup& g,
                                   const Cocycle& c) {
  return certify_equivalence(make_equivalence(kind, q, g, c));
}

NModule::NModule(const FiniteGroupoid& q, const FiniteGroup& g, const Cocycle& c) : q_(q), g_(g), c_(c) {
  validate_cocycle(q, g, c);
  n_ = subgroupoid(q, kernel_arrows(q, g, c), &embed_);
  restrict_.assign(q.arrow_count(), -1);
  for (std::size_t k = 0; k < embed_.size(); ++k) restrict_[embed_[k]] = static_cast<int>(k);
  const int n = g.order();
  const FiniteGroupoid skew = skew_product_groupoid(q, g, c);
  std::vector<std::vector<bool>> reach(q.unit_count(), std::vector<bool>(n, false));
  for (int y = 0; y < static_cast<int>(q.arrow_count()); ++y) reach[q.range(y)][c(y)] = true;
  std::vector<int> h_arrows;
  for (int x = 0; x < static_cast<int>(q.arrow_count()); ++x)
    for (int t = 0; t < n; ++t)
      if (reach[q.source(x)][t]) h_arrows.push_back(x * n + t);
  h_ = subgroupoid(skew, h_arrows, &h_embed_);
}

std::size_t NModule::y_choices(int m) const {
  const int u = q_.range(embed_[m]);
  std::size_t count = 0;
  for (int y = 0; y < static_cast<int>(q_.arrow_count()); ++y) count += q_.source(y) == u;
  return count;
}

ConvolutionElement NModule::inner_general(const ConvolutionElement& a, const ConvolutionElement& b,
                                          std::size_t y_choice) const {
  const int n = g_.order();
  const int na = static_cast<int>(q_.arrow_count());
  ConvolutionElement out(n_.arrow_count(), 0.0);
  for (std::size_t m = 0; m < embed_.size(); ++m) {
    const int nq = embed_[m];
    std::vector<int> ys;
    for (int y = 0; y < na; ++y)
      if (q_.source(y) == q_.range(nq)) ys.push_back(y);
    const int y = ys[y_choice % ys.size()];
    // ρ(y) = (r(y), c(y)); sum over (x,s) ∈ H with r(x,s) = ρ(y).
    for (std::size_t k = 0; k < h_embed_.size(); ++k) {
      const int x = h_embed_[k] / n, s = h_embed_[k] % n;
      if (q_.range(x) != q_.range(y) || g_.mul(c_(x), s) != c_(y)) continue;
      const int xy = q_.product(q_.inverse(x), y);  // (x,s)⁻¹y
      out[m] += std::conj(a[xy]) * b[q_.product(xy, nq)];
    }
  }
  return out;
}

ConvolutionElement NModule::component(const ConvolutionElement& a, GroupElement t) const {
  ConvolutionElement out(a.size(), 0.0);
  for (std::size_t x = 0; x < a.size(); ++x)
    if (c_(static_cast<int>(x)) == t) out[x] = a[x];
  return out;
}

ConvolutionElement NModule::inner_graded(const ConvolutionElement& a, const ConvolutionElement& b) const {
  ConvolutionElement sum(q_.arrow_count(), 0.0);
  for (int t = 0; t < g_.order(); ++t) {
    const auto term = convolve(q_, involution(q_, component(a, t)), component(b, t));
    for (std::size_t x = 0; x < sum.size(); ++x) sum[x] += term[x];
  }
  ConvolutionElement out(embed_.size());
  for (std::size_t m = 0; m < embed_.size(); ++m) out[m] = sum[embed_[m]];
  return out;
}

ConvolutionElement NModule::right_action(const ConvolutionElement& a, const ConvolutionElement& cn) const {
  ConvolutionElement out(q_.arrow_count(), 0.0);
  for (int x = 0; x < static_cast<int>(q_.arrow_count()); ++x) {
    for (std::size_t m = 0; m < embed_.size(); ++m) {
      const int nq = embed_[m];
      if (q_.range(nq) != q_.source(x)) continue;
      out[x] += a[q_.product(x, nq)] * cn[restrict_[q_.inverse(nq)]];
    }
  }
  return out;
}

Matrix NModule::represent(const ConvolutionElement& on_n) const { return regular(n_, on_n); }

GroupoidReport bimodule_inner_products(const FiniteGroupoid& q, const FiniteGroup& g, const Cocycle& c,
                                       const BimoduleOptions& options) {
  const NModule mod(q, g, c);
  const auto& nk = mod.n();
  const double tol = options.tol;
  std::mt19937_64 rng(options.seed);
  GroupoidReport report;

  CheckAccumulator formulas("general ⟨a,b⟩ = Σ_t a_t*b_t"), choice("⟨a,b⟩(n) independent of y"),
      support("Σ_t a_t*b_t is supported on N"), action("ac = a * i(c)"), hermitian("⟨a,b⟩* = ⟨b,a⟩"),
      linear("⟨a,bc⟩ = ⟨a,b⟩c"), adjointable("⟨ab,c⟩ = ⟨b,a*c⟩"), positive("⟨a,a⟩ ≥ 0"),
      gram("[⟨a_i,a_j⟩] ≥ 0"), bound("⟨ab,ab⟩ ≤ ‖a‖²⟨b,b⟩");

  for (int k = 0; k < options.samples; ++k) {
    const std::string where = "sample " + std::to_string(k);
    const auto a = random_function(q, rng);
    const auto b = random_function(q, rng);
    const auto cn = random_function(nk, rng);

    const auto general = mod.inner_general(a, b);
    const auto graded = mod.inner_graded(a, b);
    formulas.add(where, diff(general, graded), tol);
    std::size_t most = 1;
    for (std::size_t m = 0; m < nk.arrow_count(); ++m) most = std::max(most, mod.y_choices(static_cast<int>(m)));
    for (std::size_t yc = 1; yc < most; ++yc) choice.add(where + ", y choice " + std::to_string(yc), diff(mod.inner_general(a, b, yc), general), tol);

    ConvolutionElement full(q.arrow_count(), 0.0);
    for (int t = 0; t < g.order(); ++t) {
      const auto term = convolve(q, involution(q, mod.component(a, t)), mod.component(b, t));
      for (std::size_t x = 0; x < full.size(); ++x) full[x] += term[x];
    }
    double off = 0.0;
    for (std::size_t x = 0; x < full.size(); ++x)
      if (c(static_cast<int>(x)) != g.identity()) off = std::max(off, std::abs(full[x]));
    support.add(where, off, tol);

    action.add(where, diff(mod.right_action(a, cn), convolve(q, a, extend(cn, mod.embedding(), q.arrow_count()))), tol);
    hermitian.add(where, diff(involution(nk, general), mod.inner_graded(b, a)), tol);
    linear.add(where, diff(mod.inner_graded(a, mod.right_action(b, cn)), convolve(nk, graded, cn)), tol);

    const int s = static_cast<int>(rng() % g.order());
    const auto as = mod.component(random_function(q, rng), s);
    const auto cc = random_function(q, rng);
    adjointable.add(where + ", s=" + g.name(s),
                    diff(mod.inner_graded(convolve(q, as, b), cc), mod.inner_graded(b, convolve(q, involution(q, as), cc))),
                    tol);

    positive.add(where, std::max(0.0, -min_eigenvalue(mod.represent(mod.inner_graded(a, a)))), tol);

    const std::vector<ConvolutionElement> family{a, b, cc};
    const Index d = static_cast<Index>(nk.arrow_count());
    Matrix block_gram(3 * d, 3 * d);
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) {
        const Matrix e = matrix_unit(3, i, j);
        block_gram += kron(e, mod.represent(mod.inner_graded(family[i], family[j])));
      }
    gram.add(where, std::max(0.0, -min_eigenvalue(block_gram)), 1e-7);

    const double na2 = std::pow(operator_norm(regular(q, a)), 2);
    const auto ab = convolve(q, a, b);
    const Matrix gap = mod.represent(scaled(mod.inner_graded(b, b), na2)) - mod.represent(mod.inner_graded(ab, ab));
    const double scale = std::max(1.0, na2 * sup_norm(mod.inner_graded(b, b)));
    bound.add(where, std::max(0.0, -min_eigenvalue(gap)) / scale, 1e-7);
  }
  for (auto* acc : {&formulas, &choice, &support, &action, &hermitian, &linear, &adjointable, &positive, &gram, &bound}) {
    report.checks.push_back(acc->check);
  }
  return report;
}

}  // namespace skewcp
