#include "skewcp/duality.hpp"

#include <string>

#include "check_util.hpp"
#include "skewcp/errors.hpp"

namespace skewcp {

namespace {

using detail::CheckAccumulator;
using detail::add_signatures;
using detail::compare;

Check from_relations(std::string name, const CKRelationReport& r) {
  return Check{std::move(name), r.passed(), r.max_error, r.witness};
}

/// Letters of C*(E×_cG)⋊_γG: π̃(p_(v,r)), π̃(s_(f,r)), then ũ_t.
struct DirectSetting {
  DirectedGraph skew;
  CKFamily fam_e, fam_f;
  AlgebraSpan alg_e{1, 1e-7}, alg_f{1, 1e-7};
  AlgebraAction gamma;
  ActionCrossedProduct acp;
  RegularRepresentations reps;
  std::vector<Matrix> letters;
  std::vector<std::string> labels;
  std::vector<Matrix> theta;
};

DirectSetting build_direct(const DirectedGraph& e, const FiniteGroup& g, const Labeling& c, Index max_dim) {
  DirectSetting d;
  const int n = g.order();
  d.skew = skew_product(e, g, c);
  d.fam_e = ck_representation(e, max_dim);
  d.fam_f = ck_representation(d.skew, max_dim);
  d.alg_e = ck_algebra(d.fam_e);
  d.alg_f = ck_algebra(d.fam_f);
  d.gamma = AlgebraAction{g, path_space_unitaries(d.fam_f, g, translation_action(d.skew, g))};
  d.acp = action_crossed_product(d.alg_f, d.gamma, false);
  d.reps = d.acp.reps;

  const Matrix one_e = identity_matrix(d.fam_e.dimension());
  for (std::size_t k = 0; k < d.fam_f.p.size(); ++k) {
    const int v = static_cast<int>(k) / n, r = static_cast<int>(k) % n;
    d.letters.push_back(d.acp.pi(d.fam_f.p[k]));
    d.labels.push_back("p_" + d.skew.vertex_name(static_cast<int>(k)));
    d.theta.push_back(kron(d.fam_e.p[v], d.reps.chi[r]));
  }
  for (std::size_t k = 0; k < d.fam_f.s.size(); ++k) {
    const int f = static_cast<int>(k) / n, r = static_cast<int>(k) % n;
    d.letters.push_back(d.acp.pi(d.fam_f.s[k]));
    d.labels.push_back("s_" + d.skew.edge_id(static_cast<int>(k)));
    d.theta.push_back(kron(d.fam_e.s[f], Matrix(d.reps.lambda[c(f)] * d.reps.chi[r])));
  }
  for (int t = 0; t < n; ++t) {
    d.letters.push_back(d.acp.u(t));
    d.labels.push_back("u_" + g.name(t));
    d.theta.push_back(kron(one_e, d.reps.rho[t]));
  }
  return d;
}

/// Υ on the letters {p_v⊗χ_rρ_t, s_f⊗χ_rρ_t}, evaluated through any
/// assignment of the domain letters (the crossed product itself, or Θ of it).
struct Upsilon {
  std::vector<Matrix> y, u, w, t_f, q_v;
  std::vector<Matrix> images;  // indexed like target_letters
};

Upsilon full_upsilon(const DirectedGraph& e, const FiniteGroup& g, const Labeling& c,
                     const RegularRepresentations& reps, const std::vector<Matrix>& letters) {
  const int n = g.order();
  const int nv = static_cast<int>(e.vertex_count()), ne = static_cast<int>(e.edge_count());
  const Index dim = letters.front().rows();
  auto P = [&](int v, int r) -> const Matrix& { return letters[v * n + r]; };
  Upsilon up;
  for (int t = 0; t < n; ++t) up.u.push_back(letters[(nv + ne) * n + t]);
  for (int r = 0; r < n; ++r) {
    Matrix y(dim, dim);
    for (int v = 0; v < nv; ++v) y += P(v, r);
    up.y.push_back(std::move(y));
  }
  // (y×u)(T) = Σ_{a,b} T[a,ab] y_a u_b, as χ_aρ_b is the matrix unit e_{a,ab}.
  for (int t = 0; t < n; ++t) {
    Matrix w(dim, dim);
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b) {
        const Complex coeff = reps.lambda[t].coeff(a, g.mul(a, b));
        if (coeff != Complex(0.0)) w += coeff * Matrix(up.y[a] * up.u[b]);
      }
    up.w.push_back(std::move(w));
  }
  for (int v = 0; v < nv; ++v) {
    Matrix q(dim, dim);
    for (int r = 0; r < n; ++r) q += letters[v * n + r];
    up.q_v.push_back(std::move(q));
  }
  for (int f = 0; f < ne; ++f) {
    Matrix sum(dim, dim);
    for (int r = 0; r < n; ++r) sum += letters[nv * n + f * n + r];
    up.t_f.push_back(Matrix(sum * up.w[g.inv(c(f))]));
  }
  for (int v = 0; v < nv; ++v)
    for (int r = 0; r < n; ++r)
      for (int t = 0; t < n; ++t) up.images.push_back(pruned(Matrix(up.q_v[v] * up.y[r] * up.u[t])));
  for (int f = 0; f < ne; ++f)
    for (int r = 0; r < n; ++r)
      for (int t = 0; t < n; ++t) up.images.push_back(pruned(Matrix(up.t_f[f] * up.y[r] * up.u[t])));
  return up;
}

/// p_v⊗χ_rρ_t and s_f⊗χ_rρ_t, in the order used by Upsilon::images.
std::vector<Matrix> target_letters(const CKFamily& fam, const FiniteGroup& g, const RegularRepresentations& reps,
                                   std::vector<std::string>* labels) {
  std::vector<Matrix> out;
  const int n = g.order();
  auto unit = [&](int r, int t) { return Matrix(reps.chi[r] * reps.rho[t]); };
  for (std::size_t v = 0; v < fam.p.size(); ++v)
    for (int r = 0; r < n; ++r)
      for (int t = 0; t < n; ++t) {
        out.push_back(kron(fam.p[v], unit(r, t)));
        if (labels) labels->push_back("p_" + fam.graph.vertex_name(static_cast<int>(v)) + "⊗χ_" + g.name(r) + "ρ_" + g.name(t));
      }
  for (std::size_t f = 0; f < fam.s.size(); ++f)
    for (int r = 0; r < n; ++r)
      for (int t = 0; t < n; ++t) {
        out.push_back(kron(fam.s[f], unit(r, t)));
        if (labels) labels->push_back("s_" + fam.graph.edge_id(static_cast<int>(f)) + "⊗χ_" + g.name(r) + "ρ_" + g.name(t));
      }
  return out;
}

}  // namespace

bool IsomorphismCertificate::passed() const { return failure().empty(); }

std::string IsomorphismCertificate::failure() const {
  if (!dimensions_agree()) {
    return "dimension mismatch: " + std::to_string(source_dim) + " vs " + std::to_string(target_dim);
  }
  if (!map.well_defined) return "not well defined: " + map.witness;
  if (!map.homomorphism()) return "not a *-homomorphism: " + map.witness;
  if (!map.injective) return "not injective: " + map.witness;
  if (!map.surjective) return "not surjective: " + map.witness;
  for (const Check& c : checks)
    if (!c.passed) return c.name + ": " + c.witness;
  return {};
}

void require(const IsomorphismCertificate& cert) {
  if (!cert.passed()) throw Error(ErrorCode::CertificationFailed, cert.theorem + ": " + cert.failure());
}

IsomorphismCertificate certify_eqvt_iso(const DirectedGraph& e, const FiniteGroup& g, const Labeling& c,
                                        const DualityOptions& options) {
  const int n = g.order();
  IsomorphismCertificate cert;
  cert.theorem = "C*(E×_cG) ≅ C*(E)⋊_δG";
  cert.source_name = "C*(E×_cG)";
  cert.target_name = "C*(E)⋊_δG";

  const DirectedGraph skew = skew_product(e, g, c);
  const CKFamily fam_f = ck_representation(skew, options.max_dim);
  const CKFamily fam_e = ck_representation(e, options.max_dim);
  const RepresentedCoaction delta = coaction(fam_e, g, c);
  const CoactionCrossedProduct cp = coaction_crossed_product(fam_e, delta);

  cert.source_dim = expected_ck_dimension(skew);
  cert.target_dim = cp.span.dimension();
  cert.generator_labels = fam_f.generator_labels();
  if (!cert.dimensions_agree()) return cert;

  std::vector<Matrix> images;
  std::vector<Matrix> s_img, p_img;
  for (std::size_t k = 0; k < fam_f.p.size(); ++k) {
    p_img.push_back(cp.element(fam_e.p[k / n], g.identity(), static_cast<int>(k % n)));
  }
  for (std::size_t k = 0; k < fam_f.s.size(); ++k) {
    const int f = static_cast<int>(k) / n;
    s_img.push_back(cp.element(fam_e.s[f], c(f), static_cast<int>(k % n)));
  }
  images = p_img;
  images.insert(images.end(), s_img.begin(), s_img.end());

  cert.checks.push_back(from_relations("Φ-images form a nondegenerate E×_cG-family",
                                       check_ck_relations(skew, s_img, p_img, options.exact_tol)));

  StarMapOptions sm;
  sm.tol = options.tol;
  sm.split_checks = options.split_checks;
  sm.target = &cp.span;
  sm.labels = cert.generator_labels;
  const auto gens = fam_f.generators();
  cert.map = check_star_map(gens, images, sm);

  // Φ∘γ_r = δ̂_r∘Φ, with γ given both by its cell formula and spatially.
  const GraphAction transl = translation_action(skew, g);
  const auto unitaries = path_space_unitaries(fam_f, g, transl);
  const AlgebraAction dual = dual_action(cp);
  CheckAccumulator equiv("Φ∘γ_r = δ̂_r∘Φ"), spatial("γ_r(s_(f,t)) = s_(f,tr⁻¹) on path space");
  const std::size_t nvf = fam_f.p.size();
  for (int r = 0; r < n; ++r) {
    for (std::size_t k = 0; k < gens.size(); ++k) {
      const bool is_edge = k >= nvf;
      const int cell = static_cast<int>(is_edge ? k - nvf : k);
      const std::size_t moved = is_edge ? nvf + transl.edge(r, cell) : transl.vertex(r, cell);
      const std::string where = cert.generator_labels[k] + ", r=" + g.name(r);
      equiv.add(where, images[moved], dual.apply(r, images[k]), options.exact_tol);
      spatial.add(where, gens[moved], pruned(Matrix(unitaries[r] * gens[k] * adjoint(unitaries[r]))), options.exact_tol);
    }
  }
  cert.checks.push_back(spatial.check);
  cert.checks.push_back(equiv.check);

  if (options.signatures) {
    const AlgebraSpan alg_f = ck_algebra(fam_f);
    add_signatures(cert, alg_f, cp.span);
  }
  return cert;
}

IsomorphismCertificate certify_direct_iso(const DirectedGraph& e, const FiniteGroup& g, const Labeling& c,
                                          const DualityOptions& options) {
  const int n = g.order();
  IsomorphismCertificate cert;
  cert.theorem = "C*(E×_cG)⋊_γG ≅ C*(E)⊗M_|G|";
  cert.source_name = "C*(E×_cG)⋊_γG";
  cert.target_name = "C*(E)⊗M_|G|";

  DirectSetting d = build_direct(e, g, c, options.max_dim);
  const AlgebraSpan target = tensor(d.alg_e, full_matrix_algebra(n));
  cert.source_dim = d.acp.span.dimension();
  cert.target_dim = target.dimension();
  cert.generator_labels = d.labels;

  const std::size_t expected = d.alg_e.dimension() * static_cast<std::size_t>(n * n);
  cert.checks.push_back(Check{"dim C*(E×_cG)⋊G = dim C*(E)·|G|²", cert.source_dim == expected, 0.0,
                              std::to_string(cert.source_dim) + " vs " + std::to_string(expected)});
  if (!cert.dimensions_agree()) return cert;

  StarMapOptions sm;
  sm.tol = options.tol;
  sm.split_checks = options.split_checks;
  sm.target = &target;
  sm.labels = d.labels;
  cert.map = check_star_map(d.letters, d.theta, sm);

  const std::size_t nvf = d.fam_f.p.size(), nef = d.fam_f.s.size();
  {
    std::vector<Matrix> tp(d.theta.begin(), d.theta.begin() + nvf);
    std::vector<Matrix> ts(d.theta.begin() + nvf, d.theta.begin() + nvf + nef);
    cert.checks.push_back(
        from_relations("Θ-images form an E×_cG-family", check_ck_relations(d.skew, ts, tp, options.exact_tol)));
  }

  // Υ inside the crossed product, and the identities it must satisfy there.
  const Upsilon up = full_upsilon(e, g, c, d.reps, d.letters);
  cert.checks.push_back(
      from_relations("{t_f, q_v} form a nondegenerate E-family", check_ck_relations(e, up.t_f, up.q_v, options.tol)));
  {
    CheckAccumulator cov("u_t y_r = y_{rt⁻¹} u_t");
    for (int t = 0; t < n; ++t)
      for (int r = 0; r < n; ++r)
        cov.add("r=" + g.name(r) + ", t=" + g.name(t), Matrix(up.u[t] * up.y[r]),
                Matrix(up.y[g.mul(r, g.inv(t))] * up.u[t]), options.tol);
    cert.checks.push_back(cov.check);
  }
  {
    CheckAccumulator closed("Υ(s_f⊗χ_rρ_t) = s_(f,c(f)⁻¹r) u_t w_{c(f)⁻¹}");
    const int nv = static_cast<int>(e.vertex_count());
    for (int f = 0; f < static_cast<int>(e.edge_count()); ++f)
      for (int r = 0; r < n; ++r)
        for (int t = 0; t < n; ++t) {
          const GroupElement ci = g.inv(c(f));
          const Matrix& s = d.letters[nvf + static_cast<std::size_t>(f * n + g.mul(ci, r))];
          const Matrix formula = s * up.u[t] * up.w[ci];
          closed.add(e.edge_id(f) + ", r=" + g.name(r) + ", t=" + g.name(t), formula,
                     up.images[static_cast<std::size_t>(nv * n * n + (f * n + r) * n + t)], options.tol);
        }
    cert.checks.push_back(closed.check);
  }

  // Θ∘Υ = id on the target letters: Υ evaluated through Θ.
  std::vector<std::string> target_labels;
  const auto tl = target_letters(d.fam_e, g, d.reps, &target_labels);
  {
    const Upsilon through_theta = full_upsilon(e, g, c, d.reps, d.theta);
    CheckAccumulator acc("Θ∘Υ = id");
    for (std::size_t k = 0; k < tl.size(); ++k) acc.add(target_labels[k], through_theta.images[k], tl[k], options.tol);
    cert.checks.push_back(acc.check);
  }
  // Υ∘Θ = id on the domain letters: expand Θ(x) in the target letters.
  {
    CheckAccumulator acc("Υ∘Θ = id");
    const int nv = static_cast<int>(e.vertex_count());
    const Index dim = d.letters.front().rows();
    // kind 0: p_cell ⊗ T, kind 1: s_cell ⊗ T, kind 2: 1 ⊗ T = Σ_v p_v ⊗ T.
    auto expand = [&](int kind, int cell, const Matrix& group_part) {
      Matrix out(dim, dim);
      for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) {
          const Complex coeff = group_part.coeff(a, g.mul(a, b));
          if (coeff == Complex(0.0)) continue;
          if (kind == 0) {
            out += coeff * up.images[static_cast<std::size_t>((cell * n + a) * n + b)];
          } else if (kind == 1) {
            out += coeff * up.images[static_cast<std::size_t>(nv * n * n + (cell * n + a) * n + b)];
          } else {
            for (int v = 0; v < nv; ++v) out += coeff * up.images[static_cast<std::size_t>((v * n + a) * n + b)];
          }
        }
      return out;
    };
    for (std::size_t k = 0; k < d.letters.size(); ++k) {
      Matrix back;
      if (k < nvf) {
        back = expand(0, static_cast<int>(k) / n, d.reps.chi[k % n]);
      } else if (k < nvf + nef) {
        const int j = static_cast<int>(k - nvf), f = j / n, r = j % n;
        back = expand(1, f, Matrix(d.reps.lambda[c(f)] * d.reps.chi[r]));
      } else {
        back = expand(2, 0, d.reps.rho[k - nvf - nef]);
      }
      acc.add(d.labels[k], back, d.letters[k], options.tol);
    }
    cert.checks.push_back(acc.check);
  }

  if (options.signatures) add_signatures(cert, d.acp.span, target);
  return cert;
}

bool DiagramReport::passed() const {
  if (!dimension_preserved) return false;
  for (const Check& c : generators)
    if (!c.passed) return false;
  return true;
}

DiagramReport certify_regular_diagram(const DirectedGraph& e, const FiniteGroup& g, const Labeling& c,
                                      const DualityOptions& options) {
  const int n = g.order();
  DiagramReport report;
  DirectSetting d = build_direct(e, g, c, options.max_dim);
  const RepresentedCoaction delta = coaction(d.fam_e, g, c);
  const CoactionCrossedProduct cp = coaction_crossed_product(d.fam_e, delta);
  const AlgebraAction dual = dual_action(cp);

  // Letters of C*(E)⋊_δG: j_A(p_v), j_A(s_f), then j_G(χ_r).
  const int nv = static_cast<int>(e.vertex_count()), ne = static_cast<int>(e.edge_count());
  auto ja = [&](int k) { return WordPolynomial::letter(k); };
  auto jg = [&](int r) { return WordPolynomial::letter(nv + ne + r); };
  // Φ on the graph generators, as words in those letters.
  std::vector<WordPolynomial> phi;
  for (int v = 0; v < nv; ++v)
    for (int r = 0; r < n; ++r) phi.push_back(ja(v) * jg(r));
  for (int f = 0; f < ne; ++f)
    for (int r = 0; r < n; ++r) phi.push_back(ja(nv + f) * jg(r));

  // Katayama composite: j_A(a) ↦ (id⊗λ)δ(a), j_G(χ_r) ↦ 1⊗M(χ_r).
  std::vector<Matrix> katayama = delta.images();
  std::vector<Matrix> realized = delta.images();
  const Matrix one = identity_matrix(d.fam_e.dimension());
  for (int r = 0; r < n; ++r) {
    katayama.push_back(kron(one, d.reps.chi[r]));
    realized.push_back(cp.j_g(r));
  }
  const Index dim = one.rows() * n;

  for (std::size_t k = 0; k < phi.size(); ++k) {
    const Matrix via_phi = phi[k].evaluate(realized, dim);
    Check chk = compare(d.labels[k], phi[k].evaluate(katayama, dim), d.theta[k], options.exact_tol);
    // Φ's image must be the crossed-product element it is declared to be.
    const int cell = static_cast<int>(k < static_cast<std::size_t>(nv * n) ? k : k - nv * n);
    const Matrix declared = k < static_cast<std::size_t>(nv * n)
                                ? cp.element(d.fam_e.p[cell / n], g.identity(), cell % n)
                                : cp.element(d.fam_e.s[cell / n], c(cell / n), cell % n);
    const double err = max_abs_diff(via_phi, declared);
    chk.max_error = std::max(chk.max_error, err);
    if (err > options.exact_tol) {
      chk.passed = false;
      chk.witness = "Φ-image differs from (a,r)";
    } else if (!chk.passed) {
      chk.witness = "Katayama route differs from Θ";
    }
    report.generators.push_back(std::move(chk));
  }
  // u_t ↦ i_G(t) ↦ 1⊗ρ_t: the dual-action unitary against Θ(u_t).
  for (int t = 0; t < n; ++t) {
    const std::size_t k = d.letters.size() - n + t;
    Check chk = compare(d.labels[k], dual.unitaries[t], d.theta[k], options.exact_tol);
    if (!chk.passed) chk.witness = "1⊗ρ_t differs from Θ(u_t)";
    report.generators.push_back(std::move(chk));
  }

  const auto acr = check_action_crossed_product(d.alg_f, d.acp, options.exact_tol);
  report.crossed_dim = acr.dim;
  report.expected_dim = acr.expected_dim;
  report.dimension_preserved = acr.passed();
  for (const Check& chk : report.generators)
    if (!chk.passed && report.witness.empty()) report.witness = chk.name + ": " + chk.witness;
  if (!report.dimension_preserved && report.witness.empty()) report.witness = acr.witness;
  return report;
}

IsomorphismCertificate certify_free_action(const DirectedGraph& f, const FiniteGroup& g, const GraphAction& action,
                                           const DualityOptions& options) {
  const GrossTucker gt = quotient_and_gross_tucker(f, g, action);
  const DirectedGraph skew = skew_product(gt.quotient, g, gt.labeling);
  const CKFamily fam_f = ck_representation(f, options.max_dim);
  const CKFamily fam_s = ck_representation(skew, options.max_dim);

  // Transport along F ≅ (F/G)×_cG, checked at the algebra level.
  const Matrix w = path_space_transport(fam_s, fam_f, gt.iso);
  const auto beta = path_space_unitaries(fam_f, g, action);
  const auto gamma = path_space_unitaries(fam_s, g, translation_action(skew, g));
  CheckAccumulator transport("transport carries generators"), equiv("transport intertwines γ and β"),
      beta_rule("β_t(s_f) = s_{t·f}");
  for (std::size_t v = 0; v < fam_s.p.size(); ++v) {
    transport.add("p_" + skew.vertex_name(static_cast<int>(v)), Matrix(w * fam_s.p[v] * adjoint(w)),
                  fam_f.p[gt.iso.vertex_map[v]], options.exact_tol);
  }
  for (std::size_t k = 0; k < fam_s.s.size(); ++k) {
    transport.add("s_" + skew.edge_id(static_cast<int>(k)), Matrix(w * fam_s.s[k] * adjoint(w)),
                  fam_f.s[gt.iso.edge_map[k]], options.exact_tol);
  }
  for (int t = 0; t < g.order(); ++t) {
    equiv.add("t=" + g.name(t), Matrix(w * gamma[t] * adjoint(w)), beta[t], options.exact_tol);
    for (std::size_t k = 0; k < fam_f.s.size(); ++k) {
      beta_rule.add("s_" + f.edge_id(static_cast<int>(k)) + ", t=" + g.name(t),
                    Matrix(beta[t] * fam_f.s[k] * adjoint(beta[t])), fam_f.s[action.edge(t, static_cast<int>(k))],
                    options.exact_tol);
    }
  }

  DualityOptions inner = options;
  inner.signatures = false;
  IsomorphismCertificate cert = certify_direct_iso(gt.quotient, g, gt.labeling, inner);
  cert.theorem = "C*(F)⋊_βG ≅ C*(F/G)⊗M_|G|";
  cert.source_name = "C*(F)⋊_βG";
  cert.target_name = "C*(F/G)⊗M_|G|";
  cert.checks.insert(cert.checks.begin(), {transport.check, equiv.check, beta_rule.check});

  // Signatures computed on C*(F)⋊_βG itself, not on the transported model.
  const AlgebraSpan alg_f = ck_algebra(fam_f);
  const ActionCrossedProduct acp = action_crossed_product(alg_f, AlgebraAction{g, beta}, false);
  const AlgebraSpan target = tensor(ck_algebra(ck_representation(gt.quotient, options.max_dim)),
                                    full_matrix_algebra(g.order()));
  const bool dims = acp.span.dimension() == target.dimension();
  cert.checks.push_back(Check{"dim C*(F)⋊_βG = dim C*(F/G)·|G|²", dims, 0.0,
                              std::to_string(acp.span.dimension()) + " vs " + std::to_string(target.dimension())});
  add_signatures(cert, acp.span, target);
  return cert;
}

}  // namespace skewcp
