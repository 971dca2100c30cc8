#include "skewcp/crossed.hpp"

#include <limits>
#include <string>

#include "skewcp/errors.hpp"

namespace skewcp {

Matrix CoactionCrossedProduct::element(const Matrix& a_t, GroupElement t, GroupElement u) const {
  return kron(a_t, Matrix(reps.lambda[t] * reps.chi[u]));
}

Matrix CoactionCrossedProduct::j_a(const Matrix& a_t, GroupElement t) const { return kron(a_t, reps.lambda[t]); }

Matrix CoactionCrossedProduct::j_g(GroupElement u) const { return kron(identity_matrix(base_dim), reps.chi[u]); }

std::size_t CoactionCrossedProduct::expected_dimension() const {
  return graded.total_dimension() * static_cast<std::size_t>(group.order());
}

CoactionCrossedProduct coaction_crossed_product(const CKFamily& family, const RepresentedCoaction& delta) {
  CoactionCrossedProduct cp;
  cp.group = delta.group;
  cp.reps = delta.reps;
  cp.base_dim = family.dimension();
  cp.graded = spectral_subspaces(family, delta.group, delta.labeling);
  cp.span = AlgebraSpan(cp.base_dim * cp.group.order(), Tolerances{}.accumulated, "C*(E)⋊G");
  for (int t = 0; t < cp.group.order(); ++t)
    for (const Matrix& a : cp.graded.components[t])
      for (int u = 0; u < cp.group.order(); ++u) cp.span.add(cp.element(a, t, u));
  return cp;
}

CrossedProductReport check_crossed_product(const CKFamily& family, const RepresentedCoaction& delta,
                                           const CoactionCrossedProduct& cp, double tol) {
  const FiniteGroup& g = cp.group;
  const int ng = g.order();
  CrossedProductReport r;
  r.expected_dim = cp.expected_dimension();
  r.span_dim = cp.span.dimension();

  struct Spanning {
    const Matrix* a;
    GroupElement t, u;
    Matrix m;
  };
  std::vector<Spanning> elems;
  for (int t = 0; t < ng; ++t)
    for (const Matrix& a : cp.graded.components[t])
      for (int u = 0; u < ng; ++u) elems.push_back({&a, t, u, cp.element(a, t, u)});

  r.multiplication_rule = r.adjoint_rule = true;
  auto note = [&](double err, bool& flag, const std::string& what) {
    r.max_error = std::max(r.max_error, err);
    if (err > tol && flag) {
      flag = false;
      if (r.witness.empty()) r.witness = what;
    }
  };
  for (const auto& x : elems) {
    note(max_abs_diff(adjoint(x.m), cp.element(adjoint(*x.a), g.inv(x.t), g.mul(x.t, x.u))), r.adjoint_rule,
         "(a_t,u)* != (a_t*, tu) at t=" + g.name(x.t) + ", u=" + g.name(x.u));
    for (const auto& y : elems) {
      const Matrix lhs = x.m * y.m;
      if (x.u == g.mul(y.t, y.u)) {
        note(max_abs_diff(lhs, cp.element(Matrix(*x.a * *y.a), g.mul(x.t, y.t), y.u)), r.multiplication_rule,
             "(a_r,tu)(a_t,u) != (a_r a_t,u) at u=" + g.name(y.u));
      } else {
        note(max_abs(lhs), r.multiplication_rule, "(a_r,s)(a_t,u) != 0 with s != tu");
      }
    }
  }

  std::vector<Matrix> gens;
  for (const Matrix& d : delta.images()) gens.push_back(d);  // j_A(p_v), j_A(s_f) = δ images
  for (int u = 0; u < ng; ++u) gens.push_back(cp.j_g(u));
  ClosureOptions opts;
  opts.max_ambient_dim = 2 * kMaxAmbientDim;
  const AlgebraSpan closure = span_closure(gens, opts);
  r.closure_dim = closure.dimension();
  bool inside = true;
  for (const auto& x : elems) {
    if (!closure.contains(x.m)) {
      inside = false;
      break;
    }
  }
  (void)family;
  r.dimension = inside && r.span_dim == r.expected_dim && r.closure_dim == r.expected_dim;
  if (!r.dimension && r.witness.empty()) {
    r.witness = "spanning set dim " + std::to_string(r.span_dim) + ", generated dim " +
                std::to_string(r.closure_dim) + ", expected " + std::to_string(r.expected_dim);
  }
  return r;
}

Matrix AlgebraAction::apply(GroupElement t, const Matrix& a) const {
  return pruned(Matrix(unitaries[t] * a * adjoint(unitaries[t])));
}

ActionReport validate_action(const AlgebraSpan& a, const AlgebraAction& act, bool full, double tol) {
  ActionReport r;
  const FiniteGroup& g = act.group;
  const Index n = a.ambient_dim();
  if (static_cast<int>(act.unitaries.size()) != g.order()) {
    r.witness = "expected one unitary per group element";
    return r;
  }
  r.unitary = true;
  for (int t = 0; t < g.order() && r.unitary; ++t) {
    const Matrix& u = act.unitaries[t];
    if (u.rows() != n || u.cols() != n || max_abs_diff(Matrix(adjoint(u) * u), identity_matrix(n)) > tol) {
      r.unitary = false;
      r.witness = "U_" + g.name(t) + " is not a unitary on the ambient space";
    }
  }
  if (!r.unitary) return r;

  r.homomorphism = max_abs_diff(act.unitaries[g.identity()], identity_matrix(n)) <= tol;
  for (int s = 0; s < g.order() && r.homomorphism; ++s)
    for (int t = 0; t < g.order(); ++t) {
      if (max_abs_diff(Matrix(act.unitaries[s] * act.unitaries[t]), act.unitaries[g.mul(s, t)]) > tol) {
        r.homomorphism = false;
        r.witness = "U_" + g.name(s) + " U_" + g.name(t) + " != U_" + g.name(g.mul(s, t));
        break;
      }
    }

  const auto& gens = a.generators().empty() ? a.basis() : a.generators();
  r.preserves = true;
  for (int t = 0; t < g.order() && r.preserves; ++t)
    for (std::size_t i = 0; i < gens.size(); ++i)
      if (!a.contains(act.apply(t, gens[i]))) {
        r.preserves = false;
        if (r.witness.empty()) r.witness = "γ_" + g.name(t) + " moves generator " + std::to_string(i) + " out of the algebra";
        break;
      }

  r.automorphisms = r.preserves;
  if (full && r.preserves) {
    for (int t = 0; t < g.order() && r.automorphisms; ++t) {
      std::vector<Matrix> images;
      for (const Matrix& x : gens) images.push_back(act.apply(t, x));
      StarMapOptions opts;
      opts.split_checks = false;
      opts.target = &a;
      const auto rep = check_star_map(gens, images, opts);
      if (!rep.passed()) {
        r.automorphisms = false;
        if (r.witness.empty()) r.witness = "γ_" + g.name(t) + ": " + rep.witness;
      }
    }
  }
  return r;
}

AlgebraAction dual_action(const CoactionCrossedProduct& cp) {
  AlgebraAction act{cp.group, {}};
  const Matrix one = identity_matrix(cp.base_dim);
  for (int s = 0; s < cp.group.order(); ++s) act.unitaries.push_back(kron(one, cp.reps.rho[s]));
  return act;
}

DualActionReport check_dual_action(const CoactionCrossedProduct& cp, const AlgebraAction& dual, double tol) {
  const FiniteGroup& g = cp.group;
  DualActionReport r;
  r.permutation_rule = true;
  for (int t = 0; t < g.order() && r.permutation_rule; ++t)
    for (const Matrix& a : cp.graded.components[t])
      for (int u = 0; u < g.order(); ++u)
        for (int s = 0; s < g.order(); ++s) {
          const Matrix moved = dual.apply(s, cp.element(a, t, u));
          if (max_abs_diff(moved, cp.element(a, t, g.mul(u, g.inv(s)))) > tol) {
            if (r.permutation_rule) r.witness = "δ̂_" + g.name(s) + "(a_t," + g.name(u) + ") != (a_t, us⁻¹)";
            r.permutation_rule = false;
          }
        }
  r.action = validate_action(cp.span, dual, false, tol);
  if (r.witness.empty()) r.witness = r.action.witness;
  return r;
}

Matrix ActionCrossedProduct::pi(const Matrix& a) const {
  const FiniteGroup& g = action.group;
  Matrix out(base_dim * g.order(), base_dim * g.order());
  for (int t = 0; t < g.order(); ++t) out += kron(action.apply(g.inv(t), a), reps.chi[t]);
  return out;
}

Matrix ActionCrossedProduct::u(GroupElement s) const { return kron(identity_matrix(base_dim), reps.lambda[s]); }

ActionCrossedProduct action_crossed_product(const AlgebraSpan& a, const AlgebraAction& act, bool validate_fully) {
  const auto check = validate_action(a, act, validate_fully);
  if (!check.passed()) throw Error(ErrorCode::ActionInvalid, check.witness);
  ActionCrossedProduct cp;
  cp.action = act;
  cp.reps = regular_representations(act.group);
  cp.base_dim = a.ambient_dim();
  cp.base_algebra_dim = a.dimension();
  const auto& gens = a.generators().empty() ? a.basis() : a.generators();
  for (const Matrix& x : gens) cp.generators.push_back(cp.pi(x));
  for (int s = 0; s < act.group.order(); ++s) cp.generators.push_back(cp.u(s));
  // Covariance makes span{π̃(b)ũ_s} an algebra, so no closure is needed.
  cp.span = AlgebraSpan(cp.base_dim * act.group.order(), Tolerances{}.accumulated,
                        (a.name().empty() ? std::string("A") : a.name()) + "⋊G");
  for (const Matrix& b : a.basis())
    for (int s = 0; s < act.group.order(); ++s) cp.span.add(Matrix(cp.pi(b) * cp.u(s)));
  cp.span.set_generators(cp.generators);
  return cp;
}

ActionCrossedReport check_action_crossed_product(const AlgebraSpan& a, const ActionCrossedProduct& cp, double tol) {
  const FiniteGroup& g = cp.action.group;
  ActionCrossedReport r;
  r.dim = cp.span.dimension();
  r.expected_dim = a.dimension() * static_cast<std::size_t>(g.order());
  r.dimension = r.dim == r.expected_dim;
  if (!r.dimension) r.witness = "dim " + std::to_string(r.dim) + " != dim A · |G| = " + std::to_string(r.expected_dim);
  r.covariance = true;
  const auto& gens = a.generators().empty() ? a.basis() : a.generators();
  for (int s = 0; s < g.order() && r.covariance; ++s)
    for (const Matrix& x : gens) {
      const Matrix lhs = cp.u(s) * cp.pi(x) * adjoint(cp.u(s));
      if (max_abs_diff(lhs, cp.pi(cp.action.apply(s, x))) > tol) {
        r.covariance = false;
        if (r.witness.empty()) r.witness = "covariance fails for ũ_" + g.name(s);
        break;
      }
    }
  return r;
}

Matrix block(const Matrix& x, Index n, int group_order, int g, int h) {
  std::vector<Eigen::Triplet<Complex>> trip;
  for (Index k = 0; k < x.outerSize(); ++k)
    for (Matrix::InnerIterator it(x, k); it; ++it) {
      if (it.row() % group_order == g && it.col() % group_order == h) {
        trip.emplace_back(it.row() / group_order, it.col() / group_order, it.value());
      }
    }
  Matrix out(n, n);
  out.setFromTriplets(trip.begin(), trip.end());
  return out;
}

std::vector<Matrix> crossed_coefficients(const ActionCrossedProduct& cp, const Matrix& x) {
  if (!cp.span.contains(x)) throw Error(ErrorCode::NotInSpan, "element is not in the crossed product");
  const FiniteGroup& g = cp.action.group;
  std::vector<Matrix> out;
  for (int s = 0; s < g.order(); ++s) out.push_back(block(x, cp.base_dim, g.order(), g.identity(), g.inv(s)));
  return out;
}

Matrix conditional_expectation(const ActionCrossedProduct& cp, const Matrix& x) {
  if (!cp.span.contains(x)) throw Error(ErrorCode::NotInSpan, "element is not in the crossed product");
  const GroupElement e = cp.action.group.identity();
  return block(x, cp.base_dim, cp.action.group.order(), e, e);
}

ExpectationReport check_conditional_expectation(const AlgebraSpan& a, const ActionCrossedProduct& cp,
                                                std::mt19937_64& rng, int samples, double tol) {
  const FiniteGroup& g = cp.action.group;
  ExpectationReport r;
  r.recovers_base = r.idempotent = r.contractive = r.faithful = true;
  for (const Matrix& b : a.basis()) {
    if (max_abs_diff(conditional_expectation(cp, cp.pi(b)), b) > tol) {
      r.recovers_base = false;
      r.witness = "P(π̃(a)) != a";
      break;
    }
    for (int s = 0; s < g.order(); ++s) {
      if (s == g.identity()) continue;
      if (max_abs(conditional_expectation(cp, Matrix(cp.pi(b) * cp.u(s)))) > tol) {
        r.recovers_base = false;
        if (r.witness.empty()) r.witness = "P(π̃(a)ũ_" + g.name(s) + ") != 0";
      }
    }
    if (!r.recovers_base) break;
  }
  r.min_faithful_norm = std::numeric_limits<double>::infinity();
  for (int i = 0; i < samples; ++i) {
    const Matrix x = cp.span.random_element(rng);
    const Matrix px = conditional_expectation(cp, x);
    if (max_abs_diff(conditional_expectation(cp, cp.pi(px)), px) > tol * std::max(1.0, max_abs(px))) {
      if (r.idempotent && r.witness.empty()) r.witness = "P is not idempotent";
      r.idempotent = false;
    }
    const double nx = operator_norm(x);
    if (operator_norm(px) > nx * (1 + 1e-9) + tol) {
      if (r.contractive && r.witness.empty()) r.witness = "‖P(x)‖ > ‖x‖";
      r.contractive = false;
    }
    const double pn = operator_norm(conditional_expectation(cp, Matrix(adjoint(x) * x)));
    r.min_faithful_norm = std::min(r.min_faithful_norm, pn / std::max(nx * nx, 1e-300));
    if (pn <= 1e-6 * std::max(1.0, nx * nx)) {
      if (r.faithful && r.witness.empty()) r.witness = "P(x*x) vanishes on a nonzero x";
      r.faithful = false;
    }
  }
  return r;
}

}  // namespace skewcp
