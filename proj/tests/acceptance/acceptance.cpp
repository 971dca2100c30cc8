// One line per acceptance criterion; exit status 0 iff all pass.

#include <chrono>
#include <cstdio>
#include <functional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "skewcp/crossed.hpp"
#include "skewcp/duality.hpp"
#include "skewcp/io.hpp"
#include "skewcp/suite.hpp"

using namespace skewcp;

namespace {

const std::string kFixtures = SKEWCP_FIXTURES;

// E1/Z2 expectations, frozen from the span-closure and path-count oracles.
constexpr std::size_t kE1Dim = 4;
constexpr std::size_t kE1SkewDim = 8;
constexpr std::size_t kE1CoactionCrossedDim = 8;
constexpr std::size_t kE1ActionCrossedDim = 16;
const std::vector<std::size_t> kE1FinalSignature{4};

struct Verdict {
  bool ok = true;
  std::string detail;

  void require(bool cond, const std::string& why) {
    if (!cond && ok) {
      ok = false;
      detail = why;
    }
  }
};

const VerificationReport* find_report(const CaseResult& c, const std::string& theorem) {
  for (const auto& r : c.reports)
    if (r.theorem == theorem) return &r;
  return nullptr;
}

const Check* find_check(const VerificationReport& r, const std::string& name) {
  for (const auto& c : r.checks)
    if (c.name == name) return &c;
  return nullptr;
}

std::string where(const CaseResult& c) { return c.instance + (c.error.empty() ? "" : ": " + c.error); }

/// Every case of `family` has a passing report for `theorem`, plus `extra`.
void each_report(Verdict& v, const SuiteReport& s, const std::string& family, const std::string& theorem,
                 const std::function<void(const CaseResult&, const VerificationReport&)>& extra = {}) {
  for (const CaseResult& c : s.cases) {
    if (c.family != family) continue;
    const VerificationReport* r = find_report(c, theorem);
    v.require(r != nullptr, where(c) + ": no report for " + theorem);
    if (!r) continue;
    v.require(r->passed, c.instance + ": " + r->failure);
    if (extra) extra(c, *r);
  }
}

int failures = 0;

void print(int n, const Verdict& v, const std::string& summary) {
  std::printf("criterion %2d %s  %s%s\n", n, v.ok ? "PASS" : "FAIL", summary.c_str(),
              v.ok ? "" : ("  -- " + v.detail).c_str());
  if (!v.ok) ++failures;
}

}  // namespace

int main() {
  using Clock = std::chrono::steady_clock;

  SuiteOptions graphs;
  graphs.seed = 42;
  graphs.graph_cases = 50;
  graphs.free_cases = 0;
  graphs.groupoid_cases = 0;
  graphs.tol = 1e-8;
  graphs.exact_tol = 1e-12;
  const auto t0 = Clock::now();
  const SuiteReport gs = run_suite(graphs);
  const double graph_seconds = std::chrono::duration<double>(Clock::now() - t0).count();

  SuiteOptions rest = graphs;
  rest.graph_cases = 0;
  rest.free_cases = 20;
  rest.groupoid_cases = 30;
  rest.samples = 100;
  const SuiteReport rs = run_suite(rest);

  // 1
  {
    Verdict v;
    v.require(gs.total("graph") >= 50, "fewer than 50 instances");
    std::set<std::string> groups;
    each_report(v, gs, "graph", "C*(E×_cG) ≅ C*(E)⋊_δG", [&](const CaseResult& c, const VerificationReport& r) {
      const GraphCase gc = random_graph_case(graphs.seed, c.index, graphs.graph_limits);
      v.require(gc.graph.vertex_count() <= 8 && gc.graph.edge_count() <= 12 && gc.graph.is_acyclic(),
                c.instance + ": outside the instance limits");
      v.require(r.source_dim == r.target_dim, c.instance + ": dimensions differ");
      v.require(r.source_dim == oracle::ck_dimension(skew_product(gc.graph, gc.group, gc.labeling)),
                c.instance + ": dim C*(E×_cG) disagrees with the path-count oracle");
      v.require(r.tolerance <= 1e-8, "tolerance looser than 1e-8");
      const Check* eq = find_check(r, "Φ∘γ_r = δ̂_r∘Φ");
      v.require(eq && eq->passed && eq->max_error <= 1e-12, c.instance + ": equivariance not exact");
      groups.insert(gc.group.names().back() + std::to_string(gc.group.order()));
    });
    v.require(groups.size() == 4, "not every group of the suite was used");
    v.require(graph_seconds < 60.0, "graph suite took " + std::to_string(graph_seconds) + " s");
    std::ostringstream os;
    os << "eqvt-iso on " << gs.passed("graph") << "/" << gs.total("graph") << " graph instances in " << graph_seconds
       << " s";
    print(1, v, os.str());
  }

  // 2
  {
    Verdict v;
    each_report(v, gs, "graph", "C*(E×_cG)⋊_γG ≅ C*(E)⊗M_|G|", [&](const CaseResult& c, const VerificationReport& r) {
      const GraphCase gc = random_graph_case(graphs.seed, c.index, graphs.graph_limits);
      const std::size_t n = static_cast<std::size_t>(gc.group.order());
      for (const char* name : {"Θ∘Υ = id", "Υ∘Θ = id"}) {
        const Check* k = find_check(r, name);
        v.require(k && k->passed, c.instance + ": " + name);
      }
      v.require(r.source_dim == oracle::ck_dimension(gc.graph) * n * n,
                c.instance + ": dim ≠ dim C*(E)·|G|² by the path-count oracle");
    });
    print(2, v, "direct-iso: Θ∘Υ = Υ∘Θ = id, dim = dim C*(E)·|G|² on the graph suite");
  }

  // 3
  {
    Verdict v;
    const GraphInput in = load_graph(kFixtures + "/e1.json");
    const FiniteGroup z2 = load_group(kFixtures + "/z2.json");
    const Labeling c = make_labeling(in.graph, in.labels, z2);
    const DirectedGraph skew = skew_product(in.graph, z2, c);

    const CKFamily fam = ck_representation(in.graph);
    const AlgebraSpan base = ck_algebra(fam);
    const CKFamily skew_fam = ck_representation(skew);
    const AlgebraSpan skew_alg = ck_algebra(skew_fam);
    const CoactionCrossedProduct ccp = coaction_crossed_product(fam, coaction(fam, z2, c));
    const AlgebraAction gamma{z2, path_space_unitaries(skew_fam, z2, translation_action(skew, z2))};
    const ActionCrossedProduct acp = action_crossed_product(skew_alg, gamma);

    // Oracles agree with the frozen values.
    v.require(oracle::ck_dimension(in.graph) == kE1Dim, "path-count oracle for C*(E1)");
    v.require(oracle::ck_dimension(skew) == kE1SkewDim, "path-count oracle for C*(E1×_cZ2)");
    v.require(oracle::generated_dimension(oracle::dense(acp.generators)) == kE1ActionCrossedDim,
              "closure oracle for the action crossed product");
    v.require(oracle::scaled(oracle::ck_signature(in.graph), 2) == kE1FinalSignature, "signature oracle");
    // The library agrees with the frozen values.
    v.require(base.dimension() == kE1Dim, "dim C*(E1) = " + std::to_string(base.dimension()));
    v.require(skew_alg.dimension() == kE1SkewDim, "dim C*(E1×_cZ2) = " + std::to_string(skew_alg.dimension()));
    v.require(ccp.span.dimension() == kE1CoactionCrossedDim, "dim C*(E1)⋊_δZ2 = " + std::to_string(ccp.span.dimension()));
    v.require(acp.span.dimension() == kE1ActionCrossedDim, "dim C*(E1×_cZ2)⋊_γZ2 = " + std::to_string(acp.span.dimension()));
    v.require(wedderburn_signature(acp.span) == kE1FinalSignature, "final signature");
    DualityOptions d;
    d.signatures = true;
    const IsomorphismCertificate direct = certify_direct_iso(in.graph, z2, c, d);
    v.require(direct.passed() && direct.target_signature == kE1FinalSignature, "direct-iso on the fixture");
    print(3, v, "E1/Z2 fixture: dims 4, 8, 8, 16, signature {4}");
  }

  // 4
  {
    Verdict v;
    each_report(v, gs, "graph", "regular-representation diagram", [&](const CaseResult& c, const VerificationReport& r) {
      const Check* k = find_check(r, "dimension preserved by the regular representation");
      v.require(k && k->passed, c.instance + ": dimension not preserved");
      v.require(r.checks.size() > 1, c.instance + ": no generators chased");
    });
    print(4, v, "regular-representation diagram agrees with Θ generator-by-generator on the graph suite");
  }

  // 5
  {
    Verdict v;
    v.require(rs.total("free-action") == 20, "expected 20 free actions");
    each_report(v, rs, "free-action", "C*(F)⋊_βG ≅ C*(F/G)⊗M_|G|", [&](const CaseResult& c, const VerificationReport& r) {
      v.require(!r.source_signature.empty() && r.source_signature == r.target_signature,
                c.instance + ": signatures differ");
    });
    std::ostringstream os;
    os << "free-action on " << rs.passed("free-action") << "/" << rs.total("free-action")
       << " translation actions, signatures agree";
    print(5, v, os.str());
  }

  // 6
  {
    Verdict v;
    each_report(v, gs, "graph", "coaction δ and gauge action", [&](const CaseResult& c, const VerificationReport& r) {
      v.require(r.tolerance <= 1e-12, "coaction tolerance looser than 1e-12");
      for (const char* z : {"1", "-1", "i", "e^{2πi/7}"}) {
        const Check* k = find_check(r, std::string("gauge automorphism at z=") + z);
        v.require(k && k->passed, c.instance + ": gauge at z=" + z);
      }
      const Check* inj = find_check(r, "δ injective");
      v.require(inj && inj->passed, c.instance + ": δ not injective");
    });
    print(6, v, "coaction identity and injectivity at 1e-12; gauge at z = 1, -1, i, e^{2πi/7}");
  }

  // 7
  {
    Verdict v;
    v.require(rs.total("groupoid") >= 30, "fewer than 30 groupoids");
    std::set<int> orders;
    bool isotropy = false, mixed = false;
    for (const CaseResult& c : rs.cases) {
      if (c.family != "groupoid") continue;
      const GroupoidCase q = random_groupoid_case(rest.seed, c.index, rest.groupoid_limits);
      v.require(q.groupoid.unit_count() <= 6 && q.groupoid.arrow_count() <= 24, c.instance + ": over the limits");
      orders.insert(q.group.order());
      const auto comps = oracle::components(q.groupoid);
      mixed = mixed || comps.size() > 1;
      for (const auto& k : comps) isotropy = isotropy || k.isotropy > 1;
    }
    v.require(orders == std::set<int>{2, 3}, "cocycles not into both Z2 and Z3");
    v.require(isotropy && mixed, "suite lacks isotropy or mixed components");
    each_report(v, rs, "groupoid", "C*(Q)⋊_δG ≅ C*(Q×_cG)");
    each_report(v, rs, "groupoid", "C*(R⋊G) ≅ C*(R)⋊_βG");
    std::ostringstream os;
    os << "gpd-iso and semi-cross on " << rs.total("groupoid") << " groupoids";
    print(7, v, os.str());
  }

  // 8
  {
    Verdict v;
    each_report(v, rs, "groupoid", "(Q×_cG)⋊G ~ Q equivalence");
    each_report(v, rs, "groupoid", "H ~ N equivalence");
    each_report(v, rs, "groupoid", "C_c(Q) as a pre-Hilbert C_c(N)-module",
                [&](const CaseResult& c, const VerificationReport& r) {
                  const Check* k = find_check(r, "general ⟨a,b⟩ = Σ_t a_t*b_t");
                  v.require(k && k->passed && k->max_error <= 1e-9, c.instance + ": inner-product formula");
                });
    v.require(rest.samples == 100, "sample count");
    print(8, v, "both equivalences exhaust-checked; general inner product = Σ_t a_t*b_t on 100 pairs");
  }

  // 9
  {
    Verdict v;
    each_report(v, rs, "groupoid", "conditional expectations and norm identities");
    each_report(v, rs, "groupoid", "C*(N) ⊆ C*(Q)");
    print(9, v, "P_R faithful on positives; kernel and semidirect norm identities");
  }

  // 10
  {
    Verdict v;
    each_report(v, rs, "groupoid", "C*(Q×_cG)⋊_βG ≅ C*(Q)⊗M_|G|", [&](const CaseResult& c, const VerificationReport& r) {
      const GroupoidCase q = random_groupoid_case(rest.seed, c.index, rest.groupoid_limits);
      v.require(r.source_signature == r.target_signature, c.instance + ": signatures differ");
      if (oracle::abelian_isotropy(q.groupoid)) {
        v.require(r.target_signature ==
                      oracle::scaled(oracle::groupoid_signature(q.groupoid), static_cast<std::size_t>(q.group.order())),
                  c.instance + ": signature disagrees with the orbit oracle");
      }
    });
    print(10, v, "C*(Q×_cG)⋊_βG and C*(Q)⊗M_|G| share Wedderburn signatures on the groupoid suite");
  }

  std::printf("%s (%d of 10 criteria failed)\n", failures == 0 ? "ALL PASS" : "FAILURES", failures);
  return failures == 0 ? 0 : 1;
}
