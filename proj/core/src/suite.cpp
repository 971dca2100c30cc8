#include "skewcp/suite.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <numbers>
#include <sstream>
#include <thread>

#include "report_json.hpp"
#include "skewcp/duality.hpp"
#include "skewcp/errors.hpp"
#include "skewcp/graphalg.hpp"

namespace skewcp {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

std::mt19937_64 case_rng(std::uint64_t seed, int index, std::uint64_t family) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(family)};
  return std::mt19937_64(seq);
}

int uniform(std::mt19937_64& rng, int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }

std::string group_label(const FiniteGroup& g) {
  if (g.order() == 4 && g.mul(1, 1) == g.identity() && g.mul(2, 2) == g.identity()) return "V4";
  return "Z" + std::to_string(g.order());
}

/// Runs `body` and turns a thrown Error into a failing report.
template <class F>
VerificationReport timed(const std::string& theorem, const std::string& instance, double tol, std::uint64_t seed,
                         F&& body) {
  const auto t0 = Clock::now();
  try {
    VerificationReport r = body();
    r.wall_seconds = seconds_since(t0);
    return r;
  } catch (const std::exception& e) {
    VerificationReport r;
    r.theorem = theorem;
    r.instance = instance;
    r.tolerance = tol;
    r.seed = seed;
    r.wall_seconds = seconds_since(t0);
    r.failure = e.what();
    r.checks.push_back(Check{"completed without error", false, 0.0, e.what()});
    return r;
  }
}

VerificationReport checks_report(std::string theorem, const std::string& instance, double tol, std::uint64_t seed,
                                 std::vector<Check> checks) {
  GroupoidReport g;
  g.checks = std::move(checks);
  return make_report(g, std::move(theorem), instance, tol, seed, 0.0);
}

template <class Body>
void run_parallel(int count, unsigned workers, Body&& body) {
  if (workers == 0) workers = std::max(1u, std::thread::hardware_concurrency());
  workers = std::min<unsigned>(workers, static_cast<unsigned>(std::max(count, 1)));
  std::atomic<int> next{0};
  auto work = [&] {
    for (int k = next++; k < count; k = next++) body(k);
  };
  if (workers <= 1) {
    work();
    return;
  }
  std::vector<std::thread> pool;
  for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work);
  for (auto& t : pool) t.join();
}

}  // namespace

std::vector<FiniteGroup> suite_groups() {
  return {FiniteGroup::cyclic(2), FiniteGroup::cyclic(3), FiniteGroup::cyclic(4), FiniteGroup::klein_four()};
}

GraphCase random_graph_case(std::uint64_t seed, int index, const GraphSuiteLimits& limits) {
  auto rng = case_rng(seed, index, 1);
  const auto groups = suite_groups();
  GraphCase gc;
  gc.group = groups[static_cast<std::size_t>(index) % groups.size()];
  const std::size_t n2 = static_cast<std::size_t>(gc.group.order()) * gc.group.order();

  for (int attempt = 0;; ++attempt) {
    if (attempt > 10000) throw Error(ErrorCode::DimensionMismatch, "no graph fits the suite limits");
    const int nv = uniform(rng, 2, limits.max_vertices);
    const int ne = uniform(rng, 1, limits.max_edges);
    std::vector<int> order(nv);
    for (int v = 0; v < nv; ++v) order[v] = v;
    std::shuffle(order.begin(), order.end(), rng);
    std::vector<std::string> vertices;
    for (int v = 0; v < nv; ++v) vertices.push_back("v" + std::to_string(v));
    std::vector<Edge> edges;
    for (int f = 0; f < ne; ++f) {
      int a = uniform(rng, 0, nv - 1), b = uniform(rng, 0, nv - 2);
      if (b >= a) ++b;
      if (order[a] > order[b]) std::swap(a, b);
      edges.push_back({"f" + std::to_string(f), a, b});
    }
    DirectedGraph e(std::move(vertices), std::move(edges));
    if (enumerate_sink_paths(e).size() * n2 > limits.max_ambient) continue;

    std::vector<GroupElement> labels(e.edge_count());
    for (auto& l : labels) l = uniform(rng, 0, gc.group.order() - 1);
    gc.labeling = Labeling{std::move(labels)};
    gc.name = "graph#" + std::to_string(index) + " |E0|=" + std::to_string(e.vertex_count()) +
              " |E1|=" + std::to_string(e.edge_count()) + " G=" + group_label(gc.group);
    gc.graph = std::move(e);
    return gc;
  }
}

FreeActionCase random_free_action_case(std::uint64_t seed, int index, const GraphSuiteLimits& limits) {
  const GraphCase base = random_graph_case(seed ^ 0x9e3779b97f4a7c15ull, index, limits);
  FreeActionCase fc;
  fc.group = base.group;
  fc.graph = skew_product(base.graph, base.group, base.labeling);
  fc.action = translation_action(fc.graph, fc.group);
  fc.name = "free#" + std::to_string(index) + " F=E×_cG, |F0|=" + std::to_string(fc.graph.vertex_count()) +
            " |F1|=" + std::to_string(fc.graph.edge_count()) + " G=" + group_label(fc.group);
  return fc;
}

std::vector<std::vector<GroupElement>> homomorphisms(const FiniteGroup& h, const FiniteGroup& g) {
  std::vector<std::vector<GroupElement>> out;
  std::vector<GroupElement> map(h.order(), 0);
  const int n = h.order();
  while (true) {
    bool ok = map[h.identity()] == g.identity();
    for (int a = 0; a < n && ok; ++a)
      for (int b = 0; b < n && ok; ++b) ok = map[h.mul(a, b)] == g.mul(map[a], map[b]);
    if (ok) out.push_back(map);
    int k = 0;
    while (k < n && ++map[k] == g.order()) map[k++] = 0;
    if (k == n) break;
  }
  return out;
}

GroupoidCase random_groupoid_case(std::uint64_t seed, int index, const GroupoidSuiteLimits& limits) {
  auto rng = case_rng(seed, index, 2);
  GroupoidCase qc;
  qc.group = index % 2 == 0 ? FiniteGroup::cyclic(2) : FiniteGroup::cyclic(3);
  const FiniteGroup& g = qc.group;
  const std::vector<FiniteGroup> isotropies{FiniteGroup::trivial(), FiniteGroup::cyclic(2), FiniteGroup::cyclic(3)};

  int units_left = uniform(rng, 2, limits.max_units);
  int arrows_left = limits.max_arrows;
  int unit_counter = 0;
  std::vector<std::string> parts;
  bool first = true;
  while (units_left > 0 && arrows_left > 0) {
    const int k = uniform(rng, 1, std::min(3, units_left));
    std::vector<int> fitting;
    for (int h = 0; h < 3; ++h)
      if (k * k * isotropies[h].order() <= arrows_left) fitting.push_back(h);
    if (fitting.empty()) break;
    const FiniteGroup& iso = isotropies[fitting[uniform(rng, 0, static_cast<int>(fitting.size()) - 1)]];

    std::vector<std::string> points;
    for (int i = 0; i < k; ++i) points.push_back("u" + std::to_string(unit_counter++));
    const FiniteGroupoid comp = transitive_groupoid(points, iso);
    const auto homs = homomorphisms(iso, g);
    const auto& psi = homs[uniform(rng, 0, static_cast<int>(homs.size()) - 1)];
    std::vector<GroupElement> b(k, g.identity());
    for (int i = 1; i < k; ++i) b[i] = uniform(rng, 0, g.order() - 1);
    const int h = iso.order();
    for (int i = 0; i < k; ++i)
      for (int j = 0; j < k; ++j)
        for (int a = 0; a < h; ++a) qc.cocycle.values.push_back(g.mul(b[i], psi[a], g.inv(b[j])));

    qc.groupoid = first ? comp : disjoint_union(qc.groupoid, comp);
    first = false;
    parts.push_back(std::to_string(k) + "²×" + group_label(iso));
    units_left -= k;
    arrows_left -= k * k * h;
  }
  validate_cocycle(qc.groupoid, g, qc.cocycle);
  std::string shape;
  for (std::size_t p = 0; p < parts.size(); ++p) shape += (p ? "+" : "") + parts[p];
  qc.name = "groupoid#" + std::to_string(index) + " " + shape + " |Q0|=" + std::to_string(qc.groupoid.unit_count()) +
            " |Q|=" + std::to_string(qc.groupoid.arrow_count()) + " G=" + group_label(g);
  return qc;
}

bool CaseResult::passed() const {
  return error.empty() && std::all_of(reports.begin(), reports.end(), [](const auto& r) { return r.passed; });
}

int SuiteReport::passed(const std::string& family) const {
  return static_cast<int>(
      std::count_if(cases.begin(), cases.end(), [&](const CaseResult& c) { return c.family == family && c.passed(); }));
}

int SuiteReport::total(const std::string& family) const {
  return static_cast<int>(
      std::count_if(cases.begin(), cases.end(), [&](const CaseResult& c) { return c.family == family; }));
}

bool SuiteReport::all_passed() const {
  return std::all_of(cases.begin(), cases.end(), [](const CaseResult& c) { return c.passed(); });
}

CaseResult run_graph_case(const GraphCase& gc, int index, const SuiteOptions& options) {
  CaseResult out{"graph", index, gc.name, {}, {}};
  DualityOptions d;
  d.tol = options.tol;
  d.exact_tol = options.exact_tol;
  d.max_dim = options.max_dim;
  const std::string& inst = gc.name;
  const std::uint64_t seed = options.seed;

  out.reports.push_back(timed("C*(E×_cG) ≅ C*(E)⋊_δG", inst, d.tol, seed, [&] {
    return make_report(certify_eqvt_iso(gc.graph, gc.group, gc.labeling, d), inst, d.tol, seed, 0.0);
  }));
  out.reports.push_back(timed("C*(E×_cG)⋊_γG ≅ C*(E)⊗M_|G|", inst, d.tol, seed, [&] {
    return make_report(certify_direct_iso(gc.graph, gc.group, gc.labeling, d), inst, d.tol, seed, 0.0);
  }));
  out.reports.push_back(timed("regular-representation diagram", inst, d.tol, seed, [&] {
    const DiagramReport dr = certify_regular_diagram(gc.graph, gc.group, gc.labeling, d);
    std::vector<Check> checks = dr.generators;
    checks.push_back(Check{"dimension preserved by the regular representation", dr.dimension_preserved, 0.0,
                           std::to_string(dr.crossed_dim) + " vs " + std::to_string(dr.expected_dim)});
    return checks_report("regular-representation diagram", inst, d.tol, seed, std::move(checks));
  }));
  out.reports.push_back(timed("coaction δ and gauge action", inst, d.exact_tol, seed, [&] {
    const CKFamily fam = ck_representation(gc.graph, d.max_dim);
    const AlgebraSpan alg = ck_algebra(fam);
    const RepresentedCoaction delta = coaction(fam, gc.group, gc.labeling);
    const CoactionReport cr = check_coaction(fam, delta, d.exact_tol);
    const GradingReport gr = check_grading(fam, spectral_subspaces(fam, gc.group, gc.labeling), alg, delta);
    std::vector<Check> checks{
        Check{"δ-images form a nondegenerate E-family", cr.ck_family, cr.max_error, cr.witness},
        Check{"(δ⊗id)δ = (id⊗δ_G)δ", cr.coaction_identity, cr.max_error, cr.witness},
        Check{"δ injective", cr.injective, 0.0, cr.witness},
        Check{"δ nondegenerate", cr.nondegenerate, 0.0, cr.witness},
        Check{"spectral subspaces grade C*(E)", gr.passed(), 0.0, gr.witness},
    };
    const std::vector<std::pair<std::string, Complex>> zs{
        {"1", 1.0}, {"-1", -1.0}, {"i", Complex{0.0, 1.0}}, {"e^{2πi/7}", std::polar(1.0, 2.0 * std::numbers::pi / 7.0)}};
    for (const auto& [label, z] : zs) {
      const GaugeReport g = gauge_check(fam, alg, z);
      checks.push_back(Check{"gauge automorphism at z=" + label, g.passed(), 0.0, g.map.witness});
    }
    return checks_report("coaction δ and gauge action", inst, d.exact_tol, seed, std::move(checks));
  }));
  return out;
}

CaseResult run_free_action_case(const FreeActionCase& fc, int index, const SuiteOptions& options) {
  CaseResult out{"free-action", index, fc.name, {}, {}};
  DualityOptions d;
  d.tol = options.tol;
  d.exact_tol = options.exact_tol;
  d.max_dim = options.max_dim;
  out.reports.push_back(timed("C*(F)⋊_βG ≅ C*(F/G)⊗M_|G|", fc.name, d.tol, options.seed, [&] {
    return make_report(certify_free_action(fc.graph, fc.group, fc.action, d), fc.name, d.tol, options.seed, 0.0);
  }));
  return out;
}

CaseResult run_groupoid_case(const GroupoidCase& qc, int index, const SuiteOptions& options) {
  CaseResult out{"groupoid", index, qc.name, {}, {}};
  DualityOptions d;
  d.tol = options.tol;
  d.exact_tol = options.exact_tol;
  d.max_dim = options.max_dim;
  const std::string& inst = qc.name;
  const std::uint64_t seed = options.seed + static_cast<std::uint64_t>(index);
  const auto& q = qc.groupoid;
  const auto& g = qc.group;
  const auto& c = qc.cocycle;

  out.reports.push_back(timed("C*(Q)⋊_δG ≅ C*(Q×_cG)", inst, d.tol, seed,
                              [&] { return make_report(certify_gpd_iso(q, g, c, d), inst, d.tol, seed, 0.0); }));
  out.reports.push_back(timed("C*(R⋊G) ≅ C*(R)⋊_βG", inst, d.tol, seed, [&] {
    const FiniteGroupoid skew = skew_product_groupoid(q, g, c);
    return make_report(certify_semi_cross(skew, g, skew_translation(q, g), seed, d), inst + ", R=Q×_cG", d.tol, seed,
                       0.0);
  }));
  out.reports.push_back(timed("(Q×_cG)⋊G ~ Q equivalence", inst, 0.0, seed, [&] {
    return make_report(certify_equivalence(EquivalenceKind::SkewSemidirect, q, g, c), "(Q×_cG)⋊G ~ Q equivalence", inst,
                       0.0, seed, 0.0);
  }));
  out.reports.push_back(timed("H ~ N equivalence", inst, 0.0, seed, [&] {
    return make_report(certify_equivalence(EquivalenceKind::KernelReduction, q, g, c), "H ~ N equivalence", inst, 0.0,
                       seed, 0.0);
  }));
  out.reports.push_back(timed("C_c(Q) as a pre-Hilbert C_c(N)-module", inst, 1e-9, seed, [&] {
    BimoduleOptions b;
    b.samples = options.samples;
    b.seed = seed;
    return make_report(bimodule_inner_products(q, g, c, b), "C_c(Q) as a pre-Hilbert C_c(N)-module", inst, b.tol,
                       seed, 0.0);
  }));
  out.reports.push_back(timed("C*(N) ⊆ C*(Q)", inst, 1e-9, seed, [&] {
    return make_report(kernel_embedding_check(q, g, c, seed, options.samples), "C*(N) ⊆ C*(Q)", inst, 1e-9, seed, 0.0);
  }));
  out.reports.push_back(timed("conditional expectations and norm identities", inst, 1e-9, seed, [&] {
    const FiniteGroupoid skew = skew_product_groupoid(q, g, c);
    return make_report(expectations_and_norm_identities(skew, g, skew_translation(q, g), seed, options.samples),
                       "conditional expectations and norm identities", inst + ", R=Q×_cG", 1e-9, seed, 0.0);
  }));
  out.reports.push_back(timed("C*(Q×_cG)⋊_βG ≅ C*(Q)⊗M_|G|", inst, d.tol, seed,
                              [&] { return make_report(certify_full_groupoid(q, g, c, d), inst, d.tol, seed, 0.0); }));
  return out;
}

SuiteReport run_suite(const SuiteOptions& options) {
  const auto t0 = Clock::now();
  SuiteReport report;
  report.seed = options.seed;
  const int ng = std::max(0, options.graph_cases), nf = std::max(0, options.free_cases),
            nq = std::max(0, options.groupoid_cases);
  report.cases.resize(static_cast<std::size_t>(ng + nf + nq));
  run_parallel(ng + nf + nq, options.workers, [&](int k) {
    CaseResult& slot = report.cases[k];
    const bool graph = k < ng, free = !graph && k < ng + nf;
    const int index = graph ? k : free ? k - ng : k - ng - nf;
    slot.family = graph ? "graph" : free ? "free-action" : "groupoid";
    slot.index = index;
    try {
      if (graph) {
        slot = run_graph_case(random_graph_case(options.seed, index, options.graph_limits), index, options);
      } else if (free) {
        slot = run_free_action_case(random_free_action_case(options.seed, index, options.graph_limits), index, options);
      } else {
        slot = run_groupoid_case(random_groupoid_case(options.seed, index, options.groupoid_limits), index, options);
      }
    } catch (const std::exception& e) {
      slot.error = e.what();
    }
  });
  report.wall_seconds = seconds_since(t0);
  return report;
}

std::string suite_to_json(const SuiteReport& report, bool include_timing) {
  nlohmann::ordered_json j;
  j["seed"] = report.seed;
  j["passed"] = report.all_passed();
  nlohmann::ordered_json totals;
  for (const char* family : {"graph", "free-action", "groupoid"}) {
    totals[family] = {{"passed", report.passed(family)}, {"total", report.total(family)}};
  }
  j["totals"] = std::move(totals);
  if (include_timing) j["wall_seconds"] = report.wall_seconds;
  nlohmann::ordered_json cases = nlohmann::ordered_json::array();
  for (const CaseResult& c : report.cases) {
    nlohmann::ordered_json cj;
    cj["family"] = c.family;
    cj["index"] = c.index;
    cj["instance"] = c.instance;
    cj["passed"] = c.passed();
    if (!c.error.empty()) cj["error"] = c.error;
    nlohmann::ordered_json reports = nlohmann::ordered_json::array();
    for (const auto& r : c.reports) reports.push_back(detail::report_json(r, include_timing));
    cj["reports"] = std::move(reports);
    cases.push_back(std::move(cj));
  }
  j["cases"] = std::move(cases);
  return j.dump(2);
}

std::string suite_summary(const SuiteReport& report) {
  std::ostringstream os;
  os << "suite seed " << report.seed << '\n';
  for (const CaseResult& c : report.cases) {
    if (c.passed()) continue;
    os << "  FAIL " << c.instance;
    if (!c.error.empty()) {
      os << ": " << c.error;
    } else {
      for (const auto& r : c.reports)
        if (!r.passed) {
          os << ": " << r.theorem << ": " << r.failure;
          break;
        }
    }
    os << '\n';
  }
  for (const char* family : {"graph", "free-action", "groupoid"}) {
    if (report.total(family) == 0) continue;
    os << "  " << family << ": " << report.passed(family) << "/" << report.total(family) << " pass\n";
  }
  os << (report.all_passed() ? "PASS" : "FAIL") << '\n';
  return os.str();
}

}  // namespace skewcp
