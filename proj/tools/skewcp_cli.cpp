#include <chrono>
#include <complex>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "skewcp/duality.hpp"
#include "skewcp/errors.hpp"
#include "skewcp/graphalg.hpp"
#include "skewcp/graphs.hpp"
#include "skewcp/groupoids.hpp"
#include "skewcp/io.hpp"
#include "skewcp/matalg.hpp"
#include "skewcp/suite.hpp"

namespace {

using namespace skewcp;
using Clock = std::chrono::steady_clock;

struct Options {
  std::string graph;
  std::string group;
  std::string groupoid;
  std::string action;
  std::string output;
  std::string convention = "kp";
  std::string kind = "both";
  double tol = 1e-9;
  std::uint64_t seed = 1;
  std::uint64_t suite_seed = 42;
  Index max_dim = 256;
  int samples = 100;
  bool json = false;
  bool no_timing = false;
  // suite
  int cases = 50;
  int free_cases = 20;
  int groupoid_cases = 30;
  unsigned workers = 0;
};

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

std::string stem(const std::string& path) { return std::filesystem::path(path).stem().string(); }

FiniteGroup group_of(const Options& o) { return o.group.empty() ? FiniteGroup::trivial() : load_group(o.group); }

/// Unlabelled graphs and the trivial group both give the trivial labeling.
Labeling labeling_of(const GraphInput& in, const FiniteGroup& g) {
  if (g.order() == 1 || in.labels.empty()) return trivial_labeling(in.graph.edge_count(), g);
  return make_labeling(in.graph, in.labels, g);
}

Cocycle cocycle_of(const GroupoidInput& in, const FiniteGroup& g) {
  if (g.order() == 1 || in.cocycle.empty()) return trivial_cocycle(in.groupoid, g);
  return make_cocycle(in.groupoid, in.cocycle, g);
}

DualityOptions duality(const Options& o) {
  DualityOptions d;
  d.tol = o.tol;
  d.signatures = true;
  d.max_dim = o.max_dim;
  return d;
}

/// The graph and free action under study: the loaded graph with the given
/// action, or its skew product with translation when no action is given.
struct FreeInput {
  DirectedGraph graph;
  FiniteGroup group;
  GraphAction action;
  std::string instance;
};

FreeInput free_input(const Options& o) {
  const GraphInput in = load_graph(o.graph);
  FreeInput f;
  f.group = group_of(o);
  if (!o.action.empty()) {
    f.graph = in.graph;
    f.action = load_graph_action(o.action, f.graph, f.group);
    f.instance = stem(o.graph) + "/" + stem(o.group) + " via " + stem(o.action);
  } else {
    f.graph = skew_product(in.graph, f.group, labeling_of(in, f.group));
    f.action = translation_action(f.graph, f.group);
    f.instance = stem(o.graph) + "×_c" + stem(o.group) + " with translation";
  }
  return f;
}

void write_output(const Options& o, const std::string& text) {
  if (o.output.empty()) return;
  std::ofstream out(o.output);
  if (!out) throw Error(ErrorCode::ParseError, o.output + ": cannot be written");
  out << text << '\n';
}

int emit(const Options& o, const VerificationReport& r) {
  const std::string json = report_to_json(r, !o.no_timing);
  write_output(o, json);
  if (o.json) {
    std::cout << json << '\n';
    std::cerr << report_summary(r);
  } else {
    std::cout << report_summary(r);
  }
  return r.passed ? 0 : 1;
}

/// Constructions print a summary, or the constructed object with --json.
int emit_object(const Options& o, const std::string& summary, const std::string& json) {
  write_output(o, json);
  std::cout << (o.json ? json + "\n" : summary);
  return 0;
}

std::string describe(const DirectedGraph& e, const std::string& title) {
  std::ostringstream os;
  os << title << ": " << e.vertex_count() << " vertices, " << e.edge_count() << " edges\n";
  for (const Edge& f : e.edges()) {
    os << "  " << f.id << ": " << e.vertex_name(f.source) << " -> " << e.vertex_name(f.range) << '\n';
  }
  return os.str();
}

VerificationReport checks_report(std::string theorem, std::string instance, double tol, std::uint64_t seed,
                                 std::vector<Check> checks) {
  VerificationReport r;
  r.theorem = std::move(theorem);
  r.instance = std::move(instance);
  r.tolerance = tol;
  r.seed = seed;
  r.checks = std::move(checks);
  r.passed = true;
  for (const Check& c : r.checks) {
    if (!c.passed && r.passed) {
      r.passed = false;
      r.failure = c.name + (c.witness.empty() ? "" : ": " + c.witness);
    }
  }
  return r;
}

// -- graph -------------------------------------------------------------------

SkewConvention convention_of(const std::string& name) {
  if (name == "standard") return SkewConvention::Standard;
  if (name == "kp") return SkewConvention::KumjianPask;
  return SkewConvention::GrossTucker;
}

int graph_skew(const Options& o) {
  const GraphInput in = load_graph(o.graph);
  const FiniteGroup g = group_of(o);
  const Labeling c = labeling_of(in, g);
  const DirectedGraph s = skew_product(in.graph, g, c);
  std::string summary = describe(s, stem(o.graph) + "×_c" + stem(o.group));
  if (g.order() == 1) {
    summary += std::string("isomorphic to the input: ") + (find_graph_iso(s, in.graph) ? "yes" : "no") + '\n';
  }
  return emit_object(o, summary, graph_to_json(s));
}

int graph_quotient(const Options& o) {
  const FreeInput f = free_input(o);
  const GrossTucker gt = quotient_and_gross_tucker(f.graph, f.group, f.action);
  std::string summary = describe(gt.quotient, "quotient of " + f.instance);
  for (std::size_t k = 0; k < gt.quotient.edge_count(); ++k) {
    summary += "  c(" + gt.quotient.edge_id(static_cast<int>(k)) + ") = " + f.group.name(gt.labeling(k)) + '\n';
  }
  return emit_object(o, summary, graph_to_json(gt.quotient, &gt.labeling, &f.group));
}

int graph_gross_tucker(const Options& o) {
  const auto t0 = Clock::now();
  const FreeInput f = free_input(o);
  const GrossTucker gt = quotient_and_gross_tucker(f.graph, f.group, f.action);
  const DirectedGraph rebuilt = skew_product(gt.quotient, f.group, gt.labeling);
  const GraphAction translation = translation_action(rebuilt, f.group);
  bool equivariant = true;
  std::string witness;
  for (int t = 0; t < f.group.order() && equivariant; ++t) {
    for (std::size_t v = 0; v < rebuilt.vertex_count() && equivariant; ++v) {
      if (gt.iso.vertex_map[translation.vertex(t, static_cast<int>(v))] !=
          f.action.vertex(t, gt.iso.vertex_map[v])) {
        equivariant = false;
        witness = f.group.name(t) + " at vertex " + rebuilt.vertex_name(static_cast<int>(v));
      }
    }
    for (std::size_t e = 0; e < rebuilt.edge_count() && equivariant; ++e) {
      if (gt.iso.edge_map[translation.edge(t, static_cast<int>(e))] != f.action.edge(t, gt.iso.edge_map[e])) {
        equivariant = false;
        witness = f.group.name(t) + " at edge " + rebuilt.edge_id(static_cast<int>(e));
      }
    }
  }
  VerificationReport r = checks_report(
      "F ≅ (F/G)×_cG", f.instance, 0.0, o.seed,
      {Check{"(F/G)×_cG ≅ F", is_graph_iso(rebuilt, f.graph, gt.iso), 0.0, ""},
       Check{"translation carried to the given action", equivariant, 0.0, witness}});
  r.source_dim = rebuilt.vertex_count() + rebuilt.edge_count();
  r.target_dim = f.graph.vertex_count() + f.graph.edge_count();
  r.wall_seconds = seconds_since(t0);
  return emit(o, r);
}

int convert(const Options& o) {
  const GraphInput in = load_graph(o.graph);
  const FiniteGroup g = group_of(o);
  const Labeling c = labeling_of(in, g);
  const SkewConvention conv = convention_of(o.convention);
  const DirectedGraph out = skew_product(in.graph, g, c, conv);
  const DirectedGraph standard = skew_product(in.graph, g, c);
  const GraphIso iso = convention_iso(in.graph, g, c, conv);
  if (!is_graph_iso(out, standard, iso)) {
    throw Error(ErrorCode::CertificationFailed, "convention map is not a graph isomorphism");
  }
  nlohmann::ordered_json j = nlohmann::ordered_json::parse(graph_to_json(out));
  nlohmann::ordered_json map;
  std::ostringstream summary;
  summary << describe(out, stem(o.graph) + "×_c" + stem(o.group) + " in the " + o.convention + " convention");
  summary << "cells in E×_cG:\n";
  for (std::size_t v = 0; v < out.vertex_count(); ++v) {
    const std::string& from = out.vertex_name(static_cast<int>(v));
    const std::string& to = standard.vertex_name(iso.vertex_map[v]);
    map[from] = to;
    summary << "  " << from << " -> " << to << '\n';
  }
  for (std::size_t e = 0; e < out.edge_count(); ++e) {
    const std::string& from = out.edge_id(static_cast<int>(e));
    const std::string& to = standard.edge_id(iso.edge_map[e]);
    map[from] = to;
    summary << "  " << from << " -> " << to << '\n';
  }
  j["to_standard"] = std::move(map);
  return emit_object(o, summary.str(), j.dump(2));
}

// -- algebra -----------------------------------------------------------------

int algebra_ck(const Options& o) {
  const auto t0 = Clock::now();
  const GraphInput in = load_graph(o.graph);
  const CKFamily fam = ck_representation(in.graph, o.max_dim);
  const AlgebraSpan alg = ck_algebra(fam);
  const CKRelationReport rel = check_ck_relations(in.graph, fam.s, fam.p, o.tol);
  const std::size_t expected = expected_ck_dimension(in.graph);
  VerificationReport r = checks_report(
      "Cuntz–Krieger family on path space", stem(o.graph), o.tol, o.seed,
      {Check{"p_v orthogonal projections", rel.orthogonal_projections, rel.max_error, rel.witness},
       Check{"s_f*s_f = p_r(f)", rel.partial_isometries, rel.max_error, rel.witness},
       Check{"p_v = Σ_{s(f)=v} s_f s_f* off sinks", rel.range_relation, rel.max_error, rel.witness},
       Check{"nondegenerate", rel.nondegenerate, 0.0, rel.witness},
       Check{"dim C*(E) = Σ_w n_w²", alg.dimension() == expected, 0.0,
             std::to_string(alg.dimension()) + " vs " + std::to_string(expected)}});
  r.source_dim = alg.dimension();
  r.target_dim = expected;
  r.source_signature = r.target_signature = wedderburn_signature(alg);
  r.wall_seconds = seconds_since(t0);
  return emit(o, r);
}

// -- graph certifications ----------------------------------------------------

struct GraphData {
  GraphInput input;
  FiniteGroup group;
  Labeling labeling;
  std::string instance;
};

GraphData graph_data(const Options& o) {
  GraphData d{load_graph(o.graph), group_of(o), {}, stem(o.graph) + "/" + stem(o.group)};
  d.labeling = labeling_of(d.input, d.group);
  return d;
}

template <class Certify>
int verify_certificate(const Options& o, const std::string& instance, Certify&& certify) {
  const auto t0 = Clock::now();
  const IsomorphismCertificate cert = certify();
  return emit(o, make_report(cert, instance, o.tol, o.seed, seconds_since(t0)));
}

int verify_eqvt(const Options& o) {
  const GraphData d = graph_data(o);
  return verify_certificate(o, d.instance,
                            [&] { return certify_eqvt_iso(d.input.graph, d.group, d.labeling, duality(o)); });
}

int verify_direct(const Options& o) {
  const GraphData d = graph_data(o);
  return verify_certificate(o, d.instance,
                            [&] { return certify_direct_iso(d.input.graph, d.group, d.labeling, duality(o)); });
}

int verify_diagram(const Options& o) {
  const auto t0 = Clock::now();
  const GraphData d = graph_data(o);
  const DiagramReport dr = certify_regular_diagram(d.input.graph, d.group, d.labeling, duality(o));
  std::vector<Check> checks = dr.generators;
  checks.push_back(Check{"dimension preserved by the regular representation", dr.dimension_preserved, 0.0,
                         std::to_string(dr.crossed_dim) + " vs " + std::to_string(dr.expected_dim)});
  VerificationReport r = checks_report("regular-representation diagram", d.instance, o.tol, o.seed, std::move(checks));
  r.source_dim = dr.crossed_dim;
  r.target_dim = dr.expected_dim;
  r.wall_seconds = seconds_since(t0);
  return emit(o, r);
}

int verify_free(const Options& o) {
  const FreeInput f = free_input(o);
  return verify_certificate(o, f.instance,
                            [&] { return certify_free_action(f.graph, f.group, f.action, duality(o)); });
}

// -- groupoids ---------------------------------------------------------------

struct GroupoidData {
  FiniteGroupoid groupoid;
  FiniteGroup group;
  Cocycle cocycle;
  std::string instance;
};

GroupoidData groupoid_data(const Options& o) {
  const GroupoidInput in = load_groupoid(o.groupoid);
  GroupoidData d{in.groupoid, group_of(o), {}, stem(o.groupoid) + "/" + stem(o.group)};
  d.cocycle = cocycle_of(in, d.group);
  validate_cocycle(d.groupoid, d.group, d.cocycle);
  return d;
}

std::string describe(const FiniteGroupoid& q, const std::string& title) {
  std::ostringstream os;
  os << title << ": " << q.unit_count() << " units, " << q.arrow_count() << " arrows, C* signature "
     << format_signature(wedderburn_signature(convolution_algebra(q))) << '\n';
  return os.str();
}

int gpd_skew(const Options& o) {
  const GroupoidData d = groupoid_data(o);
  const FiniteGroupoid s = skew_product_groupoid(d.groupoid, d.group, d.cocycle);
  return emit_object(o, describe(s, stem(o.groupoid) + "×_c" + stem(o.group)), groupoid_to_json(s));
}

int gpd_semidirect(const Options& o) {
  const GroupoidData d = groupoid_data(o);
  const FiniteGroupoid s = skew_product_groupoid(d.groupoid, d.group, d.cocycle);
  const FiniteGroupoid sd = semidirect_product(s, d.group, skew_translation(d.groupoid, d.group));
  return emit_object(o, describe(sd, "(" + stem(o.groupoid) + "×_c" + stem(o.group) + ")⋊" + stem(o.group)),
                     groupoid_to_json(sd));
}

int verify_gpd_iso(const Options& o) {
  const GroupoidData d = groupoid_data(o);
  return verify_certificate(o, d.instance, [&] { return certify_gpd_iso(d.groupoid, d.group, d.cocycle, duality(o)); });
}

int verify_semi_cross(const Options& o) {
  const GroupoidData d = groupoid_data(o);
  const FiniteGroupoid s = skew_product_groupoid(d.groupoid, d.group, d.cocycle);
  return verify_certificate(o, d.instance + ", R=Q×_cG", [&] {
    return certify_semi_cross(s, d.group, skew_translation(d.groupoid, d.group), o.seed, duality(o));
  });
}

int verify_equivalence(const Options& o) {
  const auto t0 = Clock::now();
  const GroupoidData d = groupoid_data(o);
  std::vector<Check> checks;
  const auto add = [&](EquivalenceKind kind, const std::string& prefix) {
    const GroupoidReport rep = certify_equivalence(kind, d.groupoid, d.group, d.cocycle);
    for (Check c : rep.checks) {
      c.name = prefix + c.name;
      checks.push_back(std::move(c));
    }
  };
  if (o.kind != "kernel") add(EquivalenceKind::SkewSemidirect, "(Q×_cG)⋊G ~ Q: ");
  if (o.kind != "skew") add(EquivalenceKind::KernelReduction, "H ~ N: ");
  VerificationReport r = checks_report("groupoid equivalence", d.instance, 0.0, o.seed, std::move(checks));
  r.wall_seconds = seconds_since(t0);
  return emit(o, r);
}

int verify_bimodule(const Options& o) {
  const auto t0 = Clock::now();
  const GroupoidData d = groupoid_data(o);
  BimoduleOptions b;
  b.samples = o.samples;
  b.seed = o.seed;
  b.tol = o.tol;
  return emit(o, make_report(bimodule_inner_products(d.groupoid, d.group, d.cocycle, b),
                             "C_c(Q) as a pre-Hilbert C_c(N)-module", d.instance, b.tol, o.seed, seconds_since(t0)));
}

// -- suite -------------------------------------------------------------------

int suite_run(const Options& o) {
  SuiteOptions s;
  s.seed = o.suite_seed;
  s.graph_cases = o.cases;
  s.free_cases = o.free_cases;
  s.groupoid_cases = o.groupoid_cases;
  s.tol = o.tol;
  s.max_dim = o.max_dim;
  s.samples = o.samples;
  s.workers = o.workers;
  const SuiteReport r = run_suite(s);
  const std::string json = suite_to_json(r, !o.no_timing);
  write_output(o, json);
  if (o.json) {
    std::cout << json << '\n';
    std::cerr << suite_summary(r);
  } else {
    std::cout << suite_summary(r);
  }
  return r.all_passed() ? 0 : 1;
}

int exit_code(ErrorCode code) {
  switch (code) {
    case ErrorCode::CertificationFailed:
    case ErrorCode::DiagramMismatch:
    case ErrorCode::IdentityViolated:
    case ErrorCode::AxiomFailed:
    case ErrorCode::FormulaMismatch:
    case ErrorCode::PositivityFailed:
      return 1;
    default:
      return 2;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"skew products of graphs and groupoids: constructions and certificates"};
  app.require_subcommand(1);
  Options o;
  int (*handler)(const Options&) = nullptr;

  const auto common = [&](CLI::App* cmd, std::uint64_t& seed) {
    cmd->add_option("--tol", o.tol, "numeric tolerance")->capture_default_str();
    cmd->add_option("--seed", seed, "random seed")->capture_default_str();
    cmd->add_option("--max-dim", o.max_dim, "largest ambient matrix size")->capture_default_str();
    cmd->add_flag("--json", o.json, "print the JSON report (summary goes to stderr)");
    cmd->add_flag("--no-timing", o.no_timing, "omit wall time from JSON");
    cmd->add_option("-o,--output", o.output, "also write the JSON to this file");
  };
  const auto graph_in = [&](CLI::App* cmd, bool group_required) {
    cmd->add_option("-g,--graph", o.graph, "graph JSON")->required()->check(CLI::ExistingFile);
    auto* g = cmd->add_option("-G,--group", o.group, "group JSON")->check(CLI::ExistingFile);
    if (group_required) g->required();
  };
  const auto groupoid_in = [&](CLI::App* cmd) {
    cmd->add_option("-q,--groupoid", o.groupoid, "groupoid JSON")->required()->check(CLI::ExistingFile);
    cmd->add_option("-G,--group", o.group, "group JSON")->required()->check(CLI::ExistingFile);
  };
  const auto leaf = [&](CLI::App* parent, const char* name, const char* about, int (*fn)(const Options&),
                        std::uint64_t* seed = nullptr) {
    CLI::App* cmd = parent->add_subcommand(name, about);
    common(cmd, seed ? *seed : o.seed);
    cmd->callback([&handler, fn] { handler = fn; });
    return cmd;
  };

  CLI::App* graph = app.add_subcommand("graph", "graph constructions")->require_subcommand(1);
  graph_in(leaf(graph, "skew", "skew product E×_cG", graph_skew), true);
  for (auto [name, about, fn] : {std::tuple{"quotient", "quotient F/G by a free action", graph_quotient},
                                 std::tuple{"gross-tucker", "certify F ≅ (F/G)×_cG", graph_gross_tucker}}) {
    CLI::App* cmd = leaf(graph, name, about, fn);
    graph_in(cmd, true);
    cmd->add_option("-a,--action", o.action, "action JSON (default: translation on E×_cG)")
        ->check(CLI::ExistingFile);
  }

  CLI::App* algebra = app.add_subcommand("algebra", "operator algebras")->require_subcommand(1);
  graph_in(leaf(algebra, "ck", "C*(E) on path space", algebra_ck), false);

  CLI::App* verify = app.add_subcommand("verify", "certifications")->require_subcommand(1);
  graph_in(leaf(verify, "eqvt-iso", "C*(E×_cG) ≅ C*(E)⋊_δG, equivariantly", verify_eqvt), true);
  graph_in(leaf(verify, "direct-iso", "C*(E×_cG)⋊_γG ≅ C*(E)⊗M_|G|", verify_direct), true);
  graph_in(leaf(verify, "diagram", "regular-representation diagram", verify_diagram), true);
  {
    CLI::App* cmd = leaf(verify, "free-action", "C*(F)⋊G ≅ C*(F/G)⊗M_|G|", verify_free);
    graph_in(cmd, true);
    cmd->add_option("-a,--action", o.action, "action JSON (default: translation on E×_cG)")
        ->check(CLI::ExistingFile);
  }
  groupoid_in(leaf(verify, "gpd-iso", "C*(Q)⋊_δG ≅ C*(Q×_cG)", verify_gpd_iso));
  groupoid_in(leaf(verify, "semi-cross", "C*(R⋊G) ≅ C*(R)⋊_βG with R = Q×_cG", verify_semi_cross));
  {
    CLI::App* cmd = leaf(verify, "equivalence", "groupoid equivalences", verify_equivalence);
    groupoid_in(cmd);
    cmd->add_option("--kind", o.kind, "skew ((Q×_cG)⋊G ~ Q), kernel (H ~ N) or both")
        ->check(CLI::IsMember({"skew", "kernel", "both"}))
        ->capture_default_str();
  }
  {
    CLI::App* cmd = leaf(verify, "bimodule", "C_c(N)-valued inner product", verify_bimodule);
    groupoid_in(cmd);
    cmd->add_option("--samples", o.samples, "random pairs")->capture_default_str();
  }

  CLI::App* gpd = app.add_subcommand("gpd", "groupoid constructions")->require_subcommand(1);
  groupoid_in(leaf(gpd, "skew", "skew product Q×_cG", gpd_skew));
  groupoid_in(leaf(gpd, "semidirect", "(Q×_cG)⋊G under translation", gpd_semidirect));

  CLI::App* suite = app.add_subcommand("suite", "randomized suites")->require_subcommand(1);
  {
    CLI::App* cmd = leaf(suite, "run", "run the randomized suite", suite_run, &o.suite_seed);
    cmd->add_option("--cases", o.cases, "graph cases")->capture_default_str();
    cmd->add_option("--free-cases", o.free_cases, "free-action cases")->capture_default_str();
    cmd->add_option("--groupoid-cases", o.groupoid_cases, "groupoid cases")->capture_default_str();
    cmd->add_option("--samples", o.samples, "random samples per instance")->capture_default_str();
    cmd->add_option("--workers", o.workers, "threads (0: all cores)")->capture_default_str();
  }

  {
    CLI::App* cmd = leaf(&app, "convert", "skew product in another convention, mapped onto E×_cG", convert);
    graph_in(cmd, true);
    cmd->add_option("--to", o.convention, "standard (E×_cG), kp (Kumjian–Pask) or gt (Gross–Tucker)")
        ->check(CLI::IsMember({"standard", "kp", "gt"}))
        ->capture_default_str();
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }
  try {
    return handler(o);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return exit_code(e.code());
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
}
