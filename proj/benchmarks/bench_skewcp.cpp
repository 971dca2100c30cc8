#include <benchmark/benchmark.h>

#include "skewcp/duality.hpp"
#include "skewcp/graphalg.hpp"
#include "skewcp/groupoids.hpp"
#include "skewcp/suite.hpp"

using namespace skewcp;

namespace {

/// A path u₀ → u₁ → … → u_n.
DirectedGraph chain(int n) {
  std::vector<std::string> vertices;
  std::vector<Edge> edges;
  for (int i = 0; i <= n; ++i) vertices.push_back("u" + std::to_string(i));
  for (int i = 0; i < n; ++i) edges.push_back(Edge{"e" + std::to_string(i), i, i + 1});
  return DirectedGraph(vertices, edges);
}

Labeling ones(std::size_t edges) { return Labeling{std::vector<GroupElement>(edges, 1)}; }

void BM_CKClosure(benchmark::State& state) {
  const DirectedGraph e = chain(static_cast<int>(state.range(0)));
  const CKFamily fam = ck_representation(e);
  for (auto _ : state) benchmark::DoNotOptimize(ck_algebra(fam).dimension());
  state.counters["dim"] = static_cast<double>(ck_algebra(fam).dimension());
}
BENCHMARK(BM_CKClosure)->DenseRange(2, 8, 2)->Unit(benchmark::kMillisecond);

void BM_Wedderburn(benchmark::State& state) {
  const FiniteGroup z3 = FiniteGroup::cyclic(3);
  const DirectedGraph e = chain(static_cast<int>(state.range(0)));
  const CKFamily fam = ck_representation(skew_product(e, z3, ones(e.edge_count())));
  const AlgebraSpan a = ck_algebra(fam);
  for (auto _ : state) benchmark::DoNotOptimize(wedderburn_signature(a));
}
BENCHMARK(BM_Wedderburn)->DenseRange(2, 6, 2)->Unit(benchmark::kMillisecond);

void BM_EqvtIso(benchmark::State& state) {
  const FiniteGroup g = FiniteGroup::cyclic(static_cast<int>(state.range(0)));
  const DirectedGraph e = chain(3);
  for (auto _ : state) benchmark::DoNotOptimize(certify_eqvt_iso(e, g, ones(e.edge_count())).passed());
}
BENCHMARK(BM_EqvtIso)->DenseRange(2, 4)->Unit(benchmark::kMillisecond);

void BM_DirectIso(benchmark::State& state) {
  const FiniteGroup g = FiniteGroup::cyclic(static_cast<int>(state.range(0)));
  const DirectedGraph e = chain(3);
  for (auto _ : state) benchmark::DoNotOptimize(certify_direct_iso(e, g, ones(e.edge_count())).passed());
}
BENCHMARK(BM_DirectIso)->DenseRange(2, 4)->Unit(benchmark::kMillisecond);

void BM_GroupoidFull(benchmark::State& state) {
  const FiniteGroup z2 = FiniteGroup::cyclic(2);
  std::vector<std::string> points;
  for (int i = 0; i < state.range(0); ++i) points.push_back("p" + std::to_string(i));
  const FiniteGroupoid q = pair_groupoid(points);
  // c(x_i_j) = b(i)b(j)⁻¹ with b alternating.
  Cocycle c;
  const int k = static_cast<int>(points.size());
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j) c.values.push_back((i + j) % 2);
  for (auto _ : state) benchmark::DoNotOptimize(certify_full_groupoid(q, z2, c).passed());
}
BENCHMARK(BM_GroupoidFull)->DenseRange(2, 4)->Unit(benchmark::kMillisecond);

void BM_Equivalence(benchmark::State& state) {
  const GroupoidCase qc = random_groupoid_case(42, static_cast<int>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(certify_equivalence(EquivalenceKind::SkewSemidirect, qc.groupoid, qc.group, qc.cocycle).passed());
  }
  state.SetLabel(qc.name);
}
BENCHMARK(BM_Equivalence)->DenseRange(0, 3)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
