#include <benchmark/benchmark.h>

#include "toric/catalog.hpp"
#include "toric/cohomology.hpp"
#include "toric/frobenius.hpp"

namespace {

const char* const kIds[] = {"D1", "D2", "E1", "E2", "E4"};

void BM_Decompose(benchmark::State& state) {
  const auto& r = toric::find_record(kIds[state.range(0)]);
  auto ctx = toric::PicBasisContext::build(r.fan, r.basis);
  const auto zero = toric::ToricDivisor::zero(r.fan.ray_count());
  const std::int64_t p = state.range(1);
  for (auto _ : state) benchmark::DoNotOptimize(toric::decompose(ctx, zero, p));
  state.SetLabel(r.id);
}
BENCHMARK(BM_Decompose)->ArgsProduct({{0, 2, 4}, {11, 31, 37}})->Unit(benchmark::kMillisecond);

void BM_ForbiddenSets(benchmark::State& state) {
  const auto& r = toric::load_catalog()[static_cast<std::size_t>(state.range(0))];
  for (auto _ : state) benchmark::DoNotOptimize(toric::forbidden_sets(r.fan));
  state.SetLabel(r.id);
}
BENCHMARK(BM_ForbiddenSets)->DenseRange(0, 17, 1)->Unit(benchmark::kMicrosecond);

void BM_CohomologyTable(benchmark::State& state) {
  const auto& r = toric::find_record("E1");
  auto ctx = toric::PicBasisContext::build(r.fan, r.basis);
  auto report = toric::forbidden_sets(r.fan);
  toric::ToricDivisor d = toric::ToricDivisor::zero(r.fan.ray_count());
  d.coeffs[0] = state.range(0);
  d.coeffs[6] = -state.range(0);
  for (auto _ : state) benchmark::DoNotOptimize(toric::cohomology_table(ctx, d, report));
}
BENCHMARK(BM_CohomologyTable)->DenseRange(0, 6, 2)->Unit(benchmark::kMicrosecond);

}  // namespace
BENCHMARK_MAIN();
