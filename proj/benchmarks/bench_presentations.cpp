#include <benchmark/benchmark.h>

#include "rbloch/bloch.hpp"
#include "rbloch/gw.hpp"
#include "rbloch/specialize.hpp"

using namespace rbloch;

namespace {

void BM_PreBloch(benchmark::State& state) {
  auto k = FiniteField::with_order(static_cast<std::uint64_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(PreBloch::build(k));
}
BENCHMARK(BM_PreBloch)->Arg(5)->Arg(13)->Arg(27)->Arg(49)->Arg(81)->Unit(benchmark::kMillisecond);

void BM_RefinedBloch(benchmark::State& state) {
  auto k = FiniteField::with_order(static_cast<std::uint64_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(refined_bloch(k));
}
BENCHMARK(BM_RefinedBloch)->Arg(5)->Arg(13)->Arg(27)->Unit(benchmark::kMillisecond);

void BM_GW(benchmark::State& state) {
  auto k = FiniteField::with_order(static_cast<std::uint64_t>(state.range(0)));
  for (auto _ : state) {
    auto gw = GWRing::of_field(k);
    benchmark::DoNotOptimize(gw_consistency(gw));
  }
}
BENCHMARK(BM_GW)->Arg(5)->Arg(25)->Unit(benchmark::kMillisecond);

void BM_WdSuite(benchmark::State& state) {
  WdOptions o;
  o.q = static_cast<std::uint32_t>(state.range(0));
  o.relation_trials = 50;
  o.psi_trials = 10;
  o.equivariance_trials = 10;
  for (auto _ : state) benchmark::DoNotOptimize(wd_suite(o));
}
BENCHMARK(BM_WdSuite)->Arg(5)->Arg(7)->Unit(benchmark::kMillisecond);

}  // namespace
BENCHMARK_MAIN();
