// Serial reference vs OpenMP kernels. Thread count follows OMP_NUM_THREADS.

#include <benchmark/benchmark.h>

#include "finite_hgf/hgf.hpp"
#include "finite_hgf/verify.hpp"

using namespace finite_hgf;

namespace {

void BM_Table(benchmark::State& state) {
  const auto k = FiniteField::from_order(std::uint32_t(state.range(0)));
  const HgfKernel kernel(AddChar::standard(*k));
  const std::vector<std::uint32_t> num{1, 2, 5}, den{0, 3, 4};
  const bool parallel = state.range(1) != 0;
  for (auto _ : state) benchmark::DoNotOptimize(kernel.table(num, den, parallel));
  state.SetLabel(parallel ? "parallel" : "serial");
}
BENCHMARK(BM_Table)->ArgsProduct({{13, 31, 64}, {0, 1}})->Unit(benchmark::kMillisecond);

void BM_F4Grid(benchmark::State& state) {
  const auto k = FiniteField::from_order(std::uint32_t(state.range(0)));
  const HgfKernel kernel(AddChar::standard(*k));
  const bool parallel = state.range(1) != 0;
  for (auto _ : state) benchmark::DoNotOptimize(kernel.f4_grid(1, 2, 3, 0, parallel));
  state.SetLabel(parallel ? "parallel" : "serial");
}
BENCHMARK(BM_F4Grid)->ArgsProduct({{7, 11}, {0, 1}})->Unit(benchmark::kMillisecond);

void BM_VerifySuite(benchmark::State& state) {
  const std::vector<FieldHandle> fields{FiniteField::from_order(7), FiniteField::from_order(9)};
  const auto ids = parse_identities("STRUCT-G8,P6-EULER,THM-B3a,COR-B7,PFAFF");
  VerifyOptions o;
  o.mode.kind = Mode::Kind::Exhaustive;
  const bool parallel = state.range(0) != 0;
  for (auto _ : state) {
    if (parallel)
      benchmark::DoNotOptimize(verify_suite(fields, ids, o));
    else
      benchmark::DoNotOptimize(reference::verify_suite(fields, ids, o));
  }
  state.SetLabel(parallel ? "parallel" : "serial");
}
BENCHMARK(BM_VerifySuite)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
