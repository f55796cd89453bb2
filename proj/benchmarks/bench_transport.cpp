#include <benchmark/benchmark.h>

#include "chered/weight.hpp"

using namespace chered;

namespace {

void BM_BraidGenerators(benchmark::State& state) {
  auto ctx = GroupContext<double>::build("B2");
  auto reps = irreps_of(ctx);
  KZContext kz = KZContext::build(ctx, find_irrep(reps, "refl"));
  ParamPoint c(std::vector<double>{0.15, 0.3});
  for (auto _ : state) {
    auto gens = braid_generators(kz, c, 1e-10);
    benchmark::DoNotOptimize(gens.t[0](0, 0));
  }
}
BENCHMARK(BM_BraidGenerators)->Unit(benchmark::kMillisecond);

void BM_InvariantFormSolve(benchmark::State& state) {
  auto ctx = GroupContext<double>::build("A3");
  auto reps = irreps_of(ctx);
  KZContext kz = KZContext::build(ctx, find_irrep(reps, "refl"));
  ParamPoint c(std::vector<double>{0.25});
  for (auto _ : state) {
    InvariantForm f = invariant_form_solve(kz, c, 1e-10);
    benchmark::DoNotOptimize(f.b(0, 0));
  }
}
BENCHMARK(BM_InvariantFormSolve)->Unit(benchmark::kMillisecond);

void BM_WeightSample(benchmark::State& state) {
  auto ctx = GroupContext<double>::build("B2");
  auto reps = irreps_of(ctx);
  WeightContext wc = WeightContext::build(ctx, find_irrep(reps, "refl"),
                                          ParamPoint(std::vector<double>{0.1, 0.2}));
  std::vector<double> x = {-0.8, 1.7};
  for (auto _ : state) {
    WeightSample s = weight_from_monodromy(wc, x);
    benchmark::DoNotOptimize(s.k(0, 0));
  }
}
BENCHMARK(BM_WeightSample)->Unit(benchmark::kMillisecond);

void BM_FrobeniusSeries(benchmark::State& state) {
  auto ctx = GroupContext<double>::build("I2_4");
  auto reps = irreps_of(ctx);
  WeightContext wc = WeightContext::build(ctx, find_irrep(reps, "rot1"),
                                          ParamPoint(std::vector<double>{0.12, 0.2}));
  int order = int(state.range(0));
  for (auto _ : state) {
    FrobeniusSolution fr = frobenius_wall_solution(wc, 0, order);
    benchmark::DoNotOptimize(fr.coeffs.back()(0, 0));
  }
}
BENCHMARK(BM_FrobeniusSeries)->Arg(20)->Arg(40)->Unit(benchmark::kMillisecond);

}  // namespace
