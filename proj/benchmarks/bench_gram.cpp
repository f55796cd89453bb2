#include <benchmark/benchmark.h>

#include "chered/forms.hpp"

using namespace chered;

namespace {

void BM_BetaGramExactB2(benchmark::State& state) {
  auto ctx = GroupContext<Exact>::build("B2");
  auto reps = irreps_of(ctx);
  StandardModule<Exact> m(ctx, find_irrep(reps, "refl"));
  std::vector<Exact> c = {Exact(Rat(3, 10)), Exact(Rat(2, 5))};
  int maxdeg = int(state.range(0));
  for (auto _ : state) {
    auto gram = beta_gram_sweep(m, c, maxdeg);
    benchmark::DoNotOptimize(gram.back()(0, 0));
  }
}
BENCHMARK(BM_BetaGramExactB2)->Arg(8)->Arg(16)->Arg(24)->Unit(benchmark::kMillisecond);

void BM_BetaGramFloatI25(benchmark::State& state) {
  auto ctx = GroupContext<double>::build("I2_5");
  auto reps = irreps_of(ctx);
  StandardModule<double> m(ctx, find_irrep(reps, "rot1"));
  std::vector<double> c = {0.3};
  int maxdeg = int(state.range(0));
  for (auto _ : state) {
    auto gram = beta_gram_sweep(m, c, maxdeg);
    benchmark::DoNotOptimize(gram.back()(0, 0));
  }
}
BENCHMARK(BM_BetaGramFloatI25)->Arg(16)->Arg(32)->Arg(40)->Unit(benchmark::kMillisecond);

void BM_InertiaExact(benchmark::State& state) {
  auto ctx = GroupContext<Exact>::build("B2");
  auto reps = irreps_of(ctx);
  StandardModule<Exact> m(ctx, find_irrep(reps, "refl"));
  std::vector<Exact> c = {Exact(Rat(3, 10)), Exact(Rat(2, 5))};
  int deg = int(state.range(0));
  auto gram = beta_gram_sweep(m, c, deg);
  for (auto _ : state) {
    Inertia in = inertia_symmetric(gram.back());
    benchmark::DoNotOptimize(in.p);
  }
}
BENCHMARK(BM_InertiaExact)->Arg(8)->Arg(16)->Unit(benchmark::kMillisecond);

void BM_GaussianGramA2(benchmark::State& state) {
  auto ctx = GroupContext<Exact>::build("A2");
  auto reps = irreps_of(ctx);
  StandardModule<Exact> m(ctx, find_irrep(reps, "std"));
  std::vector<Exact> c = {Exact(Rat(1, 5))};
  int cutoff = int(state.range(0));
  for (auto _ : state) {
    Matrix<Exact> g = gaussian_gram(m, c, cutoff);
    benchmark::DoNotOptimize(g(0, 0));
  }
}
BENCHMARK(BM_GaussianGramA2)->Arg(4)->Arg(6)->Arg(8)->Unit(benchmark::kMillisecond);

}  // namespace
