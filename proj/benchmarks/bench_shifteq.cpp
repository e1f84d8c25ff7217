#include <benchmark/benchmark.h>

#include "shifteq/set_solver.hpp"

namespace {

using namespace shifteq;

const PrimeField kField;

void BM_FieldMul(benchmark::State& state) {
  Rng rng(1);
  Zp a = kField.sample_nonzero(rng);
  const Zp b = kField.sample_nonzero(rng);
  for (auto _ : state) {
    a *= b;
    benchmark::DoNotOptimize(a);
  }
}
BENCHMARK(BM_FieldMul);

void BM_HomogeneousOracle(benchmark::State& state) {
  const auto d = static_cast<unsigned>(state.range(0));
  Rng rng(2);
  const auto f = from_dense(random_poly(4, d, 0.5, kField, rng));
  const auto top = homogeneous_oracle(with_degree_bound(f, d), d);
  Vec<PrimeField> x;
  for (int i = 0; i < 4; ++i) x.push_back(kField.sample_nonzero(rng));
  for (auto _ : state) benchmark::DoNotOptimize(top(x));
}
BENCHMARK(BM_HomogeneousOracle)->DenseRange(2, 6, 2);

void BM_FindShift(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto d = static_cast<unsigned>(state.range(1));
  const auto alg = state.range(2) == 0 ? Algorithm::kMain : Algorithm::kAlt;
  Rng rng(3);
  const auto f = random_poly(n, d, 0.5, kField, rng);
  Vec<PrimeField> c;
  for (std::size_t i = 0; i < n; ++i) c.push_back(kField.sample_nonzero(rng));
  const auto g = shift(f, std::span<const Zp>(c));
  SetConfig<PrimeField> cfg;
  cfg.algorithm = alg;
  for (auto _ : state) {
    const auto r = find_shift(from_dense(f), from_dense(g), cfg);
    if (!r.found()) state.SkipWithError("no shift found");
    state.counters["queries"] = static_cast<double>(r.queries_used);
  }
}
BENCHMARK(BM_FindShift)
    ->Args({3, 3, 0})
    ->Args({3, 3, 1})
    ->Args({5, 4, 0})
    ->Args({5, 4, 1})
    ->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
