#include "toriclg/cech.hpp"
#include "toriclg/fan.hpp"
#include "toriclg/twisted_complex.hpp"

#include <benchmark/benchmark.h>

#include <fstream>
#include <sstream>
#include <string>

using namespace toriclg;

namespace {

const char* const kFans[] = {"p1", "p2", "p1xp1", "f1", "bl0c2", "cxp1", "c3"};

Fan load(const char* name) {
  std::ifstream in(std::string(TORICLG_DATA_DIR) + "/" + name + ".json");
  std::stringstream text;
  text << in.rdbuf();
  return parse_fan(text.str());
}

void fan_args(benchmark::internal::Benchmark* b) {
  for (int i = 0; i < static_cast<int>(std::size(kFans)); ++i) b->Arg(i);
}

void BM_LGCohomology(benchmark::State& state) {
  const Fan fan = load(kFans[state.range(0)]);
  state.SetLabel(kFans[state.range(0)]);
  for (auto _ : state) {
    const TwistedComplex tc(fan);
    benchmark::DoNotOptimize(lg_cohomology(tc).dims);
  }
}
BENCHMARK(BM_LGCohomology)->Apply(fan_args)->Unit(benchmark::kMillisecond);

void BM_RingStructure(benchmark::State& state) {
  const Fan fan = load(kFans[state.range(0)]);
  state.SetLabel(kFans[state.range(0)]);
  for (auto _ : state) {
    const TwistedComplex tc(fan);
    benchmark::DoNotOptimize(ring_structure(tc, 2 * fan.rank()));
  }
}
BENCHMARK(BM_RingStructure)->Apply(fan_args)->Unit(benchmark::kMillisecond);

void BM_VerifyExactness(benchmark::State& state) {
  const Fan fan = load(kFans[state.range(0)]);
  state.SetLabel(kFans[state.range(0)]);
  for (auto _ : state) {
    const CoverSimplex cs(fan);
    benchmark::DoNotOptimize(verify_exactness(cs, 8, true).exact);
  }
}
BENCHMARK(BM_VerifyExactness)->Apply(fan_args)->Unit(benchmark::kMillisecond);

// closed 1-cochain delta(h) for a fixed dense 0-cochain h
CechCochain boundary(const CoverSimplex& cs, std::size_t m) {
  const CechSlot slot{Presheaf::Functions, 0, 0, m};
  SparseVector h;
  for (std::size_t i = 0; i < cs.dimension(slot); ++i) h.set(i, Rational(static_cast<long>(i % 7) - 3));
  return apply_delta(cs, CechCochain{slot, h});
}

void BM_SplitCocycle(benchmark::State& state) {
  const Fan fan = load("p1xp1");
  const CoverSimplex cs(fan);
  const CechCochain g = boundary(cs, static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(split_cocycle(cs, g).values);
}
BENCHMARK(BM_SplitCocycle)->DenseRange(0, 8, 2);

void BM_SplitCocycleGeneric(benchmark::State& state) {
  const Fan fan = load("p1xp1");
  const CoverSimplex cs(fan);
  const CechCochain g = boundary(cs, static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(split_cocycle_generic(cs, g).values);
}
BENCHMARK(BM_SplitCocycleGeneric)->DenseRange(0, 8, 2);

}  // namespace

BENCHMARK_MAIN();
