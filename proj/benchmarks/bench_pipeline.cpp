#include <benchmark/benchmark.h>

#include "framerec/error.hpp"
#include "framerec/frames.hpp"
#include "framerec/random.hpp"
#include "framerec/refine.hpp"
#include "framerec/sim.hpp"

using namespace framerec;

namespace {

constexpr FrameCategory kCats[] = {FrameCategory::FourC, FrameCategory::TwoVC, FrameCategory::TwoHC,
                                   FrameCategory::OneC};

std::vector<Segment> degraded(const SceneTruth& t, int level) {
  DegradeParams p;
  p.seed = derive_seed(t.seed, 99);
  p.occlusion_level = level;
  return degrade(t, p);
}

void BM_RecoverClean(benchmark::State& state) {
  const SceneTruth t = generate_scene(11, kCats[state.range(0)]);
  const auto segs = t.segments();
  for (auto _ : state) benchmark::DoNotOptimize(recover(segs, t.truth_vps, t.category));
}
BENCHMARK(BM_RecoverClean)->DenseRange(0, 3)->Unit(benchmark::kMillisecond);

void BM_RecoverDegraded(benchmark::State& state) {
  const SceneTruth t = generate_scene(11, FrameCategory::FourC);
  const auto segs = degraded(t, static_cast<int>(state.range(0)));
  for (auto _ : state) {
    try {
      benchmark::DoNotOptimize(recover(segs, t.truth_vps, t.category));
    } catch (const Error&) {
    }
  }
  state.counters["segments"] = static_cast<double>(segs.size());
}
BENCHMARK(BM_RecoverDegraded)->DenseRange(0, 2)->Unit(benchmark::kMillisecond);

void BM_RecoverClutter(benchmark::State& state) {
  const SceneTruth t = generate_scene(12, FrameCategory::FourC);
  DegradeParams p = DegradeParams::none();
  p.seed = 5;
  p.clutter_ratio = static_cast<double>(state.range(0)) / 8.0;
  const auto segs = degrade(t, p);
  for (auto _ : state) {
    try {
      benchmark::DoNotOptimize(recover(segs, t.truth_vps, t.category));
    } catch (const Error&) {
    }
  }
  state.counters["segments"] = static_cast<double>(segs.size());
}
BENCHMARK(BM_RecoverClutter)->Arg(8)->Arg(64)->Arg(496)->Unit(benchmark::kMillisecond);

void BM_GenerateAndDegrade(benchmark::State& state) {
  std::uint64_t seed = 0;
  for (auto _ : state) {
    const SceneTruth t = generate_scene(seed++, FrameCategory::FourC);
    benchmark::DoNotOptimize(degraded(t, 1));
  }
}
BENCHMARK(BM_GenerateAndDegrade);

}  // namespace
BENCHMARK_MAIN();
