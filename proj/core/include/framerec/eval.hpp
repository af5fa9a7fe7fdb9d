#pragma once

// Corner-error metric and the occlusion-level benchmark harness.

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "framerec/frames.hpp"
#include "framerec/sim.hpp"

namespace framerec {

// Sum of corner distances divided by the image diagonal. Throws
// CategoryMismatch or LengthMismatch.
double normalized_corner_error(const Frame& detected, const Frame& truth, double diagonal);

// sqrt(mean(e_i^2)) * 100 over aligned lists.
double corner_error(std::span<const Frame> detected, std::span<const Frame> truth,
                    std::span<const double> diagonals);

struct EvalRecord {
  std::uint64_t seed = 0;
  FrameCategory category = FrameCategory::FourC;
  int occlusion_level = 0;
  double error = 0.0;  // e_i; 1 for a failed recovery
  bool failed = false;
  std::string failure;  // stage and code of a failed recovery
  double runtime_s = 0.0;
};

struct LevelSummary {
  std::optional<int> level;  // empty for the aggregate
  std::size_t count = 0;
  std::size_t failures = 0;
  double rms_percent = 0.0;
  double mean_square = 0.0;  // mean(e_i^2), unrooted
  double mean_runtime_s = 0.0;
};

struct BenchmarkReport {
  std::vector<LevelSummary> levels;  // ascending level, empty levels omitted
  LevelSummary aggregate;
  std::vector<EvalRecord> records;
};

struct BenchmarkConfig {
  std::array<int, 3> scenes_per_level{50, 50, 50};
  std::vector<FrameCategory> categories{FrameCategory::FourC, FrameCategory::TwoVC,
                                        FrameCategory::TwoHC, FrameCategory::OneC};
  DegradeParams degrade;  // occlusion_level and seed are set per scene
  PipelineConfig pipeline;
  std::uint64_t seed = 1;
};

// Seed of scene `index` at occlusion `level`.
std::uint64_t scene_seed(std::uint64_t seed, int level, int index);

// Runs recover on one scene; failures are recorded, not thrown.
EvalRecord evaluate_scene(const SceneTruth& truth, std::span<const Segment> segments,
                          const PipelineConfig& cfg, int occlusion_level);

// Per-level and aggregate summaries of the records, in record order.
BenchmarkReport summarize(std::vector<EvalRecord> records);

BenchmarkReport run_benchmark(const BenchmarkConfig& cfg);

}  // namespace framerec
