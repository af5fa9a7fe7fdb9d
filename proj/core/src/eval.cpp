#include "framerec/eval.hpp"

#include <chrono>
#include <cmath>
#include <map>

#include "framerec/error.hpp"
#include "framerec/random.hpp"

namespace framerec {

double normalized_corner_error(const Frame& detected, const Frame& truth, double diagonal) {
  if (detected.category != truth.category) {
    throw Error(ErrorCode::CategoryMismatch, "detected and truth frames differ in category");
  }
  if (detected.corners.size() != truth.corners.size() ||
      truth.corners.size() != corner_count(truth.category)) {
    throw Error(ErrorCode::LengthMismatch, "corner counts differ");
  }
  if (!(diagonal > 0.0)) throw Error(ErrorCode::InvalidConfig, "diagonal must be positive");
  double sum = 0.0;
  for (std::size_t i = 0; i < truth.corners.size(); ++i) {
    sum += distance(detected.corners[i], truth.corners[i]);
  }
  return sum / diagonal;
}

double corner_error(std::span<const Frame> detected, std::span<const Frame> truth,
                    std::span<const double> diagonals) {
  if (detected.size() != truth.size() || truth.size() != diagonals.size()) {
    throw Error(ErrorCode::LengthMismatch, "frame lists differ in length");
  }
  if (truth.empty()) return 0.0;
  double sq = 0.0;
  for (std::size_t i = 0; i < truth.size(); ++i) {
    const double e = normalized_corner_error(detected[i], truth[i], diagonals[i]);
    sq += e * e;
  }
  return std::sqrt(sq / static_cast<double>(truth.size())) * 100.0;
}

std::uint64_t scene_seed(std::uint64_t seed, int level, int index) {
  return derive_seed(seed, (static_cast<std::uint64_t>(level) << 32) |
                               static_cast<std::uint64_t>(index));
}

EvalRecord evaluate_scene(const SceneTruth& truth, std::span<const Segment> segments,
                          const PipelineConfig& cfg, int occlusion_level) {
  EvalRecord r;
  r.seed = truth.seed;
  r.category = truth.category;
  r.occlusion_level = occlusion_level;
  const auto start = std::chrono::steady_clock::now();
  try {
    const Recovery rec = recover(segments, truth.truth_vps, truth.category, cfg);
    r.error = normalized_corner_error(rec.frame, truth.truth_frame, truth.image.diagonal());
  } catch (const StageError& e) {
    r.failed = true;
    r.failure = std::string(to_string(e.stage())) + ": " + std::string(to_string(e.code()));
    r.error = 1.0;
  } catch (const Error& e) {
    r.failed = true;
    r.failure = std::string(to_string(e.code()));
    r.error = 1.0;
  }
  r.runtime_s =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return r;
}

namespace {

LevelSummary summary_of(const std::vector<const EvalRecord*>& rs) {
  LevelSummary s;
  s.count = rs.size();
  if (rs.empty()) return s;
  double sq = 0.0;
  double rt = 0.0;
  for (const EvalRecord* r : rs) {
    sq += r->error * r->error;
    rt += r->runtime_s;
    if (r->failed) ++s.failures;
  }
  const double n = static_cast<double>(rs.size());
  s.mean_square = sq / n;
  s.rms_percent = std::sqrt(s.mean_square) * 100.0;
  s.mean_runtime_s = rt / n;
  return s;
}

}  // namespace

BenchmarkReport summarize(std::vector<EvalRecord> records) {
  BenchmarkReport report;
  report.records = std::move(records);
  std::map<int, std::vector<const EvalRecord*>> by_level;
  std::vector<const EvalRecord*> all;
  for (const EvalRecord& r : report.records) {
    by_level[r.occlusion_level].push_back(&r);
    all.push_back(&r);
  }
  for (const auto& [level, rs] : by_level) {
    LevelSummary s = summary_of(rs);
    s.level = level;
    report.levels.push_back(s);
  }
  report.aggregate = summary_of(all);
  return report;
}

BenchmarkReport run_benchmark(const BenchmarkConfig& cfg) {
  if (cfg.categories.empty()) throw Error(ErrorCode::InvalidConfig, "no categories requested");
  std::vector<EvalRecord> records;
  for (int level = 0; level < 3; ++level) {
    for (int i = 0; i < cfg.scenes_per_level[static_cast<std::size_t>(level)]; ++i) {
      const std::uint64_t seed = scene_seed(cfg.seed, level, i);
      const FrameCategory cat = cfg.categories[static_cast<std::size_t>(i) % cfg.categories.size()];
      const SceneTruth truth = generate_scene(seed, cat, cfg.pipeline.image);
      DegradeParams dp = cfg.degrade;
      dp.occlusion_level = level;
      dp.seed = derive_seed(seed, 99);
      const std::vector<Segment> segs = degrade(truth, dp);
      records.push_back(evaluate_scene(truth, segs, cfg.pipeline, level));
    }
  }
  return summarize(std::move(records));
}

}  // namespace framerec
