#pragma once

// JSON file formats: scene, frame, manifest, report and run configuration.

#include <array>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "framerec/eval.hpp"
#include "framerec/frames.hpp"
#include "framerec/sim.hpp"

namespace framerec::cli {

using Json = nlohmann::ordered_json;

inline constexpr const char* kSceneSchema = "framerec.scene/1";
inline constexpr const char* kFrameSchema = "framerec.frame/1";
inline constexpr const char* kManifestSchema = "framerec.manifest/1";
inline constexpr const char* kReportSchema = "framerec.report/1";
inline constexpr const char* kTimingSchema = "framerec.timing/1";
inline constexpr const char* kConfigSchema = "framerec.config/1";

// Malformed or inconsistent input; maps to exit code 2.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct SceneFile {
  ImageSize image;
  std::vector<Segment> segments;
  std::array<HPoint, 3> vps{};
  std::optional<FrameCategory> category;
  std::optional<std::vector<Point2>> truth_corners;
  std::optional<std::uint64_t> seed;
  std::optional<int> occlusion_level;

  VanishingTriplet triplet() const;
};

struct StageSegment {
  GroupId group;
  Origin origin = Origin::Detected;
  Segment segment;
};

struct FrameFile {
  ImageSize image;
  Frame frame;
  std::vector<double> residuals;
  std::optional<double> depth;
  std::optional<std::size_t> candidate_count;
  std::optional<int> vote_iterations;
  std::vector<StageSegment> refined;     // group tag is None for refined sets
  std::vector<StageSegment> candidates;  // voted top-n per group
};

struct ManifestEntry {
  std::uint64_t seed = 0;
  FrameCategory category = FrameCategory::FourC;
  int occlusion_level = 0;
  std::string scene;  // paths relative to the manifest
  std::string truth;
};

struct Manifest {
  std::uint64_t seed = 0;
  std::string preset;
  std::vector<ManifestEntry> scenes;
};

struct RunConfig {
  PipelineConfig pipeline;
  DegradeParams degrade;
  std::uint64_t seed = 1;

  void validate() const;
};

Json to_json(const SceneFile& s);
SceneFile scene_from_json(const Json& j);

Json to_json(const FrameFile& f);
FrameFile frame_from_json(const Json& j);

Json to_json(const Manifest& m);
Manifest manifest_from_json(const Json& j);

Json to_json(const RunConfig& c);
RunConfig config_from_json(const Json& j);

// Report without wall-clock fields; `names` labels the records.
Json report_json(const BenchmarkReport& r, const std::vector<std::string>& names);
Json timing_json(const BenchmarkReport& r, const std::vector<std::string>& names);

SceneFile scene_from_truth(const SceneTruth& truth, const std::vector<Segment>& segments,
                           int occlusion_level);
FrameFile frame_from_recovery(const Recovery& r, ImageSize image);

Json read_json(const std::filesystem::path& path);
// Writes `j` with two-space indentation and a trailing newline.
void write_json(const std::filesystem::path& path, const Json& j);
std::string dump(const Json& j);

}  // namespace framerec::cli
