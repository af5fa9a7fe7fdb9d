#pragma once

// The four CLI verbs. Each returns the process exit code: 0 on success,
// 2 on malformed input or arguments, 3 when the pipeline fails.

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>

namespace framerec::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitInput = 2;
inline constexpr int kExitPipeline = 3;

struct RecoverOptions {
  std::filesystem::path input;
  std::optional<std::string> category;
  std::optional<std::filesystem::path> config;
  std::optional<std::filesystem::path> out;  // stdout when unset
  std::optional<std::filesystem::path> svg;
};

struct SimulateOptions {
  std::uint64_t seed = 1;
  std::optional<std::string> category;  // round-robin over all four when unset
  int count = 1;
  std::optional<std::string> preset;  // clean | degraded | config
  std::optional<int> occlusion;
  std::optional<std::filesystem::path> config;
  std::filesystem::path out;
};

struct EvaluateOptions {
  std::filesystem::path manifest;
  std::optional<std::filesystem::path> config;
  std::optional<std::filesystem::path> out;  // report.json next to the manifest when unset
};

struct RenderOptions {
  std::filesystem::path scene;
  std::filesystem::path frame;
  std::optional<std::filesystem::path> out;  // stdout when unset
};

int cmd_recover(const RecoverOptions& o, std::ostream& out, std::ostream& err);
int cmd_simulate(const SimulateOptions& o, std::ostream& out, std::ostream& err);
int cmd_evaluate(const EvaluateOptions& o, std::ostream& out, std::ostream& err);
int cmd_render(const RenderOptions& o, std::ostream& out, std::ostream& err);

// Parses argv and dispatches.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace framerec::cli
