#include "commands.hpp"

#include <CLI11.hpp>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include "framerec/error.hpp"
#include "framerec/random.hpp"
#include "io.hpp"
#include "svg.hpp"

namespace framerec::cli {

namespace fs = std::filesystem;

namespace {

RunConfig load_config(const std::optional<fs::path>& path) {
  if (!path) return {};
  return config_from_json(read_json(*path));
}

void write_text(const fs::path& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot write " + path.string());
  f << text;
  if (!f) throw std::runtime_error("failed writing " + path.string());
}

FrameCategory parse_category_flag(const std::string& text) {
  const auto c = parse_category(text);
  if (!c) throw InputError("--category must be one of 4c, 2vc, 2hc, 1c");
  return *c;
}

std::string pct(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3f", v);
  return buf;
}

// Wraps a command body with the exit-code mapping.
template <class F>
int guarded(std::ostream& err, F&& body) {
  try {
    return body();
  } catch (const InputError& e) {
    err << "error: " << e.what() << "\n";
    return kExitInput;
  } catch (const StageError& e) {
    err << "error: pipeline failed at stage '" << to_string(e.stage()) << "': " << e.what() << "\n";
    return kExitPipeline;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kExitPipeline;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitInput;
  }
}

}  // namespace

int cmd_recover(const RecoverOptions& o, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const RunConfig cfg = load_config(o.config);
    SceneFile scene = scene_from_json(read_json(o.input));
    std::optional<FrameCategory> cat = scene.category;
    if (o.category) cat = parse_category_flag(*o.category);
    if (!cat) throw InputError("scene has no 'category' field and no --category flag was given");
    const VanishingTriplet triplet = scene.triplet();

    PipelineConfig pc = cfg.pipeline;
    pc.image = scene.image;
    const Recovery rec = recover(scene.segments, triplet, *cat, pc);
    const FrameFile frame = frame_from_recovery(rec, scene.image);
    const Json j = to_json(frame);
    if (o.out) {
      write_json(*o.out, j);
    } else {
      out << dump(j);
    }
    if (o.svg) write_text(*o.svg, render_svg(scene.image, scene.segments, frame));
    return kExitOk;
  });
}

int cmd_simulate(const SimulateOptions& o, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    if (o.count <= 0) throw InputError("--count must be positive");
    const RunConfig cfg = load_config(o.config);
    std::optional<FrameCategory> cat;
    if (o.category) cat = parse_category_flag(*o.category);

    std::string preset = o.preset.value_or(o.config ? "config" : "degraded");
    DegradeParams base;
    if (preset == "clean") {
      base = DegradeParams::none();
    } else if (preset == "degraded") {
      base = DegradeParams{};
    } else if (preset == "config") {
      if (!o.config) throw InputError("--preset config needs --config");
      base = cfg.degrade;
    } else {
      throw InputError("--preset must be clean, degraded or config");
    }
    if (o.occlusion) base.occlusion_level = *o.occlusion;
    try {
      base.validate();
    } catch (const Error& e) {
      throw InputError(e.detail());
    }

    std::error_code ec;
    fs::create_directories(o.out, ec);
    if (ec || !fs::is_directory(o.out)) throw InputError("cannot create output directory " + o.out.string());

    const FrameCategory all[] = {FrameCategory::FourC, FrameCategory::TwoVC, FrameCategory::TwoHC,
                                 FrameCategory::OneC};
    Manifest manifest;
    manifest.seed = o.seed;
    manifest.preset = preset;
    for (int i = 0; i < o.count; ++i) {
      const FrameCategory c = cat ? *cat : all[i % 4];
      const std::uint64_t seed = scene_seed(o.seed, base.occlusion_level, i);
      const SceneTruth truth = generate_scene(seed, c, cfg.pipeline.image);
      DegradeParams dp = base;
      dp.seed = derive_seed(seed, 99);
      const std::vector<Segment> segs = degrade(truth, dp);

      char name[32];
      std::snprintf(name, sizeof name, "%03d", i);
      const std::string scene_name = std::string("scene_") + name + ".json";
      const std::string truth_name = std::string("truth_") + name + ".json";
      write_json(o.out / scene_name, to_json(scene_from_truth(truth, segs, base.occlusion_level)));
      FrameFile tf;
      tf.image = truth.image;
      tf.frame = truth.truth_frame;
      write_json(o.out / truth_name, to_json(tf));
      manifest.scenes.push_back({seed, c, base.occlusion_level, scene_name, truth_name});
    }
    write_json(o.out / "manifest.json", to_json(manifest));
    out << "wrote " << o.count << " scenes to " << o.out.string() << "\n";
    return kExitOk;
  });
}

int cmd_evaluate(const EvaluateOptions& o, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const RunConfig cfg = load_config(o.config);
    const Manifest m = manifest_from_json(read_json(o.manifest));
    if (m.scenes.empty()) throw InputError("manifest lists no scenes");
    const fs::path dir = o.manifest.parent_path();

    std::vector<EvalRecord> records;
    std::vector<std::string> names;
    for (const ManifestEntry& e : m.scenes) {
      const SceneFile scene = scene_from_json(read_json(dir / e.scene));
      const FrameFile truth_file = frame_from_json(read_json(dir / e.truth));
      if (truth_file.frame.category != e.category) {
        throw InputError(e.truth + " does not match the manifest category");
      }
      SceneTruth truth;
      truth.seed = e.seed;
      truth.image = scene.image;
      truth.category = e.category;
      truth.truth_frame = truth_file.frame;
      truth.truth_vps = scene.triplet();
      PipelineConfig pc = cfg.pipeline;
      pc.image = scene.image;
      records.push_back(evaluate_scene(truth, scene.segments, pc, e.occlusion_level));
      names.push_back(e.scene);
    }
    const BenchmarkReport report = summarize(std::move(records));

    const fs::path report_path = o.out ? *o.out : dir / "report.json";
    fs::path timing_path = report_path;
    timing_path.replace_extension(".timing.json");
    write_json(report_path, report_json(report, names));
    write_json(timing_path, timing_json(report, names));

    out << "scene                 cat  occ   error%  status            runtime_s\n";
    for (std::size_t i = 0; i < report.records.size(); ++i) {
      const EvalRecord& r = report.records[i];
      char line[256];
      std::snprintf(line, sizeof line, "%-21s %-4s %3d %8s  %-17s %9.4f\n", names[i].c_str(),
                    std::string(to_string(r.category)).c_str(), r.occlusion_level,
                    pct(r.error * 100.0).c_str(), r.failed ? r.failure.c_str() : "ok", r.runtime_s);
      out << line;
    }
    out << "\nlevel      count  failures   rms%      mean_runtime_s\n";
    auto row = [&](const std::string& label, const LevelSummary& s) {
      char line[256];
      std::snprintf(line, sizeof line, "%-10s %5zu  %8zu  %8s  %9.4f\n", label.c_str(), s.count,
                    s.failures, pct(s.rms_percent).c_str(), s.mean_runtime_s);
      out << line;
    };
    for (const LevelSummary& s : report.levels) row(std::to_string(*s.level) + "-occl", s);
    row("all", report.aggregate);
    out << "report: " << report_path.string() << "\n";
    return kExitOk;
  });
}

int cmd_render(const RenderOptions& o, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const SceneFile scene = scene_from_json(read_json(o.scene));
    const FrameFile frame = frame_from_json(read_json(o.frame));
    if (!(scene.image == frame.image)) throw InputError("scene and frame image sizes differ");
    if (scene.category && *scene.category != frame.frame.category) {
      throw InputError("scene and frame categories differ");
    }
    const std::string svg = render_svg(scene.image, scene.segments, frame);
    if (o.out) {
      write_text(*o.out, svg);
    } else {
      out << svg;
    }
    return kExitOk;
  });
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Indoor frame recovery from line segments and vanishing points", "framerec"};
  app.require_subcommand(1);

  RecoverOptions ro;
  auto* rec = app.add_subcommand("recover", "Recover the frame of a scene file");
  rec->add_option("input", ro.input, "Scene file")->required();
  rec->add_option("--category", ro.category, "Frame category: 4c, 2vc, 2hc or 1c");
  rec->add_option("--config", ro.config, "Run configuration file");
  rec->add_option("--out", ro.out, "Frame file to write (stdout when omitted)");
  rec->add_option("--svg", ro.svg, "Layered SVG overlay to write");

  SimulateOptions so;
  auto* sim = app.add_subcommand("simulate", "Generate synthetic scenes with ground truth");
  sim->add_option("--seed", so.seed, "Base seed");
  sim->add_option("--category", so.category, "Frame category (all four in turn when omitted)");
  sim->add_option("--count", so.count, "Number of scenes");
  sim->add_option("--preset", so.preset, "Degradation preset: clean, degraded or config");
  sim->add_option("--occlusion", so.occlusion, "Occlusion level 0, 1 or 2");
  sim->add_option("--config", so.config, "Run configuration file");
  sim->add_option("--out", so.out, "Output directory")->required();

  EvaluateOptions eo;
  auto* ev = app.add_subcommand("evaluate", "Score recovered frames against a manifest");
  ev->add_option("manifest", eo.manifest, "Manifest file")->required();
  ev->add_option("--config", eo.config, "Run configuration file");
  ev->add_option("--out", eo.out, "Report file (report.json next to the manifest by default)");

  RenderOptions rdo;
  auto* ren = app.add_subcommand("render", "Render a scene and frame file to SVG");
  ren->add_option("scene", rdo.scene, "Scene file")->required();
  ren->add_option("frame", rdo.frame, "Frame file")->required();
  ren->add_option("--out,--svg", rdo.out, "SVG file to write (stdout when omitted)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitInput;
  }

  if (rec->parsed()) return cmd_recover(ro, out, err);
  if (sim->parsed()) return cmd_simulate(so, out, err);
  if (ev->parsed()) return cmd_evaluate(eo, out, err);
  return cmd_render(rdo, out, err);
}

}  // namespace framerec::cli
