#include "io.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "framerec/error.hpp"

namespace framerec::cli {

namespace {

[[noreturn]] void fail(const std::string& what) { throw InputError(what); }

const Json& field(const Json& j, const char* key, const std::string& where) {
  if (!j.is_object()) fail(where + " must be an object");
  const auto it = j.find(key);
  if (it == j.end()) fail(where + " is missing field '" + key + "'");
  return *it;
}

double number(const Json& j, const std::string& where) {
  if (!j.is_number()) fail(where + " must be a number");
  const double v = j.get<double>();
  if (!std::isfinite(v)) fail(where + " must be finite");
  return v;
}

std::int64_t integer(const Json& j, const std::string& where) {
  if (!j.is_number_integer()) fail(where + " must be an integer");
  return j.get<std::int64_t>();
}

std::uint64_t unsigned_integer(const Json& j, const std::string& where) {
  if (!j.is_number_unsigned() && !(j.is_number_integer() && j.get<std::int64_t>() >= 0)) {
    fail(where + " must be a non-negative integer");
  }
  return j.get<std::uint64_t>();
}

void check_schema(const Json& j, const char* expected) {
  const Json& s = field(j, "schema", "document");
  if (!s.is_string() || s.get<std::string>() != expected) {
    fail(std::string("schema must be '") + expected + "'");
  }
}

void check_keys(const Json& j, std::initializer_list<const char*> allowed, const std::string& where) {
  if (!j.is_object()) fail(where + " must be an object");
  std::set<std::string> ok(allowed.begin(), allowed.end());
  for (const auto& [k, v] : j.items()) {
    if (!ok.contains(k)) fail(where + " has unknown field '" + k + "'");
  }
}

Json point_json(Point2 p) { return Json::array({p.x, p.y}); }

Point2 point_from(const Json& j, const std::string& where) {
  if (!j.is_array() || j.size() != 2) fail(where + " must be [x, y]");
  return {number(j[0], where), number(j[1], where)};
}

Json image_json(ImageSize s) { return {{"width", s.width}, {"height", s.height}}; }

ImageSize image_from(const Json& j) {
  check_keys(j, {"width", "height"}, "image");
  ImageSize s;
  s.width = static_cast<int>(integer(field(j, "width", "image"), "image.width"));
  s.height = static_cast<int>(integer(field(j, "height", "image"), "image.height"));
  if (s.width <= 0 || s.height <= 0) fail("image width and height must be positive");
  return s;
}

Json segment_json(const Segment& s) {
  return {{"id", s.id.value}, {"x1", s.p.x}, {"y1", s.p.y}, {"x2", s.q.x}, {"y2", s.q.y}};
}

Segment segment_from(const Json& j, const std::string& where, std::int64_t default_id) {
  if (!j.is_object()) fail(where + " must be an object");
  Segment s;
  s.p = {number(field(j, "x1", where), where + ".x1"), number(field(j, "y1", where), where + ".y1")};
  s.q = {number(field(j, "x2", where), where + ".x2"), number(field(j, "y2", where), where + ".y2")};
  s.id = SegmentId{default_id};
  if (const auto it = j.find("id"); it != j.end()) s.id = SegmentId{integer(*it, where + ".id")};
  return s;
}

void check_bounds(const Segment& s, ImageSize image, const std::string& where) {
  const double wx = 10.0 * image.width;
  const double wy = 10.0 * image.height;
  for (Point2 p : {s.p, s.q}) {
    if (std::abs(p.x) > wx || std::abs(p.y) > wy) fail(where + " lies outside 10x the image bounds");
  }
}

Json vp_json(const HPoint& v) {
  if (v.at_infinity()) return {{"direction", Json::array({v.x, v.y})}};
  return {{"point", point_json(v.point())}};
}

HPoint vp_from(const Json& j, const std::string& where) {
  if (!j.is_object() || j.size() != 1) fail(where + " must have exactly one of 'point' or 'direction'");
  if (const auto it = j.find("point"); it != j.end()) {
    return HPoint::finite(point_from(*it, where + ".point"));
  }
  if (const auto it = j.find("direction"); it != j.end()) {
    const Point2 d = point_from(*it, where + ".direction");
    if (d.x == 0.0 && d.y == 0.0) fail(where + ".direction must be non-zero");
    return HPoint::direction(d.x, d.y);
  }
  fail(where + " must have exactly one of 'point' or 'direction'");
}

FrameCategory category_from(const Json& j, const std::string& where) {
  if (!j.is_string()) fail(where + " must be a string");
  const auto c = parse_category(j.get<std::string>());
  if (!c) fail(where + " must be one of 4c, 2vc, 2hc, 1c");
  return *c;
}

GroupId group_from(const std::string& text, const std::string& where) {
  const auto g = parse_group(text);
  if (!g) fail(where + " names an unknown group '" + text + "'");
  return *g;
}

std::string_view origin_name(Origin o) { return o == Origin::Fitted ? "fitted" : "detected"; }

Origin origin_from(const Json& j, const std::string& where) {
  if (!j.is_string()) fail(where + " must be a string");
  const std::string s = j.get<std::string>();
  if (s == "detected") return Origin::Detected;
  if (s == "fitted") return Origin::Fitted;
  fail(where + " must be 'detected' or 'fitted'");
}

Axis axis_from(const Json& j, const std::string& where) {
  if (!j.is_string()) fail(where + " must be a string");
  const std::string s = j.get<std::string>();
  if (s == "X") return Axis::X;
  if (s == "Y") return Axis::Y;
  if (s == "Z") return Axis::Z;
  fail(where + " must be X, Y or Z");
}

Json summary_json(const LevelSummary& s) {
  Json j;
  if (s.level) j["level"] = *s.level;
  j["count"] = s.count;
  j["failures"] = s.failures;
  j["rms_percent"] = s.rms_percent;
  j["mean_square"] = s.mean_square;
  return j;
}

template <class T, class F>
void read_opt(const Json& j, const char* key, T& out, F&& conv) {
  if (const auto it = j.find(key); it != j.end()) out = conv(*it, std::string(key));
}

}  // namespace

VanishingTriplet SceneFile::triplet() const {
  try {
    return VanishingTriplet(vps[0], vps[1], vps[2]);
  } catch (const Error& e) {
    throw InputError(std::string("vanishing_points: ") + e.detail());
  }
}

Json to_json(const SceneFile& s) {
  Json j;
  j["schema"] = kSceneSchema;
  j["image"] = image_json(s.image);
  if (s.category) j["category"] = std::string(to_string(*s.category));
  if (s.seed) j["seed"] = *s.seed;
  if (s.occlusion_level) j["occlusion_level"] = *s.occlusion_level;
  j["vanishing_points"] = {{"x", vp_json(s.vps[0])}, {"y", vp_json(s.vps[1])}, {"z", vp_json(s.vps[2])}};
  Json segs = Json::array();
  for (const Segment& seg : s.segments) segs.push_back(segment_json(seg));
  j["segments"] = std::move(segs);
  if (s.truth_corners) {
    Json cs = Json::array();
    for (Point2 p : *s.truth_corners) cs.push_back(point_json(p));
    j["truth_corners"] = std::move(cs);
  }
  return j;
}

SceneFile scene_from_json(const Json& j) {
  check_schema(j, kSceneSchema);
  check_keys(j, {"schema", "image", "category", "seed", "occlusion_level", "vanishing_points",
                 "segments", "truth_corners"},
             "scene");
  SceneFile s;
  s.image = image_from(field(j, "image", "scene"));
  if (const auto it = j.find("category"); it != j.end()) s.category = category_from(*it, "category");
  if (const auto it = j.find("seed"); it != j.end()) s.seed = unsigned_integer(*it, "seed");
  if (const auto it = j.find("occlusion_level"); it != j.end()) {
    s.occlusion_level = static_cast<int>(integer(*it, "occlusion_level"));
  }
  const Json& vps = field(j, "vanishing_points", "scene");
  check_keys(vps, {"x", "y", "z"}, "vanishing_points");
  s.vps = {vp_from(field(vps, "x", "vanishing_points"), "vanishing_points.x"),
           vp_from(field(vps, "y", "vanishing_points"), "vanishing_points.y"),
           vp_from(field(vps, "z", "vanishing_points"), "vanishing_points.z")};
  const Json& segs = field(j, "segments", "scene");
  if (!segs.is_array()) fail("segments must be an array");
  std::set<std::int64_t> ids;
  for (std::size_t i = 0; i < segs.size(); ++i) {
    const std::string where = "segments[" + std::to_string(i) + "]";
    Segment seg = segment_from(segs[i], where, static_cast<std::int64_t>(i));
    check_bounds(seg, s.image, where);
    if (!ids.insert(seg.id.value).second) fail(where + " repeats id " + std::to_string(seg.id.value));
    s.segments.push_back(seg);
  }
  if (const auto it = j.find("truth_corners"); it != j.end()) {
    if (!it->is_array()) fail("truth_corners must be an array");
    std::vector<Point2> cs;
    for (std::size_t i = 0; i < it->size(); ++i) {
      cs.push_back(point_from((*it)[i], "truth_corners[" + std::to_string(i) + "]"));
    }
    s.truth_corners = std::move(cs);
  }
  return s;
}

Json to_json(const FrameFile& f) {
  Json j;
  j["schema"] = kFrameSchema;
  j["image"] = image_json(f.image);
  j["category"] = std::string(to_string(f.frame.category));
  Json corners = Json::array();
  for (std::size_t i = 0; i < f.frame.corners.size(); ++i) {
    corners.push_back({{"label", std::string(to_string(static_cast<CornerLabel>(i)))},
                       {"x", f.frame.corners[i].x},
                       {"y", f.frame.corners[i].y}});
  }
  j["corners"] = std::move(corners);
  Json lines = Json::object();
  for (GroupId g : groups_of(f.frame.category)) {
    if (const auto it = f.frame.box_lines.find(g); it != f.frame.box_lines.end()) {
      lines[to_string(g)] = segment_json(it->second);
    }
  }
  j["box_lines"] = std::move(lines);
  j["residuals"] = f.residuals;
  if (f.depth) j["depth"] = *f.depth;
  if (f.candidate_count) j["candidate_count"] = *f.candidate_count;
  if (f.vote_iterations) j["vote_iterations"] = *f.vote_iterations;
  if (!f.refined.empty() || !f.candidates.empty()) {
    Json refined = Json::array();
    for (const StageSegment& s : f.refined) {
      Json e = segment_json(s.segment);
      e["axis"] = std::string(to_string(s.group.axis));
      refined.push_back(std::move(e));
    }
    Json cands = Json::array();
    for (const StageSegment& s : f.candidates) {
      Json e = segment_json(s.segment);
      e["group"] = to_string(s.group);
      e["origin"] = std::string(origin_name(s.origin));
      cands.push_back(std::move(e));
    }
    j["stages"] = {{"refined", std::move(refined)}, {"candidates", std::move(cands)}};
  }
  return j;
}

FrameFile frame_from_json(const Json& j) {
  check_schema(j, kFrameSchema);
  check_keys(j, {"schema", "image", "category", "corners", "box_lines", "residuals", "depth",
                 "candidate_count", "vote_iterations", "stages"},
             "frame");
  FrameFile f;
  f.image = image_from(field(j, "image", "frame"));
  f.frame.category = category_from(field(j, "category", "frame"), "category");
  const Json& corners = field(j, "corners", "frame");
  if (!corners.is_array() || corners.size() != corner_count(f.frame.category)) {
    fail("corners must list " + std::to_string(corner_count(f.frame.category)) + " corners");
  }
  for (std::size_t i = 0; i < corners.size(); ++i) {
    const std::string where = "corners[" + std::to_string(i) + "]";
    f.frame.corners.push_back({number(field(corners[i], "x", where), where + ".x"),
                               number(field(corners[i], "y", where), where + ".y")});
  }
  const Json& lines = field(j, "box_lines", "frame");
  if (!lines.is_object()) fail("box_lines must be an object");
  for (const auto& [k, v] : lines.items()) {
    const GroupId g = group_from(k, "box_lines");
    if (!has_group(f.frame.category, g)) fail("box_lines." + k + " does not belong to the category");
    f.frame.box_lines.emplace(g, segment_from(v, "box_lines." + k, 0));
  }
  if (const auto it = j.find("residuals"); it != j.end()) {
    if (!it->is_array()) fail("residuals must be an array");
    for (const Json& r : *it) f.residuals.push_back(number(r, "residuals"));
  }
  if (const auto it = j.find("depth"); it != j.end()) f.depth = number(*it, "depth");
  if (const auto it = j.find("candidate_count"); it != j.end()) {
    f.candidate_count = static_cast<std::size_t>(unsigned_integer(*it, "candidate_count"));
  }
  if (const auto it = j.find("vote_iterations"); it != j.end()) {
    f.vote_iterations = static_cast<int>(integer(*it, "vote_iterations"));
  }
  if (const auto it = j.find("stages"); it != j.end()) {
    check_keys(*it, {"refined", "candidates"}, "stages");
    if (const auto r = it->find("refined"); r != it->end()) {
      if (!r->is_array()) fail("stages.refined must be an array");
      for (std::size_t i = 0; i < r->size(); ++i) {
        const std::string where = "stages.refined[" + std::to_string(i) + "]";
        StageSegment s;
        s.group = {axis_from(field((*r)[i], "axis", where), where + ".axis"), Tag::None};
        s.segment = segment_from((*r)[i], where, 0);
        f.refined.push_back(s);
      }
    }
    if (const auto c = it->find("candidates"); c != it->end()) {
      if (!c->is_array()) fail("stages.candidates must be an array");
      for (std::size_t i = 0; i < c->size(); ++i) {
        const std::string where = "stages.candidates[" + std::to_string(i) + "]";
        const Json& g = field((*c)[i], "group", where);
        if (!g.is_string()) fail(where + ".group must be a string");
        StageSegment s;
        s.group = group_from(g.get<std::string>(), where + ".group");
        s.origin = origin_from(field((*c)[i], "origin", where), where + ".origin");
        s.segment = segment_from((*c)[i], where, 0);
        f.candidates.push_back(s);
      }
    }
  }
  return f;
}

Json to_json(const Manifest& m) {
  Json j;
  j["schema"] = kManifestSchema;
  j["seed"] = m.seed;
  j["preset"] = m.preset;
  Json scenes = Json::array();
  for (const ManifestEntry& e : m.scenes) {
    scenes.push_back({{"seed", e.seed},
                      {"category", std::string(to_string(e.category))},
                      {"occlusion_level", e.occlusion_level},
                      {"scene", e.scene},
                      {"truth", e.truth}});
  }
  j["scenes"] = std::move(scenes);
  return j;
}

Manifest manifest_from_json(const Json& j) {
  check_schema(j, kManifestSchema);
  check_keys(j, {"schema", "seed", "preset", "scenes"}, "manifest");
  Manifest m;
  if (const auto it = j.find("seed"); it != j.end()) m.seed = unsigned_integer(*it, "seed");
  if (const auto it = j.find("preset"); it != j.end()) {
    if (!it->is_string()) fail("preset must be a string");
    m.preset = it->get<std::string>();
  }
  const Json& scenes = field(j, "scenes", "manifest");
  if (!scenes.is_array()) fail("scenes must be an array");
  for (std::size_t i = 0; i < scenes.size(); ++i) {
    const std::string where = "scenes[" + std::to_string(i) + "]";
    const Json& s = scenes[i];
    check_keys(s, {"seed", "category", "occlusion_level", "scene", "truth"}, where);
    ManifestEntry e;
    e.seed = unsigned_integer(field(s, "seed", where), where + ".seed");
    e.category = category_from(field(s, "category", where), where + ".category");
    e.occlusion_level = static_cast<int>(integer(field(s, "occlusion_level", where), where + ".occlusion_level"));
    if (e.occlusion_level < 0 || e.occlusion_level > 2) fail(where + ".occlusion_level must be 0, 1 or 2");
    const Json& sc = field(s, "scene", where);
    const Json& tr = field(s, "truth", where);
    if (!sc.is_string() || !tr.is_string()) fail(where + " paths must be strings");
    e.scene = sc.get<std::string>();
    e.truth = tr.get<std::string>();
    m.scenes.push_back(e);
  }
  return m;
}

void RunConfig::validate() const {
  pipeline.validate();
  degrade.validate();
}

Json to_json(const RunConfig& c) {
  const RefineConfig& r = c.pipeline.refine;
  const ConstraintConfig& k = c.pipeline.constraints;
  const DegradeParams& d = c.degrade;
  Json j;
  j["schema"] = kConfigSchema;
  j["seed"] = c.seed;
  j["image"] = image_json(c.pipeline.image);
  j["refine"] = {{"tau_theta", r.tau_theta_deg}, {"n_min", r.n_min},     {"tau_e", r.tau_e},
                 {"xi_len", r.xi_len},           {"xi_ang", r.xi_ang},   {"top_n", r.top_n},
                 {"max_iter", r.max_iter},       {"tau_class", r.tau_class_deg}};
  j["constraints"] = {{"epsilon", k.epsilon},
                      {"corner_consistency", k.corner_consistency},
                      {"max_candidates", k.max_candidates}};
  j["degrade"] = {{"fragments_min", d.fragments_min},
                  {"fragments_max", d.fragments_max},
                  {"drop_fraction", d.drop_fraction},
                  {"clutter_ratio", d.clutter_ratio},
                  {"endpoint_noise_sigma", d.endpoint_noise_sigma},
                  {"occlusion_level", d.occlusion_level}};
  return j;
}

RunConfig config_from_json(const Json& j) {
  if (j.contains("schema")) check_schema(j, kConfigSchema);
  check_keys(j, {"schema", "seed", "image", "refine", "constraints", "degrade"}, "config");
  RunConfig c;
  auto num = [](const Json& v, const std::string& w) { return number(v, w); };
  auto integ = [](const Json& v, const std::string& w) { return static_cast<int>(integer(v, w)); };
  if (const auto it = j.find("seed"); it != j.end()) c.seed = unsigned_integer(*it, "seed");
  if (const auto it = j.find("image"); it != j.end()) c.pipeline.image = image_from(*it);
  if (const auto it = j.find("refine"); it != j.end()) {
    check_keys(*it, {"tau_theta", "n_min", "tau_e", "xi_len", "xi_ang", "top_n", "max_iter", "tau_class"},
               "refine");
    RefineConfig& r = c.pipeline.refine;
    read_opt(*it, "tau_theta", r.tau_theta_deg, num);
    read_opt(*it, "n_min", r.n_min, integ);
    read_opt(*it, "tau_e", r.tau_e, num);
    read_opt(*it, "xi_len", r.xi_len, num);
    read_opt(*it, "xi_ang", r.xi_ang, num);
    read_opt(*it, "top_n", r.top_n, integ);
    read_opt(*it, "max_iter", r.max_iter, integ);
    read_opt(*it, "tau_class", r.tau_class_deg, num);
  }
  if (const auto it = j.find("constraints"); it != j.end()) {
    check_keys(*it, {"epsilon", "corner_consistency", "max_candidates"}, "constraints");
    ConstraintConfig& k = c.pipeline.constraints;
    read_opt(*it, "epsilon", k.epsilon, num);
    read_opt(*it, "corner_consistency", k.corner_consistency, num);
    read_opt(*it, "max_candidates", k.max_candidates,
             [](const Json& v, const std::string& w) { return static_cast<std::size_t>(unsigned_integer(v, w)); });
  }
  if (const auto it = j.find("degrade"); it != j.end()) {
    check_keys(*it, {"fragments_min", "fragments_max", "drop_fraction", "clutter_ratio",
                     "endpoint_noise_sigma", "occlusion_level"},
               "degrade");
    DegradeParams& d = c.degrade;
    read_opt(*it, "fragments_min", d.fragments_min, integ);
    read_opt(*it, "fragments_max", d.fragments_max, integ);
    read_opt(*it, "drop_fraction", d.drop_fraction, num);
    read_opt(*it, "clutter_ratio", d.clutter_ratio, num);
    read_opt(*it, "endpoint_noise_sigma", d.endpoint_noise_sigma, num);
    read_opt(*it, "occlusion_level", d.occlusion_level, integ);
  }
  try {
    c.validate();
  } catch (const Error& e) {
    throw InputError(std::string("config: ") + e.detail());
  }
  return c;
}

Json report_json(const BenchmarkReport& r, const std::vector<std::string>& names) {
  Json j;
  j["schema"] = kReportSchema;
  Json levels = Json::array();
  for (const LevelSummary& s : r.levels) levels.push_back(summary_json(s));
  j["levels"] = std::move(levels);
  j["aggregate"] = summary_json(r.aggregate);
  Json records = Json::array();
  for (std::size_t i = 0; i < r.records.size(); ++i) {
    const EvalRecord& e = r.records[i];
    Json rec;
    rec["scene"] = i < names.size() ? names[i] : std::to_string(i);
    rec["seed"] = e.seed;
    rec["category"] = std::string(to_string(e.category));
    rec["occlusion_level"] = e.occlusion_level;
    rec["error"] = e.error;
    rec["failed"] = e.failed;
    if (e.failed) rec["failure"] = e.failure;
    records.push_back(std::move(rec));
  }
  j["records"] = std::move(records);
  return j;
}

Json timing_json(const BenchmarkReport& r, const std::vector<std::string>& names) {
  Json j;
  j["schema"] = kTimingSchema;
  j["mean_runtime_s"] = r.aggregate.mean_runtime_s;
  Json records = Json::array();
  for (std::size_t i = 0; i < r.records.size(); ++i) {
    records.push_back({{"scene", i < names.size() ? names[i] : std::to_string(i)},
                       {"runtime_s", r.records[i].runtime_s}});
  }
  j["records"] = std::move(records);
  return j;
}

SceneFile scene_from_truth(const SceneTruth& truth, const std::vector<Segment>& segments,
                           int occlusion_level) {
  SceneFile s;
  s.image = truth.image;
  s.segments = segments;
  s.vps = {truth.truth_vps.vp_x(), truth.truth_vps.vp_y(), truth.truth_vps.vp_z()};
  s.category = truth.category;
  s.truth_corners = truth.truth_frame.corners;
  s.seed = truth.seed;
  s.occlusion_level = occlusion_level;
  return s;
}

FrameFile frame_from_recovery(const Recovery& r, ImageSize image) {
  FrameFile f;
  f.image = image;
  f.frame = r.frame;
  f.residuals = r.residuals;
  f.depth = r.depth;
  const Diagnostics& d = r.diagnostics;
  f.candidate_count = d.candidates.size();
  f.vote_iterations = d.votes.iterations;
  for (Axis a : {Axis::X, Axis::Y, Axis::Z}) {
    for (const Segment& s : d.connected.of(a)) f.refined.push_back({{a, Tag::None}, Origin::Detected, s});
  }
  for (const auto& [g, cands] : d.votes.selected) {
    for (const WeightedCandidate& c : cands) f.candidates.push_back({g, c.origin, c.segment});
  }
  return f;
}

Json read_json(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) fail("cannot read " + path.string());
  try {
    return Json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    fail(path.string() + ": invalid JSON: " + e.what());
  }
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

void write_json(const std::filesystem::path& path, const Json& j) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << dump(j);
  if (!out) throw std::runtime_error("failed writing " + path.string());
}

}  // namespace framerec::cli
