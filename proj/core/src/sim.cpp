#include "framerec/sim.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <array>
#include <cmath>
#include <optional>

#include "framerec/classify.hpp"
#include "framerec/error.hpp"
#include "framerec/random.hpp"

namespace framerec {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr int kMaxAttempts = 100;
constexpr double kNear = 0.05;
constexpr double kMinEdgePx = 20.0;
constexpr double kHiddenEdgePx = 1.0;
constexpr double kCornerMargin = 10.0;
constexpr double kMinAngleDeg = 3.0;

enum Fixed { kNone, kLeft, kRight, kFloor, kCeil, kBack, kFront };

// Box edge by its two fixed coordinates; the free coordinate spans the room.
struct Edge {
  Axis axis;
  Fixed a;
  Fixed b;
};

struct FrameSpec {
  std::vector<std::pair<Edge, GroupId>> edges;
  std::vector<std::array<Fixed, 3>> corners;  // x, y, z
};

double coord(const Room& r, Fixed f) {
  switch (f) {
    case kLeft: return r.x_left;
    case kRight: return r.x_right();
    case kFloor: return r.floor();
    case kCeil: return r.ceiling();
    case kBack: return r.z_back;
    case kFront: return r.z_front();
    case kNone: break;
  }
  return 0.0;
}

std::array<Eigen::Vector3d, 2> edge_points(const Room& r, const Edge& e) {
  const double u = coord(r, e.a);
  const double v = coord(r, e.b);
  switch (e.axis) {
    case Axis::X: return {Eigen::Vector3d{r.x_left, u, v}, Eigen::Vector3d{r.x_right(), u, v}};
    case Axis::Y: return {Eigen::Vector3d{u, r.floor(), v}, Eigen::Vector3d{u, r.ceiling(), v}};
    case Axis::Z: return {Eigen::Vector3d{u, v, r.z_back}, Eigen::Vector3d{u, v, r.z_front()}};
  }
  return {};
}

std::vector<Edge> all_edges() {
  std::vector<Edge> out;
  for (Fixed y : {kFloor, kCeil})
    for (Fixed z : {kBack, kFront}) out.push_back({Axis::X, y, z});
  for (Fixed x : {kLeft, kRight})
    for (Fixed z : {kBack, kFront}) out.push_back({Axis::Y, x, z});
  for (Fixed x : {kLeft, kRight})
    for (Fixed y : {kFloor, kCeil}) out.push_back({Axis::Z, x, y});
  return out;
}

bool same_edge(const Edge& a, const Edge& b) { return a.axis == b.axis && a.a == b.a && a.b == b.b; }

FrameSpec frame_spec(FrameCategory cat) {
  const Axis X = Axis::X, Y = Axis::Y, Z = Axis::Z;
  switch (cat) {
    case FrameCategory::FourC:
      return {{{{X, kCeil, kBack}, {X, Tag::C}},
               {{X, kFloor, kBack}, {X, Tag::F}},
               {{Y, kLeft, kBack}, {Y, Tag::L}},
               {{Y, kRight, kBack}, {Y, Tag::R}},
               {{Z, kLeft, kCeil}, {Z, Tag::CL}},
               {{Z, kRight, kCeil}, {Z, Tag::CR}},
               {{Z, kLeft, kFloor}, {Z, Tag::FL}},
               {{Z, kRight, kFloor}, {Z, Tag::FR}}},
              {{kLeft, kCeil, kBack}, {kRight, kCeil, kBack}, {kRight, kFloor, kBack},
               {kLeft, kFloor, kBack}}};
    case FrameCategory::TwoVC:
      return {{{{X, kCeil, kBack}, {X, Tag::C}},
               {{X, kFloor, kBack}, {X, Tag::F}},
               {{Y, kLeft, kBack}, {Y, Tag::None}},
               {{Z, kLeft, kCeil}, {Z, Tag::C}},
               {{Z, kLeft, kFloor}, {Z, Tag::F}}},
              {{kLeft, kCeil, kBack}, {kLeft, kFloor, kBack}}};
    case FrameCategory::TwoHC:
      return {{{{X, kFloor, kBack}, {X, Tag::None}},
               {{Y, kLeft, kBack}, {Y, Tag::L}},
               {{Y, kRight, kBack}, {Y, Tag::R}},
               {{Z, kLeft, kFloor}, {Z, Tag::L}},
               {{Z, kRight, kFloor}, {Z, Tag::R}}},
              {{kLeft, kFloor, kBack}, {kRight, kFloor, kBack}}};
    case FrameCategory::OneC:
      return {{{{X, kFloor, kBack}, {X, Tag::None}},
               {{Y, kLeft, kBack}, {Y, Tag::None}},
               {{Z, kLeft, kFloor}, {Z, Tag::None}}},
              {{kLeft, kFloor, kBack}}};
  }
  return {};
}

Camera aimed_camera(const Eigen::Vector3d& target, double focal, ImageSize image) {
  const Eigen::Vector3d cz = target.normalized();
  const Eigen::Vector3d cx = cz.cross(Eigen::Vector3d::UnitY()).normalized();
  const Eigen::Vector3d cy = cz.cross(cx);
  Camera cam;
  cam.focal = focal;
  cam.principal_point = image.center();
  cam.rotation.col(0) = cx;
  cam.rotation.col(1) = cy;
  cam.rotation.col(2) = cz;
  return cam;
}

// Image of a 3D segment clipped to the near plane and the image.
std::optional<Segment> project_edge(const Camera& cam, const Eigen::Vector3d& p,
                                    const Eigen::Vector3d& q, ImageSize image) {
  Eigen::Vector3d a = cam.rotation.transpose() * (p - cam.optic_center);
  Eigen::Vector3d b = cam.rotation.transpose() * (q - cam.optic_center);
  if (a.z() < kNear && b.z() < kNear) return std::nullopt;
  if (a.z() < kNear) a = a + (kNear - a.z()) / (b.z() - a.z()) * (b - a);
  if (b.z() < kNear) b = b + (kNear - b.z()) / (a.z() - b.z()) * (a - b);
  auto pix = [&](const Eigen::Vector3d& c) {
    return Point2{cam.focal * c.x() / c.z() + cam.principal_point.x,
                  cam.focal * c.y() / c.z() + cam.principal_point.y};
  };
  Segment out;
  if (!clip_segment({pix(a), pix(b), {}}, image, out)) return std::nullopt;
  return out;
}

std::optional<Point2> project_point(const Camera& cam, const Eigen::Vector3d& p) {
  const Eigen::Vector3d c = cam.rotation.transpose() * (p - cam.optic_center);
  if (c.z() < kNear) return std::nullopt;
  return Point2{cam.focal * c.x() / c.z() + cam.principal_point.x,
                cam.focal * c.y() / c.z() + cam.principal_point.y};
}

Eigen::Vector3d aim_target(const Room& r, FrameCategory cat, Rng& rng) {
  const double jx = rng.uniform(-0.15, 0.15) * r.width;
  const double jy = rng.uniform(-0.15, 0.15) * r.height;
  const double xm = 0.5 * (r.x_left + r.x_right());
  const double ym = 0.5 * (r.floor() + r.ceiling());
  switch (cat) {
    case FrameCategory::FourC: return {xm + jx, ym + jy, r.z_back};
    case FrameCategory::TwoVC: return {r.x_left + 0.3 * jx, ym + jy, r.z_back};
    case FrameCategory::TwoHC: return {xm + jx, r.floor() + 0.3 * std::abs(jy), r.z_back};
    case FrameCategory::OneC: return {r.x_left + 0.3 * jx, r.floor() + 0.3 * std::abs(jy), r.z_back};
  }
  return {xm, ym, r.z_back};
}

// A scene candidate that satisfies every category requirement, or nothing.
std::optional<SceneTruth> attempt(Rng& rng, FrameCategory cat, ImageSize image) {
  Room room;
  room.width = rng.uniform(2.0, 6.0);
  room.height = rng.uniform(2.0, 4.0);
  room.depth = rng.uniform(3.0, 10.0);
  room.x_left = rng.uniform(0.25, 0.75) * room.width;
  room.z_back = rng.uniform(0.6, 0.95) * room.depth;
  const double focal = rng.uniform(400.0, 800.0);

  const Eigen::Vector3d target = aim_target(room, cat, rng);
  const double yaw = std::atan2(target.x(), target.z()) * 180.0 / kPi;
  const double pitch = std::atan2(target.y(), std::hypot(target.x(), target.z())) * 180.0 / kPi;
  if (std::abs(yaw) < kMinAngleDeg || std::abs(pitch) < kMinAngleDeg) return std::nullopt;

  SceneTruth s;
  s.image = image;
  s.room = room;
  s.category = cat;
  s.camera = aimed_camera(target, focal, image);

  const FrameSpec spec = frame_spec(cat);
  for (const Edge& e : all_edges()) {
    const auto pts = edge_points(room, e);
    const auto seg = project_edge(s.camera, pts[0], pts[1], image);
    const auto it = std::find_if(spec.edges.begin(), spec.edges.end(),
                                 [&](const auto& fe) { return same_edge(fe.first, e); });
    if (it == spec.edges.end()) {
      if (seg && seg->length() > kHiddenEdgePx) return std::nullopt;
    } else if (!seg || seg->length() < kMinEdgePx) {
      return std::nullopt;
    }
  }

  for (const auto& c : spec.corners) {
    const Eigen::Vector3d p{coord(room, c[0]), coord(room, c[1]), coord(room, c[2])};
    const auto px = project_point(s.camera, p);
    if (!px || px->x < kCornerMargin || px->y < kCornerMargin ||
        px->x > image.width - kCornerMargin || px->y > image.height - kCornerMargin) {
      return std::nullopt;
    }
    s.truth_frame.corners.push_back(*px);
  }
  s.truth_frame.category = cat;

  try {
    s.truth_vps = VanishingTriplet(s.camera.project_direction(Eigen::Vector3d::UnitX()),
                                   s.camera.project_direction(Eigen::Vector3d::UnitY()),
                                   s.camera.project_direction(Eigen::Vector3d::UnitZ()));
  } catch (const Error&) {
    return std::nullopt;
  }

  std::int64_t id = 0;
  for (const auto& [edge, group] : spec.edges) {
    const auto pts = edge_points(room, edge);
    Segment seg = *project_edge(s.camera, pts[0], pts[1], image);
    seg.id = SegmentId{id++};
    s.truth_segments.push_back({seg, group});
    s.truth_frame.box_lines.emplace(group, seg);
  }

  // The labels must be what the classifier and partition would assign.
  const std::vector<Segment> segs = s.segments();
  const AxisSets sets = classify_segments(segs, s.truth_vps);
  if (!sets.outliers.empty()) return std::nullopt;
  const PartitionedSegments parts = partition_subsets(sets, s.truth_vps, cat);
  if (!parts.outliers.empty()) return std::nullopt;
  for (const LabeledSegment& ls : s.truth_segments) {
    const auto& g = parts.groups.at(ls.group);
    if (g.size() != 1 || g.front().id != ls.segment.id) return std::nullopt;
  }
  return s;
}

Point2 noisy(Point2 p, double sigma, Rng& rng) {
  if (sigma <= 0.0) return p;
  for (;;) {
    const double dx = rng.normal();
    const double dy = rng.normal();
    if (dx * dx + dy * dy <= 9.0) return {p.x + sigma * dx, p.y + sigma * dy};
  }
}

}  // namespace

std::vector<Segment> SceneTruth::segments() const {
  std::vector<Segment> out;
  out.reserve(truth_segments.size());
  for (const LabeledSegment& s : truth_segments) out.push_back(s.segment);
  return out;
}

SceneTruth generate_scene(std::uint64_t seed, FrameCategory category, ImageSize image) {
  if (image.width <= 0 || image.height <= 0) {
    throw Error(ErrorCode::EmptyImageBounds, "image size must be positive");
  }
  Rng rng(derive_seed(seed, static_cast<std::uint64_t>(category) + 1));
  for (int i = 0; i < kMaxAttempts; ++i) {
    if (auto s = attempt(rng, category, image)) {
      s->seed = seed;
      return *std::move(s);
    }
  }
  throw Error(ErrorCode::CategoryUnreachable,
              "no " + std::string(to_string(category)) + " scene after 100 attempts");
}

void DegradeParams::validate() const {
  auto bad = [](const char* what) { throw Error(ErrorCode::InvalidConfig, what); };
  if (fragments_min < 1 || fragments_max < fragments_min) bad("invalid fragment range");
  if (!(drop_fraction >= 0.0 && drop_fraction <= 1.0)) bad("drop_fraction must be in [0, 1]");
  if (!(clutter_ratio >= 0.0)) bad("clutter_ratio must be non-negative");
  if (!(endpoint_noise_sigma >= 0.0)) bad("endpoint_noise_sigma must be non-negative");
  if (occlusion_level < 0 || occlusion_level > 2) bad("occlusion_level must be 0, 1 or 2");
}

DegradeParams DegradeParams::none() {
  DegradeParams p;
  p.fragments_min = 1;
  p.fragments_max = 1;
  p.drop_fraction = 0.0;
  p.clutter_ratio = 0.0;
  p.endpoint_noise_sigma = 0.0;
  return p;
}

OcclusionDisks occlusion_disks(const SceneTruth& truth, const DegradeParams& params) {
  OcclusionDisks out;
  if (params.occlusion_level == 0) return out;
  Rng rng(derive_seed(params.seed, 5));
  std::vector<Point2> corners = truth.truth_frame.corners;
  const std::size_t want = std::min<std::size_t>(params.occlusion_level == 1 ? 1 : 2, corners.size());
  for (std::size_t i = 0; i < want; ++i) {
    const int k = rng.uniform_int(static_cast<int>(i), static_cast<int>(corners.size()) - 1);
    std::swap(corners[i], corners[static_cast<std::size_t>(k)]);
    out.centers.push_back(corners[i]);
  }
  out.radius = (params.occlusion_level == 1 ? 0.05 : 0.10) * truth.image.diagonal();
  return out;
}

std::vector<Segment> degrade(const SceneTruth& truth, const DegradeParams& params) {
  params.validate();
  const double diag = truth.image.diagonal();

  // Fragmentation: interior gaps only, the outer ends stay in place.
  Rng frag(derive_seed(params.seed, 1));
  std::vector<Segment> pieces;
  for (const LabeledSegment& ls : truth.truth_segments) {
    const Segment& s = ls.segment;
    const int k = frag.uniform_int(params.fragments_min, params.fragments_max);
    std::vector<double> cuts;
    for (int i = 1; i < k; ++i) cuts.push_back(frag.uniform(0.1, 0.9));
    std::sort(cuts.begin(), cuts.end());
    double start = 0.0;
    auto at = [&](double t) { return s.p + t * (s.q - s.p); };
    for (double c : cuts) {
      const double half_gap = 0.5 * frag.uniform(0.02, 0.08);
      const double end = std::max(start, c - half_gap);
      if (end > start) pieces.push_back({at(start), at(end), {}});
      start = std::max(start, c + half_gap);
    }
    if (start < 1.0) pieces.push_back({at(start), s.q, {}});
  }

  // Drop exactly round(p * N) fragments.
  Rng drop(derive_seed(params.seed, 2));
  const std::size_t n_drop = static_cast<std::size_t>(
      std::llround(params.drop_fraction * static_cast<double>(pieces.size())));
  std::vector<std::size_t> order(pieces.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  for (std::size_t i = order.size(); i > 1; --i) {
    const int j = drop.uniform_int(0, static_cast<int>(i) - 1);
    std::swap(order[i - 1], order[static_cast<std::size_t>(j)]);
  }
  std::vector<bool> keep(pieces.size(), true);
  for (std::size_t i = 0; i < n_drop && i < order.size(); ++i) keep[order[i]] = false;
  std::vector<Segment> out;
  for (std::size_t i = 0; i < pieces.size(); ++i) {
    if (keep[i]) out.push_back(pieces[i]);
  }

  // Clutter: the first half aligned with a random vanishing direction, the
  // rest with uniform directions.
  Rng clut(derive_seed(params.seed, 3));
  const std::size_t n_clutter = static_cast<std::size_t>(std::llround(
      params.clutter_ratio * static_cast<double>(truth.truth_segments.size())));
  for (std::size_t i = 0; i < n_clutter; ++i) {
    const Point2 m{clut.uniform(0.0, truth.image.width), clut.uniform(0.0, truth.image.height)};
    const double len = clut.uniform(0.02, 0.12) * diag;
    Point2 dir;
    if (i < n_clutter / 2) {
      const HPoint& vp = truth.truth_vps.vp(static_cast<Axis>(clut.uniform_int(0, 2)));
      dir = vp.at_infinity() ? Point2{vp.x, vp.y} : vp.point() - m;
      if (norm(dir) < 1e-9) dir = {1.0, 0.0};
    } else {
      const double t = clut.uniform(0.0, kPi);
      dir = {std::cos(t), std::sin(t)};
    }
    dir = (0.5 * len / norm(dir)) * dir;
    Segment c;
    if (clip_segment({m - dir, m + dir, {}}, truth.image, c)) out.push_back(c);
  }

  Rng noise(derive_seed(params.seed, 4));
  for (Segment& s : out) {
    s.p = noisy(s.p, params.endpoint_noise_sigma, noise);
    s.q = noisy(s.q, params.endpoint_noise_sigma, noise);
  }

  const OcclusionDisks disks = occlusion_disks(truth, params);
  if (!disks.centers.empty()) {
    std::erase_if(out, [&](const Segment& s) {
      return std::any_of(disks.centers.begin(), disks.centers.end(), [&](Point2 c) {
        return point_segment_distance(c, s) <= disks.radius;
      });
    });
  }
  std::erase_if(out, [](const Segment& s) { return s.length() <= 1e-9; });

  for (std::size_t i = 0; i < out.size(); ++i) out[i].id = SegmentId{static_cast<std::int64_t>(i)};
  return out;
}

}  // namespace framerec
