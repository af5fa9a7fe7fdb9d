#pragma once

// Synthetic box rooms seen by a pinhole camera, with ground-truth frames and
// controlled degradations of the projected edges.

#include <cstdint>
#include <vector>

#include "framerec/camera.hpp"
#include "framerec/frame_model.hpp"
#include "framerec/geometry.hpp"

namespace framerec {

// Axis-aligned room in camera-height units. The camera sits at the origin;
// the floor is y = -1.
struct Room {
  double width = 4.0;   // along x
  double height = 3.0;  // along y
  double depth = 6.0;   // along z
  double x_left = 2.0;  // x of the wall seen on the image left (x points left)
  double z_back = 5.0;  // z of the back wall

  double x_right() const { return x_left - width; }
  double floor() const { return -1.0; }
  double ceiling() const { return height - 1.0; }
  double z_front() const { return z_back - depth; }
};

struct LabeledSegment {
  Segment segment;
  GroupId group;
};

struct SceneTruth {
  std::uint64_t seed = 0;
  ImageSize image;
  Room room;
  Camera camera;
  FrameCategory category = FrameCategory::FourC;
  Frame truth_frame;
  VanishingTriplet truth_vps{HPoint::direction(1, 0), HPoint{0, 0, 1}, HPoint{1, 1, 1}};
  std::vector<LabeledSegment> truth_segments;

  std::vector<Segment> segments() const;
};

// Throws Error(CategoryUnreachable) after 100 rejected samples.
SceneTruth generate_scene(std::uint64_t seed, FrameCategory category, ImageSize image = {});

struct DegradeParams {
  int fragments_min = 2;
  int fragments_max = 4;
  double drop_fraction = 0.2;
  double clutter_ratio = 3.0;
  double endpoint_noise_sigma = 1.0;
  int occlusion_level = 0;
  std::uint64_t seed = 0;

  // Throws Error(InvalidConfig).
  void validate() const;

  static DegradeParams none();
};

// Output ids run 0..n-1 in output order.
std::vector<Segment> degrade(const SceneTruth& truth, const DegradeParams& params);

// Centers and radius of the occlusion disks for the given truth and params;
// empty at level 0.
struct OcclusionDisks {
  std::vector<Point2> centers;
  double radius = 0.0;
};
OcclusionDisks occlusion_disks(const SceneTruth& truth, const DegradeParams& params);

}  // namespace framerec
