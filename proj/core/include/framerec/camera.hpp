#pragma once

// Calibration from three orthogonal vanishing points and the corner depth
// score used to rank candidate frames.
//
// Manhattan frame: right-handed, y up, z into the scene, camera optic center
// at the origin and one unit above the floor plane y = -1.

#include <Eigen/Core>
#include <vector>

#include "framerec/frame_model.hpp"
#include "framerec/geometry.hpp"

namespace framerec {

class VanishingTriplet {
 public:
  // Throws Error(InvalidTriplet) if two points coincide or more than one is
  // at infinity.
  VanishingTriplet(const HPoint& vp_x, const HPoint& vp_y, const HPoint& vp_z);

  const HPoint& vp_x() const { return vp_x_; }
  const HPoint& vp_y() const { return vp_y_; }
  const HPoint& vp_z() const { return vp_z_; }
  const HPoint& vp(Axis axis) const;

  // Horizon: join of vp_x and vp_z.
  const Line2& l_xz() const { return l_xz_; }
  // Vertical line: join of vp_y and vp_z.
  const Line2& l_yz() const { return l_yz_; }
  const Line2& l_xy() const { return l_xy_; }

 private:
  HPoint vp_x_;
  HPoint vp_y_;
  HPoint vp_z_;
  Line2 l_xz_;
  Line2 l_yz_;
  Line2 l_xy_;
};

struct Camera {
  double focal = 1.0;
  Point2 principal_point;
  // Maps camera coordinates (x right, y down, z forward) to the Manhattan
  // frame.
  Eigen::Matrix3d rotation = Eigen::Matrix3d::Identity();
  Eigen::Vector3d optic_center = Eigen::Vector3d::Zero();

  // Ray through pixel p in camera coordinates, z component 1.
  Eigen::Vector3d camera_ray(Point2 p) const;
  HPoint project(const Eigen::Vector3d& manhattan_point) const;
  HPoint project_direction(const Eigen::Vector3d& manhattan_direction) const;
};

Camera intrinsics_from_vps(const VanishingTriplet& triplet, ImageSize image);

// Unit ray through pixel p, expressed in the Manhattan frame.
Eigen::Vector3d backproject(const Camera& camera, Point2 p);

struct Corner3 {
  Eigen::Vector3d position;
  CornerLabel source_corner = CornerLabel::A;
};

// Lifts the frame's corners to 3D with the camera one unit above the floor.
std::vector<Corner3> reconstruct_corners(const Frame& frame, const Camera& camera);

// Sum of optic-center distances over the reconstructed corners.
double depth_score(const Frame& frame, const Camera& camera);

}  // namespace framerec
