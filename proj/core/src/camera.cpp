#include "framerec/camera.hpp"

#include <Eigen/Dense>
#include <array>
#include <cmath>

#include "framerec/error.hpp"

namespace framerec {

namespace {

constexpr double kPlaneTol = 1e-9;

HPoint canonical(const HPoint& p) {
  if (p.at_infinity()) {
    const double n = std::hypot(p.x, p.y);
    if (!(n > 0.0)) throw Error(ErrorCode::InvalidTriplet, "vanishing direction is zero");
    return HPoint::direction(p.x / n, p.y / n);
  }
  return HPoint::finite(p.point());
}

bool same_point(const HPoint& a, const HPoint& b) {
  if (a.at_infinity() || b.at_infinity()) return false;
  return distance(a.point(), b.point()) <= 1e-9;
}

Line2 join_checked(const HPoint& a, const HPoint& b) {
  if (a.at_infinity() && b.at_infinity()) {
    throw Error(ErrorCode::InvalidTriplet, "more than one vanishing point at infinity");
  }
  if (same_point(a, b)) {
    throw Error(ErrorCode::InvalidTriplet, "vanishing points coincide");
  }
  return Line2::through(a, b);
}

Eigen::Vector3d direction_of(const HPoint& vp, double focal, Point2 pp) {
  Eigen::Vector3d d;
  if (vp.at_infinity()) {
    d = {vp.x, vp.y, 0.0};
  } else {
    const Point2 p = vp.point();
    d = {(p.x - pp.x) / focal, (p.y - pp.y) / focal, 1.0};
  }
  return d.normalized();
}

// Distance along `ray` to the horizontal plane y = height.
double ray_to_plane(const Eigen::Vector3d& ray, double height) {
  if (std::abs(ray.y()) < kPlaneTol) {
    throw Error(ErrorCode::RayParallelToPlane, "corner ray is parallel to the horizontal plane");
  }
  const double t = height / ray.y();
  if (!(t > 0.0)) {
    throw Error(ErrorCode::CornerBehindCamera, "corner plane lies behind the camera");
  }
  return t;
}

Eigen::Vector3d floor_point(const Eigen::Vector3d& ray) { return ray_to_plane(ray, -1.0) * ray; }

Eigen::Vector3d horizontal_plane_point(const Eigen::Vector3d& ray) {
  if (std::abs(ray.y()) < kPlaneTol) {
    throw Error(ErrorCode::RayParallelToPlane, "corner ray is parallel to the horizontal plane");
  }
  return ray_to_plane(ray, ray.y() < 0.0 ? -1.0 : 1.0) * ray;
}

// Point on `ray` whose (x, z) best matches the floor corner below it.
Eigen::Vector3d above(const Eigen::Vector3d& ray, const Eigen::Vector3d& floor) {
  const double den = ray.x() * ray.x() + ray.z() * ray.z();
  if (den < kPlaneTol * kPlaneTol) {
    throw Error(ErrorCode::RayParallelToPlane, "ceiling ray is vertical");
  }
  const double s = (ray.x() * floor.x() + ray.z() * floor.z()) / den;
  if (!(s > 0.0)) {
    throw Error(ErrorCode::CornerBehindCamera, "ceiling corner lies behind the camera");
  }
  return s * ray;
}

}  // namespace

VanishingTriplet::VanishingTriplet(const HPoint& vp_x, const HPoint& vp_y, const HPoint& vp_z)
    : vp_x_(canonical(vp_x)),
      vp_y_(canonical(vp_y)),
      vp_z_(canonical(vp_z)),
      l_xz_(join_checked(vp_x_, vp_z_)),
      l_yz_(join_checked(vp_y_, vp_z_)),
      l_xy_(join_checked(vp_x_, vp_y_)) {}

const HPoint& VanishingTriplet::vp(Axis axis) const {
  switch (axis) {
    case Axis::X: return vp_x_;
    case Axis::Y: return vp_y_;
    case Axis::Z: return vp_z_;
  }
  return vp_z_;
}

Eigen::Vector3d Camera::camera_ray(Point2 p) const {
  return {(p.x - principal_point.x) / focal, (p.y - principal_point.y) / focal, 1.0};
}

HPoint Camera::project(const Eigen::Vector3d& manhattan_point) const {
  const Eigen::Vector3d c = rotation.transpose() * (manhattan_point - optic_center);
  return {focal * c.x() + principal_point.x * c.z(), focal * c.y() + principal_point.y * c.z(),
          c.z()};
}

HPoint Camera::project_direction(const Eigen::Vector3d& manhattan_direction) const {
  const Eigen::Vector3d c = rotation.transpose() * manhattan_direction;
  return {focal * c.x() + principal_point.x * c.z(), focal * c.y() + principal_point.y * c.z(),
          c.z()};
}

Camera intrinsics_from_vps(const VanishingTriplet& triplet, ImageSize image) {
  const std::array<const HPoint*, 3> vps{&triplet.vp_x(), &triplet.vp_y(), &triplet.vp_z()};
  std::vector<Point2> finite;
  for (const HPoint* v : vps) {
    if (!v->at_infinity()) finite.push_back(v->point());
  }
  if (finite.size() < 2) {
    throw Error(ErrorCode::TooFewFiniteVps, "calibration needs at least two finite vanishing points");
  }

  Camera cam;
  double f2 = 0.0;
  if (finite.size() == 3) {
    // Orthocenter: (pp - v1).(v2 - v3) = 0 and (pp - v2).(v1 - v3) = 0.
    const Point2 v1 = finite[0];
    const Point2 v2 = finite[1];
    const Point2 v3 = finite[2];
    const Point2 e1 = v2 - v3;
    const Point2 e2 = v1 - v3;
    const double det = e1.x * e2.y - e1.y * e2.x;
    const double scale = norm(e1) * norm(e2);
    if (std::abs(det) <= 1e-12 * scale) {
      throw Error(ErrorCode::NegativeFocalSquare, "vanishing points are collinear");
    }
    const double r1 = dot(v1, e1);
    const double r2 = dot(v2, e2);
    cam.principal_point = {(r1 * e2.y - r2 * e1.y) / det, (e1.x * r2 - e2.x * r1) / det};
    const Point2 pp = cam.principal_point;
    f2 = -(dot(v1 - pp, v2 - pp) + dot(v2 - pp, v3 - pp) + dot(v1 - pp, v3 - pp)) / 3.0;
  } else {
    cam.principal_point = image.center();
    const Point2 pp = cam.principal_point;
    f2 = -dot(finite[0] - pp, finite[1] - pp);
  }
  if (!(f2 > 0.0)) {
    throw Error(ErrorCode::NegativeFocalSquare, "vanishing points give a non-positive focal square");
  }
  cam.focal = std::sqrt(f2);

  Eigen::Vector3d rx = direction_of(triplet.vp_x(), cam.focal, cam.principal_point);
  Eigen::Vector3d ry = direction_of(triplet.vp_y(), cam.focal, cam.principal_point);
  Eigen::Vector3d rz = direction_of(triplet.vp_z(), cam.focal, cam.principal_point);
  if (rz.z() < 0.0) rz = -rz;
  if (ry.y() > 0.0) ry = -ry;
  if (rx.dot(ry.cross(rz)) < 0.0) rx = -rx;

  Eigen::Matrix3d axes;
  axes.col(0) = rx;
  axes.col(1) = ry;
  axes.col(2) = rz;
  Eigen::JacobiSVD<Eigen::Matrix3d> svd(axes, Eigen::ComputeFullU | Eigen::ComputeFullV);
  Eigen::Matrix3d r_cm = svd.matrixU() * svd.matrixV().transpose();
  if (r_cm.determinant() < 0.0) {
    Eigen::Matrix3d u = svd.matrixU();
    u.col(2) = -u.col(2);
    r_cm = u * svd.matrixV().transpose();
  }
  cam.rotation = r_cm.transpose();
  return cam;
}

Eigen::Vector3d backproject(const Camera& camera, Point2 p) {
  return (camera.rotation * camera.camera_ray(p)).normalized();
}

std::vector<Corner3> reconstruct_corners(const Frame& frame, const Camera& camera) {
  const std::size_t n = corner_count(frame.category);
  if (frame.corners.size() != n) {
    throw Error(ErrorCode::LengthMismatch, "frame has the wrong number of corners");
  }
  std::vector<Eigen::Vector3d> rays;
  rays.reserve(n);
  for (const Point2& c : frame.corners) {
    if (!std::isfinite(c.x) || !std::isfinite(c.y)) {
      throw Error(ErrorCode::RayParallelToPlane, "frame corner is not finite");
    }
    rays.push_back(backproject(camera, c));
  }

  std::vector<Corner3> out;
  switch (frame.category) {
    case FrameCategory::FourC: {
      // A/B on the ceiling above D/C on the floor.
      const Eigen::Vector3d c = floor_point(rays[2]);
      const Eigen::Vector3d d = floor_point(rays[3]);
      out.push_back({above(rays[0], d), CornerLabel::A});
      out.push_back({above(rays[1], c), CornerLabel::B});
      out.push_back({c, CornerLabel::C});
      out.push_back({d, CornerLabel::D});
      break;
    }
    case FrameCategory::TwoVC: {
      const Eigen::Vector3d b = floor_point(rays[1]);
      out.push_back({above(rays[0], b), CornerLabel::A});
      out.push_back({b, CornerLabel::B});
      break;
    }
    case FrameCategory::TwoHC:
      out.push_back({horizontal_plane_point(rays[0]), CornerLabel::A});
      out.push_back({horizontal_plane_point(rays[1]), CornerLabel::B});
      break;
    case FrameCategory::OneC:
      out.push_back({horizontal_plane_point(rays[0]), CornerLabel::A});
      break;
  }
  for (Corner3& c : out) c.position += camera.optic_center;
  return out;
}

double depth_score(const Frame& frame, const Camera& camera) {
  double s = 0.0;
  for (const Corner3& c : reconstruct_corners(frame, camera)) {
    s += (c.position - camera.optic_center).norm();
  }
  return s;
}

}  // namespace framerec
