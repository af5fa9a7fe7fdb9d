#include <gtest/gtest.h>

#include <Eigen/Geometry>
#include <cmath>
#include <random>

#include "framerec/camera.hpp"
#include "framerec/error.hpp"
#include "scenes.hpp"

using namespace framerec;

namespace {

Camera synthetic_camera(const Eigen::Matrix3d& rotation) {
  Camera c;
  c.focal = 500.0;
  c.principal_point = {320.0, 240.0};
  c.rotation = rotation;
  return c;
}

VanishingTriplet triplet_of(const Camera& c) {
  return VanishingTriplet(c.project_direction(Eigen::Vector3d::UnitX()),
                          c.project_direction(Eigen::Vector3d::UnitY()),
                          c.project_direction(Eigen::Vector3d::UnitZ()));
}

Eigen::Matrix3d tilted(double yaw_deg, double pitch_deg) {
  const double d = M_PI / 180.0;
  // Camera y points down in the image, Manhattan y points up.
  const Eigen::Matrix3d flip = Eigen::Vector3d(1.0, -1.0, 1.0).asDiagonal();
  return (Eigen::AngleAxisd(yaw_deg * d, Eigen::Vector3d::UnitY()) *
          Eigen::AngleAxisd(pitch_deg * d, Eigen::Vector3d::UnitX()))
             .toRotationMatrix() *
         flip * Eigen::Vector3d(-1.0, 1.0, 1.0).asDiagonal();
}

}  // namespace

TEST(Intrinsics, RecoversFocalAndPrincipalPoint) {
  std::mt19937_64 gen(11);
  std::uniform_real_distribution<double> yaw(10.0, 50.0), pitch(8.0, 40.0), sign(-1.0, 1.0);
  for (int i = 0; i < 50; ++i) {
    const double s = sign(gen) < 0 ? -1.0 : 1.0;
    const Camera truth = synthetic_camera(tilted(s * yaw(gen), pitch(gen)));
    const Camera got = intrinsics_from_vps(triplet_of(truth), ImageSize{});
    EXPECT_NEAR(got.focal, 500.0, 1e-6);
    EXPECT_NEAR(got.principal_point.x, 320.0, 1e-6);
    EXPECT_NEAR(got.principal_point.y, 240.0, 1e-6);
  }
}

TEST(Intrinsics, SimulatedCamerasRoundTrip) {
  for (FrameCategory cat : fixture::kCategories) {
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
      const SceneTruth t = fixture::scene(cat, seed);
      const Camera got = intrinsics_from_vps(t.truth_vps, t.image);
      EXPECT_NEAR(got.focal, t.camera.focal, 1e-6);
      EXPECT_NEAR(got.principal_point.x, t.camera.principal_point.x, 1e-6);
      EXPECT_NEAR(got.principal_point.y, t.camera.principal_point.y, 1e-6);
      EXPECT_LT((got.rotation - t.camera.rotation).norm(), 1e-9);
    }
  }
}

TEST(Intrinsics, VerticalVpAtInfinityUsesImageCenter) {
  const Camera truth = synthetic_camera(tilted(30.0, 0.0));
  const VanishingTriplet t = triplet_of(truth);
  ASSERT_TRUE(t.vp_y().at_infinity());
  const Camera got = intrinsics_from_vps(t, ImageSize{640, 480});
  EXPECT_EQ(got.principal_point, (Point2{320.0, 240.0}));
  EXPECT_NEAR(got.focal, 500.0, 1e-9);
}

TEST(Intrinsics, CollinearVpsAreRejected) {
  const VanishingTriplet t(HPoint::finite({0, 100}), HPoint::finite({300, 100}),
                           HPoint::finite({900, 100}));
  try {
    intrinsics_from_vps(t, ImageSize{});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NegativeFocalSquare);
  }
}

TEST(Triplet, RejectsTwoPointsAtInfinity) {
  EXPECT_THROW(VanishingTriplet(HPoint::direction(1, 0), HPoint::direction(0, 1),
                                HPoint::finite({1, 1})),
               Error);
}

TEST(Backproject, PrincipalPointIsTheOpticalAxis) {
  const Camera c = synthetic_camera(tilted(20.0, 15.0));
  const Eigen::Vector3d ray = backproject(c, c.principal_point);
  EXPECT_LT((ray - c.rotation * Eigen::Vector3d::UnitZ()).norm(), 1e-12);
}

TEST(Backproject, VanishingPointMapsToItsAxis) {
  const Camera c = synthetic_camera(tilted(-25.0, 12.0));
  const VanishingTriplet t = triplet_of(c);
  const Eigen::Vector3d ray = backproject(c, t.vp_x().point());
  EXPECT_NEAR(std::abs(ray.x()), 1.0, 1e-9);
  EXPECT_NEAR(ray.y(), 0.0, 1e-9);
  EXPECT_NEAR(ray.z(), 0.0, 1e-9);
}

TEST(Backproject, RaysAreUnit) {
  const Camera c = synthetic_camera(tilted(33.0, 21.0));
  std::mt19937_64 gen(3);
  std::uniform_real_distribution<double> u(-200.0, 900.0);
  for (int i = 0; i < 100; ++i) EXPECT_NEAR(backproject(c, {u(gen), u(gen)}).norm(), 1.0, 1e-12);
}

TEST(Reconstruct, TwoVcMatchesRoomCorners) {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const SceneTruth t = fixture::scene(FrameCategory::TwoVC, seed);
    const Camera cam = intrinsics_from_vps(t.truth_vps, t.image);
    const auto corners = reconstruct_corners(t.truth_frame, cam);
    ASSERT_EQ(corners.size(), 2u);
    const Eigen::Vector3d ceil{t.room.x_left, t.room.ceiling(), t.room.z_back};
    const Eigen::Vector3d floor{t.room.x_left, t.room.floor(), t.room.z_back};
    EXPECT_LT((corners[0].position - ceil).norm(), 1e-6);
    EXPECT_LT((corners[1].position - floor).norm(), 1e-6);
  }
}

TEST(Reconstruct, FourCMatchesRoomCorners) {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const SceneTruth t = fixture::scene(FrameCategory::FourC, seed);
    const auto corners = reconstruct_corners(t.truth_frame, t.camera);
    const Room& r = t.room;
    const std::array<Eigen::Vector3d, 4> expect{
        Eigen::Vector3d{r.x_left, r.ceiling(), r.z_back}, Eigen::Vector3d{r.x_right(), r.ceiling(), r.z_back},
        Eigen::Vector3d{r.x_right(), r.floor(), r.z_back}, Eigen::Vector3d{r.x_left, r.floor(), r.z_back}};
    for (int i = 0; i < 4; ++i) EXPECT_LT((corners[i].position - expect[i]).norm(), 1e-6);
  }
}

TEST(Reconstruct, CornerOnHorizonIsAnError) {
  const SceneTruth t = fixture::scene(FrameCategory::OneC, 1);
  Frame f = t.truth_frame;
  f.corners[0] = t.truth_vps.l_xz().foot_of(f.corners[0]);
  try {
    reconstruct_corners(f, t.camera);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::RayParallelToPlane);
  }
}

TEST(Reconstruct, IsDeterministic) {
  const SceneTruth t = fixture::scene(FrameCategory::FourC, 4);
  const auto a = reconstruct_corners(t.truth_frame, t.camera);
  const auto b = reconstruct_corners(t.truth_frame, t.camera);
  for (std::size_t i = 0; i < a.size(); ++i) EXPECT_EQ(a[i].position, b[i].position);
  EXPECT_EQ(depth_score(t.truth_frame, t.camera), depth_score(t.truth_frame, t.camera));
}

TEST(DepthScore, SingleCornerOnOpticalAxis) {
  // Looking down 30 degrees: the principal ray hits the floor at distance 2.
  const Camera c = synthetic_camera(tilted(0.0, 30.0));
  Frame f;
  f.category = FrameCategory::OneC;
  f.corners = {c.principal_point};
  const Eigen::Vector3d ray = backproject(c, c.principal_point);
  ASSERT_LT(ray.y(), 0.0);
  EXPECT_NEAR(depth_score(f, c), 1.0 / -ray.y(), 1e-12);
  EXPECT_NEAR(depth_score(f, c), 2.0, 1e-12);
}

TEST(DepthScore, TrueTwoVcFrameBeatsShrunkenFrames) {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const SceneTruth t = fixture::scene(FrameCategory::TwoVC, seed);
    const double s_true = depth_score(t.truth_frame, t.camera);
    // Corners moved toward the camera along the walls' silhouette interior.
    for (double k : {0.9, 0.7, 0.5}) {
      Frame f = t.truth_frame;
      const Room& r = t.room;
      const Eigen::Vector3d top{r.x_left, r.ceiling(), r.z_back * k};
      const Eigen::Vector3d bottom{r.x_left, r.floor(), r.z_back * k};
      f.corners = {t.camera.project(top).point(), t.camera.project(bottom).point()};
      EXPECT_GT(s_true, depth_score(f, t.camera));
    }
  }
}
