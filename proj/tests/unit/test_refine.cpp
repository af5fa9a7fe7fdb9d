#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "framerec/error.hpp"
#include "framerec/refine.hpp"
#include "oracles.hpp"
#include "scenes.hpp"

using namespace framerec;

namespace {

Segment seg(double x1, double y1, double x2, double y2, std::int64_t id = 0) {
  return {{x1, y1}, {x2, y2}, SegmentId{id}};
}

// Horizon y = 240, vertical line x = 320.
VanishingTriplet axis_triplet() {
  return VanishingTriplet(HPoint::direction(1, 0), HPoint::finite({320, -5000}),
                          HPoint::finite({320, 240}));
}

Segment at_angle(double len, double deg, std::int64_t id) {
  const double r = deg * M_PI / 180.0;
  return {{0, 0}, {len * std::cos(r), len * std::sin(r)}, SegmentId{id}};
}

}  // namespace

TEST(RefineConfig, Validation) {
  RefineConfig c;
  EXPECT_NO_THROW(c.validate());
  c.top_n = 4;
  EXPECT_THROW(c.validate(), Error);
  c.top_n = 11;
  EXPECT_THROW(c.validate(), Error);
  c = RefineConfig{};
  c.xi_len = 0.7;
  EXPECT_THROW(c.validate(), Error);
}

TEST(Reclassify, HorizonSegmentWithFourZNeighboursMoves) {
  AxisSets sets;
  sets.x = {seg(400, 244, 440, 246, 1)};
  sets.z = {seg(410, 235, 430, 255, 2), seg(415, 236, 425, 256, 3), seg(405, 240, 435, 250, 4),
            seg(420, 230, 420, 260, 5)};
  const AxisSets out = reclassify(sets, axis_triplet(), RefineConfig{});
  EXPECT_TRUE(out.x.empty());
  ASSERT_EQ(out.z.size(), 5u);
  EXPECT_EQ(out.z.back().id.value, 1);
}

TEST(Reclassify, TwoNeighboursAreNotEnough) {
  AxisSets sets;
  sets.x = {seg(400, 244, 440, 246, 1)};
  sets.z = {seg(410, 235, 430, 255, 2), seg(415, 236, 425, 256, 3)};
  const AxisSets out = reclassify(sets, axis_triplet(), RefineConfig{});
  ASSERT_EQ(out.x.size(), 1u);
  EXPECT_EQ(out.z.size(), 2u);
}

TEST(Reclassify, AngleGateBlocksSteepSegments) {
  const double r = 25.0 * M_PI / 180.0;
  AxisSets sets;
  sets.x = {seg(420 - 20 * std::cos(r), 245 - 20 * std::sin(r), 420 + 20 * std::cos(r),
                245 + 20 * std::sin(r), 1)};
  sets.z = {seg(410, 235, 430, 255, 2), seg(415, 236, 425, 256, 3), seg(405, 240, 435, 250, 4),
            seg(420, 230, 420, 260, 5)};
  const AxisSets out = reclassify(sets, axis_triplet(), RefineConfig{});
  EXPECT_EQ(out.x.size(), 1u);
}

TEST(Collinearity, Examples) {
  CollinearityReport r = collinearity_error(seg(0, 0, 1, 0), seg(1, 0, 2, 0));
  EXPECT_EQ(r.long_distance, 2.0);
  EXPECT_EQ(r.short_distance, 0.0);
  EXPECT_EQ(r.length, 2.0);
  EXPECT_EQ(r.error, 0.0);

  r = collinearity_error(seg(0, 0, 1, 0), seg(1.5, 0, 2, 0));
  EXPECT_EQ(r.long_distance, 2.0);
  EXPECT_EQ(r.short_distance, 0.5);
  EXPECT_EQ(r.length, 1.5);
  EXPECT_EQ(r.error, 0.0);

  r = collinearity_error(seg(0, 0, 1, 0), seg(0, 0.2, 1, 0.2));
  EXPECT_NEAR(r.long_distance, std::sqrt(1.04), 1e-12);
  EXPECT_NEAR(r.short_distance, 0.2, 1e-12);
  EXPECT_EQ(r.length, 2.0);
  EXPECT_NEAR(r.error, 2.2 - std::sqrt(1.04), 1e-12);

  EXPECT_NEAR(collinearity_error(seg(0, 0, 1, 0), seg(0, 0, 0, 1)).error, 2.0 - std::sqrt(2.0), 1e-12);
}

TEST(Collinearity, MatchesSortedPositionOracleOnCollinearPairs) {
  // Overlapping and nested pairs included.
  std::mt19937_64 gen(5);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int i = 0; i < 500; ++i) {
    const Point2 o{320 + 300 * u(gen), 240 + 200 * u(gen)};
    const double ang = M_PI * u(gen);
    const Point2 d{std::cos(ang), std::sin(ang)};
    const Segment a{o + d * (300 * u(gen)), o + d * (300 * u(gen)), {}};
    const Segment b{o + d * (300 * u(gen)), o + d * (300 * u(gen)), {}};
    EXPECT_NEAR(collinearity_error(a, b).error, oracle::collinear_gap_error(a, b), 1e-9);
  }
}

TEST(Collinearity, ZeroForCollinearDisjointPairs) {
  std::mt19937_64 gen(9);
  std::uniform_real_distribution<double> u(-1.0, 1.0), t(0.0, 1.0);
  for (int i = 0; i < 1000; ++i) {
    const Point2 o{320 + 300 * u(gen), 240 + 200 * u(gen)};
    const double ang = M_PI * u(gen);
    const Point2 d{std::cos(ang), std::sin(ang)};
    std::array<double, 4> ts{400 * u(gen), 400 * u(gen), 400 * u(gen), 400 * u(gen)};
    std::sort(ts.begin(), ts.end());
    const Segment a{o + d * ts[0], o + d * ts[1], SegmentId{0}};
    const Segment b{o + d * ts[2], o + d * ts[3], SegmentId{1}};
    EXPECT_EQ(collinearity_error(a, b).error, 0.0);
    EXPECT_EQ(collinearity_error(b.reversed(), a).error, 0.0);
  }
}

TEST(Connect, AbuttingPairMerges) {
  IdAllocator ids(10);
  const auto out = connect_collinear({seg(0, 0, 1, 0, 1), seg(1, 0, 2, 0, 2)}, RefineConfig{}, ids);
  ASSERT_EQ(out.size(), 1u);
  const double lo = std::min(out[0].p.x, out[0].q.x), hi = std::max(out[0].p.x, out[0].q.x);
  EXPECT_EQ(lo, 0.0);
  EXPECT_EQ(hi, 2.0);
  EXPECT_EQ(out[0].id.value, 10);
}

TEST(Connect, ChainMergesToOne) {
  IdAllocator ids(10);
  const auto out = connect_collinear(
      {seg(0, 0, 10, 0, 1), seg(12, 0, 20, 0, 2), seg(25, 0, 40, 0, 3)}, RefineConfig{}, ids);
  ASSERT_EQ(out.size(), 1u);
  EXPECT_EQ(out[0].length(), 40.0);
  EXPECT_EQ(ids.peek(), 12);
}

TEST(Connect, PerpendicularPairStays) {
  IdAllocator ids(10);
  const auto out = connect_collinear({seg(0, 0, 1, 0, 1), seg(0, 0, 0, 1, 2)}, RefineConfig{}, ids);
  EXPECT_EQ(out.size(), 2u);
}

TEST(Connect, IsIdempotent) {
  for (FrameCategory cat : fixture::kCategories) {
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
      const SceneTruth t = fixture::scene(cat, seed);
      DegradeParams dp;
      dp.seed = seed;
      const auto segs = degrade(t, dp);
      const AxisSets sets = classify_segments(segs, t.truth_vps);
      for (Axis a : {Axis::X, Axis::Y, Axis::Z}) {
        IdAllocator ids = IdAllocator::after(segs);
        const auto once = connect_collinear(sets.of(a), RefineConfig{}, ids);
        const std::int64_t next = ids.peek();
        const auto twice = connect_collinear(once, RefineConfig{}, ids);
        ASSERT_EQ(once.size(), twice.size());
        for (std::size_t i = 0; i < once.size(); ++i) {
          EXPECT_EQ(once[i].p, twice[i].p);
          EXPECT_EQ(once[i].q, twice[i].q);
          EXPECT_EQ(once[i].id, twice[i].id);
        }
        EXPECT_EQ(ids.peek(), next);
      }
    }
  }
}

class FitMissing : public ::testing::Test {
 protected:
  VanishingTriplet triplet{HPoint::direction(1, 0), HPoint::finite({5000, 300}),
                           HPoint::finite({320, -1000})};
  PartitionedSegments parts;
  void SetUp() override {
    parts.category = FrameCategory::OneC;
    for (GroupId g : groups_of(FrameCategory::OneC)) parts.groups[g];
  }
};

TEST_F(FitMissing, LineThroughVpAndSupportingPoint) {
  parts.groups[{Axis::X, Tag::None}] = {seg(100, 100, 200, 100, 1)};
  IdAllocator ids(50);
  const SegmentGroups f = fit_missing(parts, triplet, correspondence_table(FrameCategory::OneC),
                                      ImageSize{640, 480}, ids);
  const auto& z = f.at({Axis::Z, Tag::None});
  ASSERT_EQ(z.size(), 1u);
  const Segment& s = z[0];
  const Point2 top = s.p.y < s.q.y ? s.p : s.q;
  const Point2 bottom = s.p.y < s.q.y ? s.q : s.p;
  EXPECT_NEAR(top.x, 120.0, 1e-9);
  EXPECT_NEAR(top.y, 0.0, 1e-9);
  EXPECT_NEAR(bottom.x, 24.0, 1e-9);
  EXPECT_NEAR(bottom.y, 480.0, 1e-9);
  EXPECT_GE(s.id.value, 50);
}

TEST_F(FitMissing, EmptySupportersFitNothing) {
  IdAllocator ids(0);
  const SegmentGroups f = fit_missing(parts, triplet, correspondence_table(FrameCategory::OneC),
                                      ImageSize{640, 480}, ids);
  for (const auto& [g, v] : f) EXPECT_TRUE(v.empty()) << to_string(g);
}

TEST_F(FitMissing, PointsOnOneRayAreDeduplicated) {
  parts.groups[{Axis::X, Tag::None}] = {seg(100, 100, 200, 100, 1), seg(60, 300, 200, 300, 2)};
  IdAllocator ids(0);
  const SegmentGroups f = fit_missing(parts, triplet, correspondence_table(FrameCategory::OneC),
                                      ImageSize{640, 480}, ids);
  EXPECT_EQ(f.at({Axis::Z, Tag::None}).size(), 1u);
}

TEST(InitialWeight, LengthAndAngleTerms) {
  std::vector<WeightedCandidate> g{{at_angle(10, 2, 0), Origin::Detected},
                                   {at_angle(30, 1, 1), Origin::Detected}};
  initial_weight(g, HPoint::direction(1, 0), RefineConfig{});
  EXPECT_NEAR(g[0].weight, 0.125, 1e-9);
  EXPECT_NEAR(g[1].weight, 0.875, 1e-9);
}

TEST(InitialWeight, SingleCandidateWeighsOne) {
  std::vector<WeightedCandidate> g{{at_angle(10, 3, 0), Origin::Detected}};
  initial_weight(g, HPoint::direction(1, 0), RefineConfig{});
  EXPECT_DOUBLE_EQ(g[0].weight, 1.0);
}

TEST(InitialWeight, FittedCandidateUsesAngleAlone) {
  std::vector<WeightedCandidate> g{{at_angle(10, 1, 0), Origin::Fitted},
                                   {at_angle(20, 0, 1), Origin::Detected},
                                   {at_angle(30, 3, 2), Origin::Detected}};
  initial_weight(g, HPoint::direction(1, 0), RefineConfig{});
  EXPECT_NEAR(g[0].weight, 0.4, 1e-9);
  EXPECT_NEAR(g[1].weight, 0.5 * 0.4 + 0.5 * 0.6, 1e-9);
  EXPECT_NEAR(g[2].weight, 0.5 * 0.6, 1e-9);
}

TEST(VoteGeometry, Penetration) {
  // E = (0, 0), C = (0, -0.5), D = (0, 1.5).
  const VoteGeometry g = vote_geometry(seg(-10, 0, 10, 0), seg(0, -0.5, 0, 1.5));
  ASSERT_TRUE(g.votes);
  EXPECT_EQ(g.label, 1);
  EXPECT_NEAR(g.raw, 0.25, 1e-12);
  EXPECT_LT(vote_increment(g, 1.0, 1.0), 0.0);
}

TEST(VoteGeometry, Touch) {
  const VoteGeometry g = vote_geometry(seg(-10, 0, 10, 0), seg(0, 1, 0, 2));
  ASSERT_TRUE(g.votes);
  EXPECT_EQ(g.label, 0);
  EXPECT_NEAR(g.raw, 0.5, 1e-12);
  EXPECT_GT(vote_increment(g, 1.0, 1.0), 0.0);
  EXPECT_NEAR(vote_increment(g, 0.4, 2.0), 0.1, 1e-12);
}

TEST(VoteGeometry, ParallelSupporterDoesNotVote) {
  const VoteGeometry g = vote_geometry(seg(-10, 0, 10, 0), seg(-10, 5, 10, 5));
  EXPECT_FALSE(g.votes);
  EXPECT_EQ(vote_increment(g, 1.0, 1.0), 0.0);
}

TEST(VoteGeometry, MeetingBeyondTheCandidateDoesNotVote) {
  const VoteGeometry g = vote_geometry(seg(-10, 0, 10, 0), seg(20, 1, 20, 5));
  EXPECT_FALSE(g.votes);
}
