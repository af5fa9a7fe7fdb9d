#include <gtest/gtest.h>

#include <set>

#include "framerec/classify.hpp"
#include "scenes.hpp"

using namespace framerec;

namespace {

// Horizon y = 240, vertical line x = 320.
VanishingTriplet axis_triplet() {
  return VanishingTriplet(HPoint::direction(1, 0), HPoint::finite({320, -5000}),
                          HPoint::finite({320, 240}));
}

Segment seg(double x1, double y1, double x2, double y2, std::int64_t id = 0) {
  return {{x1, y1}, {x2, y2}, SegmentId{id}};
}

}  // namespace

TEST(Classify, SimulatedXEdgeGoesToX) {
  const SceneTruth t = fixture::scene(FrameCategory::FourC, 0);
  const Segment s = fixture::truth_selection(t).at({Axis::X, Tag::C});
  const std::vector<Segment> in{s};
  const AxisSets sets = classify_segments(in, t.truth_vps);
  ASSERT_EQ(sets.x.size(), 1u);
  EXPECT_EQ(sets.classified_count(), 1u);
}

TEST(Classify, TiesGoToX) {
  const VanishingTriplet t(HPoint::finite({100, 100}), HPoint::finite({100, -100}),
                           HPoint::finite({0, 500}));
  const std::vector<Segment> in{seg(-5, 0, 5, 0)};
  const AxisSets sets = classify_segments(in, t, 50.0);
  EXPECT_EQ(sets.x.size(), 1u);
  EXPECT_TRUE(sets.y.empty());
}

TEST(Classify, FarFromEveryVpIsAnOutlier) {
  const VanishingTriplet t(HPoint::finite({100, 100}), HPoint::finite({100, -100}),
                           HPoint::finite({0, 500}));
  const std::vector<Segment> in{seg(-5, 0, 5, 0)};
  const AxisSets sets = classify_segments(in, t, 8.0);
  EXPECT_EQ(sets.outliers.size(), 1u);
  EXPECT_EQ(sets.classified_count(), 0u);
}

TEST(Partition, FourCHorizontalAboveHorizonIsCeiling) {
  AxisSets sets;
  sets.x = {seg(100, 100, 200, 100, 1), seg(100, 400, 200, 400, 2)};
  const PartitionedSegments p = partition_subsets(sets, axis_triplet(), FrameCategory::FourC);
  ASSERT_EQ(p.groups.at({Axis::X, Tag::C}).size(), 1u);
  EXPECT_EQ(p.groups.at({Axis::X, Tag::C})[0].id.value, 1);
  EXPECT_EQ(p.groups.at({Axis::X, Tag::F})[0].id.value, 2);
}

TEST(Partition, FourCZSegmentsByQuadrant) {
  AxisSets sets;
  sets.z = {seg(100, 100, 110, 110, 1), seg(500, 100, 490, 110, 2), seg(100, 400, 110, 390, 3),
            seg(500, 400, 490, 390, 4)};
  const PartitionedSegments p = partition_subsets(sets, axis_triplet(), FrameCategory::FourC);
  EXPECT_EQ(p.groups.at({Axis::Z, Tag::CL})[0].id.value, 1);
  EXPECT_EQ(p.groups.at({Axis::Z, Tag::CR})[0].id.value, 2);
  EXPECT_EQ(p.groups.at({Axis::Z, Tag::FL})[0].id.value, 3);
  EXPECT_EQ(p.groups.at({Axis::Z, Tag::FR})[0].id.value, 4);
}

TEST(Partition, OneCKeepsTheThreeSets) {
  AxisSets sets;
  sets.x = {seg(0, 10, 50, 10)};
  sets.y = {seg(10, 0, 10, 50)};
  sets.z = {seg(0, 0, 30, 30)};
  const PartitionedSegments p = partition_subsets(sets, axis_triplet(), FrameCategory::OneC);
  std::set<GroupId> keys;
  for (const auto& [g, v] : p.groups) {
    keys.insert(g);
    EXPECT_EQ(v.size(), 1u);
  }
  EXPECT_EQ(keys, (std::set<GroupId>{{Axis::X, Tag::None}, {Axis::Y, Tag::None}, {Axis::Z, Tag::None}}));
}

TEST(Partition, MidpointOnSplitAxisIsAnOutlier) {
  AxisSets sets;
  sets.y = {seg(320, 50, 320, 150)};
  const PartitionedSegments p = partition_subsets(sets, axis_triplet(), FrameCategory::TwoHC);
  EXPECT_EQ(p.outliers.size(), 1u);
  EXPECT_TRUE(p.groups.at({Axis::Y, Tag::L}).empty());
  EXPECT_TRUE(p.groups.at({Axis::Y, Tag::R}).empty());
}

TEST(Partition, SimulatedLabelsAreReproduced) {
  for (FrameCategory cat : fixture::kCategories) {
    for (std::uint64_t seed = 0; seed < 25; ++seed) {
      const SceneTruth t = fixture::scene(cat, seed);
      const std::vector<Segment> segs = t.segments();
      const PartitionedSegments p =
          partition_subsets(classify_segments(segs, t.truth_vps), t.truth_vps, cat);
      EXPECT_TRUE(p.outliers.empty());
      for (const LabeledSegment& ls : t.truth_segments) {
        const auto& g = p.groups.at(ls.group);
        ASSERT_EQ(g.size(), 1u) << to_string(ls.group);
        EXPECT_EQ(g[0].id, ls.segment.id);
      }
    }
  }
}

TEST(Correspondence, FourCCeilingXSupporters) {
  const Correspondence c = correspondence_table(FrameCategory::FourC);
  const std::vector<Supporter> expect{{{Axis::Z, Tag::CL}, EndpointSide::Lower},
                                      {{Axis::Z, Tag::CR}, EndpointSide::Lower},
                                      {{Axis::Y, Tag::L}, EndpointSide::Upper},
                                      {{Axis::Y, Tag::R}, EndpointSide::Upper}};
  EXPECT_EQ(c.at({Axis::X, Tag::C}), expect);
}

TEST(Correspondence, OneCZIsSupportedByXAndY) {
  const Correspondence c = correspondence_table(FrameCategory::OneC);
  const auto& sup = c.at({Axis::Z, Tag::None});
  ASSERT_EQ(sup.size(), 2u);
  EXPECT_EQ(sup[0].group.axis, Axis::X);
  EXPECT_EQ(sup[1].group.axis, Axis::Y);
}

TEST(Correspondence, EveryGroupVotesAndIsVotedOn) {
  for (FrameCategory cat : fixture::kCategories) {
    const Correspondence c = correspondence_table(cat);
    std::set<GroupId> votees, supporters;
    for (const auto& [g, sups] : c) {
      votees.insert(g);
      for (const Supporter& s : sups) {
        supporters.insert(s.group);
        EXPECT_NE(s.group, g);
        EXPECT_TRUE(has_group(cat, s.group));
      }
    }
    const auto groups = groups_of(cat);
    const std::set<GroupId> all(groups.begin(), groups.end());
    EXPECT_EQ(votees, all) << to_string(cat);
    EXPECT_EQ(supporters, all) << to_string(cat);
  }
}

TEST(Correspondence, TruthEndpointsLieOnTheirBoxLines) {
  // Every supporting endpoint named by the table touches the votee's true
  // box line.
  for (FrameCategory cat : fixture::kCategories) {
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
      const SceneTruth t = fixture::scene(cat, seed);
      const auto sel = fixture::truth_selection(t);
      for (const auto& [g, sups] : correspondence_table(cat)) {
        for (const Supporter& s : sups) {
          const Point2 e = endpoint(sel.at(s.group), s.side);
          EXPECT_LT(std::abs(sel.at(g).line().signed_distance(e)), 1e-6)
              << to_string(cat) << " " << to_string(g) << " <- " << to_string(s.group);
        }
      }
    }
  }
}

TEST(Endpoint, Sides) {
  const Segment s = seg(10, 50, 30, 20);
  EXPECT_EQ(endpoint(s, EndpointSide::Upper), (Point2{30, 20}));
  EXPECT_EQ(endpoint(s, EndpointSide::Lower), (Point2{10, 50}));
  EXPECT_EQ(endpoint(s, EndpointSide::Left), (Point2{10, 50}));
  EXPECT_EQ(endpoint(s, EndpointSide::Right), (Point2{30, 20}));
}
