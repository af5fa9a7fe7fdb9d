#pragma once

// Assignment of segments to vanishing directions and to the positional
// candidate box-line groups of a frame category.

#include <map>
#include <span>
#include <vector>

#include "framerec/camera.hpp"
#include "framerec/frame_model.hpp"
#include "framerec/geometry.hpp"

namespace framerec {

struct AxisSets {
  std::vector<Segment> x;
  std::vector<Segment> y;
  std::vector<Segment> z;
  std::vector<Segment> outliers;

  std::vector<Segment>& of(Axis axis);
  const std::vector<Segment>& of(Axis axis) const;
  std::size_t classified_count() const { return x.size() + y.size() + z.size(); }
};

struct PartitionedSegments {
  FrameCategory category = FrameCategory::FourC;
  std::map<GroupId, std::vector<Segment>> groups;
  std::vector<Segment> outliers;
};

enum class EndpointSide { Upper, Lower, Left, Right };

std::string_view to_string(EndpointSide side);

struct Supporter {
  GroupId group;
  EndpointSide side = EndpointSide::Upper;
  friend bool operator==(const Supporter&, const Supporter&) = default;
};

// For each candidate box-line group, the groups whose endpoints (on the
// given side) are its candidate supporting points.
using Correspondence = std::map<GroupId, std::vector<Supporter>>;

// Nearest vanishing direction within tau_class degrees; ties go x, y, z.
AxisSets classify_segments(std::span<const Segment> segments, const VanishingTriplet& triplet,
                           double tau_class_deg = 8.0);

// Splits the sets by the side of l_xz and/or l_yz their midpoints lie on.
// Midpoints within `axis_margin` pixels of a splitting axis become outliers.
PartitionedSegments partition_subsets(const AxisSets& sets, const VanishingTriplet& triplet,
                                      FrameCategory category, double axis_margin = 0.5);

Correspondence correspondence_table(FrameCategory category);

// Endpoint on the requested side in image coordinates (upper = smaller y,
// left = smaller x).
Point2 endpoint(const Segment& s, EndpointSide side);

// True when p lies above the line in the image (smaller y).
bool above_line(const Line2& line, Point2 p);
// True when p lies left of the line in the image (smaller x).
bool left_of_line(const Line2& line, Point2 p);

}  // namespace framerec
