#pragma once

// Frame models: which candidate box-line groups a category has, and the
// Frame value produced by the pipeline.

#include <compare>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "framerec/geometry.hpp"

namespace framerec {

enum class Axis { X, Y, Z };

// "4c", "2vc", "2hc", "1c": four corners, two corners joined by a vertical
// edge, two corners joined by a horizontal edge, one corner.
enum class FrameCategory { FourC, TwoVC, TwoHC, OneC };

// Positional tag of a group: ceiling, floor, left, right and their
// combinations; None for an undivided set.
enum class Tag { None, C, F, L, R, CL, CR, FL, FR };

struct GroupId {
  Axis axis = Axis::X;
  Tag tag = Tag::None;
  friend constexpr auto operator<=>(GroupId, GroupId) = default;
};

std::string_view to_string(Axis axis);
std::string_view to_string(FrameCategory category);
std::string to_string(GroupId group);

std::optional<FrameCategory> parse_category(std::string_view text);
std::optional<GroupId> parse_group(std::string_view text);

// Groups of a category in canonical order.
std::span<const GroupId> groups_of(FrameCategory category);
std::size_t corner_count(FrameCategory category);
bool has_group(FrameCategory category, GroupId group);

// Corner labels in order; A..D as applicable to the category.
enum class CornerLabel { A, B, C, D };

std::string_view to_string(CornerLabel label);

struct Frame {
  FrameCategory category = FrameCategory::FourC;
  std::map<GroupId, Segment> box_lines;
  std::vector<Point2> corners;
};

}  // namespace framerec
