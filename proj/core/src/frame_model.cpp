#include "framerec/frame_model.hpp"

#include <algorithm>
#include <array>

namespace framerec {

namespace {

constexpr std::array<GroupId, 8> kFourC{{{Axis::X, Tag::C},
                                         {Axis::X, Tag::F},
                                         {Axis::Y, Tag::L},
                                         {Axis::Y, Tag::R},
                                         {Axis::Z, Tag::CL},
                                         {Axis::Z, Tag::CR},
                                         {Axis::Z, Tag::FL},
                                         {Axis::Z, Tag::FR}}};
constexpr std::array<GroupId, 5> kTwoVC{{{Axis::X, Tag::C},
                                         {Axis::X, Tag::F},
                                         {Axis::Y, Tag::None},
                                         {Axis::Z, Tag::C},
                                         {Axis::Z, Tag::F}}};
constexpr std::array<GroupId, 5> kTwoHC{{{Axis::X, Tag::None},
                                         {Axis::Y, Tag::L},
                                         {Axis::Y, Tag::R},
                                         {Axis::Z, Tag::L},
                                         {Axis::Z, Tag::R}}};
constexpr std::array<GroupId, 3> kOneC{
    {{Axis::X, Tag::None}, {Axis::Y, Tag::None}, {Axis::Z, Tag::None}}};

std::string_view tag_suffix(Tag tag) {
  switch (tag) {
    case Tag::None: return "";
    case Tag::C: return "c";
    case Tag::F: return "f";
    case Tag::L: return "l";
    case Tag::R: return "r";
    case Tag::CL: return "cl";
    case Tag::CR: return "cr";
    case Tag::FL: return "fl";
    case Tag::FR: return "fr";
  }
  return "";
}

}  // namespace

std::string_view to_string(Axis axis) {
  switch (axis) {
    case Axis::X: return "X";
    case Axis::Y: return "Y";
    case Axis::Z: return "Z";
  }
  return "?";
}

std::string_view to_string(FrameCategory category) {
  switch (category) {
    case FrameCategory::FourC: return "4c";
    case FrameCategory::TwoVC: return "2vc";
    case FrameCategory::TwoHC: return "2hc";
    case FrameCategory::OneC: return "1c";
  }
  return "?";
}

std::string to_string(GroupId group) {
  std::string out(to_string(group.axis));
  if (group.tag != Tag::None) {
    out += '_';
    out += tag_suffix(group.tag);
  }
  return out;
}

std::optional<FrameCategory> parse_category(std::string_view text) {
  for (auto c : {FrameCategory::FourC, FrameCategory::TwoVC, FrameCategory::TwoHC,
                 FrameCategory::OneC}) {
    if (text == to_string(c)) return c;
  }
  return std::nullopt;
}

std::optional<GroupId> parse_group(std::string_view text) {
  for (auto cat : {FrameCategory::FourC, FrameCategory::TwoVC, FrameCategory::TwoHC,
                   FrameCategory::OneC}) {
    for (GroupId g : groups_of(cat)) {
      if (text == to_string(g)) return g;
    }
  }
  return std::nullopt;
}

std::span<const GroupId> groups_of(FrameCategory category) {
  switch (category) {
    case FrameCategory::FourC: return kFourC;
    case FrameCategory::TwoVC: return kTwoVC;
    case FrameCategory::TwoHC: return kTwoHC;
    case FrameCategory::OneC: return kOneC;
  }
  return {};
}

std::size_t corner_count(FrameCategory category) {
  switch (category) {
    case FrameCategory::FourC: return 4;
    case FrameCategory::TwoVC:
    case FrameCategory::TwoHC: return 2;
    case FrameCategory::OneC: return 1;
  }
  return 0;
}

bool has_group(FrameCategory category, GroupId group) {
  const auto gs = groups_of(category);
  return std::find(gs.begin(), gs.end(), group) != gs.end();
}

std::string_view to_string(CornerLabel label) {
  switch (label) {
    case CornerLabel::A: return "A";
    case CornerLabel::B: return "B";
    case CornerLabel::C: return "C";
    case CornerLabel::D: return "D";
  }
  return "?";
}

}  // namespace framerec
