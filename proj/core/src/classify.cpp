#include "framerec/classify.hpp"

#include <cmath>

namespace framerec {

std::vector<Segment>& AxisSets::of(Axis axis) {
  switch (axis) {
    case Axis::X: return x;
    case Axis::Y: return y;
    case Axis::Z: return z;
  }
  return z;
}

const std::vector<Segment>& AxisSets::of(Axis axis) const {
  return const_cast<AxisSets*>(this)->of(axis);
}

std::string_view to_string(EndpointSide side) {
  switch (side) {
    case EndpointSide::Upper: return "upper";
    case EndpointSide::Lower: return "lower";
    case EndpointSide::Left: return "left";
    case EndpointSide::Right: return "right";
  }
  return "?";
}

bool above_line(const Line2& line, Point2 p) {
  return line.signed_distance(p) * -line.b() > 0.0;
}

bool left_of_line(const Line2& line, Point2 p) {
  return line.signed_distance(p) * -line.a() > 0.0;
}

Point2 endpoint(const Segment& s, EndpointSide side) {
  switch (side) {
    case EndpointSide::Upper: return s.p.y <= s.q.y ? s.p : s.q;
    case EndpointSide::Lower: return s.p.y > s.q.y ? s.p : s.q;
    case EndpointSide::Left: return s.p.x <= s.q.x ? s.p : s.q;
    case EndpointSide::Right: return s.p.x > s.q.x ? s.p : s.q;
  }
  return s.p;
}

AxisSets classify_segments(std::span<const Segment> segments, const VanishingTriplet& triplet,
                           double tau_class_deg) {
  AxisSets out;
  for (const Segment& s : segments) {
    double best = 0.0;
    Axis best_axis = Axis::X;
    bool found = false;
    for (Axis axis : {Axis::X, Axis::Y, Axis::Z}) {
      const HPoint& vp = triplet.vp(axis);
      if (!vp.at_infinity() && distance(vp.point(), s.midpoint()) <= 1e-12) continue;
      const double a = angle_to_vp(s, vp);
      if (!found || a < best) {
        best = a;
        best_axis = axis;
        found = true;
      }
    }
    if (found && best <= tau_class_deg) {
      out.of(best_axis).push_back(s);
    } else {
      out.outliers.push_back(s);
    }
  }
  return out;
}

PartitionedSegments partition_subsets(const AxisSets& sets, const VanishingTriplet& triplet,
                                      FrameCategory category, double axis_margin) {
  PartitionedSegments out;
  out.category = category;
  for (GroupId g : groups_of(category)) out.groups[g];
  out.outliers = sets.outliers;

  const Line2& horizon = triplet.l_xz();
  const Line2& vertical = triplet.l_yz();
  const bool split_xz =
      category == FrameCategory::FourC || category == FrameCategory::TwoVC;
  const bool split_yz =
      category == FrameCategory::FourC || category == FrameCategory::TwoHC;

  auto place = [&](const Segment& s, Axis axis, bool by_xz, bool by_yz) {
    const Point2 m = s.midpoint();
    if ((by_xz && std::abs(horizon.signed_distance(m)) <= axis_margin) ||
        (by_yz && std::abs(vertical.signed_distance(m)) <= axis_margin)) {
      out.outliers.push_back(s);
      return;
    }
    const bool up = above_line(horizon, m);
    const bool left = left_of_line(vertical, m);
    Tag tag = Tag::None;
    if (by_xz && by_yz) {
      tag = up ? (left ? Tag::CL : Tag::CR) : (left ? Tag::FL : Tag::FR);
    } else if (by_xz) {
      tag = up ? Tag::C : Tag::F;
    } else if (by_yz) {
      tag = left ? Tag::L : Tag::R;
    }
    out.groups[{axis, tag}].push_back(s);
  };

  for (const Segment& s : sets.x) place(s, Axis::X, split_xz, false);
  for (const Segment& s : sets.y) place(s, Axis::Y, false, split_yz);
  for (const Segment& s : sets.z) {
    switch (category) {
      case FrameCategory::FourC: place(s, Axis::Z, true, true); break;
      case FrameCategory::TwoVC: place(s, Axis::Z, true, false); break;
      case FrameCategory::TwoHC: place(s, Axis::Z, false, true); break;
      case FrameCategory::OneC: place(s, Axis::Z, false, false); break;
    }
  }
  return out;
}

Correspondence correspondence_table(FrameCategory category) {
  using S = EndpointSide;
  const GroupId xc{Axis::X, Tag::C}, xf{Axis::X, Tag::F}, x{Axis::X, Tag::None};
  const GroupId yl{Axis::Y, Tag::L}, yr{Axis::Y, Tag::R}, y{Axis::Y, Tag::None};
  const GroupId zcl{Axis::Z, Tag::CL}, zcr{Axis::Z, Tag::CR};
  const GroupId zfl{Axis::Z, Tag::FL}, zfr{Axis::Z, Tag::FR};
  const GroupId zc{Axis::Z, Tag::C}, zf{Axis::Z, Tag::F};
  const GroupId zl{Axis::Z, Tag::L}, zr{Axis::Z, Tag::R}, z{Axis::Z, Tag::None};

  switch (category) {
    case FrameCategory::FourC:
      return {
          {xc, {{zcl, S::Lower}, {zcr, S::Lower}, {yl, S::Upper}, {yr, S::Upper}}},
          {xf, {{zfl, S::Upper}, {zfr, S::Upper}, {yl, S::Lower}, {yr, S::Lower}}},
          {yl, {{zcl, S::Right}, {zfl, S::Right}, {xc, S::Left}, {xf, S::Left}}},
          {yr, {{zcr, S::Left}, {zfr, S::Left}, {xc, S::Right}, {xf, S::Right}}},
          {zcl, {{xc, S::Left}, {yl, S::Upper}}},
          {zcr, {{xc, S::Right}, {yr, S::Upper}}},
          {zfl, {{xf, S::Left}, {yl, S::Lower}}},
          {zfr, {{xf, S::Right}, {yr, S::Lower}}},
      };
    case FrameCategory::TwoVC:
      // The visible vertical edge has the x-wall on its right and the z-wall
      // on its left.
      return {
          {xc, {{zc, S::Lower}, {y, S::Upper}}},
          {xf, {{zf, S::Upper}, {y, S::Lower}}},
          {y, {{zc, S::Right}, {zf, S::Right}, {xc, S::Left}, {xf, S::Left}}},
          {zc, {{xc, S::Left}, {y, S::Upper}}},
          {zf, {{xf, S::Left}, {y, S::Lower}}},
      };
    case FrameCategory::TwoHC:
      // Floor-side corners: both vertical edges rise from the x line.
      return {
          {x, {{zl, S::Upper}, {zr, S::Upper}, {yl, S::Lower}, {yr, S::Lower}}},
          {yl, {{zl, S::Right}, {x, S::Left}}},
          {yr, {{zr, S::Left}, {x, S::Right}}},
          {zl, {{x, S::Left}, {yl, S::Lower}}},
          {zr, {{x, S::Right}, {yr, S::Lower}}},
      };
    case FrameCategory::OneC:
      // Floor-left corner: x runs right, y up, z down-left.
      return {
          {x, {{z, S::Upper}, {y, S::Lower}}},
          {y, {{z, S::Right}, {x, S::Left}}},
          {z, {{x, S::Left}, {y, S::Lower}}},
      };
  }
  return {};
}

}  // namespace framerec
