#include "svg.hpp"

#include <cstdio>
#include <string_view>

namespace framerec::cli {

namespace {

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.3f", v);
  std::string s = buf;
  if (s == "-0.000") s = "0.000";
  return s;
}

std::string_view color(Axis a) {
  switch (a) {
    case Axis::X: return "#d62728";
    case Axis::Y: return "#2ca02c";
    case Axis::Z: return "#1f77b4";
  }
  return "#000000";
}

void line(std::string& out, const Segment& s, std::string_view stroke, double width,
          bool dashed) {
  out += "    <line x1=\"" + fmt(s.p.x) + "\" y1=\"" + fmt(s.p.y) + "\" x2=\"" + fmt(s.q.x) +
         "\" y2=\"" + fmt(s.q.y) + "\" stroke=\"" + std::string(stroke) +
         "\" stroke-width=\"" + fmt(width) + "\"";
  if (dashed) out += " stroke-dasharray=\"6 4\"";
  out += "/>\n";
}

}  // namespace

std::string render_svg(ImageSize image, const std::vector<Segment>& initial,
                       const FrameFile& frame) {
  std::string out;
  out += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  out += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + std::to_string(image.width) +
         "\" height=\"" + std::to_string(image.height) + "\" viewBox=\"0 0 " +
         std::to_string(image.width) + " " + std::to_string(image.height) + "\">\n";
  out += "  <rect width=\"100%\" height=\"100%\" fill=\"#ffffff\"/>\n";

  if (!initial.empty()) {
    out += "  <g id=\"initial\" fill=\"none\">\n";
    for (const Segment& s : initial) line(out, s, "#999999", 1.0, false);
    out += "  </g>\n";
  }
  if (!frame.refined.empty()) {
    out += "  <g id=\"refined\" fill=\"none\">\n";
    for (const StageSegment& s : frame.refined) line(out, s.segment, color(s.group.axis), 1.5, false);
    out += "  </g>\n";
  }
  if (!frame.candidates.empty()) {
    out += "  <g id=\"candidates\" fill=\"none\" opacity=\"0.7\">\n";
    for (const StageSegment& s : frame.candidates) {
      line(out, s.segment, color(s.group.axis), 1.0, s.origin == Origin::Fitted);
    }
    out += "  </g>\n";
  }
  out += "  <g id=\"frame\" fill=\"none\">\n";
  for (GroupId g : groups_of(frame.frame.category)) {
    if (const auto it = frame.frame.box_lines.find(g); it != frame.frame.box_lines.end()) {
      line(out, it->second, color(g.axis), 4.0, false);
    }
  }
  for (std::size_t i = 0; i < frame.frame.corners.size(); ++i) {
    const Point2 c = frame.frame.corners[i];
    out += "    <circle cx=\"" + fmt(c.x) + "\" cy=\"" + fmt(c.y) +
           "\" r=\"5.000\" stroke=\"#000000\" stroke-width=\"2.000\"/>\n";
    out += "    <text x=\"" + fmt(c.x + 7.0) + "\" y=\"" + fmt(c.y - 7.0) +
           "\" font-family=\"sans-serif\" font-size=\"14\" fill=\"#000000\">" +
           std::string(to_string(static_cast<CornerLabel>(i))) + "</text>\n";
  }
  out += "  </g>\n";
  out += "</svg>\n";
  return out;
}

}  // namespace framerec::cli
