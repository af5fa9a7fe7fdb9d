#pragma once

// Projective-geometry primitives in image coordinates (origin top-left,
// y pointing down). Points at infinity are carried as homogeneous points
// with w == 0.

#include <array>
#include <compare>
#include <cstdint>
#include <span>
#include <vector>

namespace framerec {

struct Point2 {
  double x = 0.0;
  double y = 0.0;

  friend constexpr Point2 operator+(Point2 a, Point2 b) { return {a.x + b.x, a.y + b.y}; }
  friend constexpr Point2 operator-(Point2 a, Point2 b) { return {a.x - b.x, a.y - b.y}; }
  friend constexpr Point2 operator*(double s, Point2 a) { return {s * a.x, s * a.y}; }
  friend constexpr Point2 operator*(Point2 a, double s) { return {s * a.x, s * a.y}; }
  friend constexpr bool operator==(Point2, Point2) = default;
};

constexpr double dot(Point2 a, Point2 b) { return a.x * b.x + a.y * b.y; }
constexpr double cross(Point2 a, Point2 b) { return a.x * b.y - a.y * b.x; }
double norm(Point2 a);
double distance(Point2 a, Point2 b);

// Homogeneous point (x, y, w). Finite points have w != 0; w == 0 is a point
// at infinity in direction (x, y).
struct HPoint {
  double x = 0.0;
  double y = 0.0;
  double w = 1.0;

  static constexpr HPoint finite(Point2 p) { return {p.x, p.y, 1.0}; }
  static constexpr HPoint direction(double dx, double dy) { return {dx, dy, 0.0}; }

  bool at_infinity() const { return w == 0.0; }
  // Dehomogenized point; only meaningful when !at_infinity().
  Point2 point() const { return {x / w, y / w}; }
  friend constexpr bool operator==(const HPoint&, const HPoint&) = default;
};

// Line a*x + b*y + c = 0 with a^2 + b^2 == 1.
class Line2 {
 public:
  // Throws Error(InvalidConfig) when (a, b) == (0, 0).
  Line2(double a, double b, double c);

  static Line2 through(Point2 p, Point2 q);
  // Join of two homogeneous points; at most one may be at infinity.
  static Line2 through(const HPoint& p, const HPoint& q);

  double a() const { return a_; }
  double b() const { return b_; }
  double c() const { return c_; }

  double signed_distance(Point2 p) const { return a_ * p.x + b_ * p.y + c_; }
  // Unit direction vector along the line.
  Point2 direction() const { return {-b_, a_}; }
  Point2 foot_of(Point2 p) const;
  // Incidence residual a*x + b*y + c*w of a homogeneous point normalized to
  // unit length: a pixel distance scaled by 1/|(x, y, 1)| for finite points,
  // the sine of the direction mismatch for points at infinity.
  double incidence(const HPoint& p) const;

 private:
  double a_;
  double b_;
  double c_;
};

struct SegmentId {
  std::int64_t value = 0;
  friend constexpr auto operator<=>(SegmentId, SegmentId) = default;
};

struct Segment {
  Point2 p;
  Point2 q;
  SegmentId id;

  double length() const { return distance(p, q); }
  Point2 midpoint() const { return 0.5 * (p + q); }
  Line2 line() const { return Line2::through(p, q); }
  Segment reversed() const { return {q, p, id}; }
};

HPoint intersect(const Line2& a, const Line2& b);

// Cross ratio ((t1-t3)(t2-t4)) / ((t2-t3)(t1-t4)) of four scalar positions.
double cross_ratio(double t1, double t2, double t3, double t4);

// Cross ratio of four collinear points, in argument order.
double cross_ratio_points(Point2 p1, Point2 p2, Point2 p3, Point2 p4);

// Cross ratio of four concurrent lines, measured on `transversal`.
double pencil_cross_ratio(const std::array<Line2, 4>& lines, const Line2& transversal);

// x_i / sum(x); uniform when every input is zero.
std::vector<double> psi_normalize(std::span<const double> values);
// (max - x_i) / sum(max - x_j); uniform when every input is equal.
std::vector<double> eta_normalize(std::span<const double> values);

// Angle in degrees in [0, 90] between the segment and the ray from its
// midpoint toward `vp`.
double angle_to_vp(const Segment& s, const HPoint& vp);

// Acute angle in degrees between two undirected directions.
double acute_angle_deg(Point2 u, Point2 v);

double point_segment_distance(Point2 p, const Segment& s);
double segment_segment_distance(const Segment& a, const Segment& b);

// Axis-aligned image rectangle [0, width] x [0, height].
struct ImageSize {
  int width = 640;
  int height = 480;

  double diagonal() const;
  Point2 center() const { return {0.5 * width, 0.5 * height}; }
  friend constexpr bool operator==(ImageSize, ImageSize) = default;
};

// Clips the infinite line to the image rectangle. Returns false when the line
// misses the rectangle or touches it in a single point.
bool clip_line(const Line2& line, ImageSize bounds, Segment& out);
// Liang-Barsky clip of a segment to the image rectangle.
bool clip_segment(const Segment& s, ImageSize bounds, Segment& out);

}  // namespace framerec
